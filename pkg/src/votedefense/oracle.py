"""Attack-feasibility oracles.

Given a set of defended groups and a deletion budget, decide whether the
attacker can change the winner set by deleting at most that many undefended
groups, and if so return a witness deletion set.

The polynomial oracles reduce the question to pairwise score (or margin)
races decided greedily; the brute-force oracle enumerates every deletion
subset and is the reference the fast paths are tested against.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .core import Election, EnumerationLimitError, ScoreVector
from .rules import CondorcetRule, ScoringRule, VotingRule
from .tables import MarginTable, ScoreTable, build_table

DEFAULT_SUBSET_CAP = 10**7


@dataclass(frozen=True)
class AttackWitness:
    """A deletion set that changes the winner set.

    ``challenger`` names the candidate the deletion promotes into (or past)
    the original winner set, when the flip works that way; it is None when
    the attack instead splits a tie among the original winners.
    """

    deleted: frozenset[int]
    challenger: int | None = None


def _checked_witness(
    table: ScoreTable | MarginTable,
    original: frozenset[int],
    deleted: frozenset[int],
    defended: frozenset[int],
    k_a: int,
    challenger: int | None,
) -> AttackWitness:
    # Guards the construction invariant: every witness really flips the outcome.
    if deleted & defended:
        raise AssertionError("witness deletes a defended group")
    if not 0 < len(deleted) <= k_a:
        raise AssertionError("witness size out of budget")
    if table.winners(deleted) == original:
        raise AssertionError("witness does not change the outcome")
    return AttackWitness(deleted, challenger)


def _greedy_pair_witness(
    table: ScoreTable | MarginTable,
    hi: tuple[int, int],
    defended: frozenset[int],
    k_a: int,
) -> frozenset[int] | None:
    """Minimal prefix of undefended positive-margin groups closing the gap.

    ``hi`` is the ordered pair whose gap must be driven to <= 0 by deletions.
    Returns the group set, or None when the budget cannot close the gap.
    """
    gap, margins = table.pair_gap_and_margins(*hi)
    taken: list[int] = []
    cumulative = 0
    for margin, g in margins:
        if g in defended:
            continue
        taken.append(g)
        cumulative += margin
        if cumulative >= gap:
            return frozenset(taken)
        if len(taken) == k_a:
            return None
    return None


def _greedy_gap_met(
    table: ScoreTable | MarginTable,
    hi: int,
    lo: int,
    defended,
    k_a: int,
) -> bool:
    """Feasibility-only version of the greedy race; no witness materialized."""
    gap, margins = table.pair_gap_and_margins(hi, lo)
    cumulative = 0
    left = k_a
    for margin, g in margins:
        if g in defended:
            continue
        cumulative += margin
        if cumulative >= gap:
            return True
        left -= 1
        if not left:
            return False
    return False


def scoring_attack_feasible(table: ScoreTable, defended, k_a: int) -> bool:
    """Decision-only twin of scoring_attack_oracle over a prebuilt table.

    ``defended`` may be any container supporting membership tests.
    """
    if k_a <= 0:
        return False
    original = table.original_winners
    if len(original) == 1:
        w = next(iter(original))
        for c in range(table.m):
            if c != w and _greedy_gap_met(table, w, c, defended, k_a):
                return True
        return False
    for g in table.tie_splitters:
        if g not in defended:
            return True
    winners_sorted = sorted(original)
    for c in range(table.m):
        if c in original:
            continue
        for a in winners_sorted:
            if _greedy_gap_met(table, a, c, defended, k_a):
                return True
    return False


def condorcet_attack_feasible(
    table: MarginTable, defended, k_a: int, cap: int = DEFAULT_SUBSET_CAP
) -> bool:
    """Decision-only twin of condorcet_attack_oracle over a prebuilt table."""
    if k_a <= 0:
        return False
    cw = table.original_condorcet_winner
    if cw is not None:
        for d in range(table.m):
            if d != cw and _greedy_gap_met(table, cw, d, defended, k_a):
                return True
        return False
    if not isinstance(defended, frozenset):
        defended = frozenset(defended)
    return _condorcet_creation_search(table, defended, k_a, cap) is not None


def attack_feasible(table: ScoreTable | MarginTable, defended, k_a: int) -> bool:
    if isinstance(table, ScoreTable):
        return scoring_attack_feasible(table, defended, k_a)
    return condorcet_attack_feasible(table, defended, k_a)


def scoring_attack_oracle(
    election: Election,
    vector: ScoreVector,
    defended: frozenset[int] = frozenset(),
    k_a: int = 0,
    *,
    table: ScoreTable | None = None,
) -> AttackWitness | None:
    """Does deleting <= k_a undefended groups change the scoring winner set?

    With a unique winner w, the outcome changes iff some challenger c can be
    raised to s(c) >= s(w); for each c the best deletion is the greedy prefix
    of the largest positive per-group swings s_G(w) - s_G(c).  With a tied
    winner set, deleting any single undefended group that scores two
    co-winners unequally splits the tie; if no such group exists all
    co-winners move in lockstep and only an outsider overtaking them (the
    same greedy race) can change the outcome.
    """
    if table is None:
        table = ScoreTable(election, vector)
    if k_a <= 0:
        return None
    original = table.original_winners
    if len(original) == 1:
        w = next(iter(original))
        for c in range(table.m):
            if c == w:
                continue
            deleted = _greedy_pair_witness(table, (w, c), defended, k_a)
            if deleted is not None:
                return _checked_witness(table, original, deleted, defended, k_a, c)
        return None
    winners_sorted = sorted(original)
    for g in table.tie_splitters:
        if g not in defended:
            return _checked_witness(
                table, original, frozenset({g}), defended, k_a, None
            )
    for c in range(table.m):
        if c in original:
            continue
        for a in winners_sorted:
            deleted = _greedy_pair_witness(table, (a, c), defended, k_a)
            if deleted is not None:
                return _checked_witness(table, original, deleted, defended, k_a, c)
    return None


def condorcet_attack_oracle(
    election: Election,
    defended: frozenset[int] = frozenset(),
    k_a: int = 0,
    *,
    table: MarginTable | None = None,
    cap: int = DEFAULT_SUBSET_CAP,
) -> AttackWitness | None:
    """Does deleting <= k_a undefended groups change the Condorcet outcome?

    If a Condorcet winner c exists, the outcome changes exactly when c stops
    beating some d, which the greedy prefix of positive per-group margins
    D_G(c, d) decides per challenger.  If no Condorcet winner exists the
    attacker must create one; no polynomial route is known for that case, so
    it falls back to a pruned exact search over deletion subsets.
    """
    if table is None:
        table = MarginTable(election)
    if k_a <= 0:
        return None
    cw = table.original_condorcet_winner
    if cw is not None:
        original = frozenset({cw})
        for d in range(table.m):
            if d == cw:
                continue
            deleted = _greedy_pair_witness(table, (cw, d), defended, k_a)
            if deleted is not None:
                return _checked_witness(table, original, deleted, defended, k_a, d)
        return None
    return _condorcet_creation_search(table, defended, k_a, cap)


def _condorcet_creation_search(
    table: MarginTable, defended: frozenset[int], k_a: int, cap: int
) -> AttackWitness | None:
    """Exact search for a deletion that creates a Condorcet winner."""
    m = table.m
    if m == 1:
        return None
    original = frozenset(range(m))
    free = [g for g in range(table.n) if g not in defended]
    budget = min(k_a, len(free))
    if budget == 0:
        return None
    # Feasibility bound: candidate x can only become the Condorcet winner if
    # every non-positive margin D(x, y) is fixable within the budget, each
    # deleted group contributing at most the largest single-group swing.
    viable = []
    for x in range(m):
        ok = True
        for y in range(m):
            if y == x:
                continue
            deficit = 1 - table.totals[x][y]
            if deficit <= 0:
                continue
            best_swing = max(
                (table.group_mats[g][y][x] for g in free), default=0
            )
            if best_swing * budget < deficit:
                ok = False
                break
        if ok:
            viable.append(x)
    if not viable:
        return None
    total = sum(math.comb(len(free), s) for s in range(1, budget + 1))
    if total > cap:
        raise EnumerationLimitError(
            f"Condorcet creation search needs {total} subsets, cap is {cap}"
        )
    for size in range(1, budget + 1):
        for combo in itertools.combinations(free, size):
            if table.condorcet_winner(combo) is not None:
                return _checked_witness(
                    table, original, frozenset(combo), defended, k_a, None
                )
    return None


def brute_attack_oracle(
    election: Election,
    rule: VotingRule,
    defended: frozenset[int] = frozenset(),
    k_a: int = 0,
    *,
    cap: int = DEFAULT_SUBSET_CAP,
    table: ScoreTable | MarginTable | None = None,
) -> AttackWitness | None:
    """Reference oracle: enumerate every deletion subset of size 1..k_a.

    Subsets are visited by size, then lexicographically by group indices, so
    the returned witness is deterministic.  Refuses loudly when the subset
    count exceeds ``cap``.
    """
    if table is None:
        table = build_table(election, rule)
    if k_a <= 0:
        return None
    free = [g for g in range(election.num_groups) if g not in defended]
    budget = min(k_a, len(free))
    total = sum(math.comb(len(free), s) for s in range(1, budget + 1))
    if total > cap:
        raise EnumerationLimitError(
            f"brute attack oracle needs {total} subsets, cap is {cap}"
        )
    original = table.winners()
    for size in range(1, budget + 1):
        for combo in itertools.combinations(free, size):
            if table.winners(combo) != original:
                return AttackWitness(frozenset(combo), None)
    return None


def attack_oracle(
    election: Election,
    rule: VotingRule,
    defended: frozenset[int] = frozenset(),
    k_a: int = 0,
    *,
    table: ScoreTable | MarginTable | None = None,
) -> AttackWitness | None:
    """Dispatch to the polynomial oracle matching the rule."""
    if isinstance(rule, ScoringRule):
        return scoring_attack_oracle(
            election, rule.vector, defended, k_a, table=table  # type: ignore[arg-type]
        )
    if isinstance(rule, CondorcetRule):
        return condorcet_attack_oracle(election, defended, k_a, table=table)  # type: ignore[arg-type]
    raise TypeError(f"unsupported rule {rule!r}")
