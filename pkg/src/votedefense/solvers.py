"""Exact decision procedures for the defense and attack problems.

The defense problem asks for a set of at most k_d groups whose protection
blocks every deletion of at most k_a undefended groups.  The bounded search
tree solver branches only over members of attack witnesses: any successful
defense must protect at least one group of any valid attack, otherwise that
attack still applies.  The attack problem asks for an attack set that
succeeds against every defense response and is solved by direct enumeration
with a verification subroutine.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass

from .core import Election, EnumerationLimitError, InstanceParams
from .oracle import DEFAULT_SUBSET_CAP, AttackWitness, attack_feasible, attack_oracle
from .rules import VotingRule
from .tables import MarginTable, ScoreTable, build_table


@dataclass(frozen=True)
class DefenseStrategy:
    protected: frozenset[int]


@dataclass(frozen=True)
class SolveStats:
    nodes: int
    oracle_calls: int
    seconds: float


@dataclass(frozen=True)
class SolveResult:
    feasible: bool
    certificate: DefenseStrategy | AttackWitness | None
    stats: SolveStats

    def __post_init__(self) -> None:
        if self.feasible and self.certificate is None:
            raise ValueError("feasible result needs a certificate")


class _Counter:
    __slots__ = ("nodes", "oracle_calls")

    def __init__(self) -> None:
        self.nodes = 0
        self.oracle_calls = 0


def solve_defense_fpt(
    election: Election, rule: VotingRule, params: InstanceParams
) -> SolveResult:
    """Bounded search tree defense solver.

    Each node runs the attack oracle under the current protected set; a
    witness spawns one child per witness member (protect it, budget - 1).
    The tree therefore has at most sum(k_a^i for i <= k_d) nodes.
    """
    start = time.perf_counter()
    table = build_table(election, rule)
    counter = _Counter()

    def search(protected: frozenset[int], budget: int) -> frozenset[int] | None:
        counter.nodes += 1
        counter.oracle_calls += 1
        witness = attack_oracle(election, rule, protected, params.k_a, table=table)
        if witness is None:
            return protected
        if budget == 0:
            return None
        for g in sorted(witness.deleted):
            found = search(protected | {g}, budget - 1)
            if found is not None:
                return found
        return None

    protected = search(frozenset(), min(params.k_d, election.num_groups))
    seconds = time.perf_counter() - start
    stats = SolveStats(counter.nodes, counter.oracle_calls, seconds)
    if protected is None:
        return SolveResult(False, None, stats)
    return SolveResult(True, DefenseStrategy(protected), stats)


def solve_defense_brute(
    election: Election,
    rule: VotingRule,
    params: InstanceParams,
    *,
    cap: int = DEFAULT_SUBSET_CAP,
) -> SolveResult:
    """Enumerate protected sets by size then lexicographically."""
    start = time.perf_counter()
    table = build_table(election, rule)
    n = election.num_groups
    budget = min(params.k_d, n)
    total = sum(math.comb(n, s) for s in range(budget + 1))
    if total > cap:
        raise EnumerationLimitError(
            f"brute defense solver needs {total} protected sets, cap is {cap}"
        )
    counter = _Counter()
    k_a = params.k_a
    for size in range(budget + 1):
        for combo in itertools.combinations(range(n), size):
            counter.nodes += 1
            counter.oracle_calls += 1
            if not attack_feasible(table, combo, k_a):
                stats = SolveStats(
                    counter.nodes, counter.oracle_calls, time.perf_counter() - start
                )
                return SolveResult(True, DefenseStrategy(frozenset(combo)), stats)
    stats = SolveStats(counter.nodes, counter.oracle_calls, time.perf_counter() - start)
    return SolveResult(False, None, stats)


def verify_attack_set(
    election: Election,
    rule: VotingRule,
    attacked: frozenset[int],
    k_d: int,
    *,
    table: ScoreTable | MarginTable | None = None,
) -> bool:
    """Does this attack beat every defense of at most k_d groups?

    Only defenses inside the attacked set matter.  Every subset size up to
    k_d must be checked: keeping the outcome changed is not monotone in how
    much the defender restores.
    """
    if table is None:
        table = build_table(election, rule)
    original = table.winners()
    members = sorted(attacked)
    for size in range(min(k_d, len(members)) + 1):
        for saved in itertools.combinations(members, size):
            deleted = attacked.difference(saved)
            if table.winners(deleted) == original:
                return False
    return True


def solve_attack_exact(
    election: Election,
    rule: VotingRule,
    params: InstanceParams,
    *,
    cap: int = DEFAULT_SUBSET_CAP,
) -> SolveResult:
    """Enumerate attack sets of size 1..k_a, smallest and lexicographic first.

    All sizes must be scanned because adding a group to a winning attack can
    break it.  An attack whose full deletion already preserves the outcome is
    skipped: the empty defense would defeat it.
    """
    start = time.perf_counter()
    if params.k_d >= params.k_a:
        # The defender can always restore every attacked group.
        return SolveResult(False, None, SolveStats(0, 0, time.perf_counter() - start))
    table = build_table(election, rule)
    n = election.num_groups
    budget = min(params.k_a, n)
    attack_sets = sum(math.comb(n, s) for s in range(1, budget + 1))
    per_set = sum(math.comb(budget, s) for s in range(min(params.k_d, budget) + 1))
    if attack_sets * per_set > cap:
        raise EnumerationLimitError(
            f"exact attack solver needs up to {attack_sets * per_set} evaluations, cap is {cap}"
        )
    original = table.winners()
    counter = _Counter()
    for size in range(1, budget + 1):
        for combo in itertools.combinations(range(n), size):
            counter.nodes += 1
            attacked = frozenset(combo)
            if table.winners(attacked) == original:
                continue
            if verify_attack_set(election, rule, attacked, params.k_d, table=table):
                stats = SolveStats(
                    counter.nodes, counter.oracle_calls, time.perf_counter() - start
                )
                return SolveResult(True, AttackWitness(attacked, None), stats)
    stats = SolveStats(counter.nodes, counter.oracle_calls, time.perf_counter() - start)
    return SolveResult(False, None, stats)
