"""Constructive profile building blocks and reduction-instance generators.

Two primitives do the heavy lifting: a swap-pair profile that moves exactly
one point from one candidate to another while leaving everyone else level,
and a McGarvey-style realization of an arbitrary even margin matrix from
O(sum |margins|) votes.  On top of them sit generators that translate
k-sum, hitting-set, set-cover, and clique instances into elections whose
defense/attack answer mirrors the source answer; each generated instance
carries provenance and, when the source is small enough to brute-force, a
ground-truth expected answer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (
    Election,
    InstanceParams,
    ScoreVector,
    VoterGroup,
    election_from_names,
    make_group,
)
from .rules import CondorcetRule, ScoringRule, VotingRule, resolve_rule

BRUTE_SOURCE_LIMIT = 12


@dataclass(frozen=True)
class MarginTarget:
    """Antisymmetric integer margin specification over candidate pairs.

    All off-diagonal entries must share parity, otherwise no single profile
    can realize them (every margin has the parity of the vote count).
    """

    values: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        m = len(self.values)
        for row in self.values:
            if len(row) != m:
                raise ValueError("margin target must be square")
        for a in range(m):
            if self.values[a][a] != 0:
                raise ValueError("margin target diagonal must be zero")
            for b in range(a + 1, m):
                if self.values[a][b] != -self.values[b][a]:
                    raise ValueError("margin target must be antisymmetric")
        parities = {self.values[a][b] % 2 for a in range(m) for b in range(m) if a != b}
        if len(parities) > 1:
            raise ValueError("margin target entries must all share parity")

    @property
    def size(self) -> int:
        return len(self.values)


def margin_target(m: int, pairs: dict[tuple[int, int], int]) -> MarginTarget:
    """Build a target from sparse (winner, loser) -> margin entries."""
    mat = [[0] * m for _ in range(m)]
    for (a, b), f in pairs.items():
        mat[a][b] += f
        mat[b][a] -= f
    return MarginTarget(tuple(tuple(row) for row in mat))


def _normalized_unit_drop(vector: ScoreVector) -> int:
    """Position j of a normalized vector where entry j is 1 and the rest 0."""
    ent = vector.entries
    for j in range(len(ent) - 2, -1, -1):
        if ent[j] > ent[j + 1]:
            if ent[j] - ent[j + 1] == 1 and all(e == 0 for e in ent[j + 1 :]):
                return j
            raise ValueError("score vector is not normalized")
    raise ValueError("score vector is not normalized")


def swap_pair_profile(m: int, x: int, y: int, vector: ScoreVector) -> VoterGroup:
    """m votes under which y scores one above and x one below everyone else.

    Takes all m cyclic rotations of an order in which x immediately precedes
    y (each candidate then scores the vector total), and swaps x and y in
    the single rotation that puts them on the normalized unit drop.
    """
    if m < 2:
        raise ValueError("need at least 2 candidates")
    if len(vector) != m:
        raise ValueError("vector length must equal the number of candidates")
    if x == y or not (0 <= x < m and 0 <= y < m):
        raise ValueError("x and y must be distinct candidates")
    drop = _normalized_unit_drop(vector)
    base = [x, y] + [c for c in range(m) if c != x and c != y]
    swap_rotation = (m - drop) % m
    votes = []
    for t in range(m):
        vote = [base[(i + t) % m] for i in range(m)]
        if t == swap_rotation:
            vote[drop], vote[drop + 1] = vote[drop + 1], vote[drop]
        votes.append((vote, 1))
    return make_group(votes)


def mcgarvey(m: int, target: MarginTarget) -> VoterGroup:
    """Realize an all-even margin target exactly with an even number of votes.

    Each positive margin f(a, b) is produced by f/2 vote pairs
    {a > b > rest ascending, rest descending > a > b}; a pair adds 2 to
    D(a, b) and cancels on every other pair of candidates.
    """
    if target.size != m:
        raise ValueError("target size must equal the number of candidates")
    votes = []
    for a in range(m):
        for b in range(m):
            f = target.values[a][b]
            if f <= 0:
                continue
            if f % 2:
                raise ValueError(f"margin {f} for pair ({a},{b}) is odd; only even targets are realizable")
            rest = [c for c in range(m) if c != a and c != b]
            votes.append(([a, b] + rest, f // 2))
            votes.append((list(reversed(rest)) + [a, b], f // 2))
    return make_group(votes)


def realize_margins(m: int, target: MarginTarget) -> VoterGroup:
    """Realize an even or uniformly odd margin target exactly.

    Odd targets are handled by emitting one seed vote (the identity order)
    and realizing the now-even residual margins.
    """
    if target.size != m:
        raise ValueError("target size must equal the number of candidates")
    odd = any(
        target.values[a][b] % 2 for a in range(m) for b in range(m) if a != b
    )
    if not odd:
        return mcgarvey(m, target)
    seed = list(range(m))
    residual = [
        [
            target.values[a][b] - (1 if a < b else -1) if a != b else 0
            for b in range(m)
        ]
        for a in range(m)
    ]
    votes = [(seed, 1)]
    even_part = mcgarvey(m, MarginTarget(tuple(tuple(r) for r in residual)))
    for bundle in even_part.bundles:
        votes.append((list(bundle.order.ranking), bundle.count))
    return make_group(votes)


def _copies(profile: VoterGroup, factor: int) -> list[tuple[list[int], int]]:
    """The votes of ``factor`` copies of a profile, as (order, count) pairs."""
    if factor < 0:
        raise ValueError("copy count must be non-negative")
    if factor == 0:
        return []
    return [(list(b.order.ranking), b.count * factor) for b in profile.bundles]


@dataclass
class GadgetInstance:
    """A generated election tied back to its source combinatorial instance."""

    election: Election
    params: InstanceParams
    problem: str  # "defense" or "attack"
    rule: VotingRule
    provenance: dict
    expected_answer: bool | None


# ----------------------------------------------------------------------
# Brute-force answers for the source problems (the independent oracles).


def ksum_answer(weights: Sequence[int], k: int, target: int) -> bool:
    return any(sum(c) == target for c in itertools.combinations(weights, k))


def hitting_set_answer(universe: Sequence, sets: Sequence[frozenset], k: int) -> bool:
    return any(
        all(set(chosen) & s for s in sets)
        for chosen in itertools.combinations(universe, k)
    )


def set_cover_answer(universe: Sequence, sets: Sequence[frozenset], k: int) -> bool:
    want = set(universe)
    return any(
        set().union(*chosen) >= want if chosen else not want
        for chosen in itertools.combinations(sets, k)
    )


def clique_answer(num_vertices: int, edges: Sequence[tuple[int, int]], k: int) -> bool:
    if k > num_vertices:
        return False
    adjacency = {frozenset(e) for e in edges}
    return any(
        all(frozenset(p) in adjacency for p in itertools.combinations(chosen, 2))
        for chosen in itertools.combinations(range(num_vertices), k)
    )


# ----------------------------------------------------------------------
# k-sum -> defense with 3 candidates.


def _prepare_ksum(weights: Sequence[int], k: int, target: int) -> tuple[list[int], int]:
    """Pad then rescale a k-sum instance so the reduction arithmetic works.

    Padding (with weights just above the target, which can never join a
    solution) enforces 2k < n; rescaling by 8 afterwards makes every weight
    and the target divisible by 8, so any subset sum misses the target by at
    least 8 unless it hits exactly.  Padding must precede scaling: a padded
    weight added after scaling would not be divisible by 8 and near-misses
    of 1 would defend successfully, breaking the equivalence.
    """
    padded = list(weights)
    while 2 * k >= len(padded):
        padded.append(target + 1)
    scaled_target = target
    if any(w % 8 for w in padded) or target % 8:
        padded = [8 * w for w in padded]
        scaled_target = 8 * target
    if scaled_target >= sum(padded):
        raise ValueError(
            "target must be smaller than the total weight; otherwise the instance is a trivial no"
        )
    return padded, scaled_target


def gadget_ksum(
    weights: Sequence[int], k: int, target: int, rule: str | ScoreVector | VotingRule
) -> GadgetInstance:
    """Defense instance over candidates {a, b, c} encoding a k-sum question.

    One group per weight plus one balancing group; the defender's budget is
    k and the attacker may hit every group.  A defense succeeds exactly when
    the defended weights sum to the target.
    """
    weights = list(weights)
    if not weights or any(w < 1 for w in weights):
        raise ValueError("weights must be positive integers")
    if not 1 <= k <= len(weights):
        raise ValueError("k must satisfy 1 <= k <= number of weights")
    if target < 1:
        raise ValueError("target must be a positive integer")
    padded, m_target = _prepare_ksum(weights, k, target)
    n = len(padded)
    resolved = resolve_rule(rule, 3)
    names = ["a", "b", "c"]
    a, b, c = 0, 1, 2

    if isinstance(resolved, ScoringRule):
        vector = resolved.vector
        total = sum(padded)
        m_prime = (total // 8 + 1) * 8
        p_ac = swap_pair_profile(3, a, c, vector)
        p_bc = swap_pair_profile(3, b, c, vector)
        p_ca = swap_pair_profile(3, c, a, vector)
        p_cb = swap_pair_profile(3, c, b, vector)
        p_ab = swap_pair_profile(3, a, b, vector)
        groups = [
            make_group(
                _copies(p_ac, w) + _copies(p_bc, m_prime - w), label=f"w{i}"
            )
            for i, w in enumerate(padded)
        ]
        groups.append(
            make_group(
                _copies(p_ca, (k * m_prime + m_target) // 2 - 3)
                + _copies(p_cb, (k * m_prime - m_target) // 2 - 1)
                + _copies(p_ab, (k * m_prime - m_target) // 2 - 1),
                label="balance",
            )
        )
    else:
        # The scale constant must clear three bars: per-group margins stay
        # non-negative (max weight), the frontrunner starts as the pairwise
        # winner ((total - target) / (n - k)), and the balancing group must
        # oppose the frontrunner on both flanks (target / k, strictly), so
        # that deleting it never helps the attacker.
        total = sum(padded)
        deficit = total - m_target
        m_prime = max(max(padded), -(-deficit // (n - k)), m_target // k + 1)
        groups = [
            realize_margins(
                3,
                margin_target(3, {(a, b): 2 * w, (a, c): 2 * (m_prime - w)}),
            )
            for w in padded
        ]
        groups.append(
            realize_margins(
                3,
                margin_target(
                    3,
                    {
                        (b, a): 2 * m_target - 1,
                        (c, a): 2 * (k * m_prime - m_target) - 1,
                        (b, c): 1,
                    },
                ),
            )
        )

    election = election_from_names(names, groups)
    expected = (
        ksum_answer(weights, k, target) if len(weights) <= BRUTE_SOURCE_LIMIT else None
    )
    return GadgetInstance(
        election=election,
        params=InstanceParams(k_a=n + 1, k_d=k),
        problem="defense",
        rule=resolved,
        provenance={
            "family": "ksum",
            "weights": list(weights),
            "k": k,
            "target": target,
            "padded_weights": padded,
            "padded_target": m_target,
            "scale_constant": m_prime,
        },
        expected_answer=expected,
    )


# ----------------------------------------------------------------------
# Hitting set -> defense, parameterized by the defender's budget.


def _check_set_system(
    universe: Sequence, sets: Sequence[Iterable], require_nonempty: bool
) -> list[frozenset]:
    if not universe or len(set(universe)) != len(universe):
        raise ValueError("universe must be a non-empty sequence of distinct elements")
    out = []
    for idx, s in enumerate(sets):
        fs = frozenset(s)
        if not fs <= set(universe):
            raise ValueError(f"set {idx} contains elements outside the universe")
        if require_nonempty and not fs:
            raise ValueError(f"set {idx} is empty")
        out.append(fs)
    if not out:
        raise ValueError("need at least one set")
    return out


def gadget_hitting_set(
    universe: Sequence,
    sets: Sequence[Iterable],
    k: int,
    rule: str | ScoreVector | VotingRule,
) -> GadgetInstance:
    """Defense instance with one group per universe element.

    One candidate per set plus a frontrunner (and, for scoring rules, a
    decoy that a balancing group keeps down).  Defending groups whose
    elements hit every set is the only way to protect the frontrunner.
    """
    fsets = _check_set_system(universe, sets, require_nonempty=True)
    if not 1 <= k <= len(universe):
        raise ValueError("k must satisfy 1 <= k <= universe size")
    t = len(fsets)
    n = len(universe)
    expected = (
        hitting_set_answer(universe, fsets, k) if n <= BRUTE_SOURCE_LIMIT else None
    )

    resolved = resolve_rule(rule, t + 2 if _is_scoring(rule) else t + 1)
    if isinstance(resolved, ScoringRule):
        m = t + 2
        y, d = t, t + 1
        names = [f"x{j}" for j in range(t)] + ["y", "d"]
        vector = resolved.vector
        p_xd = [swap_pair_profile(m, j, d, vector) for j in range(t)]
        p_dx = [swap_pair_profile(m, d, j, vector) for j in range(t)]
        p_dy = swap_pair_profile(m, d, y, vector)
        groups = []
        for i, z in enumerate(universe):
            votes = []
            for j in range(t):
                if z in fsets[j]:
                    votes.extend(_copies(p_xd[j], 2))
            groups.append(make_group(votes, label=f"z{i}"))
        balance = []
        for j in range(t):
            balance.extend(_copies(p_dx[j], 2 * t * n))
        balance.extend(_copies(p_dy, 2 * t * n - 1))
        groups.append(make_group(balance, label="balance"))
        params = InstanceParams(k_a=n, k_d=k + 1)
    else:
        m = t + 1
        y = t
        names = [f"x{j}" for j in range(t)] + ["y"]
        groups = []
        for i, z in enumerate(universe):
            pairs = {(y, j): 2 for j in range(t) if z in fsets[j]}
            groups.append(realize_margins(m, margin_target(m, pairs)))
        params = InstanceParams(k_a=n, k_d=k)

    return GadgetInstance(
        election=election_from_names(names, groups),
        params=params,
        problem="defense",
        rule=resolved,
        provenance={
            "family": "hitting_set",
            "universe": list(universe),
            "sets": [sorted(s) for s in fsets],
            "k": k,
        },
        expected_answer=expected,
    )


def _is_scoring(rule: str | ScoreVector | VotingRule) -> bool:
    if isinstance(rule, CondorcetRule):
        return False
    if isinstance(rule, (ScoringRule, ScoreVector)):
        return True
    return rule != "condorcet"


# ----------------------------------------------------------------------
# Set cover -> defense, parameterized by the attacker's budget.


def gadget_set_cover(
    universe: Sequence,
    sets: Sequence[Iterable],
    k: int,
    rule: str | ScoreVector | VotingRule,
) -> GadgetInstance:
    """Defense instance with one group per set; the attack budget is k.

    Pads the family with empty sets until every element is missed by at
    least k + 1 sets, so that deleting fewer than k groups can never dethrone
    the frontrunner.  A defense succeeds exactly when the k groups it leaves
    open correspond to a set cover.
    """
    fsets = _check_set_system(universe, sets, require_nonempty=False)
    if k <= 3:
        raise ValueError("k > 3 is required for the set cover reduction")
    if k > len(fsets):
        raise ValueError("k must be at most the number of sets")
    n = len(universe)
    t0 = len(fsets)
    freq = [sum(1 for s in fsets if z in s) for z in universe]
    t = max(t0, max(freq) + k + 1)
    padded = fsets + [frozenset()] * (t - t0)
    expected = (
        set_cover_answer(universe, fsets, k) if t0 <= BRUTE_SOURCE_LIMIT else None
    )

    resolved = resolve_rule(rule, n + 2 if _is_scoring(rule) else n + 1)
    if isinstance(resolved, ScoringRule):
        m = n + 2
        y, d = n, n + 1
        names = [f"x{i}" for i in range(n)] + ["y", "d"]
        vector = resolved.vector
        p_xd = [swap_pair_profile(m, i, d, vector) for i in range(n)]
        p_dx = [swap_pair_profile(m, d, i, vector) for i in range(n)]
        p_dy = swap_pair_profile(m, d, y, vector)
        groups = []
        for j, s in enumerate(padded):
            votes = []
            for i, z in enumerate(universe):
                if z not in s:
                    votes.extend(_copies(p_xd[i], 2))
            groups.append(make_group(votes, label=f"s{j}"))
        balance = []
        for i in range(n):
            balance.extend(_copies(p_dx[i], 2 * t * n + 2 * (t - freq[i] - k) + 1))
        balance.extend(_copies(p_dy, 2 * t * n))
        groups.append(make_group(balance, label="balance"))
        # The balancing group is what keeps the decoy candidate down, so any
        # defense must cover it too: one extra budget unit on top of t - k.
        params = InstanceParams(k_a=k, k_d=t - k + 1)
    else:
        m = n + 1
        y = n
        names = [f"x{i}" for i in range(n)] + ["y"]
        groups = []
        for j, s in enumerate(padded):
            pairs = {(y, i): 2 for i, z in enumerate(universe) if z not in s}
            groups.append(realize_margins(m, margin_target(m, pairs)))
        pairs = {(i, y): 2 * (t - freq[i] - k) for i in range(n)}
        groups.append(realize_margins(m, margin_target(m, pairs)))
        params = InstanceParams(k_a=k, k_d=t - k)

    return GadgetInstance(
        election=election_from_names(names, groups),
        params=params,
        problem="defense",
        rule=resolved,
        provenance={
            "family": "set_cover",
            "universe": list(universe),
            "sets": [sorted(s) for s in fsets],
            "k": k,
            "padded_size": t,
        },
        expected_answer=expected,
    )


# ----------------------------------------------------------------------
# Clique -> attack, parameterized by both budgets.


def gadget_clique(
    num_vertices: int,
    edges: Sequence[tuple[int, int]],
    k: int,
    rule: str | ScoreVector | VotingRule,
) -> GadgetInstance:
    """Attack instance with one group per vertex and one candidate per edge.

    The attacker's budget is k and the defender's k - 2, so exactly two
    attacked groups stay deleted under the best defense; the frontrunner
    falls if and only if those two vertices share an edge, hence a winning
    attack is exactly a k-clique.
    """
    if k < 3:
        raise ValueError("k >= 3 is required for the clique reduction")
    if num_vertices < 0:
        raise ValueError("vertex count must be non-negative")
    seen = set()
    for u, v in edges:
        if not (0 <= u < num_vertices and 0 <= v < num_vertices) or u == v:
            raise ValueError(f"edge ({u},{v}) is not a simple edge on the vertex range")
        key = frozenset((u, v))
        if key in seen:
            raise ValueError(f"duplicate edge ({u},{v})")
        seen.add(key)
    me = len(edges)
    expected = (
        clique_answer(num_vertices, edges, k)
        if num_vertices <= BRUTE_SOURCE_LIMIT
        else None
    )

    resolved = resolve_rule(rule, me + 2 if _is_scoring(rule) else max(me + 1, 1))
    if isinstance(resolved, ScoringRule):
        m = me + 2
        y, d = me, me + 1
        names = [f"x{j}" for j in range(me)] + ["y", "d"]
        vector = resolved.vector
        p_dx = [swap_pair_profile(m, d, j, vector) for j in range(me)]
        p_dy = swap_pair_profile(m, d, y, vector)
        p_xd = [swap_pair_profile(m, j, d, vector) for j in range(me)]
        groups = []
        for i in range(num_vertices):
            votes = []
            for j in range(me):
                votes.extend(_copies(p_dx[j], 10 * me))
            votes.extend(_copies(p_dy, 10 * me))
            for j, (u, v) in enumerate(edges):
                if i in (u, v):
                    votes.extend(_copies(p_xd[j], 2))
            groups.append(make_group(votes, label=f"v{i}"))
        groups.append(
            make_group(
                [vote for j in range(me) for vote in _copies(p_dx[j], 1)],
                label="balance",
            )
        )
    else:
        m = max(me + 1, 1)
        names = [f"x{j}" for j in range(me)] + ["y"] if me else ["y"]
        y = me
        groups = []
        for i in range(num_vertices):
            pairs = {(y, j): 2 for j, (u, v) in enumerate(edges) if i in (u, v)}
            groups.append(realize_margins(m, margin_target(m, pairs)))
        # An inert balancing group: giving it any margin against the
        # frontrunner would let a single deletion flip the outcome.
        groups.append(VoterGroup(label="balance"))

    return GadgetInstance(
        election=election_from_names(names, groups),
        params=InstanceParams(k_a=k, k_d=k - 2),
        problem="attack",
        rule=resolved,
        provenance={
            "family": "clique",
            "num_vertices": num_vertices,
            "edges": [list(e) for e in edges],
            "k": k,
        },
        expected_answer=expected,
    )
