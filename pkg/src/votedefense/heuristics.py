"""Greedy defense strategies and the optimality classifier.

greedy1 protects the k_d groups that appear most often among the top
margin-preserving groups of each winner-vs-rival race.  Its outcome falls in
one of three categories: it defends (optimal), it fails but no defense
exists (still optimal), or it fails although some defense exists (not
optimal) - the last two separated by the brute-force defense solver.
greedy2 retries failed instances with uniformly random protected sets.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass

from .core import Election, InstanceParams
from .oracle import attack_feasible
from .rules import VotingRule
from .solvers import DefenseStrategy, solve_defense_brute
from .tables import MarginTable, ScoreTable, build_table


class GreedyCategory(enum.IntEnum):
    DEFENDS = 1
    NO_DEFENSE_EXISTS = 2
    DEFENSE_EXISTS = 3


@dataclass(frozen=True)
class GreedyOutcome:
    category: GreedyCategory
    strategy: DefenseStrategy


def _greedy_protected_set(
    table: ScoreTable | MarginTable, k_d: int
) -> frozenset[int]:
    """The frequency-vote protected set of greedy1.

    Picks the apparent winner a (lexicographically least of the winner set),
    ranks groups per rival b by the per-group margin of a over b, keeps each
    race's top k_d groups, then protects the k_d groups most frequent across
    races.  Frequency ties break by larger total margin, then group index.
    """
    n = table.n
    if k_d >= n:
        return frozenset(range(n))
    a = min(table.winners())
    if isinstance(table, ScoreTable):
        margin = lambda g, b: table.group_rows[g][a] - table.group_rows[g][b]
    else:
        margin = lambda g, b: table.group_mats[g][a][b]
    frequency = [0] * n
    for b in range(table.m):
        if b == a:
            continue
        ranked = sorted(range(n), key=lambda g: (-margin(g, b), g))
        for g in ranked[:k_d]:
            frequency[g] += 1
    total_margin = [
        sum(margin(g, b) for b in range(table.m) if b != a) for g in range(n)
    ]
    by_preference = sorted(
        range(n), key=lambda g: (-frequency[g], -total_margin[g], g)
    )
    return frozenset(by_preference[:k_d])


def greedy1(
    election: Election, rule: VotingRule, params: InstanceParams
) -> GreedyOutcome:
    """Run greedy1 and classify its outcome into the three categories.

    Works for scoring rules; for the Condorcet rule the same construction is
    applied with per-group pairwise margins in place of score margins.
    """
    table = build_table(election, rule)
    protected = _greedy_protected_set(table, params.k_d)
    if not attack_feasible(table, protected, params.k_a):
        category = GreedyCategory.DEFENDS
    elif solve_defense_brute(election, rule, params).feasible:
        category = GreedyCategory.DEFENSE_EXISTS
    else:
        category = GreedyCategory.NO_DEFENSE_EXISTS
    return GreedyOutcome(category, DefenseStrategy(protected))


def _sample_subset(rng: random.Random, n: int, size: int) -> frozenset[int]:
    # Partial Fisher-Yates; kept explicit so draws are stable across Python
    # versions, which random.sample does not promise.
    items = list(range(n))
    for i in range(size):
        j = rng.randrange(i, n)
        items[i], items[j] = items[j], items[i]
    return frozenset(items[:size])


def greedy2(
    election: Election,
    rule: VotingRule,
    params: InstanceParams,
    trials: int = 100,
    seed: int = 0,
) -> float:
    """Fraction of uniformly random k_d-protections under which no attack exists.

    Meant for instances where greedy1 failed although a defense exists; the
    returned fraction is the empirical success probability of defending with
    a random protected set.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    table = build_table(election, rule)
    rng = random.Random(seed)
    n = election.num_groups
    size = min(params.k_d, n)
    successes = 0
    for _ in range(trials):
        protected = _sample_subset(rng, n, size)
        if not attack_feasible(table, protected, params.k_a):
            successes += 1
    return successes / trials
