import random

import pytest

from votedefense import (
    CondorcetRule,
    ScoringRule,
    election_from_names,
    make_group,
    normalize_score_vector,
    preset_vector,
    score_vector,
)


def random_order(rng, m):
    order = list(range(m))
    for i in range(m - 1, 0, -1):
        j = rng.randrange(i + 1)
        order[i], order[j] = order[j], order[i]
    return tuple(order)


def random_election(rng, max_m=4, max_groups=8, max_voters=6, allow_empty=True):
    m = rng.randint(2, max_m)
    n = rng.randint(1, max_groups)
    groups = []
    for _ in range(n):
        low = 0 if allow_empty else 1
        voters = rng.randint(low, max_voters)
        groups.append(make_group((random_order(rng, m), 1) for _ in range(voters)))
    names = [f"c{i}" for i in range(m)]
    return election_from_names(names, groups)


def irregular_vector(m):
    """A normalized non-preset vector; fractional for m == 3."""
    if m == 2:
        return preset_vector("plurality", 2)
    if m == 3:
        return normalize_score_vector(score_vector([3, 2, 0]))
    return normalize_score_vector(score_vector([3, 1, 1] + [0] * (m - 3)))


def rules_for(m):
    return [
        ScoringRule(preset_vector("plurality", m)),
        ScoringRule(preset_vector("veto", m)),
        ScoringRule(preset_vector("borda", m)),
        ScoringRule(irregular_vector(m)),
        CondorcetRule(),
    ]


@pytest.fixture
def rng():
    return random.Random(20240817)
