import itertools
import random

import pytest

from votedefense import (
    InstanceParams,
    MarginTarget,
    condorcet_winners,
    election_from_names,
    margin_matrix,
    margin_target,
    mcgarvey,
    preset_vector,
    profile_scores,
    realize_margins,
    scoring_winners,
    solve_attack_exact,
    solve_defense_brute,
    swap_pair_profile,
)
from votedefense.gadgets import (
    clique_answer,
    gadget_clique,
    gadget_hitting_set,
    gadget_ksum,
    gadget_set_cover,
    hitting_set_answer,
    ksum_answer,
    set_cover_answer,
)

from conftest import irregular_vector


def swap_scores(m, x, y, vector):
    group = swap_pair_profile(m, x, y, vector)
    election = election_from_names([f"c{i}" for i in range(m)], [group])
    return profile_scores(election, vector)


def test_swap_pair_plurality_hand_oracle():
    # Rotations of a>b>c with the top swap applied: votes b>a>c, b>c>a, c>a>b.
    scores = swap_scores(3, 0, 1, preset_vector("plurality", 3))
    assert scores == (0, 2, 1)


def test_swap_pair_identity_over_grid():
    for m in range(3, 9):
        vectors = [
            preset_vector("plurality", m),
            preset_vector("veto", m),
            preset_vector("borda", m),
            irregular_vector(m),
        ]
        for vector in vectors:
            for x, y in itertools.permutations(range(m), 2):
                scores = swap_scores(m, x, y, vector)
                others = [scores[a] for a in range(m) if a not in (x, y)]
                level = others[0]
                assert scores[x] + 1 == level
                assert scores[y] - 1 == level
                assert all(s == level for s in others)


def test_swap_pair_profile_has_m_votes():
    for m in (2, 3, 5):
        group = swap_pair_profile(m, 0, 1, preset_vector("plurality", m))
        assert group.total_voters == m


def test_swap_pair_borda_two_point_spread():
    for m in (3, 4, 6):
        scores = swap_scores(m, 1, 0, preset_vector("borda", m))
        assert scores[0] - scores[1] == 2


def test_swap_pairs_cancel():
    m = 4
    vector = preset_vector("borda", m)
    forward = swap_pair_profile(m, 0, 2, vector)
    backward = swap_pair_profile(m, 2, 0, vector)
    votes = [(list(b.order.ranking), b.count) for b in forward.bundles]
    votes += [(list(b.order.ranking), b.count) for b in backward.bundles]
    from votedefense import make_group

    election = election_from_names([f"c{i}" for i in range(m)], [make_group(votes)])
    scores = profile_scores(election, vector)
    assert len(set(scores)) == 1


def test_swap_pair_rejects_unnormalized_vector():
    from votedefense import score_vector

    with pytest.raises(ValueError):
        swap_pair_profile(3, 0, 1, score_vector([4, 2, 0]))


def test_mcgarvey_zero_target_empty():
    assert mcgarvey(3, margin_target(3, {})).total_voters == 0


def test_mcgarvey_single_pair():
    group = mcgarvey(3, margin_target(3, {(0, 1): 2}))
    assert group.total_voters == 2
    e = election_from_names(["a", "b", "c"], [group])
    mat = margin_matrix(e)
    assert mat[0][1] == 2 and mat[0][2] == 0 and mat[1][2] == 0


def test_mcgarvey_rejects_odd():
    with pytest.raises(ValueError):
        mcgarvey(3, margin_target(3, {(0, 1): 3, (0, 2): 1, (1, 2): 1}))


def test_margin_target_rejects_mixed_parity():
    with pytest.raises(ValueError):
        margin_target(3, {(0, 1): 2, (0, 2): 1, (1, 2): 1})


def test_mcgarvey_random_targets_realized_exactly():
    rng = random.Random(42)
    for _ in range(100):
        m = rng.randint(2, 5)
        pairs = {}
        for a in range(m):
            for b in range(a + 1, m):
                pairs[(a, b)] = 2 * rng.randint(-5, 5)
        target = margin_target(m, pairs)
        group = mcgarvey(m, target)
        assert group.total_voters % 2 == 0
        e = election_from_names([f"c{i}" for i in range(m)], [group])
        assert margin_matrix(e) == target.values


def test_realize_margins_odd_targets():
    rng = random.Random(43)
    for _ in range(60):
        m = rng.randint(2, 5)
        pairs = {}
        for a in range(m):
            for b in range(a + 1, m):
                pairs[(a, b)] = 2 * rng.randint(-5, 5) + 1
        target = margin_target(m, pairs)
        group = realize_margins(m, target)
        assert group.total_voters % 2 == 1
        e = election_from_names([f"c{i}" for i in range(m)], [group])
        assert margin_matrix(e) == target.values


# ----------------------------------------------------------------------
# Generators: spec'd examples plus solver cross-checks.


def solver_answer(instance):
    if instance.problem == "defense":
        return solve_defense_brute(instance.election, instance.rule, instance.params).feasible
    return solve_attack_exact(instance.election, instance.rule, instance.params).feasible


@pytest.mark.parametrize("rule", ["plurality", "veto", "borda", "condorcet"])
def test_ksum_gadget_yes_instance(rule):
    instance = gadget_ksum([8, 16, 24, 32], 2, 40, rule)
    assert instance.expected_answer is True
    assert solver_answer(instance) is True


@pytest.mark.parametrize("rule", ["plurality", "condorcet"])
def test_ksum_gadget_no_instance(rule):
    instance = gadget_ksum([8, 16], 2, 16, rule)
    assert instance.expected_answer is False
    assert solver_answer(instance) is False


def test_ksum_gadget_rejects_oversized_target():
    with pytest.raises(ValueError):
        gadget_ksum([8, 16, 24, 32, 40], 1, 8 * (8 + 16 + 24 + 32 + 40), "plurality")


def test_ksum_condorcet_gadget_winner():
    instance = gadget_ksum([8, 16, 24], 1, 16, "condorcet")
    assert condorcet_winners(instance.election) == {0}


def test_hitting_set_gadget_examples():
    for rule in ("plurality", "condorcet"):
        yes = gadget_hitting_set(["1", "2"], [{"1"}, {"2"}], 2, rule)
        assert yes.expected_answer is True and solver_answer(yes) is True
        no = gadget_hitting_set(["1", "2"], [{"1"}, {"2"}], 1, rule)
        assert no.expected_answer is False and solver_answer(no) is False


def test_hitting_set_whole_universe_always_works():
    instance = gadget_hitting_set(["1", "2", "3"], [{"1", "3"}, {"2"}], 3, "veto")
    assert instance.expected_answer is True
    assert solver_answer(instance) is True


def test_hitting_set_gadget_unique_winner():
    instance = gadget_hitting_set(["1", "2", "3"], [{"1", "2"}, {"2", "3"}], 1, "borda")
    y = instance.election.num_candidates - 2
    assert scoring_winners(instance.election, instance.rule.vector) == {y}


def test_hitting_set_rejects_empty_set():
    with pytest.raises(ValueError):
        gadget_hitting_set(["1", "2"], [{"1"}, set()], 1, "plurality")


def test_set_cover_gadget_yes_and_no():
    universe = ["1", "2", "3"]
    sets = [{"1", "2"}, {"3"}, {"1"}, {"2"}, {"3"}]
    for rule in ("plurality", "condorcet"):
        yes = gadget_set_cover(universe, sets, 4, rule)
        assert yes.expected_answer is True
        assert solver_answer(yes) is True
    no = gadget_set_cover(["1", "2", "3"], [{"1"}, set(), {"1", "2"}, {"2"}], 4, "plurality")
    assert no.expected_answer is False
    assert solver_answer(no) is False


def test_set_cover_uncoverable_element():
    instance = gadget_set_cover(
        ["1", "2", "3"], [{"1"}, {"1", "2"}, {"2"}, {"1"}], 4, "condorcet"
    )
    assert instance.expected_answer is False
    assert solver_answer(instance) is False


def test_set_cover_rejects_small_k():
    with pytest.raises(ValueError, match="k > 3"):
        gadget_set_cover(["1"], [{"1"}, set(), set(), set()], 2, "plurality")


def test_set_cover_scoring_unique_winner():
    instance = gadget_set_cover(
        ["1", "2"], [{"1", "2"}, {"1"}, {"2"}, set()], 4, "plurality"
    )
    y = instance.election.num_candidates - 2
    assert scoring_winners(instance.election, instance.rule.vector) == {y}


def test_clique_gadget_small_graph_rejections():
    with pytest.raises(ValueError):
        gadget_clique(3, [(0, 1)], 2, "plurality")
    with pytest.raises(ValueError):
        gadget_clique(2, [(0, 1), (1, 0)], 3, "plurality")


def test_clique_fewer_vertices_than_k():
    instance = gadget_clique(2, [(0, 1)], 3, "plurality")
    assert instance.expected_answer is False
    assert solver_answer(instance) is False


def test_clique_gadget_scoring_winner_lead():
    edges = [(0, 1), (1, 2), (0, 2)]
    instance = gadget_clique(3, edges, 3, "borda")
    totals = profile_scores(instance.election, instance.rule.vector)
    y = len(edges)
    assert scoring_winners(instance.election, instance.rule.vector) == {y}
    for j in range(len(edges)):
        assert totals[y] - totals[j] == 3


def test_clique_triangle_yes():
    for rule in ("plurality", "condorcet"):
        instance = gadget_clique(4, [(0, 1), (1, 2), (0, 2), (2, 3)], 3, rule)
        assert instance.expected_answer is True
        assert solver_answer(instance) is True


def test_source_brute_answers():
    assert ksum_answer([8, 16, 24, 32], 2, 40)
    assert not ksum_answer([8, 16], 2, 16)
    assert hitting_set_answer(["1", "2"], [frozenset("1"), frozenset("2")], 2)
    assert not hitting_set_answer(["1", "2"], [frozenset("1"), frozenset("2")], 1)
    assert set_cover_answer(["1", "2"], [frozenset(["1", "2"]), frozenset()], 1)
    assert not set_cover_answer(["1", "2"], [frozenset(["1"]), frozenset()], 1)
    assert clique_answer(3, [(0, 1), (1, 2), (0, 2)], 3)
    assert not clique_answer(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], 3)


def test_gadget_soundness_randomized_spot_checks():
    rng = random.Random(99)
    for _ in range(25):
        weights = [8 * rng.randint(1, 6) for _ in range(rng.randint(1, 4))]
        k = rng.randint(1, len(weights))
        target = 8 * rng.randint(1, sum(weights) // 8)
        if target >= sum(weights):
            continue
        for rule in ("plurality", "condorcet"):
            instance = gadget_ksum(weights, k, target, rule)
            assert solver_answer(instance) == instance.expected_answer
    for _ in range(15):
        n = rng.randint(1, 3)
        universe = [f"z{i}" for i in range(n)]
        t = rng.randint(1, 3)
        sets = [
            set(z for z in universe if rng.random() < 0.6) or {universe[0]}
            for _ in range(t)
        ]
        k = rng.randint(1, n)
        for rule in ("borda", "condorcet"):
            instance = gadget_hitting_set(universe, sets, k, rule)
            assert solver_answer(instance) == instance.expected_answer
