import random

import pytest

from votedefense import (
    ElectionFormatError,
    election_from_names,
    load_election,
    make_group,
    parse_election,
    save_election,
    serialize_election,
)

from conftest import random_election

GOLDEN = """\
{
  "candidates": ["alice", "bob"],
  "groups": [
    [
      {"order": ["alice", "bob"], "count": 2},
      {"order": ["bob", "alice"], "count": 1}
    ]
  ]
}
"""


def test_golden_minimal_file():
    election = parse_election(GOLDEN)
    assert [c.name for c in election.candidates] == ["alice", "bob"]
    assert election.num_groups == 1
    assert election.groups[0].total_voters == 3
    assert election.groups[0].bundles[0].order.ranking == (0, 1)


def test_round_trip_random_elections():
    rng = random.Random(314)
    for _ in range(100):
        election = random_election(rng, max_m=5, max_groups=6, max_voters=8)
        assert parse_election(serialize_election(election)) == election


def test_round_trip_preserves_labels():
    election = election_from_names(
        ["a", "b"], [make_group([((0, 1), 2)], label="precinct-9")]
    )
    again = parse_election(serialize_election(election))
    assert again == election
    assert again.groups[0].label == "precinct-9"


def test_unknown_candidate_is_named_in_error():
    bad = GOLDEN.replace('"bob", "alice"', '"bob", "carol"')
    with pytest.raises(ElectionFormatError, match="carol"):
        parse_election(bad)


def test_duplicate_bundle_orders_rejected():
    bad = GOLDEN.replace('"bob", "alice"', '"alice", "bob"')
    with pytest.raises(ElectionFormatError, match="duplicate"):
        parse_election(bad)


def test_non_permutation_rejected():
    bad = GOLDEN.replace('["bob", "alice"]', '["bob"]')
    with pytest.raises(ElectionFormatError, match="permutation"):
        parse_election(bad)


def test_malformed_json_rejected():
    with pytest.raises(ElectionFormatError, match="JSON"):
        parse_election("{nope")


def test_bad_count_rejected():
    bad = GOLDEN.replace('"count": 1', '"count": 0')
    with pytest.raises(ElectionFormatError, match="count"):
        parse_election(bad)


def test_save_and_load(tmp_path):
    election = random_election(random.Random(1))
    path = tmp_path / "election.json"
    save_election(election, path)
    assert load_election(path) == election
