import json

import pytest

from votedefense import election_from_names, make_group, save_election
from votedefense.cli import main


def write_election(tmp_path, election, name="election.json"):
    path = tmp_path / name
    save_election(election, path)
    return path


def simple_election():
    return election_from_names(
        ["a", "b"], [make_group([((0, 1), 1)]), make_group([((1, 0), 2)])]
    )


def test_solve_defense_zero_attack_budget(tmp_path, capsys):
    path = write_election(tmp_path, simple_election())
    code = main(
        ["solve-defense", "--election", str(path), "--rule", "plurality", "--k-a", "0", "--k-d", "0"]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("YES")
    assert "protected: (none)" in out


def test_solve_defense_no_instance(tmp_path, capsys):
    path = write_election(tmp_path, simple_election())
    code = main(
        ["solve-defense", "--election", str(path), "--rule", "plurality", "--k-a", "1", "--k-d", "0"]
    )
    assert code == 1
    assert capsys.readouterr().out.startswith("NO")


def test_solve_defense_brute_matches(tmp_path, capsys):
    path = write_election(tmp_path, simple_election())
    for solver in ("fpt", "brute"):
        code = main(
            [
                "solve-defense",
                "--election",
                str(path),
                "--rule",
                "plurality",
                "--k-a",
                "1",
                "--k-d",
                "1",
                "--solver",
                solver,
            ]
        )
        assert code == 0
        assert "protected: 1" in capsys.readouterr().out


def test_solve_attack_defender_restores(tmp_path, capsys):
    path = write_election(tmp_path, simple_election())
    code = main(
        ["solve-attack", "--election", str(path), "--rule", "plurality", "--k-a", "2", "--k-d", "2"]
    )
    assert code == 1


def test_solve_attack_yes(tmp_path, capsys):
    path = write_election(tmp_path, simple_election())
    code = main(
        ["solve-attack", "--election", str(path), "--rule", "plurality", "--k-a", "1", "--k-d", "0"]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "attacked: 1" in out


def test_bad_election_file_is_exit_two(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{broken", encoding="utf-8")
    code = main(
        ["solve-defense", "--election", str(path), "--rule", "plurality", "--k-a", "1", "--k-d", "1"]
    )
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_gadget_ksum_command(tmp_path, capsys):
    out_prefix = tmp_path / "toy"
    code = main(
        [
            "gadget",
            "ksum",
            "--weights",
            "8,16,24,32",
            "--k",
            "2",
            "--target",
            "40",
            "--rule",
            "plurality",
            "--out",
            str(out_prefix),
        ]
    )
    assert code == 0
    assert "expected: yes" in capsys.readouterr().out
    meta = json.loads((tmp_path / "toy.meta.json").read_text())
    assert meta["expected_answer"] is True
    assert meta["problem"] == "defense"
    assert (tmp_path / "toy.json").exists()


def test_gadget_ksum_solve_round_trip(tmp_path, capsys):
    out_prefix = tmp_path / "toy"
    main(
        ["gadget", "ksum", "--weights", "8,16,24,32", "--k", "2", "--target", "40",
         "--rule", "plurality", "--out", str(out_prefix)]
    )
    meta = json.loads((tmp_path / "toy.meta.json").read_text())
    code = main(
        [
            "solve-defense",
            "--election",
            str(tmp_path / "toy.json"),
            "--rule",
            "plurality",
            "--k-a",
            str(meta["k_a"]),
            "--k-d",
            str(meta["k_d"]),
        ]
    )
    assert code == 0


def test_gadget_clique_command(tmp_path, capsys):
    edge_file = tmp_path / "k4.edges"
    edge_file.write_text("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n", encoding="utf-8")
    code = main(
        ["gadget", "clique", "--graph", str(edge_file), "--k", "3", "--out", str(tmp_path / "k4")]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "expected: yes" in out
    meta = json.loads((tmp_path / "k4.meta.json").read_text())
    assert meta["problem"] == "attack"
    assert meta["k_d"] == 1


def test_gadget_setcover_small_k_rejection(capsys, tmp_path):
    code = main(
        [
            "gadget",
            "setcover",
            "--universe",
            "1,2",
            "--sets",
            "1;2",
            "--k",
            "2",
            "--out",
            str(tmp_path / "sc"),
        ]
    )
    assert code == 2
    assert "k > 3" in capsys.readouterr().err


def test_experiment_command_round_trip(tmp_path, capsys):
    out = tmp_path / "results.csv"
    argv = [
        "experiment",
        "--model",
        "uniform",
        "--rule",
        "plurality,borda",
        "--candidates",
        "3",
        "--voters",
        "60",
        "--classes",
        "6",
        "--profiles",
        "2",
        "--k-d",
        "1..2",
        "--seed",
        "7",
        "--out",
        str(out),
    ]
    assert main(argv) == 0
    first = out.read_bytes()
    first_summary = (tmp_path / "results.summary.csv").read_bytes()
    assert main(argv) == 0
    assert out.read_bytes() == first
    assert (tmp_path / "results.summary.csv").read_bytes() == first_summary
    header = first.decode().splitlines()[0]
    assert header.startswith("schema_version,model,rule,k_d,k_a,profile_index")
    rows = first.decode().strip().splitlines()[1:]
    assert len(rows) == 2 * 2 * 2


def test_experiment_two_top_model(tmp_path):
    out = tmp_path / "two.csv"
    argv = [
        "experiment",
        "--model",
        "two-top:0,1",
        "--rule",
        "plurality",
        "--candidates",
        "3",
        "--voters",
        "30",
        "--classes",
        "3",
        "--profiles",
        "1",
        "--k-d",
        "1",
        "--seed",
        "3",
        "--out",
        str(out),
    ]
    assert main(argv) == 0
    assert "two-top:0,1" in out.read_text()


def test_experiment_rejects_bad_classes(tmp_path, capsys):
    argv = [
        "experiment",
        "--model",
        "uniform",
        "--rule",
        "plurality",
        "--candidates",
        "3",
        "--voters",
        "10",
        "--classes",
        "3",
        "--profiles",
        "1",
        "--k-d",
        "1",
        "--out",
        str(tmp_path / "x.csv"),
    ]
    assert main(argv) == 2
