from __future__ import annotations

import json

import pytest

from main import cli_main


@pytest.fixture
def e1_path(fixtures_dir):
    return str(fixtures_dir / "e1.prof")


@pytest.fixture
def e2_path(fixtures_dir):
    return str(fixtures_dir / "e2.prof")


def run(capsys, *argv):
    code = cli_main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve_with_trace(capsys, e1_path):
    code, out, _ = run(
        capsys, "solve", "--rule", "maxswappav", "--input", e1_path, "--init", "explicit:2,3", "--trace"
    )
    assert code == 0
    assert out == "committee=0 3\npav_score=3/1\nswaps=1\ninitial=2 3\nswap=2 0 1/1\n"


def test_solve_two_swaps(capsys, e2_path):
    code, out, _ = run(
        capsys, "solve", "--rule", "maxswappav", "--input", e2_path, "--init", "explicit:2,3", "--trace"
    )
    assert code == 0
    assert out == "committee=0 1\npav_score=3/1\nswaps=2\ninitial=2 3\nswap=2 0 2/1\nswap=3 1 1/1\n"


@pytest.mark.parametrize(
    "rule, committee",
    [("greedyav", "0 2"), ("seqpav", "0 1"), ("pav", "0 1"), ("swappav", "0 1"), ("maxswappav", "0 1")],
)
def test_solve_rules(capsys, e1_path, rule, committee):
    code, out, _ = run(capsys, "solve", "--rule", rule, "--input", e1_path)
    assert code == 0
    assert out.splitlines()[0] == f"committee={committee}"


def test_solve_json(capsys, e1_path):
    code, out, _ = run(
        capsys, "solve", "--rule", "maxswappav", "--input", e1_path, "--init", "explicit:2,3", "--json"
    )
    assert code == 0
    assert json.loads(out) == {"committee": [0, 3], "pav_score": "3/1", "swaps": 1}


def test_solve_random_init_is_deterministic(capsys, e1_path):
    argv = ("solve", "--rule", "maxswappav", "--input", e1_path, "--init", "random", "--seed", "99", "--trace")
    first = run(capsys, *argv)
    assert first[0] == 0
    assert run(capsys, *argv) == first


def test_check_ejr_violated(capsys, e1_path):
    code, out, _ = run(capsys, "check", "--axiom", "ejr", "--input", e1_path, "--committee", "2,3")
    assert code == 3
    assert out == "verdict=violated\nwitness_l=1\nwitness_T=0\nwitness_X=0 1\n"


def test_check_ejr_two_level_witness(capsys, e2_path):
    code, out, _ = run(capsys, "check", "--axiom", "ejr", "--input", e2_path, "--committee", "0,2")
    assert code == 3
    assert out == "verdict=violated\nwitness_l=2\nwitness_T=0 1\nwitness_X=0 1\n"


def test_check_satisfied_json(capsys, e1_path):
    code, out, _ = run(capsys, "check", "--axiom", "pjr", "--input", e1_path, "--committee", "0,2", "--json")
    assert code == 0
    assert json.loads(out) == {"verdict": "satisfied"}


def test_check_all(capsys, e1_path):
    code, out, _ = run(capsys, "check", "--axiom", "all", "--input", e1_path, "--committee", "0,1")
    assert code == 0
    assert out == "jr_verdict=satisfied\npjr_verdict=satisfied\nejr_verdict=satisfied\n"
    code, out, _ = run(capsys, "check", "--axiom", "all", "--input", e1_path, "--committee", "2,3")
    assert code == 3
    assert out.splitlines()[0] == "jr_verdict=violated"


def test_score(capsys, e1_path):
    code, out, _ = run(capsys, "score", "--input", e1_path, "--committee", "0,1")
    assert (code, out) == (0, "pav_score=3/1\n")
    code, out, _ = run(capsys, "score", "--input", e1_path, "--committee", "2,3")
    assert (code, out) == (0, "pav_score=2/1\n")


@pytest.mark.parametrize("committee", ["0,0", "0", "0,1,2", "1,0", "0,x", "0,9", ""])
def test_bad_committee_is_usage_error(capsys, e1_path, committee):
    code, out, err = run(capsys, "score", "--input", e1_path, "--committee", committee)
    assert code == 2
    assert out == ""
    assert err


def test_usage_errors(capsys, e1_path):
    assert run(capsys, "solve", "--rule", "phragmen", "--input", e1_path)[0] == 2
    assert run(capsys, "solve", "--rule", "maxswappav", "--input", e1_path, "--init", "random")[0] == 2
    assert run(capsys, "solve", "--rule", "maxswappav", "--input", e1_path, "--init", "warm")[0] == 2
    assert run(capsys, "solve", "--rule", "maxswappav", "--input", e1_path, "--seed", "-3")[0] == 2
    assert run(capsys)[0] == 2


def test_runtime_errors(capsys, tmp_path, e1_path, monkeypatch):
    missing = str(tmp_path / "missing.prof")
    assert run(capsys, "score", "--input", missing, "--committee", "0,1")[0] == 1

    broken = tmp_path / "broken.prof"
    broken.write_text("1 2 3\n0\n")
    code, _, err = run(capsys, "score", "--input", str(broken), "--committee", "0,1")
    assert code == 1
    assert "line 1, column 5" in err

    monkeypatch.setenv("PAV_ENUMERATION_BUDGET", "2")
    assert run(capsys, "solve", "--rule", "pav", "--input", e1_path)[0] == 1

    monkeypatch.setenv("AXIOM_MAX_CANDIDATE_SETS", "1")
    assert run(capsys, "check", "--axiom", "pjr", "--input", e1_path, "--committee", "0,1")[0] == 1


def test_gen_to_stdout_is_deterministic(capsys):
    argv = ("gen", "impartial", "--n", "5", "--m", "4", "--k", "2", "--seed", "11", "--p", "1/2", "--out", "-")
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.splitlines()[0] == "5 4 2"
    assert run(capsys, *argv)[1] == out


def test_gen_party_then_solve(capsys, tmp_path):
    path = str(tmp_path / "party.prof")
    code, _, _ = run(
        capsys,
        "gen", "party", "--n", "9", "--m", "6", "--k", "3", "--seed", "5",
        "--party-sizes", "2,2,2", "--weights", "1,1,1", "--out", path,
    )
    assert code == 0
    code, out, _ = run(capsys, "solve", "--rule", "maxswappav", "--input", path)
    assert code == 0
    assert out.startswith("committee=")


def test_gen_rejects_bad_parties(capsys):
    code, _, _ = run(
        capsys,
        "gen", "party", "--n", "4", "--m", "3", "--k", "1", "--seed", "5",
        "--party-sizes", "2,2", "--out", "-",
    )
    assert code == 2


def test_bench_table1(capsys, tmp_path):
    csv_path = tmp_path / "records.csv"
    code, out, _ = run(
        capsys,
        "bench", "table1", "--n", "6", "--m", "4", "--k", "2", "--trials", "3", "--seed", "1",
        "--with-pav", "--csv", str(csv_path),
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "trials=3"
    for rule in ("maxswappav", "swappav", "pav"):
        for axiom in ("jr", "pjr", "ejr"):
            assert f"{rule}_{axiom}=3/3" in lines
    assert "greedyav_jr=3/3" in lines
    assert "maxswappav_violation_seeds=" in lines
    assert csv_path.read_text().startswith("trial,seed,rule,")


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert "Self-tests passed" in out


def test_init_is_ignored_by_non_swap_rules(capsys, e1_path):
    code, out, _ = run(capsys, "solve", "--rule", "greedyav", "--input", e1_path, "--init", "explicit:9,9")
    assert code == 0
    assert out.splitlines()[0] == "committee=0 2"


def test_unexpected_error_without_message_names_its_type(capsys, e1_path, monkeypatch):
    def fail(*args):
        raise RuntimeError()

    monkeypatch.setattr("main.pav_score", fail)
    code, out, err = run(capsys, "score", "--input", e1_path, "--committee", "0,1")
    assert code == 1
    assert out == ""
    assert "error: RuntimeError" in err.splitlines()
