"""Command line: subcommands, output and exit codes."""

import csv
from pathlib import Path

import pytest

import oracles
from exactmatch.cli import CSV_COLUMNS, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_NO, EXIT_YES, main, solve
from exactmatch.generators import random_colored_instance
from exactmatch.instance_io import read_instance

FIXTURE = str(Path(__file__).parent / "fixtures" / "interval_0134.txt")


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_chain_counterexample_violates_pshort(tmp_path, capsys):
    p = tmp_path / "chain5.txt"
    assert run(capsys, "generate", "chain_pshort_counterexample", "--n", 5, "-o", p)[0] == EXIT_YES
    code, out, _ = run(capsys, "verify", "pshort(5)", p)
    assert code == EXIT_NO and "pshort(5): violated" in out and "F: " in out


def test_unit_interval_has_chord_property(tmp_path, capsys):
    p = tmp_path / "ui.txt"
    run(capsys, "generate", "unit_interval", "--n", 10, "--seed", 4, "--red-prob", 0.5, "-o", p)
    code, out, _ = run(capsys, "verify", "chord", p)
    assert code == EXIT_YES and "holds" in out
    assert run(capsys, "verify", "chord", p, "--max-cycle-len", 6)[0] == EXIT_INCONCLUSIVE


def test_landscape_and_karzanov_on_fixture(capsys):
    code, out, _ = run(capsys, "landscape", FIXTURE)
    assert code == EXIT_YES and out.strip() == "0 1 3 4"
    code, out, _ = run(capsys, "verify", "karzanov", FIXTURE)
    assert code == EXIT_NO and "missing 2 between achievable 0 and 4" in out
    assert run(capsys, "verify", "weak-karzanov", FIXTURE)[0] == EXIT_YES
    assert run(capsys, "landscape", FIXTURE, "--limit", 2)[0] == EXIT_INCONCLUSIVE


def test_solve_extremes(tmp_path, capsys):
    p = tmp_path / "blue.txt"
    run(capsys, "generate", "complete_r_partite", "--parts", "2,2,2", "-o", p)
    code, out, _ = run(capsys, "solve", p, "--k", 0)
    assert code == EXIT_YES and "verdict: yes" in out and "red edges: 0" in out
    assert run(capsys, "solve", p, "--k", 4)[0] == EXIT_NO
    assert run(capsys, "solve", p)[0] == EXIT_INPUT  # no target anywhere


def test_solve_reads_k_from_file(tmp_path, capsys):
    p = tmp_path / "g.txt"
    run(capsys, "generate", "gnp", "--n", 10, "--seed", 3, "--red-prob", 0.5, "--k", 2, "-o", p)
    land = oracles.landscape(read_instance(p).graph)
    code, out, _ = run(capsys, "solve", p, "--strategy", "oracle")
    assert code == (EXIT_YES if 2 in land else EXIT_NO)


@pytest.mark.parametrize("strategy", ["auto", "karzanov", "oracle"])
def test_solve_agrees_with_oracle(strategy):
    for seed in range(10):
        g = random_colored_instance("chain", 10, seed).graph
        land = oracles.landscape(g)
        for k in range(6):
            verdict, pm, _, _ = solve(g, k, strategy, 2, "chain")
            assert verdict == ("yes" if k in land else "no")
            if pm is not None:
                assert oracles.red_of(g, pm.edges) == k


def test_local_strategy_never_lies():
    for seed in range(10):
        g = random_colored_instance("neighborhood_diversity", 10, seed).graph
        land = oracles.landscape(g)
        for k in range(6):
            verdict, _, used, _ = solve(g, k, "local", 1)
            assert verdict != ("no" if k in land else "yes")
            verdict, _, used, _ = solve(g, k, "auto", 1, "neighborhood_diversity")
            assert verdict == ("yes" if k in land else "no")


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("p em 2 1\ne 0 1 x\n")
    code, _, err = run(capsys, "solve", bad, "--k", 0)
    assert code == EXIT_INPUT and "line 2, column 7" in err
    assert run(capsys, "solve", tmp_path / "missing.txt", "--k", 0)[0] == EXIT_INPUT
    assert run(capsys, "verify", "nonsense", bad)[0] == EXIT_INPUT
    assert run(capsys, "generate", "petersen", "--n", 4)[0] == EXIT_INPUT
    assert run(capsys, "frobnicate")[0] == EXIT_INPUT


def test_bench_csv(tmp_path, capsys):
    p = tmp_path / "b.csv"
    code = run(capsys, "bench", "--classes", "gnp,chain", "--sizes", "6", "--radii", "1,2",
               "--trials", 2, "--csv", p)[0]
    assert code == EXIT_YES
    with open(p, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) == 2 * 2 * 4 * 2  # classes x trials x k x radii
    for r in rows:
        assert r["verdict"] in ("yes", "no", "inconclusive")
        if r["verdict"] != "inconclusive":
            assert r["verdict"] == r["oracle_verdict"]
