from __future__ import annotations

import csv

import pytest

from anonelect.cli import format_outcome, main, parse_outcome
from anonelect.graph_core import cycle_graph, path_graph, read_graph, write_graph
from anonelect.local_sim import run_elect
from anonelect.advice_oracle import compute_advice


@pytest.fixture
def p3(tmp_path):
    path = tmp_path / "p3.graph"
    write_graph(path_graph(3), path)
    return path


def run(capsys, *argv):
    rc = main([str(a) for a in argv])
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_index(capsys, p3):
    rc, out, _ = run(capsys, "index", p3)
    assert rc == 0 and out.strip() == "n=3 D=2 phi=1"


def test_index_reports_infeasible(capsys, tmp_path):
    path = tmp_path / "c4.graph"
    write_graph(cycle_graph(4), path)
    rc, out, _ = run(capsys, "index", path)
    assert rc == 0 and "phi=infeasible" in out
    rc, _, err = run(capsys, "advise", path, "-o", tmp_path / "a.txt")
    assert rc == 2 and err.startswith("error:")


@pytest.mark.parametrize("fmt", ["bits", "hex"])
def test_advise_then_elect(capsys, tmp_path, p3, fmt):
    adv = tmp_path / "p3.adv"
    rc, out, _ = run(capsys, "advise", p3, "-o", adv, "--format", fmt)
    assert rc == 0 and "phi=1" in out
    outcome = tmp_path / "p3.out"
    rc, out, _ = run(capsys, "elect", p3, adv, "--format", fmt, "--outcome", outcome)
    assert rc == 0 and "rounds=1" in out and "verdict=ok" in out
    rc, out, _ = run(capsys, "verify", p3, outcome)
    assert rc == 0 and out.startswith("ok leader=")


def test_cross_wired_advice_fails(capsys, tmp_path, p3):
    gen = tmp_path / "rc.graph"
    assert run(capsys, "gen", "ring-cliques", "k=4", "x=3", "-o", gen)[0] == 0
    adv = tmp_path / "rc.adv"
    run(capsys, "advise", gen, "-o", adv)
    rc, out, _ = run(capsys, "elect", p3, adv)
    assert rc == 1 and "verdict=fail" in out


def test_generic_and_variants(capsys, p3):
    rc, out, _ = run(capsys, "generic", p3, "2")
    assert rc == 0 and "bound=4" in out
    for v in ("1", "2", "3", "4"):
        rc, out, _ = run(capsys, "elect-large", p3, "--variant", v, "--c", "3")
        assert rc == 0, out
    rc, out, _ = run(capsys, "elect-dphi", p3)
    assert rc == 0 and "rounds=3" in out


@pytest.mark.parametrize(
    "family,params",
    [
        ("clique", ["x=3", "t=4"]),
        ("necklace", ["k=4", "x=3", "phi=3", "code=0,1,2,0"]),
        ("hairy-ring", ["stars=0,1,2,0,3"]),
        ("stretch", ["stars=0,1,2,0,3", "gamma=3", "hub=6"]),
        ("random", ["n=9", "seed=4"]),
    ],
)
def test_gen_writes_valid_graphs(capsys, tmp_path, family, params):
    out = tmp_path / "g.graph"
    rc, _, err = run(capsys, "gen", family, *params, "-o", out)
    assert rc == 0, err
    read_graph(out)


def test_gen_spec_file(capsys, tmp_path):
    spec = tmp_path / "spec.txt"
    spec.write_text("k = 5\nx = 3\n# comment\n", encoding="utf-8")
    out = tmp_path / "g.graph"
    assert run(capsys, "gen", "ring-cliques", "--spec", spec, "-o", out)[0] == 0
    assert read_graph(out).n == 20


def test_gen_rejects_bad_parameters(capsys, tmp_path):
    rc, _, err = run(capsys, "gen", "necklace", "k=5", "x=3", "phi=2", "code=0,1,1,1,0", "-o", tmp_path / "g")
    assert rc == 2 and "even" in err
    rc, _, err = run(capsys, "gen", "ring-cliques", "x=3", "-o", tmp_path / "g")
    assert rc == 2


def test_bad_graph_file(capsys, tmp_path):
    path = tmp_path / "bad.graph"
    path.write_text("n 3\ne 0 0 1 0\ne 1 0 2 0\n", encoding="utf-8")
    rc, _, err = run(capsys, "index", path)
    assert rc == 2 and "line 3" in err


def test_bench_csv(capsys, tmp_path):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    write_graph(path_graph(5), corpus / "b.graph")
    write_graph(path_graph(3), corpus / "a.graph")
    write_graph(cycle_graph(5), corpus / "c.graph")
    csv_out = tmp_path / "out.csv"
    rc, out, _ = run(capsys, "bench", corpus, csv_out)
    assert rc == 1 and "1 failed" in out
    rows = list(csv.reader(csv_out.open()))
    assert rows[0] == ["graph", "n", "D", "phi", "variant", "rounds", "advice_bits", "verdict"]
    assert [r[0] for r in rows[1:]] == sorted(r[0] for r in rows[1:])
    assert [r[-1] for r in rows[1:]] == ["ok", "ok", "infeasible"]


@pytest.mark.parametrize("variant", ["generic", "dphi", "election3"])
def test_bench_other_variants(capsys, tmp_path, variant):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    write_graph(path_graph(4), corpus / "p4.graph")
    rc, _, _ = run(capsys, "bench", corpus, tmp_path / "o.csv", "--variant", variant)
    assert rc == 0


def test_outcome_file_roundtrip():
    g = path_graph(4)
    o = run_elect(g, compute_advice(g).bits)
    back = parse_outcome(format_outcome(o))
    assert back.outputs == o.outputs


def test_verify_rejects_wrong_outcome(capsys, tmp_path, p3):
    bad = tmp_path / "bad.out"
    bad.write_text("0 0\n1 0\n2 0\n", encoding="utf-8")
    rc, out, _ = run(capsys, "verify", p3, bad)
    assert rc == 1 and "no common endpoint" in out
