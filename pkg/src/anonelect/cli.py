"""Command-line front end."""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .advice_oracle import InfeasibleGraphError, compute_advice
from .corpus import random_feasible_graph, standard_corpus
from .encoding import MalformedBits, format_advice_file, parse_advice_file
from .families import (
    FamilyError,
    HairyRingSpec,
    NecklaceSpec,
    clique_member,
    close_with_hub,
    gamma_stretch,
    gen_hairy_ring,
    gen_necklace,
    gen_ring_cliques,
)
from .graph_core import GraphError, PortGraph, diameter, format_graph, read_graph
from .local_sim import (
    ElectionOutcome,
    Verdict,
    dphi_advice,
    run_elect,
    run_election_dphi,
    run_election_variant,
    run_generic,
    variant_advice,
    variant_time_bound,
    verify_outcome,
)
from .views import election_index


class CliError(Exception):
    pass


@dataclass
class RunReport:
    graph: str
    n: int
    diam: int
    phi: int | None
    variant: str
    rounds: int | None
    advice_bits: int | None
    verdict: str
    leader: int | None = None

    @property
    def ok(self) -> bool:
        return self.verdict == "ok"

    def line(self) -> str:
        phi = "infeasible" if self.phi is None else self.phi
        fields = [
            f"graph={self.graph}",
            f"n={self.n}",
            f"D={self.diam}",
            f"phi={phi}",
            f"variant={self.variant}",
            f"rounds={self.rounds if self.rounds is not None else '-'}",
            f"advice_bits={self.advice_bits if self.advice_bits is not None else '-'}",
            f"verdict={self.verdict}",
        ]
        if self.leader is not None:
            fields.append(f"leader={self.leader}")
        return " ".join(fields)

    def row(self) -> list:
        phi = "infeasible" if self.phi is None else self.phi
        return [self.graph, self.n, self.diam, phi, self.variant, self.rounds, self.advice_bits, self.verdict]


CSV_HEADER = ["graph", "n", "D", "phi", "variant", "rounds", "advice_bits", "verdict"]


# --- outcome files ----------------------------------------------------------------


def format_outcome(o: ElectionOutcome) -> str:
    lines = []
    for v, seq in enumerate(o.outputs):
        if v in o.failures or seq is None:
            reason = o.failures.get(v, "no output").replace("\n", " ")
            lines.append(f"{v} failed {reason}")
        else:
            lines.append(" ".join(map(str, (v, len(seq) // 2) + seq)))
    return "\n".join(lines) + "\n"


def parse_outcome(text: str) -> ElectionOutcome:
    outputs: dict[int, tuple[int, ...] | None] = {}
    failures: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tok = raw.split()
        if not tok:
            continue
        try:
            v = int(tok[0])
            if tok[1] == "failed":
                failures[v] = " ".join(tok[2:])
                outputs[v] = None
                continue
            k = int(tok[1])
            seq = tuple(int(t) for t in tok[2:])
        except (IndexError, ValueError):
            raise CliError(f"line {lineno}: expected 'v k p1 q1 ... pk qk'") from None
        if len(seq) != 2 * k:
            raise CliError(f"line {lineno}: declared {k} steps but found {len(seq)} ports")
        outputs[v] = seq
    n = max(outputs, default=-1) + 1
    if sorted(outputs) != list(range(n)):
        raise CliError("outcome file must list nodes 0..n-1 exactly once")
    return ElectionOutcome(tuple(outputs[v] for v in range(n)), (None,) * n, failures)


# --- helpers ------------------------------------------------------------------------


def _load(path: str) -> PortGraph:
    try:
        return read_graph(path)
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}") from None
    except GraphError as exc:
        raise CliError(f"{path}: {exc}") from None


def _report(name: str, g: PortGraph, variant: str, o: ElectionOutcome, bits: int | None, phi: int | None,
            extra_check: str = "") -> RunReport:
    verdict: Verdict = verify_outcome(g, o)
    text = "ok" if verdict.ok else "fail"
    if verdict.ok and extra_check:
        text = "fail"
    return RunReport(name, g.n, diameter(g), phi, variant, o.rounds, bits, text, verdict.leader)


def _write_outcome(o: ElectionOutcome, path: str | None) -> None:
    if path:
        Path(path).write_text(format_outcome(o), encoding="utf-8")


def _params(pairs: Sequence[str], spec_file: str | None) -> dict[str, str]:
    out: dict[str, str] = {}
    lines = Path(spec_file).read_text(encoding="utf-8").splitlines() if spec_file else []
    for item in [*lines, *pairs]:
        item = item.split("#", 1)[0].strip()
        if not item:
            continue
        if "=" not in item:
            raise CliError(f"expected key=value, got {item!r}")
        key, value = item.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _ints(value: str) -> tuple[int, ...]:
    return tuple(int(t) for t in value.replace(",", " ").split())


def _need(params: dict[str, str], key: str) -> str:
    try:
        return params[key]
    except KeyError:
        raise CliError(f"missing parameter {key}=...") from None


# --- commands ---------------------------------------------------------------------


def cmd_index(args) -> int:
    g = _load(args.graph)
    phi = election_index(g)
    print(f"n={g.n} D={diameter(g)} phi={'infeasible' if phi is None else phi}")
    return 0


def cmd_advise(args) -> int:
    g = _load(args.graph)
    try:
        adv = compute_advice(g)
    except InfeasibleGraphError as exc:
        raise CliError(str(exc)) from None
    Path(args.out).write_text(format_advice_file(adv.bits, args.format), encoding="utf-8")
    print(f"advice_bits={adv.size} phi={adv.phi}")
    return 0


def cmd_elect(args) -> int:
    g = _load(args.graph)
    try:
        bits = parse_advice_file(Path(args.advice).read_text(encoding="utf-8"), args.format)
    except MalformedBits as exc:
        raise CliError(f"{args.advice}: {exc}") from None
    o = run_elect(g, bits)
    _write_outcome(o, args.outcome)
    rep = _report(args.graph, g, "elect", o, len(bits), election_index(g))
    print(rep.line())
    return 0 if rep.ok else 1


def cmd_generic(args) -> int:
    g = _load(args.graph)
    o = run_generic(g, args.x)
    _write_outcome(o, args.outcome)
    rep = _report(args.graph, g, f"generic({args.x})", o, None, election_index(g))
    print(rep.line(), f"round_index={o.last_round_index} bound={rep.diam + args.x}")
    return 0 if rep.ok else 1


def cmd_elect_large(args) -> int:
    g = _load(args.graph)
    phi = election_index(g)
    if phi is None:
        raise CliError("infeasible graph")
    advice = variant_advice(phi, args.variant)
    o = run_election_variant(g, args.variant, advice)
    _write_outcome(o, args.outcome)
    bound = variant_time_bound(args.variant, diameter(g), phi, args.c)
    late = "late" if o.last_round_index > bound else ""
    rep = _report(args.graph, g, f"election{args.variant}", o, len(advice), phi, late)
    print(rep.line(), f"round_index={o.last_round_index} bound={bound}")
    return 0 if rep.ok else 1


def cmd_elect_dphi(args) -> int:
    g = _load(args.graph)
    phi = election_index(g)
    if phi is None:
        raise CliError("infeasible graph")
    advice = dphi_advice(diameter(g), phi)
    o = run_election_dphi(g, advice)
    _write_outcome(o, args.outcome)
    rep = _report(args.graph, g, "dphi", o, len(advice), phi)
    print(rep.line())
    return 0 if rep.ok else 1


def cmd_verify(args) -> int:
    g = _load(args.graph)
    o = parse_outcome(Path(args.outcome).read_text(encoding="utf-8"))
    verdict = verify_outcome(g, o)
    print(verdict)
    return 0 if verdict.ok else 1


def _generate(family: str, p: dict[str, str]) -> PortGraph:
    if family == "clique":
        return clique_member(int(_need(p, "x")), int(p.get("t", "1")))
    if family == "ring-cliques":
        perm = _ints(p["perm"]) if "perm" in p else None
        return gen_ring_cliques(int(_need(p, "k")), int(_need(p, "x")), perm)
    if family == "necklace":
        spec = NecklaceSpec(int(_need(p, "k")), int(_need(p, "x")), int(_need(p, "phi")), _ints(_need(p, "code")))
        return gen_necklace(spec).graph
    if family == "hairy-ring":
        return gen_hairy_ring(HairyRingSpec(_ints(_need(p, "stars"))))
    if family == "stretch":
        spec = HairyRingSpec(_ints(_need(p, "stars")))
        frag = gamma_stretch(spec, int(p.get("w", "0")), int(_need(p, "gamma")))
        return close_with_hub(frag, int(_need(p, "hub")))
    if family == "random":
        return random_feasible_graph(int(_need(p, "n")), p.get("seed", "0"))
    raise CliError(f"unknown family {family!r}")


def cmd_gen(args) -> int:
    params = _params(args.params, args.spec)
    if args.family == "corpus":
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        samples = standard_corpus(params.get("seed", "0"))
        for s in samples:
            (out / f"{s.name}.graph").write_text(format_graph(s.graph), encoding="utf-8")
        print(f"wrote {len(samples)} graphs to {out}")
        return 0
    try:
        g = _generate(args.family, params)
    except (FamilyError, ValueError) as exc:
        raise CliError(str(exc)) from None
    Path(args.out).write_text(format_graph(g), encoding="utf-8")
    print(f"n={g.n} written to {args.out}")
    return 0


def bench_one(path: Path, variant: str, c: int, x: int | None) -> RunReport:
    g = read_graph(path)
    name = str(path)
    phi = election_index(g)
    diam = diameter(g)
    if phi is None:
        return RunReport(name, g.n, diam, None, variant, None, None, "infeasible")
    if variant == "elect":
        adv = compute_advice(g)
        return _report(name, g, variant, run_elect(g, adv.bits), adv.size, phi)
    if variant == "generic":
        xx = x if x is not None else phi
        o = run_generic(g, xx)
        late = "late" if o.last_round_index > diam + xx else ""
        return _report(name, g, f"generic({xx})", o, None, phi, late)
    if variant == "dphi":
        advice = dphi_advice(diam, phi)
        return _report(name, g, variant, run_election_dphi(g, advice), len(advice), phi)
    i = int(variant.removeprefix("election"))
    advice = variant_advice(phi, i)
    o = run_election_variant(g, i, advice)
    late = "late" if o.last_round_index > variant_time_bound(i, diam, phi, c) else ""
    return _report(name, g, variant, o, len(advice), phi, late)


def cmd_bench(args) -> int:
    paths = sorted(Path(args.corpus).glob("*.graph"))
    if not paths:
        raise CliError(f"no *.graph files in {args.corpus}")
    reports = [bench_one(p, args.variant, args.c, args.x) for p in paths]
    with open(args.csv_out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for rep in sorted(reports, key=lambda r: r.graph):
            w.writerow(rep.row())
    bad = sum(not r.ok for r in reports)
    print(f"{len(reports)} graphs, {len(reports) - bad} ok, {bad} failed")
    return 0 if bad == 0 else 1


# --- parser -----------------------------------------------------------------------


VARIANTS = ["elect", "generic", "dphi", "election1", "election2", "election3", "election4"]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="anonelect", description="Leader election with advice in anonymous port-numbered graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", help="print n, diameter and election index")
    p.add_argument("graph")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("advise", help="compute minimum-time advice")
    p.add_argument("graph")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--format", choices=["bits", "hex"], default="bits")
    p.set_defaults(func=cmd_advise)

    p = sub.add_parser("elect", help="run minimum-time election with an advice file")
    p.add_argument("graph")
    p.add_argument("advice")
    p.add_argument("--format", choices=["bits", "hex"], default="bits")
    p.add_argument("--outcome", help="write per-node outputs here")
    p.set_defaults(func=cmd_elect)

    p = sub.add_parser("generic", help="run the advice-free algorithm with parameter x")
    p.add_argument("graph")
    p.add_argument("x", type=int)
    p.add_argument("--outcome")
    p.set_defaults(func=cmd_generic)

    p = sub.add_parser("elect-large", help="run one of the four large-time variants")
    p.add_argument("graph")
    p.add_argument("--variant", type=int, choices=[1, 2, 3, 4], required=True)
    p.add_argument("--c", type=int, default=2)
    p.add_argument("--outcome")
    p.set_defaults(func=cmd_elect_large)

    p = sub.add_parser("elect-dphi", help="run election in time D + phi with D and phi as advice")
    p.add_argument("graph")
    p.add_argument("--outcome")
    p.set_defaults(func=cmd_elect_dphi)

    p = sub.add_parser("gen", help="generate a family member (key=value parameters)")
    p.add_argument("family", choices=["clique", "ring-cliques", "necklace", "hairy-ring", "stretch", "random", "corpus"])
    p.add_argument("params", nargs="*", help="key=value pairs, e.g. k=4 x=3")
    p.add_argument("--spec", help="file of key=value lines")
    p.add_argument("-o", "--out", required=True, help="graph file (a directory for 'corpus')")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check an outcome file against a graph")
    p.add_argument("graph")
    p.add_argument("outcome")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run a variant over every *.graph file and write CSV")
    p.add_argument("corpus")
    p.add_argument("csv_out")
    p.add_argument("--variant", choices=VARIANTS, default="elect")
    p.add_argument("--c", type=int, default=2)
    p.add_argument("--x", type=int, help="parameter for the generic variant (default: phi)")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GraphError, MalformedBits, FamilyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
