"""Synchronous LOCAL-model harness and the node-side election algorithms.

A node program is built by a factory that receives only the advice
string, and is then called once per round with only the node's current
view.  It returns ``None`` to keep going or its output port sequence.
Round counts are elapsed rounds: a node that outputs when holding a
depth-t view terminated after t exchanges.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .advice_oracle import AdviceMismatch, Labeler
from .encoding import bin_int, concat, decode, decode_advice, unbin
from .graph_core import PathError, PortGraph, diameter, follow_path
from .views import AugView, election_index, frontier, min_view, truncate

NodeProgram = Callable[[AugView], "Sequence[int] | None"]
ProgramFactory = Callable[[str], NodeProgram]


# --- harness -----------------------------------------------------------------


@dataclass
class Audit:
    """Type names of every value handed to node code."""

    seen: Counter = field(default_factory=Counter)

    ALLOWED = frozenset({"AugView", "str"})

    def record(self, value) -> None:
        self.seen[type(value).__name__] += 1

    @property
    def clean(self) -> bool:
        return set(self.seen) <= self.ALLOWED


@dataclass(frozen=True)
class ElectionOutcome:
    outputs: tuple[tuple[int, ...] | None, ...]
    finish: tuple[int | None, ...]  # elapsed rounds at termination, per node
    failures: dict[int, str]
    variant: str = ""
    audit: Audit | None = field(default=None, compare=False, repr=False)

    @property
    def rounds(self) -> int:
        done = [t for t in self.finish if t is not None]
        return max(done) if done else 0

    @property
    def last_round_index(self) -> int:
        """Rounds numbered from 0: the index of the round in which the last node stopped."""
        return self.rounds - 1


def com_round(g: PortGraph, layer: Sequence[AugView]) -> list[AugView]:
    """One exchange: every node sends its view to all neighbors."""
    return [AugView(len(nbrs), ((q, layer[w]) for w, q in nbrs)) for nbrs in g.adj]


def simulate(g: PortGraph, factory: ProgramFactory, advice: str, max_rounds: int, variant: str = "") -> ElectionOutcome:
    audit = Audit()
    n = g.n
    programs: list[NodeProgram | None] = []
    failures: dict[int, str] = {}
    for v in range(n):
        audit.record(advice)
        try:
            programs.append(factory(advice))
        except Exception as exc:  # a node choking on bad advice is an outcome, not a crash
            programs.append(None)
            failures[v] = f"{type(exc).__name__}: {exc}"
    outputs: list[tuple[int, ...] | None] = [None] * n
    finish: list[int | None] = [None] * n
    active = [v for v in range(n) if programs[v] is not None]
    layer = [AugView(len(nbrs)) for nbrs in g.adj]
    t = 0
    while active:
        still = []
        for v in active:
            audit.record(layer[v])
            try:
                out = programs[v](layer[v])
            except Exception as exc:
                failures[v] = f"{type(exc).__name__}: {exc}"
                finish[v] = t
                continue
            if out is None:
                still.append(v)
            else:
                outputs[v] = tuple(int(p) for p in out)
                finish[v] = t
        active = still
        if not active:
            break
        if t >= max_rounds:
            for v in active:
                failures[v] = f"no output after {max_rounds} rounds"
            break
        layer = com_round(g, layer)
        t += 1
    return ElectionOutcome(tuple(outputs), tuple(finish), failures, variant, audit)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    leader: int | None = None
    reason: str = ""
    node: int | None = None

    def __str__(self) -> str:
        if self.ok:
            return f"ok leader={self.leader}"
        where = f" at node {self.node}" if self.node is not None else ""
        return f"fail: {self.reason}{where}"


def verify_outcome(g: PortGraph, o: ElectionOutcome) -> Verdict:
    """All outputs must be simple paths ending at one common node."""
    if len(o.outputs) != g.n:
        return Verdict(False, reason=f"outcome covers {len(o.outputs)} nodes, graph has {g.n}")
    leader = None
    for v in range(g.n):
        if v in o.failures:
            return Verdict(False, reason=f"node failed ({o.failures[v]})", node=v)
        seq = o.outputs[v]
        if seq is None:
            return Verdict(False, reason="no output", node=v)
        try:
            end, simple = follow_path(g, v, seq)
        except PathError as exc:
            return Verdict(False, reason=str(exc), node=v)
        if not simple:
            return Verdict(False, reason="path not simple", node=v)
        if leader is None:
            leader = end
        elif end != leader:
            return Verdict(False, reason="no common endpoint", node=v)
    return Verdict(True, leader)


# --- view searches shared by the node programs --------------------------------


def views_within(view: AugView, radius: int, x: int) -> set[AugView]:
    """Depth-x views of all tree nodes at depth <= radius (needs radius + x <= depth)."""
    out: set[AugView] = set()
    for j in range(radius + 1):
        out |= frontier(truncate(view, j + x), j)
    return out


def path_to(view: AugView, target: AugView, x: int) -> tuple[int, ...]:
    """Lexicographically smallest shortest port sequence from the root of
    ``view`` to a tree node whose depth-x view is ``target``."""
    j = 0
    while target not in frontier(truncate(view, j + x), j):
        j += 1
    cur = truncate(view, j + x)
    seq: list[int] = []
    for rem in range(j, 0, -1):
        for p, (q, c) in enumerate(cur.children):
            if target in frontier(c, rem - 1):
                seq += (p, q)
                cur = c
                break
    return tuple(seq)


# --- node programs -------------------------------------------------------------


class ElectNode:
    """Minimum-time election: label the depth-phi view, then walk the advice tree to its root."""

    def __init__(self, advice: str):
        self.phi, e1, e2, self.tree = decode_advice(advice)
        if self.phi < 1:
            raise AdviceMismatch("election index must be positive")
        self.labeler = Labeler(e1, e2)

    def __call__(self, view: AugView):
        if view.depth < self.phi:
            return None
        x = self.labeler.label(view)
        try:
            i = self.tree.index_of(x)
        except ValueError:
            raise AdviceMismatch(f"label {x} is not in the advice tree") from None
        return self.tree.path_to_root(i)


class GenericNode:
    """Collect depth-x views until a round brings nothing new, then head
    for the smallest one seen."""

    def __init__(self, x: int):
        if x < 1:
            raise ValueError("x must be positive")
        self.x = x

    @classmethod
    def from_advice(cls, advice: str) -> "GenericNode":
        return cls(unbin(advice))

    def __call__(self, view: AugView):
        x, t = self.x, view.depth
        if t <= x:
            return None
        known = views_within(view, t - 1 - x, x)
        fresh = frontier(view, t - x)
        if not fresh <= known:
            return None
        return path_to(view, min_view(known), x)


class DiameterIndexNode:
    """Knows D and phi: waits D + phi rounds, then heads for the smallest depth-phi view."""

    def __init__(self, advice: str):
        parts = decode(advice)
        if len(parts) != 2:
            raise AdviceMismatch("expected two numbers")
        self.diam, self.phi = unbin(parts[0]), unbin(parts[1])
        if self.phi < 1:
            raise AdviceMismatch("election index must be positive")

    def __call__(self, view: AugView):
        if view.depth < self.diam + self.phi:
            return None
        known = views_within(view, self.diam, self.phi)
        return path_to(view, min_view(known), self.phi)


# --- the four large-time variants ------------------------------------------------


def tower(i: int) -> int:
    """2^2^...^2 with i twos; tower(0) == 1."""
    v = 1
    for _ in range(i):
        v = 2**v
    return v


def log_star(phi: int) -> int:
    """Number of base-2 logarithms taking phi below 2."""
    i = 0
    while phi >= tower(i + 1):
        i += 1
    return i


def floor_log(phi: int) -> int:
    return phi.bit_length() - 1


def floor_loglog(phi: int) -> int:
    if phi < 2:
        raise ValueError("log log is undefined below 2")
    k = 0
    while phi >= 2 ** (2 ** (k + 1)):
        k += 1
    return k


def variant_value(phi: int, variant: int) -> int | None:
    """The integer shipped as advice for variant 1..4 (None: empty advice)."""
    if variant == 1:
        return phi
    if variant == 2:
        return floor_log(phi)
    if variant == 3:
        return floor_loglog(phi) if phi >= 2 else None
    if variant == 4:
        return log_star(phi)
    raise ValueError(f"variant must be 1..4, got {variant}")


def variant_advice(phi: int, variant: int) -> str:
    value = variant_value(phi, variant)
    return "" if value is None else bin_int(value)


def variant_parameter(variant: int, advice: str) -> int:
    """The Generic parameter a node derives from variant advice; never below phi."""
    if variant == 3 and advice == "":
        return 1
    a = unbin(advice)
    if variant == 1:
        return a
    if variant == 2:
        return 2 ** (a + 1) - 1
    if variant == 3:
        return 2 ** (2 ** (a + 1)) - 1
    if variant == 4:
        return tower(a + 1) - 1
    raise ValueError(f"variant must be 1..4, got {variant}")


def variant_time_bound(variant: int, diam: int, phi: int, c: int) -> int:
    if c < 2:
        raise ValueError("c must be an integer above 1")
    extra = {1: phi + c, 2: c * phi, 3: phi**c, 4: c**phi}
    try:
        return diam + extra[variant]
    except KeyError:
        raise ValueError(f"variant must be 1..4, got {variant}") from None


# --- runners -------------------------------------------------------------------


def _cap(g: PortGraph, wait: int) -> int:
    # D <= n - 1, so n + wait + 1 rounds is always enough for a correct run
    return g.n + wait + 1


def run_elect(g: PortGraph, advice: str, max_rounds: int | None = None) -> ElectionOutcome:
    return simulate(g, ElectNode, advice, max_rounds or _cap(g, g.n), "elect")


def run_generic(g: PortGraph, x: int) -> ElectionOutcome:
    return simulate(g, GenericNode.from_advice, bin_int(x), _cap(g, x), f"generic({x})")


def run_election_variant(g: PortGraph, variant: int, advice: str) -> ElectionOutcome:
    if variant not in (1, 2, 3, 4):
        raise ValueError(f"variant must be 1..4, got {variant}")
    try:
        x = variant_parameter(variant, advice)
    except ValueError:
        x = g.n

    def factory(adv: str) -> NodeProgram:
        return GenericNode(variant_parameter(variant, adv))

    return simulate(g, factory, advice, _cap(g, x), f"election{variant}")


def dphi_advice(diam: int, phi: int) -> str:
    return concat([bin_int(diam), bin_int(phi)])


def run_election_dphi(g: PortGraph, advice: str | None = None) -> ElectionOutcome:
    if advice is None:
        phi = election_index(g)
        if phi is None:
            raise ValueError("infeasible graph")
        advice = dphi_advice(diameter(g), phi)
    return simulate(g, DiameterIndexNode, advice, _cap(g, 2 * g.n), "dphi")
