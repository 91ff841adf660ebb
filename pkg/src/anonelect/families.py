"""Generators for structured graph families, with certifiers for the
properties they are built to have.

Free port choices always follow one rule: walk nodes in construction
order and give each new edge the smallest free port.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .graph_core import PortGraph, canonical_code
from .views import election_index, views_by_depth


class FamilyError(ValueError):
    pass


# --- clique family ----------------------------------------------------------------


def shift_sequences(x: int) -> list[tuple[int, ...]]:
    """All (h_0..h_{x-1}) over {1..x-1}, lexicographic."""
    return list(itertools.product(range(1, x), repeat=x))


def clique_member_ports(x: int, shifts: Sequence[int]) -> list[tuple[int, int, int, int]]:
    """Edges of an (x+1)-clique: node 0 is the hub, node j+1 is the j-th rim node.

    The hub uses port j toward rim node j.  Rim node j starts from the
    smallest-free layout (port 0 to the hub, then the other rim nodes in
    order) and then shifts every port p to (p + shifts[j]) mod x.
    """
    if x < 2:
        raise FamilyError("clique family needs x >= 2")
    if len(shifts) != x:
        raise FamilyError(f"need {x} shifts, got {len(shifts)}")

    def rim_port(j: int, toward: int | None) -> int:
        base = 0 if toward is None else (toward + 1 if toward < j else toward)
        return (base + shifts[j]) % x

    edges = [(0, j, j + 1, rim_port(j, None)) for j in range(x)]
    for j in range(x):
        for l in range(j + 1, x):
            edges.append((j + 1, rim_port(j, l), l + 1, rim_port(l, j)))
    return edges


def clique_member(x: int, t: int) -> PortGraph:
    """Member t (1-based) of the clique family for x."""
    seqs = shift_sequences(x)
    if not 1 <= t <= len(seqs):
        raise FamilyError(f"member index {t} outside 1..{len(seqs)}")
    return PortGraph.build(x + 1, clique_member_ports(x, seqs[t - 1]))


def gen_clique_family(x: int) -> list[PortGraph]:
    return [PortGraph.build(x + 1, clique_member_ports(x, s)) for s in shift_sequences(x)]


def _attach_clique(edges: list, hub: int, first_rim: int, x: int, member: int) -> None:
    shifts = shift_sequences(x)[member - 1]
    ids = [hub] + list(range(first_rim, first_rim + x))
    for u, p, v, q in clique_member_ports(x, shifts):
        edges.append((ids[u], p, ids[v], q))


# --- ring of cliques -------------------------------------------------------------


def gen_ring_cliques(k: int, x: int, permutation: Sequence[int] | None = None) -> PortGraph:
    """Ring w_1..w_k, clique member 1 at w_1 and member permutation[i-2] at w_i.

    Ring node i uses port x toward its clockwise neighbor and x+1 toward
    the other one.  Node ids: ring nodes 0..k-1, then each clique's rim.
    """
    if k < 3 or x < 2:
        raise FamilyError("need k >= 3 and x >= 2")
    if k > (x - 1) ** x:
        raise FamilyError(f"k={k} exceeds the {(x - 1) ** x} cliques available for x={x}")
    perm = list(range(2, k + 1)) if permutation is None else list(permutation)
    if sorted(perm) != list(range(2, k + 1)):
        raise FamilyError("permutation must rearrange 2..k")
    members = [1] + perm
    edges: list = []
    for i in range(k):
        _attach_clique(edges, i, k + i * x, x, members[i])
        edges.append((i, x, (i + 1) % k, x + 1))
    return PortGraph.build(k * (x + 1), edges)


def ring_clique_permutations(k: int) -> "itertools.permutations":
    return itertools.permutations(range(2, k + 1))


# --- necklaces ------------------------------------------------------------------------


@dataclass(frozen=True)
class NecklaceSpec:
    k: int
    x: int
    phi: int
    code: tuple[int, ...]

    def check(self) -> None:
        k, x = self.k, self.x
        if k < 4 or k % 2:
            raise FamilyError("k must be even and at least 4")
        if x < 2 or k > (x - 1) ** x:
            raise FamilyError(f"need x >= 2 and k <= (x-1)^x (k={k}, x={x})")
        if self.phi < 2:
            raise FamilyError("phi must be at least 2")
        if len(self.code) != k:
            raise FamilyError(f"code must have {k} entries")
        if self.code[0] != 0 or self.code[-1] != 0:
            raise FamilyError("code must start and end with 0")
        if any(not 0 <= c <= x for c in self.code):
            raise FamilyError(f"code entries must lie in 0..{x}")


@dataclass(frozen=True)
class Necklace:
    graph: PortGraph
    spec: NecklaceSpec
    left_leaf: int
    right_leaf: int
    joints: tuple[int, ...]


def gen_necklace(spec: NecklaceSpec) -> Necklace:
    spec.check()
    k, x, phi, code = spec.k, spec.x, spec.phi, spec.code
    chain = phi - 1
    a = list(range(chain))
    b = list(range(chain, 2 * chain))
    joints = list(range(2 * chain, 2 * chain + k))
    next_id = 2 * chain + k
    edges: list = []
    for i in range(k):
        _attach_clique(edges, joints[i], next_id, x, i + 1)
        next_id += x
    for i in range(k - 1):  # diamond between joints i and i+1 (0-based)
        shift = code[i]
        ids = list(range(next_id, next_id + x))
        next_id += x

        def dp(p: int) -> int:
            return (p + shift) % (x + 1)

        for m in range(x):
            for l in range(m + 1, x):
                edges.append((ids[m], dp(l - 1), ids[l], dp(m)))
        # 1-based joint i+1 is even exactly when the 0-based index i is odd
        left_base = x if i == 0 or i % 2 == 0 else 2 * x
        right_base = x if i + 1 == k - 1 or (i + 1) % 2 == 1 else 2 * x
        for m in range(x):
            edges.append((ids[m], dp(x - 1), joints[i], left_base + m))
            edges.append((ids[m], dp(x), joints[i + 1], right_base + m))
    for side, w in ((a, joints[0]), (b, joints[-1])):
        edges.append((side[-1], 0, w, 2 * x))
        for i in range(1, chain):
            edges.append((side[i], 1, side[i - 1], 0))
    g = PortGraph.build(next_id, edges)
    return Necklace(g, spec, a[0], b[0], tuple(joints))


def necklace_size(k: int, x: int, phi: int) -> int:
    """Node count actually produced by gen_necklace."""
    return 2 * (phi - 1) + k + k * x + (k - 1) * x


# --- hairy rings ---------------------------------------------------------------------


@dataclass(frozen=True)
class HairyRingSpec:
    """Star sizes attached to ring nodes, listed clockwise."""

    stars: tuple[int, ...]

    def check(self) -> None:
        if len(self.stars) < 3:
            raise FamilyError("ring must have at least 3 nodes")
        if any(s < 0 for s in self.stars):
            raise FamilyError("star sizes must be non-negative")
        top = max(self.stars)
        if self.stars.count(top) != 1:
            raise FamilyError("the largest star must be unique")


@dataclass(frozen=True)
class Fragment:
    """Port graph with two open ports: port 0 at ``first`` and port 1 at ``last``."""

    n: int
    edges: tuple[tuple[int, int, int, int], ...]
    first: int
    last: int
    ring: tuple[int, ...]  # former ring nodes, in order


def _hairy_edges(stars: Sequence[int], closed: bool) -> tuple[int, list]:
    n_ring = len(stars)
    edges = []
    for i in range(n_ring if closed else n_ring - 1):
        edges.append((i, 1, (i + 1) % n_ring, 0))
    leaf = n_ring
    for i, s in enumerate(stars):
        for m in range(s):
            edges.append((i, 2 + m, leaf, 0))
            leaf += 1
    return leaf, edges


def gen_hairy_ring(spec: HairyRingSpec) -> PortGraph:
    """Ring nodes 0..n-1 clockwise: port 1 clockwise, port 0 counter-clockwise,
    star leaves on ports 2.. at the ring node and port 0 at the leaf."""
    spec.check()
    size, edges = _hairy_edges(spec.stars, closed=True)
    return PortGraph.build(size, edges)


def cut(spec: HairyRingSpec, w: int) -> Fragment:
    """Open the ring before node w; ring order restarts at w."""
    spec.check()
    if not 0 <= w < len(spec.stars):
        raise FamilyError(f"no ring node {w}")
    stars = spec.stars[w:] + spec.stars[:w]
    size, edges = _hairy_edges(stars, closed=False)
    ring = tuple(range(len(stars)))
    return Fragment(size, tuple(edges), 0, len(stars) - 1, ring)


def gamma_stretch(spec: HairyRingSpec, w: int, gamma: int) -> Fragment:
    """Chain gamma copies of the cut; copy i's first node meets copy i-1's last node."""
    if gamma < 2:
        raise FamilyError("gamma must be at least 2")
    base = cut(spec, w)
    edges: list = []
    ring: list[int] = []
    for c in range(gamma):
        off = c * base.n
        edges += [(u + off, p, v + off, q) for u, p, v, q in base.edges]
        ring += [r + off for r in base.ring]
        if c:
            edges.append((base.first + off, 0, base.last + off - base.n, 1))
    return Fragment(gamma * base.n, tuple(edges), base.first, base.last + (gamma - 1) * base.n, tuple(ring))


def close_with_hub(frag: Fragment, hub_star: int) -> PortGraph:
    """Add one ring node carrying a star of ``hub_star`` leaves between last and first."""
    hub = frag.n
    edges = list(frag.edges)
    edges.append((frag.last, 1, hub, 0))
    edges.append((hub, 1, frag.first, 0))
    for m in range(hub_star):
        edges.append((hub, 2 + m, hub + 1 + m, 0))
    return PortGraph.build(hub + 1 + hub_star, edges)


def stretch_stars(spec: HairyRingSpec, w: int, gamma: int) -> tuple[int, ...]:
    return (spec.stars[w:] + spec.stars[:w]) * gamma


# --- certifiers -----------------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    ok: bool
    detail: str


def certify_ring_cliques(g: PortGraph) -> Certificate:
    phi = election_index(g)
    return Certificate(phi == 1, f"phi={phi}")


def certify_necklace(nk: Necklace) -> Certificate:
    phi = election_index(nk.graph)
    if phi != nk.spec.phi:
        return Certificate(False, f"phi={phi}, expected {nk.spec.phi}")
    layer = views_by_depth(nk.graph, phi - 1)[phi - 1]
    if layer[nk.left_leaf] is not layer[nk.right_leaf]:
        return Certificate(False, f"leaf views differ at depth {phi - 1}")
    return Certificate(True, f"phi={phi}, leaves agree at depth {phi - 1}")


def certify_hairy_ring(g: PortGraph) -> Certificate:
    top = g.max_degree
    unique = g.degrees.count(top) == 1
    feasible = election_index(g) is not None
    return Certificate(unique and feasible, f"unique max degree={unique} feasible={feasible}")


def same_graph(g: PortGraph, h: PortGraph) -> bool:
    return g.n == h.n and canonical_code(g) == canonical_code(h)


def default_necklace_codes(k: int, x: int, count: int) -> list[tuple[int, ...]]:
    """First ``count`` codes in lexicographic order of the interior entries."""
    out = []
    for inner in itertools.product(range(x + 1), repeat=k - 2):
        out.append((0,) + inner + (0,))
        if len(out) == count:
            break
    return out


def smallest_clique_x(k: int) -> int:
    """Smallest x with k <= (x-1)^x."""
    x = 2
    while (x - 1) ** x < k:
        x += 1
    return x

