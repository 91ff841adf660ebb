"""Augmented truncated views, their order, and partition refinement.

Views are hash-consed: building the same view twice returns the same
object, so equality is identity and a depth-l view costs O(n * l) memory
as a DAG even though the tree it denotes is exponential.
"""

from __future__ import annotations

import functools
import weakref
from dataclasses import dataclass
from typing import Iterable, Sequence

from .encoding import bin_int, concat
from .graph_core import PortGraph


class AugView:
    """Augmented truncated view: root degree plus, when depth > 0, one
    ``(up_port, child view)`` entry per down-port ``0..degree-1``.

    A depth-0 view is a single node labeled with its degree.
    """

    __slots__ = ("degree", "children", "depth", "__weakref__")

    _table: "weakref.WeakValueDictionary[tuple, AugView]" = weakref.WeakValueDictionary()

    degree: int
    children: tuple[tuple[int, "AugView"], ...]
    depth: int

    def __new__(cls, degree: int, children: Iterable[tuple[int, "AugView"]] = ()):
        children = tuple((int(q), c) for q, c in children)
        key = (degree, tuple((q, id(c)) for q, c in children))
        hit = cls._table.get(key)
        if hit is not None:
            return hit
        if children:
            if len(children) != degree:
                raise ValueError("fan-out must equal degree")
            depth = children[0][1].depth + 1
            if any(c.depth != depth - 1 for _, c in children):
                raise ValueError("children must share one depth")
        else:
            depth = 0
        self = object.__new__(cls)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "children", children)
        object.__setattr__(self, "depth", depth)
        cls._table[key] = self
        return self

    def __setattr__(self, name, value):
        raise AttributeError("AugView is immutable")

    def __reduce__(self):
        return (AugView, (self.degree, self.children))

    # interning makes identity the equality
    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return id(self)

    def __lt__(self, other: "AugView") -> bool:
        return compare_views(self, other) < 0

    def __repr__(self) -> str:
        return f"AugView(degree={self.degree}, depth={self.depth})"

    def child(self, port: int) -> "AugView":
        return self.children[port][1]


def leaf(degree: int) -> AugView:
    return AugView(degree)


_trunc_memo: "weakref.WeakKeyDictionary[AugView, dict[int, AugView]]" = weakref.WeakKeyDictionary()


def truncate(b: AugView, x: int) -> AugView:
    """The depth-x view of the root of ``b`` (x <= depth of b)."""
    if x > b.depth:
        raise ValueError(f"depth overflow: cannot truncate depth {b.depth} view to {x}")
    if x == b.depth:
        return b
    memo = _trunc_memo.setdefault(b, {})
    hit = memo.get(x)
    if hit is None:
        if x == 0:
            hit = AugView(b.degree)
        else:
            hit = AugView(b.degree, ((q, truncate(c, x - 1)) for q, c in b.children))
        memo[x] = hit
    return hit


def extract_subview(b: AugView, path: Sequence[int], x: int) -> AugView:
    """Depth-x view of the tree node reached from the root of ``b`` via down-ports ``path``."""
    if len(path) + x > b.depth:
        raise ValueError(f"depth overflow: {len(path)} + {x} > {b.depth}")
    node = b
    for p in path:
        node = node.child(p)
    return truncate(node, x)


_front_memo: "weakref.WeakKeyDictionary[AugView, dict[int, frozenset]]" = weakref.WeakKeyDictionary()


def frontier(b: AugView, j: int) -> frozenset:
    """Distinct views hanging at tree depth j below the root of ``b``."""
    if j > b.depth:
        raise ValueError(f"depth overflow: {j} > {b.depth}")
    if j == 0:
        return frozenset((b,))
    memo = _front_memo.setdefault(b, {})
    hit = memo.get(j)
    if hit is None:
        hit = frozenset().union(*(frontier(c, j - 1) for _, c in b.children))
        memo[j] = hit
    return hit


# --- order ------------------------------------------------------------------

_cmp_memo: dict[tuple[AugView, AugView], int] = {}
_CMP_MEMO_LIMIT = 1 << 20


def compare_views(a: AugView, b: AugView) -> int:
    """Total order on equal-depth views, consistent across depths.

    Depth-l views compare first by their depth-(l-1) truncations; ties are
    broken by root degree, then per port by (up-port, child view).  Hence
    a < b at depth l implies the same order for any deeper views of the
    same two roots.
    """
    if a.depth != b.depth:
        raise ValueError(f"depth mismatch: {a.depth} vs {b.depth}")
    if a is b:
        return 0
    key = (a, b)
    hit = _cmp_memo.get(key)
    if hit is not None:
        return hit
    res = _compare(a, b)
    if len(_cmp_memo) > _CMP_MEMO_LIMIT:
        _cmp_memo.clear()
    _cmp_memo[key] = res
    return res


def _compare(a: AugView, b: AugView) -> int:
    if a.depth == 0:
        return (a.degree > b.degree) - (a.degree < b.degree)
    c = compare_views(truncate(a, a.depth - 1), truncate(b, b.depth - 1))
    if c:
        return c
    # equal truncations imply equal degree
    for (qa, ca), (qb, cb) in zip(a.children, b.children):
        if qa != qb:
            return -1 if qa < qb else 1
        if ca is not cb:
            return compare_views(ca, cb)
    raise AssertionError("distinct interned views compared equal")


def sort_views(views: Iterable[AugView]) -> list[AugView]:
    """Distinct views in ascending order."""
    return sorted(set(views), key=functools.cmp_to_key(compare_views))


def min_view(views: Iterable[AugView]) -> AugView:
    it = iter(views)
    best = next(it)
    for v in it:
        if compare_views(v, best) < 0:
            best = v
    return best


# --- views of a whole graph ---------------------------------------------------


def views_by_depth(g: PortGraph, depth: int) -> list[list[AugView]]:
    """``out[l][v]`` is the depth-l view of node v, for l = 0..depth."""
    adj = g.adj
    layer = [AugView(len(adj[v])) for v in range(g.n)]
    out = [layer]
    for _ in range(depth):
        prev = layer
        layer = [AugView(len(adj[v]), ((q, prev[w]) for w, q in adj[v])) for v in range(g.n)]
        out.append(layer)
    return out


def aug_view(g: PortGraph, v: int, l: int) -> AugView:
    if l < 0:
        raise ValueError("depth must be non-negative")
    return views_by_depth(g, l)[l][v]


def bin_depth1(b: AugView) -> str:
    """Concat of Concat(bin(j), bin(up-port), bin(neighbor degree)) over ports j."""
    if b.depth != 1:
        raise ValueError(f"wrong depth: bin_depth1 needs depth 1, got {b.depth}")
    return concat([concat([bin_int(j), bin_int(q), bin_int(c.degree)]) for j, (q, c) in enumerate(b.children)])


# --- partition refinement ------------------------------------------------------


@dataclass(frozen=True)
class ViewPartition:
    """Classes of depth-l view equality; class ids follow view order."""

    depth: int
    classes: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(set(self.classes))

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for v, c in enumerate(self.classes):
            out[c].append(v)
        return out


def _rank(keys: Sequence) -> tuple[int, ...]:
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return tuple(order[k] for k in keys)


def refine(g: PortGraph, extra: int = 0) -> list[ViewPartition]:
    """Partitions at depths 0, 1, ... up to the first depth whose class count
    repeats the previous one (plus ``extra`` further depths)."""
    adj = g.adj
    cls = _rank([len(a) for a in adj])
    parts = [ViewPartition(0, cls)]
    stable_for = -1
    while True:
        prev = cls
        keys = [(prev[v], tuple((q, prev[w]) for w, q in adj[v])) for v in range(g.n)]
        cls = _rank(keys)
        parts.append(ViewPartition(len(parts), cls))
        if parts[-1].count == parts[-2].count:
            stable_for += 1
            if stable_for >= extra:
                return parts


def election_index(g: PortGraph) -> int | None:
    """Smallest depth at which all views are distinct, or None if infeasible."""
    for part in refine(g):
        if part.count == g.n:
            return part.depth
    return None


def is_feasible(g: PortGraph) -> bool:
    return election_index(g) is not None
