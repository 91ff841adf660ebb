"""Oracle side of minimum-time election: tries that tell views apart,
view labels derived from them, and the advice string.

The same ``local_label`` / ``Labeler`` code runs on the node side, so the
oracle and the nodes compute labels from bit-for-bit identical inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .encoding import (
    LabeledTree,
    NestedList,
    Trie,
    LEAF,
    decode_advice,
    encode_advice,
)
from .graph_core import BfsTree, PortGraph, canonical_bfs_tree
from .views import AugView, bin_depth1, compare_views, election_index, sort_views, truncate, views_by_depth


class InfeasibleGraphError(ValueError):
    pass


class AdviceMismatch(ValueError):
    """The advice does not fit the view it is applied to."""


def local_label(b: AugView, x: Sequence[int], t: Trie) -> int:
    """Position (1-based) of the leaf of ``t`` that ``b`` reaches.

    With an empty ``x`` the queries read ``bin_depth1(b)``: ``(0, y)`` goes
    left when the code is shorter than y, ``(1, y)`` when bit y is 0.
    Otherwise ``(i, y)`` goes left when ``x[i] != y``.
    """
    bits = bin_depth1(b) if not x else None
    label = 1
    node = t
    while not node.is_leaf:
        kind, y = node.query
        if bits is not None:
            if kind == 0:
                left = len(bits) < y
            elif kind == 1:
                if not 1 <= y <= len(bits):
                    raise AdviceMismatch(f"bit query {y} outside a {len(bits)}-bit code")
                left = bits[y - 1] == "0"
            else:
                raise AdviceMismatch(f"unknown depth-1 query kind {kind}")
        else:
            if kind >= len(x):
                raise AdviceMismatch(f"query index {kind} beyond {len(x)} neighbors")
            left = x[kind] != y
        if left:
            node = node.left
        else:
            label += node.left.leaves
            node = node.right
    return label


class Labeler:
    """Label of a view from (E1, E2), memoized per view object."""

    def __init__(self, e1: Trie, e2: NestedList = ()):
        self.e1 = e1
        self._lists: dict[int, dict[int, Trie]] = {}
        self._cache: dict[AugView, int] = {}
        for depth, items in e2:
            self.extend(depth, items)

    def extend(self, depth: int, items: Sequence[tuple[int, Trie]]) -> None:
        if depth in self._lists:
            raise AdviceMismatch(f"depth {depth} listed twice")
        self._lists[depth] = dict(items)

    def label(self, b: AugView) -> int:
        hit = self._cache.get(b)
        if hit is None:
            hit = self._compute(b)
            self._cache[b] = hit
        return hit

    def _compute(self, b: AugView) -> int:
        d = b.depth
        if d == 0:
            raise AdviceMismatch("labels start at depth 1")
        if d == 1:
            return local_label(b, (), self.e1)
        x = [self.label(c) for _, c in b.children]
        prev = self.label(truncate(b, d - 1))
        tries = self._lists.get(d)
        if tries is None:
            raise AdviceMismatch(f"no trie list for depth {d}")
        total = 0
        for i in range(1, prev):
            t = tries.get(i)
            total += t.leaves if t is not None else 1
        t = tries.get(prev)
        total += local_label(b, x, t) if t is not None else 1
        return total


def retrieve_label(b: AugView, e1: Trie, e2: NestedList) -> int:
    return Labeler(e1, e2).label(b)


def discriminatory_index(views: Sequence[AugView]) -> tuple[int, AugView]:
    """Port where the two smallest views first differ one level down, and
    the smaller of the two neighbor views behind it."""
    u, v = sort_views(views)[:2]
    for i, ((_, cu), (_, cv)) in enumerate(zip(u.children, v.children)):
        if cu is not cv:
            return i, (cu if compare_views(cu, cv) < 0 else cv)
    raise ValueError("views agree on every neighbor; they are not one class split")


@dataclass
class TrieTrace:
    """(|S|, trie size) for every build_trie call, nested calls included."""

    calls: list[tuple[int, int]] = field(default_factory=list)


def build_trie(
    views: Sequence[AugView],
    e1: Trie | None = None,
    e2: NestedList = (),
    *,
    labeler: Labeler | None = None,
    trace: TrieTrace | None = None,
) -> Trie:
    """Trie whose leaves separate the distinct views in ``views``."""
    s = sort_views(views)
    if not s:
        raise ValueError("build_trie needs at least one view")
    if e1 is not None and labeler is None:
        labeler = Labeler(e1, e2)
    t = _build(s, labeler, trace)
    return t


def _build(s: list[AugView], labeler: Labeler | None, trace: TrieTrace | None) -> Trie:
    if len(s) == 1:
        t = LEAF
    else:
        if labeler is None:
            if s[0].depth != 1:
                raise ValueError("a trie without E1 only separates depth-1 views")
            codes = {b: bin_depth1(b) for b in s}
            longest = max(len(c) for c in codes.values())
            if any(len(c) < longest for c in codes.values()):
                query = (0, longest)
                go_left = [b for b in s if len(codes[b]) < longest]
            else:
                j = next(k for k in range(longest) if len({codes[b][k] for b in s}) > 1)
                query = (1, j + 1)
                go_left = [b for b in s if codes[b][j] == "0"]
        else:
            port, disc = discriminatory_index(s[:2])
            query = (port, labeler.label(disc))
            go_left = [b for b in s if b.child(port) is not disc]
        left_set = set(go_left)
        go_right = [b for b in s if b not in left_set]
        assert go_left and go_right
        t = Trie(query, _build(go_left, labeler, trace), _build(go_right, labeler, trace))
    if trace is not None:
        trace.calls.append((len(s), t.size))
    return t


# --- advice ------------------------------------------------------------------


@dataclass(frozen=True)
class Advice:
    """Advice string plus its decoded parts.

    ``bfs``, ``labels`` and ``trace`` are oracle-side extras (they carry
    node ids) and are ``None`` for advice decoded from bits.
    """

    phi: int
    e1: Trie
    e2: NestedList
    tree: LabeledTree
    bits: str
    bfs: BfsTree | None = field(default=None, compare=False)
    labels: tuple[int, ...] | None = field(default=None, compare=False)
    trace: TrieTrace | None = field(default=None, compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.bits)

    @classmethod
    def from_bits(cls, bits: str) -> "Advice":
        phi, e1, e2, tree = decode_advice(bits)
        return cls(phi, e1, e2, tree, bits)


def bfs_to_labeled_tree(bfs: BfsTree) -> LabeledTree:
    kids: dict[int, list] = {}
    for u, par in enumerate(bfs.parent):
        if par is not None:
            p, port_u, port_p = par
            kids.setdefault(p, []).append((port_p, port_u, u))

    def nest(u: int):
        return (bfs.labels[u], [(d, up, nest(w)) for d, up, w in kids.get(u, [])])

    return LabeledTree.from_nested(nest(bfs.root))


def compute_advice(g: PortGraph, trace: TrieTrace | None = None) -> Advice:
    phi = election_index(g)
    if phi is None:
        raise InfeasibleGraphError("infeasible graph: some views never separate")
    if trace is None:
        trace = TrieTrace()
    layers = views_by_depth(g, phi)
    e1 = build_trie(layers[1], trace=trace)
    labeler = Labeler(e1)
    e2: NestedList = []
    for depth in range(2, phi + 1):
        groups: dict[AugView, set[AugView]] = {}
        for v in range(g.n):
            groups.setdefault(layers[depth - 1][v], set()).add(layers[depth][v])
        items: list[tuple[int, Trie]] = []
        for prev in sort_views(groups):
            split = groups[prev]
            if len(split) > 1:
                j = labeler.label(prev)
                items.append((j, build_trie(split, e1, labeler=labeler, trace=trace)))
        e2.append((depth, items))
        labeler.extend(depth, items)
    labels = tuple(labeler.label(layers[phi][v]) for v in range(g.n))
    root = labels.index(1)
    bfs = canonical_bfs_tree(g, root, labels)
    tree = bfs_to_labeled_tree(bfs)
    bits = encode_advice(phi, e1, e2, tree)
    return Advice(phi, e1, e2, tree, bits, bfs, labels, trace)
