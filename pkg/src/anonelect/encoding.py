"""Bit-string codes for advice: Concat framing, integers, labeled trees,
tries, nested lists and the advice envelope.

Bit strings are plain ``str`` objects over ``{"0", "1"}``, most
significant bit first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence


class MalformedBits(ValueError):
    pass


def concat(parts: Sequence[str]) -> str:
    """Double every bit of every part and put ``01`` between parts."""
    return "01".join(p.replace("0", "00").replace("1", "11") if p else "" for p in parts)


def decode(s: str) -> list[str]:
    """Inverse of :func:`concat`; ``decode("") == [""]``."""
    if len(s) % 2:
        raise MalformedBits("malformed: odd number of bits")
    parts: list[str] = []
    cur: list[str] = []
    for i in range(0, len(s), 2):
        pair = s[i : i + 2]
        if pair == "00":
            cur.append("0")
        elif pair == "11":
            cur.append("1")
        elif pair == "01":
            parts.append("".join(cur))
            cur = []
        else:
            raise MalformedBits(f"malformed: {pair!r} at bit {i}")
    parts.append("".join(cur))
    return parts


def bin_int(x: int) -> str:
    if x < 0:
        raise ValueError("bin of a negative integer")
    return format(x, "b")


def unbin(s: str) -> int:
    """Parse a canonical binary numeral (no leading zeros except ``"0"``)."""
    if not s or (len(s) > 1 and s[0] == "0") or s.strip("01"):
        raise MalformedBits(f"malformed: not a binary numeral: {s!r}")
    return int(s, 2)


def encode_int_list(xs: Sequence[int]) -> str:
    return concat([bin_int(x) for x in xs])


def decode_int_list(s: str) -> list[int]:
    # numerals are never empty, so "" can only be the empty list
    if s == "":
        return []
    return [unbin(p) for p in decode(s)]


# --- rooted trees with ports ----------------------------------------------------


@dataclass(frozen=True)
class LabeledTree:
    """Rooted tree with ports, nodes stored in DFS preorder (root = 0).

    For a non-root node i: ``parent[i]`` is its parent index, ``down[i]``
    the port at the parent and ``up[i]`` the port at i for the tree edge.
    Children of a node appear in increasing ``down`` order.
    """

    parent: tuple[int, ...]
    down: tuple[int, ...]
    up: tuple[int, ...]
    labels: tuple

    @property
    def size(self) -> int:
        return len(self.parent)

    def children(self, i: int) -> list[int]:
        return [c for c in range(i + 1, self.size) if self.parent[c] == i]

    def index_of(self, label) -> int:
        return self.labels.index(label)

    def path_to_root(self, i: int) -> tuple[int, ...]:
        """Port sequence (p1, q1, ...) from node i up to the root."""
        seq: list[int] = []
        while i != 0:
            seq += (self.up[i], self.down[i])
            i = self.parent[i]
        return tuple(seq)

    @classmethod
    def from_nested(cls, root) -> "LabeledTree":
        """Build from ``(label, [(down, up, subtree), ...])`` tuples."""
        parent: list[int] = []
        down: list[int] = []
        up: list[int] = []
        labels: list = []

        def walk(node, par: int, d: int, u: int) -> None:
            idx = len(parent)
            parent.append(par)
            down.append(d)
            up.append(u)
            labels.append(node[0])
            for cd, cu, sub in sorted(node[1], key=lambda t: t[0]):
                walk(sub, idx, cd, cu)

        walk(root, -1, -1, -1)
        return cls(tuple(parent), tuple(down), tuple(up), tuple(labels))


def tree_port_walk(t: LabeledTree) -> list[int]:
    """Port sequence S1 of the DFS walk: each tree edge contributes
    (down, up) when descending and (up, down) when returning."""
    seq: list[int] = []

    def walk(i: int) -> None:
        for c in t.children(i):
            seq.extend((t.down[c], t.up[c]))
            walk(c)
            seq.extend((t.up[c], t.down[c]))

    walk(0)
    return seq


def parse_port_walk(seq: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Rebuild (parent, down, up) from S1; raises MalformedBits if S1 is not a valid walk."""
    if len(seq) % 4:
        raise MalformedBits("malformed: port walk length is not a multiple of 4")
    parent, down, up = [-1], [-1], [-1]
    last_child_port = [-1]
    cur = 0
    for i in range(0, len(seq), 2):
        a, b = seq[i], seq[i + 1]
        if cur != 0 and a == up[cur]:
            if b != down[cur]:
                raise MalformedBits("malformed: return port mismatch in tree walk")
            cur = parent[cur]
            continue
        if a <= last_child_port[cur]:
            raise MalformedBits("malformed: children not in increasing port order")
        last_child_port[cur] = a
        parent.append(cur)
        down.append(a)
        up.append(b)
        last_child_port.append(-1)
        cur = len(parent) - 1
    if cur != 0:
        raise MalformedBits("malformed: tree walk does not return to the root")
    return tuple(parent), tuple(down), tuple(up)


def _encode_tree(t: LabeledTree, label_bits: Callable[[int, object], str]) -> str:
    s1 = encode_int_list(tree_port_walk(t))
    s2 = concat([label_bits(i, lab) for i, lab in enumerate(t.labels)])
    return concat([s1, s2])


def _decode_tree(bits: str) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...], list[str]]:
    parts = decode(bits)
    if len(parts) != 2:
        raise MalformedBits(f"malformed: tree code has {len(parts)} parts, expected 2")
    parent, down, up = parse_port_walk(decode_int_list(parts[0]))
    label_parts = decode(parts[1])
    if len(label_parts) != len(parent):
        raise MalformedBits("malformed: label count does not match tree size")
    return parent, down, up, label_parts


def encode_labeled_tree(t: LabeledTree) -> str:
    return _encode_tree(t, lambda _i, lab: bin_int(lab))


def decode_labeled_tree(bits: str) -> LabeledTree:
    parent, down, up, labs = _decode_tree(bits)
    return LabeledTree(parent, down, up, tuple(unbin(s) for s in labs))


# --- tries ---------------------------------------------------------------------


@dataclass(frozen=True)
class Trie:
    """Binary query tree.  Leaves have ``query is None``; an internal node
    holds ``(x, y)`` with ``left`` for answer "no" and ``right`` for "yes"."""

    query: tuple[int, int] | None = None
    left: "Trie | None" = None
    right: "Trie | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.query is None

    @property
    def size(self) -> int:
        if self.is_leaf:
            return 1
        return 1 + self.left.size + self.right.size

    @property
    def leaves(self) -> int:
        if self.is_leaf:
            return 1
        return self.left.leaves + self.right.leaves

    def internal_nodes(self):
        if not self.is_leaf:
            yield self
            yield from self.left.internal_nodes()
            yield from self.right.internal_nodes()


LEAF = Trie()

# As a standalone tree a trie node has ports 0 (left), 1 (right) and, when
# internal and not the root, 2 toward its parent; a leaf's only port is 0.


def trie_to_tree(tr: Trie) -> LabeledTree:
    def nest(node: Trie):
        if node.is_leaf:
            return (None, [])
        kids = []
        for port, child in ((0, node.left), (1, node.right)):
            kids.append((port, 0 if child.is_leaf else 2, nest(child)))
        return (node.query, kids)

    return LabeledTree.from_nested(nest(tr))


def tree_to_trie(t: LabeledTree) -> Trie:
    def build(i: int) -> Trie:
        kids = t.children(i)
        if not kids:
            if t.labels[i] is not None:
                raise MalformedBits("malformed: trie leaf carries a query")
            return LEAF
        if [t.down[c] for c in kids] != [0, 1]:
            raise MalformedBits("malformed: trie node must have children on ports 0 and 1")
        for c in kids:
            if t.up[c] != (2 if t.children(c) else 0):
                raise MalformedBits("malformed: trie parent port")
        if t.labels[i] is None:
            raise MalformedBits("malformed: internal trie node without a query")
        return Trie(t.labels[i], build(kids[0]), build(kids[1]))

    return build(0)


def _query_bits(_i: int, q) -> str:
    if q is None:
        return "0"
    return concat([bin_int(q[0]), bin_int(q[1])])


def encode_trie(tr: Trie) -> str:
    return _encode_tree(trie_to_tree(tr), _query_bits)


def decode_trie(bits: str) -> Trie:
    parent, down, up, labs = _decode_tree(bits)
    is_parent = set(parent)
    labels = []
    for i, s in enumerate(labs):
        if i in is_parent:
            q = decode(s)
            if len(q) != 2:
                raise MalformedBits("malformed: trie query must be a pair")
            labels.append((unbin(q[0]), unbin(q[1])))
        else:
            if s != "0":
                raise MalformedBits("malformed: trie leaf label must be (0)")
            labels.append(None)
    return tree_to_trie(LabeledTree(parent, down, up, tuple(labels)))


# --- nested lists -------------------------------------------------------------

NestedList = list[tuple[int, list[tuple[int, Trie]]]]


def encode_inner_list(items: Sequence[tuple[int, Trie]]) -> str:
    parts: list[str] = []
    for b, tr in items:
        parts += (bin_int(b), encode_trie(tr))
    return concat(parts)


def decode_inner_list(s: str) -> list[tuple[int, Trie]]:
    if s == "":
        return []
    parts = decode(s)
    if len(parts) % 2:
        raise MalformedBits("malformed: odd number of parts in a list of couples")
    return [(unbin(parts[i]), decode_trie(parts[i + 1])) for i in range(0, len(parts), 2)]


def encode_nested_list(items: NestedList) -> str:
    parts: list[str] = []
    for a, inner in items:
        parts += (bin_int(a), encode_inner_list(inner))
    return concat(parts)


def decode_nested_list(s: str) -> NestedList:
    if s == "":
        return []
    parts = decode(s)
    if len(parts) % 2:
        raise MalformedBits("malformed: odd number of parts in a nested list")
    return [(unbin(parts[i]), decode_inner_list(parts[i + 1])) for i in range(0, len(parts), 2)]


# --- advice envelope ------------------------------------------------------------


def encode_advice(phi: int, e1: Trie, e2: NestedList, tree: LabeledTree) -> str:
    a1 = concat([encode_trie(e1), encode_nested_list(e2)])
    a2 = encode_labeled_tree(tree)
    return concat([bin_int(phi), a1, a2])


def decode_advice(bits: str) -> tuple[int, Trie, NestedList, LabeledTree]:
    parts = decode(bits)
    if len(parts) != 3:
        raise MalformedBits(f"malformed: advice has {len(parts)} parts, expected 3")
    phi = unbin(parts[0])
    a1 = decode(parts[1])
    if len(a1) != 2:
        raise MalformedBits("malformed: first advice item must hold two parts")
    return phi, decode_trie(a1[0]), decode_nested_list(a1[1]), decode_labeled_tree(parts[2])


# --- advice files -------------------------------------------------------------


def format_advice_file(bits: str, fmt: str = "bits") -> str:
    if fmt == "bits":
        body = bits
    elif fmt == "hex":
        padded = bits + "0" * (-len(bits) % 4)
        body = "".join(format(int(padded[i : i + 4], 2), "x") for i in range(0, len(padded), 4))
    else:
        raise ValueError(f"unknown advice format {fmt!r}")
    return f"advice-bits {len(bits)}\n{body}\n"


def parse_advice_file(text: str, fmt: str = "bits") -> str:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("advice-bits "):
        raise MalformedBits("malformed: advice file must start with 'advice-bits <count>'")
    try:
        count = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise MalformedBits("malformed: bad advice bit count") from None
    body = lines[1].strip() if len(lines) > 1 else ""
    if fmt == "hex":
        try:
            bits = "".join(format(int(ch, 16), "04b") for ch in body)
        except ValueError:
            raise MalformedBits("malformed: bad hex digit") from None
        bits = bits[:count]
    elif fmt == "bits":
        bits = body
        if bits.strip("01"):
            raise MalformedBits("malformed: advice body must be 0/1 characters")
    else:
        raise ValueError(f"unknown advice format {fmt!r}")
    if len(bits) != count:
        raise MalformedBits(f"malformed: advice declares {count} bits, found {len(bits)}")
    return bits
