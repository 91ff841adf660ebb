"""Port-numbered anonymous graphs.

Node ids exist only on the harness side.  Node-side code never sees a
``PortGraph``; it only receives views and advice (see ``local_sim``).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    """A PortGraph invariant is violated."""


class GraphFormatError(GraphError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class PathError(ValueError):
    pass


Edge = tuple[int, int, int, int]  # (u, port at u, v, port at v)


@dataclass(frozen=True)
class PortGraph:
    """Undirected graph with a local port numbering at every node.

    ``edges`` holds each undirected edge once as ``(u, p_u, v, p_v)``.
    Construction does not validate; use :meth:`build` or :func:`validate`.
    """

    n: int
    edges: tuple[Edge, ...]

    @classmethod
    def build(cls, n: int, edges: Iterable[Sequence[int]]) -> "PortGraph":
        g = cls(n, tuple(sorted(_normalize(e) for e in edges)))
        validate(g)
        return g

    @classmethod
    def from_adjacency(cls, adj: Sequence[Sequence[tuple[int, int]]]) -> "PortGraph":
        """Build from ``adj[u][p] = (v, q)``; each edge must appear from both sides."""
        edges = []
        for u, ports in enumerate(adj):
            for p, (v, q) in enumerate(ports):
                if (u, p) < (v, q):
                    edges.append((u, p, v, q))
        return cls.build(len(adj), edges)

    @cached_property
    def adj(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """``adj[u][p] == (v, q)``: port p at u leads to v, arriving on port q."""
        table: list[dict[int, tuple[int, int]]] = [{} for _ in range(self.n)]
        for u, p, v, q in self.edges:
            table[u][p] = (v, q)
            table[v][q] = (u, p)
        return tuple(tuple(t[p] for p in range(len(t))) for t in table)

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    def neighbor(self, u: int, p: int) -> tuple[int, int]:
        return self.adj[u][p]

    @property
    def max_degree(self) -> int:
        return max(self.degrees)


def _normalize(e: Sequence[int]) -> Edge:
    u, p, v, q = (int(t) for t in e)
    return (u, p, v, q) if (u, p) <= (v, q) else (v, q, u, p)


def validate(g: PortGraph) -> None:
    """Raise GraphError naming the first violated invariant."""
    if g.n < 3:
        raise GraphError(f"n < 3 (n={g.n})")
    ports: list[dict[int, tuple[int, int]]] = [{} for _ in range(g.n)]
    seen_pairs: set[frozenset[int]] = set()
    for u, p, v, q in g.edges:
        for node, port in ((u, p), (v, q)):
            if not 0 <= node < g.n:
                raise GraphError(f"node {node} out of range")
            if port < 0:
                raise GraphError(f"port range: negative port {port} at node {node}")
        if u == v:
            raise GraphError(f"self-loop at node {u}")
        pair = frozenset((u, v))
        if pair in seen_pairs:
            raise GraphError(f"multi-edge between {u} and {v}")
        seen_pairs.add(pair)
        for node, port, other in ((u, p, (v, q)), (v, q, (u, p))):
            if port in ports[node]:
                raise GraphError(f"port range: port {port} repeated at node {node}")
            ports[node][port] = other
    for u in range(g.n):
        d = len(ports[u])
        if set(ports[u]) != set(range(d)):
            raise GraphError(f"port range: ports {sorted(ports[u])} at node {u} of degree {d}")
    _check_reciprocity(g)
    if len(bfs_distances(g, 0)) != g.n:
        raise GraphError("disconnected")


def _check_reciprocity(g: PortGraph) -> None:
    adj = g.adj
    for u, ports in enumerate(adj):
        for p, (v, q) in enumerate(ports):
            if q >= len(adj[v]) or adj[v][q] != (u, p):
                raise GraphError(f"reciprocity: port {p} at {u} -> ({v}, {q}) has no matching reverse entry")


def validate_adjacency(adj: Sequence[Sequence[tuple[int, int]]]) -> None:
    """Validate a raw ``adj[u][p] = (v, q)`` table, including reciprocity."""
    n = len(adj)
    if n < 3:
        raise GraphError(f"n < 3 (n={n})")
    for u, ports in enumerate(adj):
        for p, (v, q) in enumerate(ports):
            if not 0 <= v < n or not 0 <= q < len(adj[v]) or tuple(adj[v][q]) != (u, p):
                raise GraphError(f"reciprocity: port {p} at {u} -> ({v}, {q}) has no matching reverse entry")
    PortGraph.from_adjacency(adj)


def bfs_distances(g: PortGraph, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    adj = g.adj
    while queue:
        u = queue.popleft()
        for v, _ in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def eccentricity(g: PortGraph, u: int) -> int:
    return max(bfs_distances(g, u).values())


def diameter(g: PortGraph) -> int:
    return max(eccentricity(g, u) for u in range(g.n))


# --- canonical BFS trees ---------------------------------------------------


@dataclass(frozen=True)
class BfsTree:
    """Spanning tree of a PortGraph, harness side (carries node ids).

    ``parent[u]`` is ``None`` at the root, else ``(parent id, port at u,
    port at parent)``.
    """

    root: int
    parent: tuple[tuple[int, int, int] | None, ...]
    depth: tuple[int, ...]
    labels: tuple[int, ...]

    def path_to_root(self, u: int) -> tuple[int, ...]:
        seq: list[int] = []
        while self.parent[u] is not None:
            par, p, q = self.parent[u]
            seq += (p, q)
            u = par
        return tuple(seq)


def canonical_bfs_tree(g: PortGraph, root: int, labels: Mapping[int, int] | Sequence[int]) -> BfsTree:
    """Each node at level i+1 hangs off the level-i neighbor behind its smallest such port."""
    lab = tuple(labels[u] for u in range(g.n))
    if len(set(lab)) != g.n:
        raise ValueError("labels must be injective")
    dist = bfs_distances(g, root)
    parent: list[tuple[int, int, int] | None] = [None] * g.n
    for u in range(g.n):
        if u == root:
            continue
        for p, (v, q) in enumerate(g.adj[u]):
            if dist[v] == dist[u] - 1:
                parent[u] = (v, p, q)
                break
    return BfsTree(root, tuple(parent), tuple(dist[u] for u in range(g.n)), lab)


def follow_path(g: PortGraph, start: int, seq: Sequence[int]) -> tuple[int, bool]:
    """Walk ``(p1, q1, ..., pk, qk)`` from ``start``; return (end, path is simple)."""
    if len(seq) % 2:
        raise PathError("odd-length port sequence")
    u = start
    visited = {u}
    simple = True
    for i in range(0, len(seq), 2):
        p, q = seq[i], seq[i + 1]
        if not 0 <= p < g.degree(u):
            raise PathError(f"bad port {p} at step {i // 2}")
        v, back = g.adj[u][p]
        if back != q:
            raise PathError(f"reverse mismatch at step {i // 2}: expected {q}, arrived on {back}")
        if v in visited:
            simple = False
        visited.add(v)
        u = v
    return u, simple


def canonical_code(g: PortGraph) -> tuple[int, ...]:
    """Isomorphism invariant for port-labeled graphs (equal iff port-preserving isomorphic).

    From a start node, ports fix a unique BFS numbering; the code is the
    lexicographically smallest relabeled edge list over all start nodes.
    """
    best: tuple[int, ...] | None = None
    adj = g.adj
    for s in range(g.n):
        order = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v, _ in adj[u]:
                if v not in order:
                    order[v] = len(order)
                    queue.append(v)
        code: list[int] = [g.n]
        for u in sorted(range(g.n), key=order.__getitem__):
            code.append(len(adj[u]))
            for v, q in adj[u]:
                code += (order[v], q)
        t = tuple(code)
        if best is None or t < best:
            best = t
    assert best is not None
    return best


# --- text format ----------------------------------------------------------


def format_graph(g: PortGraph) -> str:
    lines = [f"n {g.n}"]
    lines += [f"e {u} {p} {v} {q}" for u, p, v, q in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> PortGraph:
    n: int | None = None
    edges: list[Edge] = []
    seen_ports: dict[tuple[int, int], int] = {}
    seen_pairs: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if n is None:
            if tok[0] != "n" or len(tok) != 2:
                raise GraphFormatError(lineno, "expected 'n <count>'")
            n = _int(tok[1], lineno)
            continue
        if tok[0] != "e" or len(tok) != 5:
            raise GraphFormatError(lineno, "expected 'e <u> <p_u> <v> <p_v>'")
        u, p, v, q = (_int(t, lineno) for t in tok[1:])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(lineno, "node index out of range")
        if u == v:
            raise GraphFormatError(lineno, f"self-loop at node {u}")
        if min(p, q) < 0:
            raise GraphFormatError(lineno, "port range: negative port")
        pair = (min(u, v), max(u, v))
        if pair in seen_pairs:
            raise GraphFormatError(lineno, f"multi-edge between {u} and {v} (first on line {seen_pairs[pair]})")
        seen_pairs[pair] = lineno
        for node, port in ((u, p), (v, q)):
            if (node, port) in seen_ports:
                raise GraphFormatError(
                    lineno, f"port range: port {port} at node {node} already used on line {seen_ports[node, port]}"
                )
            seen_ports[node, port] = lineno
        edges.append((u, p, v, q))
    if n is None:
        raise GraphFormatError(1, "empty graph file")
    g = PortGraph(n, tuple(sorted(_normalize(e) for e in edges)))
    validate(g)
    return g


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphFormatError(lineno, f"not an integer: {tok!r}") from None


def read_graph(path: str | Path) -> PortGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(g: PortGraph, path: str | Path) -> None:
    Path(path).write_text(format_graph(g), encoding="utf-8")


# --- small builders used by tests and the CLI -------------------------------


def path_graph(n: int) -> PortGraph:
    """Path 0-1-...-(n-1); interior node i has port 0 toward i-1 and port 1 toward i+1."""
    edges = []
    for i in range(n - 1):
        p = 0 if i == 0 else 1
        edges.append((i, p, i + 1, 0))
    return PortGraph.build(n, edges)


def cycle_graph(n: int) -> PortGraph:
    """Ring with port 0 clockwise and port 1 counter-clockwise at every node."""
    return PortGraph.build(n, [(i, 0, (i + 1) % n, 1) for i in range(n)])


def complete_graph(n: int) -> PortGraph:
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            edges.append((u, v - 1, v, u))
    return PortGraph.build(n, edges)


def star_graph(leaves: int) -> PortGraph:
    return PortGraph.build(leaves + 1, [(0, i, i + 1, 0) for i in range(leaves)])
