"""Reproducible test corpora.

Randomness comes from a counter-based generator: draw number c under seed
s is the SHA-256 digest of ``"<s>:<c>"`` read as a big-endian integer.
No global state, so any draw can be recomputed in isolation.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .families import (
    HairyRingSpec,
    NecklaceSpec,
    default_necklace_codes,
    gen_hairy_ring,
    gen_necklace,
    gen_ring_cliques,
    ring_clique_permutations,
)
from .graph_core import PortGraph
from .views import election_index


class CounterRng:
    def __init__(self, seed: int | str):
        self.seed = str(seed)
        self.counter = 0

    def draw(self) -> int:
        digest = hashlib.sha256(f"{self.seed}:{self.counter}".encode()).digest()
        self.counter += 1
        return int.from_bytes(digest, "big")

    def below(self, n: int) -> int:
        # 256-bit draws make modulo bias negligible at corpus sizes
        return self.draw() % n

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items


def random_graph(n: int, extra_edges: int, rng: CounterRng) -> PortGraph:
    """Random spanning tree plus extra edges, with shuffled ports at every node."""
    nbrs: list[list[int]] = [[] for _ in range(n)]
    order = rng.shuffle(list(range(n)))
    for i in range(1, n):
        u, v = order[i], order[rng.below(i)]
        nbrs[u].append(v)
        nbrs[v].append(u)
    max_edges = n * (n - 1) // 2
    added, tries = 0, 0
    while added < extra_edges and (n - 1 + added) < max_edges and tries < 50 * (extra_edges + 1):
        tries += 1
        u, v = rng.below(n), rng.below(n)
        if u != v and v not in nbrs[u]:
            nbrs[u].append(v)
            nbrs[v].append(u)
            added += 1
    for lst in nbrs:
        rng.shuffle(lst)
    pos = [{w: p for p, w in enumerate(lst)} for lst in nbrs]
    edges = [(u, p, w, pos[w][u]) for u in range(n) for p, w in enumerate(nbrs[u]) if u < w]
    return PortGraph.build(n, edges)


def random_feasible_graph(n: int, seed: int | str, extra_edges: int | None = None) -> PortGraph:
    rng = CounterRng(f"{seed}:{n}")
    extra = n // 3 if extra_edges is None else extra_edges
    while True:
        g = random_graph(n, extra, rng)
        if election_index(g) is not None:
            return g


@dataclass(frozen=True)
class Sample:
    name: str
    family: str
    graph: PortGraph = field(repr=False)
    meta: dict = field(default_factory=dict, compare=False)


def random_samples(sizes: Sequence[int], per_size: int, seed: int | str = 0) -> list[Sample]:
    out = []
    for n in sizes:
        for i in range(per_size):
            g = random_feasible_graph(n, f"{seed}:{i}")
            out.append(Sample(f"random-n{n:02d}-{i:02d}", "random", g, {"n": n, "index": i}))
    return out


def ring_clique_samples(count: int = 24) -> list[Sample]:
    out = []
    plans = [(4, 3), (5, 3), (6, 3)]
    for k, x in plans:
        for perm in ring_clique_permutations(k):
            if len(out) == count:
                return out
            g = gen_ring_cliques(k, x, perm)
            tag = "".join(map(str, perm))
            out.append(Sample(f"ringcliques-k{k}-x{x}-{tag}", "ring-cliques", g, {"k": k, "x": x, "perm": perm}))
    return out


def necklace_samples(per_combo: int = 2) -> list[Sample]:
    out = []
    for phi, k, x in itertools.product((2, 3, 4), (4, 6), (3, 4)):
        # skip the all-zero code so the ports inside diamonds actually vary
        for code in default_necklace_codes(k, x, per_combo + 1)[1:]:
            nk = gen_necklace(NecklaceSpec(k, x, phi, code))
            tag = "".join(map(str, code))
            meta = {"k": k, "x": x, "phi": phi, "code": code, "left": nk.left_leaf, "right": nk.right_leaf}
            out.append(Sample(f"necklace-p{phi}-k{k}-x{x}-{tag}", "necklace", nk.graph, meta))
    return out


def hairy_ring_specs(count: int = 24, seed: int | str = 0) -> Iterator[HairyRingSpec]:
    rng = CounterRng(f"hairy:{seed}")
    made = 0
    while made < count:
        ring = 3 + rng.below(8)
        stars = [rng.below(3) for _ in range(ring)]
        stars[rng.below(ring)] = 3 + rng.below(2)
        spec = HairyRingSpec(tuple(stars))
        try:
            spec.check()
        except ValueError:
            continue
        made += 1
        yield spec


def hairy_ring_samples(count: int = 24, seed: int | str = 0) -> list[Sample]:
    out = []
    for i, spec in enumerate(hairy_ring_specs(count, seed)):
        tag = "".join(map(str, spec.stars))
        out.append(Sample(f"hairy-{i:02d}-{tag}", "hairy-ring", gen_hairy_ring(spec), {"stars": spec.stars}))
    return out


def family_samples() -> list[Sample]:
    return ring_clique_samples() + necklace_samples() + hairy_ring_samples()


def standard_corpus(seed: int | str = 0) -> list[Sample]:
    """Random feasible graphs (n <= 32) plus every family sample."""
    small = random_samples(range(4, 11), 8, f"small:{seed}")
    larger = random_samples((12, 16, 20, 24, 28, 32), 13, f"large:{seed}")
    return small + larger + family_samples()
