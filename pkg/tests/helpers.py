"""Shared fixtures-as-functions for the test suite.

Everything here is an independent oracle or a deterministic builder; nothing
imports the code paths it is meant to check beyond the public constructors.
"""

import random
from itertools import combinations, permutations

from pagraph import ArrivalGraph, OrderedPattern, SimpleView


def random_view(rng: random.Random, n_lo: int = 3, n_hi: int = 6, p: float = 0.5) -> SimpleView:
    nv = rng.randint(n_lo, n_hi)
    edges = [e for e in combinations(range(nv), 2) if rng.random() < p]
    return SimpleView.from_edges(nv, edges)


def brute_count(sv: SimpleView, pattern: OrderedPattern) -> int:
    """Ordered copy count by explicit subset enumeration."""
    k = pattern.k
    n = sv.num_vertices
    if k > n:
        return 0
    total = 0
    for subset in combinations(range(n), k):
        if all(sv.adjacent(subset[i - 1], subset[j - 1]) for i, j in pattern.edges):
            total += 1
    return total


def brute_unordered_count(sv: SimpleView, pattern: OrderedPattern) -> int:
    """Unordered subgraph-copy count: edge-preserving injections divided by
    the pattern's automorphism count, so each copy (vertex set plus edge
    set) is counted once."""
    k = pattern.k
    labels = range(1, k + 1)
    autos = sum(
        1
        for perm in permutations(labels)
        if {(min(perm[i - 1], perm[j - 1]), max(perm[i - 1], perm[j - 1])) for i, j in pattern.edges}
        == set(pattern.edges)
    )
    embeddings = 0
    for image in permutations(range(sv.num_vertices), k):
        if all(sv.adjacent(image[i - 1], image[j - 1]) for i, j in pattern.edges):
            embeddings += 1
    assert embeddings % autos == 0
    return embeddings // autos


def brute_cycles(sv: SimpleView, a: int) -> list:
    """All simple cycles on 3..a vertices, canonical form, by brute force."""
    out = set()
    for b in range(3, a + 1):
        for subset in combinations(range(sv.num_vertices), b):
            first = subset[0]
            for rest in permutations(subset[1:]):
                cyc = (first,) + rest
                if cyc[1] > cyc[-1]:
                    continue
                if all(sv.adjacent(cyc[i], cyc[(i + 1) % b]) for i in range(b)):
                    out.add(cyc)
    return sorted(out)


def build_layered(num_gadgets: int, a_per_side: int = 4, extra_bs: int = 0) -> ArrivalGraph:
    """Arrival-realizable m=4 graph whose only short cycles sit in far-away
    triangle gadgets.

    Layers: 0 and 1 joined by the 4 initial parallel edges; A-vertices draw
    all four edges to 0 or all four to 1 (so no vertex neighbors both roots);
    B-vertices draw 4 distinct A's; each gadget adds 3 T-vertices forming a
    triangle, padded with 4/3/2 private B draws. Consequences: minimum simple
    degree 4, the only cycles on <= 3 vertices are the gadget triangles, each
    at distance exactly 3 from vertex 0 and pairwise distance 4.
    """
    m = 4
    draws = [0] * m
    a_side0 = list(range(2, 2 + a_per_side))
    a_side1 = list(range(2 + a_per_side, 2 + 2 * a_per_side))
    for _ in a_side0:
        draws.extend([0] * m)
    for _ in a_side1:
        draws.extend([1] * m)
    a_all = a_side0 + a_side1
    next_v = 2 + 2 * a_per_side
    bs = []
    rr = 0
    for _ in range(9 * num_gadgets + extra_bs):
        ps = [a_all[(rr + t) % len(a_all)] for t in range(m)]
        rr += m
        draws.extend(sorted(ps))
        bs.append(next_v)
        next_v += 1
    bi = 0
    for _ in range(num_gadgets):
        b = bs[bi : bi + 9]
        bi += 9
        t1, t2 = next_v, next_v + 1
        next_v += 3
        draws.extend(sorted(b[0:4]))
        draws.extend(sorted([t1] + b[4:7]))
        draws.extend(sorted([t1, t2] + b[7:9]))
    return ArrivalGraph.from_parents(m, draws)


def relabel_view(sv: SimpleView, rng: random.Random) -> SimpleView:
    """The same graph under a random vertex permutation."""
    perm = list(range(sv.num_vertices))
    rng.shuffle(perm)
    edges = [(perm[u], perm[v]) for u, v in sv.edges()]
    return SimpleView.from_edges(sv.num_vertices, edges)
