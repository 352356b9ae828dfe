"""Ordered pattern census and exact growth exponents.

An ordered pattern is a simple graph on labels 1..k; label order mirrors
arrival order, so a copy in a graph is a k-subset of vertices whose unique
increasing bijection from the labels carries every pattern edge onto an
edge. The growth exponent of the expected copy count is the maximum of a
split objective f(s) over s = 0..k, evaluated in exact rational arithmetic
so ties are counted exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import SimpleView
from .generator import ModelParams

__all__ = [
    "OrderedPattern",
    "ExponentReport",
    "GrowthDescriptor",
    "count_ordered_copies",
    "exponent_B",
    "predicted_growth",
    "classify_pattern",
    "relabelings",
    "all_rare_patterns",
]

# pure Python wins under this size; the kernel handles everything larger
_KERNEL_THRESHOLD = 512
_MAX_K = 12


@dataclass(frozen=True)
class OrderedPattern:
    """Simple graph on labels 1..k with the label order built in.

    For a label v, d_in(v) counts neighbors with larger labels and d_out(v)
    neighbors with smaller ones; they split the degree by arrival side.
    """

    k: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, k: int, edges: Iterable[Sequence[int]]):
        if not 1 <= k <= _MAX_K:
            raise ValueError(f"label count must be in 1..{_MAX_K}")
        norm = set()
        for e in edges:
            i, j = int(e[0]), int(e[1])
            if i == j:
                raise ValueError("pattern has a loop")
            if not (1 <= i <= k and 1 <= j <= k):
                raise ValueError(f"edge ({i},{j}) outside labels 1..{k}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def cycle(cls, k: int) -> "OrderedPattern":
        if k < 3:
            raise ValueError("cycles need at least 3 vertices")
        edges = [(i, i + 1) for i in range(1, k)] + [(1, k)]
        return cls(k, edges)

    @classmethod
    def complete(cls, k: int) -> "OrderedPattern":
        return cls(k, combinations(range(1, k + 1), 2))

    @classmethod
    def single_edge(cls) -> "OrderedPattern":
        return cls(2, [(1, 2)])

    @classmethod
    def from_name(cls, name: str) -> "OrderedPattern":
        """C<b> or K<b> by name, e.g. C3, K4."""
        name = name.strip().upper()
        if len(name) >= 2 and name[0] in "CK" and name[1:].isdigit():
            b = int(name[1:])
            return cls.cycle(b) if name[0] == "C" else cls.complete(b)
        raise ValueError(f"unknown pattern name: {name!r}")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        out = [j if i == v else i for i, j in self.edges if v in (i, j)]
        return tuple(sorted(out))

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def d_in(self, v: int) -> int:
        return sum(1 for w in self.neighbors(v) if w > v)

    def d_out(self, v: int) -> int:
        return sum(1 for w in self.neighbors(v) if w < v)

    def min_degree(self) -> int:
        return min(self.degree(v) for v in range(1, self.k + 1))

    def is_connected(self) -> bool:
        if self.k == 1:
            return True
        seen = {1}
        frontier = [1]
        while frontier:
            v = frontier.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == self.k

    def __repr__(self) -> str:
        return f"OrderedPattern(k={self.k}, edges={sorted(self.edges)})"


def count_ordered_copies(sv: SimpleView, pattern: OrderedPattern, engine: str = "auto") -> int:
    """Number of increasing embeddings of the pattern into sv.

    Extra edges between image vertices are allowed; only the pattern's edges
    are required. engine is "auto", "python", or "kernel"; both engines
    count identically.
    """
    if pattern.k > sv.num_vertices:
        return 0
    use_kernel = engine == "kernel" or (
        engine == "auto" and sv.num_vertices >= _KERNEL_THRESHOLD
    )
    if use_kernel:
        return _count_kernel(sv, pattern)
    return _count_python(sv, pattern)


def _earlier_neighbors(pattern: OrderedPattern) -> list[list[int]]:
    return [[i for i in pattern.neighbors(j) if i < j] for j in range(1, pattern.k + 1)]


def _count_python(sv: SimpleView, pattern: OrderedPattern) -> int:
    k = pattern.k
    n = sv.num_vertices
    earlier = _earlier_neighbors(pattern)
    nsets = sv.neighbor_sets
    image = [0] * k

    def rec(depth: int, lo: int) -> int:
        if depth == k:
            return 1
        hi = n - (k - 1 - depth)
        req = earlier[depth]
        total = 0
        if req:
            base = min((nsets[image[i - 1]] for i in req), key=len)
            rest = [nsets[image[i - 1]] for i in req if nsets[image[i - 1]] is not base]
            for w in base:
                if w < lo or w >= hi:
                    continue
                if all(w in s for s in rest):
                    image[depth] = w
                    total += rec(depth + 1, w + 1)
        else:
            for w in range(lo, hi):
                image[depth] = w
                total += rec(depth + 1, w + 1)
        return total

    return rec(0, 0)


def _count_kernel(sv: SimpleView, pattern: OrderedPattern) -> int:
    from . import _kernels

    k = pattern.k
    earlier = _earlier_neighbors(pattern)
    anchors = np.full(k, -1, dtype=np.int64)
    chk_off = np.zeros(k + 1, dtype=np.int64)
    chk: list[int] = []
    for d, req in enumerate(earlier):
        if req:
            anchors[d] = req[0] - 1
            chk.extend(i - 1 for i in req[1:])
        chk_off[d + 1] = len(chk)
    chk_lab = np.array(chk, dtype=np.int64) if chk else np.zeros(1, dtype=np.int64)
    return int(
        _kernels.count_copies_kernel(
            sv.indptr, sv.indices, k, anchors, chk_off, chk_lab, sv.num_vertices
        )
    )


@dataclass(frozen=True)
class ExponentReport:
    """Exact optimizer report for the split objective of one pattern.

    values[s] is f(s) for s = 0..k; B is their maximum, argmax lists every
    optimizer, r counts them. All entries are exact rationals.
    """

    chi: Fraction
    values: tuple[Fraction, ...]
    B: Fraction
    argmax: tuple[int, ...]
    r: int


def exponent_B(pattern: OrderedPattern, params: ModelParams) -> ExponentReport:
    """Maximize f(s) = -s - sum over labels above s of their split cost.

    The cost of label i is chi*d_in(i) + (1-chi)*d_out(i). Arithmetic is
    integer throughout (common denominator 2*m*q + p), so B, argmax and r
    are exact.
    """
    k = pattern.k
    p, q = params.scaled
    m = params.m
    den = 2 * m * q + p
    w_in = m * q
    w_out = m * q + p
    cost = [0] * (k + 1)
    for i in range(1, k + 1):
        cost[i] = w_in * pattern.d_in(i) + w_out * pattern.d_out(i)
    suffix = [0] * (k + 2)
    for i in range(k, 0, -1):
        suffix[i] = suffix[i + 1] + cost[i]
    scaled = [-(s * den) - suffix[s + 1] for s in range(k + 1)]
    best = max(scaled)
    argmax = tuple(s for s, v in enumerate(scaled) if v == best)
    values = tuple(Fraction(v, den) for v in scaled)
    return ExponentReport(
        chi=params.chi,
        values=values,
        B=Fraction(best, den),
        argmax=argmax,
        r=len(argmax),
    )


@dataclass(frozen=True)
class GrowthDescriptor:
    """Predicted copy-count growth: n**power * ln(n)**log_power, no constants."""

    power: Fraction
    log_power: int

    def evaluate(self, n: int) -> float:
        if n < 2:
            raise ValueError("need n >= 2 to evaluate")
        return float(n) ** float(self.power) * math.log(n) ** self.log_power


def predicted_growth(
    pattern: OrderedPattern, params: ModelParams, n: Optional[int] = None
) -> GrowthDescriptor:
    """Growth descriptor (k + B, r - 1) for the expected copy count.

    The optional n is validated against evaluate() so callers asking for a
    concrete scale fail early instead of at plot time.
    """
    rep = exponent_B(pattern, params)
    desc = GrowthDescriptor(power=pattern.k + rep.B, log_power=rep.r - 1)
    if n is not None:
        desc.evaluate(n)
    return desc


def classify_pattern(pattern: OrderedPattern) -> str:
    """One of "rare", "cycle", "other".

    rare: connected, min degree >= 2, and at least k+1 edges. cycle: the
    edge set is a single spanning cycle. Disconnected patterns land in
    "other".
    """
    if not pattern.is_connected():
        return "other"
    k = pattern.k
    if k >= 3 and pattern.edge_count == k and pattern.min_degree() == 2:
        return "cycle"
    if pattern.min_degree() >= 2 and pattern.edge_count >= k + 1:
        return "rare"
    return "other"


def relabelings(pattern: OrderedPattern) -> list[OrderedPattern]:
    """Every distinct ordered variant of the pattern's underlying graph.

    Permutes the labels and dedupes equal edge sets, so automorphic
    relabelings collapse; the result covers each ordering class once.
    """
    k = pattern.k
    seen = set()
    out = []
    for perm in permutations(range(1, k + 1)):
        mapped = frozenset(
            (min(perm[i - 1], perm[j - 1]), max(perm[i - 1], perm[j - 1]))
            for i, j in pattern.edges
        )
        if mapped not in seen:
            seen.add(mapped)
            out.append(OrderedPattern(k, mapped))
    return out


def all_rare_patterns(k: int) -> list[OrderedPattern]:
    """Every labeled pattern on exactly k vertices that classifies as rare.

    Enumerates all edge subsets with at least k+1 edges and keeps the
    connected ones with min degree >= 2. Exhaustive, meant for k <= 6.
    """
    if k < 2:
        return []
    slots = list(combinations(range(1, k + 1), 2))
    out = []
    for e in range(k + 1, len(slots) + 1):
        for chosen in combinations(slots, e):
            deg = [0] * (k + 1)
            for i, j in chosen:
                deg[i] += 1
                deg[j] += 1
            if min(deg[1:]) < 2:
                continue
            pat = OrderedPattern(k, chosen)
            if pat.is_connected():
                out.append(pat)
    return out
