"""Seeded growth of preferential-attachment multigraphs.

Each new vertex draws m parents i.i.d. with probability proportional to
degree + delta, the weights frozen at the start of the step. With
delta = p/q every weight is the integer q*deg + p after scaling by q, and
their total at last index n is exactly q*2*m*n + (n+1)*p, so each draw is
resolved exactly by one randrange over the scaled total. Uniform variates
are consumed vertex by vertex, draw by draw, which makes every run
replayable from (m, delta, seed) alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from .core import ArrivalGraph

__all__ = [
    "ModelParams",
    "WeightTable",
    "new_initial",
    "attachment_weights",
    "grow",
    "snapshots",
    "iter_snapshots",
    "last_multi_edge_vertex",
]

RationalLike = Union[Fraction, int, str]

# below this many draws the pure-Python engine wins on JIT overhead alone
_KERNEL_THRESHOLD = 20_000
_INT64_GUARD = 1 << 62


@dataclass(frozen=True)
class ModelParams:
    """Model parameters (m, delta) plus the stream seed.

    delta is kept as an exact rational; tau = 3 + delta/m and
    chi = 1/(tau-1) = m/(2m+delta) derive from it exactly.
    """

    m: int
    delta: Fraction
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 2:
            raise ValueError("m must be an integer >= 2")
        object.__setattr__(self, "delta", Fraction(self.delta))
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if not 0 <= int(self.seed) < 1 << 64:
            raise ValueError("seed must fit in 64 bits")
        object.__setattr__(self, "seed", int(self.seed))

    @classmethod
    def with_tau(cls, m: int, tau: RationalLike, seed: int = 0) -> "ModelParams":
        """Pick delta so the tail exponent equals tau: delta = m*(tau-3)."""
        tau = Fraction(tau)
        if tau <= 3:
            raise ValueError("tau must exceed 3")
        return cls(m=m, delta=m * (tau - 3), seed=seed)

    @property
    def tau(self) -> Fraction:
        return 3 + self.delta / self.m

    @property
    def chi(self) -> Fraction:
        return Fraction(self.m) / (2 * self.m + self.delta)

    @property
    def scaled(self) -> tuple[int, int]:
        """(p, q) with delta = p/q; scaled vertex weight is q*deg + p."""
        return self.delta.numerator, self.delta.denominator

    def reseeded(self, seed: int) -> "ModelParams":
        return ModelParams(self.m, self.delta, seed)


class WeightTable:
    """Fenwick tree over the scaled integer weights q*deg(v) + p.

    find(u) maps a uniform draw u in [0, total) to the unique vertex whose
    cumulative weight block contains u, so sampling is exactly proportional
    to the weights with no rounding anywhere.
    """

    __slots__ = ("p", "q", "_tree", "_n", "_total")

    def __init__(self, scaled_weights: Sequence[int], p: int, q: int):
        if p <= 0 or q <= 0:
            raise ValueError("scaled delta must be positive")
        self.p = p
        self.q = q
        n = len(scaled_weights)
        tree = [0] * (n + 1)
        total = 0
        for v, w in enumerate(scaled_weights):
            if w <= 0:
                raise ValueError("weights must be positive")
            tree[v + 1] = w
            total += w
        for i in range(1, n + 1):
            j = i + (i & (-i))
            if j <= n:
                tree[j] += tree[i]
        self._tree = tree
        self._n = n
        self._total = total

    @classmethod
    def from_graph(cls, g: ArrivalGraph, delta: RationalLike) -> "WeightTable":
        delta = Fraction(delta)
        if delta <= 0:
            raise ValueError("delta must be positive")
        p, q = delta.numerator, delta.denominator
        weights = [q * d + p for d in g.degrees.tolist()]
        return cls(weights, p, q)

    def __len__(self) -> int:
        return self._n

    @property
    def total(self) -> int:
        """Sum of scaled weights; equals q*2*m*n + (n+1)*p on a model graph."""
        return self._total

    @property
    def z(self) -> Fraction:
        """Unscaled normalizer: sum over vertices of deg(v) + delta."""
        return Fraction(self._total, self.q)

    def _prefix(self, i: int) -> int:
        s = 0
        while i > 0:
            s += self._tree[i]
            i -= i & (-i)
        return s

    def weight(self, v: int) -> int:
        if not 0 <= v < self._n:
            raise IndexError("vertex out of range")
        return self._prefix(v + 1) - self._prefix(v)

    def probability(self, v: int) -> Fraction:
        return Fraction(self.weight(v), self._total)

    def probabilities(self) -> list[Fraction]:
        return [self.probability(v) for v in range(self._n)]

    def add(self, v: int, amount: int) -> None:
        if not 0 <= v < self._n:
            raise IndexError("vertex out of range")
        i = v + 1
        while i <= self._n:
            self._tree[i] += amount
            i += i & (-i)
        self._total += amount

    def append(self, weight: int) -> None:
        if weight <= 0:
            raise ValueError("weights must be positive")
        self._n += 1
        i = self._n
        low = i - (i & (-i))
        value = weight + self._prefix(i - 1) - self._prefix(low)
        self._tree.append(value)
        self._total += weight

    def find(self, u: int) -> int:
        """Vertex v with cumweight(v) <= u < cumweight(v) + weight(v)."""
        if not 0 <= u < self._total:
            raise ValueError("uniform draw out of range")
        size = self._n
        bit = 1
        while (bit << 1) <= size:
            bit <<= 1
        idx = 0
        rem = u
        tree = self._tree
        while bit:
            nxt = idx + bit
            if nxt <= size and tree[nxt] <= rem:
                idx = nxt
                rem -= tree[nxt]
            bit >>= 1
        return idx


def new_initial(params: ModelParams) -> ArrivalGraph:
    """Seed graph: vertices 0 and 1 joined by m parallel edges."""
    return ArrivalGraph.initial(params.m)


def attachment_weights(g: ArrivalGraph, delta: RationalLike) -> WeightTable:
    """Weight table deg(v) + delta for the next arrival on g."""
    return WeightTable.from_graph(g, delta)


def _scaled_total(n: int, m: int, p: int, q: int) -> int:
    return q * 2 * m * n + (n + 1) * p


def _replay_rng(params: ModelParams, last_index: int) -> random.Random:
    """RNG advanced past every draw already in a graph with the given last index."""
    rng = random.Random(params.seed)
    p, q = params.scaled
    m = params.m
    for child in range(2, last_index + 1):
        z = _scaled_total(child - 1, m, p, q)
        for _ in range(m):
            rng.randrange(z)
    return rng


def grow(
    g: ArrivalGraph,
    params: ModelParams,
    steps: int,
    engine: str = "auto",
) -> ArrivalGraph:
    """Attach `steps` vertices to g, continuing the stream of params.seed.

    g must be the graph this stream produced so far (any prefix, including
    the seed graph); the stream position is recovered from the history
    length, so the result depends only on (params, final size). The numba
    and pure-Python engines produce bit-identical draws; `engine` is
    "auto", "python", or "kernel".
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    if g.m != params.m:
        raise ValueError("graph m does not match params")
    if steps == 0:
        return g
    p, q = params.scaled
    m = params.m
    rng = _replay_rng(params, g.last_index)
    final_n = g.last_index + steps
    use_kernel = engine == "kernel" or (
        engine == "auto"
        and steps * m >= _KERNEL_THRESHOLD
        and _scaled_total(final_n, m, p, q) < _INT64_GUARD
    )
    if use_kernel and _scaled_total(final_n, m, p, q) >= _INT64_GUARD:
        raise ValueError("scaled weights overflow the kernel's 64-bit range")
    if use_kernel:
        _grow_kernel_engine(g, params, steps, rng)
    else:
        _grow_python_engine(g, params, steps, rng)
    return g


def _grow_python_engine(g: ArrivalGraph, params: ModelParams, steps: int, rng: random.Random) -> None:
    p, q = params.scaled
    m = params.m
    table = WeightTable.from_graph(g, params.delta)
    for _ in range(steps):
        total = table.total
        draws = [rng.randrange(total) for _ in range(m)]
        parents = [table.find(u) for u in draws]
        g.add_vertex(parents)
        for v in parents:
            table.add(v, q)
        table.append(q * m + p)


def _grow_kernel_engine(g: ArrivalGraph, params: ModelParams, steps: int, rng: random.Random) -> None:
    from . import _kernels

    p, q = params.scaled
    m = params.m
    start_n = g.last_index
    final_n = start_n + steps
    tree_size = final_n + 1
    tree = np.zeros(tree_size + 1, dtype=np.int64)
    tree[1 : start_n + 2] = q * g.degrees + p
    _kernels.fenwick_build(tree)

    uniforms = np.empty(steps * m, dtype=np.int64)
    t = 0
    for child in range(start_n + 1, final_n + 1):
        z = _scaled_total(child - 1, m, p, q)
        for _ in range(m):
            uniforms[t] = rng.randrange(z)
            t += 1
    parents_out = np.empty(steps * m, dtype=np.int64)
    _kernels.grow_kernel(tree, tree_size, start_n, steps, m, p, q, uniforms, parents_out)
    g._bulk_extend(parents_out)


def snapshots(params: ModelParams, schedule: Sequence[int]) -> list[ArrivalGraph]:
    """Graphs G_n for each n in schedule, all cut from one growth stream.

    The draw log of an earlier snapshot is a prefix of every later one.
    """
    return [g for _, g in iter_snapshots(params, schedule, copy=True)]


def iter_snapshots(
    params: ModelParams,
    schedule: Sequence[int],
    copy: bool = False,
) -> Iterator[tuple[int, ArrivalGraph]]:
    """Stream (n, G_n) along the schedule without keeping earlier snapshots.

    With copy=False the same underlying graph is yielded repeatedly, grown
    in place between yields; callers that store snapshots must pass
    copy=True.
    """
    sched = [int(n) for n in schedule]
    if not sched:
        raise ValueError("schedule must be nonempty")
    if sched[0] < 1 or any(b <= a for a, b in zip(sched, sched[1:])):
        raise ValueError("schedule must be strictly increasing and start at >= 1")
    g = new_initial(params)
    for n in sched:
        grow(g, params, n - g.last_index)
        yield n, (g.prefix(n) if copy else g)


def last_multi_edge_vertex(g: ArrivalGraph) -> Optional[int]:
    """Largest vertex whose arrival repeated a parent (made a parallel edge).

    Vertex 1 counts whenever m >= 2, since the seed edges are parallel.
    Returns None only for histories with no repeats at all.
    """
    par = g.parent_array
    m = g.m
    rows = np.sort(par.reshape(-1, m), axis=1)
    dup = (np.diff(rows, axis=1) == 0).any(axis=1)
    hits = np.nonzero(dup)[0]
    if len(hits) == 0:
        return None
    return int(hits[-1]) + 1
