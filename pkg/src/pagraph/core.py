"""Arrival-ordered multigraphs and the bounded search primitives built on them.

Vertices are numbered in arrival order. Vertices 0 and 1 form the seed pair,
joined by m parallel edges; every later vertex arrives with exactly m edges
back to strictly older vertices. The multigraph keeps parallel edges; the
simple view collapses them and is the structure all metric and logical
queries run on.
"""

from __future__ import annotations

import math
from array import array
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

__all__ = [
    "ArrivalGraph",
    "SimpleView",
    "PrefixSet",
    "set_distance",
    "cycles_up_to",
    "offending_path_exists",
    "is_path_witness",
    "is_cycle",
]


class ArrivalGraph:
    """Multigraph grown by vertex arrivals, m draws per arrival.

    The draw log is the source of truth: draw t joins child t // m + 1 to a
    strictly older parent (the first m draws are the seed edges between 1 and
    0). Degrees count parallel edges separately. A single owner may mutate
    through add_vertex; shared instances must be treated as frozen.
    """

    __slots__ = ("_m", "_parents", "_degrees", "_simple")

    def __init__(self, m: int, parents: Iterable[int]):
        if not isinstance(m, int) or m < 2:
            raise ValueError("m must be an integer >= 2")
        buf = parents if isinstance(parents, array) and parents.typecode == "q" else array("q", parents)
        if len(buf) < m or len(buf) % m != 0:
            raise ValueError("draw count must be a positive multiple of m")
        self._m = m
        self._parents = buf
        self._validate_draws()
        self._degrees = self._recompute_degrees()
        self._simple: Optional[SimpleView] = None

    @classmethod
    def initial(cls, m: int) -> "ArrivalGraph":
        """Seed graph: vertices 0 and 1 joined by m parallel edges."""
        return cls(m, [0] * m)

    @classmethod
    def from_parents(cls, m: int, parents: Iterable[int]) -> "ArrivalGraph":
        """Rebuild a graph from a flat parent log (io and snapshots use this)."""
        return cls(m, parents)

    def _validate_draws(self) -> None:
        par = np.frombuffer(self._parents, dtype=np.int64)
        children = np.arange(len(par), dtype=np.int64) // self._m + 1
        if len(par) and (par < 0).any():
            raise ValueError("negative parent index")
        bad = np.nonzero(par >= children)[0]
        if len(bad):
            t = int(bad[0])
            raise ValueError(f"draw {t}: parent {int(par[t])} not older than child {int(children[t])}")

    def _recompute_degrees(self) -> array:
        par = np.frombuffer(self._parents, dtype=np.int64)
        n = self.last_index
        deg = np.bincount(par, minlength=n + 1)
        deg[1:] += self._m
        return array("q", deg.tolist())

    @property
    def m(self) -> int:
        return self._m

    @property
    def last_index(self) -> int:
        """Largest vertex index n; vertices are 0..n."""
        return len(self._parents) // self._m

    @property
    def num_vertices(self) -> int:
        return self.last_index + 1

    @property
    def num_draws(self) -> int:
        return len(self._parents)

    def degree(self, v: int) -> int:
        return self._degrees[v]

    @property
    def degrees(self) -> np.ndarray:
        """Multigraph degree per vertex (fresh copy, safe across growth)."""
        return np.frombuffer(self._degrees, dtype=np.int64).copy()

    @property
    def parent_array(self) -> np.ndarray:
        """Parent of each draw, in draw order (fresh copy, safe across growth)."""
        return np.frombuffer(self._parents, dtype=np.int64).copy()

    def draws(self) -> Iterator[tuple[int, int]]:
        """(child, parent) pairs in draw order."""
        m = self._m
        for t, p in enumerate(self._parents):
            yield (t // m + 1, p)

    def add_vertex(self, parents: Sequence[int]) -> "ArrivalGraph":
        """Attach vertex last_index+1 with the given m parents; returns self."""
        if len(parents) != self._m:
            raise ValueError(f"expected {self._m} parents, got {len(parents)}")
        top = self.last_index
        for p in parents:
            if not 0 <= p <= top:
                raise ValueError(f"parent {p} out of range 0..{top}")
        self._parents.extend(parents)
        for p in parents:
            self._degrees[p] += 1
        self._degrees.append(self._m)
        self._simple = None
        return self

    def _bulk_extend(self, parents: np.ndarray) -> None:
        """Append whole arrivals from a flat int64 parent block (generator fast path)."""
        if len(parents) % self._m != 0:
            raise ValueError("bulk block must hold whole arrivals")
        old_n = self.last_index
        self._parents.frombytes(parents.astype(np.int64, copy=False).tobytes())
        new_n = self.last_index
        self._degrees.extend([self._m] * (new_n - old_n))
        counts = np.bincount(parents, minlength=new_n + 1)
        view = np.frombuffer(self._degrees, dtype=np.int64)
        view += counts
        del view
        self._simple = None
        self._validate_draws()

    def prefix(self, n: int) -> "ArrivalGraph":
        """Copy of the history truncated at last index n."""
        if not 1 <= n <= self.last_index:
            raise ValueError("prefix index out of range")
        return ArrivalGraph(self._m, self._parents[: n * self._m])

    def simple_view(self) -> "SimpleView":
        if self._simple is None:
            self._simple = SimpleView.from_arrival(self)
        return self._simple

    def validate(self) -> None:
        """Full invariant check: draw structure, degree bookkeeping, totals."""
        self._validate_draws()
        fresh = self._recompute_degrees()
        if fresh != self._degrees:
            raise AssertionError("degree cache out of sync with draw log")
        if sum(self._degrees) != 2 * self._m * self.last_index:
            raise AssertionError("degree total != 2*m*n")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ArrivalGraph):
            return NotImplemented
        return self._m == other._m and self._parents == other._parents

    def __repr__(self) -> str:
        return f"ArrivalGraph(m={self._m}, n={self.last_index})"


class SimpleView:
    """Simple undirected projection of a multigraph, in CSR form.

    Parallel edges collapse to one; vertex ids and their arrival order are
    inherited. Immutable once built.
    """

    __slots__ = ("num_vertices", "indptr", "indices", "_nsets")

    def __init__(self, num_vertices: int, indptr: np.ndarray, indices: np.ndarray):
        self.num_vertices = num_vertices
        self.indptr = indptr
        self.indices = indices
        self._nsets: Optional[list[frozenset[int]]] = None

    @classmethod
    def from_arrival(cls, g: ArrivalGraph) -> "SimpleView":
        par = np.frombuffer(g._parents, dtype=np.int64)
        children = np.arange(len(par), dtype=np.int64) // g.m + 1
        n = g.num_vertices
        enc = np.unique(children * n + par)
        u = enc // n
        v = enc % n
        return cls._from_uv(n, u, v)

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Iterable[tuple[int, int]]) -> "SimpleView":
        pairs = set()
        for a, b in edges:
            if a == b:
                raise ValueError("self-loop")
            if not (0 <= a < num_vertices and 0 <= b < num_vertices):
                raise ValueError(f"edge ({a},{b}) out of range")
            pairs.add((min(a, b), max(a, b)))
        if pairs:
            arr = np.array(sorted(pairs), dtype=np.int64)
            u, v = arr[:, 0], arr[:, 1]
        else:
            u = v = np.empty(0, dtype=np.int64)
        return cls._from_uv(num_vertices, u, v)

    @classmethod
    def _from_uv(cls, n: int, u: np.ndarray, v: np.ndarray) -> "SimpleView":
        rows = np.concatenate([u, v])
        cols = np.concatenate([v, u])
        order = np.lexsort((cols, rows))
        rows = rows[order]
        cols = cols[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
        return cls(n, indptr, cols)

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    @property
    def degree_array(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    @property
    def neighbor_sets(self) -> list[frozenset[int]]:
        """Per-vertex neighbor sets; built lazily, meant for small graphs."""
        if self._nsets is None:
            self._nsets = [
                frozenset(self.indices[self.indptr[v] : self.indptr[v + 1]].tolist())
                for v in range(self.num_vertices)
            ]
        return self._nsets

    def adjacent(self, u: int, v: int) -> bool:
        row = self.indices[self.indptr[u] : self.indptr[u + 1]]
        i = np.searchsorted(row, v)
        return bool(i < len(row) and row[i] == v)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Each simple edge once, as (u, v) with u < v, sorted."""
        for u in range(self.num_vertices):
            for v in self.neighbors(u):
                if u < v:
                    yield (u, int(v))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimpleView):
            return NotImplemented
        return (
            self.num_vertices == other.num_vertices
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __repr__(self) -> str:
        return f"SimpleView(n={self.num_vertices}, edges={self.edge_count})"


@dataclass(frozen=True)
class PrefixSet:
    """The vertex set {0, 1, ..., bound}."""

    bound: int

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("prefix bound must be >= 0")

    def __contains__(self, v: int) -> bool:
        return 0 <= v <= self.bound

    def vertices(self) -> range:
        return range(self.bound + 1)

    def __len__(self) -> int:
        return self.bound + 1

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices())


def set_distance(sv: SimpleView, a_set, b_set) -> float:
    """Fewest edges between the closest pair of A and B vertices; inf if none.

    0 when the sets overlap. Raises on empty input.
    """
    a = _as_vertex_list(sv, a_set)
    b = _as_vertex_list(sv, b_set)
    if not a or not b:
        raise ValueError("set_distance requires nonempty vertex sets")
    targets = set(b)
    dist = {v: 0 for v in a}
    queue = deque(a)
    if targets.intersection(dist):
        return 0
    while queue:
        v = queue.popleft()
        d = dist[v] + 1
        for w in sv.neighbors(v):
            w = int(w)
            if w in dist:
                continue
            if w in targets:
                return d
            dist[w] = d
            queue.append(w)
    return math.inf


def _as_vertex_list(sv: SimpleView, vertices) -> list[int]:
    out = []
    for v in vertices:
        v = int(v)
        if not 0 <= v < sv.num_vertices:
            raise ValueError(f"vertex {v} out of range")
        out.append(v)
    return out


def cycles_up_to(sv: SimpleView, a: int, within=None) -> list[tuple[int, ...]]:
    """Every simple cycle on 3..a vertices, once, in canonical form.

    Canonical form: rotated so the smallest vertex leads, oriented so its
    smaller neighbor comes second. `within` optionally restricts cycles to
    vertices in the given container (membership test only).
    """
    if a < 3:
        raise ValueError("cycle bound must be >= 3")
    nsets = sv.neighbor_sets
    n = sv.num_vertices
    out: list[tuple[int, ...]] = []
    path: list[int] = []
    on_path: set[int] = set()

    def extend(v: int, start: int) -> None:
        for w in nsets[v]:
            if w == start:
                if len(path) >= 3 and path[1] < path[-1]:
                    out.append(tuple(path))
            elif w > start and w not in on_path and len(path) < a:
                if within is not None and w not in within:
                    continue
                path.append(w)
                on_path.add(w)
                extend(w, start)
                path.pop()
                on_path.remove(w)

    for s in range(n):
        if within is not None and s not in within:
            continue
        path = [s]
        on_path = {s}
        extend(s, s)
    out.sort()
    return out


def is_cycle(sv: SimpleView, cycle: Sequence[int]) -> bool:
    """Validate a cycle witness: distinct vertices, consecutive adjacency, closure."""
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    return all(sv.adjacent(cycle[i], cycle[(i + 1) % k]) for i in range(k))


def offending_path_exists(
    sv: SimpleView,
    a_set,
    b_set,
    max_len: int,
    allowed,
) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Is there a simple A-to-B path of at most max_len edges leaving `allowed`?

    Returns (flag, witness). The witness is one such path. Search is
    depth-first over simple paths, pruned by two walk-distance lower bounds:
    the plain hop count to B, and the hop count to B through at least one
    vertex outside `allowed`.
    """
    a = _as_vertex_list(sv, a_set)
    b = _as_vertex_list(sv, b_set)
    if not a or not b:
        raise ValueError("offending_path_exists requires nonempty vertex sets")
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    b_members = set(b)

    dist_plain, dist_touch = _b_side_distances(sv, b_members, allowed)

    nsets = sv.neighbor_sets
    path: list[int] = []
    on_path: set[int] = set()

    def dfs(v: int, offended: bool) -> Optional[tuple[int, ...]]:
        if offended and v in b_members:
            return tuple(path)
        depth = len(path) - 1
        if depth == max_len:
            return None
        budget = max_len - depth - 1
        for w in nsets[v]:
            if w in on_path:
                continue
            off2 = offended or (w not in allowed)
            bound = dist_plain[w] if off2 else dist_touch[w]
            if bound > budget:
                continue
            path.append(w)
            on_path.add(w)
            hit = dfs(w, off2)
            if hit is not None:
                return hit
            path.pop()
            on_path.remove(w)
        return None

    for start in sorted(set(a)):
        offended = start not in allowed
        bound = dist_plain[start] if offended else dist_touch[start]
        if bound > max_len:
            continue
        path = [start]
        on_path = {start}
        hit = dfs(start, offended)
        if hit is not None:
            return True, hit
    return False, None


def _b_side_distances(sv: SimpleView, b_members: set[int], allowed):
    """Walk distances to B: plain, and forced through a vertex outside `allowed`.

    Both measures count the endpoints: a walk "touches outside" if any of its
    vertices, including the two ends, sits outside `allowed`.
    """
    n = sv.num_vertices
    inf = n + 1
    dist_plain = np.full(n, inf, dtype=np.int64)
    dist_touch = np.full(n, inf, dtype=np.int64)
    dist_state0 = np.full(n, inf, dtype=np.int64)
    queue: deque[tuple[int, bool]] = deque()
    for v in b_members:
        touched = v not in allowed
        if touched:
            if dist_touch[v] > 0:
                dist_touch[v] = 0
                dist_plain[v] = 0
                queue.append((v, True))
        else:
            if dist_state0[v] > 0:
                dist_state0[v] = 0
                dist_plain[v] = 0
                queue.append((v, False))
    while queue:
        v, touched = queue.popleft()
        d = (dist_touch[v] if touched else dist_state0[v]) + 1
        for w in sv.neighbors(v):
            w = int(w)
            t2 = touched or (w not in allowed)
            if t2:
                if d < dist_touch[w]:
                    dist_touch[w] = d
                    if d < dist_plain[w]:
                        dist_plain[w] = d
                    queue.append((w, True))
            else:
                if d < dist_state0[w]:
                    dist_state0[w] = d
                    if d < dist_plain[w]:
                        dist_plain[w] = d
                    queue.append((w, False))
    return dist_plain, dist_touch


def is_path_witness(
    sv: SimpleView,
    path: Sequence[int],
    a_set,
    b_set,
    max_len: int,
    allowed,
) -> bool:
    """Validate an offending-path witness against all five claims."""
    if len(path) == 0 or len(set(path)) != len(path):
        return False
    if len(path) - 1 > max_len:
        return False
    if path[0] not in set(_as_vertex_list(sv, a_set)):
        return False
    if path[-1] not in set(_as_vertex_list(sv, b_set)):
        return False
    if not all(sv.adjacent(path[i], path[i + 1]) for i in range(len(path) - 1)):
        return False
    return any(v not in allowed for v in path)
