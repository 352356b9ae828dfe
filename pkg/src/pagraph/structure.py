"""Structural conditions Q1, Q2, Q3 on a graph with prefix parameters.

All three run on the simple view. [t] denotes the vertex prefix {0..t}.
Q1 is cycle locality: short cycles sit inside [N0] with no short escaping
connection from [n0], or far from [n0] altogether, and short cycles outside
[n0] keep their distance from each other. Q2 is outside cycle supply: at
least m copies of every cycle length up to a avoiding [N0] entirely. Q3 is
prefix degree richness: every vertex of [N0] has at least N0 + m distinct
neighbors. Every failure carries a witness that re-validates against the
graph.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Union

from .core import (
    ArrivalGraph,
    PrefixSet,
    SimpleView,
    cycles_up_to,
    offending_path_exists,
    set_distance,
)

__all__ = [
    "StructureParams",
    "StructureReport",
    "check_q1",
    "check_q2",
    "check_q3",
    "check_all",
    "shortest_connecting_path",
]

GraphLike = Union[ArrivalGraph, SimpleView]


@dataclass(frozen=True)
class StructureParams:
    """Prefix bounds and locality radius for the structural checks.

    a is the locality radius; when derived from a round budget R it equals
    3R. m plays two roles downstream: the cycle-supply quota in Q2 and the
    degree margin in Q3. multigraph_degrees switches Q3 to parallel-edge
    counting (needs an ArrivalGraph).
    """

    n0: int
    N0: int
    a: int
    m: int
    multigraph_degrees: bool = False

    def __post_init__(self):
        if self.n0 < 0 or self.N0 <= self.n0:
            raise ValueError("need 0 <= n0 < N0")
        if self.a < 3:
            raise ValueError("locality radius a must be >= 3")
        if self.m < 1:
            raise ValueError("m must be >= 1")

    @classmethod
    def for_rounds(cls, n0: int, N0: int, m: int, R: int, **kw) -> "StructureParams":
        """Radius from a round budget: a = 3R."""
        if R < 1:
            raise ValueError("round budget must be >= 1")
        return cls(n0=n0, N0=N0, a=3 * R, m=m, **kw)


@dataclass
class StructureReport:
    """Verdicts of the checks that ran (None = not evaluated) plus witnesses.

    witnesses maps "q1"/"q2"/"q3" to one violating witness each; empty when
    everything evaluated holds.
    """

    q1: Optional[bool] = None
    q2: Optional[bool] = None
    q3: Optional[bool] = None
    witnesses: dict = field(default_factory=dict)

    @property
    def all_hold(self) -> bool:
        ran = [v for v in (self.q1, self.q2, self.q3) if v is not None]
        return bool(ran) and all(ran)

    def merged(self, other: "StructureReport") -> "StructureReport":
        def pick(a, b):
            return b if b is not None else a

        wit = dict(self.witnesses)
        wit.update(other.witnesses)
        return StructureReport(
            q1=pick(self.q1, other.q1),
            q2=pick(self.q2, other.q2),
            q3=pick(self.q3, other.q3),
            witnesses=wit,
        )

    def to_record(self, n: int, p: StructureParams) -> dict:
        """JSON-ready verdict record; includes the first witness if any."""
        rec = {
            "n": n,
            "n0": p.n0,
            "N0": p.N0,
            "a": p.a,
            "m": p.m,
            "q1": self.q1,
            "q2": self.q2,
            "q3": self.q3,
        }
        for key in ("q1", "q2", "q3"):
            if key in self.witnesses:
                rec["witness"] = {"check": key, **self.witnesses[key]}
                break
        return rec


def _as_view(g: GraphLike) -> SimpleView:
    return g.simple_view() if isinstance(g, ArrivalGraph) else g


def _validate(sv: SimpleView, p: StructureParams) -> None:
    n = sv.num_vertices - 1
    if not p.N0 < n:
        raise ValueError(f"need N0 < n, got N0={p.N0}, n={n}")


def check_q1(g: GraphLike, p: StructureParams) -> StructureReport:
    """Cycle locality. Three clauses on the simple view.

    (i) every cycle on at most a vertices either lies inside [N0] with every
    connecting path from [n0] of at most a edges inside [N0], or lies at
    distance at least a from [n0]; (ii) every path on at most a vertices
    joining two vertices of [n0] stays inside [N0]; (iii) any two distinct
    cycles on at most a vertices avoiding [n0] are at distance at least a
    from each other.
    """
    sv = _as_view(g)
    _validate(sv, p)
    n0set = PrefixSet(p.n0)
    N0set = PrefixSet(p.N0)
    cycles = cycles_up_to(sv, p.a)

    for cyc in cycles:
        inside = all(v <= p.N0 for v in cyc)
        escape = None
        if inside:
            off, escape = offending_path_exists(sv, n0set, cyc, p.a, N0set)
            if not off:
                continue
        dist = set_distance(sv, n0set, cyc)
        if dist >= p.a:
            continue
        witness = {
            "clause": "i",
            "cycle": list(cyc),
            "inside_N0": inside,
            "distance_from_n0": _json_dist(dist),
        }
        if escape is not None:
            witness["escaping_path"] = list(escape)
        return StructureReport(q1=False, witnesses={"q1": witness})

    off, path = offending_path_exists(sv, n0set, n0set, p.a - 1, N0set)
    if off:
        witness = {"clause": "ii", "path": list(path)}
        return StructureReport(q1=False, witnesses={"q1": witness})

    outside = [c for c in cycles if min(c) > p.n0]
    for i in range(len(outside)):
        for j in range(i + 1, len(outside)):
            dist = set_distance(sv, outside[i], outside[j])
            if dist < p.a:
                witness = {
                    "clause": "iii",
                    "cycle_a": list(outside[i]),
                    "cycle_b": list(outside[j]),
                    "distance": _json_dist(dist),
                    "connecting_path": list(
                        shortest_connecting_path(sv, outside[i], outside[j])
                    ),
                }
                return StructureReport(q1=False, witnesses={"q1": witness})
    return StructureReport(q1=True)


def check_q2(g: GraphLike, p: StructureParams) -> StructureReport:
    """Outside cycle supply: for each b in 3..a, at least m distinct
    b-cycles with every vertex outside [N0]."""
    sv = _as_view(g)
    _validate(sv, p)
    outside = range(p.N0 + 1, sv.num_vertices)
    found = cycles_up_to(sv, p.a, within=outside)
    by_len: dict[int, list] = {b: [] for b in range(3, p.a + 1)}
    for cyc in found:
        by_len[len(cyc)].append(cyc)
    for b in range(3, p.a + 1):
        have = by_len[b]
        if len(have) < p.m:
            witness = {
                "b": b,
                "found": len(have),
                "required": p.m,
                "cycles": [list(c) for c in have],
            }
            return StructureReport(q2=False, witnesses={"q2": witness})
    return StructureReport(q2=True)


def check_q3(g: GraphLike, p: StructureParams) -> StructureReport:
    """Prefix degree richness: every vertex of [N0] has degree >= N0 + m.

    Degree means distinct neighbors unless params ask for the multigraph
    reading, which requires the arrival multigraph.
    """
    sv = _as_view(g)
    _validate(sv, p)
    if p.multigraph_degrees:
        if not isinstance(g, ArrivalGraph):
            raise ValueError("multigraph degrees need an ArrivalGraph")
        deg = lambda v: g.degree(v)
    else:
        deg = sv.degree
    required = p.N0 + p.m
    for v in range(p.N0 + 1):
        d = deg(v)
        if d < required:
            witness = {"vertex": v, "degree": d, "required": required}
            return StructureReport(q3=False, witnesses={"q3": witness})
    return StructureReport(q3=True)


def check_all(g: GraphLike, p: StructureParams) -> StructureReport:
    """All three checks; verdicts merged into one report."""
    rep = check_q1(g, p)
    rep = rep.merged(check_q2(g, p))
    rep = rep.merged(check_q3(g, p))
    return rep


def shortest_connecting_path(sv: SimpleView, a_set, b_set) -> tuple[int, ...]:
    """One shortest path between two vertex sets, endpoints included.

    A single shared vertex when the sets overlap. Raises if disconnected.
    """
    a = sorted({int(v) for v in a_set})
    b_members = {int(v) for v in b_set}
    if not a or not b_members:
        raise ValueError("need nonempty sets")
    shared = sorted(b_members.intersection(a))
    if shared:
        return (shared[0],)
    prev: dict[int, int] = {v: -1 for v in a}
    queue = deque(a)
    while queue:
        v = queue.popleft()
        for w in sv.neighbors(v):
            w = int(w)
            if w in prev:
                continue
            prev[w] = v
            if w in b_members:
                path = [w]
                while prev[path[-1]] != -1:
                    path.append(prev[path[-1]])
                return tuple(reversed(path))
            queue.append(w)
    raise ValueError("sets are not connected")


def _json_dist(d) -> Optional[int]:
    return None if d == math.inf else int(d)
