"""
Local structure checks Q1, Q2, Q3
=================================

Three conditions on a graph relative to a prefix window [n0] inside [N0]
and a locality radius a:

  q1  short cycles keep their distance from [n0] and from each other,
  q2  enough short cycles exist entirely outside [N0],
  q3  every vertex in the prefix [N0] already has degree >= N0 + m.

Together with an equal prefix and minimum degree m they are the hypotheses
under which the duplicator wins the bounded-variable game (see demo 06).
"""

from fractions import Fraction

from pagraph import (
    ArrivalGraph,
    ModelParams,
    StructureParams,
    check_all,
    check_q1,
    grow,
    new_initial,
    shortest_connecting_path,
)

# a hand-built arrival log: vertex 1 draws [0,0], later rows are the draws
# of vertices 2, 3, ... (triangle on 5,6,7 far from the seed edge)
flat = [0, 0]
for row in ([1, 1], [1, 2], [1, 1], [4, 4], [5, 5], [5, 6]):
    flat.extend(row)
g = ArrivalGraph.from_parents(2, flat)
sp = StructureParams(n0=3, N0=4, a=3, m=2)

rep = check_all(g, sp)
print(f"hand-built graph, n={g.last_index}, params {sp}")
print(f"  q1={rep.q1}  q2={rep.q2}  q3={rep.q3}  all={rep.all_hold}")

# q1 fails here: the triangle {5,6,7} sits 2 < a hops from the prefix
print(f"  q1 witness: {check_q1(g, sp).witnesses['q1']}")
path = shortest_connecting_path(g.simple_view(), [5, 6, 7], range(sp.n0 + 1))
print(f"  connecting path: {path}")

# on PA streams the checks are a statistical matter; scan a few seeds
params = ModelParams(m=4, delta=Fraction(1), seed=0)
sp = StructureParams(n0=2, N0=8, a=3, m=4)
print("\nPA snapshots at n=300, m=4, delta=1:")
for seed in range(5):
    g = new_initial(params.reseeded(seed))
    grow(g, params.reseeded(seed), 300 - g.last_index)
    rep = check_all(g, sp)
    print(f"  seed {seed}: q1={rep.q1} q2={rep.q2} q3={rep.q3}")
