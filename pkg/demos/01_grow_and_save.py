"""
Growing a preferential-attachment multigraph
============================================

Every new vertex draws m parents among the existing vertices with
probability proportional to degree + delta, with all weights frozen at the
start of its step. delta is an exact rational, so the attachment law (and
the whole run) is reproducible bit for bit from (m, delta, seed).
"""

from fractions import Fraction

from pagraph import ModelParams, attachment_weights, grow, new_initial, read_graph, snapshots, write_graph

params = ModelParams(m=2, delta=Fraction(1, 2), seed=42)
print(f"model: m={params.m} delta={params.delta} tau={params.tau} chi={params.chi}")

# the seed graph is two vertices joined by m parallel edges
g = new_initial(params)
print(f"start: {g.num_vertices} vertices, degrees {g.degrees.tolist()}")

# exact attachment law for the next arrival
wt = attachment_weights(g, params.delta)
print("next-arrival probabilities:", [str(pr) for pr in wt.probabilities()])

grow(g, params, 1000 - g.last_index)
print(f"grown: n={g.last_index}, max degree {int(g.degrees.max())}, "
      f"{g.num_draws} draws consumed")

# snapshots of one stream: each graph is a prefix of the next
for snap in snapshots(params, [10, 100, 1000]):
    sv = snap.simple_view()
    simple_edges = int(sv.degree_array.sum()) // 2
    print(f"  n={snap.last_index:5d}  simple edges={simple_edges:5d}  "
          f"max deg={int(snap.degrees.max())}")

# the draw log round-trips through the native text format
write_graph("/tmp/demo_run.pagraph", g, params)
back, back_params = read_graph("/tmp/demo_run.pagraph")
print("file round-trip ok:", list(back.parent_array) == list(g.parent_array)
      and back_params == params)
