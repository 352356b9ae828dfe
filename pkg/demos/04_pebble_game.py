"""
The bounded-variable pebble game
================================

Spoiler and Duplicator each round place one of gamma reusable pebble pairs;
Duplicator survives R rounds iff the pebbled vertices always induce a
partial isomorphism. Duplicator surviving every budget R means the two
graphs agree on all first-order sentences with gamma variables; a Spoiler
win comes with a replayable strategy tree.
"""

from pagraph import SimpleView, duplicator_wins, duplicator_wins_naive, replay_witness

triangle = SimpleView.from_edges(3, [(0, 1), (0, 2), (1, 2)])
star = SimpleView.from_edges(4, [(0, 1), (0, 2), (0, 3)])

# 2 pebbles, increasing round budgets: the triangle and the 3-star agree
# up to quantifier depth 1 but differ at depth 2
for rounds in (0, 1, 2, 3):
    v = duplicator_wins(triangle, star, 2, rounds)
    print(f"triangle vs star, gamma=2, R={rounds}: duplicator wins = "
          f"{v.duplicator_wins} ({v.states_explored} states)")

# the memoized solver and the plain minimax always agree
assert duplicator_wins_naive(triangle, star, 2, 2) is False

# a Spoiler win carries a strategy tree; replaying it re-validates every
# branch against the graphs
v = duplicator_wins(triangle, star, 2, 2, want_witness=True)
print("\nwitness root: slot", v.witness["slot"], "side", v.witness["side"],
      "vertex", v.witness["vertex"])
print("witness replays:", replay_witness(v.witness, triangle, star, 2))

# one 6-cycle vs two disjoint triangles: both 2-regular, so two pebbles
# never separate them; a third pebble lets Spoiler walk the cycle apart
# within 3 rounds
c6 = SimpleView.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])
cc = SimpleView.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
print()
for gamma in (2, 3):
    for rounds in (2, 3, 8):
        v = duplicator_wins(c6, cc, gamma, rounds)
        print(f"C6 vs C3+C3, gamma={gamma}, R={rounds}: duplicator wins = "
              f"{v.duplicator_wins}")
