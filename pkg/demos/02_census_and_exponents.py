"""
Ordered pattern census and growth exponents
===========================================

An ordered pattern is a small graph whose vertex labels must map to graph
vertices in arrival order. The census counts such copies in the simple
view; the exponent report predicts how the expected count scales with n,
exactly, from the pattern's degree splits and the model's chi = m/(2m+delta).
"""

from fractions import Fraction

from pagraph import (
    ModelParams,
    OrderedPattern,
    classify_pattern,
    count_ordered_copies,
    exponent_B,
    predicted_growth,
    snapshots,
)

params = ModelParams(m=2, delta=Fraction(1), seed=7)
print(f"model: m=2 delta=1, so tau={params.tau} (tail) and chi={params.chi}")

triangle = OrderedPattern.cycle(3)
k4 = OrderedPattern.complete(4)
diamond = OrderedPattern(4, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])

# exact exponent arithmetic: values of f(s) per split point, max B, tie count r
for pat, name in ((triangle, "C3"), (k4, "K4"), (diamond, "diamond")):
    rep = exponent_B(pat, params)
    desc = predicted_growth(pat, params)
    print(f"{name:8s} kind={classify_pattern(pat):5s} B={rep.B} r={rep.r} "
          f"argmax={rep.argmax}  E N_n ~ n^{desc.power} * (ln n)^{desc.log_power}")

# cycles are expected to grow like ln n, rare patterns to stay bounded
print("\ncounts along one growth stream (seed 7):")
print(f"{'n':>6} {'C3':>6} {'diamond':>8}")
for g in snapshots(params, [2**e for e in range(7, 13)]):
    sv = g.simple_view()
    print(f"{g.last_index:6d} {count_ordered_copies(sv, triangle):6d} "
          f"{count_ordered_copies(sv, diamond):8d}")
