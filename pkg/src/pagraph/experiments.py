"""Desk-scale experiment harness.

Everything here is reproducible bit-for-bit from its config: run i uses seed
base_seed + i, uniforms are consumed in documented order, aggregation is
sorted canonically, and emitted tables carry the config hash.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import io as pio
from .census import OrderedPattern, count_ordered_copies
from .core import ArrivalGraph, SimpleView
from .game import DEFAULT_MEMO_CAP, duplicator_wins
from .generator import ModelParams, grow, last_multi_edge_vertex, new_initial
from .structure import StructureParams, check_all

__all__ = [
    "ExperimentConfig",
    "FitReport",
    "TailReport",
    "run_census_experiment",
    "mean_series",
    "fit_log_growth",
    "fit_power_law",
    "estimate_maxdeg_exponent",
    "collect_degree_sample",
    "estimate_tail_exponent",
    "cycle_divergence",
    "qcheck_frequency",
    "QCheckResult",
    "pair_game_record",
    "structural_game_harness",
    "graph_io_roundtrip",
    "equal_prefix",
]

DEFAULT_SCHEDULE = (1024, 2048, 4096, 8192, 16384, 32768, 65536, 131072)


@dataclass(frozen=True)
class ExperimentConfig:
    """One immutable bundle of model, schedule, and harness parameters.

    Only the fields an operation reads matter to it; the config hash covers
    all of them, so artifacts from different settings never collide.
    """

    m: int = 2
    delta: Fraction = Fraction(1)
    base_seed: int = 1
    seeds: int = 100
    schedule: tuple[int, ...] = DEFAULT_SCHEDULE
    epsilon: float = 0.5
    patterns: tuple[str, ...] = ("C3",)
    n0: int = 2
    N0: int = 8
    n0_grid: tuple[int, ...] = (1, 2, 4)
    N0_grid: tuple[int, ...] = (8, 16, 32)
    a: int = 3
    rounds: int = 1
    gamma: Optional[int] = None
    divergence_b: int = 3
    threshold: int = 10
    n1: int = 48
    n2: int = 96
    memo_cap: int = DEFAULT_MEMO_CAP
    multigraph_degrees: bool = False

    def __post_init__(self):
        object.__setattr__(self, "delta", Fraction(self.delta))
        object.__setattr__(self, "schedule", tuple(int(n) for n in self.schedule))
        object.__setattr__(self, "patterns", tuple(self.patterns))
        object.__setattr__(self, "n0_grid", tuple(int(x) for x in self.n0_grid))
        object.__setattr__(self, "N0_grid", tuple(int(x) for x in self.N0_grid))
        if self.m < 2:
            raise ValueError("m must be >= 2")
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.seeds < 1:
            raise ValueError("need at least one seed")
        if not self.schedule or any(
            b <= a for a, b in zip(self.schedule, self.schedule[1:])
        ):
            raise ValueError("schedule must be nonempty and strictly increasing")
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        if not 1 <= self.n1 < self.n2:
            raise ValueError("need 1 <= n1 < n2")

    def params_for(self, run_index: int) -> ModelParams:
        return ModelParams(self.m, self.delta, self.base_seed + run_index)

    @property
    def gamma_effective(self) -> int:
        g = self.gamma if self.gamma is not None else self.m - 2
        if g < 1:
            raise ValueError("pebble count m-2 must be >= 1 (need m >= 3)")
        return g

    def mapping(self) -> dict:
        out = asdict(self)
        out["delta"] = f"{self.delta.numerator}/{self.delta.denominator}"
        return out

    @property
    def hash(self) -> str:
        return pio.config_hash(self.mapping())


@dataclass(frozen=True)
class FitReport:
    """Least-squares fit y = alpha + beta * x with its R squared.

    x is ln n for log-growth fits and ln n vs ln y for power-law fits; the
    sample range records which n fed the fit.
    """

    alpha: float
    beta: float
    r_squared: float
    n_lo: int
    n_hi: int
    points: int

    def to_record(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class TailReport:
    """Hill tail-exponent estimate from the top k order statistics."""

    tau_hat: float
    k: int
    n: int

    def to_record(self) -> dict:
        return asdict(self)


def run_census_experiment(cfg: ExperimentConfig, out_path: Optional[str] = None) -> list[dict]:
    """Ordered-copy counts per (seed, snapshot, pattern).

    One growth stream per seed, counted at every schedule point. Rows are
    sorted by (seed, n, pattern); the optional CSV carries the config hash.
    """
    if not cfg.patterns:
        raise ValueError("pattern list is empty")
    patterns = [(name, OrderedPattern.from_name(name)) for name in cfg.patterns]
    rows: list[dict] = []
    for i in range(cfg.seeds):
        params = cfg.params_for(i)
        g = new_initial(params)
        for n in cfg.schedule:
            grow(g, params, n - g.last_index)
            sv = g.simple_view()
            for name, pat in patterns:
                rows.append(
                    {
                        "seed": params.seed,
                        "n": n,
                        "pattern": name,
                        "count": count_ordered_copies(sv, pat),
                    }
                )
    rows.sort(key=lambda r: (r["seed"], r["n"], r["pattern"]))
    if out_path is not None:
        pio.write_csv(out_path, ["seed", "n", "pattern", "count"], rows, cfg.hash)
    return rows


def mean_series(rows: Iterable[dict], pattern: str) -> list[dict]:
    """Per-n mean, standard error, and run count for one pattern's counts."""
    buckets: dict[int, list[int]] = {}
    for r in rows:
        if r["pattern"] == pattern:
            buckets.setdefault(r["n"], []).append(r["count"])
    out = []
    for n in sorted(buckets):
        xs = np.asarray(buckets[n], dtype=float)
        se = float(xs.std(ddof=1) / math.sqrt(len(xs))) if len(xs) > 1 else 0.0
        out.append({"n": n, "mean": float(xs.mean()), "se": se, "runs": len(xs)})
    return out


def _least_squares(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    if len(x) < 3:
        raise ValueError("need at least 3 points")
    if len(set(x.tolist())) < 2:
        raise ValueError("degenerate series: all x equal")
    xbar = x.mean()
    ybar = y.mean()
    sxx = float(((x - xbar) ** 2).sum())
    beta = float(((x - xbar) * (y - ybar)).sum() / sxx)
    alpha = float(ybar - beta * xbar)
    resid = y - (alpha + beta * x)
    ss_res = float((resid**2).sum())
    ss_tot = float(((y - ybar) ** 2).sum())
    r2 = 0.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return alpha, beta, r2


def fit_log_growth(series: Iterable[Sequence]) -> FitReport:
    """Least squares of y against ln n over an (n, y) series."""
    pts = [(int(n), float(y)) for n, y in series]
    if len({n for n, _ in pts}) != len(pts):
        raise ValueError("duplicate n in series")
    x = np.array([math.log(n) for n, _ in pts])
    y = np.array([v for _, v in pts])
    alpha, beta, r2 = _least_squares(x, y)
    ns = [n for n, _ in pts]
    return FitReport(alpha, beta, r2, min(ns), max(ns), len(pts))


def fit_power_law(points: Iterable[Sequence]) -> FitReport:
    """Least squares of ln y against ln n; requires positive y."""
    pts = [(int(n), float(y)) for n, y in points]
    if any(y <= 0 for _, y in pts):
        raise ValueError("power-law fit needs positive values")
    x = np.array([math.log(n) for n, _ in pts])
    y = np.array([math.log(v) for _, v in pts])
    alpha, beta, r2 = _least_squares(x, y)
    ns = [n for n, _ in pts]
    return FitReport(alpha, beta, r2, min(ns), max(ns), len(pts))


def estimate_maxdeg_exponent(
    cfg: ExperimentConfig, out_path: Optional[str] = None
) -> tuple[FitReport, list[dict]]:
    """Pooled log-log fit of the maximum multigraph degree along the schedule."""
    if len(cfg.schedule) < 3:
        raise ValueError("schedule must span at least 3 points")
    rows: list[dict] = []
    for i in range(cfg.seeds):
        params = cfg.params_for(i)
        g = new_initial(params)
        for n in cfg.schedule:
            grow(g, params, n - g.last_index)
            rows.append(
                {"seed": params.seed, "n": n, "max_degree": int(g.degrees.max())}
            )
    rows.sort(key=lambda r: (r["seed"], r["n"]))
    fit = fit_power_law([(r["n"], r["max_degree"]) for r in rows])
    if out_path is not None:
        pio.write_csv(out_path, ["seed", "n", "max_degree"], rows, cfg.hash)
    return fit, rows


def collect_degree_sample(cfg: ExperimentConfig, n: Optional[int] = None) -> np.ndarray:
    """Multigraph degrees of G_n pooled over all configured seeds."""
    n = cfg.schedule[-1] if n is None else int(n)
    chunks = []
    for i in range(cfg.seeds):
        params = cfg.params_for(i)
        g = new_initial(params)
        grow(g, params, n - g.last_index)
        chunks.append(np.asarray(g.degrees))
    return np.concatenate(chunks)


def estimate_tail_exponent(sample) -> TailReport:
    """Hill estimator on the top ceil(sqrt(N)) order statistics.

    tau_hat = 1 + 1/mean(ln(X_(i) / X_(k+1))), i = 1..k, on the sorted
    sample. Rejects tiny or constant samples.
    """
    x = np.asarray(sample, dtype=float)
    if x.ndim != 1 or len(x) < 1000:
        raise ValueError("need a flat sample with at least 1000 observations")
    if float(x.min()) == float(x.max()):
        raise ValueError("constant sample has no tail")
    if float(x.min()) <= 0:
        raise ValueError("sample must be positive")
    n = len(x)
    k = math.isqrt(n)
    if k * k < n:
        k += 1
    xs = np.sort(x)[::-1]
    pivot = xs[k]
    logs = np.log(xs[:k] / pivot)
    mean_excess = float(logs.mean())
    if mean_excess == 0.0:
        raise ValueError("top order statistics are all equal")
    return TailReport(tau_hat=1.0 + 1.0 / mean_excess, k=k, n=n)


def cycle_divergence(
    cfg: ExperimentConfig,
    b: Optional[int] = None,
    threshold: Optional[int] = None,
    rows: Optional[list[dict]] = None,
    out_path: Optional[str] = None,
) -> dict:
    """Empirical Pr[count(C_b) > threshold] per schedule point.

    Reuses precomputed census rows when given (they must contain the C_b
    pattern); otherwise runs the census for C_b alone.
    """
    b = cfg.divergence_b if b is None else int(b)
    threshold = cfg.threshold if threshold is None else int(threshold)
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    name = f"C{b}"
    if rows is None:
        rows = run_census_experiment(dataclasses.replace(cfg, patterns=(name,)))
    per_n: dict[int, list[int]] = {}
    for r in rows:
        if r["pattern"] == name:
            per_n.setdefault(r["n"], []).append(r["count"])
    if not per_n:
        raise ValueError(f"no census rows for pattern {name}")
    table = []
    for n in sorted(per_n):
        xs = per_n[n]
        runs = len(xs)
        hits = sum(1 for c in xs if c > threshold)
        f = hits / runs
        se = math.sqrt(f * (1.0 - f) / runs)
        table.append(
            {"n": n, "pattern": name, "threshold": threshold, "frequency": f, "se": se, "runs": runs}
        )
    freqs = [row["frequency"] for row in table]
    result = {
        "rows": table,
        "first": freqs[0],
        "last": freqs[-1],
        "nondecreasing_trend": all(b2 >= a2 for a2, b2 in zip(freqs, freqs[1:])),
    }
    if out_path is not None:
        pio.write_csv(
            out_path,
            ["n", "pattern", "threshold", "frequency", "se", "runs"],
            table,
            cfg.hash,
        )
    return result


@dataclass
class QCheckResult:
    """Frequency table of the joint structural check over a prefix grid."""

    rows: list[dict]
    best: dict
    proxies: dict


def qcheck_frequency(
    cfg: ExperimentConfig,
    out_path: Optional[str] = None,
    fixtures: Optional[dict[int, ArrivalGraph]] = None,
) -> QCheckResult:
    """Fraction of seeds on which Q1, Q2, Q3 all hold, per grid cell and n.

    The best cell is the one with the highest frequency at the largest n
    (ties broken toward small prefixes). Per-seed proxy events are recorded
    for the best cell: the first schedule point where the joint check holds
    and the last vertex whose arrival repeated a parent. fixtures maps run
    indices to prebuilt graphs evaluated in place of PA growth (their
    prefixes stand in for the snapshots), for deterministic spot checks.
    """
    grid = [
        (n0, N0)
        for n0 in cfg.n0_grid
        for N0 in cfg.N0_grid
        if n0 < N0 < cfg.schedule[0]
    ]
    if not grid:
        raise ValueError("empty (n0, N0) grid after validation")
    fixtures = fixtures or {}
    for i, fg in fixtures.items():
        if not 0 <= i < cfg.seeds:
            raise ValueError(f"fixture index {i} outside 0..{cfg.seeds - 1}")
        if fg.m != cfg.m:
            raise ValueError("fixture m differs from the configured m")
        if fg.last_index < cfg.schedule[-1]:
            raise ValueError("fixture graph smaller than the largest scheduled n")
    passes: dict[tuple[int, int, int], int] = {}
    first_pass: dict[tuple[int, int], dict[int, Optional[int]]] = {
        cell: {} for cell in grid
    }
    cutoffs: dict[int, Optional[int]] = {}
    for i in range(cfg.seeds):
        params = cfg.params_for(i)
        fixture = fixtures.get(i)
        g = new_initial(params) if fixture is None else None
        for n in cfg.schedule:
            if fixture is None:
                grow(g, params, n - g.last_index)
            else:
                g = fixture.prefix(n)
            for n0, N0 in grid:
                sp = StructureParams(
                    n0=n0, N0=N0, a=cfg.a, m=cfg.m,
                    multigraph_degrees=cfg.multigraph_degrees,
                )
                ok = check_all(g, sp).all_hold
                if ok:
                    passes[(n, n0, N0)] = passes.get((n, n0, N0), 0) + 1
                    cell_first = first_pass[(n0, N0)]
                    if params.seed not in cell_first:
                        cell_first[params.seed] = n
        cutoffs[params.seed] = last_multi_edge_vertex(g)
    rows = []
    for n in cfg.schedule:
        for n0, N0 in grid:
            f = passes.get((n, n0, N0), 0) / cfg.seeds
            rows.append({"n": n, "n0": n0, "N0": N0, "frequency": f})
    rows.sort(key=lambda r: (r["n"], r["n0"], r["N0"]))
    top_n = cfg.schedule[-1]
    best_cell = max(
        grid,
        key=lambda cell: (
            passes.get((top_n, cell[0], cell[1]), 0),
            -cell[0],
            -cell[1],
        ),
    )
    best_freq = passes.get((top_n, best_cell[0], best_cell[1]), 0) / cfg.seeds
    best = {
        "n": top_n,
        "n0": best_cell[0],
        "N0": best_cell[1],
        "frequency": best_freq,
        "target": 1.0 - cfg.epsilon,
        "reached": best_freq >= 1.0 - cfg.epsilon,
    }
    proxies = {
        "first_pass_n": {
            str(seed): first_pass[best_cell].get(seed)
            for seed in sorted(cutoffs)
        },
        "multi_edge_cutoff": {str(seed): cutoffs[seed] for seed in sorted(cutoffs)},
    }
    if out_path is not None:
        pio.write_csv(out_path, ["n", "n0", "N0", "frequency"], rows, cfg.hash)
    return QCheckResult(rows=rows, best=best, proxies=proxies)


def equal_prefix(sva: SimpleView, svb: SimpleView, bound: int) -> bool:
    """Do two views induce the same graph on vertices 0..bound?"""
    if min(sva.num_vertices, svb.num_vertices) <= bound:
        return False
    for u in range(bound + 1):
        ra = [v for v in sva.neighbors(u).tolist() if v <= bound]
        rb = [v for v in svb.neighbors(u).tolist() if v <= bound]
        if ra != rb:
            return False
    return True


def pair_game_record(
    ga: Union[ArrivalGraph, SimpleView],
    gb: Union[ArrivalGraph, SimpleView],
    sp: StructureParams,
    gamma: int,
    rounds: int,
    memo_cap: int = DEFAULT_MEMO_CAP,
) -> dict:
    """Hypothesis checks plus the game verdict for one explicit pair.

    Hypotheses: equal induced prefix on [N0], min simple degree >= m on both
    sides, and Q1-Q3 on both sides with the given params. The game runs only
    when all hypotheses hold; otherwise the record is marked vacuous.
    """
    sva = ga.simple_view() if isinstance(ga, ArrivalGraph) else ga
    svb = gb.simple_view() if isinstance(gb, ArrivalGraph) else gb
    rep_a = check_all(ga, sp)
    rep_b = check_all(gb, sp)
    checks = {
        "prefix_equal": equal_prefix(sva, svb, sp.N0),
        "min_degree_ok_a": int(sva.degree_array.min()) >= sp.m,
        "min_degree_ok_b": int(svb.degree_array.min()) >= sp.m,
        "q_all_a": rep_a.all_hold,
        "q_all_b": rep_b.all_hold,
    }
    hypotheses_hold = all(checks.values())
    record = {
        "n_a": sva.num_vertices - 1,
        "n_b": svb.num_vertices - 1,
        "n0": sp.n0,
        "N0": sp.N0,
        "a": sp.a,
        "m": sp.m,
        "gamma": gamma,
        "rounds": rounds,
        "checks": checks,
        "q_a": {"q1": rep_a.q1, "q2": rep_a.q2, "q3": rep_a.q3},
        "q_b": {"q1": rep_b.q1, "q2": rep_b.q2, "q3": rep_b.q3},
        "hypotheses_hold": hypotheses_hold,
        "vacuous": not hypotheses_hold,
        "verdict": None,
        "counterexample": False,
    }
    if hypotheses_hold:
        verdict = duplicator_wins(sva, svb, gamma, rounds, memo_cap=memo_cap)
        record["verdict"] = verdict.duplicator_wins
        record["counterexample"] = not verdict.duplicator_wins
    return record


def structural_game_harness(
    cfg: ExperimentConfig,
    runs: Optional[int] = None,
    out_path: Optional[str] = None,
) -> dict:
    """Stochastic end-to-end harness over snapshot pairs of one stream each.

    Per run: grow to n1, keep the snapshot, grow on to n2 (so the histories
    share their prefix by construction), machine-check all hypotheses, and
    play the (m-2)-pebble game only when they hold. Reports per-run records
    plus counts of vacuous runs and counterexamples (hypotheses held but
    Duplicator lost).
    """
    runs = cfg.seeds if runs is None else int(runs)
    if runs < 1:
        raise ValueError("need at least one run")
    gamma = cfg.gamma_effective
    sp = StructureParams.for_rounds(
        cfg.n0, cfg.N0, cfg.m, cfg.rounds,
        multigraph_degrees=cfg.multigraph_degrees,
    )
    records = []
    for i in range(runs):
        params = cfg.params_for(i)
        g = new_initial(params)
        grow(g, params, cfg.n1 - g.last_index)
        snap1 = g.prefix(cfg.n1)
        grow(g, params, cfg.n2 - g.last_index)
        rec = pair_game_record(snap1, g, sp, gamma, cfg.rounds, memo_cap=cfg.memo_cap)
        rec["seed"] = params.seed
        rec["draw_prefix_equal"] = bool(
            np.array_equal(snap1.parent_array, g.parent_array[: snap1.num_draws])
        )
        rec["multi_edge_cutoff"] = last_multi_edge_vertex(g)
        records.append(rec)
    held = sum(1 for r in records if r["hypotheses_hold"])
    summary = {
        "runs": runs,
        "n1": cfg.n1,
        "n2": cfg.n2,
        "gamma": gamma,
        "rounds": cfg.rounds,
        "a": sp.a,
        "hypotheses_held": held,
        "vacuous": runs - held,
        "verdicts_true": sum(1 for r in records if r["verdict"] is True),
        "counterexamples": sum(1 for r in records if r["counterexample"]),
    }
    result = {"summary": summary, "records": records}
    if out_path is not None:
        pio.write_json(out_path, result, cfg.hash)
    return result


def graph_io_roundtrip(path: str) -> ArrivalGraph:
    """Read a pagraph file, validate every invariant, and return the graph."""
    g, _ = pio.read_graph(path)
    g.validate()
    return g
