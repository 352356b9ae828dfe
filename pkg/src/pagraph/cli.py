"""Command line interface.

Experiment subcommands read an optional config file of key = value lines;
explicit flags override file values, which override built-in defaults.
Tables land as hash-stamped CSV, reports as JSON on stdout (and to --report
when given).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction
from typing import Optional

from . import io as pio
from .census import (
    OrderedPattern,
    classify_pattern,
    exponent_B,
    predicted_growth,
)
from .core import SimpleView
from .experiments import (
    ExperimentConfig,
    collect_degree_sample,
    cycle_divergence,
    estimate_maxdeg_exponent,
    estimate_tail_exponent,
    mean_series,
    qcheck_frequency,
    run_census_experiment,
    structural_game_harness,
)
from .game import duplicator_wins
from .generator import ModelParams, grow, new_initial

_TUPLE_INT = "tuple_int"
_TUPLE_STR = "tuple_str"

_CONFIG_TYPES = {
    "m": int,
    "delta": Fraction,
    "base_seed": int,
    "seeds": int,
    "schedule": _TUPLE_INT,
    "epsilon": float,
    "patterns": _TUPLE_STR,
    "n0": int,
    "N0": int,
    "n0_grid": _TUPLE_INT,
    "N0_grid": _TUPLE_INT,
    "a": int,
    "rounds": int,
    "gamma": int,
    "divergence_b": int,
    "threshold": int,
    "n1": int,
    "n2": int,
    "memo_cap": int,
    "multigraph_degrees": bool,
}


def _parse_value(key: str, raw: str):
    kind = _CONFIG_TYPES[key]
    if kind is _TUPLE_INT:
        return tuple(int(tok) for tok in raw.replace(",", " ").split())
    if kind is _TUPLE_STR:
        return tuple(tok for tok in raw.replace(",", " ").split())
    if kind is bool:
        low = raw.strip().lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"config key {key}: expected a boolean, got {raw!r}")
    return kind(raw)


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value file; flags override it")
    p.add_argument("--m", type=int)
    p.add_argument("--delta", type=Fraction, help="exact rational, e.g. 1/2")
    p.add_argument("--base-seed", type=int, dest="base_seed")
    p.add_argument("--seeds", type=int)
    p.add_argument("--schedule", help="comma-separated n values")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--patterns", help="comma-separated names, e.g. C3,K4")
    p.add_argument("--n0", type=int)
    p.add_argument("--N0", type=int, dest="N0")
    p.add_argument("--n0-grid", dest="n0_grid", help="comma-separated n0 values")
    p.add_argument("--N0-grid", dest="N0_grid", help="comma-separated N0 values")
    p.add_argument("--a", type=int, help="locality radius")
    p.add_argument("--rounds", type=int)
    p.add_argument("--gamma", type=int)
    p.add_argument("--divergence-b", type=int, dest="divergence_b")
    p.add_argument("--threshold", type=int)
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--memo-cap", type=int, dest="memo_cap")
    p.add_argument(
        "--multigraph-degrees",
        action="store_const",
        const=True,
        dest="multigraph_degrees",
    )


def _build_config(args: argparse.Namespace) -> ExperimentConfig:
    merged: dict = {}
    if getattr(args, "config", None):
        for key, raw in pio.load_config_file(args.config).items():
            if key not in _CONFIG_TYPES:
                raise SystemExit(f"unknown config key: {key}")
            merged[key] = _parse_value(key, raw)
    for key in _CONFIG_TYPES:
        flag = getattr(args, key, None)
        if flag is None:
            continue
        if key in ("schedule", "patterns", "n0_grid", "N0_grid") and isinstance(flag, str):
            flag = _parse_value(key, flag)
        merged[key] = flag
    return ExperimentConfig(**merged)


def _emit_report(report: dict, path: Optional[str], cfg_hash: Optional[str]) -> None:
    text = json.dumps(report, sort_keys=True, indent=2, default=_jsonable)
    print(text)
    if path:
        payload = json.loads(text)
        pio.write_json(path, payload, cfg_hash)


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    raise TypeError(f"not JSON serializable: {obj!r}")


def _frac(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _load_pattern(args: argparse.Namespace) -> OrderedPattern:
    if args.pattern_file:
        return pio.read_pattern(args.pattern_file)
    if args.pattern:
        return OrderedPattern.from_name(args.pattern)
    raise SystemExit("need --pattern or --pattern-file")


def _load_side(path: str) -> SimpleView:
    """A pagraph file becomes its simple view; a pattern file becomes the
    labeled graph on vertices 0..k-1."""
    with open(path, "r", encoding="ascii") as fh:
        first = fh.readline().split()
    if first and first[0] == "pagraph":
        g, _ = pio.read_graph(path)
        return g.simple_view()
    pat = pio.read_pattern(path)
    return SimpleView.from_edges(pat.k, [(i - 1, j - 1) for i, j in pat.edges])


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="pagraph",
        description="Preferential-attachment graphs: generation, census, "
        "exponents, structure checks, pebble games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="grow one graph and write a pagraph file")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--delta", type=Fraction, default=Fraction(1))
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("census", help="ordered copy counts over seeds and snapshots")
    _add_config_flags(p)
    p.add_argument("--out", default="census.csv")

    p = sub.add_parser("exponents", help="exact split-objective report for a pattern")
    p.add_argument("--pattern")
    p.add_argument("--pattern-file", dest="pattern_file")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--delta", type=Fraction)
    p.add_argument("--tau", type=Fraction)
    p.add_argument("--report")

    p = sub.add_parser("classify", help="rare / cycle / other for a pattern")
    p.add_argument("--pattern")
    p.add_argument("--pattern-file", dest="pattern_file")

    p = sub.add_parser("maxdeg", help="max-degree growth exponent fit")
    _add_config_flags(p)
    p.add_argument("--out", default="maxdeg.csv")
    p.add_argument("--report")

    p = sub.add_parser("tail", help="Hill tail-exponent estimate of the degrees")
    _add_config_flags(p)
    p.add_argument("--n", type=int, help="snapshot size; defaults to the largest scheduled n")
    p.add_argument("--report")

    p = sub.add_parser("divergence", help="Pr[count(C_b) > threshold] by n")
    _add_config_flags(p)
    p.add_argument("--out", default="divergence.csv")
    p.add_argument("--report")

    p = sub.add_parser("qcheck", help="joint Q1-Q3 frequency over a prefix grid")
    _add_config_flags(p)
    p.add_argument("--out", default="qcheck.csv")
    p.add_argument("--report")

    p = sub.add_parser("game", help="pebble game between two graph/pattern files")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--gamma", type=int, required=True)
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--memo-cap", type=int, dest="memo_cap", default=10_000_000)
    p.add_argument("--witness", action="store_true")
    p.add_argument("--report")

    p = sub.add_parser("lemma2", help="stochastic end-to-end harness over snapshot pairs")
    _add_config_flags(p)
    p.add_argument("--runs", type=int)
    p.add_argument("--report")

    args = parser.parse_args(argv)
    return _dispatch(args)


def _dispatch(args: argparse.Namespace) -> int:
    cmd = args.command
    if cmd == "generate":
        params = ModelParams(m=args.m, delta=args.delta, seed=args.seed)
        g = new_initial(params)
        grow(g, params, args.n - g.last_index)
        pio.write_graph(args.out, g, params)
        print(f"wrote {args.out}: n={g.last_index} m={g.m} draws={g.num_draws}")
        return 0

    if cmd == "exponents":
        pat = _load_pattern(args)
        if args.delta is not None and args.tau is not None:
            raise SystemExit("give either --delta or --tau, not both")
        if args.tau is not None:
            params = ModelParams.with_tau(args.m, args.tau)
        else:
            params = ModelParams(args.m, args.delta if args.delta is not None else Fraction(1))
        rep = exponent_B(pat, params)
        growth = predicted_growth(pat, params)
        report = {
            "k": pat.k,
            "edges": sorted(list(e) for e in pat.edges),
            "m": params.m,
            "delta": _frac(params.delta),
            "tau": _frac(params.tau),
            "chi": _frac(rep.chi),
            "values": [_frac(v) for v in rep.values],
            "B": _frac(rep.B),
            "argmax": list(rep.argmax),
            "r": rep.r,
            "growth_power": _frac(growth.power),
            "growth_log_power": growth.log_power,
            "classification": classify_pattern(pat),
        }
        _emit_report(report, args.report, None)
        return 0

    if cmd == "classify":
        pat = _load_pattern(args)
        kind = classify_pattern(pat)
        note = "" if pat.is_connected() else " (disconnected)"
        print(f"{kind}{note}")
        return 0

    if cmd == "game":
        left = _load_side(args.left)
        right = _load_side(args.right)
        verdict = duplicator_wins(
            left,
            right,
            args.gamma,
            args.rounds,
            memo_cap=args.memo_cap,
            want_witness=args.witness,
        )
        report = {
            "left": args.left,
            "right": args.right,
            "gamma": verdict.gamma,
            "rounds": verdict.rounds,
            "duplicator_wins": verdict.duplicator_wins,
            "states_explored": verdict.states_explored,
        }
        if verdict.witness is not None:
            report["witness"] = verdict.witness
        _emit_report(report, args.report, None)
        return 0

    cfg = _build_config(args)

    if cmd == "census":
        rows = run_census_experiment(cfg, out_path=args.out)
        summary = {
            "config_hash": cfg.hash,
            "rows": len(rows),
            "out": args.out,
            "means_at_largest_n": {
                name: mean_series(rows, name)[-1] for name in cfg.patterns
            },
        }
        print(json.dumps(summary, sort_keys=True, indent=2))
        return 0

    if cmd == "maxdeg":
        fit, _rows = estimate_maxdeg_exponent(cfg, out_path=args.out)
        report = {"config_hash": cfg.hash, "out": args.out, "fit": fit.to_record()}
        _emit_report(report, args.report, cfg.hash)
        return 0

    if cmd == "tail":
        sample = collect_degree_sample(cfg, args.n)
        rep = estimate_tail_exponent(sample)
        report = {
            "config_hash": cfg.hash,
            "n": args.n if args.n is not None else cfg.schedule[-1],
            "tau_expected": _frac(ModelParams(cfg.m, cfg.delta).tau),
            "tau_hat": rep.tau_hat,
            "k": rep.k,
            "sample_size": rep.n,
        }
        _emit_report(report, args.report, cfg.hash)
        return 0

    if cmd == "divergence":
        result = cycle_divergence(cfg, out_path=args.out)
        report = {"config_hash": cfg.hash, "out": args.out, **result}
        _emit_report(report, args.report, cfg.hash)
        return 0

    if cmd == "qcheck":
        result = qcheck_frequency(cfg, out_path=args.out)
        report = {
            "config_hash": cfg.hash,
            "out": args.out,
            "best": result.best,
            "proxies": result.proxies,
        }
        _emit_report(report, args.report, cfg.hash)
        return 0

    if cmd == "lemma2":
        result = structural_game_harness(cfg, runs=args.runs)
        report = {"config_hash": cfg.hash, **result["summary"]}
        if args.report:
            pio.write_json(args.report, result, cfg.hash)
        print(json.dumps(report, sort_keys=True, indent=2))
        return 0

    raise SystemExit(f"unhandled command: {cmd}")


if __name__ == "__main__":
    sys.exit(main())
