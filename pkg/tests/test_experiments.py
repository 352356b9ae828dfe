import json
import math
from fractions import Fraction

import numpy as np
import pytest

from pagraph import (
    ArrivalGraph,
    ExperimentConfig,
    ModelParams,
    SimpleView,
    StructureParams,
    collect_degree_sample,
    cycle_divergence,
    equal_prefix,
    estimate_maxdeg_exponent,
    estimate_tail_exponent,
    fit_log_growth,
    fit_power_law,
    graph_io_roundtrip,
    grow,
    mean_series,
    new_initial,
    pair_game_record,
    qcheck_frequency,
    run_census_experiment,
    structural_game_harness,
    write_graph,
)
from helpers import build_layered


def small_cfg(**kw):
    base = dict(m=2, delta=1, base_seed=1, seeds=3, schedule=(8, 16, 32))
    base.update(kw)
    return ExperimentConfig(**base)


def test_config_defaults_and_validation():
    cfg = ExperimentConfig()
    assert cfg.schedule == tuple(2**k for k in range(10, 18))
    assert cfg.epsilon == 0.5
    with pytest.raises(ValueError):
        ExperimentConfig(m=1)
    with pytest.raises(ValueError):
        ExperimentConfig(seeds=0)
    with pytest.raises(ValueError):
        ExperimentConfig(schedule=())
    with pytest.raises(ValueError):
        ExperimentConfig(schedule=(16, 16))
    with pytest.raises(ValueError):
        ExperimentConfig(epsilon=1.0)
    with pytest.raises(ValueError):
        ExperimentConfig(n1=96, n2=48)


def test_config_params_and_gamma():
    cfg = small_cfg(base_seed=10)
    assert cfg.params_for(0) == ModelParams(2, 1, 10)
    assert cfg.params_for(4).seed == 14
    assert ExperimentConfig(m=4).gamma_effective == 2
    assert ExperimentConfig(m=2, gamma=3).gamma_effective == 3
    with pytest.raises(ValueError):
        ExperimentConfig(m=2).gamma_effective


def test_config_hash_covers_fields():
    a = small_cfg()
    b = small_cfg(base_seed=2)
    assert a.hash != b.hash
    assert a.hash == small_cfg().hash
    assert a.mapping()["delta"] == "1/1"


def test_run_census_experiment():
    cfg = small_cfg(patterns=("C3", "K4"))
    rows = run_census_experiment(cfg)
    assert len(rows) == 3 * 3 * 2
    assert rows == sorted(rows, key=lambda r: (r["seed"], r["n"], r["pattern"]))
    for seed in (1, 2, 3):
        for name in ("C3", "K4"):
            series = [r["count"] for r in rows if r["seed"] == seed and r["pattern"] == name]
            assert series == sorted(series)
    with pytest.raises(ValueError):
        run_census_experiment(small_cfg(patterns=()))


def test_run_census_experiment_writes_csv(tmp_path):
    cfg = small_cfg()
    path = str(tmp_path / "census.csv")
    rows = run_census_experiment(cfg, out_path=path)
    text = open(path).read()
    assert text.splitlines()[0] == f"# config_hash={cfg.hash}"
    assert len(text.splitlines()) == 2 + len(rows)


def test_mean_series():
    rows = [
        {"seed": 1, "n": 4, "pattern": "X", "count": 1},
        {"seed": 2, "n": 4, "pattern": "X", "count": 3},
        {"seed": 1, "n": 8, "pattern": "X", "count": 5},
        {"seed": 1, "n": 4, "pattern": "Y", "count": 100},
    ]
    series = mean_series(rows, "X")
    assert series == [
        {"n": 4, "mean": 2.0, "se": 1.0, "runs": 2},
        {"n": 8, "mean": 5.0, "se": 0.0, "runs": 1},
    ]


def test_fit_log_growth_exact():
    series = [(n, 2 + 3 * math.log(n)) for n in (8, 16, 32, 64, 128)]
    fit = fit_log_growth(series)
    assert fit.alpha == pytest.approx(2.0)
    assert fit.beta == pytest.approx(3.0)
    assert fit.r_squared == pytest.approx(1.0)
    assert (fit.n_lo, fit.n_hi, fit.points) == (8, 128, 5)


def test_fit_log_growth_constant():
    fit = fit_log_growth([(8, 5.0), (16, 5.0), (32, 5.0)])
    assert fit.beta == pytest.approx(0.0)
    assert fit.r_squared == 0.0


def test_fit_log_growth_errors():
    with pytest.raises(ValueError):
        fit_log_growth([(8, 1.0), (16, 2.0)])
    with pytest.raises(ValueError):
        fit_log_growth([(8, 1.0), (8, 2.0), (16, 3.0)])


def test_fit_power_law_star_series():
    fit = fit_power_law([(n, n - 1) for n in (2**10, 2**12, 2**14, 2**16)])
    assert fit.beta == pytest.approx(1.0, abs=0.01)
    assert fit.r_squared > 0.999
    with pytest.raises(ValueError):
        fit_power_law([(8, 0.0), (16, 1.0), (32, 2.0)])


def test_estimate_maxdeg_exponent_smoke():
    cfg = small_cfg(seeds=2, schedule=(64, 128, 256, 512))
    fit, rows = estimate_maxdeg_exponent(cfg)
    assert len(rows) == 2 * 4
    assert fit.points == 8
    assert 0.0 < fit.beta < 1.0
    for seed in (1, 2):
        series = [r["max_degree"] for r in rows if r["seed"] == seed]
        assert series == sorted(series)
    with pytest.raises(ValueError):
        estimate_maxdeg_exponent(small_cfg(schedule=(64, 128)))


def test_collect_degree_sample():
    cfg = small_cfg(seeds=2, schedule=(64, 128))
    sample = collect_degree_sample(cfg)
    assert len(sample) == 2 * 129
    assert int(sample.min()) >= 2
    shorter = collect_degree_sample(cfg, n=64)
    assert len(shorter) == 2 * 65


def test_tail_exponent_pareto_oracle():
    rng = np.random.default_rng(7)
    sample = (1.0 - rng.random(10**6)) ** (-1.0 / 2.5)
    rep = estimate_tail_exponent(sample)
    assert 3.3 <= rep.tau_hat <= 3.7
    assert rep.k == math.ceil(math.sqrt(rep.n))
    assert rep.n == 10**6


def test_tail_exponent_errors():
    with pytest.raises(ValueError):
        estimate_tail_exponent(np.ones(2000))
    with pytest.raises(ValueError):
        estimate_tail_exponent(np.arange(10))
    with pytest.raises(ValueError):
        estimate_tail_exponent(np.linspace(-1, 5, 2000))


def test_cycle_divergence():
    cfg = small_cfg(seeds=5, schedule=(32, 128, 512))
    result = cycle_divergence(cfg, b=3, threshold=0)
    assert {r["n"] for r in result["rows"]} == {32, 128, 512}
    for row in result["rows"]:
        assert 0.0 <= row["frequency"] <= 1.0
        assert row["runs"] == 5
    assert result["first"] == result["rows"][0]["frequency"]
    assert result["last"] == result["rows"][-1]["frequency"]
    assert isinstance(result["nondecreasing_trend"], bool)


def test_cycle_divergence_reuses_rows():
    cfg = small_cfg(seeds=4, schedule=(16, 64))
    rows = run_census_experiment(cfg)
    again = cycle_divergence(cfg, b=3, threshold=0, rows=rows)
    fresh = cycle_divergence(cfg, b=3, threshold=0)
    assert again == fresh
    with pytest.raises(ValueError):
        cycle_divergence(cfg, b=3, threshold=-1)
    with pytest.raises(ValueError):
        cycle_divergence(cfg, b=5, rows=rows)


def test_qcheck_frequency_ranges():
    cfg = small_cfg(
        m=2, seeds=3, schedule=(32, 64), n0_grid=(1, 2), N0_grid=(4, 8), a=3
    )
    result = qcheck_frequency(cfg)
    assert len(result.rows) == 2 * 4
    for row in result.rows:
        assert 0.0 <= row["frequency"] <= 1.0
    assert result.best["n"] == 64
    assert set(result.proxies) == {"first_pass_n", "multi_edge_cutoff"}


def test_qcheck_fixture_contributes_one():
    cfg = ExperimentConfig(
        m=4, delta=1, seeds=1, schedule=(57,), n0_grid=(0,), N0_grid=(1,), a=3
    )
    result = qcheck_frequency(cfg, fixtures={0: build_layered(4)})
    assert result.rows == [{"n": 57, "n0": 0, "N0": 1, "frequency": 1.0}]
    assert result.best["frequency"] == 1.0
    assert result.best["reached"] is True
    assert result.proxies["first_pass_n"] == {str(cfg.base_seed): 57}


def test_qcheck_fixture_validation():
    fixture = build_layered(4)
    with pytest.raises(ValueError):
        qcheck_frequency(
            ExperimentConfig(m=2, seeds=1, schedule=(57,), n0_grid=(0,), N0_grid=(1,)),
            fixtures={0: fixture},
        )
    with pytest.raises(ValueError):
        qcheck_frequency(
            ExperimentConfig(m=4, seeds=1, schedule=(100,), n0_grid=(0,), N0_grid=(1,)),
            fixtures={0: fixture},
        )
    with pytest.raises(ValueError):
        qcheck_frequency(
            ExperimentConfig(m=4, seeds=1, schedule=(57,), n0_grid=(0,), N0_grid=(1,)),
            fixtures={5: fixture},
        )
    with pytest.raises(ValueError):
        qcheck_frequency(small_cfg(n0_grid=(5,), N0_grid=(3,)))


def test_equal_prefix():
    a = SimpleView.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    b = SimpleView.from_edges(6, [(0, 1), (1, 2), (1, 3), (2, 5)])
    assert equal_prefix(a, b, 2)
    assert not equal_prefix(a, b, 3)
    assert not equal_prefix(a, a, 5)
    assert equal_prefix(a, a, 4)


def test_pair_game_record_layered_pair():
    sp = StructureParams(n0=0, N0=1, a=3, m=4)
    rec = pair_game_record(build_layered(4), build_layered(5), sp, gamma=2, rounds=1)
    assert rec["hypotheses_hold"] is True
    assert rec["vacuous"] is False
    assert all(rec["checks"].values())
    assert rec["verdict"] is True
    assert rec["counterexample"] is False
    assert rec["n_a"] == 57 and rec["n_b"] == 69
    assert rec["gamma"] == 2 and rec["rounds"] == 1


def test_pair_game_record_vacuous():
    params = ModelParams(4, 1, seed=3)
    a = grow(new_initial(params), params, 47)
    b = grow(new_initial(params.reseeded(4)), params.reseeded(4), 95)
    sp = StructureParams(n0=2, N0=8, a=3, m=4)
    rec = pair_game_record(a, b, sp, gamma=2, rounds=1)
    assert rec["vacuous"] is True
    assert rec["verdict"] is None
    assert rec["counterexample"] is False
    assert not all(rec["checks"].values())


def test_structural_game_harness_smoke(tmp_path):
    cfg = ExperimentConfig(
        m=4, delta=1, base_seed=1, seeds=3, schedule=(48, 96),
        n0=2, N0=8, a=3, rounds=1, n1=48, n2=96,
    )
    path = str(tmp_path / "harness.json")
    result = structural_game_harness(cfg, out_path=path)
    summary = result["summary"]
    assert summary["runs"] == 3
    assert summary["gamma"] == 2
    assert summary["a"] == 3
    assert summary["hypotheses_held"] + summary["vacuous"] == 3
    assert summary["counterexamples"] == 0
    assert len(result["records"]) == 3
    for rec in result["records"]:
        assert rec["draw_prefix_equal"] is True
        if rec["vacuous"]:
            assert rec["verdict"] is None
        else:
            assert rec["verdict"] is not None
    on_disk = json.load(open(path))
    assert on_disk["summary"]["runs"] == 3
    assert on_disk["config_hash"] == cfg.hash
    with pytest.raises(ValueError):
        structural_game_harness(cfg, runs=0)


def test_graph_io_roundtrip(tmp_path):
    params = ModelParams(2, 1, seed=9)
    g = new_initial(params)
    path = str(tmp_path / "g1.pagraph")
    write_graph(path, g, params)
    back = graph_io_roundtrip(path)
    assert back == g
    assert list(back.parent_array) == [0, 0]


def test_graph_io_roundtrip_errors(tmp_path):
    bad_n = tmp_path / "bad_n.pagraph"
    bad_n.write_text("pagraph 1 m=2 delta=1/1 n=2 seed=0\n1 0\n1 0\n2 0\n")
    with pytest.raises(ValueError):
        graph_io_roundtrip(str(bad_n))
    bad_parent = tmp_path / "bad_parent.pagraph"
    bad_parent.write_text("pagraph 1 m=2 delta=1/1 n=2 seed=0\n1 0\n1 0\n2 5\n2 0\n")
    with pytest.raises(ValueError):
        graph_io_roundtrip(str(bad_parent))
