import numpy as np
import pytest

from qmatch._mc import backend_name, compiled_available, get_backend
from qmatch.harness.montecarlo import (
    ScoreReport,
    SimulationConfig,
    simulate_semiclassical,
    simulate_universal,
)


def test_config_validation():
    SimulationConfig(2, 1, "universal", 100, 7)
    SimulationConfig(2, 1, "semiclassical:discrete_three", 100, 7)
    with pytest.raises(ValueError):
        SimulationConfig(0, 1, "universal", 100, 7)
    with pytest.raises(ValueError):
        SimulationConfig(2, 0, "universal", 100, 7)
    with pytest.raises(ValueError):
        SimulationConfig(2, 1, "universal", 0, 7)
    with pytest.raises(ValueError):
        SimulationConfig(2, 1, "universal", 100, 2**64)
    with pytest.raises(ValueError):
        SimulationConfig(2, 1, "universal:extra", 100, 7)
    with pytest.raises(ValueError):
        SimulationConfig(2, 1, "semiclassical:guesswork", 100, 7)
    with pytest.raises(ValueError):
        SimulationConfig(2, 1, "folk", 100, 7)


def test_strategy_accessors():
    config = SimulationConfig(1, 1, "semiclassical:separable_four", 10, 1)
    assert config.strategy_family == "semiclassical"
    assert config.strategy_kind == "separable_four"


def test_report_requires_positive_stderr():
    config = SimulationConfig(1, 1, "universal", 100, 1)
    with pytest.raises(ValueError):
        ScoreReport(config, 0.6, 0.6, 0.6, 0.0)


def test_single_sample_has_zero_stderr():
    config = SimulationConfig(1, 1, "universal", 1, 3)
    report = simulate_universal(config)
    # Each sample contributes the smooth overlap score, so one draw lands
    # anywhere in [0, 1]; with a single sample there is no spread estimate.
    assert 0.0 <= report.score_mc <= 1.0
    assert report.score_mc_stderr == 0.0


def test_universal_bit_determinism():
    config = SimulationConfig(2, 1, "universal", 70_000, 11)
    a = simulate_universal(config)
    b = simulate_universal(config)
    assert a.score_mc == b.score_mc
    assert a.score_mc_stderr == b.score_mc_stderr


def test_semiclassical_bit_determinism():
    config = SimulationConfig(2, 1, "semiclassical:discrete_three", 70_000, 11)
    a = simulate_semiclassical(config)
    b = simulate_semiclassical(config)
    assert a.score_mc == b.score_mc
    assert a.score_mc_stderr == b.score_mc_stderr


def test_thread_count_does_not_change_the_stream(monkeypatch):
    config = SimulationConfig(1, 1, "universal", 200_000, 5)
    monkeypatch.setenv("QMATCH_THREADS", "1")
    serial = simulate_universal(config)
    monkeypatch.setenv("QMATCH_THREADS", "4")
    threaded = simulate_universal(config)
    assert serial.score_mc == threaded.score_mc
    assert serial.score_mc_stderr == threaded.score_mc_stderr


@pytest.mark.parametrize(
    "strategy",
    ["semiclassical:discrete_three", "semiclassical:separable_four", "semiclassical:covariant_sqrt"],
)
def test_semiclassical_consistent_with_analytic(strategy):
    config = SimulationConfig(2, 1, strategy, 200_000, 7)
    report = simulate_semiclassical(config)
    assert report.score_analytic is not None
    assert abs(report.score_mc - report.score_analytic) <= 4.0 * report.score_mc_stderr
    np.testing.assert_allclose(report.score_quadrature, report.score_analytic, atol=1e-9)


@pytest.mark.parametrize("n_inputs", [1, 2, 5])
def test_universal_consistent_with_analytic(n_inputs):
    config = SimulationConfig(n_inputs, 1, "universal", 200_000, 7)
    report = simulate_universal(config)
    assert abs(report.score_mc - report.score_analytic) <= 4.0 * report.score_mc_stderr
    np.testing.assert_allclose(report.score_quadrature, report.score_analytic, atol=1e-9)


def test_universal_k2_uses_solver_score():
    config = SimulationConfig(2, 2, "universal", 200_000, 7)
    report = simulate_universal(config)
    # No closed form is exposed for K >= 2; the Monte-Carlo column must still
    # agree with the solver-derived quadrature score.
    assert report.score_analytic is None
    np.testing.assert_allclose(report.score_quadrature, 0.6337385230855419, atol=1e-9)
    assert abs(report.score_mc - report.score_quadrature) <= 4.0 * report.score_mc_stderr


def test_wrong_family_rejected_by_simulators():
    universal = SimulationConfig(1, 1, "universal", 10, 1)
    semi = SimulationConfig(1, 1, "semiclassical:discrete_three", 10, 1)
    with pytest.raises(ValueError):
        simulate_semiclassical(universal)
    with pytest.raises(ValueError):
        simulate_universal(semi)


def test_semiclassical_requires_single_copy_templates():
    config = SimulationConfig(2, 2, "semiclassical:discrete_three", 10, 1)
    with pytest.raises(ValueError):
        simulate_semiclassical(config)


def test_backend_selection(monkeypatch):
    monkeypatch.setenv("QMATCH_MC_BACKEND", "numpy")
    assert backend_name() == "numpy"
    monkeypatch.setenv("QMATCH_MC_BACKEND", "nonsense")
    with pytest.raises(ValueError):
        get_backend()
    monkeypatch.delenv("QMATCH_MC_BACKEND")
    assert backend_name() in ("cython", "numpy")


@pytest.mark.skipif(not compiled_available(), reason="compiled kernel not built")
def test_backends_agree(monkeypatch):
    # Both backends consume the same draws and pick the same outcomes; only
    # the reduction order differs, so the reports match to roundoff.
    results = {}
    for name in ("cython", "numpy"):
        monkeypatch.setenv("QMATCH_MC_BACKEND", name)
        u = simulate_universal(SimulationConfig(2, 1, "universal", 150_000, 13))
        s = simulate_semiclassical(
            SimulationConfig(2, 1, "semiclassical:separable_four", 150_000, 13)
        )
        results[name] = (u.score_mc, u.score_mc_stderr, s.score_mc, s.score_mc_stderr)
    np.testing.assert_allclose(results["cython"], results["numpy"], rtol=0, atol=1e-12)
