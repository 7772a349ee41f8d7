import math

import numpy as np
import pytest

from neutralstab.ddesim import SimConfig, classify, empirical_stability, growth_rate, simulate
from neutralstab.errors import ConfigError
from neutralstab.stability import NeutralSystem
from neutralstab.systemfile import load_system

from oracles import track_characteristic_root

# rightmost root of the ex5 characteristic function at tau = 0.2,
# continued from the imaginary-axis crossing at the analyzer's bound
EX5_RATE_AT_0_2 = 0.2235357841950129


def test_scalar_exponential():
    s = NeutralSystem.create([[-1]])
    tr = simulate(s, SimConfig(0.05, horizon=1.0, history=[1.0]))
    assert tr.times[-1] == pytest.approx(1.0)
    assert abs(tr.states[-1, 0] - math.exp(-1)) < 1e-6


def test_pure_delay_first_interval_is_linear():
    # x' = -x(t - 1) with x = 1 before 0 gives x = 1 - t on [0, 1]
    s = NeutralSystem.create([[0]], [[[-1]]])
    tr = simulate(s, SimConfig(1.0, step=0.05, horizon=20.0, history=[1.0]))
    k = int(round(1.0 / 0.05))
    assert np.allclose(tr.states[: k + 1, 0], 1 - tr.times[: k + 1], atol=1e-12)
    # second interval: x = 1 - t + (t - 1)^2 / 2
    t = tr.times[k : 2 * k + 1]
    assert np.allclose(tr.states[k : 2 * k + 1, 0], 1 - t + (t - 1) ** 2 / 2, atol=1e-10)


def test_neutral_term_uses_stored_derivative():
    # x' = -x + 0.5 x'(t - tau), constant history: x' jumps at multiples of tau
    s = NeutralSystem.create([[-1]], B=[[["0.5"]]])
    tr = simulate(s, SimConfig(1.0, step=0.01, horizon=20.0, history=[1.0]))
    x, d = tr.states[:, 0], tr.derivatives[:, 0]
    k = 100
    # first interval: no neutral contribution
    assert np.allclose(x[: k + 1], np.exp(-tr.times[: k + 1]), atol=1e-9)
    # residual of the equation at interior grid points of later intervals
    for j in range(k + 1, 4 * k):
        if j % k:
            assert d[j] == pytest.approx(-x[j] + 0.5 * d[j - k], abs=1e-9)


def test_invariant_sample_count():
    s = load_system("ex3")
    cfg = SimConfig(0.5, step=0.025, horizon=10.0).resolved()
    tr = simulate(s, cfg)
    assert len(tr.times) == int(round(10.0 / 0.025)) + 1
    assert tr.states.shape == (len(tr.times), 2)


def test_ex3_decays():
    tr = simulate(load_system("ex3"), SimConfig(0.5, history=[1.0, 1.0]))
    assert tr.growth_rate < 0


def test_ex5_grows_above_bound():
    s = load_system("ex5")
    tr = simulate(s, SimConfig(0.2))
    assert tr.growth_rate > 0
    assert tr.growth_rate == pytest.approx(EX5_RATE_AT_0_2, rel=0.02)
    assert empirical_stability(s, 0.2) == "growing"


def test_ex5_decays_below_bound():
    assert empirical_stability(load_system("ex5"), 0.1) == "decaying"


@pytest.mark.parametrize("tau", [0.1, 1.0, 5.0])
def test_ex4_decays(tau):
    assert empirical_stability(load_system("ex4"), tau) == "decaying"


def test_tracking_oracle_reproduces_frozen_rate():
    from neutralstab.stability import analyze

    s = load_system("ex5")
    v = analyze(s)
    T = v.delay_bound_T

    def first_tau(z, y):
        period = 2 * math.pi / abs(y)
        return (-2 * math.atan(z) / y) % period or period

    z0, y0 = min(v.condition_reports[2].witnesses, key=lambda w: first_tau(*w))
    lam = track_characteristic_root(s, 1j * y0, T, 0.2)
    assert lam.real == pytest.approx(EX5_RATE_AT_0_2, abs=1e-9)


def test_step_halving_is_stable():
    s = load_system("ex5")
    coarse = simulate(s, SimConfig(0.2, step=0.01)).growth_rate
    fine = simulate(s, SimConfig(0.2, step=0.005)).growth_rate
    assert abs(fine - coarse) < 0.1 * abs(fine)


@pytest.mark.parametrize(
    "kwargs",
    [dict(tau=0.5, step=0.03), dict(tau=0.5, step=0.05), dict(tau=1.0, horizon=5.0), dict(tau=-1.0), dict(tau=0.5, step=-0.01)],
)
def test_config_errors(kwargs):
    with pytest.raises(ConfigError):
        SimConfig(**kwargs).resolved()


def test_history_callable_with_derivative():
    s = NeutralSystem.create([[-1]], B=[[["0.2"]]])
    cfg = SimConfig(1.0, step=0.01, horizon=20.0, history=lambda t: [math.cos(t)],
                    history_derivative=lambda t: [-math.sin(t)])
    tr = simulate(s, cfg)
    assert tr.states[0, 0] == pytest.approx(1.0)
    assert tr.growth_rate < 0


def test_growth_rate_of_exact_exponential():
    t = np.linspace(0, 30, 301)
    states = np.exp(-0.3 * t)[:, None] * np.array([[3.0, 4.0]])
    assert growth_rate(t, states) == pytest.approx(-0.3)


def test_classification_thresholds():
    assert classify(-0.01) == "decaying"
    assert classify(0.01) == "growing"
    assert classify(5e-4) == "inconclusive"


def test_overflow_stops_early():
    s = NeutralSystem.create([[5]])
    tr = simulate(s, SimConfig(0.1, horizon=200.0))
    assert tr.overflowed and tr.stopped_early
    assert empirical_stability(s, 0.1, horizon=200.0) == "growing"
