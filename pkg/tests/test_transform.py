import math

import mpmath
import numpy as np
import pytest

from laplace_kit.catalog import lookup
from laplace_kit.core import AnalyticMap, DomainError, GridSignal
from laplace_kit.transform import (
    InversionConfig,
    aitken_limit,
    arc_decay_integral,
    bromwich_invert,
    causality_check,
    forward_transform,
    right_limit,
)


def test_forward_transform_exponential():
    assert abs(forward_transform(lambda t: np.exp(-t), 1.0) - 0.5) < 1e-10


def test_forward_transform_rejects_left_of_growth():
    with pytest.raises(DomainError):
        forward_transform(lambda t: np.exp(t), 0.5, growth=1.0)


def test_grid_transform_exact_for_linear_ramp():
    # f(t) = t on [0, 2]: int_0^2 t e^{-pt} dt
    g = GridSignal(0.0, 0.25, np.linspace(0.0, 2.0, 9))
    for p in (1.0, 0.3 + 2j, 1e-4):
        exact = complex(mpmath.quad(lambda t: t * mpmath.exp(-p * t), [0, 2]))
        assert abs(forward_transform(g, p) - exact) < 1e-12 * max(1, abs(exact))


def test_grid_transform_tail():
    dt = 0.001
    t = np.arange(0, 5 + dt / 2, dt)
    g = GridSignal(0.0, dt, np.exp(-t), tail_rate=1.0)
    assert abs(forward_transform(g, 1.0) - 0.5) < 1e-6


def test_aitken_limit_geometric():
    x = [1 + 0.5**k for k in (1, 2, 3)]
    assert abs(aitken_limit(*x) - 1.0) < 1e-14
    assert aitken_limit(1.0, 2.0, 4.0) is None


@pytest.mark.parametrize("n", [10.0, 100.0, 1000.0])
@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_arc_integral_bound(n, t):
    b = arc_decay_integral(n, t)
    assert n * abs(t) * b <= math.pi
    assert b > 0


def test_sigma_below_abscissa_rejected():
    with pytest.raises(DomainError):
        bromwich_invert(lookup("exp-decay").F, [1.0], InversionConfig(sigma=-1.0))


def test_config_validation():
    with pytest.raises(DomainError):
        InversionConfig(heights=(10.0,))
    with pytest.raises(DomainError):
        InversionConfig(heights=(10.0, 5.0))


def test_tighter_tolerance_tightens_result():
    cfg = InversionConfig(early_stop=True, convergence_tol=1e-9)
    res = bromwich_invert(lookup("t-exp").F, [1.0], cfg)
    assert abs(res.values[0] - math.exp(-1.0)) < 1e-8


def test_roundtrip_t_exp_single_point():
    res = bromwich_invert(lookup("t-exp").F, [1.0], InversionConfig(early_stop=True))
    assert res.all_converged
    assert abs(res.values[0] - math.exp(-1.0)) < 1e-5


def test_explicit_sigma_gives_same_function():
    F = lookup("t-exp").F
    a = bromwich_invert(F, [2.0], InversionConfig(sigma=0.3, early_stop=True)).values[0]
    b = bromwich_invert(F, [2.0], InversionConfig(sigma=1.0, early_stop=True)).values[0]
    assert abs(a - b) < 1e-5


def test_uniform_grid_matches_scattered_times():
    F = lookup("t-exp").F
    cfg = InversionConfig(early_stop=True)
    grid = bromwich_invert(F, np.linspace(1.0, 2.0, 6), cfg)
    exact = np.linspace(1.0, 2.0, 6) * np.exp(-np.linspace(1.0, 2.0, 6))
    assert np.max(np.abs(grid.values - exact)) < 1e-5
    sig = grid.signal
    assert isinstance(sig, GridSignal) and sig.dt == pytest.approx(0.2)


def test_complex_signal_path():
    # F(p) = 1/(p + 1 - i) inverts to e^{(-1+i)t}; not conjugate symmetric
    F = AnalyticMap(lambda p: 1.0 / (p + 1.0 - 1j), 0.0)
    res = bromwich_invert(F, [0.5, 1.0], InversionConfig(early_stop=True))
    exact = np.exp((-1 + 1j) * np.array([0.5, 1.0]))
    assert np.max(np.abs(res.values - exact)) < 1e-5


def test_right_limit_t_exp_is_zero():
    lim = right_limit(lookup("t-exp").F)
    assert lim["converged"] and abs(lim["value"]) < 1e-4


def test_right_limit_heaviside_is_one():
    lim = right_limit(lookup("heaviside").F)
    assert abs(lim["value"] - 1.0) < 1e-3


def test_causality_check_passes():
    rep = causality_check(lookup("t-exp").F, [-2.0, -1.0], InversionConfig(early_stop=True))
    assert rep.verdict == "pass"
    with pytest.raises(DomainError):
        causality_check(lookup("t-exp").F, [1.0])


def test_numpy_fallback_matches_numba(monkeypatch):
    F = lookup("t-exp").F
    cfg = InversionConfig(early_stop=True)
    times = [0.5, 1.5, 3.0]
    a = bromwich_invert(F, times, cfg).values
    monkeypatch.setenv("LAPLACE_KIT_DISABLE_NUMBA", "1")
    b = bromwich_invert(F, times, cfg).values
    assert np.max(np.abs(a - b)) < 1e-12
