import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laplace_kit.catalog import lookup
from laplace_kit.checks import decay_profile
from laplace_kit.core import DomainError, GridSignal, principal_power
from laplace_kit.hypersingular import (
    HypersingularProblem,
    solve,
    verification_config,
    verification_grid,
    verify_in_laplace_domain,
)
from laplace_kit.transform import InversionConfig


@pytest.fixture(scope="module")
def texp_problem():
    return HypersingularProblem(lookup("t-exp"))


@pytest.fixture(scope="module")
def texp_dense(texp_problem):
    return solve(texp_problem, verification_grid(), verification_config())


def test_c1_from_recurrence(texp_problem):
    assert texp_problem.c1 == pytest.approx(4.0 * math.gamma(0.75), rel=1e-12)
    assert abs(texp_problem.c1 - 4.9016668) < 1e-7


def test_H_at_one(texp_problem):
    assert complex(texp_problem.H(1.0)) == pytest.approx(1.0 / (4.0 * (1.0 + texp_problem.c1)), rel=1e-14)


@settings(max_examples=1000, deadline=None)
@given(st.floats(1e-6, 1e4), st.floats(-1e4, 1e4))
def test_H_bounded_by_forcing_transform(x, y):
    pr = HypersingularProblem(lookup("paper-2c"))
    p = complex(x, y)
    assert abs(complex(pr.H(p))) <= abs(complex(pr.g_transform(p))) * (1 + 1e-12)


def test_H_decay_exponent(texp_problem):
    prof = decay_profile(texp_problem.H, [10.0**k for k in range(2, 9)])
    assert prof.fitted_exponent <= -1


def test_verify_passes(texp_problem, texp_dense):
    rep = verify_in_laplace_domain(texp_problem, texp_dense, (1.0, 2.0, 1 + 1j))
    assert rep.verdict == "pass"
    assert abs(rep.data["h0"]) < 1e-2


def test_verify_detects_perturbation(texp_problem, texp_dense):
    bad = dataclasses.replace(texp_dense, values=texp_dense.values + 0.01)
    assert verify_in_laplace_domain(texp_problem, bad).verdict == "fail"


def test_verify_rejects_bad_probes(texp_problem, texp_dense):
    with pytest.raises(DomainError):
        verify_in_laplace_domain(texp_problem, texp_dense, (0.05,))


def test_linearity():
    # fixed height ladder; early stopping could halt g and 2g at different heights
    cfg = InversionConfig()
    times = [0.5, 1.0, 3.0]
    entry = lookup("t-exp")
    doubled = dataclasses.replace(entry, F=dataclasses.replace(entry.F, evaluator=lambda p: 2.0 / (p + 1.0) ** 2),
                                  f=lambda t: 2 * entry.f(t))
    h1 = solve(HypersingularProblem(entry), times, cfg).values
    h2 = solve(HypersingularProblem(doubled), times, cfg).values
    assert np.max(np.abs(h2 - 2 * h1)) < 1e-10


def test_zero_forcing():
    res = solve(HypersingularProblem(lookup("zero")), [0.0, 0.5, 2.0])
    assert np.all(res.values == 0)


def test_quarter_example_forcing():
    pr = HypersingularProblem(lookup("paper-2c"))
    h = solve(pr, verification_grid(), verification_config())
    assert verify_in_laplace_domain(pr, h).verdict == "pass"


@pytest.mark.parametrize("name", ["counterexample-2e", "power-quarter"])
def test_rejects_entries_without_time_function(name):
    with pytest.raises(DomainError):
        HypersingularProblem(lookup(name))


def test_grid_signal_forcing():
    dt = 0.01
    t = np.arange(0.0, 30.0 + dt / 2, dt)
    g = GridSignal(0.0, dt, t * np.exp(-t))
    pr = HypersingularProblem(g)
    assert pr.from_grid
    p = 1.5 + 0.5j
    expected = 1.0 / ((1 + p) ** 2 * (1 + pr.c1 * principal_power(p, 0.25)))
    assert abs(complex(pr.H(p)) - expected) < 1e-5
