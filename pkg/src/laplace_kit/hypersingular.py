"""The equation h(t) = g(t) + int (t-s)^{-5/4} h(s) ds, solved in the Laplace domain.

The hypersingular integral diverges classically, so it is never evaluated.
With c1 = |Gamma(-1/4)| the regularised equation becomes

    L(h)(p) = L(g)(p) / (1 + c1 p^{1/4}),

which is inverted numerically.  The forcing term g plays the role of the
time function whose transform appears in the numerator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .catalog import CatalogEntry
from .core import AnalyticMap, DomainError, GridSignal, gamma, principal_power
from .report import CheckReport
from .transform import InversionConfig, InversionResult, bromwich_invert, forward_transform

RESIDUAL_TOL = 1e-3
ZERO_TOL = 1e-2
DEFAULT_PROBES = (1.0, 2.0, 5.0, 1 + 1j, 2 + 3j)


@dataclass(frozen=True)
class HypersingularProblem:
    g: CatalogEntry | GridSignal

    def __post_init__(self):
        if isinstance(self.g, CatalogEntry):
            if not self.g.is_pair:
                raise DomainError(
                    f"{self.g.name} has no time-domain representative and cannot be a forcing term"
                )
            if self.g.F.sigma0 > 0:
                raise DomainError("L(g) must be analytic in Re p > 0")
        elif not isinstance(self.g, GridSignal):
            raise DomainError("g must be a catalog entry or a GridSignal")

    @cached_property
    def c1(self):
        return abs(gamma(-0.25))

    @cached_property
    def g_transform(self) -> AnalyticMap:
        if isinstance(self.g, CatalogEntry):
            return self.g.F
        sig = self.g

        def Lg(p):
            p = np.asarray(p, complex)
            return np.vectorize(lambda q: forward_transform(sig, q), otypes=[complex])(p)

        real = not np.iscomplexobj(sig.samples)
        return AnalyticMap(Lg, 0.0, "L(g) of grid signal", real_signal=real)

    @cached_property
    def H(self) -> AnalyticMap:
        Lg = self.g_transform
        c1 = self.c1

        def H(p):
            return Lg._eval(p) / (1.0 + c1 * principal_power(p, 0.25))

        return AnalyticMap(H, 0.0, f"({Lg.label})/(1+c1 p^(1/4))", real_signal=Lg.real_signal)

    @property
    def from_grid(self):
        return isinstance(self.g, GridSignal)


def solve(problem: HypersingularProblem, times, cfg: InversionConfig | None = None) -> InversionResult:
    return bromwich_invert(problem.H, times, cfg)


def verification_grid(t_end=12.0, dt=0.002):
    """Uniform grid starting at 0, fine enough for the interpolated forward transform.

    h can behave like sqrt(t) at the origin, where linear interpolation loses
    accuracy; dt = 0.002 keeps that error near 3e-4 relative.  Probes have
    Re p >= 1, so the part beyond t_end is below e^{-12}.
    """
    n = int(round(t_end / dt))
    return np.linspace(0.0, n * dt, n + 1)


def verification_config():
    return InversionConfig(early_stop=True, convergence_tol=1e-6)


def verify_in_laplace_domain(problem: HypersingularProblem, h: InversionResult, probes=DEFAULT_PROBES,
                             tol=None) -> CheckReport:
    """Compare (1 + c1 p^{1/4}) L(h)(p) with L(g)(p) at the probe points.

    L(h) is the transform of the piecewise linear interpolant of h on its
    grid, so h must sit on a uniform grid starting at t = 0 and extend far
    enough that e^{-Re p t_end} is negligible.
    """
    probes = [complex(p) for p in probes]
    if any(p.real <= 0.1 for p in probes):
        raise DomainError("probe points must satisfy Re p > 0.1")
    tol = tol if tol is not None else RESIDUAL_TOL
    if h.times[0] != 0:
        raise DomainError("h must start at t = 0")
    sig = h.signal
    evidence = []
    residuals = []
    for p in probes:
        lh = forward_transform(sig, p)
        lhs = (1.0 + problem.c1 * complex(principal_power(p, 0.25))) * lh
        lg = complex(problem.g_transform(p))
        r = abs(lhs - lg) / abs(lg) if lg != 0 else abs(lhs - lg)
        residuals.append(r)
        evidence.append((f"residual at p={p}", r))
    vals = np.abs(h.values)
    sup = float(np.max(vals))
    h0 = complex(h.values[0])
    evidence += [("sup |h|", sup), ("h(0+)", h0)]
    bounded = math.isfinite(sup)
    small_start = abs(h0) < ZERO_TOL
    converged = h.all_converged
    notes = []
    if not converged:
        verdict = "inconclusive"
        notes.append("inversion did not converge at every grid point")
    elif max(residuals) <= tol and bounded and small_start:
        verdict = "pass"
    else:
        verdict = "fail"
        if max(residuals) > tol:
            notes.append("Laplace-domain residual above tolerance")
        if not bounded:
            notes.append("h is not bounded on the grid")
        if not small_start:
            notes.append("h(0+) is not small")
    return CheckReport(
        "hypersingular-residual",
        verdict,
        evidence,
        {"residual": tol, "h0": ZERO_TOL},
        "; ".join(notes),
        data={"residuals": residuals, "sup_h": sup, "h0": h0, "c1": problem.c1,
              "max_residual": max(residuals)},
    )
