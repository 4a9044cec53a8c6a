"""Complex helpers, gamma-family functions and the quadrature engine.

Complex values are plain Python ``complex`` / numpy ``complex128``.
Evaluators handed to this module are expected to be vectorized: they take
a numpy array and return an array of the same shape.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

# Re p is nudged by this much when a boundary trace is requested
BOUNDARY_NUDGE = 1e-12


class LaplaceKitError(Exception):
    """Base class for errors raised by laplace_kit."""


class DomainError(LaplaceKitError, ValueError):
    """An argument lies outside the domain of an operation."""


class ConvergenceError(LaplaceKitError, ArithmeticError):
    """Quadrature did not reach the requested tolerance.

    ``estimate`` and ``error`` carry the best value found and its error bound.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 2**14
    panel_order: int = 16

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.panel_order < 2:
            raise DomainError("panel_order must be at least 2")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be positive")


@dataclass(frozen=True)
class AnalyticMap:
    """A function analytic on the half-plane Re p > ``sigma0``.

    ``evaluator`` must accept numpy complex arrays.  ``real_signal`` declares
    conjugate symmetry F(conj p) = conj F(p), i.e. a real time function;
    line integrals then only need the upper half of the contour.
    """

    evaluator: Callable
    sigma0: float = 0.0
    label: str = ""
    real_signal: bool = False

    def __call__(self, p):
        p = np.asarray(p, dtype=complex)
        if np.any(~np.isfinite(p)):
            raise DomainError(f"{self.label or 'F'}: non-finite argument")
        if np.any(p.real <= self.sigma0):
            raise DomainError(
                f"{self.label or 'F'} is only analytic for Re p > {self.sigma0}; "
                f"got Re p = {float(np.min(p.real))}"
            )
        return self._eval(p)

    def trace(self, s):
        """Boundary values F(sigma0 + i s), taken just inside the half-plane."""
        s = np.asarray(s, dtype=float)
        return self._eval(self.sigma0 + BOUNDARY_NUDGE + 1j * s)

    def evaluate_closed(self, p):
        """Evaluate on Re p >= sigma0, nudging boundary points inside."""
        p = np.asarray(p, dtype=complex)
        if np.any(p.real < self.sigma0 - 1e-9 * max(1.0, abs(self.sigma0))):
            raise DomainError(f"{self.label or 'F'}: point left of the abscissa")
        re = np.maximum(p.real, self.sigma0 + BOUNDARY_NUDGE)
        return self._eval(re + 1j * p.imag)

    def _eval(self, p):
        out = np.asarray(self.evaluator(p), dtype=complex)
        if out.shape != p.shape:
            out = np.broadcast_to(out, p.shape).copy()
        return out


@dataclass(frozen=True)
class ContourSpec:
    """Vertical segment, right half-circle arc, or the closed D-shaped contour.

    vertical-segment: sigma - i n -> sigma + i n (upward).
    arc: center + n e^{i phi}, phi from -pi/2 to pi/2.
    closed: downward segment on Re q = center followed by the arc,
    counterclockwise.
    """

    kind: str
    sigma: float
    n: float
    center: float = 0.0

    def __post_init__(self):
        if self.kind not in ("vertical-segment", "arc", "closed"):
            raise DomainError(f"unknown contour kind {self.kind!r}")
        if not self.n > 0:
            raise DomainError("contour size n must be positive")

    @property
    def orientation(self):
        return "up" if self.kind == "vertical-segment" else "counterclockwise"


@dataclass(frozen=True)
class GridSignal:
    """Samples f(t0 + k dt), k = 0..N-1.

    ``tail_rate`` declares f(t) = f_last * exp(-tail_rate (t - t_last)) past
    the last sample; ``None`` means f vanishes there.
    """

    t0: float
    dt: float
    samples: np.ndarray
    tail_rate: float | None = None

    def __post_init__(self):
        samples = np.asarray(self.samples)
        if not self.dt > 0:
            raise DomainError("GridSignal needs dt > 0")
        if samples.ndim != 1 or samples.size < 2:
            raise DomainError("GridSignal needs at least two samples")
        object.__setattr__(self, "samples", samples)

    @property
    def times(self):
        return self.t0 + self.dt * np.arange(self.samples.size)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        ts = self.times
        vals = np.interp(t, ts, self.samples.real, left=0.0, right=0.0)
        if np.iscomplexobj(self.samples):
            vals = vals + 1j * np.interp(t, ts, self.samples.imag, left=0.0, right=0.0)
        if self.tail_rate is not None:
            past = t > ts[-1]
            vals = np.where(past, self.samples[-1] * np.exp(-self.tail_rate * (t - ts[-1])), vals)
        return vals


# ---------------------------------------------------------------------------
# elementary special functions


def principal_power(p, alpha):
    """p**alpha on the principal branch, Arg p in (-pi, pi].

    The cut lies on the non-positive real axis; a negative real p with a
    signed-zero imaginary part is put on the upper lip.
    """
    arr = np.asarray(p, dtype=complex)
    if np.any(arr == 0):
        raise DomainError("principal_power is undefined at p = 0")
    arg = np.angle(arr)
    arg = np.where((arr.imag == 0) & (arr.real < 0), np.pi, arg)
    out = np.exp(alpha * (np.log(np.abs(arr)) + 1j * arg))
    return complex(out) if np.ndim(out) == 0 else out


# Lanczos coefficients, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _lanczos_gamma(x):
    # valid for x >= 0.5
    x -= 1.0
    acc = _LANCZOS[0]
    for k in range(1, 9):
        acc += _LANCZOS[k] / (x + k)
    t = x + _LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * t ** (x + 0.5) * math.exp(-t) * acc


def gamma(x):
    """Gamma function on the reals; negative arguments use Gamma(x+1)/x."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("gamma needs a finite argument")
    if x <= 0 and x == math.floor(x):
        raise DomainError(f"gamma has a pole at {x}")
    if x > 171.7:
        raise DomainError("gamma overflows for x > 171.7")
    shift = 1.0
    while x < 0.5:
        shift *= x
        x += 1.0
    return _lanczos_gamma(x) / shift


def lower_incomplete_gamma(a, x):
    """gamma(a, x) = int_0^x s^(a-1) e^-s ds for a > 0, x >= 0."""
    if not a > 0:
        raise DomainError("lower_incomplete_gamma needs a > 0")
    if not x >= 0:
        raise DomainError("lower_incomplete_gamma needs x >= 0")
    if x == 0:
        return 0.0
    if x < a + 1.0:
        # power series
        term = 1.0 / a
        total = term
        k = 0
        while abs(term) > 1e-17 * abs(total) and k < 10_000:
            k += 1
            term *= x / (a + k)
            total += term
        return total * math.exp(-x + a * math.log(x))
    # continued fraction for the upper function (modified Lentz)
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10_000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        d = tiny if abs(d) < tiny else d
        c = b + an / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    upper = math.exp(-x + a * math.log(x)) * h
    return gamma(a) - upper


# ---------------------------------------------------------------------------
# quadrature


@lru_cache(maxsize=None)
def gauss_legendre(order):
    """Nodes and weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def panel_nodes(edges, order):
    """Gauss-Legendre nodes and weights for consecutive panels."""
    edges = np.asarray(edges, dtype=float)
    x, w = gauss_legendre(order)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def graded_edges(a, b, side, ratio=0.15, levels=60):
    """Panel edges on [a, b] shrinking geometrically toward the singular side(s)."""
    if side == "both":
        m = 0.5 * (a + b)
        return np.concatenate([graded_edges(a, m, "left", ratio, levels),
                               graded_edges(m, b, "right", ratio, levels)[1:]])
    frac = ratio ** np.arange(levels, -1, -1)
    if side == "left":
        return np.concatenate([[a], a + (b - a) * frac])
    return np.concatenate([b - (b - a) * frac[::-1], [b]])


def _as_result(value):
    value = complex(value)
    return value.real if value.imag == 0 else value


def integrate_real(f, a, b, cfg=None, *, decay_rate=None, singular=None, breakpoints=None):
    """Adaptive composite Gauss-Legendre quadrature of ``f`` over [a, b].

    ``f`` is vectorized and may be complex valued.  ``b`` may be ``inf``: the
    range is then cut where the integrand envelope drops below abs_tol/10,
    using ``decay_rate`` (|f| <~ C exp(-decay_rate t)) when given and probing
    otherwise.  ``singular`` ("left", "right", "both") requests geometric
    grading toward an endpoint; it is switched on automatically when f is not
    finite there.  Returns a float for real integrands, complex otherwise.
    """
    cfg = cfg or QuadratureConfig()
    a = float(a)
    b = float(b)
    if not a < b:
        raise DomainError("integrate_real needs a < b")
    if math.isinf(a):
        raise DomainError("lower limit must be finite")
    if math.isinf(b):
        b = _truncation_point(f, a, cfg, decay_rate)

    if singular is None:
        singular = _detect_singular_ends(f, a, b)
    if breakpoints is not None:
        pts = sorted(set([a, b] + [float(x) for x in breakpoints if a < x < b]))
    else:
        pts = [a, b]

    edges = []
    for lo, hi in zip(pts[:-1], pts[1:]):
        side = None
        if singular in ("left", "both") and lo == a:
            side = "left"
        if singular in ("right", "both") and hi == b:
            side = "both" if side == "left" else "right"
        piece = graded_edges(lo, hi, side) if side else np.array([lo, hi])
        edges.extend(piece[:-1])
    edges.append(b)
    return _adaptive(f, np.asarray(edges), cfg)


def _detect_singular_ends(f, a, b):
    ends = np.array([a, b])
    with np.errstate(all="ignore"):
        try:
            vals = np.asarray(f(ends), dtype=complex)
        except (ZeroDivisionError, ValueError, DomainError):
            return "both"
    bad = ~np.isfinite(vals)
    if bad[0] and bad[1]:
        return "both"
    if bad[0]:
        return "left"
    if bad[1]:
        return "right"
    return None


def _truncation_point(f, a, cfg, decay_rate):
    target = cfg.abs_tol / 10
    span = 1.0
    if decay_rate is not None and decay_rate > 0:
        probe = np.abs(np.asarray(f(a + np.linspace(0.0, 1.0, 9)), dtype=complex))
        scale = max(float(np.max(probe)), 1e-300)
        span = max(1.0, math.log(max(scale / target, 1.0)) / decay_rate)
    for _ in range(200):
        window = a + span + span * np.linspace(0.0, 1.0, 33)
        env = float(np.max(np.abs(np.asarray(f(window), dtype=complex))))
        if env < target:
            return a + span
        span *= 2.0
        if span > 1e12:
            break
    raise ConvergenceError("integrand does not decay on [a, inf)", None, None)


def _batch_panels(f, los, his, order):
    x, w = gauss_legendre(order)
    los = np.asarray(los, dtype=float)
    his = np.asarray(his, dtype=float)
    mid = 0.5 * (los + his)
    half = 0.5 * (his - los)
    q = 0.5 * half
    xs = np.concatenate([
        (mid[:, None] + half[:, None] * x).ravel(),
        ((mid - q)[:, None] + q[:, None] * x).ravel(),
        ((mid + q)[:, None] + q[:, None] * x).ravel(),
    ])
    vals = np.asarray(f(xs), dtype=complex).reshape(3, los.size, x.size)
    whole = half * (vals[0] @ w)
    left = q * (vals[1] @ w)
    right = q * (vals[2] @ w)
    return whole, left, right


def _adaptive(f, edges, cfg):
    order = cfg.panel_order
    los, his = edges[:-1], edges[1:]
    keep = his > los
    los, his = los[keep], his[keep]
    whole, left, right = _batch_panels(f, los, his, order)
    fine = left + right
    errs = np.abs(fine - whole)
    if not np.all(np.isfinite(fine)):
        raise ConvergenceError("integrand is not finite at a quadrature node", None, None)

    heap = [(-float(e), float(lo), float(hi), complex(v)) for e, lo, hi, v in zip(errs, los, his, fine)]
    heapq.heapify(heap)
    total = complex(np.sum(fine))
    err = float(np.sum(errs))
    splits = 0
    while err > max(cfg.abs_tol, cfg.rel_tol * abs(total)):
        if splits >= cfg.max_subdivisions:
            raise ConvergenceError(
                f"no convergence after {splits} subdivisions (error {err:.3g})",
                _as_result(total), err,
            )
        # split several of the worst panels per pass
        batch = [heapq.heappop(heap) for _ in range(min(len(heap), 32))]
        lo_b = []
        hi_b = []
        for negerr, lo, hi, val in batch:
            total -= val
            err += negerr
            mid = 0.5 * (lo + hi)
            if not (lo < mid < hi):
                # panel at floating point resolution: accept as is
                total += val
                continue
            lo_b += [lo, mid]
            hi_b += [mid, hi]
        splits += len(lo_b) // 2
        if not lo_b:
            break
        whole, left, right = _batch_panels(f, lo_b, hi_b, order)
        fine = left + right
        if not np.all(np.isfinite(fine)):
            raise ConvergenceError("integrand is not finite at a quadrature node", _as_result(total), err)
        e = np.abs(fine - whole)
        for k in range(len(lo_b)):
            heapq.heappush(heap, (-float(e[k]), lo_b[k], hi_b[k], complex(fine[k])))
            total += fine[k]
            err += float(e[k])
        err = max(err, 0.0)
    return _as_result(total)


def _contour_pieces(contour):
    """(parameter range, point map, derivative map, sign) for each smooth piece."""
    if contour.kind == "vertical-segment":
        x = contour.sigma
        return [((-contour.n, contour.n), lambda s: x + 1j * s, lambda s: 1j + 0 * s, 1.0)]
    c = contour.center
    n = contour.n
    arc = ((-math.pi / 2, math.pi / 2),
           lambda ph: c + n * np.exp(1j * ph),
           lambda ph: 1j * n * np.exp(1j * ph), 1.0)
    if contour.kind == "arc":
        return [arc]
    # -K: downward along Re q = center
    seg = ((-n, n), lambda s: c + 1j * s, lambda s: 1j + 0 * s, -1.0)
    return [seg, arc]


def integrate_contour(F, contour, weight=None, cfg=None):
    """Integral of weight(q) F(q) dq along ``contour``.

    Points on the abscissa of F are evaluated as boundary traces.
    """
    cfg = cfg or QuadratureConfig()
    lo_sigma = contour.center if contour.kind != "vertical-segment" else contour.sigma
    if lo_sigma < F.sigma0:
        raise DomainError("contour leaves the half-plane of analyticity")

    total = 0j
    for (a, b), point, deriv, sign in _contour_pieces(contour):
        def integrand(u, point=point, deriv=deriv):
            q = point(u)
            val = F.evaluate_closed(q) * deriv(u)
            if weight is not None:
                val = val * np.asarray(weight(q), dtype=complex)
            return val
        total += sign * complex(integrate_real(integrand, a, b, cfg, singular=False))
    return total
