"""Forward Laplace transform and truncated Bromwich inversion.

The inverse at time t is

    f(t) = exp(sigma t) / (2 pi) * int_{-n}^{n} F(sigma + i s) exp(i s t) ds

evaluated for each truncation height n of an increasing sequence.  The line
is cut into Gauss-Legendre panels no wider than pi / (2 max|t|); near s = 0
the panels are graded with the distance of the line to the abscissa, so
branch points and poles on the abscissa are resolved.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .core import (
    AnalyticMap,
    DomainError,
    GridSignal,
    QuadratureConfig,
    gauss_legendre,
    integrate_real,
)
from .report import CheckReport

# times used for the right limit at t = 0
RIGHT_LIMIT_TIMES = (1e-2, 1e-3, 1e-4)

_CHUNK_PANELS = 1 << 15


def default_heights():
    return tuple(50.0 * 2.0**k for k in range(15))


@dataclass(frozen=True)
class InversionConfig:
    """Settings for ``bromwich_invert``.

    ``sigma=None`` picks the line per group of times: sigma0 + min(0.5, 0.5/t)
    for positive times, sigma0 + 0.5 for negative ones.  With ``early_stop``
    the height loop ends once every point has converged.  ``limit_height``
    bounds the extra doublings used for the right limit at t = 0.
    """

    sigma: float | None = None
    heights: tuple = field(default_factory=default_heights)
    convergence_tol: float = 1e-5
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    early_stop: bool = False
    limit_height: float = 50.0 * 2.0**20
    panel_growth: float = 0.25

    def __post_init__(self):
        heights = tuple(float(h) for h in self.heights)
        if len(heights) < 2:
            raise DomainError("need at least two truncation heights")
        if any(b <= a for a, b in zip(heights, heights[1:])) or heights[0] <= 0:
            raise DomainError("truncation heights must be positive and strictly increasing")
        if not self.convergence_tol > 0:
            raise DomainError("convergence_tol must be positive")
        object.__setattr__(self, "heights", heights)


@dataclass
class InversionResult:
    times: np.ndarray
    values: np.ndarray
    converged: np.ndarray
    deltas: np.ndarray
    achieved_height: float
    sigmas: np.ndarray

    @property
    def signal(self):
        """The result as a GridSignal; only defined for uniformly spaced times."""
        t = self.times
        if t.size < 2:
            raise DomainError("a GridSignal needs at least two times")
        dt = (t[-1] - t[0]) / (t.size - 1)
        if not np.allclose(np.diff(t), dt, rtol=1e-9, atol=1e-12 * max(1.0, abs(dt))):
            raise DomainError("times are not uniformly spaced")
        vals = self.values
        if np.all(vals.imag == 0):
            vals = vals.real
        return GridSignal(float(t[0]), float(dt), vals)

    @property
    def all_converged(self):
        return bool(np.all(self.converged))


# ---------------------------------------------------------------------------
# forward transform


def forward_transform(f, p, cfg=None, *, growth=0.0):
    """int_0^inf exp(-p t) f(t) dt.

    ``f`` is either a GridSignal (integrated exactly as its piecewise linear
    interpolant) or a vectorized callable with |f(t)| <~ C exp(growth t).
    """
    cfg = cfg or QuadratureConfig()
    p = complex(p)
    if isinstance(f, GridSignal):
        return _grid_transform(f, p)
    if not p.real > growth:
        raise DomainError(f"Re p = {p.real} must exceed the growth abscissa {growth}")

    def integrand(t):
        return np.exp(-p * t) * f(t)

    return complex(integrate_real(integrand, 0.0, math.inf, cfg, decay_rate=p.real - growth))


def _interp_weights(x):
    """int_0^1 e^{-x v}(1-v) dv and int_0^1 e^{-x v} v dv."""
    if abs(x) < 0.05:
        # Taylor series; terms alternate and shrink by |x|/k
        a = b = 0j
        term = 1.0 + 0j
        for k in range(12):
            a += term / ((k + 1) * (k + 2))
            b += term * (k + 1) / ((k + 1) * (k + 2))
            term *= -x / (k + 1)
        return a, b
    em = np.exp(-x)
    a = (x - 1.0 + em) / (x * x)
    b = (1.0 - em - x * em) / (x * x)
    return a, b


def _grid_transform(sig, p):
    t = sig.times
    f = sig.samples
    dt = sig.dt
    a, b = _interp_weights(p * dt)
    damp = np.exp(-p * t[:-1])
    total = dt * (a * np.dot(damp, f[:-1]) + b * np.dot(damp, f[1:]))
    if sig.tail_rate is not None:
        rate = p + sig.tail_rate
        if rate.real <= 0:
            raise DomainError("declared tail does not decay for this p")
        total += f[-1] * np.exp(-p * t[-1]) / rate
    return complex(total)


# ---------------------------------------------------------------------------
# truncated line integrals


def _segment_edges(a, b, w_osc, d_min, growth):
    """Panel edges on [a, b] (0 <= a < b): graded from d_min, capped at w_osc."""
    edges = [a]
    x = a
    while x < b:
        w = min(w_osc, max(d_min, growth * x))
        if w >= w_osc:
            count = max(1, math.ceil((b - x) / w_osc))
            rest = x + w_osc * np.arange(1, count + 1)
            rest[-1] = b
            return np.concatenate([np.asarray(edges), rest[rest > x]])
        x = min(x + w, b)
        edges.append(x)
    return np.asarray(edges)


def _is_uniform(t):
    if t.size < 8:
        return False
    d = np.diff(t)
    return bool(np.allclose(d, d[0], rtol=1e-10, atol=0.0)) and d[0] > 0


def line_integral(g, times, heights, *, d_min, prefactor=None, real_signal=False,
                  order=16, growth=0.25, tol=1e-5, early_stop=False):
    """Partial integrals int_{-n}^{n} g(s) exp(i s t) ds over the heights.

    ``prefactor`` (one per time) scales the integrals before convergence is
    judged.  Returns (values, deltas, converged, height) where ``deltas`` is
    the change between the last two heights used.
    """
    times = np.asarray(times, dtype=float)
    pref = np.ones(times.size, complex) if prefactor is None else np.asarray(prefactor, complex)
    tmax = float(np.max(np.abs(times))) if times.size else 0.0
    w_osc = math.pi / (2.0 * tmax) if tmax > 0 else math.inf
    uniform = _is_uniform(times)
    x, w = gauss_legendre(order)

    acc = np.zeros(times.size, complex)
    prev = None
    deltas = np.full(times.size, np.inf)
    lo = 0.0
    height = lo
    for height in heights:
        edges = _segment_edges(lo, height, w_osc, d_min, growth)
        for c0 in range(0, edges.size - 1, _CHUNK_PANELS):
            e = edges[c0:c0 + _CHUNK_PANELS + 1]
            mid = 0.5 * (e[1:] + e[:-1])
            half = 0.5 * (e[1:] - e[:-1])
            s = (mid[:, None] + half[:, None] * x).ravel()
            ws = (half[:, None] * w).ravel()
            sides = (s,) if real_signal else (s, -s)
            for sv in sides:
                wf = ws * g(sv)
                if real_signal:
                    # the lower half contributes the complex conjugate
                    wf = 2.0 * wf
                if uniform:
                    dt = (times[-1] - times[0]) / (times.size - 1)
                    part = np.zeros(times.size, complex)
                    _kernels.phase_sum_uniform(sv, wf, times[0], dt, times.size, part)
                    acc += part.real if real_signal else part
                elif real_signal:
                    part = np.zeros(times.size)
                    _kernels.real_phase_sum(sv, wf, times, part)
                    acc += part
                else:
                    _kernels.phase_sum(sv, wf, times, acc)
        lo = height
        cur = pref * acc
        if prev is not None:
            deltas = np.abs(cur - prev)
            if early_stop and np.all(deltas < tol):
                prev = cur
                break
        prev = cur.copy()
    converged = deltas < tol
    return prev, deltas, converged, height


def _bands(times):
    """Group indices of nonzero times by sign, with max|t| <= 2 min|t| per group."""
    out = []
    for sign in (1.0, -1.0):
        idx = np.nonzero(np.sign(times) == sign)[0]
        if idx.size == 0:
            continue
        idx = idx[np.argsort(np.abs(times[idx]))]
        start = 0
        for k in range(1, idx.size + 1):
            if k == idx.size or abs(times[idx[k]]) > 2.0 * abs(times[idx[start]]):
                out.append((sign, np.sort(idx[start:k])))
                start = k
    return out


def _line_sigma(F, cfg, sign, tmax):
    if cfg.sigma is not None:
        return float(cfg.sigma)
    if sign > 0:
        return F.sigma0 + min(0.5, 0.5 / tmax)
    return F.sigma0 + 0.5


def bromwich_invert(F: AnalyticMap, times, cfg=None):
    """Invert F along the vertical line Re q = sigma at each requested time.

    At t = 0 the right limit is returned, extrapolated from
    t in RIGHT_LIMIT_TIMES (see ``right_limit``).
    """
    cfg = cfg or InversionConfig()
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if not np.all(np.isfinite(times)):
        raise DomainError("times must be finite")
    if cfg.sigma is not None and cfg.sigma < F.sigma0:
        raise DomainError(f"line abscissa {cfg.sigma} lies left of sigma0 = {F.sigma0}")

    values = np.zeros(times.size, complex)
    converged = np.zeros(times.size, bool)
    deltas = np.zeros(times.size)
    sigmas = np.zeros(times.size)
    achieved = 0.0

    for sign, idx in _bands(times):
        t = times[idx]
        tmax = float(np.max(np.abs(t)))
        sigma = _line_sigma(F, cfg, sign, tmax)
        v, d, c, h = _invert_on_line(F, t, sigma, cfg.heights, cfg)
        values[idx], deltas[idx], converged[idx], sigmas[idx] = v, d, c, sigma
        achieved = max(achieved, h)

    zero = np.nonzero(times == 0)[0]
    if zero.size:
        lim = right_limit(F, cfg)
        values[zero] = lim["value"]
        deltas[zero] = lim["delta"]
        converged[zero] = lim["converged"]
        sigmas[zero] = np.nan
        achieved = max(achieved, lim["height"])

    return InversionResult(times, values, converged, deltas, achieved, sigmas)


def _invert_on_line(F, t, sigma, heights, cfg):
    d_min = 0.5 * max(sigma - F.sigma0, 1e-12)

    def g(s):
        return F.evaluate_closed(sigma + 1j * s)

    pref = np.exp(sigma * t) / (2.0 * math.pi)
    return line_integral(
        g, t, heights, d_min=d_min, prefactor=pref, real_signal=F.real_signal,
        order=cfg.quadrature.panel_order, growth=cfg.panel_growth,
        tol=cfg.convergence_tol, early_stop=cfg.early_stop,
    )


def aitken_limit(x1, x2, x3):
    """Limit of x1, x2, x3 assuming geometric convergence; None if not geometric."""
    d1 = x2 - x1
    d2 = x3 - x2
    if d1 == 0 or d2 == 0:
        return x3
    ratio = d2 / d1
    if not (0.0 < ratio.real < 0.95) or abs(ratio.imag) > 0.1 * abs(ratio.real):
        return None
    return x3 - d2 * d2 / (d2 - d1)


def right_limit(F, cfg=None):
    """f(0+) by Aitken extrapolation over t = 1e-2, 1e-3, 1e-4.

    Falls back to the value at the smallest time when the three values are
    not geometrically convergent.  Heights are extended by doubling up to
    ``cfg.limit_height`` since small times converge slowly in n.
    """
    cfg = cfg or InversionConfig()
    heights = list(cfg.heights)
    while heights[-1] * 2 <= cfg.limit_height:
        heights.append(heights[-1] * 2)
    t = np.asarray(RIGHT_LIMIT_TIMES)
    sigma = _line_sigma(F, cfg, 1.0, float(t.max()))
    vals, deltas, conv, height = _invert_on_line(F, t, sigma, heights, cfg)
    if F.real_signal:
        vals = vals.real
    est = aitken_limit(*vals)
    extrapolated = est is not None
    if est is None:
        est = vals[-1]
    return {
        "value": complex(est),
        "samples": dict(zip(RIGHT_LIMIT_TIMES, vals)),
        "delta": float(np.max(deltas)),
        "converged": bool(np.all(conv)),
        "extrapolated": extrapolated,
        "height": height,
    }


# ---------------------------------------------------------------------------
# causality


def arc_decay_integral(n, t):
    """int_{-pi/2}^{pi/2} exp(-n |t| cos phi) dphi."""
    x = n * abs(t)
    if x == 0:
        return math.pi
    # 2 int_0^{pi/2} exp(-x sin u) du, graded toward u = 0 where the mass is
    return 2.0 * integrate_real(lambda u: np.exp(-x * np.sin(u)), 0.0, math.pi / 2,
                                QuadratureConfig(abs_tol=1e-14, rel_tol=1e-12), singular="left")


def arc_sup(F, n, samples=257):
    """max |F| sampled on the arc sigma0 + n e^{i phi}, open angle interval."""
    phi = -math.pi / 2 + (np.arange(samples) + 0.5) * math.pi / samples
    return float(np.max(np.abs(F(F.sigma0 + n * np.exp(1j * phi)))))


def causality_check(F, negative_times, cfg=None, tol=1e-3):
    """Evaluate the Bromwich integral at t < 0, where it must vanish."""
    cfg = cfg or InversionConfig()
    t = np.asarray(negative_times, dtype=float)
    if t.size == 0 or np.any(t >= 0):
        raise DomainError("causality_check needs strictly negative times")
    res = bromwich_invert(F, t, cfg)
    mags = np.abs(res.values)
    n = res.achieved_height
    evidence = []
    for tk, v, d, c in zip(t, res.values, res.deltas, res.converged):
        evidence.append((f"f({tk:g})", complex(v)))
        evidence.append((f"delta({tk:g})", float(d)))
    sup_f = arc_sup(F, n)
    arc = {}
    for tk in t:
        nb = n * arc_decay_integral(n, tk)
        arc[float(tk)] = {"n_B": nb, "bound": sup_f * nb, "n_abs_t_B": nb * abs(tk)}
        evidence.append((f"arc bound sup|F| n B(n,{tk:g})", sup_f * nb))

    if not res.all_converged:
        verdict = "inconclusive"
    elif float(np.max(mags)) < tol:
        verdict = "pass"
    else:
        verdict = "fail"
    return CheckReport(
        "causality",
        verdict,
        evidence,
        {"value_tol": tol, "convergence_tol": cfg.convergence_tol},
        notes=(f"height {n:g}; the arc integral of exp(-q|t|)F over C_n is bounded by "
               f"sup|F| on C_n (= {sup_f:.3g}) times n B(n,|t|), which closes the contour"),
        data={"max_abs": float(np.max(mags)), "values": res.values, "deltas": res.deltas,
              "converged": res.converged, "arc_sup": sup_f, "arc": arc, "height": n},
    )
