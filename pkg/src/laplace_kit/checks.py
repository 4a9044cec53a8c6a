"""Numerical tests of sufficient conditions for F to be a Laplace transform.

A finite set of probes can never certify a limit.  Every check therefore
returns a CheckReport whose verdict summarises falsifiable evidence: "pass"
means the evidence is consistent with the condition under the stated
decision rule, "fail" means it contradicts it, and anything in between is
"inconclusive".
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    AnalyticMap,
    ConvergenceError,
    DomainError,
    QuadratureConfig,
    integrate_real,
)
from .report import CheckReport
from .transform import InversionConfig, aitken_limit, arc_decay_integral, right_limit

THEOREM1_RADII = tuple(10.0**k for k in range(1, 13))
# slow decays such as |p|^-0.15 need many decades to show up
LEMMA1_RADII = tuple(10.0**k for k in range(1, 17))
TRACE_OFFSETS = (1e-2, 1e-3, 1e-4)
TRACE_CAUCHY_TOL = 1e-6
ZERO_TOL = 1e-2
# I(sigma0 + d) growing by this factor per decade of d signals a blow-up
BOUNDARY_GROWTH = 2.0

SEQUENCE_NOTE = (
    "decay is probed as the sup of |F| over arcs sigma0 + n e^{i phi}; a decay "
    "along a single sequence p_n would be a weaker condition"
)


@dataclass(frozen=True)
class DecayProfile:
    radii: np.ndarray
    arc_maxima: np.ndarray
    fitted_exponent: float | None

    @classmethod
    def from_samples(cls, radii, maxima):
        order = np.argsort(radii)
        radii = np.asarray(radii, float)[order]
        maxima = np.asarray(maxima, float)[order]
        slope = None
        if np.all(maxima > 0) and np.all(np.isfinite(maxima)):
            slope = float(np.polyfit(np.log(radii), np.log(maxima), 1)[0])
        return cls(radii, maxima, slope)


def _arc_points(F, n, samples):
    phi = -math.pi / 2 + (np.arange(samples) + 0.5) * math.pi / samples
    return F.sigma0 + n * np.exp(1j * phi)


def decay_profile(F, radii, arc_samples=257, weight_power=0.0):
    """Max of |p|^weight_power |F(p)| on each arc."""
    maxima = []
    for n in radii:
        p = _arc_points(F, n, arc_samples)
        with np.errstate(over="ignore", invalid="ignore"):
            vals = np.abs(F(p)) * np.abs(p) ** weight_power
        maxima.append(float(np.max(vals)) if np.all(np.isfinite(vals)) else math.inf)
    return DecayProfile.from_samples(radii, maxima)


def _decay_verdict(profile, scale):
    """pass / fail / inconclusive for 'arc maxima tend to 0'."""
    m = profile.arc_maxima
    first, last = m[0], m[-1]
    if np.all(m == 0):
        return "pass", "identically zero on every arc"
    if not np.isfinite(last) or last >= 0.1 * first:
        return "fail", "arc maxima do not decay by a factor 10 across the radii"
    threshold = 1e-2 * (scale if scale > 0 else first)
    slope_ok = profile.fitted_exponent is not None and profile.fitted_exponent < 0
    if slope_ok and last < threshold:
        return "pass", "arc maxima consistent with a zero limit"
    return "inconclusive", "arc maxima decay but stay above the absolute threshold"


def _trace_probe(F, samples):
    """Cauchy behaviour of F(sigma0 + delta + i s) as delta -> 0."""
    half = max(1, samples // 2)
    s = np.geomspace(1e-2, 1e2, half)
    s = np.concatenate([-s[::-1], s])
    vals = []
    with np.errstate(all="ignore"):
        for d in TRACE_OFFSETS:
            vals.append(F(F.sigma0 + d + 1j * s))
    vals = np.asarray(vals)
    d1 = np.abs(vals[1] - vals[0])
    d2 = np.abs(vals[2] - vals[1])
    finite = np.all(np.isfinite(vals), axis=0)
    ok = finite & ((d2 <= TRACE_CAUCHY_TOL) | (d2 <= 0.5 * d1))
    return s, d1, d2, ok


def check_theorem1(F: AnalyticMap, radii=THEOREM1_RADII, arc_samples=257, boundary_samples=32):
    """Arc decay of F and existence of its boundary trace."""
    radii = np.asarray(radii, float)
    if radii.size < 3 or arc_samples < 16 or boundary_samples < 16:
        raise DomainError("need >= 3 radii and >= 16 samples per probe set")
    try:
        prof = decay_profile(F, radii, arc_samples)
        scale = float(np.abs(F(F.sigma0 + 1.0)))
        s, d1, d2, ok = _trace_probe(F, boundary_samples)
    except (ArithmeticError, ValueError, FloatingPointError) as exc:
        return CheckReport("theorem1", "inconclusive", notes=f"evaluation failed: {exc}")

    arc_verdict, arc_note = _decay_verdict(prof, scale)
    trace_ok = bool(np.all(ok))
    if arc_verdict == "fail" or (arc_verdict == "pass" and not trace_ok):
        verdict = "fail"
    else:
        verdict = arc_verdict
    evidence = [(f"arc max |F|, n={n:g}", m) for n, m in zip(prof.radii, prof.arc_maxima)]
    evidence += [(f"trace step |F(d2)-F(d3)| at s={sk:.3g}", v) for sk, v in zip(s, d2)]
    notes = f"{arc_note}; boundary trace {'consistent' if trace_ok else 'NOT consistent'} " \
            f"at {int(ok.sum())}/{ok.size} probes; {SEQUENCE_NOTE}"
    return CheckReport(
        "theorem1",
        verdict,
        evidence,
        {"relative_decay": 0.1, "absolute": 1e-2 * scale, "trace_offsets": TRACE_OFFSETS,
         "trace_cauchy_tol": TRACE_CAUCHY_TOL},
        notes,
        data={"profile": prof, "fitted_exponent": prof.fitted_exponent, "arc_verdict": arc_verdict,
              "trace_ok": trace_ok, "scale": scale},
    )


def check_lemma1_decay(F: AnalyticMap, b, radii=LEMMA1_RADII, cfg=None, arc_samples=257):
    """|p|^b |F| -> 0 on arcs, cross-checked against the inverse near t = 0+."""
    if not b > 1:
        raise DomainError("Lemma 1 needs b > 1")
    radii = np.asarray(radii, float)
    prof = decay_profile(F, radii, arc_samples, weight_power=b)
    p1 = F.sigma0 + 1.0
    scale = float(abs(p1) ** b * np.abs(F(p1)))
    decay, note = _decay_verdict(prof, scale)

    lim = right_limit(F, cfg or InversionConfig())
    f0 = lim["value"]
    evidence = [(f"arc max |p|^b|F|, n={n:g}", m) for n, m in zip(prof.radii, prof.arc_maxima)]
    evidence += [(f"f({t:g})", complex(v)) for t, v in lim["samples"].items()]
    evidence.append(("f(0+) extrapolated", f0))

    if decay == "pass":
        if not lim["converged"]:
            verdict = "inconclusive"
            note += "; prediction f(0)=0 made but the inverse near 0+ did not converge"
        elif abs(f0) < ZERO_TOL:
            verdict = "pass"
            note += "; prediction f(0)=0 confirmed by the inverse near 0+"
        else:
            verdict = "inconclusive"
            note += "; prediction f(0)=0 contradicted by the inverse near 0+"
    else:
        verdict = decay
        note += f"; no prediction made, inverse gives f(0+) ~ {f0.real:.4g}"
    return CheckReport(
        "lemma1",
        verdict,
        evidence,
        {"b": b, "relative_decay": 0.1, "absolute": 1e-2 * scale, "zero_tol": ZERO_TOL},
        note,
        data={"profile": prof, "f0": f0, "f0_converged": lim["converged"], "prediction_made": decay == "pass",
              "decay_verdict": decay},
    )


@dataclass(frozen=True)
class LineMean:
    """(1/2pi) int_{-H}^{H} F(is) ds at doubling heights H."""

    value: complex
    heights: tuple
    values: tuple
    extrapolated: complex | None


def lemma1_second_proof(F: AnalyticMap, height=1e8, doublings=4, cfg=None):
    """f(0) as the mean of the boundary trace over the imaginary axis."""
    if F.sigma0 != 0:
        raise DomainError("the line-mean route needs sigma0 = 0")
    cfg = cfg or QuadratureConfig(abs_tol=1e-12, rel_tol=1e-10)
    heights = [height / 2.0**k for k in range(doublings, -1, -1)]

    def piece(lo, hi, sign):
        def g(s):
            return F.trace(sign * s)
        pts = np.geomspace(max(lo, 1e-8), hi, 64) if lo == 0 else None
        return complex(integrate_real(g, lo, hi, cfg, singular="left" if lo == 0 else False, breakpoints=pts))

    total = 0j
    lo = 0.0
    values = []
    for h in heights:
        upper = piece(lo, h, 1.0)
        part = 2.0 * upper.real if F.real_signal else upper + piece(lo, h, -1.0)
        total += part
        lo = h
        values.append(total / (2.0 * math.pi))
    ext = aitken_limit(*values[-3:]) if len(values) >= 3 else None
    return LineMean(values[-1], tuple(heights), tuple(values), ext)


def line_power_integral(g, ell, *, tail_tol=0.01, start=8.0, max_window=2.0**40,
                        singular_zero=False, symmetric=False, cfg=None):
    """int_{-W}^{W} |g(s)|^ell ds with W doubled until the increment is small.

    Returns a dict with the value, a power-law tail estimate, the window and
    a divergence flag.
    """
    cfg = cfg or QuadratureConfig(abs_tol=1e-13, rel_tol=1e-10, max_subdivisions=2**16)

    def power(sign):
        def h(s):
            with np.errstate(over="ignore", invalid="ignore"):
                return np.abs(g(sign * s)) ** ell
        return h

    @np.errstate(over="ignore", invalid="ignore")
    def span(lo, hi):
        sides = (1.0,) if symmetric else (1.0, -1.0)
        acc = 0.0
        for sgn in sides:
            if lo == 0:
                pts = np.geomspace(1e-8, hi, 40)
                acc += integrate_real(power(sgn), 0.0, hi, cfg, singular="left" if singular_zero else None,
                                      breakpoints=pts)
            else:
                acc += integrate_real(power(sgn), lo, hi, cfg)
        return acc * (2.0 if symmetric else 1.0)

    try:
        total = span(0.0, start)
    except ConvergenceError:
        return {"value": math.inf, "tail": math.inf, "window": start, "diverged": True,
                "increments": []}
    w = start
    incs = []
    diverged = False
    while True:
        try:
            inc = span(w, 2 * w)
        except ConvergenceError:
            diverged = True
            break
        w *= 2
        total += inc
        incs.append(inc)
        if not math.isfinite(total):
            diverged = True
            break
        if inc == 0 and total == 0:
            break
        # a small increment only counts once the increments have started to fall
        if inc <= tail_tol * total and len(incs) >= 2 and inc < 0.99 * incs[-2]:
            break
        if len(incs) >= 3 and incs[-3] > 0 and incs[-2] > 0:
            # a settled doubling ratio means a power-law tail we can sum
            r1, r2 = incs[-2] / incs[-3], incs[-1] / incs[-2]
            if 0 < r2 < 0.99 and abs(r2 - r1) < 1e-6 * r2:
                break
        if len(incs) >= 4 and all(incs[-k] >= 0.999 * incs[-k - 1] for k in range(1, 4)):
            diverged = True
            break
        if w > max_window:
            diverged = True
            break
    tail = 0.0
    if not diverged and len(incs) >= 2 and incs[-2] > 0:
        r = incs[-1] / incs[-2]
        if 0 < r < 1:
            tail = incs[-1] * r / (1 - r)
    if diverged:
        return {"value": math.inf, "tail": math.inf, "window": w, "diverged": True, "increments": incs}
    return {"value": total + tail, "raw": total, "tail": tail, "window": w, "diverged": False,
            "increments": incs}


def _I(F, sigma, tail_tol):
    boundary = sigma <= F.sigma0
    if boundary:
        def g(s):
            return F.trace(s)
    else:
        def g(s):
            return F(sigma + 1j * s)
    return line_power_integral(g, 2.0, tail_tol=tail_tol, singular_zero=boundary,
                               symmetric=F.real_signal)


def check_paley_wiener(F: AnalyticMap, sigma_grid=(0.0, 0.25, 0.5, 1.0, 2.0), s_window=8.0, tail_tol=0.01):
    """sup over sigma >= sigma0 of int |F(sigma + is)|^2 ds is finite."""
    grid = sorted(float(x) for x in sigma_grid)
    if len(grid) < 3 or grid[0] != F.sigma0:
        raise DomainError("the sigma grid needs >= 3 points starting at sigma0")
    profile = {}
    evidence = []
    for sg in grid:
        res = _I(F, sg, tail_tol)
        profile[sg] = res["value"]
        evidence.append((f"I({sg:g})", res["value"]))
    approach = {}
    for d in TRACE_OFFSETS:
        res = _I(F, F.sigma0 + d, tail_tol)
        approach[d] = res["value"]
        evidence.append((f"I(sigma0+{d:g})", res["value"]))

    vals = np.array([profile[s] for s in grid])
    near = np.array([approach[d] for d in TRACE_OFFSETS])
    notes = []
    if not np.all(np.isfinite(vals)) or not np.all(np.isfinite(near)):
        verdict = "fail"
        notes.append("divergent line integral: no window makes the tail negligible")
    elif near[-1] > BOUNDARY_GROWTH * near[-2] + 1e-12 and near[-2] > BOUNDARY_GROWTH * near[-3]:
        verdict = "fail"
        notes.append("line integrals grow without bound as sigma -> sigma0")
    elif np.argmax(vals) == 0 or vals[0] >= vals.max() * (1 - 1e-6):
        verdict = "pass"
        notes.append("finite profile with its sup at the boundary")
    else:
        verdict = "fail"
        notes.append("sup of the profile is not attained at the boundary")
    with np.errstate(invalid="ignore"):
        steps = np.diff(vals)
    monotone = bool(np.all((steps <= 1e-9 * np.maximum(1.0, vals[:-1])) | np.isinf(vals[:-1])))
    return CheckReport(
        "paley-wiener",
        verdict,
        evidence,
        {"tail_fraction": tail_tol, "start_window": s_window, "boundary_growth": BOUNDARY_GROWTH},
        "; ".join(notes),
        data={"profile": profile, "approach": approach, "non_increasing": monotone,
              "sup": float(np.max(vals))},
    )


def parseval_identity(entry, sigma, tail_tol=1e-9):
    """(lhs, rhs) = (int |F(sigma+is)|^2 ds, 2 pi int_0^inf |e^{-sigma t} f(t)|^2 dt)."""
    if entry.f is None:
        raise DomainError(f"{entry.name} has no time-domain closed form")
    F = entry.F
    lhs = _I(F, sigma, tail_tol)["value"]
    rate = 2 * (sigma - entry.growth)
    cfg = QuadratureConfig(abs_tol=1e-15, rel_tol=1e-12, max_subdivisions=2**16)
    try:
        rhs = 2 * math.pi * integrate_real(
            lambda t: np.abs(np.exp(-sigma * t) * entry.f(t)) ** 2, 0.0, math.inf, cfg,
            decay_rate=rate if rate > 0 else None, breakpoints=np.geomspace(1e-6, 1e12, 90),
        )
    except ConvergenceError:
        rhs = math.inf
    return float(lhs), float(rhs)


def _conjugate(ell):
    return math.inf if ell == 1 else ell / (ell - 1)


def boundary_inverse(F_boundary, height=2.0**14, period=400.0):
    """f(t) = (1/2pi) int F(is) e^{ist} ds on a uniform grid by FFT.

    Midpoint sampling of s avoids s = 0; the grid covers one period
    [-period/2, period/2).  Returns (t, f).
    """
    ds = 2 * math.pi / period
    n = 1 << int(math.ceil(math.log2(2 * height / ds)))
    h = n * ds / 2
    s = -h + (np.arange(n) + 0.5) * ds
    vals = np.asarray(F_boundary(s), dtype=complex)
    j = np.arange(n)
    t = np.where(j < n // 2, j, j - n) * (period / n)
    f = np.exp(1j * s[0] * t) * np.fft.ifft(vals) * n * ds / (2 * math.pi)
    order = np.argsort(t)
    return t[order], f[order]


def check_hausdorff_young(F_boundary, ell, *, height=2.0**14, period=400.0, symmetric=False):
    """||f||_{l'} <= (2pi)^{(l-1)/l} ||F||_l for the boundary function F(is)."""
    if ell > 2:
        return CheckReport(
            "hausdorff-young", "inconclusive", [("ell", ell)], {"ell_max": 2},
            "ell > 2: f may be a tempered distribution; not represented",
            data={"classification": "f may be a tempered distribution"},
        )
    if ell < 1:
        raise DomainError("ell must lie in [1, 2]")
    norm_run = line_power_integral(F_boundary, ell, tail_tol=1e-7, singular_zero=True, symmetric=symmetric)
    conj = _conjugate(ell)
    classification = "f is a function"
    if norm_run["diverged"]:
        return CheckReport(
            "hausdorff-young", "fail",
            [(f"int |F|^{ell:g} up to |s|={norm_run['window']:g}", math.inf)]
            + [(f"increment {k}", v) for k, v in enumerate(norm_run["increments"])],
            {"tail_fraction": 1e-7},
            f"F is not in L_{ell:g}: the boundary norm diverges",
            data={"classification": classification, "F_norm": math.inf, "inequality_holds": True,
                  "member": False},
        )
    F_norm = norm_run["value"] ** (1 / ell)
    t, f = boundary_inverse(F_boundary, height, period)
    dt = t[1] - t[0]
    if math.isinf(conj):
        f_norm = float(np.max(np.abs(f)))
    else:
        f_norm = float((np.sum(np.abs(f) ** conj) * dt) ** (1 / conj))
    bound = (2 * math.pi) ** ((ell - 1) / ell) * F_norm
    holds = f_norm <= bound
    data = {"classification": classification, "F_norm": F_norm, "f_norm": f_norm, "bound": bound,
            "inequality_holds": holds, "member": True, "conjugate": conj, "height": height,
            "window": (float(t[0]), float(t[-1]))}
    if ell == 2:
        data["parseval_rhs"] = F_norm / math.sqrt(2 * math.pi)
    return CheckReport(
        "hausdorff-young",
        "pass" if holds else "fail",
        [(f"||F||_{ell:g}", F_norm), (f"||f||_{conj:g}", f_norm), ("bound", bound)],
        {"tail_fraction": 1e-7, "height": height, "period": period},
        f"{classification}; time norm over one period of the FFT grid",
        data=data,
    )


def nontransform_witness(F: AnalyticMap, ell, sigmas=(0.5, 0.2, 0.1), growth_factor=1e3):
    """Compare F(sigma) with the Holder bound c / (l' sigma)^{1/l'} as sigma -> 0."""
    if ell < 1:
        raise DomainError("ell must be >= 1")
    sig = np.asarray(sigmas, float)
    if sig.size < 2 or np.any(sig <= 0) or np.any(np.diff(sig) >= 0):
        raise DomainError("sigmas must be positive and strictly decreasing")
    conj = _conjugate(ell)
    with np.errstate(over="ignore"):
        vals = np.abs(F(sig + 0j))
    factor = np.ones_like(sig) if math.isinf(conj) else (conj * sig) ** (1 / conj)
    with np.errstate(invalid="ignore", over="ignore"):
        ratio = vals * factor
    ratio = np.where(np.isnan(ratio), np.inf, ratio)
    increasing = bool(np.all(np.diff(ratio) > 0) or (np.all(np.isinf(ratio[1:])) and ratio[1] > ratio[0]))
    if increasing and ratio[-1] >= growth_factor * max(ratio[0], 1.0):
        verdict = "pass"
        note = "ratio explodes: the Holder bound fails for every constant c"
    elif ratio[-1] <= ratio[0]:
        verdict = "fail"
        note = "ratio stays bounded: no witness"
    else:
        verdict = "inconclusive"
        note = "ratio grows but not clearly without bound"
    return CheckReport(
        "witness",
        verdict,
        [(f"R({s:g})", r) for s, r in zip(sig, ratio)],
        {"growth_factor": growth_factor, "ell": ell, "conjugate": conj},
        note,
        data={"ratios": ratio, "witness": verdict == "pass"},
    )


def sine_lower_bound_check(points=10_000):
    """sin(phi) >= 2 phi / pi on a grid over [0, pi/2]."""
    phi = np.linspace(0.0, math.pi / 2, points)
    gap = np.sin(phi) - 2 * phi / math.pi
    worst = float(gap.min())
    ok = worst >= -1e-15
    return CheckReport("sine-bound", "pass" if ok else "fail", [("min(sin phi - 2 phi/pi)", worst)],
                       {"points": points, "slack": 1e-15}, data={"min_gap": worst})


def arc_estimate_check(ns=(10.0, 1e2, 1e3), ts=(0.5, 1.0, 2.0)):
    """n |t| B(n, t) <= pi with B the arc integral of exp(-n|t| cos phi)."""
    rows = []
    for n in ns:
        for t in ts:
            b = arc_decay_integral(n, t)
            rows.append(((n, t), b, n * abs(t) * b))
    ok = all(v <= math.pi for _, _, v in rows)
    return CheckReport(
        "arc-estimate", "pass" if ok else "fail",
        [(f"n|t|B at n={n:g}, t={t:g}", v) for (n, t), _, v in rows],
        {"bound": math.pi},
        data={"B": {k: b for k, b, _ in rows}, "scaled": {k: v for k, _, v in rows}},
    )
