"""laplace-kit command line.

Exit codes: 0 success or check pass, 1 check fail, 2 usage or domain error,
3 numerical non-convergence, 4 inconclusive.

Tables are CSV with headers ``p_re,p_im,F_re,F_im`` (transform) and
``t,f_re,f_im,converged`` (invert, solve-hypersingular), or JSON lists of
row objects with the same keys.  Check reports are always JSON.
"""
from __future__ import annotations

import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass, fields, replace

import click
import numpy as np

from . import catalog
from .checks import (
    check_hausdorff_young,
    check_lemma1_decay,
    check_paley_wiener,
    check_theorem1,
    nontransform_witness,
)
from .core import ConvergenceError, DomainError, GridSignal, QuadratureConfig
from .hypersingular import (
    HypersingularProblem,
    solve,
    verification_config,
    verification_grid,
    verify_in_laplace_domain,
)
from .transform import InversionConfig, bromwich_invert, forward_transform

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONCONVERGENCE, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4
VERDICT_EXIT = {"pass": EXIT_OK, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}
CONFIG_ENV = "LAPLACE_KIT_CONFIG"

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX = [
    re.compile(rf"^(?P<re>[+-]?{_NUM})(?P<im>[+-](?:{_NUM})?)i$"),
    re.compile(rf"^(?P<re>[+-]?{_NUM})$"),
    re.compile(rf"^(?P<im>[+-]?(?:{_NUM})?)i$"),
]


def parse_complex(text):
    """Parse ``a``, ``ai``, ``a+bi`` or ``a-bi``; a bare ``i`` means b = 1."""
    s = text.strip().replace(" ", "")
    for pat in _COMPLEX:
        m = pat.match(s)
        if m:
            d = m.groupdict()
            im = d.get("im")
            if im in ("", "+", "-"):
                im = im + "1"
            return complex(float(d.get("re") or 0.0), float(im or 0.0))
    raise ValueError(f"not a complex literal: {text!r}")


def parse_range(text):
    """``t0:t1:steps`` -> steps evenly spaced values from t0 to t1."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"range must look like t0:t1:steps, got {text!r}")
    t0, t1 = float(parts[0]), float(parts[1])
    steps = int(parts[2])
    if steps < 1 or (steps == 1 and t0 != t1) or t1 < t0:
        raise ValueError(f"bad range {text!r}")
    return np.linspace(t0, t1, steps)


@dataclass(frozen=True)
class RunConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 2**14
    panel_order: int = 16
    sigma: float | None = None
    convergence_tol: float = 1e-5
    early_stop: bool = False
    limit_height: float = 50.0 * 2.0**20
    panel_growth: float = 0.25
    heights: tuple | None = None
    format: str = "csv"
    output: str | None = None

    @classmethod
    def load(cls, path):
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise DomainError(f"unknown config keys: {', '.join(unknown)}")
        for k, v in raw.items():
            if isinstance(v, dict):
                raise DomainError(f"config must be flat; {k!r} is a table")
        if "heights" in raw:
            raw["heights"] = tuple(float(h) for h in raw["heights"])
        return cls(**raw)

    def quadrature(self):
        return QuadratureConfig(self.abs_tol, self.rel_tol, self.max_subdivisions, self.panel_order)

    def inversion(self):
        kw = dict(sigma=self.sigma, convergence_tol=self.convergence_tol, quadrature=self.quadrature(),
                  early_stop=self.early_stop, limit_height=self.limit_height,
                  panel_growth=self.panel_growth)
        if self.heights is not None:
            kw["heights"] = self.heights
        return InversionConfig(**kw)


def _num(x):
    return repr(float(x))


def _emit(ctx, rows, header, trailer=None):
    cfg: RunConfig = ctx.obj
    if cfg.format == "json":
        doc = [dict(zip(header, r)) for r in rows]
        text = json.dumps({"rows": doc, "report": trailer} if trailer is not None else doc,
                          indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_num(v) if isinstance(v, (float, np.floating)) else v for v in r])
        text = buf.getvalue()
        if trailer is not None:
            text += "\n" + json.dumps(trailer, indent=2, sort_keys=True) + "\n"
    _write(cfg, text)


def _write(cfg, text):
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _fail(code, message):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _entry(name):
    try:
        return catalog.lookup(name)
    except KeyError as exc:
        _fail(EXIT_USAGE, exc.args[0])


def _read_signal(path):
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or not {"t", "f"} <= set(reader.fieldnames):
                raise DomainError("signal file needs columns t,f")
            rows = [(float(r["t"]), float(r["f"])) for r in reader]
    except OSError as exc:
        raise DomainError(str(exc)) from None
    if len(rows) < 2:
        raise DomainError("signal file needs at least two rows")
    t = np.array([r[0] for r in rows])
    dt = (t[-1] - t[0]) / (len(t) - 1)
    if dt <= 0 or not np.allclose(np.diff(t), dt, rtol=1e-6):
        raise DomainError("signal times must be uniformly spaced and increasing")
    return GridSignal(float(t[0]), float(dt), np.array([r[1] for r in rows]))


@click.group()
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help=f"Flat TOML config file (default: ${CONFIG_ENV}).")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None, help="Table format.")
@click.option("--output", type=click.Path(dir_okay=False), default=None, help="Write to this file.")
@click.pass_context
def cli(ctx, config_path, fmt, output):
    """Numerical Laplace transforms, Bromwich inversion and transform criteria."""
    path = config_path or os.environ.get(CONFIG_ENV) or None
    try:
        cfg = RunConfig.load(path) if path else RunConfig()
    except (OSError, tomllib.TOMLDecodeError, DomainError, TypeError, ValueError) as exc:
        _fail(EXIT_USAGE, f"bad config: {exc}")
    if fmt:
        cfg = replace(cfg, format=fmt)
    if output:
        cfg = replace(cfg, output=output)
    if cfg.format not in ("csv", "json"):
        _fail(EXIT_USAGE, f"format must be csv or json, got {cfg.format!r}")
    ctx.obj = cfg


@cli.command()
@click.option("--function", "name", default=None, help="Catalog name.")
@click.option("--signal", "signal_path", type=click.Path(dir_okay=False), default=None,
              help="CSV file with columns t,f on a uniform grid.")
@click.option("--points", multiple=True, required=True, help="Complex points, e.g. 1, 2i, 1+2.5i.")
@click.pass_context
def transform(ctx, name, signal_path, points):
    """Forward transform F(p) = int_0^inf e^{-pt} f(t) dt."""
    if (name is None) == (signal_path is None):
        _fail(EXIT_USAGE, "give exactly one of --function and --signal")
    try:
        ps = [parse_complex(x) for chunk in points for x in chunk.split(",") if x.strip()]
    except ValueError as exc:
        _fail(EXIT_USAGE, str(exc))
    cfg: RunConfig = ctx.obj
    rows = []
    try:
        if signal_path:
            sig = _read_signal(signal_path)
            vals = [forward_transform(sig, p) for p in ps]
        else:
            entry = _entry(name)
            if entry.is_pair:
                vals = [forward_transform(entry.f, p, cfg.quadrature(), growth=entry.growth) for p in ps]
            else:
                vals = [complex(entry.F(p)) for p in ps]
    except (DomainError, ValueError, KeyError) as exc:
        _fail(EXIT_USAGE, str(exc))
    except ConvergenceError as exc:
        _fail(EXIT_NONCONVERGENCE, str(exc))
    for p, v in zip(ps, vals):
        rows.append((p.real, p.imag, v.real, v.imag))
    _emit(ctx, rows, ("p_re", "p_im", "F_re", "F_im"))


def _time_rows(res):
    return [(float(t), v.real, v.imag, "true" if c else "false")
            for t, v, c in zip(res.times, res.values, res.converged)]


@cli.command()
@click.option("--transform", "name", required=True, help="Catalog name.")
@click.option("--sigma", type=float, default=None, help="Line abscissa (default: automatic).")
@click.option("--times", "times_spec", required=True, help="t0:t1:steps")
@click.pass_context
def invert(ctx, name, sigma, times_spec):
    """Bromwich inversion f(t) at the requested times."""
    entry = _entry(name)
    cfg: RunConfig = ctx.obj
    try:
        times = parse_range(times_spec)
        icfg = cfg.inversion()
        if sigma is not None:
            icfg = replace(icfg, sigma=sigma)
        res = bromwich_invert(entry.F, times, icfg)
    except (DomainError, ValueError) as exc:
        _fail(EXIT_USAGE, str(exc))
    _emit(ctx, _time_rows(res), ("t", "f_re", "f_im", "converged"))
    if not res.all_converged:
        _fail(EXIT_NONCONVERGENCE, "inversion did not converge at every time")


@cli.command()
@click.argument("check_name", type=click.Choice(["theorem1", "lemma1", "paley-wiener", "hausdorff-young", "witness"]))
@click.option("--transform", "name", required=True, help="Catalog name.")
@click.option("--b", "b", type=float, default=1.5, show_default=True, help="Decay exponent for lemma1.")
@click.option("--ell", type=float, default=2.0, show_default=True,
              help="Norm index for hausdorff-young and witness.")
@click.pass_context
def check(ctx, check_name, name, b, ell):
    """Run a hypothesis check and print its JSON report."""
    entry = _entry(name)
    cfg: RunConfig = ctx.obj
    F = entry.F
    try:
        if check_name == "theorem1":
            rep = check_theorem1(F)
        elif check_name == "lemma1":
            rep = check_lemma1_decay(F, b, cfg=cfg.inversion())
        elif check_name == "paley-wiener":
            rep = check_paley_wiener(F)
        elif check_name == "hausdorff-young":
            rep = check_hausdorff_young(F.trace, ell, symmetric=F.real_signal)
        else:
            rep = nontransform_witness(F, ell)
    except DomainError as exc:
        _fail(EXIT_USAGE, str(exc))
    except ConvergenceError as exc:
        _fail(EXIT_NONCONVERGENCE, str(exc))
    _write(cfg, rep.to_json() + "\n")
    sys.exit(VERDICT_EXIT[rep.verdict])


@cli.command("solve-hypersingular")
@click.option("--g", "name", required=True, help="Catalog name of the forcing term.")
@click.option("--times", "times_spec", required=True, help="t0:t1:steps")
@click.option("--verify", is_flag=True, help="Append the Laplace-domain residual report.")
@click.pass_context
def solve_hypersingular(ctx, name, times_spec, verify):
    """Solve h = g + int (t-s)^{-5/4} h(s) ds via L(h) = L(g)/(1 + c1 p^{1/4})."""
    entry = _entry(name)
    cfg: RunConfig = ctx.obj
    try:
        problem = HypersingularProblem(entry)
        times = parse_range(times_spec)
        res = solve(problem, times, cfg.inversion())
    except (DomainError, ValueError) as exc:
        _fail(EXIT_USAGE, str(exc))
    report = None
    if verify:
        dense = solve(problem, verification_grid(), verification_config())
        report = verify_in_laplace_domain(problem, dense)
    _emit(ctx, _time_rows(res), ("t", "f_re", "f_im", "converged"),
          report.to_dict() if report is not None else None)
    if not res.all_converged:
        _fail(EXIT_NONCONVERGENCE, "inversion did not converge at every time")
    if report is not None:
        sys.exit(VERDICT_EXIT[report.verdict])


def main(argv=None):
    cli.main(args=argv, prog_name="laplace-kit")


if __name__ == "__main__":
    main()
