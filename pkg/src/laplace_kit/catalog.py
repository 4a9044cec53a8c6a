"""Named transform pairs used by the checks, the CLI and the test suite."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import hyp1f1

from .core import AnalyticMap, principal_power

CLOSED_FORM = "closed-form pair"
TRANSFORM_ONLY = "transform-only"
COUNTEREXAMPLE = "counterexample"


@dataclass(frozen=True)
class CatalogEntry:
    """A transform F, optionally paired with its time function f.

    ``growth`` is the exponential order of f (|f(t)| <~ C e^{growth t}).
    ``expected_checks`` maps a check key to the verdict the checker must
    reproduce at its default settings.
    """

    name: str
    F: AnalyticMap
    provenance: str
    f: Callable | None = None
    growth: float = 0.0
    expected_checks: dict = field(default_factory=dict)
    description: str = ""

    @property
    def is_pair(self):
        return self.f is not None


def quarter_example_time(t):
    """Inverse of 1/((1+p) p^{1/4}): t^{1/4} M(1, 5/4, -t) / Gamma(5/4).

    Equals the convolution of e^{-t} with t^{-3/4}/Gamma(1/4).
    """
    t = np.asarray(t, dtype=float)
    pos = np.where(t > 0, t, 1.0)
    out = pos**0.25 * hyp1f1(1.0, 1.25, -pos) / math.gamma(1.25)
    return np.where(t > 0, out, 0.0)


def _exp_decay(p):
    return 1.0 / (p + 1.0)


def _t_exp(p):
    return 1.0 / (p + 1.0) ** 2


def _heaviside(p):
    return 1.0 / p


def _paper_2c(p):
    return 1.0 / ((1.0 + p) * principal_power(p, 0.25))


def _power_quarter(p):
    return 1.0 / principal_power(p, 0.25)


def _essential(p):
    with np.errstate(over="ignore"):
        return np.exp(1.0 / (p * p))


def _zero(p):
    return np.zeros_like(p)


def _build():
    def causal(fn):
        def f(t):
            t = np.asarray(t, dtype=float)
            return np.where(t >= 0, fn(np.maximum(t, 0.0)), 0.0)
        return f

    return (
        CatalogEntry(
            "exp-decay",
            AnalyticMap(_exp_decay, 0.0, "1/(p+1)", real_signal=True),
            CLOSED_FORM,
            causal(lambda t: np.exp(-t)),
            growth=-1.0,
            expected_checks={"theorem1": "pass", "lemma1@1.5": "fail", "paley-wiener": "pass"},
            description="e^{-t} <-> 1/(p+1)",
        ),
        CatalogEntry(
            "t-exp",
            AnalyticMap(_t_exp, 0.0, "1/(p+1)^2", real_signal=True),
            CLOSED_FORM,
            causal(lambda t: t * np.exp(-t)),
            growth=-0.5,
            expected_checks={"theorem1": "pass", "lemma1@1.5": "pass", "paley-wiener": "pass"},
            description="t e^{-t} <-> 1/(p+1)^2",
        ),
        CatalogEntry(
            "heaviside",
            AnalyticMap(_heaviside, 0.0, "1/p", real_signal=True),
            CLOSED_FORM,
            causal(np.ones_like),
            growth=0.0,
            expected_checks={"theorem1": "pass", "lemma1@1.5": "fail", "paley-wiener": "fail"},
            description="1 <-> 1/p",
        ),
        CatalogEntry(
            "paper-2c",
            AnalyticMap(_paper_2c, 0.0, "1/((1+p)p^(1/4))", real_signal=True),
            CLOSED_FORM,
            quarter_example_time,
            growth=0.0,
            expected_checks={"theorem1": "pass", "lemma1@1.25": "fail", "lemma1@1.1": "pass",
                             "paley-wiener": "pass"},
            description="t^{1/4} M(1,5/4,-t)/Gamma(5/4) <-> 1/((1+p) p^{1/4})",
        ),
        CatalogEntry(
            "power-quarter",
            AnalyticMap(_power_quarter, 0.0, "p^(-1/4)", real_signal=True),
            TRANSFORM_ONLY,
            expected_checks={"theorem1": "pass", "paley-wiener": "fail"},
            description="p^{-1/4}; boundary values are not square integrable",
        ),
        CatalogEntry(
            "counterexample-2e",
            AnalyticMap(_essential, 0.0, "exp(1/p^2)", real_signal=True),
            COUNTEREXAMPLE,
            expected_checks={"theorem1": "fail", "witness@1": "pass", "witness@2": "pass"},
            description="exp(1/p^2); tends to 1 at infinity",
        ),
        CatalogEntry(
            "zero",
            AnalyticMap(_zero, 0.0, "0", real_signal=True),
            CLOSED_FORM,
            causal(np.zeros_like),
            growth=0.0,
            expected_checks={"theorem1": "pass", "paley-wiener": "pass"},
            description="0 <-> 0",
        ),
    )


_ENTRIES = _build()
_BY_NAME = {e.name: e for e in _ENTRIES}


def catalog_entries():
    return _ENTRIES


def lookup(name):
    try:
        return _BY_NAME[name]
    except KeyError:
        known = ", ".join(sorted(_BY_NAME))
        raise KeyError(f"unknown catalog function {name!r}; known: {known}") from None


def names():
    return tuple(_BY_NAME)
