from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, is_dataclass

import numpy as np

VERDICTS = ("pass", "fail", "inconclusive")


def _plain(value):
    """Make numpy scalars, complex numbers and infinities JSON friendly."""
    if is_dataclass(value) and not isinstance(value, type):
        return _plain(asdict(value))
    if isinstance(value, (np.generic,)):
        value = value.item()
    if isinstance(value, complex):
        return {"re": _plain(value.real), "im": _plain(value.imag)}
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


@dataclass
class CheckReport:
    """Verdict of one numerical check plus the evidence behind it.

    ``evidence`` is a list of (probe, value) pairs in the order they were
    measured.  ``data`` holds derived quantities (fitted slopes, norms, ...)
    that callers may want without parsing the evidence list.
    """

    check_name: str
    verdict: str
    evidence: list = field(default_factory=list)
    thresholds: dict = field(default_factory=dict)
    notes: str = ""
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"verdict must be one of {VERDICTS}, got {self.verdict!r}")

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_dict(self):
        return {
            "check_name": self.check_name,
            "verdict": self.verdict,
            "evidence": [[_plain(p), _plain(v)] for p, v in self.evidence],
            "thresholds": _plain(self.thresholds),
            "notes": self.notes,
            "data": _plain(self.data),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)
