"""Machine-readable verification outcomes."""

import hashlib
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .scalars import format_scalar

PASS = "pass"
FAIL = "fail"
INTERVAL = "interval"


def _plain(value):
    """Recursively convert scalars, arrays and tuples into JSON-ready values."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return format_scalar(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v) for v in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    return str(value)


def content_hash(obj):
    """sha256 of a canonical JSON dump (or of raw bytes/str)."""
    if isinstance(obj, bytes):
        data = obj
    elif isinstance(obj, str):
        data = obj.encode()
    else:
        data = json.dumps(_plain(obj), sort_keys=True).encode()
    return hashlib.sha256(data).hexdigest()


@dataclass
class Report:
    command: str
    verdict: str
    residuals: dict = field(default_factory=dict)
    series: list = None
    inputs: dict = field(default_factory=dict)
    payload: dict = field(default_factory=dict)
    wall_time_ms: int = 0

    @property
    def passed(self):
        return self.verdict == PASS

    def __bool__(self):
        return self.passed

    def to_dict(self):
        out = {
            "command": self.command,
            "verdict": self.verdict,
            "inputs": _plain(self.inputs),
            "residuals": _plain(self.residuals),
            "wall_time_ms": int(self.wall_time_ms),
        }
        if self.series is not None:
            out["series"] = _plain(self.series)
        if self.payload:
            out["payload"] = _plain(self.payload)
        return out

    def to_json(self, timing=True):
        d = self.to_dict()
        if not timing:
            d.pop("wall_time_ms")
        return json.dumps(d, sort_keys=True, indent=2) + "\n"


class Timer:
    """Context manager filling ``elapsed_ms``."""

    def __enter__(self):
        self._t0 = time.perf_counter()
        self.elapsed_ms = 0
        return self

    def __exit__(self, *exc):
        self.elapsed_ms = int(round((time.perf_counter() - self._t0) * 1000))
        return False


def verdict_of(ok):
    return PASS if ok else FAIL
