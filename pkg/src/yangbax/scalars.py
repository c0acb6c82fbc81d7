"""Exact-rational / 64-bit float scalar handling.

A computation runs either in exact mode (``fractions.Fraction``) or in floating
mode (``float``).  Plain ints are promoted to ``Fraction``.  Mixing the two
modes inside one object or one operation raises :class:`ModeMismatch`.
"""

from fractions import Fraction
from numbers import Integral, Rational

import numpy as np

from .errors import ModeMismatch, ParseError

EXACT = "exact"
FLOAT = "float"

HALF = Fraction(1, 2)


def mode_of(value):
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (Fraction, Integral)):
        return EXACT
    if isinstance(value, Rational):
        return EXACT
    if isinstance(value, (float, np.floating)):
        return FLOAT
    raise TypeError(f"unsupported scalar type {type(value).__name__}")


def coerce(value, mode):
    """Convert ``value`` into the scalar type of ``mode``.

    Exact structure constants may always be lowered into floating mode; a float
    is never raised into exact mode.
    """
    if mode == EXACT:
        if mode_of(value) == FLOAT:
            raise ModeMismatch("floating value in exact computation")
        return Fraction(value)
    return float(value)


def merge_modes(*modes):
    """Return the common mode of ``modes`` (``None`` entries are neutral)."""
    found = {m for m in modes if m is not None}
    if len(found) > 1:
        raise ModeMismatch("exact and floating scalars mixed")
    return found.pop() if found else None


def zero(mode):
    return Fraction(0) if mode != FLOAT else 0.0


def half(mode):
    return HALF if mode != FLOAT else 0.5


def parse_scalar(text, mode=EXACT):
    """Parse ``"num/den"``, an integer or a decimal into a scalar of ``mode``."""
    if isinstance(text, bool):
        raise ParseError(f"not a scalar: {text!r}")
    if isinstance(text, (int, Fraction)):
        return coerce(text, mode)
    if isinstance(text, float):
        if mode == EXACT:
            # decimals from JSON are read exactly through their repr
            return Fraction(repr(text))
        return text
    if not isinstance(text, str):
        raise ParseError(f"not a scalar: {text!r}")
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad scalar {text!r}: {exc}") from None
    return value if mode == EXACT else float(value)


def format_scalar(value):
    """Serialize a scalar: ``"num/den"`` in exact mode, a float otherwise."""
    if mode_of(value) == EXACT:
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return float(value)


def is_zero(value, tol=None):
    if tol is None:
        return value == 0
    return abs(value) <= tol


def vector(values, mode=EXACT):
    """Build a 1-d coefficient array (object dtype in exact mode)."""
    if mode == EXACT:
        return np.array([coerce(v, EXACT) for v in values], dtype=object)
    return np.array([float(v) for v in values], dtype=float)


def zeros(n, mode=EXACT):
    if mode == EXACT:
        return np.array([Fraction(0)] * n, dtype=object)
    return np.zeros(n)


def unit(n, i, mode=EXACT):
    v = zeros(n, mode)
    v[i] = Fraction(1) if mode == EXACT else 1.0
    return v


def vector_mode(v):
    arr = np.asarray(v)
    if arr.dtype == object:
        return merge_modes(*(mode_of(x) for x in arr.ravel()))
    if np.issubdtype(arr.dtype, np.integer):
        return EXACT
    return FLOAT


def as_vector(v, mode=None):
    """Normalize ``v`` into a coefficient array in its own (or the given) mode."""
    arr = np.asarray(v)
    m = mode or vector_mode(arr) or EXACT
    if m == EXACT:
        return np.array([coerce(x, EXACT) for x in arr.ravel()], dtype=object)
    return arr.astype(float).ravel()
