"""Built-in fixtures addressable by name from the CLI and the tests."""

import re
from fractions import Fraction

from .errors import ParseError
from .liealg import abelian, aff1, gl_truncation, sl2
from .rmatrix import gen_example_e1, gen_example_e2, gen_example_e3
from .tensor import basis_wedge, tensor2

DEFAULT_TRUNCATION = 3


def _e3_tensor(norm="euclidean"):
    A = aff1(norm)
    r = basis_wedge(A, 0, 1)
    return gen_example_e3([(A, r, Fraction(1)), (A, r, Fraction(1, 2))], name="e3-demo")


def builtin_algebra(name, norm=None):
    """sl2, aff1, glN, abelianN or e3-demo; ``None`` when the name is unknown."""
    norm = norm or "euclidean"
    if name == "sl2":
        return sl2(norm)
    if name == "aff1":
        return aff1(norm)
    if name == "e3-demo":
        return _e3_tensor(norm).space
    m = re.fullmatch(r"gl(\d+)", name)
    if m:
        return gl_truncation(int(m.group(1)), norm)
    m = re.fullmatch(r"abelian(\d+)", name)
    if m:
        return abelian(int(m.group(1)), norm)
    return None


def standard_r(L):
    """e (x) f + 1/4 h (x) h on sl2."""
    return tensor2(L, {(1, 2): Fraction(1), (0, 0): Fraction(1, 4)})


def builtin_tensor(name, L=None, n=None, rule="default", norm=None):
    """Return ``(algebra, tensor)`` for a built-in tensor name, or ``None``."""
    norm = norm or "euclidean"
    n = n or DEFAULT_TRUNCATION
    if name in ("standard_r", "e_wedge_f", "e_tensor_f"):
        S = L if L is not None and L.name == "sl2" else sl2(norm)
        if name == "standard_r":
            return S, standard_r(S)
        if name == "e_tensor_f":
            return S, tensor2(S, {(1, 2): Fraction(1)})
        return S, basis_wedge(S, 1, 2)
    if name == "x_wedge_y":
        A = L if L is not None and L.name == "aff1" else aff1(norm)
        return A, basis_wedge(A, 0, 1)
    if name == "e1":
        t = gen_example_e1(n, norm=norm)
        return t.space, t
    if name in ("e2", "e2-default"):
        t = gen_example_e2(n, "default" if name == "e2-default" else rule, norm=norm)
        return t.space, t
    if name == "e3-demo":
        t = _e3_tensor(norm)
        return t.space, t
    return None


ALGEBRA_NAMES = ("sl2", "aff1", "gl<N>", "abelian<N>", "e3-demo")
TENSOR_NAMES = ("standard_r", "e_wedge_f", "e_tensor_f", "x_wedge_y", "e1", "e2-default", "e3-demo")


def unknown(kind, name):
    return ParseError(f"unknown {kind} {name!r} (not a file and not a built-in name)")
