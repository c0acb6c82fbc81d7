"""Sparse order-2 and order-3 tensors over Lie algebra bases.

Entries are kept in a mapping from index tuples to scalars with no stored
zeros; iteration always follows lexicographic index order so floating-point
sums are reproducible.
"""

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange, NonSquareFactors, SpaceMismatch
from .scalars import EXACT, FLOAT, as_vector, coerce, half, merge_modes, mode_of, vector_mode


@dataclass(frozen=True, eq=False)
class Tensor:
    spaces: tuple
    entries: MappingProxyType
    mode: str = None

    @property
    def order(self):
        return len(self.spaces)

    @property
    def shape(self):
        return tuple(L.dim for L in self.spaces)

    @property
    def space(self):
        return self.spaces[0]

    def __len__(self):
        return len(self.entries)

    def items(self):
        return self.entries.items()

    def get(self, idx):
        return self.entries.get(tuple(idx), coerce(0, self.mode or EXACT))

    def _combine(self, other, sign):
        _require_same_spaces(self, other)
        mode = merge_modes(self.mode, other.mode)
        acc = dict(self.entries)
        for idx, v in other.entries.items():
            acc[idx] = acc.get(idx, 0) + sign * v
        return make_tensor(self.spaces, acc, mode=mode)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return make_tensor(self.spaces, {k: -v for k, v in self.entries.items()}, mode=self.mode)

    def __mul__(self, c):
        mode = merge_modes(self.mode, mode_of(c))
        c = coerce(c, mode or mode_of(c))
        return make_tensor(self.spaces, {k: c * v for k, v in self.entries.items()}, mode=mode)

    __rmul__ = __mul__

    def is_zero(self, tol=None):
        if tol is None:
            return not self.entries
        return self.max_entry() <= tol

    def max_entry(self):
        """Largest absolute entry (the max-entry residual used by all checkers)."""
        if not self.entries:
            return coerce(0, self.mode or EXACT)
        return max(abs(v) for v in self.entries.values())

    def equals(self, other, tol=None):
        return (self - other).is_zero(tol)

    def to_dense(self, mode=FLOAT):
        if mode == FLOAT:
            out = np.zeros(self.shape)
        else:
            out = np.full(self.shape, Fraction(0), dtype=object)
        for idx, v in self.entries.items():
            out[idx] = coerce(v, mode) if mode == EXACT else float(v)
        return out

    def as_float(self):
        return make_tensor(self.spaces, {k: float(v) for k, v in self.entries.items()}, mode=FLOAT)

    def __repr__(self):
        names = "x".join(L.name or str(L.dim) for L in self.spaces)
        return f"Tensor(order={self.order}, spaces={names}, nnz={len(self.entries)}, mode={self.mode})"


def make_tensor(spaces, entries, mode=None):
    """Build a canonical tensor: validated indices, zeros dropped, sorted keys."""
    spaces = tuple(spaces)
    if len(spaces) not in (2, 3):
        raise DimensionMismatch("only order-2 and order-3 tensors are supported")
    items = entries.items() if hasattr(entries, "items") else entries
    found_modes = [mode]
    clean = {}
    for idx, v in items:
        idx = tuple(int(i) for i in idx)
        if len(idx) != len(spaces):
            raise DimensionMismatch(f"index {idx} has wrong arity for order {len(spaces)}")
        for i, L in zip(idx, spaces):
            if not 0 <= i < L.dim:
                raise IndexOutOfRange(f"index {idx} out of range for shape {[L.dim for L in spaces]}")
        found_modes.append(mode_of(v))
        if v != 0:
            clean[idx] = clean.get(idx, 0) + v
    mode = merge_modes(*found_modes)
    if mode is not None:
        clean = {k: coerce(v, mode) for k, v in clean.items()}
    clean = {k: v for k, v in sorted(clean.items()) if v != 0}
    return Tensor(spaces, MappingProxyType(clean), mode)


def tensor2(L, entries=(), right=None, mode=None):
    return make_tensor((L, right if right is not None else L), entries, mode=mode)


def tensor3(L, entries=(), mode=None):
    return make_tensor((L, L, L), entries, mode=mode)


def zero_tensor(spaces, mode=None):
    return make_tensor(spaces, {}, mode=mode)


def from_dense(spaces, array):
    arr = np.asarray(array)
    mode = FLOAT if arr.dtype != object else None
    entries = {idx: (float(v) if mode == FLOAT else v) for idx, v in np.ndenumerate(arr) if v != 0}
    return make_tensor(spaces, entries, mode=mode)


def elementary(L, x, y, right=None):
    """x (x) y for coefficient vectors x, y."""
    R = right if right is not None else L
    x, y = as_vector(x), as_vector(y)
    if len(x) != L.dim or len(y) != R.dim:
        raise DimensionMismatch("vector length does not match factor space")
    entries = {(a, b): xa * yb for a, xa in enumerate(x) if xa != 0 for b, yb in enumerate(y) if yb != 0}
    return make_tensor((L, R), entries, mode=merge_modes(vector_mode(x), vector_mode(y)))


def wedge(L, x, y):
    """x (x) y - y (x) x."""
    return elementary(L, x, y) - elementary(L, y, x)


def basis_wedge(L, i, j):
    return wedge(L, L.unit(i), L.unit(j))


def _require_same_spaces(s, t):
    if s.order != t.order or not all(a.same_as(b) for a, b in zip(s.spaces, t.spaces)):
        raise SpaceMismatch("tensors live on different spaces")


def _require_square(t):
    first = t.spaces[0]
    if not all(first.same_as(L) for L in t.spaces[1:]):
        raise NonSquareFactors("operation needs identical factor spaces")


def _require_over(L, t):
    if not all(L.same_as(S) for S in t.spaces):
        raise SpaceMismatch(f"tensor is not over {L.name or 'the given algebra'}")


# --- symmetries -------------------------------------------------------------


def tau(t):
    """Swap the two factors of an order-2 tensor."""
    if t.order != 2:
        raise DimensionMismatch("tau acts on order-2 tensors")
    return make_tensor((t.spaces[1], t.spaces[0]), {(b, a): v for (a, b), v in t.items()}, mode=t.mode)


def skew_part(t):
    _require_square(t)
    return (t - tau(t)) * half(t.mode)


def sym_part(t):
    _require_square(t)
    return (t + tau(t)) * half(t.mode)


def is_skew(t):
    return skew_part(t).equals(t)


def rotate(t):
    """x (x) y (x) z -> y (x) z (x) x."""
    return make_tensor(t.spaces, {(b, c, a): v for (a, b, c), v in t.items()}, mode=t.mode)


def alt(t):
    """Cyclic sum x(x)y(x)z + y(x)z(x)x + z(x)x(x)y."""
    if t.order != 3:
        raise DimensionMismatch("alt acts on order-3 tensors")
    _require_square(t)
    r1 = rotate(t)
    return t + r1 + rotate(r1)


# --- adjoint action ---------------------------------------------------------


def ad_action(L, x, t):
    """Derivation extension of ad_x to the tensor power: sum over slots."""
    _require_over(L, t)
    x = as_vector(x)
    if len(x) != L.dim:
        raise DimensionMismatch("vector length does not match the algebra")
    mode = merge_modes(t.mode, vector_mode(x)) or EXACT
    support = [(i, coerce(xi, mode)) for i, xi in enumerate(x) if xi != 0]
    acc = {}
    for idx, v in t.items():
        for slot, b in enumerate(idx):
            for i, xi in support:
                for k, c in L.bracket_basis(i, b):
                    new = idx[:slot] + (k,) + idx[slot + 1:]
                    acc[new] = acc.get(new, 0) + coerce(c, mode) * xi * v
    return make_tensor(t.spaces, acc, mode=mode)


def ad_basis(L, i, t):
    return ad_action(L, L.unit(i), t)


# --- contractions -----------------------------------------------------------


def contract_left(alpha, r):
    """(alpha (x) id)(r) for a dual vector alpha in dual-basis coordinates."""
    alpha = as_vector(alpha)
    if r.order != 2 or len(alpha) != r.spaces[0].dim:
        raise DimensionMismatch("dual vector does not match the first factor")
    mode = merge_modes(r.mode, vector_mode(alpha)) or EXACT
    out = np.array([coerce(0, mode)] * r.spaces[1].dim, dtype=object)
    for (a, b), v in r.items():
        if alpha[a] != 0:
            out[b] += alpha[a] * v
    return out if mode == EXACT else out.astype(float)


def contract_pair(alpha, beta, r):
    """(alpha (x) beta)(r)."""
    beta = as_vector(beta)
    if len(beta) != r.spaces[1].dim:
        raise DimensionMismatch("dual vector does not match the second factor")
    return sum(contract_left(alpha, r) * beta, start=coerce(0, vector_mode(beta) or EXACT))


def contract3(alpha, beta, gamma, t):
    """(alpha (x) beta (x) gamma)(t)."""
    vecs = [as_vector(v) for v in (alpha, beta, gamma)]
    if t.order != 3 or any(len(v) != L.dim for v, L in zip(vecs, t.spaces)):
        raise DimensionMismatch("dual vectors do not match the factors")
    mode = merge_modes(t.mode, *(vector_mode(v) for v in vecs)) or EXACT
    total = coerce(0, mode)
    for (a, b, c), v in t.items():
        total += vecs[0][a] * vecs[1][b] * vecs[2][c] * v
    return total


def row(r, a):
    """Coordinates of (b^a (x) id)(r), i.e. r-underline of a dual basis vector."""
    return contract_left(r.spaces[0].unit(a), r)
