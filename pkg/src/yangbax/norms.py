"""Norms on coefficient spaces of finite-dimensional algebras.

Every :class:`~yangbax.liealg.LieAlgebra` carries one :class:`NormSpec`.  The
four user-facing tags are ``euclidean``, ``sup``, ``l1`` and ``operator``.
Three further kinds are produced internally: ``trace`` (dual of ``operator``),
``max`` (direct sums, sup over summands) and ``sum`` (semidirect products,
``||x+u|| = ||x|| + ||u||``).

All norm evaluations are floating point; the norm layer never participates in
exact identity checks.
"""

from dataclasses import dataclass

import numpy as np

from .errors import WrongNormSpec

TAGS = ("euclidean", "sup", "l1", "operator")
_COMPOSITE = ("max", "sum")
_MATRIX = ("operator", "trace")


def _as_float(x):
    return np.asarray(np.asarray(x, dtype=object).astype(float), dtype=float).ravel()


@dataclass(frozen=True, eq=False)
class NormSpec:
    kind: str
    matrices: tuple = ()
    parts: tuple = ()

    def __post_init__(self):
        if self.kind not in TAGS + _COMPOSITE + ("trace",):
            raise WrongNormSpec(f"unknown norm kind {self.kind!r}")
        if self.kind in _MATRIX and not self.matrices:
            raise WrongNormSpec(f"{self.kind} norm needs basis matrices")
        if self.kind in _COMPOSITE and not self.parts:
            raise WrongNormSpec(f"{self.kind} norm needs parts")

    @property
    def tag(self):
        return self.kind

    @property
    def dim(self):
        if self.kind in _COMPOSITE:
            return sum(d for _, d, _ in self.parts)
        if self.kind in _MATRIX:
            return len(self.matrices)
        return None

    def is_euclidean(self):
        return self.kind == "euclidean"

    def _blocks(self, x):
        for off, d, spec in self.parts:
            yield spec, x[off:off + d]

    def _matrix(self, x):
        return np.tensordot(x, np.asarray(self.matrices, dtype=float), axes=1)

    def norm(self, x):
        x = _as_float(x)
        k = self.kind
        if k == "euclidean":
            return float(np.linalg.norm(x))
        if k == "sup":
            return float(np.max(np.abs(x))) if x.size else 0.0
        if k == "l1":
            return float(np.sum(np.abs(x)))
        if k == "operator":
            return float(np.linalg.norm(self._matrix(x), 2))
        if k == "trace":
            return float(np.linalg.norm(self._matrix(x), "nuc"))
        values = [spec.norm(xb) for spec, xb in self._blocks(x)]
        return max(values) if k == "max" else sum(values)

    def norming_functional(self, x):
        """Return phi with dual norm <= 1 and ``phi . x == norm(x)``.

        Coordinates of phi are taken against the coefficient pairing
        ``phi(x) = sum_k phi_k x_k``.
        """
        x = _as_float(x)
        n = x.size
        k = self.kind
        if k == "euclidean":
            nx = np.linalg.norm(x)
            return x / nx if nx > 0 else _first_unit(n)
        if k == "sup":
            if not np.any(x):
                return _first_unit(n)
            i = int(np.argmax(np.abs(x)))
            phi = np.zeros(n)
            phi[i] = np.sign(x[i])
            return phi
        if k == "l1":
            phi = np.sign(x)
            phi[phi == 0] = 1.0
            return phi
        if k in _MATRIX:
            mats = np.asarray(self.matrices, dtype=float)
            u, s, vt = np.linalg.svd(self._matrix(x))
            if k == "operator":
                w = np.outer(u[:, 0], vt[0])
            else:
                w = u @ vt
            # phi(y) = <W, Y>_F and ||W|| is 1 in the dual matrix norm
            return np.einsum("ij,kij->k", w, mats)
        phi = np.zeros(n)
        if k == "max":
            values = [spec.norm(xb) for spec, xb in self._blocks(x)]
            off, d, spec = self.parts[int(np.argmax(values))]
            phi[off:off + d] = spec.norming_functional(x[off:off + d])
            return phi
        for off, d, spec in self.parts:
            phi[off:off + d] = spec.norming_functional(x[off:off + d])
        return phi

    def dual(self):
        """Norm on dual coefficients induced by the coefficient pairing."""
        k = self.kind
        if k == "euclidean":
            return self
        if k == "sup":
            return NormSpec("l1")
        if k == "l1":
            return NormSpec("sup")
        if k == "operator":
            return NormSpec("trace", matrices=self.matrices)
        if k == "trace":
            return NormSpec("operator", matrices=self.matrices)
        flipped = "sum" if k == "max" else "max"
        return NormSpec(flipped, parts=tuple((o, d, s.dual()) for o, d, s in self.parts))

    def l1_factor(self, n):
        """A constant kappa with ``sum_k |x_k| <= kappa * norm(x)`` on R^n."""
        k = self.kind
        if k == "euclidean":
            return float(np.sqrt(n))
        if k == "sup":
            return float(n)
        if k == "l1":
            return 1.0
        if k in _MATRIX:
            mats = np.asarray(self.matrices, dtype=float)
            basis = mats.reshape(len(mats), -1).T
            coeff = np.linalg.pinv(basis)
            shape = mats.shape[1:]
            inner = "nuc" if k == "operator" else 2
            return float(sum(np.linalg.norm(row.reshape(shape), inner) for row in coeff))
        factors = [spec.l1_factor(d) for _, d, spec in self.parts]
        return float(sum(factors)) if k == "max" else float(max(factors))

    def to_json(self):
        # composite and dual kinds only arise internally and serialize by kind
        return self.kind


def _first_unit(n):
    phi = np.zeros(n)
    if n:
        phi[0] = 1.0
    return phi


def make_norm(tag, dim=None, matrices=None):
    """Build a :class:`NormSpec` from a tag string (or pass one through)."""
    if isinstance(tag, NormSpec):
        return tag
    if tag not in TAGS:
        raise WrongNormSpec(f"unknown norm tag {tag!r}; expected one of {TAGS}")
    if tag == "operator":
        if matrices is None:
            raise WrongNormSpec("operator norm is only valid for gl-type bases")
        return NormSpec("operator", matrices=tuple(np.asarray(m, dtype=float) for m in matrices))
    return NormSpec(tag)


def max_norm(parts):
    return NormSpec("max", parts=tuple(parts))


def sum_norm(parts):
    return NormSpec("sum", parts=tuple(parts))
