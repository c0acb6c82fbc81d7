"""Projective tensor norm estimation.

For Euclidean fibers the projective norm of an order-2 tensor is the nuclear
norm (sum of singular values), computed exactly up to floating point.  For
other fiber norms we only certify an interval: any decomposition gives an
upper bound, and any pair of dual-unit-ball functionals gives a lower bound
through the injective norm.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BadDecomposition, DimensionMismatch, WrongNormSpec

RECONSTRUCTION_TOL = 1e-10


@dataclass(frozen=True)
class NormInterval:
    lower: float
    upper: float
    method_lower: str
    method_upper: str

    def to_json(self):
        return {"lower": float(self.lower), "upper": float(self.upper),
                "method_lower": self.method_lower, "method_upper": self.method_upper}

    @property
    def width(self):
        return self.upper - self.lower


@dataclass(frozen=True)
class Decomposition:
    """A list of rank-1 terms; each term is a tuple of factor vectors."""
    terms: tuple

    def reconstruct(self, shape):
        out = np.zeros(shape)
        for term in self.terms:
            if len(term) != len(shape):
                raise BadDecomposition("term order does not match tensor order")
            piece = np.asarray(term[0], dtype=float)
            for f in term[1:]:
                piece = np.multiply.outer(piece, np.asarray(f, dtype=float))
            out += piece
        return out

    def cost(self, norms):
        return float(sum(np.prod([nm.norm(f) for nm, f in zip(norms, term)])
                         for term in self.terms))


def _norms(t):
    return [L.norm for L in t.spaces]


def _dense(t):
    return t.to_dense() if hasattr(t, "to_dense") else np.asarray(t, dtype=float)


def nuclear_norm_euclidean(t):
    """Sum of singular values; equals the projective norm for Euclidean fibers."""
    if t.order != 2:
        raise DimensionMismatch("the nuclear norm is computed for order-2 tensors")
    if not all(nm.kind == "euclidean" for nm in _norms(t)):
        raise WrongNormSpec("nuclear_norm_euclidean needs euclidean fiber norms")
    if not t.entries:
        return 0.0
    return float(np.linalg.svd(_dense(t), compute_uv=False).sum())


# --- upper bounds -----------------------------------------------------------


def entrywise_decomposition(t):
    """The raw decomposition sum t_idx b_i (x) b_j (x) ..."""
    terms = []
    for idx, v in t.items():
        factors = []
        for pos, (i, L) in enumerate(zip(idx, t.spaces)):
            f = np.zeros(L.dim)
            f[i] = float(v) if pos == 0 else 1.0
            factors.append(f)
        terms.append(tuple(factors))
    return Decomposition(tuple(terms))


def svd_decomposition(t):
    """Order-2 candidate from the singular value decomposition."""
    m = _dense(t)
    u, s, vt = np.linalg.svd(m, full_matrices=False)
    return Decomposition(tuple((u[:, k] * s[k], vt[k]) for k in range(len(s)) if s[k] > 0))


def _best_rank1(arr, rng, iters=50):
    """Higher-order power iteration for a dominant rank-1 term (Euclidean)."""
    vecs = [rng.standard_normal(n) for n in arr.shape[1:]]
    vecs = [v / np.linalg.norm(v) for v in vecs]
    first = None
    for _ in range(iters):
        first = np.einsum("ijk,j,k->i", arr, *vecs)
        n0 = np.linalg.norm(first)
        if n0 == 0:
            return None
        first /= n0
        vecs[0] = np.einsum("ijk,i,k->j", arr, first, vecs[1])
        vecs[0] /= max(np.linalg.norm(vecs[0]), 1e-300)
        vecs[1] = np.einsum("ijk,i,j->k", arr, first, vecs[0])
        vecs[1] /= max(np.linalg.norm(vecs[1]), 1e-300)
    scale = np.einsum("ijk,i,j,k->", arr, first, *vecs)
    return (first * scale, vecs[0], vecs[1])


def peeling_decomposition(t, max_terms=None, seed=0):
    """Order-3 candidate: greedy rank-1 peeling, remainder taken entrywise."""
    arr = _dense(t)
    rng = np.random.default_rng(seed)
    max_terms = max_terms if max_terms is not None else min(arr.shape) * 2
    terms = []
    rest = arr.copy()
    for _ in range(max_terms):
        if not np.any(np.abs(rest) > RECONSTRUCTION_TOL):
            break
        term = _best_rank1(rest, rng)
        if term is None:
            break
        piece = np.multiply.outer(np.multiply.outer(term[0], term[1]), term[2])
        if np.abs(rest - piece).sum() >= np.abs(rest).sum():
            break
        terms.append(term)
        rest = rest - piece
    for idx in zip(*np.nonzero(rest)):
        factors = []
        for pos, (i, n) in enumerate(zip(idx, arr.shape)):
            f = np.zeros(n)
            f[i] = rest[idx] if pos == 0 else 1.0
            factors.append(f)
        terms.append(tuple(factors))
    return Decomposition(tuple(terms))


def _auto_candidates(t):
    if t.order == 2:
        return [svd_decomposition(t)]
    return [peeling_decomposition(t)]


def _entrywise_cost(t):
    units = [[L.norm.norm(np.eye(L.dim)[i]) for i in range(L.dim)] for L in t.spaces]
    return float(sum(abs(float(v)) * np.prod([u[i] for u, i in zip(units, idx)])
                     for idx, v in t.items()))


# dense candidate generation is skipped above this many entries
AUTO_DENSE_LIMIT = 200_000


def projective_upper(t, candidates=(), auto=True, return_method=False):
    """min over candidate decompositions of sum prod fiber norms.

    The entrywise decomposition is always included, so the result is a valid
    upper bound even with no candidates.  Every supplied candidate must
    reconstruct ``t`` within 1e-10 (max entry), else :class:`BadDecomposition`.
    """
    norms = _norms(t)
    best = (_entrywise_cost(t), "entrywise")
    size = int(np.prod(t.shape))
    if not candidates and not (auto and t.entries and size <= AUTO_DENSE_LIMIT):
        return best if return_method else best[0]
    target = _dense(t)
    for cand in candidates:
        if not isinstance(cand, Decomposition):
            cand = Decomposition(tuple(tuple(term) for term in cand))
        resid = np.abs(cand.reconstruct(target.shape) - target).max() if target.size else 0.0
        if resid > RECONSTRUCTION_TOL:
            raise BadDecomposition(f"candidate reconstruction residual {resid:.3e}")
        best = min(best, (cand.cost(norms), "candidate"))
    if auto and t.entries and size <= AUTO_DENSE_LIMIT:
        for cand in _auto_candidates(t):
            resid = np.abs(cand.reconstruct(target.shape) - target).max()
            # auto candidates are float approximations; drop any that drift
            if resid <= RECONSTRUCTION_TOL:
                best = min(best, (cand.cost(norms), "svd" if t.order == 2 else "peeling"))
    return best if return_method else best[0]


# --- lower bounds -----------------------------------------------------------


def _contract_except(arr, vecs, skip):
    out = arr
    # contract from the last axis down so lower axis numbers stay valid
    for axis in reversed(range(arr.ndim)):
        if axis != skip:
            out = np.tensordot(out, vecs[axis], axes=([axis], [0]))
    return out


def _dual_unit(spec, g):
    n = spec.dual().norm(g)
    return g / n if n > 0 else g


def injective_lower(t, restarts=32, max_iters=500, tol=1e-10, seed=0):
    """Best |phi (x) psi (x) ...(t)| found by alternating maximization.

    Each half-step replaces one functional by a norming functional of the
    partially contracted tensor, which is the exact maximizer over that dual
    unit ball.  Any point reached is feasible, so the value is a certified
    lower bound of the injective (hence projective) norm.
    """
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    arr = _dense(t)
    if not np.any(arr):
        return 0.0
    norms = _norms(t)
    duals = [nm.dual() for nm in norms]
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(restarts):
        vecs = [_dual_unit(nm, rng.standard_normal(n)) for nm, n in zip(norms, arr.shape)]
        value = 0.0
        for _ in range(max_iters):
            for axis in range(arr.ndim):
                partial = _contract_except(arr, vecs, axis)
                vecs[axis] = norms[axis].norming_functional(partial)
            new = float(_contract_except(arr, vecs, 0) @ vecs[0])
            if abs(abs(new) - value) <= tol * max(1.0, abs(new)):
                value = abs(new)
                break
            value = abs(new)
        # guard against rounding pushing a functional just outside its ball
        scale = np.prod([max(1.0, d.norm(v)) for d, v in zip(duals, vecs)])
        best = max(best, float(value / scale))
    return best


def norm_interval(t, candidates=(), **kw):
    """Certified bracket for the projective norm of ``t``."""
    norms = _norms(t)
    if t.order == 2 and all(nm.kind == "euclidean" for nm in norms):
        v = nuclear_norm_euclidean(t)
        return NormInterval(v, v, "nuclear", "nuclear")
    lower = injective_lower(t, **kw)
    upper, method = projective_upper(t, candidates, return_method=True)
    return NormInterval(lower, upper, "injective", method)
