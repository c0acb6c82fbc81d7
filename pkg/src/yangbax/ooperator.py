"""O-operators, induced brackets and the r-matrix correspondence.

A linear map T: h -> g is stored as a matrix whose column u holds T(e_u).
For a representation rho of g on h, T is an O-operator when

    [T a, T b] = T(rho(T a) b - rho(T b) a)    for all a, b in h.

With h = g* and rho the coadjoint action, the dual basis identifies h with
g* and T(b^a) is row a of a tensor r.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DimensionMismatch,
    NotAnOOperator,
    NotSkew,
    PairingUnavailable,
    SpaceMismatch,
    TruncationTooLarge,
)
from .liealg import bracket, build_lie_algebra, coadjoint_rep, dual_rep, semidirect_product
from .rmatrix import _require_r_over, cyb, require_skew
from .scalars import EXACT, as_vector, coerce, zeros
from .tensor import alt, tensor2


def as_matrix(T, shape=None):
    """Exact object matrix from nested lists / arrays of rationals."""
    arr = np.asarray(T, dtype=object)
    if arr.ndim != 2:
        raise DimensionMismatch("T must be a matrix")
    if shape is not None and arr.shape != tuple(shape):
        raise DimensionMismatch(f"T has shape {arr.shape}, expected {tuple(shape)}")
    return np.array([[coerce(v, EXACT) for v in row] for row in arr], dtype=object).reshape(arr.shape)


def zero_matrix(rows, cols):
    return np.array([[Fraction(0)] * cols for _ in range(rows)], dtype=object).reshape(rows, cols)


@dataclass(frozen=True, eq=False)
class OOperator:
    T: np.ndarray
    rep: object
    residual: object = None

    @property
    def algebra(self):
        return self.rep.algebra

    def __call__(self, u):
        return self.T.dot(as_vector(u))

    def is_ooperator(self):
        return self.residual == 0


def _check_shapes(L, rep, T):
    T = as_matrix(T)
    if T.shape != (L.dim, rep.module_dim):
        raise DimensionMismatch(f"T has shape {T.shape}, expected {(L.dim, rep.module_dim)}")
    if rep.algebra.dim != L.dim:
        raise DimensionMismatch("representation belongs to an algebra of different dimension")
    return T


def _rho_of(rep, x):
    m = rep.module_dim
    out = zero_matrix(m, m)
    for i, xi in enumerate(x):
        if xi != 0:
            out = out + xi * rep.action[i]
    return out


def edo_defect(L, rep, T, u, v):
    """[T u, T v] - T(rho(T u) v - rho(T v) u) for module vectors u, v."""
    T = _check_shapes(L, rep, T)
    u, v = as_vector(u), as_vector(v)
    Tu, Tv = T.dot(u), T.dot(v)
    inner = _rho_of(rep, Tu).dot(v) - _rho_of(rep, Tv).dot(u)
    return bracket(L, Tu, Tv) - T.dot(inner)


def check_ooperator(L, rep, T):
    """Max-entry residual of the O-operator identity over module basis pairs."""
    T = _check_shapes(L, rep, T)
    m = rep.module_dim
    rhos = [_rho_of(rep, T[:, u]) for u in range(m)]
    worst = Fraction(0)
    for u in range(m):
        for v in range(u + 1, m):
            Tu, Tv = T[:, u], T[:, v]
            inner = rhos[u][:, v] - rhos[v][:, u]
            diff = bracket(L, Tu, Tv) - T.dot(inner)
            if diff.size:
                worst = max(worst, max(abs(x) for x in diff))
    return worst


def make_ooperator(L, rep, T):
    T = _check_shapes(L, rep, T)
    return OOperator(T, rep, check_ooperator(L, rep, T))


def check_skewness(T, pairing="dual-basis"):
    """alpha(T beta) = -beta(T alpha) for T: g* -> g under the dual-basis pairing."""
    if pairing != "dual-basis":
        raise PairingUnavailable(f"unsupported pairing {pairing!r}")
    T = as_matrix(T)
    if T.shape[0] != T.shape[1]:
        raise PairingUnavailable("module is not identified with the dual of the algebra")
    # alpha_a(T beta_b) = T[a, b]
    return all(T[a, b] == -T[b, a] for a in range(T.shape[0]) for b in range(T.shape[0]))


def induced_bracket(L, T, rep=None, name=None):
    """Lie algebra on the module with [a, b] = rho(T a) b - rho(T b) a.

    For the coadjoint action this is ad*_{T b} a - ad*_{T a} b with
    ad*_x a = a o ad_x.  Requires T to be an O-operator.
    """
    rep = rep if rep is not None else coadjoint_rep(L)
    T = _check_shapes(L, rep, T)
    res = check_ooperator(L, rep, T)
    if res != 0:
        raise NotAnOOperator(f"O-operator residual {res}")
    m = rep.module_dim
    rhos = [_rho_of(rep, T[:, u]) for u in range(m)]
    rows = []
    for u in range(m):
        for v in range(u + 1, m):
            vec = rhos[u][:, v] - rhos[v][:, u]
            rows.extend((u, v, k, c) for k, c in enumerate(vec) if c != 0)
    if rep.module_dim == L.dim and rep.name == "coadjoint":
        labels = [f"{lab}*" for lab in L.basis_labels]
    else:
        labels = [f"u{a}" for a in range(m)]
    return build_lie_algebra(m, rows, norm=rep.module_norm, labels=labels,
                             name=name or f"{L.name}_T")


def _adstar(L, i):
    """ad*_{b_i} on dual coordinates: a -> a o ad_{b_i}."""
    return -coadjoint_rep(L).action[i]


def eo_residual(L, T):
    """max |<x,[a,b]> - <T(ad*_x a), b> - <T a, ad*_x b>| over basis x and dual-basis a, b."""
    rep = coadjoint_rep(L)
    T = _check_shapes(L, rep, T)
    n = L.dim
    rhos = [_rho_of(rep, T[:, u]) for u in range(n)]
    stars = [_adstar(L, i) for i in range(n)]
    worst = Fraction(0)
    for a in range(n):
        for b in range(n):
            br = rhos[a][:, b] - rhos[b][:, a]
            for i in range(n):
                # T(ad*_x a) paired with b is row b of T applied to column a of ad*_x
                lhs = br[i]
                rhs = T[b, :].dot(stars[i][:, a]) + T[:, a].dot(stars[i][:, b])
                worst = max(worst, abs(lhs - rhs))
    return worst


@dataclass(frozen=True, eq=False)
class T3Form:
    S: object
    eo_residual: object
    coboundary_ok: bool


def t3_form(L, T):
    """The skew form S(a, b) = <T(a), b> as a tensor, with the EO identity check."""
    rep = coadjoint_rep(L)
    T = _check_shapes(L, rep, T)
    if not check_skewness(T):
        raise NotSkew("T is not skew with respect to the dual pairing")
    res = check_ooperator(L, rep, T)
    if res != 0:
        raise NotAnOOperator(f"O-operator residual {res}")
    n = L.dim
    S = tensor2(L, {(a, b): T[b, a] for a in range(n) for b in range(n) if T[b, a] != 0})
    eo = eo_residual(L, T)
    return T3Form(S, eo, eo == 0)


def rmatrix_to_ooperator(L, r):
    """T(alpha) = (alpha (x) id)(r) on g* with the coadjoint action."""
    _require_r_over(L, r)
    require_skew(r)
    n = L.dim
    T = zero_matrix(n, n)
    for (a, b), v in r.items():
        T[b, a] = coerce(v, EXACT)
    return make_ooperator(L, coadjoint_rep(L), T)


def graph_check(L, rep, T, D=None):
    """True iff the graph {(T u, u)} is a subalgebra of g x_rho h."""
    T = _check_shapes(L, rep, T)
    D = D if D is not None else semidirect_product(L, rep)
    n, m = L.dim, rep.module_dim
    lifts = [np.concatenate([T[:, u], np.array([Fraction(int(u == w)) for w in range(m)],
                                                dtype=object)]) for u in range(m)]
    for u in range(m):
        for v in range(u + 1, m):
            z = bracket(D, lifts[u], lifts[v])
            # z = (x, w) lies in the graph iff x = T w
            if any(T.dot(z[n:]) - z[:n]):
                return False
    return True


# --- r^{T_n} ----------------------------------------------------------------


def rtn_algebra(L, rep):
    """The semidirect product g x_{-rho^T} h carrying r^{T_n}."""
    return semidirect_product(L, dual_rep(rep), name=f"{L.name} x| dual({rep.name or 'rho'})")


def ooperator_to_rmatrix(L, rep, T, n, D=None):
    """r^{T_n} = sum_{i<n} T(e_i) (x) e_i - e_i (x) T(e_i) over g x_{-rho^T} h."""
    T = _check_shapes(L, rep, T)
    m = rep.module_dim
    if not 0 <= n <= m:
        raise TruncationTooLarge(f"n = {n} exceeds module dimension {m}")
    D = D if D is not None else rtn_algebra(L, rep)
    off = L.dim
    entries = {}
    for i in range(n):
        for k in range(L.dim):
            c = T[k, i]
            if c != 0:
                entries[(k, off + i)] = entries.get((k, off + i), 0) + c
                entries[(off + i, k)] = entries.get((off + i, k), 0) - c
    return tensor2(D, entries)


def cyb_on_vectors(D, r, u, v):
    """Contract the first two slots of Alt(CYB(r)) with module vectors u, v.

    u and v are coordinates on the module summand of D (its last
    ``D.dim - D.acting_dim`` basis elements), paired through the Euclidean
    inner product.  For skew r, Alt(CYB(r)) = 3 CYB(r).
    """
    if D.acting_dim is None:
        raise SpaceMismatch("cyb_on_vectors needs a semidirect product algebra")
    _require_r_over(D, r)
    off = D.acting_dim
    u, v = as_vector(u), as_vector(v)
    if len(u) != D.dim - off or len(v) != D.dim - off:
        raise DimensionMismatch("module vectors have the wrong length")
    c = alt(cyb(D, r))
    out = zeros(D.dim)
    for (p, q, k), val in c.items():
        if p >= off and q >= off:
            out[k] += u[p - off] * v[q - off] * val
    return out


def truncate(T, n):
    """T_n = T o P_n where P_n projects onto the first n module basis vectors."""
    T = as_matrix(T)
    Tn = T.copy()
    Tn[:, n:] = Fraction(0)
    return Tn


def edo_expression(L, rep, T, u, v, n=None):
    """[T_n u, T_n v] + T_n rho(T_n v) u - T_n rho(T_n u) v (independent expansion)."""
    T = _check_shapes(L, rep, T)
    Tn = truncate(T, rep.module_dim if n is None else n)
    u, v = as_vector(u), as_vector(v)
    Tu, Tv = Tn.dot(u), Tn.dot(v)
    return bracket(L, Tu, Tv) + Tn.dot(_rho_of(rep, Tv).dot(u)) - Tn.dot(_rho_of(rep, Tu).dot(v))


def rtn_series(L, rep, T, u, v, norm=None):
    """Rows (n, ||CYB(r^{T_n})(u, v)||) for n = 1 .. module_dim."""
    T = _check_shapes(L, rep, T)
    D = rtn_algebra(L, rep)
    rows = []
    for n in range(1, rep.module_dim + 1):
        r = ooperator_to_rmatrix(L, rep, T, n, D=D)
        vec = cyb_on_vectors(D, r, u, v)
        size = (norm or D.norm).norm(vec)
        rows.append({"n": n, "value": float(size), "exact_zero": not any(vec)})
    return rows


def random_matrix(rng, rows, cols, max_num=3, max_den=3, density=1.0):
    T = zero_matrix(rows, cols)
    for i in range(rows):
        for j in range(cols):
            if rng.random() <= density:
                T[i, j] = Fraction(int(rng.integers(-max_num, max_num + 1)),
                                   int(rng.integers(1, max_den + 1)))
    return T
