"""Structure-constant Lie algebras, (co)adjoint actions and constructions.

Structure constants are exact rationals stored sparsely: ``structure[(i, j)]``
is a tuple of ``(k, c)`` pairs with ``[b_i, b_j] = sum c b_k``.  Only nonzero
brackets are stored, and both orderings ``(i, j)`` and ``(j, i)`` are present.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from types import MappingProxyType

import numpy as np

from .errors import (
    AntisymmetryViolation,
    DimensionMismatch,
    EmptyList,
    IndexOutOfRange,
    InvalidRepresentation,
    JacobiViolation,
)
from .norms import NormSpec, make_norm, max_norm, sum_norm
from .scalars import EXACT, FLOAT, as_vector, coerce, merge_modes, vector_mode, zeros

# exhaustive Jacobi validation above this dimension is skipped for families
# whose structure constants come from a trusted closed form (gl truncations)
TRUSTED_VALIDATION_DIM = 16


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    dim: int
    basis_labels: tuple
    structure_constants: MappingProxyType
    norm: NormSpec
    continuity_constant: float
    basis_witness: float
    name: str = ""
    # direct-sum bookkeeping: (offset, summand) pairs and weights
    summands: tuple = ()
    weights: tuple = ()
    # semidirect bookkeeping: dimension of the acting algebra, or None
    acting_dim: int = None
    matrix_basis: tuple = field(default=(), repr=False)

    def __repr__(self):
        return f"LieAlgebra({self.name or 'unnamed'}, dim={self.dim}, norm={self.norm.kind})"

    def bracket_basis(self, i, j):
        return self.structure_constants.get((i, j), ())

    def same_as(self, other):
        return self is other or (
            isinstance(other, LieAlgebra)
            and self.dim == other.dim
            and dict(self.structure_constants) == dict(other.structure_constants)
        )

    def vector_norm(self, x):
        return self.norm.norm(x)

    def label(self, i):
        return self.basis_labels[i]

    def index(self, label):
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise IndexOutOfRange(f"no basis element {label!r} in {self.name}") from None

    def unit(self, i, mode=EXACT):
        if not 0 <= i < self.dim:
            raise IndexOutOfRange(f"basis index {i} out of range for dim {self.dim}")
        v = zeros(self.dim, mode)
        v[i] = coerce(1, mode)
        return v

    def vec(self, **coeffs):
        """Coefficient vector from basis labels, e.g. ``L.vec(e=1, h=-2)``."""
        v = zeros(self.dim)
        for lab, c in coeffs.items():
            v[self.index(lab)] += Fraction(c)
        return v


def _normalize_table(dim, table):
    """Turn rows ``(i, j, k, c)`` or a mapping into a full antisymmetric dict."""
    if isinstance(table, dict) or hasattr(table, "items"):
        rows = []
        for (i, j), terms in table.items():
            for k, c in terms:
                rows.append((i, j, k, c))
    else:
        rows = list(table)

    given = {}
    for i, j, k, c in rows:
        for idx in (i, j, k):
            if not (isinstance(idx, (int, np.integer)) and 0 <= idx < dim):
                raise IndexOutOfRange(f"index {idx} out of range for dim {dim}")
        c = coerce(c, EXACT)
        given.setdefault((int(i), int(j)), {})
        given[(int(i), int(j))][int(k)] = given[(int(i), int(j))].get(int(k), 0) + c

    full = {}
    for (i, j), terms in given.items():
        if i == j:
            for k, c in terms.items():
                if c != 0:
                    raise AntisymmetryViolation(i, j, k)
            continue
        other = given.get((j, i))
        for k in set(terms) | set(other or {}):
            c = terms.get(k, 0)
            if other is not None and other.get(k, 0) != -c:
                raise AntisymmetryViolation(i, j, k)
            if c != 0:
                full.setdefault((i, j), {})[k] = c
                full.setdefault((j, i), {})[k] = -c
    return MappingProxyType(
        {key: tuple(sorted(terms.items())) for key, terms in sorted(full.items())}
    )


def _bracket_sparse(structure, x, y):
    """Bracket of sparse dict vectors {index: coeff}."""
    out = {}
    for i, xi in x.items():
        for j, yj in y.items():
            for k, c in structure.get((i, j), ()):
                out[k] = out.get(k, 0) + c * xi * yj
    return {k: v for k, v in out.items() if v != 0}


def jacobi_residual(dim, structure, stop_at_first=True):
    """Return the first (i, j, k, l, value) Jacobi failure or ``None``."""
    failures = []
    for i, j, k in combinations(range(dim), 3):
        acc = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for m, cab in structure.get((a, b), ()):
                for l, cmc in structure.get((m, c), ()):
                    acc[l] = acc.get(l, 0) + cab * cmc
        for l in sorted(acc):
            if acc[l] != 0:
                if stop_at_first:
                    return (i, j, k, l, acc[l])
                failures.append((i, j, k, l, acc[l]))
    return failures or None


def _continuity(dim, structure, norm):
    """Certified constant C with ||[x,y]|| <= C ||x|| ||y||, plus basis witness."""
    if dim == 0 or not structure:
        return 0.0, 0.0
    basis_norms = [norm.norm(np.eye(dim)[i]) for i in range(dim)]
    witness = 0.0
    max_basis_bracket = 0.0
    for (i, j), terms in structure.items():
        v = np.zeros(dim)
        for k, c in terms:
            v[k] = float(c)
        nb = norm.norm(v)
        max_basis_bracket = max(max_basis_bracket, nb)
        witness = max(witness, nb / (basis_norms[i] * basis_norms[j]))

    kind = norm.kind
    if kind == "l1":
        bound = max_basis_bracket
    elif kind == "sup":
        rows = np.zeros(dim)
        for terms in structure.values():
            for k, c in terms:
                rows[k] += abs(float(c))
        bound = float(rows.max())
    elif kind == "euclidean":
        # operator norm of the n x n^2 matricization, through M M^T
        gram = np.zeros((dim, dim))
        for terms in structure.values():
            ks = [k for k, _ in terms]
            cs = np.array([float(c) for _, c in terms])
            gram[np.ix_(ks, ks)] += np.outer(cs, cs)
        bound = float(np.sqrt(max(np.linalg.eigvalsh(gram).max(), 0.0)))
    else:
        kappa = norm.l1_factor(dim)
        bound = max_basis_bracket * kappa * kappa
    bound *= 1 + 1e-12
    return max(bound, witness), witness


def build_lie_algebra(dim, table, norm="euclidean", labels=None, name="",
                      validate=True, **extra):
    """Validate a structure-constant table and return a :class:`LieAlgebra`.

    ``table`` is either an iterable of ``(i, j, k, c)`` rows or a mapping
    ``(i, j) -> [(k, c), ...]``.  Omitted pairs are zero.  When both orderings
    of a pair are given they must be antisymmetric.
    """
    if not isinstance(dim, (int, np.integer)) or dim < 1:
        raise DimensionMismatch(f"dimension must be a positive integer, got {dim!r}")
    labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(dim))
    if len(labels) != dim:
        raise DimensionMismatch(f"{len(labels)} labels for dimension {dim}")
    structure = _normalize_table(dim, table)
    if validate:
        bad = jacobi_residual(dim, structure)
        if bad is not None:
            raise JacobiViolation(*bad)
    matrices = extra.pop("matrix_basis", ())
    if isinstance(norm, str):
        norm = make_norm(norm, dim, matrices=matrices or None)
    if norm.dim is not None and norm.dim != dim:
        raise DimensionMismatch(f"norm is defined on dimension {norm.dim}, algebra has {dim}")
    cont = extra.pop("continuity", None)
    constant, witness = _continuity(dim, structure, norm)
    if cont is not None:
        constant = max(min(constant, cont), witness)
    return LieAlgebra(dim, labels, structure, norm, constant, witness, name=name,
                      matrix_basis=tuple(matrices), **extra)


def _check_dims(L, *vectors):
    for v in vectors:
        if len(v) != L.dim:
            raise DimensionMismatch(f"vector of length {len(v)} for algebra of dim {L.dim}")


def bracket(L, x, y):
    """Lie bracket of two coefficient vectors."""
    _check_dims(L, x, y)
    x, y = as_vector(x), as_vector(y)
    mode = merge_modes(vector_mode(x), vector_mode(y)) or EXACT
    out = zeros(L.dim, mode)
    for (i, j), terms in L.structure_constants.items():
        xi, yj = x[i], y[j]
        if xi == 0 or yj == 0:
            continue
        for k, c in terms:
            out[k] += coerce(c, mode) * xi * yj
    return out


def ad_matrix(L, i, mode=EXACT):
    """Matrix of ad_{b_i}; column j holds the coordinates of [b_i, b_j]."""
    if not 0 <= i < L.dim:
        raise IndexOutOfRange(f"basis index {i} out of range for dim {L.dim}")
    m = np.array([[coerce(0, mode)] * L.dim for _ in range(L.dim)], dtype=object)
    for j in range(L.dim):
        for k, c in L.bracket_basis(i, j):
            m[k, j] = coerce(c, mode)
    return m if mode == EXACT else m.astype(float)


def coad_matrix(L, i, mode=EXACT):
    """Coadjoint action ``alpha -> -alpha o ad_{b_i}`` on dual coordinates."""
    return -ad_matrix(L, i, mode).T


def ad_of(L, x):
    """ad_x for a general coefficient vector x."""
    x = as_vector(x)
    mode = vector_mode(x) or EXACT
    m = np.array([[coerce(0, mode)] * L.dim for _ in range(L.dim)], dtype=object)
    for (i, j), terms in L.structure_constants.items():
        if x[i] == 0:
            continue
        for k, c in terms:
            m[k, j] += coerce(c, mode) * x[i]
    return m if mode == EXACT else m.astype(float)


# --- representations --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Representation:
    algebra: LieAlgebra
    module_dim: int
    action: tuple
    module_norm: NormSpec = field(default_factory=lambda: NormSpec("euclidean"))
    name: str = ""

    def matrix(self, i):
        return self.action[i]

    def of(self, x):
        """rho(x) for a general coefficient vector x."""
        x = as_vector(x)
        out = np.array([[Fraction(0)] * self.module_dim for _ in range(self.module_dim)],
                       dtype=object)
        for i, xi in enumerate(x):
            if xi != 0:
                out = out + xi * self.action[i]
        return out


def _exact_matrix(m, shape):
    arr = np.asarray(m, dtype=object)
    if arr.shape != shape:
        raise DimensionMismatch(f"expected action matrix of shape {shape}, got {arr.shape}")
    return np.array([[coerce(v, EXACT) for v in row] for row in arr], dtype=object)


def homomorphism_residual(L, action):
    """Max |rho([b_i,b_j]) - [rho(b_i), rho(b_j)]| over all basis pairs."""
    worst = Fraction(0)
    m = action[0].shape[0] if action else 0
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = np.array([[Fraction(0)] * m for _ in range(m)], dtype=object)
            for k, c in L.bracket_basis(i, j):
                lhs = lhs + c * action[k]
            rhs = action[i].dot(action[j]) - action[j].dot(action[i])
            diff = lhs - rhs
            if diff.size:
                worst = max(worst, max(abs(v) for v in diff.ravel()))
    return worst


def build_representation(L, action, module_norm="euclidean", name=""):
    """Validate ``action`` (one square matrix per basis element) as a representation."""
    if len(action) != L.dim:
        raise InvalidRepresentation(f"{len(action)} action matrices for algebra of dim {L.dim}")
    m = np.asarray(action[0], dtype=object).shape[0] if L.dim else 0
    if m < 1:
        raise InvalidRepresentation("module dimension must be positive")
    try:
        mats = tuple(_exact_matrix(a, (m, m)) for a in action)
    except DimensionMismatch as exc:
        raise InvalidRepresentation(str(exc)) from None
    if homomorphism_residual(L, mats) != 0:
        raise InvalidRepresentation("rho([x,y]) != [rho(x), rho(y)]")
    return Representation(L, m, mats, make_norm(module_norm), name=name)


def adjoint_rep(L):
    return Representation(L, L.dim, tuple(ad_matrix(L, i) for i in range(L.dim)),
                          L.norm, name="adjoint")


def coadjoint_rep(L):
    """The coadjoint representation -ad* on the dual space."""
    return Representation(L, L.dim, tuple(coad_matrix(L, i) for i in range(L.dim)),
                          L.norm.dual(), name="coadjoint")


def dual_rep(R):
    """The dual representation -rho^T (Euclidean self-duality of the module)."""
    return Representation(R.algebra, R.module_dim, tuple(-a.T for a in R.action),
                          R.module_norm.dual(), name=f"dual({R.name})")


def zero_rep(L, m):
    z = np.array([[Fraction(0)] * m for _ in range(m)], dtype=object)
    return Representation(L, m, tuple(z.copy() for _ in range(L.dim)), name="zero")


# --- constructions ----------------------------------------------------------


def semidirect_product(L, R, name=None):
    """g x_rho h with [x+u, y+v] = [x,y] + rho(x)v - rho(y)u and the sum norm."""
    if not L.same_as(R.algebra) or len(R.action) != L.dim:
        raise InvalidRepresentation("representation belongs to a different algebra")
    if homomorphism_residual(L, R.action) != 0:
        raise InvalidRepresentation("rho([x,y]) != [rho(x), rho(y)]")
    n, m = L.dim, R.module_dim
    table = {}
    for key, terms in L.structure_constants.items():
        table[key] = list(terms)
    for i in range(n):
        for a in range(m):
            col = [(n + c, R.action[i][c, a]) for c in range(m) if R.action[i][c, a] != 0]
            if col:
                table[(i, n + a)] = col
    labels = tuple(L.basis_labels) + tuple(f"u{a}" for a in range(m))
    norm = sum_norm([(0, n, L.norm), (n, m, R.module_norm)])
    return build_lie_algebra(n + m, table, norm=norm, labels=labels,
                             name=name or f"{L.name} x| {R.name or 'rho'}",
                             acting_dim=n)


def direct_sum(Ls, weights=None, name=None):
    """Componentwise direct sum with the sup-over-summands norm."""
    Ls = list(Ls)
    if not Ls:
        raise EmptyList("direct_sum needs at least one summand")
    weights = tuple(Fraction(1) for _ in Ls) if weights is None else tuple(weights)
    if len(weights) != len(Ls):
        raise DimensionMismatch("one weight per summand required")
    table, labels, parts, summands = {}, [], [], []
    off = 0
    for s, L in enumerate(Ls):
        for (i, j), terms in L.structure_constants.items():
            table[(off + i, off + j)] = [(off + k, c) for k, c in terms]
        labels.extend(f"{lab}_{s}" for lab in L.basis_labels)
        parts.append((off, L.dim, L.norm))
        summands.append((off, L))
        off += L.dim
    return build_lie_algebra(
        off, table, norm=max_norm(parts), labels=labels,
        name=name or " + ".join(L.name or "L" for L in Ls),
        validate=off <= TRUSTED_VALIDATION_DIM,
        continuity=max(L.continuity_constant for L in Ls),
        summands=tuple(summands), weights=weights,
    )


def matrix_unit(N, i, j):
    m = np.zeros((N, N))
    m[i, j] = 1.0
    return m


@lru_cache(maxsize=None)
def gl_truncation(N, norm="euclidean"):
    """gl(N) with basis E_ij (index i*N + j) and [E_ij,E_kl] = d_jk E_il - d_li E_kj."""
    if N < 1:
        raise DimensionMismatch("N must be at least 1")
    table = {}
    for i in range(N):
        for j in range(N):
            for k in range(N):
                for l in range(N):
                    terms = {}
                    if j == k:
                        terms[i * N + l] = terms.get(i * N + l, 0) + 1
                    if l == i:
                        terms[k * N + j] = terms.get(k * N + j, 0) - 1
                    terms = [(key, c) for key, c in terms.items() if c != 0]
                    if terms and (i * N + j) < (k * N + l):
                        table[(i * N + j, k * N + l)] = terms
    labels = [f"E{i}{j}" if N <= 10 else f"E{i}_{j}" for i in range(N) for j in range(N)]
    mats = tuple(matrix_unit(N, i, j) for i in range(N) for j in range(N))
    return build_lie_algebra(
        N * N, table, norm=norm, labels=labels, name=f"gl({N})",
        validate=N * N <= TRUSTED_VALIDATION_DIM,
        matrix_basis=mats,
        # commutators of matrices obey ||XY - YX|| <= 2||X|| ||Y|| in operator norm
        continuity=2.0 if norm == "operator" else None,
    )


def sl2(norm="euclidean"):
    """sl(2) on (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    return build_lie_algebra(3, [(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)],
                             norm=norm, labels=("h", "e", "f"), name="sl2")


def aff1(norm="euclidean"):
    """The 2-dim nonabelian algebra aff(1): [x, y] = y."""
    return build_lie_algebra(2, [(0, 1, 1, 1)], norm=norm, labels=("x", "y"), name="aff1")


def abelian(n, norm="euclidean"):
    return build_lie_algebra(n, [], norm=norm, labels=[f"a{i}" for i in range(n)],
                             name=f"abelian{n}")


def structure_tensor(L, mode=FLOAT):
    """Dense array C[i, j, k] of structure constants (oracle use)."""
    if mode == FLOAT:
        C = np.zeros((L.dim,) * 3)
    else:
        C = np.full((L.dim,) * 3, Fraction(0), dtype=object)
    for (i, j), terms in L.structure_constants.items():
        for k, c in terms:
            C[i, j, k] = coerce(c, mode)
    return C
