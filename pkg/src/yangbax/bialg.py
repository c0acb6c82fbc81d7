"""Coboundary cobrackets, bialgebra axioms, classification and the Manin double.

Dual spaces are handled through dual bases.  For a cobracket delta the dual
bracket is ``[b^u, b^v] = sum_k delta(b_k)^{uv} b^k``.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InvarianceViolation, JacobiViolation, NotSkew
from .liealg import build_lie_algebra, jacobi_residual
from .report import Timer
from .rmatrix import _require_r_over, cyb, schouten
from .scalars import EXACT, FLOAT
from .tensor import ad_basis, alt, is_skew, make_tensor, sym_part, tensor3

TRIANGULAR = "triangular"
QUASI_TRIANGULAR = "quasi-triangular"
COBOUNDARY_ONLY = "coboundary-only"
NOT_A_BIALGEBRA = "not-a-bialgebra"


@dataclass(frozen=True, eq=False)
class CobracketMap:
    """delta: g -> g (x) g given by its values on the basis."""
    domain: object
    images: tuple

    def image(self, i):
        return self.images[i]

    def of(self, x):
        out = None
        for i, xi in enumerate(x):
            if xi != 0:
                term = self.images[i] * xi
                out = term if out is None else out + term
        return out if out is not None else self.images[0] * 0

    @property
    def mode(self):
        modes = {t.mode for t in self.images if t.mode is not None}
        return modes.pop() if modes else EXACT

    def is_zero(self):
        return all(t.is_zero() for t in self.images)

    def corrupted(self, i, idx, delta_value):
        """Copy with ``delta(b_i)[idx]`` shifted by ``delta_value`` (negative controls)."""
        t = self.images[i]
        bump = make_tensor(t.spaces, {tuple(idx): delta_value})
        images = list(self.images)
        images[i] = t + bump
        return CobracketMap(self.domain, tuple(images))


def _zero(mode):
    return Fraction(0) if mode != FLOAT else 0.0


def coboundary(L, r):
    """delta(x) = ad_x r on each basis element."""
    _require_r_over(L, r)
    return CobracketMap(L, tuple(ad_basis(L, i, r) for i in range(L.dim)))


def check_cocycle(L, delta):
    """Max-entry residual of delta([x,y]) - ad_x delta(y) + ad_y delta(x) over basis pairs."""
    worst = _zero(delta.mode)
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = delta.images[0] * 0
            for k, c in L.bracket_basis(i, j):
                lhs = lhs + delta.images[k] * (c if delta.mode != FLOAT else float(c))
            diff = lhs - ad_basis(L, i, delta.images[j]) + ad_basis(L, j, delta.images[i])
            worst = max(worst, diff.max_entry())
    return worst


def cojacobi_tensor(L, delta, i):
    """(delta (x) id)(delta(b_i)) as an order-3 tensor."""
    acc = {}
    for (a, b), v in delta.images[i].items():
        for (p, q), w in delta.images[a].items():
            acc[(p, q, b)] = acc.get((p, q, b), 0) + v * w
    return tensor3(L, acc, mode=delta.mode)


def check_coalgebra(L, delta):
    """(skew_ok, cojacobi_residual) with co-Jacobi Alt((delta (x) id) delta(x)) = 0."""
    skew_ok = all(is_skew(t) for t in delta.images)
    worst = _zero(delta.mode)
    for i in range(L.dim):
        worst = max(worst, alt(cojacobi_tensor(L, delta, i)).max_entry())
    return skew_ok, worst


def cojacobi_other_slot(L, delta, i):
    """Alt((id (x) delta) delta(b_i)).

    For skew delta this is the negative of the left-slot version, so the two
    co-Jacobi conditions are equivalent.
    """
    acc = {}
    for (a, b), v in delta.images[i].items():
        for (p, q), w in delta.images[b].items():
            acc[(a, p, q)] = acc.get((a, p, q), 0) + v * w
    return alt(tensor3(L, acc, mode=delta.mode))


def dual_table(L, delta):
    """Sparse dual structure constants {(u, v): {k: c}} for u < v."""
    table = {}
    for k, t in enumerate(delta.images):
        for (u, v), c in t.items():
            if u < v:
                table.setdefault((u, v), {})[k] = c
    return table


def dual_bracket(L, delta, validate=True, name=None):
    """The Lie algebra on g* whose bracket is dual to delta.

    Raises :class:`NotSkew` when some delta(b_i) is not skew and, with
    ``validate``, :class:`JacobiViolation` when co-Jacobi fails.
    """
    if not all(is_skew(t) for t in delta.images):
        raise NotSkew("cobracket is not skew-symmetric")
    if delta.mode == FLOAT:
        raise NotImplementedError("dual brackets are built in exact mode")
    rows = [(u, v, k, c) for (u, v), terms in sorted(dual_table(L, delta).items())
            for k, c in sorted(terms.items())]
    return build_lie_algebra(L.dim, rows, norm=L.norm.dual(),
                             labels=[f"{lab}*" for lab in L.basis_labels],
                             name=name or f"{L.name}*", validate=validate)


def dual_jacobi_residual(L, delta):
    """Max |Jacobiator| of the dual bracket over dual-basis triples."""
    D = dual_bracket(L, delta, validate=False)
    fails = jacobi_residual(D.dim, D.structure_constants, stop_at_first=False)
    if not fails:
        return Fraction(0)
    return max(abs(f[4]) for f in fails)


def check_ad_invariant(L, s):
    """max over basis x of the max entry of ad_x s."""
    _require_r_over(L, s)
    worst = _zero(s.mode)
    for i in range(L.dim):
        worst = max(worst, ad_basis(L, i, s).max_entry())
    return worst


# --- classification ---------------------------------------------------------


@dataclass
class BialgebraVerdict:
    skew_ok: bool
    cocycle_residual: object
    cojacobi_residual: object
    dual_jacobi_residual: object
    classification: str
    cyb_residual: object = None
    invariance_residual: object = None
    symmetric_zero: bool = False

    def to_json(self):
        from .report import _plain
        return _plain({
            "skew_ok": self.skew_ok,
            "cocycle_residual": self.cocycle_residual,
            "cojacobi_residual": self.cojacobi_residual,
            "dual_jacobi_residual": self.dual_jacobi_residual,
            "classification": self.classification,
            "cyb_residual": self.cyb_residual,
            "invariance_residual": self.invariance_residual,
            "symmetric_zero": self.symmetric_zero,
        })


def classify_rmatrix(L, r):
    """Classify r as triangular, quasi-triangular, coboundary-only or not-a-bialgebra.

    triangular: skew and CYB(r) = 0.  quasi-triangular: ad-invariant
    symmetric part and CYB(r) = 0.  coboundary-only: CYB(r) != 0 but dr is
    still skew, a cocycle and co-Jacobi.  Anything else is not-a-bialgebra.
    """
    _require_r_over(L, r)
    s = sym_part(r)
    cyb_res = cyb(L, r).max_entry()
    inv_res = check_ad_invariant(L, s)
    delta = coboundary(L, r)
    cocycle = check_cocycle(L, delta)
    skew_ok, cojacobi = check_coalgebra(L, delta)
    dual_res = dual_jacobi_residual(L, delta) if skew_ok and r.mode != FLOAT else None
    if cyb_res == 0 and s.is_zero():
        tag = TRIANGULAR
    elif cyb_res == 0 and inv_res == 0:
        tag = QUASI_TRIANGULAR
    elif skew_ok and cocycle == 0 and cojacobi == 0:
        tag = COBOUNDARY_ONLY
    else:
        tag = NOT_A_BIALGEBRA
    return BialgebraVerdict(skew_ok, cocycle, cojacobi, dual_res, tag,
                            cyb_residual=cyb_res, invariance_residual=inv_res,
                            symmetric_zero=s.is_zero())


# --- Schouten / dual-Jacobi relations ----------------------------------------


def ad_schouten_residual(L, a):
    """max over basis x of the max entry of ad_x [[a,a]]."""
    sch = schouten(L, a)
    worst = _zero(a.mode)
    for i in range(L.dim):
        worst = max(worst, ad_basis(L, i, sch).max_entry())
    return worst


def _jacobiator(table, u, v, w):
    """[[b^u,b^v],b^w] + cyclic, as a sparse dict over the dual basis."""

    def br(x, y):
        if x == y:
            return {}
        if x < y:
            return table.get((x, y), {})
        return {k: -c for k, c in table.get((y, x), {}).items()}

    out = {}
    for p, q, t in ((u, v, w), (v, w, u), (w, u, v)):
        for m, c in br(p, q).items():
            for k, c2 in br(m, t).items():
                out[k] = out.get(k, 0) + c * c2
    return out


def jcb_residual(L, a):
    """Max residual of <al (x) be (x) ga, ad_x [[a,a]]> = 2 <cyclic [[al,be],ga], x>.

    The right side is twice the Jacobiator of the dual bracket of da,
    evaluated at x; checked on all dual-basis triples and basis x.
    """
    _require_r_over(L, a)
    sch = schouten(L, a)
    table = dual_table(L, coboundary(L, a))
    worst = _zero(a.mode)
    n = L.dim
    ads = [ad_basis(L, i, sch) for i in range(n)]
    for u in range(n):
        for v in range(n):
            for w in range(n):
                jac = _jacobiator(table, u, v, w)
                for i in range(n):
                    lhs = ads[i].get((u, v, w))
                    rhs = 2 * jac.get(i, 0)
                    worst = max(worst, abs(lhs - rhs))
    return worst


def jk_sides(L, a):
    """(dual Jacobi residual of da, ad-residual of [[a,a]]) for skew a."""
    return dual_jacobi_residual(L, coboundary(L, a)), ad_schouten_residual(L, a)


# --- Manin double -----------------------------------------------------------


def exact_rank(m):
    """Rank of a rational matrix by fraction-exact Gaussian elimination."""
    rows = [[Fraction(x) for x in row] for row in np.asarray(m, dtype=object)]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


@dataclass(frozen=True, eq=False)
class ManinDouble:
    double: object
    form_S: np.ndarray
    base: object
    dual: object
    checks: dict = field(default_factory=dict)


def _hyperbolic(n):
    S = np.array([[Fraction(0)] * (2 * n) for _ in range(2 * n)], dtype=object)
    for i in range(n):
        S[i, n + i] = Fraction(1)
        S[n + i, i] = Fraction(1)
    return S


def invariance_residual(D, S):
    """max |S([u,v],w) - S(u,[v,w])| over basis triples."""
    n = D.dim
    worst = Fraction(0)
    for u in range(n):
        for v in range(n):
            uv = D.bracket_basis(u, v)
            for w in range(n):
                lhs = sum((c * S[k, w] for k, c in uv), Fraction(0))
                rhs = sum((c * S[u, k] for k, c in D.bracket_basis(v, w)), Fraction(0))
                worst = max(worst, abs(lhs - rhs))
    return worst


def manin_double(L, delta, name=None):
    """g + g* with the double bracket and the pairing S(x+a, y+b) = a(y) + b(x).

    Mixed brackets: [b_i, b^a] = -b^a o ad_{b_i} + (b^a (x) id) delta(b_i),
    completed by antisymmetry; [g*, g*] is the dual bracket.
    """
    if delta.mode == FLOAT:
        raise NotImplementedError("the double is built in exact mode")
    with Timer() as timer:
        dual = dual_bracket(L, delta)
        n = L.dim
        table = {}
        for (i, j), terms in L.structure_constants.items():
            if i < j:
                table[(i, j)] = list(terms)
        for (u, v), terms in dual.structure_constants.items():
            if u < v:
                table[(n + u, n + v)] = [(n + k, c) for k, c in terms]
        for i in range(n):
            for a in range(n):
                terms = {}
                # -b^a o ad_{b_i} = sum_k -c_{ik}^a b^k
                for k in range(n):
                    for m, c in L.bracket_basis(i, k):
                        if m == a:
                            terms[n + k] = terms.get(n + k, 0) - c
                for (p, k), c in delta.images[i].items():
                    if p == a:
                        terms[k] = terms.get(k, 0) + c
                terms = [(k, c) for k, c in sorted(terms.items()) if c != 0]
                if terms:
                    table[(i, n + a)] = terms
        labels = tuple(L.basis_labels) + tuple(dual.basis_labels)
        D = build_lie_algebra(2 * n, table, norm="euclidean", labels=labels,
                              name=name or f"D({L.name})", validate=False)
        bad = jacobi_residual(D.dim, D.structure_constants)
        if bad is not None:
            raise JacobiViolation(*bad)
        S = _hyperbolic(n)
        inv = invariance_residual(D, S)
        if inv != 0:
            raise InvarianceViolation(f"S is not invariant (residual {inv})")
        rank = exact_rank(S)
        iso_g = not any(S[i, j] for i in range(n) for j in range(n))
        iso_d = not any(S[n + i, n + j] for i in range(n) for j in range(n))
    checks = {
        "jacobi": True,
        "invariance_residual": inv,
        "rank": rank,
        "nondegenerate": rank == 2 * n,
        "g_isotropic": iso_g,
        "dual_isotropic": iso_d,
        "lagrangian": iso_g and iso_d and 2 * n == rank,
        "wall_time_ms": timer.elapsed_ms,
    }
    return ManinDouble(D, S, L, dual, checks)


__all__ = [
    "CobracketMap", "coboundary", "check_cocycle", "check_coalgebra", "cojacobi_tensor",
    "cojacobi_other_slot", "dual_bracket", "dual_table", "dual_jacobi_residual",
    "check_ad_invariant", "BialgebraVerdict", "classify_rmatrix", "ad_schouten_residual",
    "jcb_residual", "jk_sides", "ManinDouble", "manin_double", "exact_rank",
    "invariance_residual", "TRIANGULAR", "QUASI_TRIANGULAR", "COBOUNDARY_ONLY",
    "NOT_A_BIALGEBRA",
]
