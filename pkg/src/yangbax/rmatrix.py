"""Classical Yang-Baxter operator, algebraic Schouten bracket and r-matrix families.

All exact computations are carried out over integers: entries of ``r`` and the
structure constants are scaled to a common denominator, the quadratic
expansions run on Python ints, and the result is divided back at the end.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np

from .errors import ComponentNotRMatrix, DimensionMismatch, NotSkewSymmetric, SpaceMismatch
from .liealg import aff1, direct_sum, gl_truncation, structure_tensor
from .pnorm import projective_upper
from .report import FAIL, PASS, Report, Timer, verdict_of
from .scalars import EXACT, FLOAT, half
from .tensor import basis_wedge, is_skew, make_tensor, tensor2, tensor3

FLOAT_TOL = 1e-12


# --- integer scaling --------------------------------------------------------


def _common_denominator(values):
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


@lru_cache(maxsize=128)
def _scaled_structure(L):
    """(partners, S): partners[i] = [(j, ((k, S*c), ...)), ...] over ints."""
    S = _common_denominator(c for terms in L.structure_constants.values() for _, c in terms)
    partners = [[] for _ in range(L.dim)]
    for (i, j), terms in L.structure_constants.items():
        partners[i].append((j, tuple((k, int(c * S)) for k, c in terms)))
    return partners, S


@lru_cache(maxsize=128)
def _float_structure(L):
    partners = [[] for _ in range(L.dim)]
    for (i, j), terms in L.structure_constants.items():
        partners[i].append((j, tuple((k, float(c)) for k, c in terms)))
    return partners


def _prepare(L, r):
    """Scaled entries, structure partners and the final divisor for r's mode."""
    if r.mode == FLOAT:
        return dict(r.items()), _float_structure(L), 1, FLOAT
    D = _common_denominator(r.entries.values())
    partners, S = _scaled_structure(L)
    return {k: int(v * D) for k, v in r.items()}, partners, D * D * S, EXACT


def _finish(L, acc, divisor, mode):
    if mode == EXACT:
        entries = {k: Fraction(v, divisor) for k, v in acc.items() if v != 0}
    else:
        entries = acc
    return tensor3(L, entries, mode=mode)


def _require_r_over(L, r):
    if r.order != 2 or not all(L.same_as(S) for S in r.spaces):
        raise SpaceMismatch("r must be a tensor over L (x) L")


def require_skew(r):
    if not is_skew(r):
        raise NotSkewSymmetric("tensor is not skew-symmetric")


# --- CYB --------------------------------------------------------------------


def cyb(L, r):
    """CYB(r) = [r12,r13] + [r13,r23] + [r12,r23] as an order-3 tensor.

    For r = sum r^{ab} b_a (x) b_b this is
    sum r^{ab} r^{cd} ([b_a,b_c] (x) b_b (x) b_d + b_a (x) [b_b,b_c] (x) b_d
    + b_a (x) b_c (x) [b_b,b_d]).
    """
    _require_r_over(L, r)
    entries, partners, divisor, mode = _prepare(L, r)
    rows, cols = {}, {}
    for (a, b), v in entries.items():
        rows.setdefault(a, []).append((b, v))
        cols.setdefault(b, []).append((a, v))
    acc = {}
    # [b_a, b_c] (x) b_b (x) b_d
    for a, row_a in rows.items():
        for c, terms in partners[a]:
            row_c = rows.get(c)
            if row_c is None:
                continue
            for b, v in row_a:
                for d, w in row_c:
                    vw = v * w
                    for k, coef in terms:
                        key = (k, b, d)
                        acc[key] = acc.get(key, 0) + coef * vw
    for (a, b), v in entries.items():
        # b_a (x) [b_b, b_c] (x) b_d
        for c, terms in partners[b]:
            for d, w in rows.get(c, ()):
                vw = v * w
                for k, coef in terms:
                    key = (a, k, d)
                    acc[key] = acc.get(key, 0) + coef * vw
        # b_a (x) b_c (x) [b_b, b_d]
        for d, terms in partners[b]:
            for c, w in cols.get(d, ()):
                vw = v * w
                for k, coef in terms:
                    key = (a, c, k)
                    acc[key] = acc.get(key, 0) + coef * vw
    return _finish(L, acc, divisor, mode)


def cyb_dense(L, r):
    """Naive dense oracle for :func:`cyb` (einsum over the full index space)."""
    _require_r_over(L, r)
    mode = r.mode or EXACT
    C = structure_tensor(L, mode)
    R = r.to_dense(mode)
    out = (np.einsum("ack,ab,cd->kbd", C, R, R)
           + np.einsum("ab,bck,cd->akd", R, C, R)
           + np.einsum("ab,cd,bdk->ack", R, R, C))
    entries = {idx: v for idx, v in np.ndenumerate(out) if v != 0}
    return tensor3(L, entries, mode=mode)


# --- Schouten bracket -------------------------------------------------------


def schouten(L, a, verify=True):
    """Algebraic Schouten bracket [[a,a]] of a skew tensor a = sum a^{pq} b_p (x) b_q.

    [[a,a]] = -2 sum a^{pq} a^{st} ([b_q,b_t] (x) b_p (x) b_s
              + b_s (x) [b_q,b_t] (x) b_p + b_p (x) b_s (x) [b_q,b_t]).

    With ``verify`` the result is compared with the dual characterization
    <al (x) be (x) ga, [[a,a]]> = -2 cyclic <al, [a(be), a(ga)]> on every
    dual-basis triple; a mismatch raises ``ArithmeticError``.
    """
    _require_r_over(L, a)
    require_skew(a)
    entries, partners, divisor, mode = _prepare(L, a)
    cols = {}
    for (p, q), v in entries.items():
        cols.setdefault(q, []).append((p, v))
    acc = {}
    for q, col_q in cols.items():
        for t, terms in partners[q]:
            col_t = cols.get(t)
            if col_t is None:
                continue
            for p, v in col_q:
                for s, w in col_t:
                    vw = -2 * v * w
                    for k, coef in terms:
                        x = coef * vw
                        for key in ((k, p, s), (s, k, p), (p, s, k)):
                            acc[key] = acc.get(key, 0) + x
    result = _finish(L, acc, divisor, mode)
    if verify:
        diff = result - schouten_dual(L, a)
        tol = None if mode == EXACT else FLOAT_TOL * max(1.0, float(result.max_entry()))
        if not diff.is_zero(tol):
            raise ArithmeticError(f"Schouten dual characterization mismatch {diff.max_entry()}")
    return result


def schouten_dual(L, a):
    """[[a,a]] from its dual characterization, entry by entry."""
    _require_r_over(L, a)
    entries, partners, divisor, mode = _prepare(L, a)
    n = L.dim
    rows = {}
    for (p, q), v in entries.items():
        rows.setdefault(p, {})[q] = v
    # P[(v, w)][u] = <b^u, [a(b^v), a(b^w)]>
    P = {}
    for v, rv in rows.items():
        for w, rw in rows.items():
            out = {}
            for i, x in rv.items():
                for j, terms in partners[i]:
                    y = rw.get(j)
                    if y is None:
                        continue
                    for k, coef in terms:
                        out[k] = out.get(k, 0) + coef * x * y
            P[(v, w)] = out

    def pair(u, v, w):
        return P.get((v, w), {}).get(u, 0)

    acc = {}
    for u in range(n):
        for v in range(n):
            for w in range(n):
                val = pair(u, v, w) + pair(v, w, u) + pair(w, u, v)
                if val != 0:
                    acc[(u, v, w)] = -2 * val
    return _finish(L, acc, divisor, mode)


def check_stcy(L, a, verify=True):
    """Residual of CYB(a) + 1/2 [[a,a]] for a skew tensor a."""
    _require_r_over(L, a)
    require_skew(a)
    with Timer() as timer:
        c = cyb(L, a)
        s = schouten(L, a, verify=False)
        residual = c + s * half(a.mode)
        residuals = {"stcy": residual.max_entry()}
        if verify:
            residuals["schouten_dual"] = (s - schouten_dual(L, a)).max_entry()
        if a.mode == FLOAT:
            ok = all(float(v) <= FLOAT_TOL for v in residuals.values())
        else:
            ok = all(v == 0 for v in residuals.values())
    return Report("stcy", verdict_of(ok), residuals,
                  payload={"cyb_max": c.max_entry(), "schouten_max": s.max_entry()},
                  wall_time_ms=timer.elapsed_ms)


# --- Example families -------------------------------------------------------


def _diag(N1, i):
    return i * N1 + i


def _unit_index(N1, i, j):
    return i * N1 + j


def default_e1_coeff(i):
    return Fraction(1, 2 ** (i + 1))


def gen_example_e1(N, coeffs=None, norm="euclidean"):
    """sum_{i<N} a_i (E_ii (x) E_{i+1,i+1} - E_{i+1,i+1} (x) E_ii) over gl(N+1)."""
    if N < 1:
        raise DimensionMismatch("N must be at least 1")
    if coeffs is None:
        coeffs = default_e1_coeff
    get = coeffs if callable(coeffs) else (lambda i: coeffs[i])
    G = gl_truncation(N + 1, norm)
    entries = {}
    for i in range(N):
        a = get(i)
        entries[(_diag(N + 1, i), _diag(N + 1, i + 1))] = a
        entries[(_diag(N + 1, i + 1), _diag(N + 1, i))] = -a
    return tensor2(G, entries)


def default_e2_rule(i, j):
    return Fraction(1, 2 ** j - 2 ** i)


E2_RULES = {
    "default": default_e2_rule,
    "constant": lambda i, j: Fraction(1),
    "zero": lambda i, j: Fraction(0),
}


def e2_rule(rule):
    if callable(rule):
        return rule
    if rule is None:
        return default_e2_rule
    try:
        return E2_RULES[rule]
    except KeyError:
        raise ValueError(f"unknown E2 rule {rule!r}; expected one of {sorted(E2_RULES)}") from None


def gen_example_e2(N, rule="default", norm="euclidean"):
    """sum_{i<j<=N} a_ij (E_ij (x) E_ji - E_ji (x) E_ij) over gl(N+1).

    The printed formula has E_ji (x) E_ji in the second term, which is not
    skew; the skew reading is used here.
    """
    if N < 1:
        raise DimensionMismatch("N must be at least 1")
    rule = e2_rule(rule)
    N1 = N + 1
    G = gl_truncation(N1, norm)
    entries = {}
    for j in range(N1):
        for i in range(j):
            a = rule(i, j)
            entries[(_unit_index(N1, i, j), _unit_index(N1, j, i))] = a
            entries[(_unit_index(N1, j, i), _unit_index(N1, i, j))] = -a
    return tensor2(G, entries)


def check_e2_cocycle(rule, N):
    """a_ij a_jk == a_ik a_ij + a_jk a_ik for all 0 <= i < j < k <= N."""
    rule = e2_rule(rule)
    with Timer() as timer:
        worst, first = Fraction(0), None
        for k in range(N + 1):
            for j in range(k):
                for i in range(j):
                    aij, ajk, aik = rule(i, j), rule(j, k), rule(i, k)
                    diff = aij * ajk - (aik * aij + ajk * aik)
                    if diff != 0 and first is None:
                        first = (i, j, k)
                    worst = max(worst, abs(diff))
    payload = {"N": N}
    if first is not None:
        payload["first_failure"] = list(first)
    return Report("e2-cocycle", verdict_of(worst == 0), {"cocycle": worst},
                  payload=payload, wall_time_ms=timer.elapsed_ms)


def gen_example_e3(components, name=None):
    """Block-diagonal weighted sum of r-matrices over the direct sum.

    ``components`` is a list of ``(L_i, r_i, a_i)``; each r_i must be skew
    with CYB(r_i) = 0.
    """
    components = list(components)
    for s, (L, r, _) in enumerate(components):
        _require_r_over(L, r)
        if not is_skew(r) or not cyb(L, r).is_zero(None if r.mode != FLOAT else FLOAT_TOL):
            raise ComponentNotRMatrix(f"component {s} is not a triangular r-matrix")
    D = direct_sum([L for L, _, _ in components], [w for _, _, w in components], name=name)
    entries = {}
    for (off, _), (_, r, w) in zip(D.summands, components):
        for (i, j), v in r.items():
            if w != 0:
                entries[(off + i, off + j)] = w * v
    return tensor2(D, entries)


def e3_demo():
    """Two aff(1) blocks carrying x^y with weights (1, 1/2)."""
    A = aff1()
    r = basis_wedge(A, 0, 1)
    return gen_example_e3([(A, r, Fraction(1)), (A, r, Fraction(1, 2))], name="e3-demo")


# --- truncation families ----------------------------------------------------


def _e2_tail(N, rule, M):
    """Upper bound on ||r - r_N|| under unit-norm E_ij.

    Exact partial sum 2 sum_{N<j<=M} sum_{i<j} |a_ij|, plus for the default
    rule the closed-form remainder 2 sum_{j>M} 2j/2^j = 4(M+2)/2^M, using
    2^j - 2^i >= 2^(j-1).
    """
    if rule is default_e2_rule:
        part = sum((abs(rule(i, j)) for j in range(N + 1, M + 1) for i in range(j)), Fraction(0))
        return float(2 * part + Fraction(4 * (M + 2), 2 ** M))
    if rule is E2_RULES["zero"]:
        return 0.0
    if rule is E2_RULES["constant"]:
        return float("inf")
    return None


@dataclass
class RMatrixFamily:
    """A sequence of truncated r-matrices r_N with certified tail bounds.

    generator is one of ``E1``, ``E2``, ``E3`` or ``explicit``.  ``params``
    holds ``coeffs`` (E1), ``rule`` (E2), ``weights`` and ``component`` (E3),
    or ``tensors`` / ``tails`` (explicit, indexed from N = 1).
    """
    generator: str
    params: dict = field(default_factory=dict)

    def truncation(self, N, norm="euclidean"):
        g = self.generator.upper()
        if g == "E1":
            return gen_example_e1(N, self.params.get("coeffs"), norm)
        if g == "E2":
            return gen_example_e2(N, self.params.get("rule", "default"), norm)
        if g == "E3":
            L, r = self.params.get("component") or (aff1(norm), basis_wedge(aff1(norm), 0, 1))
            comps = [(L, r, self.weight(i)) for i in range(N)]
            return gen_example_e3(comps, name=f"E3[{N}]")
        if g == "EXPLICIT":
            return self.params["tensors"][N - 1]
        raise ValueError(f"unknown family generator {self.generator!r}")

    def weight(self, i):
        w = self.params.get("weights")
        if w is None:
            return Fraction(1, 2 ** i)
        return w(i) if callable(w) else w[i]

    def tail_bound(self, N, horizon=60):
        """Bound on ||r - r_N||_pi under unit-norm basis elements, or None."""
        g = self.generator.upper()
        if g == "E1":
            coeffs = self.params.get("coeffs")
            if coeffs is None:
                # 2 sum_{i>=N} 2^-(i+1) = 2^(1-N)
                return float(Fraction(2, 2 ** N))
            if callable(coeffs):
                return None
            return float(sum((2 * abs(c) for c in coeffs[N:]), Fraction(0)))
        if g == "E2":
            return _e2_tail(N, e2_rule(self.params.get("rule", "default")), N + horizon)
        if g == "E3":
            w = self.params.get("weights")
            comp = self.params.get("component")
            size = projective_upper(comp[1].as_float() if comp else
                                    basis_wedge(aff1(), 0, 1).as_float())
            if w is None:
                # sum_{i>=N} 2^-i = 2^(1-N)
                return float(Fraction(2, 2 ** N)) * size
            if callable(w):
                return None
            return float(sum((abs(x) for x in w[N:]), Fraction(0))) * size
        tails = self.params.get("tails")
        return None if tails is None else float(tails[N - 1])


def _nonincreasing(values, strict=False):
    vals = [v for v in values if v is not None]
    if strict:
        return all(b < a for a, b in zip(vals, vals[1:]))
    return all(b <= a for a, b in zip(vals, vals[1:]))


def convergence_study(family, N_range, norm="euclidean"):
    """Per-N projective upper bound of CYB(r_N) and tail bound of r - r_N.

    Verdict is pass when the tail bounds decrease strictly and the CYB
    bounds do not increase.
    """
    if isinstance(family, str):
        family = RMatrixFamily(family)
    rows = []
    with Timer() as timer:
        for N in N_range:
            r = family.truncation(N, norm)
            c = cyb(r.space, r)
            upper = projective_upper(c.as_float(), auto=False) if c.entries else 0.0
            rows.append({"N": N, "cyb_upper": upper, "tail_bound": family.tail_bound(N)})
    cybs = [row["cyb_upper"] for row in rows]
    tails = [row["tail_bound"] for row in rows]
    tail_ok = _nonincreasing(tails, strict=True)
    cyb_ok = _nonincreasing(cybs)
    payload = {
        "generator": family.generator,
        "norm": norm,
        "tail_strictly_decreasing": tail_ok,
        "cyb_nonincreasing": cyb_ok,
        "cyb_all_zero": all(v == 0 for v in cybs),
    }
    return Report("converge", PASS if tail_ok and cyb_ok else FAIL,
                  {"cyb_upper_last": cybs[-1] if cybs else 0.0},
                  series=rows, payload=payload, wall_time_ms=timer.elapsed_ms)


def random_skew(L, rng, density=1.0, max_num=5, max_den=4, mode=EXACT):
    """Random skew tensor with small rational (or float) entries."""
    entries = {}
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            if rng.random() > density:
                continue
            v = Fraction(int(rng.integers(-max_num, max_num + 1)), int(rng.integers(1, max_den + 1)))
            if mode == FLOAT:
                v = float(v)
            entries[(i, j)] = v
            entries[(j, i)] = -v
    return make_tensor((L, L), entries, mode=mode if entries else None)


def random_tensor2(L, rng, density=1.0, max_num=5, max_den=4):
    entries = {}
    for i in range(L.dim):
        for j in range(L.dim):
            if rng.random() <= density:
                entries[(i, j)] = Fraction(int(rng.integers(-max_num, max_num + 1)),
                                           int(rng.integers(1, max_den + 1)))
    return tensor2(L, entries)


__all__ = [
    "cyb", "cyb_dense", "schouten", "schouten_dual", "check_stcy", "require_skew",
    "gen_example_e1", "gen_example_e2", "gen_example_e3", "check_e2_cocycle", "e3_demo",
    "e2_rule", "default_e2_rule", "RMatrixFamily", "convergence_study",
    "random_skew", "random_tensor2",
]
