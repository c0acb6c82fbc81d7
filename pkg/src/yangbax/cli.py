"""Command-line front end: ``yangbax <command> [options]``.

Every command prints a JSON report (or writes it to ``--out``).  Exit status
is 0 for pass/interval, 1 for fail and 2 for usage or input errors.
"""

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .bialg import NOT_A_BIALGEBRA, check_cocycle, check_coalgebra, classify_rmatrix, coboundary, manin_double
from .catalog import builtin_algebra, builtin_tensor, unknown
from .errors import ParseError, SpaceMismatch, UsageError, YangbaxError
from .liealg import adjoint_rep, coadjoint_rep
from .ooperator import (
    check_ooperator,
    edo_defect,
    graph_check,
    random_matrix,
    rmatrix_to_ooperator,
    rtn_series,
)
from .pnorm import norm_interval
from .report import FAIL, INTERVAL, PASS, Report, Timer, content_hash, verdict_of
from .rmatrix import RMatrixFamily, check_e2_cocycle, check_stcy, convergence_study, cyb, schouten
from .scalars import EXACT, FLOAT
from .serialize import (
    algebra_from_json,
    algebra_to_json,
    matrix_from_json,
    read_json,
    rep_from_json,
    tensor_from_json,
    tensor_to_json,
    vector_from_json,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


# --- input resolution -------------------------------------------------------


class Inputs:
    """Resolves --algebra/--tensor/--rep/--t references and records their hashes."""

    def __init__(self, args):
        self.args = args
        self.hashes = {}
        self._algebra = None

    def _load_file(self, key, ref):
        doc, text = read_json(ref)
        self.hashes[key] = content_hash(text)
        return doc

    def _is_file(self, ref):
        return ref.endswith(".json") or Path(ref).exists()

    def algebra(self, required=True):
        if self._algebra is not None:
            return self._algebra
        ref = self.args.algebra
        norm = getattr(self.args, "norm", None)
        if ref is None:
            if getattr(self.args, "tensor", None):
                found = builtin_tensor(self.args.tensor, n=self.args.n, norm=norm)
                if found is not None:
                    self._algebra = found[0]
                    self.hashes["algebra"] = content_hash(f"builtin:{found[0].name}")
                    return self._algebra
            if required:
                raise UsageError("--algebra is required")
            return None
        if self._is_file(ref):
            L = algebra_from_json(self._load_file("algebra", ref), source=ref, norm=norm)
        else:
            L = builtin_algebra(ref, norm)
            if L is None:
                raise unknown("algebra", ref)
            self.hashes["algebra"] = content_hash(f"builtin:{ref}:{norm or 'euclidean'}")
        self._algebra = L
        return L

    def tensor(self, mode=EXACT):
        ref = self.args.tensor
        if ref is None:
            raise UsageError("--tensor is required")
        L = self.algebra()
        if self._is_file(ref):
            t = tensor_from_json(self._load_file("tensor", ref), L, source=ref)
        else:
            found = builtin_tensor(ref, L, n=self.args.n, rule=getattr(self.args, "rule", "default"),
                                   norm=getattr(self.args, "norm", None))
            if found is None:
                raise unknown("tensor", ref)
            owner, t = found
            if not owner.same_as(L):
                raise SpaceMismatch(f"built-in tensor {ref!r} lives on {owner.name}, not {L.name}")
            self.hashes["tensor"] = content_hash(f"builtin:{ref}:{self.args.n}")
        return t.as_float() if mode == FLOAT else t

    def rep(self):
        L = self.algebra()
        ref = self.args.rep or "coadjoint"
        if ref == "coadjoint":
            self.hashes["rep"] = content_hash("builtin:coadjoint")
            return coadjoint_rep(L)
        if ref == "adjoint":
            self.hashes["rep"] = content_hash("builtin:adjoint")
            return adjoint_rep(L)
        return rep_from_json(self._load_file("rep", ref), L, source=ref)

    def operator(self, rep):
        """T from --t, or from --tensor via the r-matrix contraction."""
        L = self.algebra()
        if self.args.t:
            return matrix_from_json(self._load_file("t", self.args.t), source=self.args.t)
        if self.args.tensor:
            return rmatrix_to_ooperator(L, self.tensor()).T
        raise UsageError("--t (or --tensor) is required")

    def vector(self, key, m, rng):
        ref = getattr(self.args, key)
        if ref is None:
            return random_matrix(rng, 1, m)[0]
        v = vector_from_json(self._load_file(key, ref), source=ref)
        if len(v) != m:
            raise ParseError(f"--{key} has length {len(v)}, module dimension is {m}", source=ref)
        return v


def _mode(args, default=EXACT):
    return args.mode or default


# --- commands ---------------------------------------------------------------


def cmd_validate(args, inp):
    L = inp.algebra()
    payload = {"dim": L.dim, "basis": list(L.basis_labels), "norm": L.norm.kind,
               "continuity_constant": L.continuity_constant, "basis_witness": L.basis_witness}
    residuals = {"jacobi": Fraction(0)}
    if args.rep:
        rep = inp.rep()
        payload["module_dim"] = rep.module_dim
    if args.tensor:
        t = inp.tensor()
        payload["tensor_nnz"] = len(t)
    return Report("validate", PASS, residuals, payload=payload)


def cmd_cyb(args, inp):
    L = inp.algebra()
    t = inp.tensor(_mode(args))
    c = cyb(L, t)
    tol = 1e-12 if t.mode == FLOAT else None
    return Report("cyb", verdict_of(c.is_zero(tol)), {"cyb": c.max_entry()},
                  payload={"cyb": tensor_to_json(c, L.name)})


def cmd_schouten(args, inp):
    L = inp.algebra()
    t = inp.tensor(_mode(args))
    s = schouten(L, t, verify=True)
    return Report("schouten", PASS, {"dual_check": 0 if t.mode != FLOAT else 0.0},
                  payload={"schouten": tensor_to_json(s, L.name),
                           "schouten_max": s.max_entry()})


def cmd_stcy(args, inp):
    L = inp.algebra()
    return check_stcy(L, inp.tensor(_mode(args)))


def cmd_classify(args, inp):
    L = inp.algebra()
    v = classify_rmatrix(L, inp.tensor())
    residuals = {"cyb": v.cyb_residual, "cocycle": v.cocycle_residual,
                 "cojacobi": v.cojacobi_residual, "invariance": v.invariance_residual}
    if v.dual_jacobi_residual is not None:
        residuals["dual_jacobi"] = v.dual_jacobi_residual
    payload = v.to_json()
    if not v.skew_ok:
        payload["violation"] = "cobracket is not skew-symmetric"
    return Report("classify", verdict_of(v.classification != NOT_A_BIALGEBRA), residuals,
                  payload=payload)


def cmd_double(args, inp):
    L = inp.algebra()
    r = inp.tensor()
    delta = coboundary(L, r)
    md = manin_double(L, delta)
    doc = algebra_to_json(md.double)
    if args.algebra_out:
        Path(args.algebra_out).write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    checks = {k: v for k, v in md.checks.items() if k != "wall_time_ms"}
    ok = checks["nondegenerate"] and checks["lagrangian"] and checks["invariance_residual"] == 0
    residuals = {"invariance": checks["invariance_residual"], "cocycle": check_cocycle(L, delta),
                 "cojacobi": check_coalgebra(L, delta)[1]}
    return Report("double", verdict_of(ok), residuals, payload={"checks": checks, "algebra": doc})


def cmd_example(args, inp):
    name = args.family.lower()
    n = args.n or 3
    fam = RMatrixFamily(name.upper(), {"rule": args.rule} if name == "e2" else {})
    t = fam.truncation(n, args.norm or "euclidean")
    c = cyb(t.space, t)
    residuals = {"cyb": c.max_entry()}
    payload = {"algebra": t.space.name, "N": n, "tensor": tensor_to_json(t)}
    if name == "e2":
        rep = check_e2_cocycle(args.rule, n)
        residuals["e2_cocycle"] = rep.residuals["cocycle"]
    inp.hashes["family"] = content_hash(f"{name}:{n}:{args.rule}")
    return Report(f"example {name}", verdict_of(c.is_zero()), residuals, payload=payload)


def _write_csv(path, header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(row[h]) for h in header])
    Path(path).write_text(buf.getvalue(), newline="")


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _out_is_csv(args):
    return args.out is not None and args.out.endswith(".csv")


def cmd_converge(args, inp):
    name = args.family.upper()
    params = {"rule": args.rule} if name == "E2" else {}
    n_max = args.n_max or 20
    rep = convergence_study(RMatrixFamily(name, params), range(1, n_max + 1),
                            norm=args.norm or "euclidean")
    inp.hashes["family"] = content_hash(f"{name}:{n_max}:{args.rule}:{args.norm}")
    if _out_is_csv(args):
        _write_csv(args.out, ["N", "cyb_upper", "tail_bound"], rep.series)
    return rep


def cmd_norm(args, inp):
    t = inp.tensor()
    interval = norm_interval(t.as_float(), seed=args.seed)
    return Report("norm", INTERVAL, {}, payload={"interval": interval.to_json(),
                                                 "norm": t.space.norm.kind})


def cmd_oop(args, inp):
    L = inp.algebra()
    rep = inp.rep()
    T = inp.operator(rep)
    residual = check_ooperator(L, rep, T)
    payload = {"module_dim": rep.module_dim, "rep": rep.name}
    if args.oop_command == "check":
        return Report("oop check", verdict_of(residual == 0), {"edo": residual}, payload=payload)
    if args.oop_command == "graph":
        ok = graph_check(L, rep, T)
        payload["graph_subalgebra"] = ok
        if ok != (residual == 0):
            payload["violation"] = "graph check disagrees with the O-operator residual"
        return Report("oop graph", verdict_of(ok), {"edo": residual}, payload=payload)
    # rtn
    rng = np.random.default_rng(args.seed)
    m = rep.module_dim
    u, v = inp.vector("u", m, rng), inp.vector("v", m, rng)
    K = args.n if args.n is not None else m
    rows = [row for row in rtn_series(L, rep, T, u, v) if row["n"] <= K]
    values = [row["value"] for row in rows]
    monotone = all(b <= a for a, b in zip(values, values[1:]))
    reaches_zero = K < m or (rows and rows[-1]["exact_zero"])
    payload.update({"u": list(u), "v": list(v), "nonincreasing": monotone,
                    "final_zero": bool(rows and rows[-1]["exact_zero"]),
                    "edo_at_uv": list(edo_defect(L, rep, T, u, v))})
    if _out_is_csv(args):
        _write_csv(args.out, ["n", "value"], rows)
    return Report("oop rtn", verdict_of(monotone and reaches_zero),
                  {"edo": residual, "last_value": values[-1] if values else 0.0},
                  series=rows, payload=payload)


COMMANDS = {
    "validate": cmd_validate,
    "cyb": cmd_cyb,
    "schouten": cmd_schouten,
    "stcy": cmd_stcy,
    "classify": cmd_classify,
    "double": cmd_double,
    "example": cmd_example,
    "converge": cmd_converge,
    "norm": cmd_norm,
    "oop": cmd_oop,
}


# --- parser -----------------------------------------------------------------


def _common(p):
    p.add_argument("--algebra", help="algebra JSON file or built-in name (sl2, aff1, glN, abelianN, e3-demo)")
    p.add_argument("--tensor", help="tensor JSON file or built-in name (standard_r, e_wedge_f, x_wedge_y, e1, e2-default, e3-demo)")
    p.add_argument("--rep", help="representation JSON file, or 'coadjoint' / 'adjoint'")
    p.add_argument("--t", help="O-operator matrix JSON (column-major)")
    p.add_argument("--n", type=int, help="truncation index")
    p.add_argument("--n-max", type=int, help="largest truncation index for series")
    p.add_argument("--rule", default="default", help="E2 coefficient rule: default, constant, zero")
    p.add_argument("--norm", help="norm tag: euclidean, sup, l1, operator")
    p.add_argument("--mode", choices=(EXACT, FLOAT), help="scalar mode")
    p.add_argument("--out", help="write the report (or CSV series for .csv) here")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    p.add_argument("--u", help="module vector JSON")
    p.add_argument("--v", help="module vector JSON")


def build_parser():
    parser = argparse.ArgumentParser(prog="yangbax", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"yangbax {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("validate", "cyb", "schouten", "stcy", "classify", "norm"):
        _common(sub.add_parser(name))
    p = sub.add_parser("double")
    _common(p)
    p.add_argument("--algebra-out", help="also write the double as algebra JSON")
    for name in ("example", "converge"):
        p = sub.add_parser(name)
        p.add_argument("family", choices=("e1", "e2", "e3"))
        _common(p)
    p = sub.add_parser("oop")
    oop = p.add_subparsers(dest="oop_command", required=True)
    for name in ("check", "graph", "rtn"):
        _common(oop.add_parser(name))
    return parser


def _emit(report, args, stdout):
    text = report.to_json()
    if args.out and not _out_is_csv(args):
        Path(args.out).write_text(text)
    else:
        stdout.write(text)


def run(argv=None, stdout=None, stderr=None):
    """Run one command; returns ``(exit_code, report_or_None)``."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_INPUT if exc.code else EXIT_PASS), None
    if getattr(args, "mode", None) is None and args.command == "norm":
        args.mode = FLOAT
    inp = Inputs(args)
    try:
        with Timer() as timer:
            report = COMMANDS[args.command](args, inp)
    except YangbaxError as exc:
        kind = type(exc).__name__
        stderr.write(json.dumps({"error": kind, "message": str(exc)}, sort_keys=True) + "\n")
        return EXIT_INPUT, None
    report.inputs = {**inp.hashes, **report.inputs}
    report.wall_time_ms = timer.elapsed_ms
    _emit(report, args, stdout)
    code = EXIT_FAIL if report.verdict == FAIL else EXIT_PASS
    return code, report


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
