"""Command-line interface.

Exit codes: 0 success, 1 validation error, 2 unsupported input or unmet
precondition, 3 infeasible or negative result.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings

import numpy as np

from . import exact, fourproj, search, selfcomm, twoproj
from .exceptions import (
    InfeasibleError,
    PreconditionError,
    SingularityError,
    UnsupportedInputError,
    ValidationError,
)
from .linalg import as_hermitian, hermitian_eigen, random_hermitian, spectral_norm
from .matrix_io import (
    dump_matrix,
    loads_json,
    matrix_to_rows,
    read_matrix,
    rows_to_matrix,
    write_matrix,
)

OK, INVALID, UNSUPPORTED, NEGATIVE = 0, 1, 2, 3
VERIFY_TOL = 1e-12

log = logging.getLogger("projdecomp")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage mistakes are validation errors (exit 1), not argparse's default 2
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _coefficient_json(c):
    if isinstance(c, (int, np.integer)):
        return int(c)
    z = complex(c)
    if isinstance(c, complex) or np.iscomplexobj(c):
        return [z.real, z.imag]
    return z.real


def _coefficient_parse(value):
    if isinstance(value, list) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return value
    raise ValidationError(f"bad coefficient {value!r}")


def _emit(report, out=None):
    text = json.dumps(report, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)


def _decomposition_report(command, path, A, combo, plan=None, emit_projections=False):
    check = fourproj.verify_combination(A, combo)
    report = {
        "command": command,
        "input": str(path),
        "n": int(A.shape[0]),
        "coefficients": [_coefficient_json(c) for c in combo.coefficients],
        **check.as_dict(),
    }
    if plan is not None:
        report["plan"] = plan.as_dict()
    if emit_projections:
        report["projections"] = [matrix_to_rows(P) for P in combo.projections]
    return report


def cmd_decompose4(args):
    A = read_matrix(args.input).matrix
    combo, plan = fourproj.decompose4(A, return_plan=True)
    _emit(_decomposition_report("decompose4", args.input, A, combo, plan, args.emit_projections), args.out)
    return OK


def cmd_decompose5int(args):
    A = read_matrix(args.input).matrix
    combo, plan = fourproj.decompose5_integral_even(A, return_plan=True)
    report = _decomposition_report("decompose5int", args.input, A, combo, plan, args.emit_projections)
    _emit(report, args.out)
    return OK


def cmd_decompose8(args):
    B = read_matrix(args.input).matrix
    combo = fourproj.decompose8_complex(B)
    _emit(_decomposition_report("decompose8", args.input, B, combo, None, args.emit_projections), args.out)
    return OK


def _plan_json(c1, c2, plan, residual):
    return {
        "c1": c1,
        "c2": c2,
        "fixed": {str(i): list(p) for i, p in sorted(plan.fixed.items())},
        "pairs": [[i, j, s2] for i, j, s2 in plan.pairs],
        "synthesis_residual": residual,
    }


def cmd_check2(args):
    A = as_hermitian(read_matrix(args.input).matrix, name="input")
    eig = hermitian_eigen(A)
    values = [float(v) for v in eig.eigenvalues]
    if args.coeffs:
        c1, c2 = args.coeffs
        plan = twoproj.two_comb_feasible(values, c1, c2)
        found = [] if plan is None else [((c1, c2), plan)]
    else:
        found = twoproj.two_comb_enumerate(values)
    candidates = []
    for (c1, c2), plan in found:
        P1, P2 = twoproj.two_comb_synthesize(plan, c1, c2, eig.vectors)
        residual = float(np.linalg.norm(A - c1 * P1 - c2 * P2)) / (1.0 + spectral_norm(A))
        candidates.append(_plan_json(float(c1), float(c2), plan, residual))
    report = {
        "command": "check2",
        "input": str(args.input),
        "spectrum": values,
        "mode": "fixed" if args.coeffs else "enumerate",
        "feasible": bool(candidates),
        "candidates": candidates,
    }
    _emit(report, args.out)
    return OK if candidates else NEGATIVE


def cmd_selfcomm(args):
    B = read_matrix(args.input).matrix
    w = selfcomm.witness(B)
    Bh = as_hermitian(B)
    Bh = Bh - np.trace(Bh).real / Bh.shape[0] * np.eye(Bh.shape[0])
    R = w.commutator() - Bh
    U0 = w.U.T @ Bh @ w.U
    report = {
        "command": "selfcomm",
        "input": str(args.input),
        "n": int(Bh.shape[0]),
        "residual": float(spectral_norm(R)),
        "relative_residual": float(spectral_norm(R)) / (1.0 + spectral_norm(Bh)),
        "reduced_max_diagonal": float(np.max(np.abs(np.diag(U0)))),
        "X": matrix_to_rows(w.X),
    }
    _emit(report, args.out)
    return OK


def cmd_cert(args):
    theta = exact.to_fraction(args.theta)
    if args.m is None:
        params = exact.family_params(theta)
    else:
        spectrum = exact.padded_family_spectrum(theta, args.m)
        params = exact.params_from_spectrum(spectrum, theta)
    report = exact.family_certificate(params)
    text = report.to_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return OK if report.passed else NEGATIVE


def _search_row(result):
    return {
        "ranks": list(result.ranks),
        "residual": result.residual,
        "coefficients": [float(a) for a in result.coefficients],
        "iterations": result.iterations,
        "converged": result.converged,
        "restart": result.restart,
    }


def cmd_search3(args):
    mf = read_matrix(args.input)
    report = {"command": "search3", "input": str(args.input), "n": mf.n}
    if mf.label:
        report["label"] = mf.label
    if args.restarts is None:
        args.restarts = 2 if args.sweep else 10
    if args.sweep:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            rows, partial = search.rank_sweep(
                mf.matrix, restarts=args.restarts, seed=args.seed, max_iters=args.iters
            )
        for w in caught:
            log.warning("%s", w.message)
        report["partial"] = partial
        report["table"] = [_search_row(r) for r in rows]
        report["min_residual"] = min(r.residual for r in rows)
    else:
        if args.ranks is None:
            raise ValidationError("search3 needs --ranks or --sweep")
        config = search.SearchConfig(
            ranks=tuple(args.ranks), restarts=args.restarts, max_iters=args.iters, seed=args.seed
        )
        try:
            result = search.search_three(mf.matrix, config)
        except ValueError as exc:
            raise ValidationError(str(exc)) from exc
        report.update(_search_row(result))
    _emit(report, args.out)
    return OK


def cmd_verify(args):
    A = read_matrix(args.input).matrix
    with open(args.report, encoding="utf-8") as fh:
        data = loads_json(fh.read(), args.report)
    if not isinstance(data, dict) or "coefficients" not in data:
        raise ValidationError("report has no coefficients")
    if "projections" not in data:
        raise UnsupportedInputError("report carries no projections; rerun with --emit-projections")
    coeffs = [_coefficient_parse(c) for c in data["coefficients"]]
    projs = [rows_to_matrix(rows, A.shape[0], "projections") for rows in data["projections"]]
    if len(coeffs) != len(projs):
        raise ValidationError("coefficient and projection counts differ")
    fresh = fourproj.verify_combination(A, fourproj.ProjectionCombination(coeffs, projs)).as_dict()
    deltas = {}
    for key in ("residual_max", "residual_fro", "relative_residual", "trace_defect"):
        if key in data:
            deltas[key] = abs(float(data[key]) - fresh[key])
    for key in ("hermiticity_defects", "idempotency_defects"):
        if key in data:
            deltas[key] = max((abs(float(a) - b) for a, b in zip(data[key], fresh[key])), default=0.0)
    ranks_match = data.get("ranks", fresh["ranks"]) == fresh["ranks"]
    match = ranks_match and all(d <= VERIFY_TOL for d in deltas.values())
    _emit({"command": "verify", "match": match, "ranks_match": ranks_match,
           "deltas": deltas, "recomputed": fresh})
    return OK if match else NEGATIVE


def cmd_gen(args):
    if args.kind == "random-hermitian":
        if len(args.params) != 2:
            raise ValidationError("random-hermitian needs n and seed")
        n, seed = (int(p) for p in args.params)
        if n < 1:
            raise ValidationError("n must be positive")
        M, label = random_hermitian(n, seed), None
    else:
        if args.params:
            raise ValidationError(f"{args.kind} takes no parameters")
        if args.kind == "nakamura4":
            values = [float(v) for v in exact.four_point_spectrum().values()]
            M, label = np.diag(values).astype(complex), None
        else:
            M, label = search.family_surrogate(), search.SURROGATE_LABEL
    if args.out:
        write_matrix(args.out, M, label)
    else:
        print(dump_matrix(M, label))
    return OK


def build_parser():
    parser = _Parser(prog="projdecomp", description="Decompose Hermitian matrices into projections.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, func, help_ in (
        ("decompose4", cmd_decompose4, "a P1 - b P2 + c P3 - c P4 for Hermitian input"),
        ("decompose5int", cmd_decompose5int, "integer coefficients, even n, integral trace"),
        ("decompose8", cmd_decompose8, "complex 8-term for any square input"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("input")
        p.add_argument("--out")
        p.add_argument("--emit-projections", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("check2", help="two-projection feasibility of the spectrum")
    p.add_argument("input")
    p.add_argument("--coeffs", nargs=2, type=float, metavar=("A", "B"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_check2)

    p = sub.add_parser("selfcomm", help="X with X*X - XX* equal to a zero-trace input")
    p.add_argument("input")
    p.add_argument("--out")
    p.set_defaults(func=cmd_selfcomm)

    p = sub.add_parser("cert", help="exact certificate for the 76-point family")
    p.add_argument("family", choices=["prop6"])
    p.add_argument("--theta", default="1", help="rational in (0, 1], e.g. 1/2")
    p.add_argument("--m", type=int, help="size, padding with copies of the top value")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cert)

    p = sub.add_parser("search3", help="local search for fixed-rank combinations")
    p.add_argument("input")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--ranks", nargs=3, type=int, metavar=("R1", "R2", "R3"))
    mode.add_argument("--sweep", action="store_true")
    p.add_argument("--restarts", type=int, help="default 10, or 2 per triple with --sweep")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=2000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_search3)

    p = sub.add_parser("verify", help="recheck a decomposition report")
    p.add_argument("input")
    p.add_argument("report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a test instance")
    p.add_argument("kind", choices=["random-hermitian", "nakamura4", "prop6-surrogate"])
    p.add_argument("params", nargs="*")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return NEGATIVE
    except (UnsupportedInputError, PreconditionError, SingularityError) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return UNSUPPORTED
    except (ValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
