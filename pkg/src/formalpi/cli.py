"""Command-line front end.

Exit codes: 0 success, 2 bad input, 3 degenerate Hessian, 4 truncation too
short, 5 the invariance theorem's prediction is violated, 6 quadrature
failed to converge.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .coord import divergence_jet, jacobian_determinant_jet, moser_homotopy
from .diagrams import enumerate_diagrams
from .errors import (
    DegenerateCriticalPoint,
    DimensionMismatch,
    NotCriticalPoint,
    NotInvertible,
    PreconditionError,
    QuadraturePrecisionError,
    TruncationExceeded,
)
from .feynman import diagram_sum, prefactor
from .invariance import check_invariance, first_variation, trace_terms
from .jets import MapJet
from .oracles import laplace_quadrature
from .problem import ProblemError, load_problem
from .scalars import format_scalar

EXIT_OK, EXIT_INPUT, EXIT_DEGENERATE, EXIT_TRUNCATION, EXIT_VIOLATION, EXIT_QUADRATURE = 0, 2, 3, 4, 5, 6

DEFAULT_KAPPAS = (0.2, 0.1, 0.05)
DEFAULT_S = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))


class UsageError(Exception):
    pass


def _fmt_list(values):
    return "[" + ", ".join(str(v) for v in values) + "]"


def _emit(report, fmt, out):
    if fmt == "json":
        out.write(json.dumps(report, indent=2) + "\n")
        return
    for key, value in report.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            for row in value:
                out.write(f"{key}: " + "  ".join(f"{k}={v}" for k, v in row.items()) + "\n")
        elif isinstance(value, list):
            out.write(f"{key}: {_fmt_list(value)}\n")
        elif isinstance(value, bool):
            out.write(f"{key}: {'true' if value else 'false'}\n")
        elif value is None:
            out.write(f"{key}: none\n")
        else:
            out.write(f"{key}: {value}\n")


def _order(args, problem, default=2):
    if args.order is not None:
        return args.order
    if problem.max_order is not None:
        return problem.max_order
    return default


def cmd_expand(args, out):
    problem = load_problem(args.problem)
    k = _order(args, problem)
    series = diagram_sum(problem.action, k)
    pre = prefactor(problem.action)
    regime = args.regime or problem.regime
    coeffs = [str(c) for c in series.oscillatory()] if regime == "oscillatory" else series.format()
    report = {
        "dimension": problem.dimension,
        "max_order": k,
        "regime": regime,
        "variable": "hbar" if regime == "oscillatory" else "kappa",
        "coefficients": coeffs,
        "prefactor_half_dim_power": format_scalar(pre.half_dim_power),
        "prefactor_phase_eighths": pre.phase_eighths,
        "prefactor_signature": pre.signature,
        "prefactor_classical_value": format_scalar(pre.classical_value),
        "prefactor_abs_det": format_scalar(pre.abs_det),
        "prefactor_det_exponent": format_scalar(pre.det_exponent),
    }
    _emit(report, args.format, out)
    return EXIT_OK


def cmd_diagrams(args, out):
    k = 1 if args.order is None else args.order
    if args.min_valence < 3:
        raise UsageError("--min-valence must be >= 3")
    classes = enumerate_diagrams(k, args.min_valence, args.connected, args.max_valence)
    rows = [
        {"diagram": c.canonical.to_text(), "order": c.order, "chi": c.euler, "aut": c.aut_count}
        for c in classes
    ]
    if args.format == "json":
        out.write(json.dumps({"max_order": k, "classes": rows}, indent=2) + "\n")
    else:
        for r in rows:
            out.write(f"{r['diagram']}\tchi={r['chi']}\taut={r['aut']}\n")
    return EXIT_OK


def _invariance_report(report):
    fd = report.first_difference
    return {
        "max_order": report.max_order,
        "volume_preserving": report.volume_preserving,
        "verdict": report.verdict,
        "base_series": report.base_series.format(),
        "pushed_series": report.pushed_series.format(),
        "first_difference_order": None if fd is None else fd[0],
        "first_difference_delta": None if fd is None else format_scalar(fd[1]),
    }


def cmd_check_invariance(args, out):
    problem = load_problem(args.problem)
    if problem.map is None:
        raise ProblemError("check-invariance needs a 'map' section")
    report = check_invariance(problem.action, problem.map, _order(args, problem))
    _emit(_invariance_report(report), args.format, out)
    return EXIT_VIOLATION if report.theorem_violated else EXIT_OK


def cmd_first_variation(args, out):
    problem = load_problem(args.problem)
    if problem.vector_field is None:
        raise ProblemError("first-variation needs a 'vector_field' section")
    k = _order(args, problem)
    fv = first_variation(problem.action, problem.vector_field, k)
    tt = trace_terms(problem.action, problem.vector_field, k)
    div_free = divergence_jet(problem.vector_field).is_constant()
    report = {
        "max_order": k,
        "divergence_constant": div_free,
        "first_variation": fv.format(),
        "trace_terms": tt.format(),
        "match": fv == tt,
    }
    _emit(report, args.format, out)
    violated = fv != tt or (div_free and not fv.is_zero())
    return EXIT_VIOLATION if violated else EXIT_OK


def cmd_oracle(args, out):
    problem = load_problem(args.problem)
    if (args.regime or problem.regime) != "laplace":
        raise UsageError("quadrature runs only in the laplace regime")
    k = _order(args, problem)
    series = diagram_sum(problem.action, k)
    kappas = args.kappa or problem.kappa or list(DEFAULT_KAPPAS)
    rows = []
    for kappa in kappas:
        q = laplace_quadrature(problem.action, kappa)
        s = series(kappa)
        res = q.value - s
        rows.append({
            "kappa": f"{kappa:.6g}",
            "quadrature": f"{q.value:.15e}",
            "series": f"{s:.15e}",
            "residual": f"{res:.6e}",
            "scaled_residual": f"{res / kappa ** (k + 1):.6e}",
            "error_estimate": f"{q.error_estimate:.3e}",
        })
    if args.format == "json":
        out.write(json.dumps({"max_order": k, "series": series.format(), "rows": rows}, indent=2) + "\n")
    else:
        out.write(f"series: {_fmt_list(series.format())}\n")
        out.write("kappa\tquadrature\tseries\tresidual\tresidual/kappa^%d\n" % (k + 1))
        for r in rows:
            out.write(f"{r['kappa']}\t{r['quadrature']}\t{r['series']}\t{r['residual']}\t{r['scaled_residual']}\n")
    return EXIT_OK


def cmd_homotopy(args, out):
    problem = load_problem(args.problem)
    if problem.map is None:
        raise ProblemError("homotopy needs a 'map' section")
    k = _order(args, problem)
    f = problem.map
    svals = problem.s or list(DEFAULT_S)
    rows = []
    violated = False
    for s in svals:
        F = moser_homotopy(f, s)
        det_one = jacobian_determinant_jet(F).is_constant(1)
        rep = check_invariance(problem.action, F, k)
        violated |= rep.theorem_violated
        rows.append({"s": format_scalar(s), "volume_preserving": str(det_one).lower(), "verdict": rep.verdict})
    report = {
        "max_order": k,
        "start_is_identity": moser_homotopy(f, 0) == MapJet.identity(f.dim, f.order),
        "end_is_map": moser_homotopy(f, 1) == f,
        "slices": rows,
    }
    _emit(report, args.format, out)
    return EXIT_VIOLATION if violated else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="formalpi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_problem=True):
        if with_problem:
            p.add_argument("problem", help="path to a JSON problem file")
        p.add_argument("--order", type=int, default=None, help="series order in the coupling")
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--regime", choices=["laplace", "oscillatory"], default=None)
        return p

    common(sub.add_parser("expand", help="diagram series and Gaussian prefactor")).set_defaults(func=cmd_expand)
    d = common(sub.add_parser("diagrams", help="list diagram classes"), with_problem=False)
    d.add_argument("--min-valence", type=int, default=3)
    d.add_argument("--max-valence", type=int, default=None)
    d.add_argument("--connected", action="store_true")
    d.set_defaults(func=cmd_diagrams)
    common(sub.add_parser("check-invariance", help="compare series before and after a coordinate change")
           ).set_defaults(func=cmd_check_invariance)
    common(sub.add_parser("first-variation", help="infinitesimal change vs trace diagrams")
           ).set_defaults(func=cmd_first_variation)
    o = common(sub.add_parser("oracle", help="series vs numerical Laplace integral"))
    o.add_argument("--kappa", type=float, action="append", default=None)
    o.set_defaults(func=cmd_oracle)
    common(sub.add_parser("homotopy", help="invariance along the homotopy to the identity")
           ).set_defaults(func=cmd_homotopy)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.order is not None and args.order < 0:
        sys.stderr.write("error: --order must be >= 0\n")
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except DegenerateCriticalPoint as exc:
        sys.stderr.write(f"error: degenerate critical point: {exc}\n")
        return EXIT_DEGENERATE
    except TruncationExceeded as exc:
        sys.stderr.write(f"error: truncation exceeded: {exc}\n")
        return EXIT_TRUNCATION
    except QuadraturePrecisionError as exc:
        sys.stderr.write(f"error: quadrature failed: {exc} {exc.diagnostics}\n")
        return EXIT_QUADRATURE
    except (ProblemError, UsageError, NotCriticalPoint, NotInvertible, PreconditionError,
            DimensionMismatch) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
