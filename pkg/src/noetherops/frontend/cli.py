"""Command line interface.

Exit status is 0 on success, 1 when the computation fails for a
mathematical reason (a JSON error object is printed) and 2 for usage
errors such as a missing file.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from ..driver import (
    apply_to_generators,
    membership_test,
    numerical_primary_decomposition,
    transform_operators,
)
from ..dualspace import DEFAULT_DMAX, noetherian_operators
from ..errors import NoetherError
from ..numericops import (
    DEFAULT_POINT_TOLERANCE,
    interpolate_with_schedule,
    noetherian_operators_at_point,
    numerical_noetherian_operators,
    rational_interpolation,
)
from ..polyring import GRLEX, MonomialOrder, monomials_up_to
from ..scalars import DEFAULT_TOLERANCE, format_complex, format_monomial
from .io import dumps, group_points, read_points, read_problem, write_json
from .parser import parse_polynomial

EMBEDDED_NOTE = "assumes the ideal has no embedded components"


class UsageError(Exception):
    pass


def _order(name):
    try:
        return MonomialOrder(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _indep(args, problem):
    if args.indep is not None:
        if args.indep.strip() == "auto":
            return None
        return [v for v in args.indep.replace(",", " ").split() if v]
    return problem.independent


def _load_ideal(args):
    if not args.ideal:
        raise UsageError("--ideal is required")
    problem = read_problem(args.ideal)
    if not problem.ideal:
        raise UsageError(f"{args.ideal} contains no generators")
    return problem


def _load_prime(args, problem, required=True):
    if args.prime:
        prime = read_problem(args.prime, problem.variables)
        return prime.ideal
    if problem.prime:
        return problem.prime
    if required:
        raise UsageError("--prime is required")
    return None


def _load_points(args, problem):
    if not args.points:
        raise UsageError("--points is required")
    return read_points(args.points, problem.variables if problem else None)


def _emit(args, doc, lines):
    for line in lines:
        print(line)
    if args.out:
        write_json(args.out, doc)


def cmd_symbolic(args):
    problem = _load_ideal(args)
    prime = _load_prime(args, problem)
    N = noetherian_operators(
        problem.ideal,
        prime,
        order=_order(args.order),
        d_max=args.dmax,
        independent=_indep(args, problem),
        keep_matrices=bool(args.dump_matrices),
    )
    if args.dump_matrices:
        folder = Path(args.dump_matrices)
        folder.mkdir(parents=True, exist_ok=True)
        names = N.basis.dvars

        def label(b):
            return format_monomial(b, names, prefix="d") or "1"

        for d, M in sorted(N.basis.matrices.items()):
            (folder / f"macaulay_d{d}.csv").write_text(M.to_csv(label))
    _emit(args, N.to_dict(), [str(D) for D in N.rational_operators])


def _point_label(p, names):
    return "(" + ", ".join(format_complex(p[n], 1e-15) for n in names) + ")"


def cmd_at_point(args):
    problem = _load_ideal(args)
    points, _ = _load_points(args, problem)
    prime = _load_prime(args, problem, required=False)
    names = problem.variables
    lines, docs = [], []
    for p in points:
        ops = noetherian_operators_at_point(
            problem.ideal,
            p,
            independent=_indep(args, problem),
            order=_order(args.order),
            tol=args.tol,
            d_max=args.dmax,
            point_tol=args.point_tol,
            prime=prime,
        )
        lines.append(f"# point {_point_label(p, names)}")
        lines.extend(str(D) for D in ops)
        docs.append(
            {
                "point": [[p[n].real, p[n].imag] for n in names],
                "operators": [str(D) for D in ops],
                "residual": p.residual,
            }
        )
    _emit(args, {"schema": 1, "numeric": True, "variables": names, "results": docs}, lines)


def cmd_interpolate(args):
    points, values = read_points(args.points)
    if values is None:
        raise UsageError("the point file needs a 'value' for every point")
    names = list(points[0].keys())
    indep = [v for v in (args.indep or "").replace(",", " ").split() if v]
    if args.degree is None:
        coeff = interpolate_with_schedule(points, values, names, indep, args.tol)
    else:
        n_exps = monomials_up_to(len(names), args.degree)
        d_exps = [e for e in n_exps if all(k == 0 or v in indep for k, v in zip(e, names))]
        coeff = rational_interpolation(points, values, n_exps, d_exps, names, args.tol)
    doc = {
        "schema": 1,
        "numeric": True,
        "variables": names,
        "function": coeff.to_string(),
        "exact": coeff.exact,
        "residual": coeff.residual,
    }
    _emit(args, doc, [coeff.to_string()])


def cmd_numeric(args):
    problem = _load_ideal(args)
    points, _ = _load_points(args, problem)
    prime = _load_prime(args, problem, required=False)
    N = numerical_noetherian_operators(
        problem.ideal,
        points,
        independent=_indep(args, problem),
        prime=prime,
        order=_order(args.order),
        tol=args.tol,
        d_max=args.dmax,
        point_tol=args.point_tol,
    )
    _emit(args, N.to_dict(), [str(D) for D in N.operators])


def _components(args, problem):
    points, _ = _load_points(args, problem)
    return numerical_primary_decomposition(
        problem.ideal,
        group_points(points),
        independent=_indep(args, problem),
        order=_order(args.order),
        tol=args.tol,
        d_max=args.dmax,
        point_tol=args.point_tol,
    )


def cmd_decompose(args):
    problem = _load_ideal(args)
    comps = _components(args, problem)
    lines = []
    for c in comps:
        lines.append(f"# component {c.component}")
        if c.ok:
            lines.extend(str(D) for D in c.operators.operators)
        else:
            lines.append(f"# failed: {c.error.code}: {c.error}")
    doc = {"schema": 1, "numeric": True, "components": [c.to_dict() for c in comps]}
    _emit(args, doc, lines)


def cmd_member(args):
    problem = _load_ideal(args)
    if not args.poly:
        raise UsageError("--poly is required")
    f = parse_polynomial(args.poly, problem.ring)
    if not args.points:
        raise UsageError("--points is required (sample points of each component)")
    comps = _components(args, problem)
    failed = [c for c in comps if not c.ok]
    if failed:
        raise failed[0].error
    result = membership_test(f, comps, trials=args.trials, tol=args.tol)
    lines = [f"# note: {EMBEDDED_NOTE}"]
    for c, v in zip(comps, result.per_component):
        lines.append(f"component {c.component}: {'member' if v else 'not member'}")
    lines.append("member" if result.aggregate else "not member")
    doc = {
        "schema": 1,
        "polynomial": str(f),
        "member": result.aggregate,
        "components": [
            {"component": c.component, "member": v, "max_relative_value": m}
            for c, v, m in zip(comps, result.per_component, result.max_values)
        ],
        "assumption": EMBEDDED_NOTE,
    }
    _emit(args, doc, lines)


def _read_matrix(spec):
    path = Path(spec)
    text = path.read_text() if path.exists() else spec
    rows = [r for r in text.replace("\n", ";").split(";") if r.strip()]
    return [row.replace(",", " ").split() for row in rows]


def cmd_transform(args):
    problem = _load_ideal(args)
    prime = _load_prime(args, problem)
    if not args.matrix:
        raise UsageError("--matrix is required")
    try:
        A = [[Fraction(v) for v in row] for row in _read_matrix(args.matrix)]
    except ValueError as exc:
        raise UsageError(f"bad matrix entry: {exc}") from None
    N = noetherian_operators(
        problem.ideal, prime, order=_order(args.order), d_max=args.dmax, independent=_indep(args, problem)
    )
    T = transform_operators(N, A)
    _emit(args, T.to_dict(), [str(D) for D in T.operators])


def cmd_apply(args):
    problem = _load_ideal(args)
    prime = _load_prime(args, problem)
    N = noetherian_operators(
        problem.ideal, prime, order=_order(args.order), d_max=args.dmax, independent=_indep(args, problem)
    )
    gens = apply_to_generators(N, problem.ideal)
    doc = {"schema": 1, "operators": [str(D) for D in N.operators], "generators": [str(g) for g in gens]}
    _emit(args, doc, [str(g) for g in gens])


COMMANDS = {
    "symbolic": (cmd_symbolic, "Noetherian operators from exact generators of an ideal and a minimal prime"),
    "at-point": (cmd_at_point, "operators specialized at each point of a point file"),
    "interpolate": (cmd_interpolate, "fit a rational function to sampled values"),
    "numeric": (cmd_numeric, "operators with interpolated coefficients from sample points"),
    "decompose": (cmd_decompose, "operators for every component of a point file"),
    "member": (cmd_member, "probabilistic ideal membership test"),
    "transform": (cmd_transform, "operators after the linear change of coordinates x -> A x"),
    "apply": (cmd_apply, "apply the operators to the generators"),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="noetherops", description="Noetherian operators of polynomial ideals.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--ideal", help="ideal file (text or JSON)")
        p.add_argument("--prime", help="file with generators of the minimal prime")
        p.add_argument("--points", help="JSON point file")
        p.add_argument("--out", help="write a JSON document here")
        p.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE, help="numerical rank tolerance")
        p.add_argument("--point-tol", type=float, default=DEFAULT_POINT_TOLERANCE, help="point residual tolerance")
        p.add_argument("--dmax", type=int, default=DEFAULT_DMAX, help="largest Macaulay matrix degree")
        p.add_argument("--order", default=GRLEX.kind, help="order on derivative monomials (grlex, grevlex, lex)")
        p.add_argument("--indep", help="independent variables, comma separated, or 'auto'")
        if name == "symbolic":
            p.add_argument("--dump-matrices", metavar="DIR", help="write each Macaulay matrix as CSV")
        if name == "interpolate":
            p.add_argument("--degree", type=int, help="fixed ansatz degree (default: increase until success)")
        if name == "member":
            p.add_argument("--poly", help="polynomial to test")
            p.add_argument("--trials", type=int, default=3, help="points per component")
        if name == "transform":
            p.add_argument("--matrix", help="matrix A as 'a b; c d' or a file with one row per line")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = COMMANDS[args.command][0]
    try:
        handler(args)
    except (UsageError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"noetherops {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except NoetherError as exc:
        err = {"schema": 1, "error": exc.to_dict()}
        print(dumps(err), end="")
        if args.out:
            write_json(args.out, err)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
