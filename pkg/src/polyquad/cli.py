"""Batch command-line interface.

Commands: integrate, convergence, pick, lemma-sum, appendix-example, bernoulli.
Exit codes: 0 success, 2 input error, 3 numeric contract violation.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from .bernoulli import bernoulli_at_zero, bernoulli_poly
from .functions import (BUILTIN_INTEGRANDS, Function2D, PolynomialFunction2D,
                        function_from_json)
from .geometry import IntPolygon, PolygonError
from .lattice_sums import (DegenerateDirections, NonCoprime, SumSpec,
                           closed_form, mollified_limit)
from .quadrature import (WeightedSum, accelerate, collected_accelerated_sum,
                         integrate_numeric, integrate_polynomial_exact,
                         trapezoid_analog, weighted_sum)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONTRACT = 3

APPENDIX_VERTICES = [(0, 0), (2, 1), (1, 2)]
APPENDIX_MONOMIALS = [[1, 1, 2, 3]]


class InputError(Exception):
    pass


class ContractViolation(Exception):
    pass


def _thread_cap() -> int:
    """Optional parallelism cap; evaluation is serial, which respects any cap."""
    raw = os.environ.get("POLYQUAD_THREADS")
    if raw is None:
        return 1
    try:
        cap = int(raw)
    except ValueError as exc:
        raise InputError(f"POLYQUAD_THREADS must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise InputError("POLYQUAD_THREADS must be >= 1")
    return cap


def _load_json_arg(arg: str, label: str):
    """Accept inline JSON (starting with '{') or a path to a JSON file."""
    text = arg
    if not arg.lstrip().startswith("{"):
        try:
            with open(arg, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {label} file {arg!r}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON for {label}: {exc}") from exc


def _load_polygon(args) -> IntPolygon:
    if not args.polygon:
        raise InputError("--polygon is required")
    data = _load_json_arg(args.polygon, "polygon")
    try:
        return IntPolygon.from_json(data)
    except PolygonError as exc:
        raise InputError(f"polygon: {exc}") from exc


def _load_function(args) -> Function2D:
    if getattr(args, "monomials", None):
        try:
            entries = json.loads(args.monomials)
        except json.JSONDecodeError as exc:
            raise InputError(f"--monomials must be JSON: {exc}") from exc
        try:
            return function_from_json({"monomials": entries})
        except (ValueError, TypeError) as exc:
            raise InputError(f"function: {exc}") from exc
    if getattr(args, "function", None):
        data = _load_json_arg(args.function, "function")
        if isinstance(data, str) and data in BUILTIN_INTEGRANDS:
            return BUILTIN_INTEGRANDS[data]
        try:
            return function_from_json(data)
        except (ValueError, TypeError) as exc:
            raise InputError(f"function: {exc}") from exc
    raise InputError("one of --function or --monomials is required")


def _fraction_str(x: Fraction | None) -> str | None:
    if x is None:
        return None
    return f"{x.numerator}/{x.denominator}"


def _emit(args, lines: list[str], rows: list[dict], columns: list[str]) -> None:
    fmt = getattr(args, "format", "table")
    if fmt == "table":
        text = "\n".join(lines) + "\n"
    elif fmt == "csv":
        out = [",".join(columns)]
        for row in rows:
            out.append(",".join("" if row.get(c) is None else str(row.get(c))
                                for c in columns))
        text = "\n".join(out) + "\n"
    else:
        text = json.dumps(rows if len(rows) != 1 else rows[0],
                          sort_keys=True, separators=(",", ":")) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_method(method: str, k: int | None, g, polygon, N: int) -> tuple[float, Fraction | None, WeightedSum | None]:
    if method == "weighted":
        s = weighted_sum(g, polygon, N)
        return s.value, s.exact, s
    if method == "trapezoid":
        s = trapezoid_analog(g, polygon, N)
        return s.value, s.exact, s
    if method == "collected":
        s = collected_accelerated_sum(g, polygon, N)
        return s.value, s.exact, s
    if method.startswith("accelerated"):
        if method != "accelerated" and "-" in method:
            try:
                k = int(method.rsplit("-", 1)[1])
            except ValueError as exc:
                raise InputError(f"bad accelerated method {method!r}") from exc
        k = k or 2
        if k < 1:
            raise InputError("--k must be >= 1")
        return accelerate(g, polygon, N, k), None, None
    raise InputError(f"unknown method {method!r}")


def cmd_integrate(args) -> int:
    polygon = _load_polygon(args)
    g = _load_function(args)
    if args.N is None:
        raise InputError("--N is required")
    value, exact, _ = _run_method(args.method, args.k, g, polygon, args.N)
    if exact is not None and abs(value - float(exact)) > 1e-15:
        raise ContractViolation("rule value drifted from its exact rational")
    row = {"N": args.N, "method": args.method, "value": value,
           "exact": _fraction_str(exact)}
    lines = [f"method {args.method}  N={args.N}"]
    if exact is not None:
        lines.append(f"value = {_fraction_str(exact)} = {value!r}")
    else:
        lines.append(f"value = {value!r}")
    if g.is_polynomial:
        reference = integrate_polynomial_exact(g.poly, polygon)
        err = abs(value - float(reference))
        row["integral"] = _fraction_str(reference)
        row["abs_error"] = err
        lines.append(f"exact integral = {_fraction_str(reference)} "
                     f"= {float(reference)!r}")
        lines.append(f"abs error = {err!r}")
    _emit(args, lines, [row], ["N", "method", "value", "exact", "integral", "abs_error"])
    return EXIT_OK


def cmd_convergence(args) -> int:
    polygon = _load_polygon(args)
    g = _load_function(args)
    if not args.N_list:
        raise InputError("--N-list is required")
    try:
        Ns = [int(x) for x in args.N_list.split(",")]
    except ValueError as exc:
        raise InputError(f"--N-list must be comma-separated integers: {exc}") from exc
    if len(Ns) < 3:
        raise InputError("--N-list needs at least 3 values")
    if g.is_polynomial:
        reference = float(integrate_polynomial_exact(g.poly, polygon))
    else:
        reference = integrate_numeric(g, polygon)
    rows = []
    lines = [f"{'N':>6} {'method':>14} {'value':>22} {'abs_error':>12} {'order':>8}"]
    prev = None
    for N in Ns:
        value, exact, _ = _run_method(args.method, args.k, g, polygon, N)
        err = abs(value - reference)
        order = None
        if prev is not None and err > 0 and prev[1] > 0:
            order = math.log(prev[1] / err) / math.log(N / prev[0])
        rows.append({"N": N, "method": args.method, "value": value,
                     "exact": _fraction_str(exact), "abs_error": err,
                     "est_order": order})
        lines.append(f"{N:>6} {args.method:>14} {value!r:>22} {err:>12.3e} "
                     + (f"{order:>8.3f}" if order is not None else f"{'-':>8}"))
        prev = (N, err)
    _emit(args, lines, rows, ["N", "method", "value", "exact", "abs_error", "est_order"])
    return EXIT_OK


def cmd_pick(args) -> int:
    polygon = _load_polygon(args)
    interior = polygon.interior_count()
    boundary = polygon.boundary_count()
    area = polygon.area()
    residual = polygon.pick_residual()
    lines = [f"I = {interior}", f"B = {boundary}",
             f"area = {_fraction_str(area)}",
             f"residual = {_fraction_str(residual)}"]
    rows = [{"I": interior, "B": boundary, "area": _fraction_str(area),
             "residual": _fraction_str(residual)}]
    _emit(args, lines, rows, ["I", "B", "area", "residual"])
    if residual != 0:
        raise ContractViolation("Pick residual must be exactly zero")
    return EXIT_OK


def cmd_lemma_sum(args) -> int:
    if not args.spec:
        raise InputError("--spec is required")
    data = _load_json_arg(args.spec, "lemma-sum spec")
    try:
        spec = SumSpec.from_json(data)
        value = closed_form(spec)
    except (DegenerateDirections, NonCoprime, ValueError) as exc:
        raise InputError(f"lemma-sum: {exc}") from exc
    row = {"kind": spec.kind, "dirs": list(spec.dirs), "h": spec.h, "k": spec.k,
           "value": value}
    lines = [f"closed form = {value!r}"]
    if args.verify:
        oracle = mollified_limit(spec)
        row["oracle"] = oracle
        row["difference"] = abs(value - oracle)
        lines.append(f"mollified oracle = {oracle!r}")
        lines.append(f"difference = {abs(value - oracle):.3e}")
    _emit(args, lines, [row], ["kind", "dirs", "h", "k", "value", "oracle", "difference"])
    return EXIT_OK


def cmd_appendix_example(args) -> int:
    polygon = IntPolygon(APPENDIX_VERTICES)
    g = function_from_json({"monomials": APPENDIX_MONOMIALS})
    integral = integrate_polynomial_exact(g.poly, polygon)
    trap = trapezoid_analog(g, polygon, 4)
    coll = collected_accelerated_sum(g, polygon, 2)
    trap_points = sum(trap.counts)
    coll_points = sum(coll.counts)
    expected = [
        ("integral", integral, Fraction(423, 140)),
        ("trapezoid N=4", trap.exact, Fraction(54335, 16384)),
        ("collected N=2", coll.exact, Fraction(37295, 12288)),
    ]
    lines = []
    ok = True
    for label, got, want in expected:
        match = got == want
        ok = ok and match
        lines.append(f"{label}: {_fraction_str(got)} = {float(got):.3f}... "
                     f"[{'ok' if match else f'MISMATCH, expected {_fraction_str(want)}'}]")
    ok = ok and trap_points == 31 and coll_points == 21
    lines.append(f"trapezoid sampling points: {trap_points} "
                 f"[{'ok' if trap_points == 31 else 'MISMATCH, expected 31'}]")
    lines.append(f"collected sampling points: {coll_points} "
                 f"[{'ok' if coll_points == 21 else 'MISMATCH, expected 21'}]")
    rows = [{"integral": _fraction_str(integral),
             "trapezoid": _fraction_str(trap.exact),
             "collected": _fraction_str(coll.exact),
             "trapezoid_points": trap_points,
             "collected_points": coll_points,
             "pass": ok}]
    _emit(args, lines, rows, ["integral", "trapezoid", "collected",
                              "trapezoid_points", "collected_points", "pass"])
    if not ok:
        raise ContractViolation("appendix example values did not reproduce")
    return EXIT_OK


def cmd_bernoulli(args) -> int:
    j = args.j
    if j is None or j < 0:
        raise InputError("--j must be a nonnegative integer")
    poly = bernoulli_poly(j).poly
    pieces = []
    for power, coeff in reversed(list(enumerate(poly.coeffs))):
        if coeff == 0:
            continue
        mag = _fraction_str(abs(coeff))
        var = "" if power == 0 else ("x" if power == 1 else f"x^{power}")
        body = f"{mag}" if not var else (var if abs(coeff) == 1 else f"({mag})*{var}")
        pieces.append(("- " if coeff < 0 else ("+ " if pieces else "")) + body)
    text = " ".join(pieces) if pieces else "0"
    lines = [f"B_{j}(x) = {text}", f"B_{j}(0) = {_fraction_str(bernoulli_at_zero(j))}"]
    rows = [{"j": j, "coeffs": [_fraction_str(c) for c in poly.coeffs],
             "at_zero": _fraction_str(bernoulli_at_zero(j))}]
    _emit(args, lines, rows, ["j", "coeffs", "at_zero"])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyquad",
        description="Solid-angle weighted lattice quadrature over integer polygons")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, function=True):
        p.add_argument("--polygon", help="polygon JSON file or inline JSON")
        if function:
            p.add_argument("--function", help="function JSON file or inline JSON")
            p.add_argument("--monomials",
                           help="inline JSON list of [num, den, xpow, ypow]")
        p.add_argument("--format", choices=["table", "csv", "json"], default="table")
        p.add_argument("--out", help="write output to this file instead of stdout")

    p = sub.add_parser("integrate", help="evaluate one quadrature rule")
    add_common(p)
    p.add_argument("--N", type=int)
    p.add_argument("--method", default="weighted",
                   help="weighted | trapezoid | collected | accelerated[-k]")
    p.add_argument("--k", type=int, help="levels for the accelerated method")
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("convergence", help="error table over a list of N")
    add_common(p)
    p.add_argument("--N-list", dest="N_list", help="comma-separated N values (>= 3)")
    p.add_argument("--method", default="weighted")
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_convergence)

    p = sub.add_parser("pick", help="interior/boundary counts and the Pick residual")
    add_common(p, function=False)
    p.set_defaults(func=cmd_pick)

    p = sub.add_parser("lemma-sum", help="closed-form Bernoulli lattice sums")
    p.add_argument("--spec", help='JSON {"kind": "line"|"line2"|"double", '
                                  '"dirs": [...], "h": int, "k": int}')
    p.add_argument("--verify", action="store_true",
                   help="also run the mollified-series oracle")
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lemma_sum)

    p = sub.add_parser("appendix-example",
                       help="reproduce the worked numerical example exactly")
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.add_argument("--out")
    p.set_defaults(func=cmd_appendix_example)

    p = sub.add_parser("bernoulli", help="print a Bernoulli polynomial")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bernoulli)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _thread_cap()
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ContractViolation as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
