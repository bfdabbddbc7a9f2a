"""Command-line front end.

Subcommands walk successively further down the pipeline: `iseries` prints
the ambient series, `lefschetz` the twisted variety series, `matrix` the
counting matrix, `periods` and `invert` the period map in both directions,
`d3` the third-order operator and its normalized solution, `modularity`
the candidate table, `report` the full assembled report, and `verify`
recomputes everything and diffs it against the embedded golden values.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input,
3 internal math error.  All numeric output is exact: integers bare,
other rationals as p/q.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .d3 import (
    apply_operator,
    build_pencil,
    frobenius_solve,
    left_divide_by_D,
    modularity_report,
    right_determinant,
)
from .pipeline import (
    CATALOG,
    ConfigError,
    StageError,
    ambient_series,
    load_config,
    rational_str,
    render_verify_table,
    run_pipeline,
    serialize_report,
    verify_golden,
)
from .lefschetz import ci_geometry, lefschetz_shift, quantum_lefschetz
from .solver import (
    PeriodVector,
    discriminant,
    forward_periods,
    invert_periods,
    recover_matrix,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fanocount",
        description="Exact counting matrices and D3 operators for Fano threefolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, variety: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if variety:
            p.add_argument(
                "--variety",
                required=True,
                help=f"catalog name ({', '.join(sorted(CATALOG))}) or JSON config path",
            )
        p.add_argument("--order", type=int, default=7, help="series length (default 7)")
        p.add_argument(
            "--format", choices=("json", "text"), default="text", help="output format"
        )
        return p

    add("iseries", "ambient-space hyperplane I-series")
    add("lefschetz", "variety I-series after the Euler twist")
    add("matrix", "counting matrix recovered from the series")
    add("periods", "period vector and discriminant of the counting matrix")
    inv = add("invert", "counting matrix recovered from a period vector")
    inv.add_argument(
        "--periods",
        help="comma-separated d2,d3,d4,d5,d6 (default: the variety's own periods)",
    )
    inv.add_argument("--deg", type=int, help="anticanonical degree for the output matrix")
    d3p = add("d3", "third-order operator and its normalized solution")
    d3p.add_argument(
        "--lambda", dest="lam", default="0", help="pencil shift, a rational P/Q"
    )
    add("modularity", "candidate identification table for the D3 solutions")
    add("report", "full pipeline report")
    ver = sub.add_parser("verify", help="recompute and diff all golden values")
    ver.add_argument("--variety", default="all", help="V10, V14 or all (default all)")
    ver.add_argument("--format", choices=("json", "text"), default="text")
    ver.add_argument(
        "--corrupt",
        help="negative control: corrupt one golden entry, e.g. V10:matrix.a01",
    )
    return parser


def _emit(data: dict, fmt: str, text_lines: list[str]) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _matrix_dict(matrix) -> dict:
    return {
        "deg": matrix.deg,
        "entries": {k: rational_str(v) for k, v in matrix.entries().items()},
        "rows": [[rational_str(x) for x in row] for row in matrix.rows()],
    }


def _matrix_lines(matrix) -> list[str]:
    rows = [[rational_str(x) for x in row] for row in matrix.rows()]
    width = max(len(x) for row in rows for x in row)
    return ["  ".join(x.rjust(width) for x in row) for row in rows]


def _parse_periods(text: str) -> PeriodVector:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 5:
        raise ConfigError("--periods needs exactly five comma-separated rationals")
    try:
        values = [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad rational in --periods: {exc}") from exc
    return PeriodVector(*values)


def _run_command(args: argparse.Namespace) -> int:
    cmd = args.command

    if cmd == "verify":
        status, rows = verify_golden(args.variety, corrupt=args.corrupt)
        if args.format == "json":
            data = {
                "status": status,
                "rows": [
                    {
                        "label": r.label,
                        "derived": r.derived,
                        "expected": r.expected,
                        "status": r.status,
                        "note": r.note,
                    }
                    for r in rows
                ],
            }
            sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
        else:
            sys.stdout.write(render_verify_table(rows))
        return status

    config = load_config(args.variety)
    if args.order < 1:
        raise ConfigError("--order must be positive")

    def guard(stage: str, fn):
        try:
            return fn()
        except StageError:
            raise
        except Exception as exc:
            raise StageError(stage, exc) from exc

    if cmd == "iseries":
        pair = guard("grassmann", lambda: ambient_series(config.ambient, args.order))
        data = {
            "ambient": {"r": config.ambient.r, "n": config.ambient.n},
            "c0": [rational_str(c) for c in pair.c0.coeffs],
            "c1": [rational_str(c) for c in pair.c1.coeffs],
        }
        _emit(data, args.format, [
            f"ambient G({config.ambient.r},{config.ambient.n})",
            "c0: " + " ".join(data["c0"]),
            "c1: " + " ".join(data["c1"]),
        ])
        return 0

    if cmd == "report":
        report = run_pipeline(config, order=args.order)
        sys.stdout.write(serialize_report(report, args.format))
        return 0

    pair_x = guard("grassmann", lambda: ambient_series(config.ambient, max(args.order, 5)))
    spec = config.spec
    alpha = guard("lefschetz", lambda: lefschetz_shift(spec, pair_x.c0))
    pair_v = guard("lefschetz", lambda: quantum_lefschetz(pair_x, spec))

    if cmd == "lefschetz":
        data = {
            "alpha": rational_str(alpha),
            "c0": [rational_str(c) for c in pair_v.c0.coeffs[: args.order]],
            "c1": [rational_str(c) for c in pair_v.c1.coeffs[: args.order]],
        }
        _emit(data, args.format, [
            f"shift alpha = {data['alpha']}",
            "c0: " + " ".join(data["c0"]),
            "c1: " + " ".join(data["c1"]),
        ])
        return 0

    geometry = guard("lefschetz", lambda: ci_geometry(spec))
    deg = geometry.anticanonical_degree
    deg_int = int(deg) if deg == int(deg) else 0
    matrix = guard("solver", lambda: recover_matrix(pair_v, deg_int))

    if cmd == "matrix":
        data = _matrix_dict(matrix)
        _emit(data, args.format, [f"deg = {matrix.deg}"] + _matrix_lines(matrix))
        return 0

    if cmd == "periods":
        periods = guard("solver", lambda: forward_periods(matrix))
        disc = discriminant(periods)
        data = {
            "periods": [rational_str(x) for x in periods.as_tuple()],
            "discriminant": rational_str(disc),
        }
        _emit(data, args.format, [
            "d2..d6: " + " ".join(data["periods"]),
            f"discriminant: {data['discriminant']}",
        ])
        return 0

    if cmd == "invert":
        if args.periods is not None:
            vector = _parse_periods(args.periods)
        else:
            vector = guard("solver", lambda: forward_periods(matrix))
        deg_out = args.deg if args.deg is not None else matrix.deg
        recovered = guard("solver", lambda: invert_periods(vector, deg_out))
        data = _matrix_dict(recovered)
        data["periods"] = [rational_str(x) for x in vector.as_tuple()]
        if args.periods is None:
            data["roundtrip_ok"] = recovered == matrix
        lines = ["periods: " + " ".join(data["periods"]), f"deg = {deg_out}"]
        lines += _matrix_lines(recovered)
        if args.periods is None:
            lines.append(f"roundtrip ok: {data['roundtrip_ok']}")
        _emit(data, args.format, lines)
        return 0

    if cmd == "d3":
        try:
            lam = Fraction(args.lam)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad --lambda: {exc}") from exc
        operator = guard(
            "d3", lambda: left_divide_by_D(right_determinant(build_pencil(matrix, lam)))
        )
        solution = guard("d3", lambda: frobenius_solve(operator, args.order))
        residue = apply_operator(operator, solution)
        data = {
            "lambda": rational_str(lam),
            "operator": str(operator),
            "order": operator.order,
            "indicial": [rational_str(c) for c in operator.indicial()],
            "solution": [rational_str(c) for c in solution.coeffs],
            "residue_vanishes": all(c == 0 for c in residue.coeffs),
        }
        _emit(data, args.format, [
            f"lambda = {data['lambda']}",
            f"operator = {data['operator']}",
            f"indicial = {' '.join(data['indicial'])}",
            "solution: " + " ".join(data["solution"]),
            f"residue vanishes mod t^{args.order}: {data['residue_vanishes']}",
        ])
        return 0

    if cmd == "modularity":
        alpha_val = alpha
        rep = guard("d3", lambda: modularity_report(matrix, alpha_val, order=args.order))
        data = {
            "level": rep.level,
            "alpha": rational_str(rep.alpha),
            "order": rep.order,
            "rows": [
                {
                    "lambda": rational_str(r.lam),
                    "candidate": r.candidate,
                    "first_mismatch": r.first_mismatch,
                    "error": r.error,
                }
                for r in rep.rows
            ],
        }
        lines = [f"level N = {rep.level}, alpha = {data['alpha']}, order = {rep.order}"]
        for r in data["rows"]:
            miss = (
                "agrees to order"
                if r["first_mismatch"] is None
                else f"differs at {r['first_mismatch']}"
            )
            tail = f" [{r['error']}]" if r["error"] else ""
            lines.append(f"lambda {r['lambda']:>4}  {r['candidate']:<32} {miss}{tail}")
        _emit(data, args.format, lines)
        return 0

    raise ConfigError(f"unknown command {cmd!r}")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _run_command(args)
    except StageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        original = exc.original
        return 2 if isinstance(original, ValueError) else 3
    except ConfigError as exc:
        sys.stderr.write(f"error: stage config: {type(exc).__name__}: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: stage input: {type(exc).__name__}: {exc}\n")
        return 2
    except ArithmeticError as exc:
        sys.stderr.write(f"error: stage compute: {type(exc).__name__}: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
