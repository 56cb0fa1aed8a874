"""Command-line front end.

Subcommands:

* ``validate <model>`` — print validation diagnostics, one per line;
* ``compute <model> [--strict|--permissive] [--json]`` — the full report;
* ``snf <matrix> [--check]`` — invariant factors of a matrix file, with
  an optional cross-check against the minor-enumeration oracle;
* ``oracle <matrix>`` — the determinantal divisors themselves.

Exit codes: 0 success; 1 validation errors (strict mode); 2 unreadable
input, malformed document, or schema violation; 3 internal invariant
violation (a self-check or the agreement of the two degree-zero routes
failed).  The environment variable ``CHOWFIBER_COLOR`` (auto, never,
always) controls styling only; output bytes are otherwise deterministic.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence, TextIO

from .chow import (
    INDEX_UNDEFINED,
    IRREDUCIBLE_FIBER,
    PERMISSIVE,
    STRICT,
    ChowReport,
    InvalidModel,
    report,
)
from .exact_linalg import (
    MatrixFormatError,
    OracleSizeLimitError,
    SelfCheckError,
    determinantal_divisors,
    invariant_factors_from_divisors,
    parse_matrix_text,
    snf,
)
from .fiber_model import (
    Diagnostic,
    FiberModel,
    ParseError,
    SchemaError,
    has_errors,
    parse_model,
    validate,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

_ANSI = {"red": "31", "yellow": "33", "cyan": "36", "bold": "1"}


def _color_enabled(stream: TextIO) -> bool:
    mode = os.environ.get("CHOWFIBER_COLOR", "auto")
    if mode == "never":
        return False
    if mode == "always":
        return True
    return hasattr(stream, "isatty") and stream.isatty()


def _style(text: str, color: str, enabled: bool) -> str:
    if not enabled:
        return text
    return f"\x1b[{_ANSI[color]}m{text}\x1b[0m"


def _format_diagnostic(d: Diagnostic, color: bool) -> str:
    severity = d.severity.upper()
    severity = _style(severity, "red" if d.is_error() else "yellow", color)
    return f"{severity} {d.code} {d.subject}: {d.message}"


def _load_model(path: str) -> FiberModel:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_model(fh.read())


def _load_matrix(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix_text(fh.read())


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        model = _load_model(args.model)
    except (OSError, ParseError, SchemaError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    diagnostics = validate(model)
    color = _color_enabled(sys.stdout)
    for d in diagnostics:
        print(_format_diagnostic(d, color))
    return EXIT_VALIDATION if has_errors(diagnostics) else EXIT_OK


def cmd_compute(args: argparse.Namespace) -> int:
    try:
        model = _load_model(args.model)
    except (OSError, ParseError, SchemaError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    mode = PERMISSIVE if args.permissive else STRICT
    try:
        rep = report(model, mode=mode)
    except InvalidModel as e:
        for d in e.diagnostics:
            print(_format_diagnostic(d, _color_enabled(sys.stderr)), file=sys.stderr)
        print(
            "validation failed; rerun with --permissive to study the formal cokernel",
            file=sys.stderr,
        )
        return EXIT_VALIDATION
    if args.json:
        print(json.dumps(report_as_json(rep), indent=2, sort_keys=True))
    else:
        _print_report(rep, sys.stdout)
    return EXIT_OK


def cmd_snf(args: argparse.Namespace) -> int:
    try:
        matrix = _load_matrix(args.matrix)
    except (OSError, MatrixFormatError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    decomposition = snf(matrix)
    factors = decomposition.nonzero_diagonal()
    rendered = " ".join(str(f) for f in factors) if factors else "(none)"
    print(f"rank {len(factors)}; invariant factors: {rendered}")
    if args.check:
        try:
            divisors = determinantal_divisors(matrix)
        except OracleSizeLimitError:
            print("check: skipped (oracle size limit)")
            return EXIT_OK
        oracle_factors = invariant_factors_from_divisors(divisors)
        if list(factors) != oracle_factors:
            print(
                f"check failed: reduction gives {list(factors)}, "
                f"oracle gives {oracle_factors}",
                file=sys.stderr,
            )
            return EXIT_INTERNAL
        print("check: ok")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    try:
        matrix = _load_matrix(args.matrix)
    except (OSError, MatrixFormatError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    try:
        divisors = determinantal_divisors(matrix)
    except OracleSizeLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    rendered = " ".join(str(d) for d in divisors) if divisors else "(none)"
    print(f"determinantal divisors: {rendered}")
    return EXIT_OK


# ----------------------------------------------------------------------
# report rendering
# ----------------------------------------------------------------------


def report_as_json(rep: ChowReport) -> dict:
    """The report as a plain JSON-serializable object."""
    doc: dict = {
        "name": rep.model_name,
        "b": {"rank": rep.b.rank, "torsion": list(rep.b.invariant_factors)},
        "b0": (
            None
            if rep.b0 is None
            else {"rank": rep.b0.rank, "torsion": list(rep.b0.invariant_factors)}
        ),
        "xi_on_generators": (
            None if rep.xi_on_generators is None else list(rep.xi_on_generators)
        ),
        "index": rep.index if rep.index is not None else INDEX_UNDEFINED,
        "special_case": rep.special_case,
        "formal_only": rep.formal_only,
        "hypotheses": {
            "reduced_components_smooth": rep.hypotheses.reduced_components_smooth,
            "pic_unramified_descent": rep.hypotheses.pic_unramified_descent,
        },
        "diagnostics": [
            {
                "severity": d.severity,
                "code": d.code,
                "subject": d.subject,
                "message": d.message,
            }
            for d in rep.diagnostics
        ],
        "notes": rep.notes,
        "expected": (
            None
            if rep.expected is None
            else {
                "b0_rank": rep.expected.b0_rank,
                "b0_torsion": list(rep.expected.b0_torsion),
                "source": rep.expected.source,
            }
        ),
    }
    return doc


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _print_report(rep: ChowReport, out: TextIO) -> None:
    color = _color_enabled(out)
    print(f"model: {rep.model_name}", file=out)
    print(f"B(X)   = {rep.b}", file=out)
    if rep.b0 is not None:
        print(f"B(X)_0 = {rep.b0}", file=out)
    else:
        print("B(X)_0 = (not defined: validation failed)", file=out)
    index = str(rep.index) if rep.index is not None else INDEX_UNDEFINED
    print(f"index  = {index}", file=out)
    if rep.special_case == IRREDUCIBLE_FIBER:
        print(_style("special case: irreducible fiber", "cyan", color), file=out)
    print(
        "hypotheses: reduced_components_smooth="
        f"{_yesno(rep.hypotheses.reduced_components_smooth)}, "
        f"pic_unramified_descent={_yesno(rep.hypotheses.pic_unramified_descent)}",
        file=out,
    )
    if rep.formal_only:
        print(
            _style(
                "formal cokernel only: the model fails validation, so B(X) above "
                "is the cokernel of the degree table and carries no zero-cycle meaning",
                "yellow",
                color,
            ),
            file=out,
        )
    else:
        print(
            "caveat: reading B(X) as the zero-cycle class group is conditional "
            "on the asserted hypotheses",
            file=out,
        )
    if rep.diagnostics:
        print("diagnostics:", file=out)
        for d in rep.diagnostics:
            print(f"  {_format_diagnostic(d, color)}", file=out)
    if rep.expected is not None:
        torsion = ", ".join(str(t) for t in rep.expected.b0_torsion) or "none"
        print(
            f"recorded expectation: B(X)_0 rank {rep.expected.b0_rank}, "
            f"torsion [{torsion}] (source: {rep.expected.source})",
            file=out,
        )
    if rep.notes:
        print(f"notes: {rep.notes}", file=out)


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chowfiber",
        description=(
            "Zero-cycle class groups of rational surfaces over p-adic fields, "
            "computed exactly from special-fiber degree data."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check a model document")
    p_validate.add_argument("model", help="path to a model JSON document")
    p_validate.set_defaults(func=cmd_validate)

    p_compute = sub.add_parser("compute", help="compute B(X), B(X)_0 and the index")
    p_compute.add_argument("model", help="path to a model JSON document")
    mode = p_compute.add_mutually_exclusive_group()
    mode.add_argument(
        "--strict",
        action="store_true",
        help="refuse models with validation errors (default)",
    )
    mode.add_argument(
        "--permissive",
        action="store_true",
        help="report the formal cokernel even when validation fails",
    )
    p_compute.add_argument("--json", action="store_true", help="emit the report as JSON")
    p_compute.set_defaults(func=cmd_compute)

    p_snf = sub.add_parser("snf", help="invariant factors of an integer matrix file")
    p_snf.add_argument("matrix", help="path to a matrix text file ('R C' header)")
    p_snf.add_argument(
        "--check",
        action="store_true",
        help="cross-check against the determinantal-divisor oracle (size permitting)",
    )
    p_snf.set_defaults(func=cmd_snf)

    p_oracle = sub.add_parser("oracle", help="determinantal divisors of a matrix file")
    p_oracle.add_argument("matrix", help="path to a matrix text file ('R C' header)")
    p_oracle.set_defaults(func=cmd_oracle)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SelfCheckError as e:
        print(f"internal check failed: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
