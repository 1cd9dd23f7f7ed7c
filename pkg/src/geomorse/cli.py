"""Command-line interface: parse JSON inputs, dispatch, emit reports.

Exit codes: 0 success, 2 unreadable/malformed input, 3 precondition or
validation failure, 4 scan budget exhausted (or scan not found), 1 a
selftest criterion failed.  Output is deterministic: JSON is emitted
with sorted keys, rationals are printed as "a/b", never as decimals.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import (
    BudgetExhaustedError,
    GeomorseError,
    MixedRadicandError,
    ParseError,
    ValidationError,
)
from .exactnum import parse_exact
from .homology import average_betti, betti, resonance_check
from .intervals import Rank1Model, kronecker_scan, obstruction_scenario
from .iteration import IndexSequence
from .normalform import GeodesicModel
from .systems import (
    IrrationalSystem,
    classify,
    conditions_report,
    effective_difference_number,
    reduce_system,
)

EXIT_OK = 0
EXIT_SELFTEST_FAILED = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4

_TABULAR = {"index", "betti"}


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _fraction_str(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _validated_geodesic_model(data: dict) -> GeodesicModel:
    model = GeodesicModel.from_json_dict(data)
    problems = model.validate()
    if problems:
        raise ValidationError("invalid geodesic model: " + "; ".join(problems))
    return model


# -- subcommand handlers ----------------------------------------------------


def _cmd_index(args) -> str:
    model = _validated_geodesic_model(_load_json(args.model))
    rows = IndexSequence(model).table(args.max_m)
    if args.format == "json":
        return _json_text([{"m": m, "ind": ind, "null": null} for m, ind, null in rows])
    if args.format == "csv":
        lines = ["m,ind,null"] + [f"{m},{ind},{null}" for m, ind, null in rows]
        return "\n".join(lines) + "\n"
    lines = [f"{'m':>6} {'ind':>8} {'null':>6}"]
    lines += [f"{m:>6} {ind:>8} {null:>6}" for m, ind, null in rows]
    return "\n".join(lines) + "\n"


def _cmd_betti(args) -> str:
    values = [betti(args.n, q) for q in range(args.max_q + 1)]
    average = average_betti(args.n)
    if args.format == "json":
        return _json_text(
            {
                "n": args.n,
                "max_q": args.max_q,
                "betti": values,
                "average": _fraction_str(average),
            }
        )
    if args.format == "csv":
        lines = ["q,betti"] + [f"{q},{b}" for q, b in enumerate(values)]
        return "\n".join(lines) + "\n"
    lines = [f"{'q':>6} {'betti':>6}"]
    lines += [f"{q:>6} {b:>6}" for q, b in enumerate(values)]
    lines.append(f"average: {_fraction_str(average)}")
    return "\n".join(lines) + "\n"


def _cmd_resonance(args) -> str:
    data = _load_json(args.models)
    if not isinstance(data, dict) or "n" not in data or "models" not in data:
        raise ParseError("resonance input needs keys 'n' and 'models'")
    if not isinstance(data["n"], int) or isinstance(data["n"], bool):
        raise ParseError("'n' must be an integer")
    if not isinstance(data["models"], list):
        raise ParseError("'models' must be a list")
    models = [_validated_geodesic_model(entry) for entry in data["models"]]
    report = resonance_check(models, data["n"])
    if args.format == "json":
        return _json_text(report.to_json_dict())
    lines = [
        f"average Betti number: {_fraction_str(report.average)}",
        f"residual: {report.residual}",
        f"exact zero: {report.exact_zero}",
    ]
    if report.bumpy_residual is not None:
        lines.append(f"bumpy-form residual: {report.bumpy_residual}")
    return "\n".join(lines) + "\n"


def _cmd_edn(args) -> str:
    system = IrrationalSystem.from_json_dict(_load_json(args.system))
    problems = conditions_report(system)
    result = effective_difference_number(system)
    payload = {
        "value": result.value,
        "witness": None if result.witness is None else _fraction_str(result.witness),
        "conditions": {"satisfied": not problems, "violations": problems},
        "reduction": None,
    }
    if not problems:
        payload["reduction"] = reduce_system(system).to_json_dict()
    if args.format == "json":
        return _json_text(payload)
    lines = [f"effective difference number: {result.value}"]
    if result.witness is not None:
        lines.append(f"witness eta: {_fraction_str(result.witness)}")
        split = classify(system, result.witness)
        lines.append(
            f"at the witness: k0+ = {len(split.k0_plus)}, k0- = {len(split.k0_minus)}"
        )
    if problems:
        lines.append("conditions violated: " + "; ".join(problems))
    else:
        lines.append(f"reduction steps: {len(payload['reduction']['steps'])}")
    return "\n".join(lines) + "\n"


def _render_system_line(entry: dict) -> str:
    pairs = ", ".join(
        f"({row[0] if len(row) == 1 else list(row)}, {x})"
        for row, x in zip(entry["P"], entry["xi"])
    )
    return f"[{pairs}]"


def _cmd_reduce(args) -> str:
    system = IrrationalSystem.from_json_dict(_load_json(args.system))
    result = reduce_system(system)
    payload = result.to_json_dict()
    if not args.trace:
        payload = {"initial": payload["initial"], "final": payload["final"]}
    if args.format == "json":
        return _json_text(payload)
    lines = ["initial: " + _render_system_line(result.initial.to_json_dict())]
    if args.trace:
        for step in result.steps:
            lines.append(
                f"{step.kind} ({step.detail}): "
                + _render_system_line(step.system.to_json_dict())
            )
    lines.append("final: " + _render_system_line(result.system.to_json_dict()))
    return "\n".join(lines) + "\n"


def _cmd_kronecker(args) -> str:
    thetas = [parse_exact(part) for part in args.thetas.split(",")]
    box = []
    for literal in args.box:
        pieces = literal.split(",")
        if len(pieces) != 2:
            raise ParseError(f"box literal {literal!r} must be 'lo,hi'")
        try:
            box.append((Fraction(pieces[0]), Fraction(pieces[1])))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad box bound in {literal!r}") from exc
    result = kronecker_scan(thetas, box, args.budget)
    text = (
        _json_text(result.to_json_dict())
        if args.format == "json"
        else (
            f"found: {result.found}\nm: {result.m}\nscanned: {result.scanned}\n"
        )
    )
    if not result.found:
        _emit(text, args.output)
        raise BudgetExhaustedError(
            f"no orbit point inside the box within {result.scanned} steps",
            scanned=result.scanned,
        )
    return text


def _cmd_obstruction(args) -> str:
    model = Rank1Model.from_json_dict(_load_json(args.model))
    report = obstruction_scenario(model, args.budget, n_bar=args.n_bar)
    if args.format == "json":
        return _json_text(report.to_json_dict())
    s1, s2 = report.counts
    lines = [
        f"witness eta: {_fraction_str(report.witness_eta)} (difference number {report.edn})",
        f"q_bar: {report.q_bar}, scan steps: {report.scanned}, separation level t = {report.t_level}",
        f"pair: l1 = {report.l1}, l2 = {report.l2} (iterates {report.m1}, {report.m2})",
        f"intervals: i' = {report.i_prime}, i'' = {report.i_double_prime}",
        f"degrees: {report.degree_d1} carries {s1} iterates, {report.degree_d2} carries {s2}",
        f"betti number at both degrees: {report.betti_value}",
        f"routes agree: {report.routes_agree}",
        f"conflict: {report.conflict}",
        report.summary(),
    ]
    return "\n".join(lines) + "\n"


def _cmd_selftest(args) -> tuple[str, int]:
    from .acceptance import run_all

    results = run_all()
    lines = []
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        lines.append(f"criterion {result.number:>2} [{status}] {result.name}")
        if not result.passed:
            lines.append(f"             {result.details}")
    all_passed = all(r.passed for r in results)
    lines.append("result: " + ("all criteria passed" if all_passed else "FAILURES"))
    return "\n".join(lines) + "\n", EXIT_OK if all_passed else EXIT_SELFTEST_FAILED


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geomorse",
        description=(
            "Exact index iteration for closed geodesics, loop-space Betti "
            "tables, and irrational-system reductions"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", "-f", choices=("text", "json", "csv"), default="text")
        p.add_argument("--output", "-o", default=None, help="write the report to a file")
        return p

    p = add("index", "index/nullity table of a geodesic model")
    p.add_argument("--model", required=True, help="geodesic model JSON file")
    p.add_argument("--max-m", type=int, required=True)

    p = add("betti", "equivariant Betti numbers of the non-contractible loop space")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-q", type=int, required=True)

    p = add("resonance", "resonance-identity residual for a model collection")
    p.add_argument("--models", required=True, help="JSON file with keys 'n' and 'models'")

    p = add("edn", "effective difference number of a system")
    p.add_argument("--system", required=True, help="system JSON file")

    p = add("reduce", "reduce a system to unit coefficients")
    p.add_argument("--system", required=True)
    p.add_argument("--trace", action="store_true", help="emit each intermediate system")

    p = add("kronecker", "smallest m with every {m*theta} inside the box")
    p.add_argument("--thetas", required=True, help="comma-separated ExactReal literals")
    p.add_argument("--box", action="append", required=True, help="'lo,hi' per generator")
    p.add_argument("--budget", type=int, required=True)

    p = add("obstruction", "single-geodesic obstruction scenario")
    p.add_argument("--model", required=True, help="rank-1 model JSON file")
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--n-bar", type=int, default=None)

    add("selftest", "run the acceptance suite and print a pass/fail matrix")

    return parser


_HANDLERS = {
    "index": _cmd_index,
    "betti": _cmd_betti,
    "resonance": _cmd_resonance,
    "edn": _cmd_edn,
    "reduce": _cmd_reduce,
    "kronecker": _cmd_kronecker,
    "obstruction": _cmd_obstruction,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.format == "csv" and args.command not in _TABULAR:
        print(f"error: csv output is only available for {sorted(_TABULAR)}", file=sys.stderr)
        return EXIT_PARSE
    try:
        if args.command == "selftest":
            text, code = _cmd_selftest(args)
            _emit(text, args.output)
            return code
        text = _HANDLERS[args.command](args)
        _emit(text, args.output)
        return EXIT_OK
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExhaustedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValidationError, MixedRadicandError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except GeomorseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    raise SystemExit(main())
