"""Command-line interface.

Subcommands: ``solve``, ``sweep``, ``gen``, ``verify``.  Results are JSON
documents on stdout; temperatures appear as decimal strings.

Exit codes: 0 success, 1 parse/validation error, 2 infeasible budget,
3 exhaustive-search size refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import (
    Instance,
    Schedule,
    ValidationError,
    color_changes,
    format_temperature,
)
from .formats import (
    detect_format,
    emit_plot,
    generate_instance,
    parse_instance,
    plot_svg,
    plot_tsv,
    serialize_instance,
    verify_schedule,
)
from .oracle import OracleSizeError, brute_force_optimal, enumerate_pareto, oracle_job_limit
from .solver import SolveResult, pareto_sweep, shortest_schedule

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INFEASIBLE = 2
EXIT_TOO_LARGE = 3


def _load_instance(path: str, fmt: str | None) -> Instance:
    text = Path(path).read_text(encoding="utf-8")
    return parse_instance(text, fmt or detect_format(text))


def _result_document(result: SolveResult, pareto: list[tuple[int, int | None]] | None = None) -> dict:
    doc: dict = {
        "schedule": list(result.schedule.expanded_ids()) if result.schedule else [],
        "T": format_temperature(result.total_change) if result.total_change is not None else None,
        "C": result.changes,
        "feasible": result.feasible,
    }
    if pareto is not None:
        doc["pareto"] = [
            [k, None if v is None else format_temperature(v)] for k, v in pareto
        ]
    return doc


def _write_plot(schedule: Schedule, path: str) -> None:
    rows = emit_plot(schedule)
    text = plot_svg(rows) if path.endswith(".svg") else plot_tsv(rows)
    Path(path).write_text(text, encoding="utf-8")


def _solve_multicolor(instance: Instance, budget: int) -> SolveResult:
    """Route instances with three or more colors through the oracle."""
    limit = oracle_job_limit()
    if len(instance.jobs) > limit:
        raise OracleSizeError(
            "no polynomial algorithm is known for three or more colors; "
            f"exhaustive search handles at most {limit} merged jobs "
            f"(got {len(instance.jobs)})"
        )
    outcome = brute_force_optimal(instance, budget)
    if not outcome.feasible:
        return SolveResult(None, None, None, False, 0)
    schedule = outcome.optimal_schedules[0]
    changes = color_changes(schedule)
    return SolveResult(
        schedule=schedule,
        total_change=outcome.optimal_total_change,
        changes=changes,
        feasible=True,
        layer_reached=changes + 1,
    )


def _cmd_solve(args: argparse.Namespace) -> int:
    instance = _load_instance(args.input, args.format)
    budget = args.max_color_changes
    if len(instance.colors) > 2:
        result = _solve_multicolor(instance, budget)
    else:
        result = shortest_schedule(instance, budget)
    if result.feasible and args.oracle_check:
        limit = oracle_job_limit()
        if len(instance.jobs) > limit:
            raise OracleSizeError(
                f"oracle check handles at most {limit} merged jobs, "
                f"got {len(instance.jobs)}"
            )
        reference = brute_force_optimal(instance, budget)
        if reference.optimal_total_change != result.total_change:
            print(
                f"oracle mismatch: solver {result.total_change}, "
                f"oracle {reference.optimal_total_change}",
                file=sys.stderr,
            )
            return EXIT_INVALID
    print(json.dumps(_result_document(result), indent=2))
    if not result.feasible:
        print(
            "infeasible: the color-change budget is below the minimum any "
            "schedule of this instance needs",
            file=sys.stderr,
        )
        return EXIT_INFEASIBLE
    if args.emit_plot and result.schedule is not None:
        _write_plot(result.schedule, args.emit_plot)
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    instance = _load_instance(args.input, args.format)
    if len(instance.colors) > 2:
        limit = oracle_job_limit()
        if len(instance.jobs) > limit:
            raise OracleSizeError(
                "no polynomial algorithm is known for three or more colors; "
                f"exhaustive search handles at most {limit} merged jobs"
            )
        table = enumerate_pareto(instance)
        feasible = [k for k, v in table if v is not None]
        result = _solve_multicolor(instance, feasible[-1]) if feasible else SolveResult(None, None, None, False, 0)
    else:
        table = pareto_sweep(instance)
        best_cap = table[-1][0]
        result = shortest_schedule(instance, best_cap)
    print(json.dumps(_result_document(result, pareto=table), indent=2))
    if args.emit_plot_dir and result.feasible:
        out_dir = Path(args.emit_plot_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for k, value in table:
            if value is None:
                continue
            if len(instance.colors) > 2:
                entry = _solve_multicolor(instance, k)
            else:
                entry = shortest_schedule(instance, k)
            if entry.schedule is not None:
                _write_plot(entry.schedule, str(out_dir / f"pareto_k{k}.tsv"))
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    instance = generate_instance(
        seed=args.seed, n0=args.n0, n1=args.n1, t_min=args.t_min, t_max=args.t_max
    )
    text = serialize_instance(instance, "csv")
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {len(instance.jobs)} jobs to {args.out}")
    else:
        print(text, end="")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    instance = _load_instance(args.input, args.format)
    payload = json.loads(Path(args.schedule).read_text(encoding="utf-8"))
    if isinstance(payload, dict):
        ids = payload.get("schedule")
        claimed_t = payload.get("T")
        claimed_c = payload.get("C")
    else:
        ids, claimed_t, claimed_c = payload, None, None
    if not isinstance(ids, list):
        raise ValidationError("schedule file must hold an id array or a result document")
    report = verify_schedule(instance, [str(i) for i in ids])
    if claimed_t is not None:
        report["matches_claimed"] = (
            str(claimed_t) == report["T"] and claimed_c == report["C"]
        )
    print(json.dumps(report, indent=2))
    if report.get("matches_claimed") is False:
        return EXIT_INVALID
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="calsched",
        description="Exact bicriteria sequencing of temperature/color jobs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="minimize total temperature change under a budget")
    solve.add_argument("--input", required=True)
    solve.add_argument("--max-color-changes", type=int, required=True, dest="max_color_changes")
    solve.add_argument("--format", choices=["csv", "json"])
    solve.add_argument("--emit-plot", dest="emit_plot")
    solve.add_argument("--oracle-check", action="store_true", dest="oracle_check")
    solve.set_defaults(func=_cmd_solve)

    sweep = sub.add_parser("sweep", help="optimal value for every color-change budget")
    sweep.add_argument("--input", required=True)
    sweep.add_argument("--format", choices=["csv", "json"])
    sweep.add_argument("--emit-plot-dir", dest="emit_plot_dir")
    sweep.set_defaults(func=_cmd_sweep)

    gen = sub.add_parser("gen", help="generate a random instance")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--n0", type=int, required=True)
    gen.add_argument("--n1", type=int, required=True)
    gen.add_argument("--out")
    gen.add_argument("--t-min", type=int, default=1, dest="t_min")
    gen.add_argument("--t-max", type=int, default=1000, dest="t_max")
    gen.set_defaults(func=_cmd_gen)

    verify = sub.add_parser("verify", help="recompute metrics for a given schedule")
    verify.add_argument("--input", required=True)
    verify.add_argument("--schedule", required=True)
    verify.add_argument("--format", choices=["csv", "json"])
    verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OracleSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (ValidationError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
