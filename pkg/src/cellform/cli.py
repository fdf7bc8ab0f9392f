"""Command-line front end: solve, score, bench, and serve subcommands."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .clustering import ClusterConfig, run_pipeline
from .export import (
    AssignmentError,
    export_json,
    parse_assignment,
    score_assignment,
)
from .instance import Instance, InstanceError, builtin_instances, parse_instance
from .metrics import MetricsReport, block_view, score
from .similarity import round_half_away, similarity_csv

log = logging.getLogger("cellform")


class CliError(Exception):
    """User-facing failure; message goes to stderr, exit code is 1."""


def _configure_logging() -> None:
    level = os.environ.get("CELLFORM_LOG", "off").lower()
    levels = {"off": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(
        level=levels.get(level, logging.ERROR),
        format="%(levelname)s %(name)s: %(message)s",
    )


def _load_instance(path: str | None, builtin: str | None) -> Instance:
    if (path is None) == (builtin is None):
        raise CliError("give exactly one of an instance file or --builtin NAME")
    if builtin is not None:
        inst = builtin_instances().get(builtin)
        if inst is None:
            known = ", ".join(sorted(builtin_instances()))
            raise CliError(f"unknown builtin {builtin!r} (available: {known})")
        return inst
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    try:
        return parse_instance(text)
    except InstanceError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _config_from_args(args) -> ClusterConfig:
    try:
        return ClusterConfig(
            n_cells=args.cells,
            gap_threshold_deg=args.gap_threshold,
            independence_deg=args.independence,
        )
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _pct(value: float) -> str:
    return f"{round_half_away(value, 2):.2f}"


def _print_report(report: MetricsReport, out) -> None:
    print(f"UE = {report.ue}  EE = {report.ee}  VE = {report.ve}", file=out)
    print(
        f"PE = {_pct(report.pe)}%  MU = {_pct(report.mu)}%  GE = {_pct(report.ge)}%",
        file=out,
    )
    for w in report.warnings:
        print(f"warning: {w}", file=out)


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance, args.builtin)
    result = run_pipeline(inst, _config_from_args(args))
    sol = result.solution
    report = score(inst, sol)

    print(block_view(inst, sol))
    print(f"cells = {sol.n_cells}")
    for k in range(1, sol.n_cells + 1):
        ms = [l for l, c in zip(sol.machine_labels, sol.machine_cell) if c == k]
        ps = [l for l, f in zip(sol.part_labels, sol.part_family) if f == k]
        print(f"cell {k}: machines {{{', '.join(ms)}}}  parts {{{', '.join(ps)}}}")
    print("exceptional machines: " + (", ".join(sorted(sol.exceptional_machines)) or "(none)"))
    print("exceptional parts: " + (", ".join(sorted(sol.exceptional_parts)) or "(none)"))
    _print_report(report, sys.stdout)
    for w in sol.warnings:
        print(f"warning: {w}")

    if args.out:
        Path(args.out).write_text(export_json(result, report), encoding="utf-8")
        log.info("export written to %s", args.out)
    if args.similarity_csv:
        Path(args.similarity_csv).write_text(
            similarity_csv(result.similarity), encoding="utf-8"
        )
        log.info("similarity matrix written to %s", args.similarity_csv)
    return 0


def cmd_score(args) -> int:
    inst = _load_instance(args.instance, args.builtin)
    try:
        machine_cell, part_family = parse_assignment(
            Path(args.assignment).read_text(encoding="utf-8")
        )
        report = score_assignment(inst, machine_cell, part_family)
    except OSError as exc:
        raise CliError(f"cannot read {args.assignment}: {exc}") from exc
    except AssignmentError as exc:
        raise CliError(f"{args.assignment}: {exc}") from exc
    _print_report(report, sys.stdout)
    return 0


def _read_sidecar(path: Path) -> dict[str, float]:
    expectations: dict[str, float] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = (t.strip() for t in line.partition("="))
        if not sep or key not in ("pe", "mu", "ge", "cells", "tolerance"):
            raise CliError(f"{path} line {lineno}: expected pe/mu/ge/cells/tolerance=value")
        try:
            expectations[key] = float(value)
        except ValueError:
            raise CliError(f"{path} line {lineno}: {value!r} is not a number") from None
    return expectations


def cmd_bench(args) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        raise CliError(f"not a directory: {directory}")
    rows = []
    any_failed = False
    for path in sorted(directory.glob("*.cfm")):
        try:
            inst = parse_instance(path.read_text(encoding="utf-8"))
        except (OSError, InstanceError) as exc:
            print(f"warning: skipping {path.name}: {exc}", file=sys.stderr)
            continue
        sidecar = path.with_suffix(".expect")
        expectations = _read_sidecar(sidecar) if sidecar.exists() else {}
        n_cells = int(expectations["cells"]) if "cells" in expectations else None
        tolerance = expectations.get("tolerance", args.tolerance)
        sol = run_pipeline(inst, ClusterConfig(n_cells=n_cells)).solution
        report = score(inst, sol)

        deltas = []
        failed = False
        for key in ("pe", "mu", "ge"):
            if key in expectations:
                delta = getattr(report, key) - expectations[key]
                deltas.append(f"d{key.upper()}={delta:+.2f}")
                if abs(delta) > tolerance:
                    failed = True
        any_failed = any_failed or failed
        status = "FAIL" if failed else ("PASS" if deltas else "")
        rows.append((
            path.stem,
            f"{inst.n_machines} machines x {inst.n_parts} parts",
            str(sol.n_cells),
            _pct(report.pe), _pct(report.mu), _pct(report.ge),
            " ".join(deltas), status,
        ))

    header = ("name", "size", "cells", "PE", "MU", "GE", "delta", "status")
    widths = [max(len(header[c]), *(len(r[c]) for r in rows)) if rows else len(header[c])
              for c in range(len(header))]
    for row in (header, *rows):
        print("  ".join(field.ljust(w) for field, w in zip(row, widths)).rstrip())
    return 1 if any_failed else 0


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    inst = _load_instance(args.instance, args.builtin)
    app = create_app(inst, _config_from_args(args), ui_dir=args.ui_dir)
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except (OSError, SystemExit) as exc:
        raise CliError(f"cannot serve on port {args.port}: {exc}") from exc
    return 0


def _add_instance_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("instance", nargs="?", help="instance file (.cfm)")
    parser.add_argument("--builtin", help="name of an embedded instance")


def _add_config_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--cells", type=int, default=None,
                        help="exact number of cells (default: derive from gaps)")
    parser.add_argument("--gap-threshold", type=float, default=60.0,
                        help="circular gap in degrees that separates cells")
    parser.add_argument("--independence", type=float, default=90.0,
                        help="intra-cell spread in degrees that flags an exceptional machine")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cellform",
        description="Machine-part cell formation via correlation PCA",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one instance and print the block view")
    _add_instance_arguments(p_solve)
    _add_config_arguments(p_solve)
    p_solve.add_argument("--out", help="write the JSON solution export here")
    p_solve.add_argument("--similarity-csv",
                         help="also write the similarity matrix as CSV here")
    p_solve.set_defaults(func=cmd_solve)

    p_score = sub.add_parser("score", help="score an externally supplied assignment")
    _add_instance_arguments(p_score)
    p_score.add_argument("--assignment", required=True, help="assignment file")
    p_score.set_defaults(func=cmd_score)

    p_bench = sub.add_parser("bench", help="solve every .cfm file in a directory")
    p_bench.add_argument("directory")
    p_bench.add_argument("--tolerance", type=float, default=0.5,
                         help="allowed |delta| against sidecar expectations")
    p_bench.set_defaults(func=cmd_bench)

    p_serve = sub.add_parser("serve", help="serve the designer UI and the scoring API")
    _add_instance_arguments(p_serve)
    _add_config_arguments(p_serve)
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--ui-dir", help="directory of built UI assets to serve at /")
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"cellform: {exc}", file=sys.stderr)
        return 1
    except (InstanceError, AssignmentError, ValueError) as exc:
        print(f"cellform: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
