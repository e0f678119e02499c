"""Command-line front end.

Exit codes: 0 success; 1 usage or I/O error; 2 validation error in a
taxonomy, spec, or trace; 3 monitor run that detected at least one exit
event under --fail-on-exit. Standard error carries diagnostics only.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .domain import parse_lod, parse_trace
from .errors import OddspecError
from .evaluator import diagnose
from .monitor import EventKind, monitor_init, monitor_step, report_from_state, report_json
from .specdsl import check_spec, parse_spec, render_value, serialize_spec
from .taxonomy import (
    BoolType,
    EnumType,
    IntType,
    Taxonomy,
    domain_cardinality,
    parse_taxonomy,
)


class _Parser(argparse.ArgumentParser):
    # usage errors are exit code 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_taxonomy(path: str) -> Taxonomy:
    return parse_taxonomy(_read(path))


def _type_summary(attr_type) -> str:
    if isinstance(attr_type, EnumType):
        labels = ", ".join(attr_type.labels)
        prefix = "ordered enum" if attr_type.ordered else "enum"
        return f"{prefix}{{{labels}}}"
    if isinstance(attr_type, BoolType):
        return "bool"
    name = "int" if isinstance(attr_type, IntType) else "real"
    parts = [name]
    if attr_type.unit is not None:
        parts.append(attr_type.unit)
    if attr_type.minimum is not None:
        parts.append(f"min={render_value(attr_type.minimum)}")
    if attr_type.maximum is not None:
        parts.append(f"max={render_value(attr_type.maximum)}")
    return " ".join(parts)


def cmd_validate(args) -> int:
    taxonomy = _load_taxonomy(args.taxonomy)
    print(f"version: {taxonomy.version}")
    print(f"attributes: {len(taxonomy)}")
    for attribute in taxonomy.attributes:
        print(f"  {attribute.name}: {_type_summary(attribute.attr_type)}")
    size = domain_cardinality(taxonomy)
    print(f"cardinality: {'infinite' if math.isinf(size) else size}")
    return 0


def cmd_check(args) -> int:
    taxonomy = _load_taxonomy(args.taxonomy)
    spec = check_spec(parse_spec(_read(args.spec)), taxonomy)
    print(serialize_spec(spec.ast))
    print(f"mentioned attributes: {', '.join(sorted(spec.mentioned_attributes))}")
    return 0


def cmd_eval(args) -> int:
    taxonomy = _load_taxonomy(args.taxonomy)
    spec = check_spec(parse_spec(_read(args.spec)), taxonomy)
    record = args.lod if args.lod.lstrip().startswith("{") else _read(args.lod)
    lod = parse_lod(record, taxonomy)
    report = diagnose(spec, lod)
    print(f"verdict: {report.verdict.value}")
    for atom in report.falsified_atoms:
        print(f"falsified: {serialize_spec(atom)}")
    for atom in report.unknown_atoms:
        print(f"unknown: {serialize_spec(atom)}")
    return 0


def cmd_enumerate(args) -> int:
    taxonomy = _load_taxonomy(args.taxonomy)
    if args.spec is None:
        from .domain import enumerate_od

        tuples = enumerate_od(taxonomy)
    else:
        from .evaluator import enumerate_odd

        spec = check_spec(parse_spec(_read(args.spec)), taxonomy)
        tuples = enumerate_odd(taxonomy, spec)
    for values in tuples:
        print(",".join(render_value(v) for v in values))
    return 0


def cmd_monitor(args) -> int:
    taxonomy = _load_taxonomy(args.taxonomy)
    spec = check_spec(parse_spec(_read(args.spec)), taxonomy)
    trace = parse_trace(_read(args.trace), taxonomy)
    state = monitor_init(spec, taxonomy)
    events = []
    for sample in trace.samples:
        _, verdict, step_events = monitor_step(state, sample)
        events.extend(step_events)
        print(f"t={render_value(sample.t)} verdict={verdict.value}")
    report = report_from_state(state, events)
    if args.report is not None:
        Path(args.report).write_text(report_json(report), encoding="utf-8")
    exited = any(event.kind is EventKind.EXIT for event in report.events)
    if args.fail_on_exit and exited:
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="oddspec", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="validate a taxonomy file")
    validate.add_argument("--taxonomy", required=True, metavar="PATH")
    validate.set_defaults(func=cmd_validate)

    check = commands.add_parser("check", help="check a spec against a taxonomy")
    check.add_argument("--taxonomy", required=True, metavar="PATH")
    check.add_argument("--spec", required=True, metavar="PATH")
    check.set_defaults(func=cmd_check)

    evaluate = commands.add_parser("eval", help="evaluate a spec on one sample")
    evaluate.add_argument("--taxonomy", required=True, metavar="PATH")
    evaluate.add_argument("--spec", required=True, metavar="PATH")
    evaluate.add_argument(
        "--lod", required=True, metavar="PATH_OR_JSON",
        help="sample record: a path, or the record itself if it starts with '{'",
    )
    evaluate.set_defaults(func=cmd_eval)

    enumerate_ = commands.add_parser(
        "enumerate", help="list all domain tuples, optionally filtered by a spec"
    )
    enumerate_.add_argument("--taxonomy", required=True, metavar="PATH")
    enumerate_.add_argument("--spec", metavar="PATH")
    enumerate_.set_defaults(func=cmd_enumerate)

    monitor = commands.add_parser("monitor", help="monitor a drive trace")
    monitor.add_argument("--taxonomy", required=True, metavar="PATH")
    monitor.add_argument("--spec", required=True, metavar="PATH")
    monitor.add_argument("--trace", required=True, metavar="PATH")
    monitor.add_argument("--report", metavar="PATH", help="write a JSON report here")
    monitor.add_argument(
        "--fail-on-exit", action="store_true",
        help="exit with status 3 if the trace ever leaves the design domain",
    )
    monitor.set_defaults(func=cmd_monitor)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.func(args)
    except OddspecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())
