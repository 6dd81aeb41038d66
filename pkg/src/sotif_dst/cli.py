"""Command-line front end: ``sotif-dst {validate,fuse,classify,vbsa,report}``.

Exit status: 0 success, 1 invalid scenario or degenerate thresholds,
2 usage error, 3 runtime fault (total conflict, unwritable output).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .analysis import (
    DEFAULT_THRESHOLDS,
    AnalysisReport,
    ImpactLevel,
    ImpactThresholds,
    SensitivityResult,
    build_report,
    singleton_intervals,
)
from .combination import CombinationRule
from .data import bundled_path
from .errors import DegenerateThresholds, DSTError, OutOfRange, ScenarioError, TotalConflict, ValidationError
from .mass import MassFunction
from .render import Section, to_csv, to_json, to_table
from .scenario import ScenarioConfig, fuse_scenario, load_scenario, subset_expression

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_FAULT = 0, 1, 2, 3
BUNDLED_PREFIX = "bundled:"
TOOL_NAME = "sotif-dst"


class _Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------- documents

def _masses_doc(m: MassFunction) -> dict:
    return {subset_expression(m.frame, b): v for b, v in m.as_bits().items()}


def _intervals_doc(m: MassFunction) -> dict:
    return {
        label: {"belief": iv.belief, "plausibility": iv.plausibility, "width": iv.width}
        for label, iv in singleton_intervals(m)
    }


def _fuse_sections(m: MassFunction) -> list[Section]:
    return [
        Section("masses", ["subset", "mass"], [[subset_expression(m.frame, b), v] for b, v in m.as_bits().items()]),
        Section(
            "intervals",
            ["outcome", "belief", "plausibility", "width"],
            [[label, iv.belief, iv.plausibility, iv.width] for label, iv in singleton_intervals(m)],
        ),
    ]


def _thresholds_doc(report: AnalysisReport) -> dict:
    t = report.thresholds
    return {"tau1": t.tau1, "tau2": t.tau2, "derived": report.thresholds_derived}


def _impact_doc(report: AnalysisReport) -> list:
    return [{"source": i.source, "max_u": i.max_u, "level": i.level.label} for i in report.impacts]


def _impact_sections(report: AnalysisReport) -> list[Section]:
    t = report.thresholds
    by_level = sorted(report.impacts, key=lambda i: (-i.level, i.source))
    return [
        Section("thresholds", ["tau1", "tau2", "derived"], [[t.tau1, t.tau2, report.thresholds_derived]]),
        Section("impact", ["source", "max_u", "level"], [[i.source, i.max_u, i.level.label] for i in by_level]),
    ]


def _ranking_doc(ranking: Sequence[SensitivityResult]) -> list:
    return [
        {
            "rank": k,
            "source": r.source,
            "score": r.score,
            "outcomes": {o: {"var_bel": vb, "var_pl": vp} for o, vb, vp in zip(r.outcomes, r.var_bel, r.var_pl)},
        }
        for k, r in enumerate(ranking, start=1)
    ]


def _variance_rows(ranking: Sequence[SensitivityResult]) -> list[list]:
    return [[r.source, o, vb, vp] for r in ranking for o, vb, vp in zip(r.outcomes, r.var_bel, r.var_pl)]


def _ranking_sections(ranking: Sequence[SensitivityResult]) -> list[Section]:
    return [
        Section("ranking", ["rank", "source", "score"], [[k, r.source, r.score] for k, r in enumerate(ranking, 1)]),
        Section("variances", ["source", "outcome", "var_bel", "var_pl"], _variance_rows(ranking)),
    ]


def _render(fmt: str, doc: dict, sections: list[Section]) -> str:
    if fmt == "json":
        return to_json(doc)
    if fmt == "csv":
        return to_csv(sections)
    return to_table(sections)


# ---------------------------------------------------------------- commands

def _load(path: str) -> ScenarioConfig:
    try:
        if path.startswith(BUNDLED_PREFIX):
            return load_scenario(bundled_path(path[len(BUNDLED_PREFIX):]))
        return load_scenario(path)
    except ValidationError as exc:
        lines = [f"invalid: {f}" for f in exc.findings]
        raise _Failure(EXIT_INVALID, "\n".join(lines)) from None
    except ScenarioError as exc:
        raise _Failure(EXIT_INVALID, f"invalid: {exc}") from None
    except OSError as exc:
        raise _Failure(EXIT_INVALID, f"cannot read scenario: {exc}") from None


def _thresholds(args: argparse.Namespace, parser: argparse.ArgumentParser):
    if args.derive_thresholds:
        if args.tau1 is not None or args.tau2 is not None:
            parser.error("--derive-thresholds cannot be combined with --tau1/--tau2")
        return "derive"
    tau1 = DEFAULT_THRESHOLDS.tau1 if args.tau1 is None else args.tau1
    tau2 = DEFAULT_THRESHOLDS.tau2 if args.tau2 is None else args.tau2
    try:
        return ImpactThresholds(tau1, tau2)
    except (OutOfRange, DegenerateThresholds) as exc:
        parser.error(str(exc))


def _analyse(config: ScenarioConfig, rule: CombinationRule, thresholds) -> AnalysisReport:
    try:
        return build_report(config, rule, thresholds)
    except DegenerateThresholds as exc:
        raise _Failure(EXIT_INVALID, f"cannot derive thresholds: {exc}") from None
    except OutOfRange as exc:
        raise _Failure(EXIT_INVALID, f"derived thresholds unusable: {exc}") from None


def cmd_validate(args, parser) -> str:
    config = _load(args.scenario)
    return (
        f"scenario valid: {len(config.sources)} sources, {len(config.frame)} outcomes, "
        f"{len(config.graph.edges)} edges\n"
    )


def cmd_fuse(args, parser) -> str:
    config = _load(args.scenario)
    fused = fuse_scenario(config, args.rule)
    doc = {
        "rule": args.rule.value,
        "order": list(config.order),
        "masses": _masses_doc(fused),
        "intervals": _intervals_doc(fused),
    }
    sections = [Section("fusion", ["rule", "order"], [[args.rule.value, " ".join(config.order)]])]
    return _render(args.format, doc, sections + _fuse_sections(fused))


def cmd_classify(args, parser) -> str:
    thresholds = _thresholds(args, parser)
    report = _analyse(_load(args.scenario), args.rule, thresholds)
    doc = {
        "rule": args.rule.value,
        "thresholds": _thresholds_doc(report),
        "impact": _impact_doc(report),
        "groups": {lvl.label: report.group(lvl) for lvl in ImpactLevel},
    }
    return _render(args.format, doc, _impact_sections(report))


def cmd_vbsa(args, parser) -> str:
    config = _load(args.scenario)
    report = _analyse(config, args.rule, DEFAULT_THRESHOLDS)
    if args.plot_data:
        _write(args.plot_data, to_csv([Section("variances", ["source", "outcome", "var_bel", "var_pl"], _variance_rows(report.ranking))], headers=False))
    doc = {"rule": args.rule.value, "ranking": _ranking_doc(report.ranking)}
    return _render(args.format, doc, _ranking_sections(report.ranking))


def cmd_report(args, parser) -> str:
    thresholds = _thresholds(args, parser)
    config = _load(args.scenario)
    report = _analyse(config, args.rule, thresholds)
    meta = {"tool": TOOL_NAME, "version": __version__, "title": config.title, "rule": args.rule.value}
    doc = {
        **meta,
        "order": list(config.order),
        "masses": _masses_doc(report.fused),
        "intervals": _intervals_doc(report.fused),
        "thresholds": _thresholds_doc(report),
        "impact": _impact_doc(report),
        "ranking": _ranking_doc(report.ranking),
    }
    sections = [
        Section("metadata", ["key", "value"], [[k, v] for k, v in meta.items()] + [["order", " ".join(config.order)]]),
        *_fuse_sections(report.fused),
        *_impact_sections(report),
        *_ranking_sections(report.ranking),
    ]
    return _render(args.format, doc, sections)


# ---------------------------------------------------------------- plumbing

def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _Failure(EXIT_FAULT, f"cannot write {path}: {exc.strerror or exc}") from None


def _unit_interval(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"threshold must lie strictly between 0 and 1, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--format", choices=["json", "csv", "table"], help="output format (default: table)")
    common.add_argument("--rule", choices=[r.value for r in CombinationRule], help="combination rule (default: yager)")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")

    parser = argparse.ArgumentParser(
        prog=TOOL_NAME,
        parents=[common],
        description="Dempster-Shafer uncertainty analysis of SOTIF scenarios. "
        f"Scenario arguments accept a file path or '{BUNDLED_PREFIX}NAME' for a bundled scenario.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.add_argument("scenario", help="scenario file")
        p.set_defaults(func=func)
        return p

    command("validate", cmd_validate, "check a scenario file and report every problem found")
    command("fuse", cmd_fuse, "fuse all sources and print masses and singleton intervals")
    for name, func, text in [
        ("classify", cmd_classify, "classify sources into Low/Moderate/High impact"),
        ("report", cmd_report, "full analysis: fusion, impact classification and sensitivity ranking"),
    ]:
        p = command(name, func, text)
        p.add_argument("--tau1", type=_unit_interval, default=None, help="Low/Moderate boundary (default 0.2)")
        p.add_argument("--tau2", type=_unit_interval, default=None, help="Moderate/High boundary (default 0.5)")
        p.add_argument("--derive-thresholds", action="store_true", help="use 25th/75th percentiles of per-source max uncertainty")
    p = command("vbsa", cmd_vbsa, "rank sources by variance of belief and plausibility over their states")
    p.add_argument("--plot-data", metavar="PATH", help="write (source, outcome, var_bel, var_pl) rows as csv")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    args.format = getattr(args, "format", "table")
    args.rule = CombinationRule.parse(getattr(args, "rule", "yager"))
    out = getattr(args, "out", None)
    try:
        text = args.func(args, parser)
        if out:
            _write(out, text)
        else:
            sys.stdout.write(text)
    except SystemExit as exc:  # parser.error inside a command
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except _Failure as exc:
        print(exc, file=sys.stderr)
        return exc.code
    except TotalConflict as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAULT
    except DSTError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAULT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
