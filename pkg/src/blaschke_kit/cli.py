"""Command-line harness: ``verify``, ``suite``, ``report`` and ``plot``.

Exit codes: 0 when every check passes, 1 when any check fails or is
indeterminate, 2 when a scenario is invalid.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .errors import InvalidScenario
from .report import (FAIL, INDETERMINATE, INVALID, VerificationReport, reports_from_json,
                     reports_to_csv, reports_to_json)
from .scenarios import Scenario, run_scenario

EXIT_PASS, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


def _exit_code(reports: list[VerificationReport]) -> int:
    states = {r.status for r in reports}
    if INVALID in states:
        return EXIT_INVALID
    if FAIL in states or INDETERMINATE in states:
        return EXIT_FAIL
    return EXIT_PASS


def _render(reports: list[VerificationReport], fmt: str, timings: bool = False) -> str:
    return reports_to_csv(reports) if fmt == "csv" else reports_to_json(reports, timings)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _run_file(path: Path) -> VerificationReport:
    try:
        sc = Scenario.load(path)
    except InvalidScenario as exc:
        return VerificationReport(path.stem, "unknown", [], valid=False, message=str(exc))
    return run_scenario(sc)


def cmd_verify(args) -> int:
    rep = _run_file(Path(args.scenario))
    _emit(_render([rep], args.format, args.timings), args.out)
    if not rep.valid:
        print(f"invalid scenario: {rep.message}", file=sys.stderr)
    return _exit_code([rep])


def cmd_suite(args) -> int:
    files = sorted(Path(args.directory).glob("*.json"))
    if not files:
        print(f"no scenario files in {args.directory}", file=sys.stderr)
        return EXIT_INVALID
    reports = [_run_file(f) for f in files]
    _emit(_render(reports, args.format, args.timings), args.out)
    for r in reports:
        print(f"{r.scenario_id}: {r.status}", file=sys.stderr)
    return _exit_code(reports)


def cmd_report(args) -> int:
    reports = reports_from_json(Path(args.report).read_text())
    _emit(_render(reports, args.format), args.out)
    return _exit_code(reports)


def cmd_plot(args) -> int:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    reports = reports_from_json(Path(args.report).read_text())
    curves = [(f"{rep.scenario_id}:{rec.check}", rec.series) for rep in reports
              for rec in rep.records if rec.series.get("R")]
    plt.rcParams["svg.hashsalt"] = "blaschke-kit"
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for label, s in curves:
        x = [-math.log2(1 - r) for r in s["R"]]
        ax.plot(x, s["value"], marker="o", label=label)
    ax.set_xlabel("k  (R = 1 - 2^-k)")
    ax.set_ylabel("weighted integral")
    if curves:
        ax.set_yscale("log")
        ax.legend(fontsize=7)
    fig.tight_layout()
    out = args.svg
    fig.savefig(out, format="svg", metadata={"Date": None})
    plt.close(fig)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="blaschke-kit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def output_opts(p, fmt=True):
        if fmt:
            p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("-o", "--out", help="write to a file instead of stdout")

    p = sub.add_parser("verify", help="run one scenario file")
    p.add_argument("scenario")
    p.add_argument("--timings", action="store_true", help="include wall times (JSON only)")
    output_opts(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("suite", help="run every *.json scenario in a directory")
    p.add_argument("directory")
    p.add_argument("--timings", action="store_true", help="include wall times (JSON only)")
    output_opts(p)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("report", help="re-render a saved JSON report")
    p.add_argument("report")
    output_opts(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("plot", help="plot R-sweep curves of a JSON report")
    p.add_argument("report")
    p.add_argument("--svg", required=True, help="output SVG path")
    p.set_defaults(func=cmd_plot)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
