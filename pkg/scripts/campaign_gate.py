from __future__ import annotations

import argparse
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from asp_module_algebra.reports import read_reports  # noqa: E402


def _load(path: Path):
    try:
        return read_reports(path)
    except FileNotFoundError as exc:
        raise SystemExit(f"report file not found: {path}") from exc


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        description=(
            "Fail the build if a theorem campaign reported a failure or ran short. "
            "Input must be the JSON-lines file written by `mlp check --report`."
        )
    )
    parser.add_argument("report_jsonl", type=Path)
    parser.add_argument("--expect-trials", type=int, default=None)

    args = parser.parse_args(argv)

    reports = _load(args.report_jsonl)

    failures: list[str] = []
    undecodable = sum(1 for report in reports if report is None)
    if undecodable:
        failures.append(f"{undecodable} line(s) could not be decoded")

    decoded = [report for report in reports if report is not None]
    for report in decoded:
        if not report.passed:
            failures.append(report.summary())

    if args.expect_trials is not None and len(decoded) < args.expect_trials:
        failures.append(f"only {len(decoded)} trial(s) reported, expected {args.expect_trials}")

    if failures:
        print("Campaign gate failed:")
        for msg in failures:
            print(f"- {msg}")
        return 1

    applicable = sum(1 for report in decoded if report.applicable)
    print(f"Campaign gate passed ({len(decoded)} report(s), {applicable} applicable).")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
