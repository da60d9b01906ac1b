#!/usr/bin/env python3
"""Run every registered fixture and print the per-check report."""

import sys

from vlpdual.harness import emit_report, run_all_fixtures


def main() -> int:
    report = run_all_fixtures()
    print(emit_report(report, "human"))
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
