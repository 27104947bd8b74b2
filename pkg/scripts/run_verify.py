#!/usr/bin/env python3
"""Run every verification suite and write the combined JSON report.

Usage: python scripts/run_verify.py [report.json]
"""

import sys

from hermquant import verify


def main() -> int:
    out = sys.argv[1] if len(sys.argv) > 1 else "verify_report.json"
    checks = verify.run("all")
    for c in checks:
        mark = "pass" if c.passed else "FAIL"
        print(f"[{mark}] {c.name:55s} residual={c.max_residual:.3e}")
    with open(out, "w") as fh:
        fh.write(verify.report_json(checks, "all"))
    failed = [c for c in checks if not c.passed]
    print(f"\n{len(checks) - len(failed)}/{len(checks)} checks passed; "
          f"report written to {out}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
