#!/usr/bin/env python3
"""Print the sector-by-sector comparison of the two quantization routes.

Usage: python scripts/spectrum_report.py [s_max]
"""

import sys

from hermquant.physics import spectrum_compare


def main() -> int:
    s_max = int(sys.argv[1]) if len(sys.argv) > 1 else 4
    rows = spectrum_compare(range(s_max + 1))
    cols = ("s", "ground_direct", "ground_substituted", "global_shift",
            "zero_point_gap_direct", "zero_point_gap_substituted",
            "first_gap_direct", "first_gap_substituted",
            "infimum_quantized_q2", "physically_equivalent")
    widths = [max(len(c), 10) for c in cols]
    print("  ".join(c.ljust(w) for c, w in zip(cols, widths)))
    for r in rows:
        d = r.to_dict()
        cells = []
        for c, w in zip(cols, widths):
            v = d[c]
            cells.append((f"{v:.6g}" if isinstance(v, float) else str(v)).ljust(w))
        print("  ".join(cells))
    return 0


if __name__ == "__main__":
    sys.exit(main())
