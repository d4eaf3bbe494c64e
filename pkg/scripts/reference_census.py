"""Solve all seven N = 5 seeds at alpha = pi/3, L = 7e4 and write the plotting table.

Usage: python3 scripts/reference_census.py [out.csv]
"""

import math
import sys

from blzmonster.blz_core import BlzConfig
from blzmonster.continuation import count_solutions
from blzmonster.io_formats import emit_figure_data
from blzmonster.partitions import enumerate_partitions
from blzmonster.rational_extensions import build_extension


def main(out=None):
    cfg = BlzConfig(math.pi / 3, 7e4)
    report = count_solutions(cfg, [build_extension(p) for p in enumerate_partitions(5)])
    for e in report.entries:
        s = e.solution
        print(f"{str(e.partition):12s} {e.seed_kind:22s} -> {e.classified_as}  "
              f"blz {s.blz_residual_inf:.1e}  monodromy {s.monodromy_residual_inf:.1e}")
    print(f"distinct: {report.distinct_count}, L/alpha = {cfg.centre.real:.6f}")
    text = emit_figure_data(report, cfg)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        print(f"wrote {out}")


if __name__ == "__main__":
    main(*sys.argv[1:])
