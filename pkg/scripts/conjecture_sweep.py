"""Sweep the Jacobian spectrum conjecture and the determinant formula to larger N.

Usage: python3 scripts/conjecture_sweep.py [max_n]
"""

import sys
import time

from blzmonster.jacobian_spectrum import check_spectrum_conjecture, determinant_ratio, sweep_jacobians


def main(max_n=10):
    max_n = int(max_n)
    t0 = time.perf_counter()
    reports = sweep_jacobians(max_n)
    worst = max(reports, key=lambda r: r.max_relative_deviation)
    bad = [r for r in reports if not check_spectrum_conjecture(r)]
    print(f"{len(reports)} non-degenerate partitions with N <= {max_n}, {len(bad)} mismatches")
    print(f"worst relative deviation {worst.max_relative_deviation:.2e} at {worst.partition}")
    for n in range(1, max_n + 1):
        print(f"  N = {n:2d}: det J / 2^N (N!)^2 = {determinant_ratio(n):.15f}")
    print(f"{time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main(*sys.argv[1:])
