"""Distance of the N = 5 roots from L/alpha as L grows.

Per-root slopes of simple roots carry O(L^{-1/4}) corrections of opposite
sign for +-t pairs, so each root is also fitted with that correction term,
and the geometric mean over roots is fitted directly.
"""

import math

import numpy as np

from blzmonster.blz_core import BlzConfig
from blzmonster.continuation import solve_partition
from blzmonster.partitions import enumerate_partitions
from blzmonster.rational_extensions import build_extension

GRID = np.array([1e5, 1e6, 1e7, 1e8, 1e9])


def main(alpha=math.pi / 3):
    dist = {}
    for p in enumerate_partitions(5):
        ext = build_extension(p)
        rows = []
        for big_l in GRID:
            cfg = BlzConfig(alpha, big_l)
            _, sol = solve_partition(ext, cfg)
            rows.append(np.sort(np.abs(np.array(sol.z_roots) - cfg.centre)))
        dist[p] = (ext.zero_multiplicity, np.array(rows))
    x = np.log(GRID)
    design = np.column_stack([x, np.ones_like(x), GRID**-0.25])
    simple, cluster = [], []
    for p, (zm, d) in dist.items():
        for k in range(d.shape[1]):
            naive = np.polyfit(x, np.log(d[:, k]), 1)[0]
            corrected = np.linalg.lstsq(design, np.log(d[:, k]), rcond=None)[0][0]
            kind = "cluster" if (zm == 3 and k < 3) else ("zero" if k < zm else "simple")
            print(f"{str(p):12s} root {k}  {kind:7s} naive {naive:.4f}  corrected {corrected:.4f}")
            if kind == "cluster":
                cluster.append(d[:, k])
            elif kind == "simple":
                simple.append(d[:, k])
    for name, group in (("cluster", cluster), ("simple", simple)):
        gm = np.exp(np.mean(np.log(np.array(group)), axis=0))
        print(f"geometric-mean slope, {name}: {np.polyfit(x, np.log(gm), 1)[0]:.4f}")


if __name__ == "__main__":
    main()
