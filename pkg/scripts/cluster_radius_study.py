"""Cluster radius b of the triple-zero mixed seeds: linear system vs kappa^(1/3).

Compares the coupling weight produced by expanding the residual (6) with the
alternative weight 12, and checks which one the converged solutions follow.
"""

import math

import numpy as np

from blzmonster.asymptotic_seeds import X2, first_order_system
from blzmonster.blz_core import BlzConfig, kappa, phi_inverse
from blzmonster.continuation import solve_partition
from blzmonster.partitions import enumerate_partitions
from blzmonster.rational_extensions import build_extension


def measured_b_cubed(ext, alpha, big_l):
    cfg = BlzConfig(alpha, big_l)
    _, sol = solve_partition(ext, cfg)
    t = phi_inverse(cfg, np.array(sol.z_roots))
    cluster = t[np.argsort(np.abs(t))[:3]]
    # project onto the rotating mode; the mean is the eps c1 shift
    b = np.mean(np.abs(cluster - cluster.mean())) / abs(cfg.eps) ** (1 / 3)
    return b**3 * np.sign(kappa(alpha))


def main():
    alpha = math.pi / 3
    print(f"alpha = pi/3, kappa = {kappa(alpha):.6f}")
    for n in range(4, 8):
        for p in enumerate_partitions(n):
            ext = build_extension(p)
            if ext.zero_multiplicity != 3 or ext.n_roots == 3:
                continue
            u = ext.nontrivial_roots()
            six = first_order_system(u, alpha).b_cubed.real
            twelve = first_order_system(u, alpha, coupling=12).b_cubed.real
            line = f"{str(p):14s} b^3 weight 6: {six:+.6f}  weight 12: {twelve:+.6f}"
            if n <= 5:
                line += f"  solved at L=1e8: {measured_b_cubed(ext, alpha, 1e8):+.4f}"
            print(line)
    print(f"rotating mode X2 = {np.round(X2, 3)}")


if __name__ == "__main__":
    main()
