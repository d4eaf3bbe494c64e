"""Large-L starting points for the BLZ roots, and classification of solutions by partition."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .blz_core import BlzConfig, kappa, phi_inverse, phi_map
from .jacobian_spectrum import build_mixed_matrices, check_mixed_invertibility
from .partitions import Partition
from .rational_extensions import RationalExtension

OMEGA = cmath.exp(2j * math.pi / 3)
X1 = np.array([1, 1, 1], dtype=complex)
X2 = np.array([1, OMEGA, OMEGA**2])
X3 = np.array([1, OMEGA**2, OMEGA])

# Weight of the u-u and u-cluster couplings that the residual expansion produces.
EXPANSION_COUPLING = 6

A_MINUS = np.cbrt((5 - 3 * math.sqrt(5)) / 2)
A_PLUS = np.cbrt((5 + 3 * math.sqrt(5)) / 2)

ALPHA_CRITICAL = 2.5


class SeedError(ValueError):
    pass


class AmbiguousClassification(ValueError):
    def __init__(self, message: str, candidates):
        super().__init__(message)
        self.candidates = candidates


@dataclass(frozen=True)
class SeedExpansion:
    partition: Partition
    kind: str
    t_seed: tuple[complex, ...]
    order_used: str
    details: dict = field(default_factory=dict)

    def z_seed(self, cfg: BlzConfig) -> np.ndarray:
        return phi_map(cfg, np.array(self.t_seed))


def principal_cbrt(x: complex) -> complex:
    x = complex(x)
    if x.imag == 0 and x.real >= 0:
        return complex(x.real ** (1 / 3))
    return cmath.exp(cmath.log(x) / 3)


def seed_non_degenerate(ext: RationalExtension, cfg: BlzConfig) -> SeedExpansion:
    if ext.zero_multiplicity > 1 or any(m > 1 for m in ext.roots.multiplicities):
        raise SeedError(f"{ext.partition} has a repeated root")
    t = tuple(complex(v) for v in ext.all_roots())
    return SeedExpansion(ext.partition, "non_degenerate", t, "t = v (order eps^0)")


def seed_degenerate_d2(cfg: BlzConfig) -> SeedExpansion:
    """Triple cluster for the partition (2,1): Puiseux series through eps^3."""
    eps, m = cfg.eps, cfg.m
    part = Partition((2, 1))
    if math.isclose(cfg.alpha, ALPHA_CRITICAL):
        t0 = -45 / (2 * 7**0.75)
        t = tuple(complex(eps**3 * t0) for _ in range(3))
        return SeedExpansion(part, "fully_degenerate_d2", t, "eps^3 t0, coincident at leading order",
                             {"t0": t0, "coincident": True})
    b = principal_cbrt(kappa(cfg.alpha))
    c3 = b**5 / 2
    c1 = -(m - 1) * (23 * m - 53) / (36 * m**0.75)
    e13 = eps ** (1 / 3)
    t = e13 * b * X2 + e13**5 * c3 * X3 + eps**3 * c1 * X1
    return SeedExpansion(part, "fully_degenerate_d2", tuple(complex(x) for x in t),
                         "eps^(1/3), eps^(5/3), eps^3", {"b": b, "c3_1": c3, "c1_2": c1})


def seed_degenerate_d3(cfg: BlzConfig) -> SeedExpansion:
    """Six collapsing roots for (3,2,1): two rotated triangles of radii a^- and a^+."""
    if math.isclose(cfg.alpha, ALPHA_CRITICAL):
        raise SeedError("leading cluster term vanishes at alpha = 5/2")
    k13 = principal_cbrt(kappa(cfg.alpha))
    e13 = cfg.eps ** (1 / 3)
    t = np.concatenate([e13 * A_MINUS * k13 * X2, e13 * A_PLUS * k13 * X2])
    return SeedExpansion(Partition((3, 2, 1)), "fully_degenerate_d3", tuple(complex(x) for x in t),
                         "eps^(1/3)", {"a_minus": A_MINUS, "a_plus": A_PLUS})


@dataclass(frozen=True)
class FirstOrderSolution:
    b: complex
    b_cubed: complex
    c1_1: complex
    u1: np.ndarray
    condition: float


def first_order_system(u_roots, alpha: float, coupling: int = EXPANSION_COUPLING) -> FirstOrderSolution:
    """Solve the 2n+2 linear system fixing the cluster radius b and the first u corrections.

    Unknowns are (-20 b^3, -6 c_1, u^(1)). The right-hand side is
    (M-7)/M^{1/4} (0, 1/20, -u_a^2).
    """
    u = np.asarray(u_roots, dtype=complex)
    mats = build_mixed_matrices(u, coupling=coupling)
    big = mats.first_order_matrix()
    cond = float(np.linalg.cond(big))
    if not np.isfinite(cond) or cond > 1e12:
        raise SeedError(f"first-order matrix is singular (condition {cond:.3e})")
    m = 2 * alpha + 2
    rhs = (m - 7) / m**0.25 * np.concatenate([[0, 1 / 20], -(u**2)])
    x = np.linalg.solve(big, rhs)
    b3 = -x[0] / 20
    return FirstOrderSolution(principal_cbrt(b3), complex(b3), complex(-x[1] / 6), x[2:], cond)


def seed_partially_degenerate(ext: RationalExtension, cfg: BlzConfig) -> SeedExpansion:
    """Triple cluster at the origin plus 2n simple roots.

    The cluster radius b comes from the first-order linear system; the
    value obtained with coupling weight 12 is reported alongside.
    """
    if ext.zero_multiplicity != 3 or ext.n_roots <= 3:
        raise SeedError(f"{ext.partition} is not a triple-zero mixed case")
    u = ext.nontrivial_roots()
    if math.isclose(cfg.alpha, ALPHA_CRITICAL):
        raise SeedError("cluster radius vanishes at alpha = 5/2")
    sol = first_order_system(u, cfg.alpha)
    try:
        b3_weight12 = first_order_system(u, cfg.alpha, coupling=12).b_cubed
    except SeedError:
        b3_weight12 = complex("nan")
    eps = cfg.eps
    e13 = eps ** (1 / 3)
    b = sol.b
    s4 = 1 + np.sum(6 / u**4)
    c3_2 = b**5 / 2 * s4
    cluster = e13 * b * X2 + eps * sol.c1_1 * X1 + e13**5 * c3_2 * X3
    simple = u + eps * sol.u1
    t = np.concatenate([cluster, simple])
    details = {
        "b": b,
        "b_cubed": sol.b_cubed,
        "kappa": kappa(cfg.alpha),
        "b_cubed_weight12": b3_weight12,
        "c1_1": sol.c1_1,
        "condition": sol.condition,
        "invertibility": check_mixed_invertibility(build_mixed_matrices(u, EXPANSION_COUPLING)).conditions,
    }
    return SeedExpansion(ext.partition, "partially_degenerate", tuple(complex(x) for x in t),
                         "eps^(1/3) b, eps c1, eps^(5/3) c3; u + eps u1", details)


def seed_kind(ext: RationalExtension) -> str:
    zm, n = ext.zero_multiplicity, ext.n_roots
    if zm <= 1:
        return "non_degenerate"
    if zm == 3 and n == 3:
        return "fully_degenerate_d2"
    if zm == 6 and n == 6:
        return "fully_degenerate_d3"
    if zm == 3:
        return "partially_degenerate"
    raise SeedError(f"no seed construction for zero multiplicity {zm} with N = {n}")


def make_seed(ext: RationalExtension, cfg: BlzConfig) -> SeedExpansion:
    kind = seed_kind(ext)
    if kind == "non_degenerate":
        return seed_non_degenerate(ext, cfg)
    if kind == "fully_degenerate_d2":
        return seed_degenerate_d2(cfg)
    if kind == "fully_degenerate_d3":
        return seed_degenerate_d3(cfg)
    return seed_partially_degenerate(ext, cfg)


def match_distance(a, b) -> float:
    """Largest distance under the best one-to-one pairing of two point sets."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max()) if len(rows) else 0.0


def classify_solution(z, cfg: BlzConfig, catalog: list[RationalExtension]) -> tuple[Partition, float]:
    """Partition whose seed lies closest to the solution in the t variables."""
    t = phi_inverse(cfg, z)
    scores = []
    for ext in catalog:
        if ext.n_roots != len(t):
            continue
        try:
            ref = np.array(make_seed(ext, cfg).t_seed)
        except SeedError:
            ref = ext.all_roots()
        scores.append((match_distance(t, ref), ext.partition))
    if not scores:
        raise SeedError("catalog has no partition of the right size")
    scores.sort(key=lambda s: (s[0], s[1].parts))
    best = scores[0]
    if len(scores) > 1 and scores[1][0] < 2 * best[0]:
        raise AmbiguousClassification(
            f"{best[1]} and {scores[1][1]} score {best[0]:.3e} and {scores[1][0]:.3e}",
            [s[1] for s in scores[:2]],
        )
    return best[1], best[0]
