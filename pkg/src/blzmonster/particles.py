"""Complex equilibria of J particles in the field x^(M-2) + L/x^2 with inverse-square repulsion.

For integer M >= 3 the trivial-monodromy condition on a monic polynomial of
degree J is the force balance

    -2L/x_k^3 + (M-2) x_k^(M-3) - sum_{j != k} 4/(x_k - x_j)^3 = 0.

A configuration invariant under x -> gamma_M x with J = M N collapses, via
z = x^M, to a BLZ root set with alpha = (M-2)/2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .asymptotic_seeds import make_seed, match_distance
from .blz_core import BlzConfig, blz_residual
from .continuation import NewtonOptions, damped_newton
from .partitions import MPartition
from .polynomials import canonical_order
from .rational_extensions import RationalExtension

SYMMETRY_TOL = 1e-8
ORBIT_MERGE_REL = 1e-6


class SymmetryError(ValueError):
    def __init__(self, message: str, asymmetry: float):
        super().__init__(message)
        self.asymmetry = asymmetry


@dataclass(frozen=True)
class ParticleConfig:
    m_exponent: int
    j_count: int
    big_l: complex

    def __post_init__(self):
        if int(self.m_exponent) != self.m_exponent or self.m_exponent < 3:
            raise ValueError("M must be an integer >= 3")
        if int(self.j_count) != self.j_count or self.j_count < 1:
            raise ValueError("J must be a positive integer")
        if self.big_l == 0:
            raise ValueError("L must be non-zero")
        object.__setattr__(self, "big_l", complex(self.big_l))

    @property
    def gamma(self) -> complex:
        return cmath.exp(2j * math.pi / self.m_exponent)

    @property
    def alpha(self) -> float:
        """The BLZ exponent matched by x^(M-2) = x^(2 alpha)."""
        return (self.m_exponent - 2) / 2

    @property
    def eps(self) -> complex:
        return self.big_l ** -0.25

    def minimum(self, l: int) -> complex:
        """l-th zero of the external force, gamma^l (2L/(M-2))^(1/M)."""
        m = self.m_exponent
        return self.gamma**l * (2 * self.big_l / (m - 2)) ** (1 / m)


@dataclass(frozen=True)
class EquilibriumSolution:
    config: ParticleConfig
    x_positions: tuple[complex, ...]
    residual_inf: float
    m_partition_tag: MPartition | None = None


def _check_positions(x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("need a non-empty 1-d position vector")
    if np.any(x == 0):
        raise ValueError("zero position")
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    if np.any(diff == 0):
        raise ValueError("coincident positions")
    return x


def particle_residual(cfg: ParticleConfig, x) -> np.ndarray:
    x = _check_positions(x)
    m = cfg.m_exponent
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    pair = 4.0 / diff**3
    np.fill_diagonal(pair, 0.0)
    return -2 * cfg.big_l / x**3 + (m - 2) * x ** (m - 3) - pair.sum(axis=1)


def particle_jacobian(cfg: ParticleConfig, x) -> np.ndarray:
    x = _check_positions(x)
    m = cfg.m_exponent
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    inv4 = 12.0 / diff**4
    np.fill_diagonal(inv4, 0.0)
    jac = -inv4
    np.fill_diagonal(jac, 6 * cfg.big_l / x**4 + (m - 2) * (m - 3) * x ** (m - 4) + inv4.sum(axis=1))
    return jac


def cluster_seed(cfg: ParticleConfig, mp: MPartition, catalog: list[RationalExtension]) -> np.ndarray:
    """x_{l,k} = m_l (1 + M^{-1/4} eps t_{l,k}), t from the partition in sector l.

    Degenerate sectors reuse the collapsing-cluster seeds of the BLZ problem,
    whose small-eps reduction is the same perturbed oscillator.
    """
    if mp.m_fold != cfg.m_exponent:
        raise ValueError(f"M-partition has {mp.m_fold} sectors, config has M = {cfg.m_exponent}")
    if mp.total != cfg.j_count:
        raise ValueError(f"sectors hold {mp.total} particles, config has J = {cfg.j_count}")
    by_partition = {ext.partition: ext for ext in catalog}
    blz_cfg = BlzConfig(cfg.alpha, cfg.big_l)
    scale = cfg.m_exponent**-0.25 * cfg.eps
    out = []
    for l, part in enumerate(mp.sectors):
        if part.n_total == 0:
            continue
        if part not in by_partition:
            raise ValueError(f"partition {part} missing from the catalog")
        t = np.array(make_seed(by_partition[part], blz_cfg).t_seed)
        out.append(cfg.minimum(l) * (1 + scale * t))
    return np.concatenate(out)


def solve_equilibrium(cfg: ParticleConfig, x0, opts: NewtonOptions | None = None,
                      tag: MPartition | None = None) -> EquilibriumSolution:
    opts = opts or NewtonOptions(residual_tol=1e-10)
    x, norm, _, _ = damped_newton(lambda w: particle_residual(cfg, w),
                                  lambda w: particle_jacobian(cfg, w), x0, opts)
    return EquilibriumSolution(cfg, tuple(complex(v) for v in x), norm, tag)


def symmetric_m_partition(mp_sector, m_fold: int) -> MPartition:
    """The M-partition with the same partition in every sector."""
    return MPartition(tuple(mp_sector for _ in range(m_fold)), m_fold)


def rotation_asymmetry(x, gamma: complex) -> float:
    """Relative multiset distance between {gamma x} and {x}."""
    x = np.asarray(x, dtype=complex)
    return match_distance(gamma * x, x) / float(np.abs(x).max())


def symmetric_reduction(sol: EquilibriumSolution, tol: float = SYMMETRY_TOL) -> np.ndarray:
    """The N distinct values x^M of a gamma_M-invariant configuration with J = M N."""
    cfg = sol.config
    m = cfg.m_exponent
    if cfg.j_count % m:
        raise ValueError(f"J = {cfg.j_count} is not a multiple of M = {m}")
    x = np.asarray(sol.x_positions, dtype=complex)
    asym = rotation_asymmetry(x, cfg.gamma)
    if asym > tol:
        raise SymmetryError(f"configuration is not gamma_M-invariant (asymmetry {asym:.3e})", asym)
    # each gamma_M orbit maps to a single value of x^M
    groups: list[list[complex]] = []
    for w in x**m:
        for g in groups:
            if abs(w - g[0]) <= ORBIT_MERGE_REL * abs(g[0]):
                g.append(w)
                break
        else:
            groups.append([w])
    n = cfg.j_count // m
    if len(groups) != n or any(len(g) != m for g in groups):
        raise SymmetryError(f"x^M takes {len(groups)} values, expected {n} each hit {m} times", asym)
    return np.array(canonical_order([sum(g) / m for g in groups]))


def reduced_blz_residual(sol: EquilibriumSolution) -> float:
    z = symmetric_reduction(sol)
    cfg = BlzConfig(sol.config.alpha, sol.config.big_l)
    return float(np.abs(blz_residual(cfg, z)).max())
