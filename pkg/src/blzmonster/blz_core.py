"""The BLZ algebraic system, its Jacobian, and the large-L change of variables."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import binom

from .partitions import Partition

# c_1 coefficient per root equals this multiple of (1 + alpha) times the BLZ residual;
# measured once by evaluating both formulas and frozen here.
MONODROMY_FACTOR = -8.0


class BlzInputError(ValueError):
    pass


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class BlzConfig:
    alpha: float
    big_l: complex

    def __post_init__(self):
        if not self.alpha > 0:
            raise BlzInputError("alpha must be positive")
        object.__setattr__(self, "big_l", complex(self.big_l))

    @property
    def m(self) -> float:
        return 2 * self.alpha + 2

    @property
    def eps(self) -> complex:
        """Principal L^{-1/4}; cut along the negative real axis."""
        if self.big_l == 0:
            raise DomainError("L = 0 has no large-L variable")
        return self.big_l ** -0.25

    @property
    def delta(self) -> complex:
        return delta_from_l(self.alpha, self.big_l)

    @property
    def centre(self) -> complex:
        """The condensation point L/alpha."""
        return self.big_l / self.alpha

    @property
    def gamma(self) -> complex:
        return cmath.exp(1j * math.pi / (self.alpha + 1))

    @property
    def kappa(self) -> float:
        return kappa(self.alpha)


@dataclass(frozen=True)
class MonsterSolution:
    config: BlzConfig
    partition_tag: Partition | None
    z_roots: tuple[complex, ...]
    blz_residual_inf: float
    monodromy_residual_inf: float
    distinct: bool
    iterations: int = 0


def delta_from_l(alpha: float, big_l: complex) -> complex:
    return (4 * big_l + 1 - 4 * alpha**2) / (16 * (alpha + 1))


def kappa(alpha: float) -> float:
    return (5 - 2 * alpha) / (3 * (2 * alpha + 2) ** 0.25)


def _pair_differences(z: np.ndarray) -> np.ndarray:
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, 1.0)
    if np.any(diff == 0):
        raise BlzInputError("coincident roots")
    return diff


def _check_roots(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if z.ndim != 1 or z.size == 0:
        raise BlzInputError("need a non-empty 1-d root vector")
    if np.any(z == 0):
        raise BlzInputError("zero root")
    return z


def _interaction(alpha: float, z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Pair numerator, difference and the interaction coefficients."""
    a = (3 + alpha) * (1 + 2 * alpha)
    b = alpha * (1 + 2 * alpha)
    zk, zj = z[:, None], z[None, :]
    num = zk * (zk * zk + a * zk * zj + b * zj * zj)
    return num, _pair_differences(z), np.array([a, b])


def blz_residual(cfg: BlzConfig, z) -> np.ndarray:
    z = _check_roots(z)
    num, diff, _ = _interaction(cfg.alpha, z)
    pair = num / diff**3
    np.fill_diagonal(pair, 0.0)
    return pair.sum(axis=1) - cfg.alpha * z / (4 * (1 + cfg.alpha)) + cfg.delta


def residual_scale(cfg: BlzConfig, z) -> float:
    """Largest sum of term magnitudes entering one residual component.

    Rounding error in the residual is proportional to this, not to the
    (much smaller) residual itself.
    """
    z = _check_roots(z)
    num, diff, _ = _interaction(cfg.alpha, z)
    pair = np.abs(num / diff**3)
    np.fill_diagonal(pair, 0.0)
    terms = pair.sum(axis=1) + np.abs(cfg.alpha * z / (4 * (1 + cfg.alpha))) + abs(cfg.delta)
    return float(terms.max())


def blz_jacobian(cfg: BlzConfig, z) -> np.ndarray:
    z = _check_roots(z)
    num, diff, (a, b) = _interaction(cfg.alpha, z)
    zk, zj = z[:, None], z[None, :]
    inv3 = diff**-3
    inv4 = inv3 / diff
    d_own = (3 * zk * zk + 2 * a * zk * zj + b * zj * zj) * inv3 - 3 * num * inv4
    d_other = (a * zk * zk + 2 * b * zk * zj) * inv3 + 3 * num * inv4
    np.fill_diagonal(d_own, 0.0)
    jac = d_other.copy()
    np.fill_diagonal(jac, d_own.sum(axis=1) - cfg.alpha / (4 * (1 + cfg.alpha)))
    return jac


def monodromy_residual(cfg: BlzConfig, z) -> np.ndarray:
    """Coefficient c_1 of the potential's Laurent expansion at each root, common factor dropped."""
    z = _check_roots(z)
    al = cfg.alpha
    zk, zj = z[:, None], z[None, :]
    diff = _pair_differences(z)
    pair = -8 * (1 + al) * zk * (zk * zk + (3 + 7 * al + 2 * al * al) * zk * zj
                                 + al * (1 + 2 * al) * zj * zj) / diff**3
    np.fill_diagonal(pair, 0.0)
    return (4 * al * al - 1) / 2 + pair.sum(axis=1) + (-2 * cfg.big_l + 2 * al * z)


def phi_domain_ok(cfg: BlzConfig, t: complex) -> bool:
    w = cfg.m**-0.25 * cfg.eps * t
    if abs(w) >= 1:
        return False
    arg = cmath.phase(1 + w)
    return -math.pi / cfg.m < arg <= math.pi / cfg.m


def phi_map(cfg: BlzConfig, t) -> np.ndarray:
    """z = (L/alpha) (1 + M^{-1/4} eps t)^M on the principal branch."""
    t = np.asarray(t, dtype=complex)
    w = cfg.m**-0.25 * cfg.eps * t
    if np.any(np.abs(w) >= 1):
        raise DomainError("t outside the disc |eps t| < M^{1/4}")
    base = 1 + w
    arg = np.angle(base)
    if np.any((arg <= -math.pi / cfg.m) | (arg > math.pi / cfg.m)):
        raise DomainError("t outside the argument window of the map")
    return cfg.centre * np.exp(cfg.m * np.log(base))


def phi_inverse(cfg: BlzConfig, z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    root = np.exp(np.log(z / cfg.centre) / cfg.m)
    return cfg.m**0.25 * (root - 1) / cfg.eps


def sigma_series(cfg: BlzConfig, t, rtol: float = 1e-18, max_terms: int = 400) -> np.ndarray:
    """sigma(t) = sum_{l>=2} C(M,l) M^{-(l+3)/4} eps^{l-2} t^l, summed to rtol."""
    t = np.asarray(t, dtype=complex)
    m, eps = cfg.m, cfg.eps
    total = np.zeros_like(t)
    for l in range(2, max_terms):
        term = binom(m, l) * m ** (-(l + 3) / 4) * eps ** (l - 2) * t**l
        total = total + term
        if l > m + 2 and np.all(np.abs(term) <= rtol * np.maximum(np.abs(total), 1e-300)):
            break
    return total


def phi_series(cfg: BlzConfig, t) -> np.ndarray:
    t = np.asarray(t, dtype=complex)
    eps = cfg.eps
    return (1 + cfg.m**0.75 * eps * (t + eps * sigma_series(cfg, t))) / (eps**4 * cfg.alpha)


def scaled_residual_f(cfg: BlzConfig, t) -> np.ndarray:
    """Residual in the t variables; equals eps^3 times the BLZ residual at z = phi(t)."""
    t = np.asarray(t, dtype=complex)
    for tk in t:
        if not phi_domain_ok(cfg, tk):
            raise DomainError(f"t = {tk} outside the domain of the map")
    al, m, eps = cfg.alpha, cfg.m, cfg.eps
    sig = sigma_series(cfg, t)
    shifted = t + eps * sig
    w = 1 + m**0.75 * eps * shifted
    wk, wj = w[:, None], w[None, :]
    big_f = wk**3 + (3 + al) * (1 + 2 * al) * wk**2 * wj + al * (1 + 2 * al) * wk * wj**2
    diff = shifted[:, None] - shifted[None, :]
    np.fill_diagonal(diff, 1.0)
    if np.any(diff == 0):
        raise BlzInputError("coincident t values")
    pair = m**-2.25 * big_f / diff**3
    np.fill_diagonal(pair, 0.0)
    return eps**3 * (1 - 4 * al * al) / (8 * m) - shifted / (2 * m**0.25) + pair.sum(axis=1)


def truncated_residual_g(alpha: float, eps: complex, t) -> np.ndarray:
    """2 t_k + 3 eps kappa t_k^2 - sum_{j != k} 4/(t_k - t_j)^3."""
    t = np.asarray(t, dtype=complex)
    diff = _pair_differences(t)
    pair = 4.0 / diff**3
    np.fill_diagonal(pair, 0.0)
    return 2 * t + 3 * eps * kappa(alpha) * t * t - pair.sum(axis=1)


def distinct_roots(cfg: BlzConfig, z, rel: float = 1e-8) -> bool:
    z = np.asarray(z, dtype=complex)
    scale = abs(cfg.centre)
    if np.any(np.abs(z) <= rel * scale):
        return False
    diff = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(diff, np.inf)
    return bool(np.all(diff > rel * np.maximum(np.abs(z)[:, None], np.abs(z)[None, :])))
