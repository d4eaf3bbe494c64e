"""Large-L radial spectrum of the monster potentials, from the perturbed oscillator levels."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .partitions import Partition, degree_sequence, deleted_integers
from .rational_extensions import r_spectrum


class LevelError(ValueError):
    pass


@dataclass(frozen=True)
class SpectrumRequest:
    alpha: float
    big_l: float
    partition: Partition
    levels: tuple[int, ...]

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if isinstance(self.big_l, complex) or not self.big_l > 0:
            raise ValueError("L must be real and positive")
        object.__setattr__(self, "levels", tuple(int(n) for n in self.levels))
        allowed = set(allowed_levels(self.partition, max(self.levels, default=0) + 1))
        bad = [n for n in self.levels if n not in allowed]
        if bad:
            raise LevelError(f"levels {bad} are deleted for {self.partition}")

    @property
    def j(self) -> int:
        return self.partition.j_len


def allowed_levels(p: Partition, up_to: int) -> list[int]:
    """Members of N minus the degree sequence of ``p`` that are below ``up_to``."""
    deleted = set(degree_sequence(p))
    return [n for n in range(up_to) if n not in deleted]


def first_levels(p: Partition, count: int) -> tuple[int, ...]:
    return tuple(deleted_integers(p, count))


def level_cap(p: Partition) -> int:
    """Largest level index the two-term formula is trusted for."""
    return 2 * p.n_total + 10


def check_level_cap(req: SpectrumRequest) -> list[int]:
    """Levels above the cap; a warning is issued when there are any."""
    over = [n for n in req.levels if n > level_cap(req.partition)]
    if over:
        warnings.warn(f"levels {over} exceed n = 2N + 10; the fixed-level asymptotics may not apply",
                      stacklevel=2)
    return over


def scaled_spectrum(req: SpectrumRequest) -> list[int]:
    """Leading perturbed-oscillator values 2(n - j) + 1."""
    return [2 * (n - req.j) + 1 for n in req.levels]


def energy_from_scaled(alpha: float, big_l: float, e_tilde: float) -> float:
    """Undo E~ = sqrt(v2)^{-1} (eps^{(2a-2)/(a+1)} E - eps^{-2} v0), eps = L^{-1/4}."""
    v0 = (1 + alpha) * alpha ** (-alpha / (alpha + 1))
    v2 = (2 * alpha + 2) * alpha ** (2 / (alpha + 1))
    eps = big_l**-0.25
    return (math.sqrt(v2) * e_tilde + v0 / eps**2) / eps ** ((2 * alpha - 2) / (alpha + 1))


def radial_spectrum_asymptotic(req: SpectrumRequest) -> list[float]:
    """Two-term large-L eigenvalues; the O(L^{-1/(a+1)}) remainder is not included."""
    a, big_l = req.alpha, req.big_l
    base = (1 + a) * (big_l / a) ** (a / (a + 1))
    gap = math.sqrt(2 * a + 2) * a ** (1 / (a + 1)) * big_l ** ((a - 1) / (2 * a + 2))
    return [base + gap * e for e in scaled_spectrum(req)]


def harmonic_reference(ell: float, n: int, j: int, j_weight: int = 4) -> float:
    """2 ell + 3 + 4n - j_weight j for the alpha = 1 oscillator with L = ell (ell + 1)."""
    return 2 * ell + 3 + 4 * n - j_weight * j


def consistent_with_r_spectrum(p: Partition, count: int) -> bool:
    req = SpectrumRequest(1.0, 1.0, p, first_levels(p, count))
    return scaled_spectrum(req) == r_spectrum(p, count)
