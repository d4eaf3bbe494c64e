"""Wronskian-Hermite polynomials and the checks they satisfy."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .partitions import Partition, conjugate, degree_sequence, deleted_integers, enumerate_partitions
from .polynomials import ComplexRootSet, ExactPolynomial, find_roots, hermite, make_monic, wronskian


class ExtensionError(ValueError):
    pass


@dataclass(frozen=True)
class RationalExtension:
    partition: Partition
    poly: ExactPolynomial
    roots: ComplexRootSet
    zero_multiplicity: int
    d_param: int

    @property
    def n_roots(self) -> int:
        return self.partition.n_total

    def all_roots(self) -> np.ndarray:
        return self.roots.expanded()

    def nontrivial_roots(self) -> np.ndarray:
        """The non-zero roots, each listed with its multiplicity."""
        return np.array([r for r, m in self.roots.nonzero() for _ in range(m)], dtype=complex)

    @property
    def is_degenerate(self) -> bool:
        return self.zero_multiplicity > 1


def odd_even_excess(p: Partition) -> int:
    """Number of odd minus number of even entries in the degree sequence."""
    degs = degree_sequence(p)
    odd = sum(1 for x in degs if x % 2)
    return odd - (len(degs) - odd)


def triangular_d(p: Partition) -> int:
    """Non-negative d with d(d+1)/2 the order of the zero root.

    A negative excess e labels the same triangular number as -e-1, so it is
    folded onto that representative.
    """
    e = odd_even_excess(p)
    return e if e >= 0 else -e - 1


def zero_multiplicity_predicted(p: Partition) -> int:
    d = triangular_d(p)
    return d * (d + 1) // 2


@lru_cache(maxsize=None)
def wronskian_hermite(p: Partition) -> ExactPolynomial:
    """Monic Wronskian of the Hermite polynomials at the degree sequence of ``p``."""
    if not p.parts:
        return ExactPolynomial((1,))
    return make_monic(wronskian([hermite(k) for k in degree_sequence(p)]))


def build_extension(p: Partition, tol: float = 1e-14) -> RationalExtension:
    poly = wronskian_hermite(p)
    if poly.degree != p.n_total:
        raise ExtensionError(f"degree {poly.degree} differs from N = {p.n_total}")
    roots = find_roots(poly, tol) if poly.degree >= 1 else ComplexRootSet((), ())
    zm = poly.trailing_zeros()
    return RationalExtension(p, poly, roots, zm, triangular_d(p))


def check_f_property(ext: RationalExtension) -> bool:
    """True when every non-zero root is simple."""
    return all(m == 1 for _, m in ext.roots.nonzero())


def verify_root_system(ext: RationalExtension) -> float:
    """Largest violation of the force balance and odd power-sum constraints.

    For non-zero roots u_k the balance reads
    2u_k - sum_{j != k} 4/(u_k - u_j)^3 - 2d(d+1)/u_k^3 = 0,
    and the power sums sum_k u_k^{-(2l+1)} vanish for l = 1..d.
    """
    if not check_f_property(ext):
        raise ExtensionError(f"{ext.partition} has a repeated non-zero root")
    u = ext.nontrivial_roots()
    if u.size == 0:
        return 0.0
    d = ext.d_param
    diff = u[:, None] - u[None, :]
    np.fill_diagonal(diff, 1.0)
    pair = 4.0 / diff**3
    np.fill_diagonal(pair, 0.0)
    balance = 2 * u - pair.sum(axis=1) - 2 * d * (d + 1) / u**3
    worst = float(np.max(np.abs(balance)))
    for l in range(1, d + 1):
        worst = max(worst, abs(np.sum(u ** (-(2 * l + 1)))))
    return worst


def _rotated(poly: ExactPolynomial) -> ExactPolynomial:
    """(-i)^N P(i t) for a polynomial of parity N; stays real."""
    n = poly.degree
    out = []
    for k, c in enumerate(poly.coeffs):
        if c == 0:
            out.append(Fraction(0))
            continue
        if (k - n) % 2:
            raise ExtensionError("polynomial lacks definite parity")
        out.append(c * (-1) ** ((k - n) // 2 % 2))
    return ExactPolynomial(tuple(out))


def check_fourfold_symmetry(p: Partition) -> bool:
    """Exact checks of P*(t) = (-i)^N P(it) and P(-t) = (-1)^N P(t)."""
    poly = wronskian_hermite(p)
    star = wronskian_hermite(conjugate(p))
    n = poly.degree
    parity_ok = all(c == 0 or (k - n) % 2 == 0 for k, c in enumerate(poly.coeffs))
    if not parity_ok:
        return False
    return _rotated(poly) == star


def r_spectrum(p: Partition, count: int) -> list[int]:
    """Eigenvalues 1 - 2j + 2n of the extended oscillator, n outside the degree sequence."""
    j = p.j_len
    return [1 - 2 * j + 2 * n for n in deleted_integers(p, count)]


def verify_moser_locus(points) -> float:
    """max_k |sum_{j != k} (t_k - t_j)^{-3}| for a triple of points."""
    t = np.asarray(points, dtype=complex)
    diff = t[:, None] - t[None, :]
    np.fill_diagonal(diff, 1.0)
    if np.any(np.abs(diff) == 0):
        raise ExtensionError("coincident points")
    inv = diff**-3
    np.fill_diagonal(inv, 0.0)
    return float(np.max(np.abs(inv.sum(axis=1))))


@dataclass(frozen=True)
class ExtensionCheck:
    partition: Partition
    residual: float
    zero_multiplicity: int
    predicted_multiplicity: int
    f_property: bool
    symmetric: bool

    @property
    def passed(self) -> bool:
        return (self.f_property and self.symmetric and self.residual < 1e-10
                and self.zero_multiplicity == self.predicted_multiplicity)


def sweep_extensions(max_n: int):
    """Yield an ExtensionCheck for every partition of 1..max_n."""
    for n in range(1, max_n + 1):
        for p in enumerate_partitions(n):
            ext = build_extension(p)
            f_ok = check_f_property(ext)
            yield ExtensionCheck(
                partition=p,
                residual=verify_root_system(ext) if f_ok else float("inf"),
                zero_multiplicity=ext.zero_multiplicity,
                predicted_multiplicity=zero_multiplicity_predicted(p),
                f_property=f_ok,
                symmetric=check_fourfold_symmetry(p),
            )
