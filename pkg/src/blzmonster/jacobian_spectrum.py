"""Jacobians of the Hermite root system and the mixed-case block matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .partitions import Partition, enumerate_partitions, rho_sequence
from .rational_extensions import RationalExtension, build_extension

SINGULAR_COND = 1e12


class DegenerateRootsError(ValueError):
    pass


@dataclass(frozen=True)
class JacobianReport:
    partition: Partition
    matrix: np.ndarray
    eigenvalues: np.ndarray
    predicted: np.ndarray
    max_relative_deviation: float
    determinant: complex


def jacobian_matrix(v: np.ndarray) -> np.ndarray:
    """J_ij = 2 delta_ij (1 + sum_l 6/(v_j-v_l)^4) - (1 - delta_ij) 12/(v_i-v_j)^4."""
    v = np.asarray(v, dtype=complex)
    diff = v[:, None] - v[None, :]
    np.fill_diagonal(diff, 1.0)
    if np.any(diff == 0):
        raise DegenerateRootsError("repeated roots; use the mixed-case matrices")
    inv4 = diff**-4
    np.fill_diagonal(inv4, 0.0)
    inv4 = (inv4 + inv4.T) / 2  # exact symmetry of the pair kernel
    jac = -12.0 * inv4
    np.fill_diagonal(jac, 2.0 * (1.0 + 6.0 * inv4.sum(axis=1)))
    return jac


def _deviation(eigs: np.ndarray, predicted: np.ndarray) -> float:
    order = np.argsort(eigs.real, kind="stable")
    e = eigs[order]
    rel = np.abs(e - predicted) / np.abs(predicted)
    return float(rel.max()) if rel.size else 0.0


def build_jacobian(ext: RationalExtension) -> JacobianReport:
    if any(m > 1 for m in ext.roots.multiplicities):
        raise DegenerateRootsError(f"{ext.partition} has repeated roots; use build_mixed_matrices")
    jac = jacobian_matrix(ext.all_roots())
    eigs = np.linalg.eigvals(jac)
    predicted = 2.0 * np.array(rho_sequence(ext.partition), dtype=float) ** 2
    return JacobianReport(
        partition=ext.partition,
        matrix=jac,
        eigenvalues=eigs,
        predicted=predicted,
        max_relative_deviation=_deviation(eigs, predicted),
        determinant=complex(np.linalg.det(jac)),
    )


def check_spectrum_conjecture(report: JacobianReport, tol: float = 1e-8) -> bool:
    """Sorted eigenvalues against 2 rho_k^2, relative in the real part."""
    eigs = np.sort_complex(report.eigenvalues)
    if np.any(np.abs(eigs.imag) > tol * np.abs(eigs.real).max()):
        return False
    return report.max_relative_deviation < tol


def predicted_determinant(p: Partition) -> int:
    rho = rho_sequence(p)
    out = 2 ** len(rho)
    for r in rho:
        out *= r * r
    return out


@dataclass(frozen=True)
class MixedCaseMatrices:
    """Blocks entering the first-order and higher-order mixed-case systems."""

    j_tilde: np.ndarray
    a_tilde: np.ndarray
    b_tilde: np.ndarray
    c_tilde: np.ndarray
    a_mat: np.ndarray
    d_mat: np.ndarray
    b_mat: np.ndarray
    c_mat: np.ndarray
    coupling: int

    def first_order_matrix(self) -> np.ndarray:
        return np.block([[self.a_tilde, self.b_tilde], [self.c_tilde, self.j_tilde]])


def build_mixed_matrices(u_roots, coupling: int = 12) -> MixedCaseMatrices:
    """Block matrices for a triple zero root surrounded by 2n simple roots u.

    ``coupling`` is the weight of the u-u terms in the diagonal of J-tilde and
    of the B-tilde and C-tilde blocks. The default 12 gives the reference form
    of the matrices; 6 is what the expansion of the residual actually produces (see
    ``asymptotic_seeds.first_order_system``).
    """
    u = np.asarray(u_roots, dtype=complex)
    if u.ndim != 1 or u.size == 0 or u.size % 2:
        raise ValueError("need an even, non-zero number of u roots")
    if np.any(u == 0):
        raise ValueError("u roots must be non-zero")
    diff = u[:, None] - u[None, :]
    np.fill_diagonal(diff, 1.0)
    if np.any(np.abs(diff) < 1e-12 * np.abs(u).max()):
        raise ValueError("u roots must be distinct")
    inv4 = diff**-4
    np.fill_diagonal(inv4, 0.0)

    j_tilde = -12.0 * inv4
    np.fill_diagonal(j_tilde, 2.0 * (1.0 + 18.0 / u**4 + coupling * inv4.sum(axis=1)))

    s4 = 1.0 + np.sum(6.0 / u**4)
    s6 = np.sum(6.0 / u**6)
    s8 = np.sum(1.0 / u**8)
    a_tilde = np.array([[s6, s4], [63 / 50 * s8 + 9 / 200 * s4**2, s6]]) / 6.0
    b_tilde = coupling * np.vstack([u**-4, u**-6])
    c_tilde = coupling * np.vstack([u**-6, u**-4]).T

    a_mat = 6.0 * np.array(
        [[s4, 0, -8], [s6, s4, 0], [63 / 50 * s8 - 2 / 25 * s4**2, s6, s4]], dtype=complex
    )
    d_mat = 0.9 * np.array([[0, 0, 0], [0, 0, 0], [s4, 0, -8]], dtype=complex)
    zeros = np.zeros_like(u)
    b_mat = -36.0 * np.vstack([zeros, u**-4, u**-6])
    c_mat = -36.0 * np.vstack([u**-6, u**-4, zeros]).T
    return MixedCaseMatrices(
        j_tilde, a_tilde, b_tilde, c_tilde, a_mat, d_mat, b_mat, c_mat, coupling
    )


@dataclass(frozen=True)
class InvertibilityReport:
    conditions: dict[str, float]

    @property
    def invertible(self) -> dict[str, bool]:
        return {k: bool(np.isfinite(v) and v < SINGULAR_COND) for k, v in self.conditions.items()}

    @property
    def all_invertible(self) -> bool:
        return all(self.invertible.values())


def check_mixed_invertibility(m: MixedCaseMatrices) -> InvertibilityReport:
    jinv = np.linalg.inv(m.j_tilde)
    blocks = {
        "j_tilde": m.j_tilde,
        "a_mat": m.a_mat,
        "a_tilde_schur": m.a_tilde - m.b_tilde @ jinv @ m.c_tilde,
        "a_schur": m.a_mat - m.b_mat @ jinv @ m.c_mat,
    }
    return InvertibilityReport({k: float(np.linalg.cond(v)) for k, v in blocks.items()})


def sweep_jacobians(max_n: int) -> list[JacobianReport]:
    """Reports for every partition of 1..max_n whose roots are all simple."""
    out = []
    for n in range(1, max_n + 1):
        for p in enumerate_partitions(n):
            ext = build_extension(p)
            if any(m > 1 for m in ext.roots.multiplicities):
                continue
            out.append(build_jacobian(ext))
    return out


def determinant_ratio(n: int) -> float:
    """det J for the one-row partition (n), divided by 2^n (n!)^2."""
    rep = build_jacobian(build_extension(Partition((n,))))
    return abs(rep.determinant) / (2**n * math.factorial(n) ** 2)
