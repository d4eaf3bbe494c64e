import math

import numpy as np
import pytest

from blzmonster.jacobian_spectrum import (
    DegenerateRootsError,
    build_jacobian,
    build_mixed_matrices,
    check_mixed_invertibility,
    check_spectrum_conjecture,
    determinant_ratio,
    jacobian_matrix,
    predicted_determinant,
    sweep_jacobians,
)
from blzmonster.partitions import Partition


def test_two_by_two_by_hand(ext):
    rep = build_jacobian(ext(2))
    assert np.allclose(rep.matrix, [[5, -3], [-3, 5]], atol=1e-13)
    assert np.allclose(np.sort(rep.eigenvalues.real), [2, 8])
    assert check_spectrum_conjecture(rep)


def test_single_root(ext):
    rep = build_jacobian(ext(1))
    assert np.allclose(rep.matrix, [[2]])


def test_conjugate_has_same_spectrum(ext):
    assert np.allclose(np.sort(build_jacobian(ext(1, 1)).eigenvalues.real), [2, 8])


def test_worked_tableau_example(ext):
    rep = build_jacobian(ext(3, 2, 2, 1, 1))
    assert np.allclose(rep.predicted, [2, 2, 2, 8, 8, 32, 32, 50, 98])
    assert check_spectrum_conjecture(rep)


def test_matrix_is_symmetric():
    v = np.array([0.3 + 0.1j, -1.2, 2.0 - 0.5j, 0.7j])
    j = jacobian_matrix(v)
    assert np.array_equal(j, j.T)


def test_degenerate_rejected(ext):
    with pytest.raises(DegenerateRootsError):
        build_jacobian(ext(2, 1))


def test_sweep_up_to_seven():
    reports = sweep_jacobians(7)
    assert reports and all(check_spectrum_conjecture(r) for r in reports)


@pytest.mark.parametrize("n", range(1, 9))
def test_row_partition_determinant(n):
    assert predicted_determinant(Partition((n,))) == 2**n * math.factorial(n) ** 2
    assert abs(determinant_ratio(n) - 1) < 1e-8


def test_mixed_diagonal_and_blocks():
    u0 = 1.3
    m = build_mixed_matrices([u0, -u0])
    assert np.allclose(np.diag(m.j_tilde), 2 * (1 + 18 / u0**4 + 12 / (2 * u0) ** 4))
    assert np.allclose(m.b_tilde[0], 12 * np.array([u0, -u0]) ** -4.0)
    assert m.b_mat.shape == (3, 2) and np.all(m.b_mat[0] == 0)
    assert m.first_order_matrix().shape == (4, 4)


def test_mixed_coupling_parameter_scales_blocks():
    u = np.array([1.1, -1.1, 0.4j, -0.4j])
    a, b = build_mixed_matrices(u, coupling=12), build_mixed_matrices(u, coupling=6)
    assert np.allclose(a.b_tilde, 2 * b.b_tilde)
    assert np.allclose(a.c_tilde, 2 * b.c_tilde)


def test_mixed_invertibility_conjugate_pair(ext):
    a = check_mixed_invertibility(build_mixed_matrices(ext(4, 1).nontrivial_roots()))
    b = check_mixed_invertibility(build_mixed_matrices(ext(2, 1, 1, 1).nontrivial_roots()))
    assert a.all_invertible and b.all_invertible
    assert a.invertible == b.invertible


def test_mixed_rejects_coincident_roots():
    with pytest.raises(ValueError):
        build_mixed_matrices([1, 1])
