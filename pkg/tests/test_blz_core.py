import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from blzmonster.blz_core import (
    MONODROMY_FACTOR,
    BlzConfig,
    BlzInputError,
    DomainError,
    blz_jacobian,
    blz_residual,
    delta_from_l,
    distinct_roots,
    kappa,
    monodromy_residual,
    phi_inverse,
    phi_map,
    phi_series,
    scaled_residual_f,
    truncated_residual_g,
)

ALPHAS = [0.5, 1.0, math.pi / 3, 2.0]


def _mp_residual(alpha, big_l, z):
    """Direct high-precision evaluation of the BLZ sum, used as an oracle."""
    mpmath.mp.dps = 40
    al = mpmath.mpf(alpha)
    a, b = (3 + al) * (1 + 2 * al), al * (1 + 2 * al)
    delta = (4 * mpmath.mpc(big_l) + 1 - 4 * al**2) / (16 * (al + 1))
    zs = [mpmath.mpc(v) for v in z]
    out = []
    for k, zk in enumerate(zs):
        s = sum(zk * (zk**2 + a * zk * zj + b * zj**2) / (zk - zj) ** 3
                for j, zj in enumerate(zs) if j != k)
        out.append(complex(s - al * zk / (4 * (1 + al)) + delta))
    return np.array(out)


def test_delta_examples():
    assert delta_from_l(1.0, 0) == pytest.approx(-3 / 32)
    assert delta_from_l(0.5, 2) == pytest.approx(1 / 3)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_single_root_closed_form(alpha):
    big_l = 7.5
    cfg = BlzConfig(alpha, big_l)
    z = (4 * big_l + 1 - 4 * alpha**2) / (4 * alpha)
    assert abs(blz_residual(cfg, [z])[0]) < 1e-13
    assert np.allclose(blz_jacobian(cfg, [z]), [[-alpha / (4 * (1 + alpha))]])


def test_residual_against_high_precision_sum():
    z = np.array([3.0 + 1j, -2.0 + 0.5j, 0.7 - 2j, 5.1])
    for alpha in ALPHAS:
        cfg = BlzConfig(alpha, 40 + 3j)
        assert np.allclose(blz_residual(cfg, z), _mp_residual(alpha, 40 + 3j, z), rtol=1e-12, atol=1e-12)


root_sets = st.lists(
    st.complex_numbers(min_magnitude=0.5, max_magnitude=20, allow_nan=False, allow_infinity=False),
    min_size=2, max_size=6,
).filter(lambda zs: min(abs(a - b) for i, a in enumerate(zs) for b in zs[i + 1:]) > 0.3)


@given(root_sets, st.sampled_from(ALPHAS))
def test_jacobian_matches_central_differences(zs, alpha):
    cfg = BlzConfig(alpha, 12.0)
    z = np.array(zs)
    jac = blz_jacobian(cfg, z)
    h = 1e-6
    fd = np.empty_like(jac)
    for j in range(len(z)):
        e = np.zeros(len(z))
        e[j] = h
        fd[:, j] = (blz_residual(cfg, z + e) - blz_residual(cfg, z - e)) / (2 * h)
    scale = max(1.0, float(np.abs(jac).max()))
    assert np.abs(jac - fd).max() < 1e-6 * scale


@given(root_sets, st.randoms(use_true_random=False))
def test_residual_is_permutation_equivariant(zs, rnd):
    cfg = BlzConfig(1.3, 5 - 2j)
    z = np.array(zs)
    perm = list(range(len(z)))
    rnd.shuffle(perm)
    assert np.allclose(blz_residual(cfg, z)[perm], blz_residual(cfg, z[perm]), rtol=0, atol=1e-12)


@given(root_sets, st.sampled_from(ALPHAS))
def test_monodromy_is_fixed_multiple_of_residual(zs, alpha):
    cfg = BlzConfig(alpha, 3.0 + 1j)
    z = np.array(zs)
    lhs = monodromy_residual(cfg, z)
    rhs = MONODROMY_FACTOR * (1 + alpha) * blz_residual(cfg, z)
    assert np.allclose(lhs, rhs, rtol=1e-9, atol=1e-9 * (1 + np.abs(rhs).max()))


def test_input_validation():
    cfg = BlzConfig(1.0, 10.0)
    with pytest.raises(BlzInputError):
        blz_residual(cfg, [1.0, 1.0])
    with pytest.raises(BlzInputError):
        blz_residual(cfg, [0.0, 2.0])
    with pytest.raises(BlzInputError):
        BlzConfig(0.0, 1.0)
    with pytest.raises(DomainError):
        _ = BlzConfig(1.0, 0).eps


def test_kappa_values():
    assert kappa(1.0) == pytest.approx(1 / math.sqrt(2), rel=1e-15)
    assert kappa(2.5) == 0


@pytest.mark.parametrize("alpha", ALPHAS)
def test_phi_basics(alpha):
    cfg = BlzConfig(alpha, 1e6)
    assert phi_map(cfg, [0])[0] == pytest.approx(cfg.centre)
    t = np.array([0.3, -1.1 + 0.4j, 2.0j, -2.5])
    closed, series = phi_map(cfg, t), phi_series(cfg, t)
    assert np.abs(closed - series).max() <= 1e-12 * np.abs(closed).max()
    assert np.allclose(phi_inverse(cfg, closed), t, atol=1e-9)


def test_phi_rejects_points_outside_domain():
    cfg = BlzConfig(1.0, 16.0)
    with pytest.raises(DomainError):
        phi_map(cfg, [-10.0])


@pytest.mark.parametrize("alpha", ALPHAS)
def test_scaled_residual_is_eps_cubed_times_residual(alpha):
    cfg = BlzConfig(alpha, 1e5 + 2e4j)
    t = np.array([0.4, -1.3 + 0.2j, 1.7 - 0.5j])
    f = scaled_residual_f(cfg, t)
    r = blz_residual(cfg, phi_map(cfg, t))
    assert np.allclose(f, cfg.eps**3 * r, rtol=1e-8, atol=1e-10)


def test_scaled_residual_tends_to_oscillator_balance():
    # leading behaviour of F is -G(eps = 0) / (4 M^{1/4})
    t = np.array([0.4, -1.3 + 0.2j, 1.7 - 0.5j])
    errs = []
    for big_l in (1e8, 1e12):
        cfg = BlzConfig(1.0, big_l)
        f = scaled_residual_f(cfg, t)
        g = truncated_residual_g(1.0, 0, t)
        errs.append(np.abs(-4 * cfg.m**0.25 * f - g).max())
    assert errs[1] < errs[0] / 5
    assert errs[1] < 1e-2


def test_truncated_residual_vanishes_on_extension_roots(ext):
    for parts in [(1,), (2,), (3,), (2, 2)]:
        v = ext(*parts).all_roots()
        assert np.abs(truncated_residual_g(1.0, 0, v)).max() < 1e-10


def test_distinct_roots_flag():
    cfg = BlzConfig(1.0, 100.0)
    assert distinct_roots(cfg, [90.0, 110.0])
    assert not distinct_roots(cfg, [90.0, 90.0 + 1e-9])
