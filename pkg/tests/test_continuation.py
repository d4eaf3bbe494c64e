import math

import numpy as np
import pytest

from blzmonster.asymptotic_seeds import classify_solution, make_seed
from blzmonster.blz_core import BlzConfig, blz_residual
from blzmonster.continuation import (
    LPath,
    NewtonFailure,
    NewtonOptions,
    continue_path,
    count_solutions,
    monodromy_loop,
    newton_homotopy,
    newton_refine,
    root_set_distance,
    scaled_tolerance,
    solve_partition,
)
from blzmonster.partitions import enumerate_partitions
from blzmonster.rational_extensions import build_extension


def test_single_root_converges_quickly():
    cfg = BlzConfig(1.0, 50.0)
    exact = (4 * 50 + 1 - 4) / 4
    sol = newton_refine(cfg, [exact * 1.01])
    assert sol.z_roots[0] == pytest.approx(exact, rel=1e-12)
    assert sol.iterations <= 3 + NewtonOptions().polish_iters


def test_options_validation():
    with pytest.raises(ValueError):
        NewtonOptions(residual_tol=0)
    with pytest.raises(ValueError):
        NewtonOptions(damping=1.5)


def test_basin_around_converged_solution(ext):
    cfg = BlzConfig(1.0, 1e6)
    _, sol = solve_partition(ext(3, 1), cfg)
    z = np.array(sol.z_roots)
    rng = np.random.default_rng(7)
    gap = min(abs(a - b) for i, a in enumerate(z) for b in z[i + 1:])
    for _ in range(5):
        noisy = z + 1e-3 * gap * (rng.standard_normal(z.size) + 1j * rng.standard_normal(z.size))
        again = newton_refine(cfg, noisy, NewtonOptions(residual_tol=scaled_tolerance(cfg, z)))
        assert root_set_distance(again.z_roots, z) < 1e-10


def test_failure_is_reported_not_swallowed():
    cfg = BlzConfig(1.0, 1e6)
    with pytest.raises(NewtonFailure):
        newton_refine(cfg, [1.0, 2.0, 3.0], NewtonOptions(max_iters=2))


def test_fd_check_option(ext):
    cfg = BlzConfig(1.0, 1e4)
    z0 = make_seed(ext(2), cfg).z_seed(cfg)
    sol = newton_refine(cfg, z0, NewtonOptions(residual_tol=1e-9, fd_check=True))
    assert sol.blz_residual_inf < 1e-9


def test_homotopy_reaches_six_cluster(ext):
    cfg = BlzConfig(0.5, 1e6)
    seed = make_seed(ext(3, 2, 1), cfg)
    opts = NewtonOptions(residual_tol=scaled_tolerance(cfg, seed.z_seed(cfg)))
    sol = newton_homotopy(cfg, seed.z_seed(cfg), opts)
    assert sol.blz_residual_inf < opts.residual_tol and sol.distinct


def test_radial_descent_tracks_solution(ext):
    cfg = BlzConfig(math.pi / 3, 1e8)
    _, sol = solve_partition(ext(5), cfg)
    trace = continue_path(cfg, sol, LPath.ray(1e8, 7e4))
    assert trace.samples[-1][0] == pytest.approx(7e4)
    end_cfg = BlzConfig(cfg.alpha, 7e4)
    assert np.abs(blz_residual(end_cfg, trace.final_roots)).max() < 1e-8
    _, direct = solve_partition(ext(5), end_cfg)
    assert root_set_distance(trace.final_roots, direct.z_roots) < 1e-8


def test_path_shapes():
    ray = LPath.ray(100, 1)
    assert ray(0) == 100 and ray(1) == pytest.approx(1)
    circle = LPath.circle(7e4, 2)
    assert circle(0.25) == pytest.approx(-7e4)
    assert circle(0.5) == pytest.approx(7e4)
    assert circle.min_steps >= 128


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 2), (3, 3)])
def test_small_census(n, expected):
    cfg = BlzConfig(1.0, 1e6)
    catalog = [build_extension(p) for p in enumerate_partitions(n)]
    report = count_solutions(cfg, catalog)
    assert report.distinct_count == expected and not report.failures
    assert all(e.classified_as == e.partition for e in report.entries)


def test_census_is_thread_count_independent():
    cfg = BlzConfig(1.0, 1e6)
    catalog = [build_extension(p) for p in enumerate_partitions(4)]
    a = count_solutions(cfg, catalog)
    b = count_solutions(cfg, catalog, threads=3)
    assert [e.solution.z_roots for e in a.entries] == [e.solution.z_roots for e in b.entries]


def test_self_conjugate_is_fixed_by_loop(ext):
    cfg = BlzConfig(math.pi / 3, 7e4)
    catalog = [build_extension(p) for p in enumerate_partitions(5)]
    res = monodromy_loop(ext(3, 1, 1), cfg, catalog)
    assert res.landed_on == ext(3, 1, 1).partition
    assert res.endpoint_distance < 1e-8
    residuals = [s[2] for s in res.trace.samples]
    assert max(residuals) < 1e-6


def test_reruns_are_identical(ext):
    cfg = BlzConfig(1.0, 1e6)
    runs = [solve_partition(ext(2, 1, 1), cfg)[1].z_roots for _ in range(2)]
    assert runs[0] == runs[1]
    label, _ = classify_solution(np.array(runs[0]), cfg, [build_extension(p) for p in enumerate_partitions(4)])
    assert label == ext(2, 1, 1).partition
