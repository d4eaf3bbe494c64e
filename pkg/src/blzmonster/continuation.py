"""Newton refinement of BLZ roots, continuation in L, and solution counting."""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .asymptotic_seeds import SeedError, classify_solution, make_seed, match_distance
from .blz_core import (
    BlzConfig,
    MonsterSolution,
    blz_jacobian,
    blz_residual,
    distinct_roots,
    monodromy_residual,
    residual_scale,
)
from .partitions import Partition
from .polynomials import canonical_order
from .rational_extensions import RationalExtension


class NewtonFailure(RuntimeError):
    def __init__(self, message: str, best: np.ndarray, history: list[float]):
        super().__init__(message)
        self.best = best
        self.history = history


class ContinuationFailure(RuntimeError):
    def __init__(self, message: str, trace: "ContinuationTrace"):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class NewtonOptions:
    residual_tol: float = 1e-10
    max_iters: int = 60
    damping: float = 1.0
    backtrack: float = 0.5
    min_step: float = 1.0 / 1024
    polish_iters: int = 3
    fd_check: bool = False

    def __post_init__(self):
        if self.residual_tol <= 0 or self.max_iters < 1:
            raise ValueError("invalid Newton options")
        if not (0 < self.damping <= 1 and 0 < self.backtrack < 1):
            raise ValueError("damping factors must lie in (0, 1]")


def scaled_tolerance(cfg: BlzConfig, z=None, base: float = 1e-10, ulp_factor: float = 64.0) -> float:
    """Absolute residual gate, raised to the rounding floor at large |L|.

    The floor is ``ulp_factor`` units in the last place of the largest term
    magnitude in the residual, evaluated at ``z`` (or at the centre scale).
    """
    scale = residual_scale(cfg, z) if z is not None else abs(cfg.delta)
    return max(base, ulp_factor * np.finfo(float).eps * scale)


def _fd_jacobian(cfg: BlzConfig, z: np.ndarray) -> np.ndarray:
    n = z.size
    jac = np.empty((n, n), dtype=complex)
    for j in range(n):
        h = 1e-6 * abs(z[j])
        dz = np.zeros(n, dtype=complex)
        dz[j] = h
        jac[:, j] = (blz_residual(cfg, z + dz) - blz_residual(cfg, z - dz)) / (2 * h)
    return jac


def damped_newton(fun: Callable[[np.ndarray], np.ndarray], jac: Callable[[np.ndarray], np.ndarray],
                  z0, opts: NewtonOptions) -> tuple[np.ndarray, float, list[float], int]:
    """Backtracking Newton on the max-norm of ``fun``.

    Stops at the first step that fails to decrease the residual (the rounding
    floor, or a stall) or after ``polish_iters`` extra steps below tolerance.
    Returns (z, residual norm, history, iterations).
    """
    z = np.array(z0, dtype=complex)
    r = fun(z)
    norm = float(np.abs(r).max())
    history = [norm]
    polish_left = opts.polish_iters
    iters = 0
    for iters in range(1, opts.max_iters + 1):
        try:
            step = np.linalg.solve(jac(z), -r)
        except np.linalg.LinAlgError as exc:
            raise NewtonFailure("singular Jacobian", z, history) from exc
        lam = opts.damping
        while True:
            trial = z + lam * step
            try:
                r_trial = fun(trial)
                n_trial = float(np.abs(r_trial).max())
            except ValueError:
                n_trial = math.inf
            if n_trial < norm or lam <= opts.min_step:
                break
            lam *= opts.backtrack
        if not n_trial < norm:
            break
        z, r, norm = trial, r_trial, n_trial
        history.append(norm)
        if norm < opts.residual_tol:
            polish_left -= 1
            if polish_left < 0:
                break
    if not norm < opts.residual_tol:
        raise NewtonFailure(f"residual {norm:.3e} above {opts.residual_tol:.1e}", z, history)
    return z, norm, history, iters


def newton_refine(cfg: BlzConfig, z0, opts: NewtonOptions = NewtonOptions(),
                  tag: Partition | None = None) -> MonsterSolution:
    z = np.array(z0, dtype=complex)
    if opts.fd_check:
        exact, approx = blz_jacobian(cfg, z), _fd_jacobian(cfg, z)
        err = np.abs(exact - approx).max() / np.abs(exact).max()
        if err > 1e-5:
            raise NewtonFailure(f"analytic Jacobian disagrees with differences ({err:.2e})", z, [])
    z, _, _, iters = damped_newton(lambda w: blz_residual(cfg, w), lambda w: blz_jacobian(cfg, w), z, opts)
    z = np.array(canonical_order(z))
    mono = float(np.abs(monodromy_residual(cfg, z)).max())
    return MonsterSolution(
        config=cfg,
        partition_tag=tag,
        z_roots=tuple(complex(x) for x in z),
        blz_residual_inf=float(np.abs(blz_residual(cfg, z)).max()),
        monodromy_residual_inf=mono,
        distinct=distinct_roots(cfg, z),
        iterations=iters,
    )


# complex detours for the residual homotopy, tried in order
HOMOTOPY_TWISTS = (1j, -1j, 2j)


def newton_homotopy(cfg: BlzConfig, z0, opts: NewtonOptions, twist: complex = 1j,
                    tag: Partition | None = None, min_ds: float = 1e-8) -> MonsterSolution:
    """Track R(z) = mu(s) R(z0), mu(s) = (1 - s)(1 + twist s), from s = 0 to 1.

    Used when plain Newton leaves the basin, which happens for collapsing
    clusters whose leading-order seed is accurate but whose Jacobian is nearly
    flat along the cluster shape. The complex twist keeps the path off the
    real-parameter singularities of the straight-line homotopy.
    """
    z = np.array(z0, dtype=complex)
    r0 = blz_residual(cfg, z)
    scale = float(np.abs(r0).max())

    def mu(s):
        return (1 - s) * (1 + twist * s)

    s, ds = 0.0, 1.0 / 32
    while s < 1.0:
        ds = min(ds, 1.0 - s)
        target = s + ds
        accepted = False
        try:
            trial = z + np.linalg.solve(blz_jacobian(cfg, z), (mu(s) - mu(target)) * r0)
            for _ in range(8):
                h = blz_residual(cfg, trial) - mu(target) * r0
                trial = trial - np.linalg.solve(blz_jacobian(cfg, trial), h)
            h_norm = float(np.abs(blz_residual(cfg, trial) - mu(target) * r0).max())
            accepted = h_norm < 1e-6 * scale and np.abs(trial - z).max() < 0.25 * _min_gap(z)
        except (np.linalg.LinAlgError, ValueError):
            pass
        if accepted:
            z, s, ds = trial, target, ds * 1.5
        else:
            ds /= 2
            if ds < min_ds:
                raise NewtonFailure(f"homotopy stalled at s = {s:.6f}", z, [])
    return newton_refine(cfg, z, opts, tag)


def solve_partition(ext: RationalExtension, cfg: BlzConfig, opts: NewtonOptions | None = None):
    """Seed from the partition and refine. Returns (seed, solution).

    Plain damped Newton first; on failure, the residual homotopy with each
    twist in turn.
    """
    seed = make_seed(ext, cfg)
    z0 = seed.z_seed(cfg)
    opts = opts or NewtonOptions(residual_tol=scaled_tolerance(cfg, z0))
    try:
        return seed, newton_refine(cfg, z0, opts, tag=ext.partition)
    except NewtonFailure as first:
        failure = first
    for twist in HOMOTOPY_TWISTS:
        try:
            return seed, newton_homotopy(cfg, z0, opts, twist, tag=ext.partition)
        except NewtonFailure as exc:
            failure = exc
    raise failure


# ---------------------------------------------------------------- continuation


@dataclass(frozen=True)
class LPath:
    """A path s in [0, 1] -> L(s) in the complex L-plane."""

    kind: str
    start: complex
    end: complex = 0j
    turns: float = 1.0

    def __call__(self, s: float) -> complex:
        if self.kind == "ray":
            return self.start * (self.end / self.start) ** s
        if self.kind == "circle":
            return self.start * cmath.exp(2j * math.pi * self.turns * s)
        raise ValueError(f"unknown path kind {self.kind}")

    @property
    def min_steps(self) -> int:
        return max(64, int(math.ceil(64 * abs(self.turns)))) if self.kind == "circle" else 16

    @classmethod
    def ray(cls, start: complex, end: complex) -> "LPath":
        return cls("ray", complex(start), complex(end))

    @classmethod
    def circle(cls, start: complex, turns: float = 1.0) -> "LPath":
        return cls("circle", complex(start), turns=turns)

    def describe(self) -> str:
        if self.kind == "ray":
            return f"ray {self.start} -> {self.end}"
        return f"circle |L|={abs(self.start)} from arg {cmath.phase(self.start):.6f}, {self.turns} turns"


@dataclass
class ContinuationTrace:
    path: str
    samples: list[tuple[complex, tuple[complex, ...], float]] = field(default_factory=list)

    @property
    def final_roots(self) -> np.ndarray:
        return np.array(self.samples[-1][1])


def _min_gap(z: np.ndarray) -> float:
    d = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(d, np.inf)
    return float(d.min()) if z.size > 1 else abs(z[0])


def continue_path(cfg0: BlzConfig, sol: MonsterSolution, path: LPath,
                  opts: NewtonOptions | None = None, max_fraction: float = 0.25,
                  min_ds: float = 1e-7) -> ContinuationTrace:
    """Zeroth-order predictor, Newton corrector, step halving on rejection.

    Root order is kept along the path (not re-sorted) so individual roots can
    be followed.
    """
    trace = ContinuationTrace(path.describe())
    z = np.array(sol.z_roots, dtype=complex)
    trace.samples.append((complex(path(0.0)), tuple(z), sol.blz_residual_inf))
    s, ds = 0.0, 1.0 / path.min_steps
    while s < 1.0:
        ds = min(ds, 1.0 - s)
        cfg = BlzConfig(cfg0.alpha, path(s + ds))
        step_opts = opts or NewtonOptions(residual_tol=scaled_tolerance(cfg, z))
        accepted = False
        try:
            z_new = _correct(cfg, z, step_opts)
            accepted = np.abs(z_new - z).max() < max_fraction * _min_gap(z)
        except (NewtonFailure, ValueError):
            pass
        if accepted:
            s += ds
            z = z_new
            res = float(np.abs(blz_residual(cfg, z)).max())
            trace.samples.append((cfg.big_l, tuple(z), res))
            ds = min(ds * 1.5, 1.0 / path.min_steps)
        else:
            ds /= 2
            if ds < min_ds:
                raise ContinuationFailure(f"step underflow at s = {s:.6f}; probable branch point", trace)
    return trace


def _correct(cfg: BlzConfig, z: np.ndarray, opts: NewtonOptions) -> np.ndarray:
    """Newton corrector that preserves root labelling."""
    z = z.copy()
    r = blz_residual(cfg, z)
    norm = float(np.abs(r).max())
    for _ in range(opts.max_iters):
        step = np.linalg.solve(blz_jacobian(cfg, z), -r)
        trial = z + step
        r_trial = blz_residual(cfg, trial)
        n_trial = float(np.abs(r_trial).max())
        if not n_trial < norm:
            break
        z, r, norm = trial, r_trial, n_trial
    if not norm < opts.residual_tol:
        raise NewtonFailure(f"corrector stalled at {norm:.3e}", z, [norm])
    return z


# --------------------------------------------------------------------- census


@dataclass
class CensusEntry:
    partition: Partition
    seed_kind: str
    seed_t: tuple[complex, ...]
    solution: MonsterSolution | None
    classified_as: Partition | None
    classification_score: float
    error: str = ""


@dataclass
class CensusReport:
    config: BlzConfig
    entries: list[CensusEntry]
    distinct_count: int
    min_pairwise_distance: float
    failures: list[str]

    @property
    def expected(self) -> int:
        return len(self.entries)


def root_set_distance(a, b) -> float:
    """Relative distance between two unordered root sets."""
    scale = max(np.abs(np.asarray(a)).max(), np.abs(np.asarray(b)).max())
    return match_distance(a, b) / scale


def _census_entry(ext: RationalExtension, cfg: BlzConfig, catalog, opts) -> CensusEntry:
    try:
        seed, sol = solve_partition(ext, cfg, opts)
    except (NewtonFailure, SeedError, ValueError) as exc:
        return CensusEntry(ext.partition, "", (), None, None, math.inf, str(exc))
    try:
        label, score = classify_solution(np.array(sol.z_roots), cfg, catalog)
    except ValueError:
        label, score = None, math.inf
    return CensusEntry(ext.partition, seed.kind, seed.t_seed, sol, label, score)


def count_solutions(cfg: BlzConfig, catalog: list[RationalExtension],
                    opts: NewtonOptions | None = None, merge_rel: float = 1e-8,
                    progress: Callable[[str], None] | None = None,
                    threads: int = 1) -> CensusReport:
    """Solve from every seed in ``catalog`` and count distinct root sets.

    Seeds are independent; with ``threads > 1`` they are solved concurrently
    but results are always aggregated in catalog order.
    """
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            entries = list(pool.map(lambda e: _census_entry(e, cfg, catalog, opts), catalog))
    else:
        entries = [_census_entry(ext, cfg, catalog, opts) for ext in catalog]
    failures = [f"{e.partition}: {e.error}" for e in entries if e.solution is None]
    if progress:
        for e in entries:
            if e.solution is not None:
                progress(f"{e.partition}: residual {e.solution.blz_residual_inf:.2e}")
    distinct: list[np.ndarray] = []
    min_dist = math.inf
    for e in entries:
        if e.solution is None:
            continue
        z = np.array(e.solution.z_roots)
        dists = [root_set_distance(z, w) for w in distinct]
        if dists:
            min_dist = min(min_dist, min(dists))
        if all(d > merge_rel for d in dists):
            distinct.append(z)
    return CensusReport(cfg, entries, len(distinct), min_dist, failures)


@dataclass
class LoopResult:
    start: Partition
    landed_on: Partition | None
    endpoint_distance: float
    trace: ContinuationTrace


def monodromy_loop(ext: RationalExtension, cfg: BlzConfig, catalog: list[RationalExtension],
                   turns: float = 1.0, opts: NewtonOptions | None = None) -> LoopResult:
    """Continue the solution seeded by ``ext`` around |L| = const and identify the endpoint.

    The endpoint is matched against direct solves of every catalog entry of
    the same size at the starting L.
    """
    _, sol = solve_partition(ext, cfg, opts)
    trace = continue_path(cfg, sol, LPath.circle(cfg.big_l, turns), opts)
    end = trace.final_roots
    best, best_dist = None, math.inf
    for other in catalog:
        if other.n_roots != ext.n_roots:
            continue
        _, ref = solve_partition(other, cfg, opts)
        d = root_set_distance(end, ref.z_roots)
        if d < best_dist:
            best, best_dist = other.partition, d
    return LoopResult(ext.partition, best, best_dist, trace)
