"""Command-line front end. Every subcommand is a thin adapter over the library."""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import io_formats
from .asymptotic_seeds import SeedError, make_seed
from .blz_core import BlzConfig
from .continuation import (
    NewtonOptions,
    count_solutions,
    monodromy_loop,
    scaled_tolerance,
    solve_partition,
)
from .jacobian_spectrum import check_spectrum_conjecture, determinant_ratio, sweep_jacobians
from .particles import (
    ParticleConfig,
    SymmetryError,
    cluster_seed,
    reduced_blz_residual,
    solve_equilibrium,
    symmetric_m_partition,
)
from .partitions import MPartition, Partition, degree_sequence, enumerate_partitions, partition_count, rho_sequence
from .rational_extensions import build_extension, sweep_extensions
from .spectrum import SpectrumRequest, check_level_cap, first_levels, radial_spectrum_asymptotic

OUTPUT_ENV = "BLZMONSTER_OUTPUT_DIR"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ------------------------------------------------------------ value parsers


def parse_alpha(text: str) -> float:
    """Decimal or a literal like 'pi/3', '2pi/5', 'pi'."""
    t = text.strip().lower().replace(" ", "")
    try:
        if "pi" in t:
            num, _, den = t.partition("/")
            coef = num.replace("*", "").replace("pi", "")
            value = (float(coef) if coef else 1.0) * math.pi / (float(den) if den else 1.0)
        else:
            value = float(t)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse alpha {text!r}") from exc
    if not value > 0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError("alpha must be positive")
    return value


def parse_complex(text: str) -> complex:
    """'re' or 're,im'."""
    try:
        pieces = [float(p) for p in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse {text!r} as re[,im]") from exc
    if len(pieces) == 1:
        return complex(pieces[0], 0.0)
    if len(pieces) == 2:
        return complex(*pieces)
    raise argparse.ArgumentTypeError(f"expected re[,im], got {text!r}")


def parse_partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}: {exc}") from exc


def parse_levels(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad level list {text!r}") from exc


def parse_m_partition(text: str, m: int) -> MPartition:
    """Sectors separated by ';', e.g. '1;1;;' for M = 4."""
    sectors = text.split(";")
    if len(sectors) != m:
        raise UsageError(f"expected {m} sectors separated by ';', got {len(sectors)}")
    return MPartition(tuple(Partition.parse(s) for s in sectors), m)


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


# ---------------------------------------------------------------- output


def _write(args, name: str, text: str) -> None:
    out = args.output
    if out is None and os.environ.get(OUTPUT_ENV):
        out = str(Path(os.environ[OUTPUT_ENV]) / name)
    if out is None:
        return
    if out == "-":
        sys.stdout.write(text)
        return
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    Path(out).write_text(text, encoding="utf-8")
    print(f"wrote {out}")


def _fmt(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}i"


def _opts(args) -> NewtonOptions | None:
    return NewtonOptions(residual_tol=args.tol) if getattr(args, "tol", None) else None


# ------------------------------------------------------------ subcommands


def cmd_partitions(args) -> int:
    for p in enumerate_partitions(args.n):
        print(f"{p}  degrees={degree_sequence(p)}  rho={rho_sequence(p)}")
    return EXIT_OK


def cmd_wronskian(args) -> int:
    ext = build_extension(args.partition)
    print(f"P{args.partition}(t) = {ext.poly}")
    for r, m in zip(ext.roots.roots, ext.roots.multiplicities):
        print(f"  root {_fmt(complex(r))}  multiplicity {m}")
    return EXIT_OK


def cmd_verify_extension(args) -> int:
    checks = list(sweep_extensions(args.max_n))
    for c in checks:
        if args.verbose or not c.passed:
            print(f"{c.partition}: residual {c.residual:.2e} zero-mult {c.zero_multiplicity}/"
                  f"{c.predicted_multiplicity} F={c.f_property} sym={c.symmetric}")
    failed = [c for c in checks if not c.passed]
    print(f"{len(checks) - len(failed)}/{len(checks)} partitions pass")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_jacobian(args) -> int:
    reports = sweep_jacobians(args.max_n)
    bad = [r for r in reports if not check_spectrum_conjecture(r, args.tol or 1e-8)]
    for r in bad:
        print(f"{r.partition}: deviation {r.max_relative_deviation:.2e}")
    dets = {n: determinant_ratio(n) for n in range(1, args.max_n + 1)}
    det_bad = [n for n, v in dets.items() if abs(v - 1) > 1e-8]
    print(f"{len(reports) - len(bad)}/{len(reports)} partitions match 2 rho^2")
    print("det J[(N)] / 2^N (N!)^2: " + ", ".join(f"N={n}: {v:.12f}" for n, v in dets.items()))
    _write(args, "jacobian.json", io_formats.dumps_document("jacobian_sweep", io_formats.jacobian_payload(reports)))
    return EXIT_FAIL if bad or det_bad else EXIT_OK


def cmd_seed(args) -> int:
    cfg = BlzConfig(args.alpha, args.L)
    seed = make_seed(build_extension(args.partition), cfg)
    print(f"{seed.kind} seed for {args.partition} ({seed.order_used})")
    for t, z in zip(seed.t_seed, seed.z_seed(cfg)):
        print(f"  t = {_fmt(t)}   z = {_fmt(complex(z))}")
    for k, v in seed.details.items():
        if isinstance(v, (complex, float, int, np.floating, np.complexfloating)):
            print(f"  {k} = {_fmt(complex(v))}")
    return EXIT_OK


def cmd_solve(args) -> int:
    cfg = BlzConfig(args.alpha, args.L)
    ext = build_extension(args.partition)
    opts = _opts(args)
    seed, sol = solve_partition(ext, cfg, opts)
    for z in sol.z_roots:
        print(f"  z = {_fmt(z)}")
    print(f"BLZ residual {sol.blz_residual_inf:.3e}, monodromy residual {sol.monodromy_residual_inf:.3e}, "
          f"{sol.iterations} iterations")
    rec = io_formats.record_from_solution(sol, ext.partition, seed.kind, opts=opts)
    _write(args, "solution.json", io_formats.dumps_solutions([rec]))
    gate = opts.residual_tol if opts else scaled_tolerance(cfg, np.array(sol.z_roots))
    # the monodromy coefficient is a fixed multiple 8(1 + alpha) of the BLZ residual
    mono_gate = max(1e-8, 16 * (1 + cfg.alpha) * gate)
    ok = sol.blz_residual_inf < gate and sol.monodromy_residual_inf < mono_gate
    return EXIT_OK if ok else EXIT_FAIL


def cmd_census(args) -> int:
    cfg = BlzConfig(args.alpha, args.L)
    catalog = [build_extension(p) for p in enumerate_partitions(args.n)]
    report = count_solutions(cfg, catalog, _opts(args), threads=args.threads)
    for e in report.entries:
        status = f"residual {e.solution.blz_residual_inf:.2e}" if e.solution else f"FAILED: {e.error}"
        print(f"  {e.partition} -> {e.classified_as}  {status}")
    print(f"{report.distinct_count} distinct solutions (p({args.n}) = {partition_count(args.n)})")
    _write(args, "census.json", io_formats.dumps_solutions(io_formats.records_from_census(report, _opts(args))))
    return EXIT_OK if report.distinct_count == partition_count(args.n) and not report.failures else EXIT_FAIL


def cmd_loop(args) -> int:
    radius = args.radius
    cfg = BlzConfig(args.alpha, radius)
    n = args.partition.n_total
    catalog = [build_extension(p) for p in enumerate_partitions(n)]
    res = monodromy_loop(build_extension(args.partition), cfg, catalog, args.turns, _opts(args))
    expected = args.partition.conjugate() if round(args.turns) % 2 else args.partition
    print(f"{res.start} -> {res.landed_on} after {args.turns} turn(s), endpoint distance "
          f"{res.endpoint_distance:.2e}, {len(res.trace.samples)} samples")
    _write(args, "loop.json", io_formats.dumps_document("trace", io_formats.trace_payload(res.trace)))
    return EXIT_OK if res.landed_on == expected and res.endpoint_distance < 1e-4 else EXIT_FAIL


def cmd_spectrum(args) -> int:
    levels = args.levels or first_levels(args.partition, 5)
    big_l = args.L if args.L.imag else args.L.real
    req = SpectrumRequest(args.alpha, big_l, args.partition, levels)
    check_level_cap(req)
    for n, e in zip(req.levels, radial_spectrum_asymptotic(req)):
        print(f"  n = {n}: E = {e:.12g}")
    return EXIT_OK


def cmd_particles(args) -> int:
    cfg = ParticleConfig(args.m, args.j, args.L)
    if args.symmetric:
        if args.j % args.m:
            raise UsageError("--symmetric needs J to be a multiple of M")
        sector = args.partition or Partition((args.j // args.m,))
        mp = symmetric_m_partition(sector, args.m)
    elif args.sectors:
        mp = parse_m_partition(args.sectors, args.m)
    else:
        mp = MPartition((Partition((args.j,)),) + (Partition(()),) * (args.m - 1), args.m)
    catalog = [build_extension(p) for p in set(mp.sectors) if p.n_total]
    sol = solve_equilibrium(cfg, cluster_seed(cfg, mp, catalog), _opts(args), tag=mp)
    for x in sol.x_positions:
        print(f"  x = {_fmt(x)}")
    print(f"particle residual {sol.residual_inf:.3e}")
    if args.symmetric:
        res = reduced_blz_residual(sol)
        print(f"reduced BLZ residual at alpha = {cfg.alpha}: {res:.3e}")
        return EXIT_OK if res < 1e-9 else EXIT_FAIL
    return EXIT_OK


def cmd_figure10(args) -> int:
    cfg = BlzConfig(math.pi / 3, 7e4)
    catalog = [build_extension(p) for p in enumerate_partitions(5)]
    report = count_solutions(cfg, catalog, threads=args.threads)
    text = io_formats.emit_figure_data(report, cfg)
    if args.output is None and not os.environ.get(OUTPUT_ENV):
        sys.stdout.write(text)
    _write(args, "figure10.csv", text)
    worst = max((e.solution.blz_residual_inf for e in report.entries if e.solution), default=math.inf)
    print(f"{report.distinct_count} distinct solutions, worst residual {worst:.2e}", file=sys.stderr)
    return EXIT_OK if report.distinct_count == 7 and worst < 1e-10 else EXIT_FAIL


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blzmonster", description="Monster potentials at large momentum.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--output", "-o", help="write a JSON/CSV document here ('-' for stdout)")
        p.add_argument("--tol", type=float, default=None, help="Newton residual gate")
        p.add_argument("--threads", type=_positive_int, default=1, help="cap on concurrent seed solves")
        return p

    p = add("partitions", cmd_partitions, "enumerate partitions with degree and rho sequences")
    p.add_argument("n", type=int)

    p = add("wronskian", cmd_wronskian, "exact Wronskian-Hermite polynomial and its roots")
    p.add_argument("--partition", type=parse_partition, required=True)

    p = add("verify-extension", cmd_verify_extension, "root-system, multiplicity and symmetry sweep")
    p.add_argument("--max-n", type=_positive_int, default=10)
    p.add_argument("--verbose", "-v", action="store_true")

    p = add("jacobian", cmd_jacobian, "Jacobian spectrum and determinant sweep")
    p.add_argument("--max-n", type=_positive_int, default=8)

    for name, func, help_text in (("seed", cmd_seed, "large-L seed for a partition"),
                                  ("solve", cmd_solve, "seed, refine and check one solution")):
        p = add(name, func, help_text)
        p.add_argument("--partition", type=parse_partition, required=True)
        p.add_argument("--alpha", type=parse_alpha, required=True)
        p.add_argument("--L", type=parse_complex, required=True)

    p = add("census", cmd_census, "solve from every seed and count distinct solutions")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--alpha", type=parse_alpha, required=True)
    p.add_argument("--L", type=parse_complex, required=True)

    p = add("loop", cmd_loop, "continue a solution around |L| = radius")
    p.add_argument("--partition", type=parse_partition, required=True)
    p.add_argument("--alpha", type=parse_alpha, required=True)
    p.add_argument("--radius", type=parse_complex, required=True)
    p.add_argument("--turns", type=float, default=1.0)

    p = add("spectrum", cmd_spectrum, "two-term large-L radial spectrum")
    p.add_argument("--partition", type=parse_partition, default=Partition(()))
    p.add_argument("--alpha", type=parse_alpha, required=True)
    p.add_argument("--L", type=parse_complex, required=True)
    p.add_argument("--levels", type=parse_levels, default=None)

    p = add("particles", cmd_particles, "equilibria of the integer-M particle system")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--j", type=_positive_int, required=True)
    p.add_argument("--L", type=parse_complex, required=True)
    p.add_argument("--symmetric", action="store_true", help="gamma_M-symmetric seed, reduce to BLZ")
    p.add_argument("--partition", type=parse_partition, default=None, help="sector partition for --symmetric")
    p.add_argument("--sectors", default=None, help="M-partition, sectors separated by ';'")

    add("figure10", cmd_figure10, "reproduce the N = 5, alpha = pi/3, L = 7e4 figure data")
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        if isinstance(exc, (SeedError, SymmetryError)):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAIL
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())
