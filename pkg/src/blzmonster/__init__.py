"""Monster potentials of the BLZ system in the large-momentum limit."""

from .blz_core import BlzConfig, MonsterSolution, blz_jacobian, blz_residual, monodromy_residual
from .continuation import NewtonOptions, count_solutions, newton_refine, solve_partition
from .partitions import Partition, enumerate_partitions
from .rational_extensions import build_extension

__version__ = "0.1.0"

__all__ = [
    "BlzConfig",
    "MonsterSolution",
    "NewtonOptions",
    "Partition",
    "blz_jacobian",
    "blz_residual",
    "build_extension",
    "count_solutions",
    "enumerate_partitions",
    "monodromy_residual",
    "newton_refine",
    "solve_partition",
]
