"""Integer partitions, degree sequences, tableau spectra and M-partitions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product


@dataclass(frozen=True, order=True)
class Partition:
    """A non-increasing tuple of positive integers. The empty tuple is allowed."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip().strip("()[]")
        if not text:
            return cls(())
        return cls(tuple(sorted((int(s) for s in text.split(",")), reverse=True)))

    @property
    def n_total(self) -> int:
        return sum(self.parts)

    @property
    def j_len(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class MPartition:
    sectors: tuple[Partition, ...]
    m_fold: int

    @property
    def total(self) -> int:
        return sum(p.n_total for p in self.sectors)

    def __str__(self) -> str:
        return "[" + ";".join(str(p) for p in self.sectors) + "]"


def _partitions_desc(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_desc(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order, ``(n)`` first.

    ``n = 0`` gives the single empty partition.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    return [Partition(p) for p in _partitions_desc(n, n)]


def partition_count(n: int) -> int:
    """p(n) via Euler's pentagonal-number recurrence."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        k, total = 1, 0
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


def conjugate(p: Partition) -> Partition:
    if not p.parts:
        return p
    return Partition(tuple(sum(1 for x in p.parts if x > c) for c in range(p.parts[0])))


def degree_sequence(p: Partition) -> tuple[int, ...]:
    """Hermite degrees (nu_j, nu_{j-1}+1, ..., nu_1+j-1), strictly increasing."""
    rev = p.parts[::-1]
    return tuple(part + i for i, part in enumerate(rev))


def deleted_integers(p: Partition, count: int) -> list[int]:
    """First ``count`` non-negative integers not in the degree sequence."""
    if count < 1:
        raise ValueError("count must be positive")
    removed = set(degree_sequence(p))
    out, n = [], 0
    while len(out) < count:
        if n not in removed:
            out.append(n)
        n += 1
    return out


def rho_sequence(p: Partition) -> tuple[int, ...]:
    """Iterated tableau sequence, sorted non-decreasing.

    Each round fills the current diagram with 1 at the right end of the first
    row, increasing by one leftward and downward, records the entry at the
    bottom of every column and then deletes those boxes.
    """
    out: list[int] = []
    shape = p
    while shape.parts:
        first_row = shape.parts[0]
        cols = conjugate(shape).parts
        out.extend(first_row - c + (cols[c] - 1) for c in range(first_row))
        shorter = tuple(h - 1 for h in cols if h > 1)
        shape = conjugate(Partition(shorter))
    return tuple(sorted(out))


def _compositions(total: int, slots: int):
    if slots == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def enumerate_m_partitions(j_total: int, m_fold: int) -> list[MPartition]:
    """Ordered ``m_fold``-tuples of partitions whose sizes sum to ``j_total``."""
    if m_fold < 3:
        raise ValueError("m_fold must be at least 3")
    if j_total < 0:
        raise ValueError("j_total must be non-negative")
    out = []
    for sizes in _compositions(j_total, m_fold):
        for combo in product(*(enumerate_partitions(s) for s in sizes)):
            out.append(MPartition(tuple(combo), m_fold))
    return out
