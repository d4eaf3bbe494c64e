"""Exact rational polynomials, Hermite Wronskians and complex root sets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
import numpy as np

COALESCE_REL = 1e-8
ORDER_QUANTUM = 9  # decimal places used when sorting roots


class RootFindingError(RuntimeError):
    def __init__(self, message: str, best: np.ndarray | None = None):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class ExactPolynomial:
    """Polynomial with Fraction coefficients, lowest degree first."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        c = [Fraction(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, k: int, c=1) -> "ExactPolynomial":
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return ExactPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "ExactPolynomial":
        return ExactPolynomial(tuple(-x for x in self.coeffs))

    def __sub__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "ExactPolynomial":
        if not isinstance(other, ExactPolynomial):
            return ExactPolynomial(tuple(x * other for x in self.coeffs))
        if self.is_zero() or other.is_zero():
            return ExactPolynomial(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return ExactPolynomial(tuple(out))

    __rmul__ = __mul__

    def divmod(self, other: "ExactPolynomial") -> tuple["ExactPolynomial", "ExactPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.coeffs[-1]
        for shift in range(len(q) - 1, -1, -1):
            c = rem[shift + len(other.coeffs) - 1] / lead
            q[shift] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[shift + i] -= c * b
        return ExactPolynomial(tuple(q)), ExactPolynomial(tuple(rem))

    def exact_div(self, other: "ExactPolynomial") -> "ExactPolynomial":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def derivative(self) -> "ExactPolynomial":
        return ExactPolynomial(tuple(k * c for k, c in enumerate(self.coeffs))[1:])

    def trailing_zeros(self) -> int:
        """Multiplicity of the root 0, counted exactly."""
        if self.is_zero():
            raise ValueError("zero polynomial")
        return next(k for k, c in enumerate(self.coeffs) if c != 0)

    def shift_down(self, k: int) -> "ExactPolynomial":
        """Divide by t**k, assuming the low coefficients vanish."""
        if any(self.coeffs[:k]):
            raise ArithmeticError("polynomial not divisible by t**k")
        return ExactPolynomial(self.coeffs[k:])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_complex(self) -> np.ndarray:
        """Coefficients as complex doubles, lowest degree first."""
        return np.array([complex(float(c)) for c in self.coeffs], dtype=complex)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and c in (1, -1):
                body = mono
            else:
                body = str(c) + (f"*{mono}" if mono else "")
            sign = "-" if c < 0 else "+"
            if body.startswith("-"):
                body = body[1:]
            terms.append((sign, body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


_T = ExactPolynomial((0, 1))


def hermite(n: int) -> ExactPolynomial:
    """Physicists' Hermite polynomial H_n (H_{n+1} = 2t H_n - 2n H_{n-1})."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    prev, cur = ExactPolynomial((0,)), ExactPolynomial((1,))
    for k in range(n):
        prev, cur = cur, _T * cur * 2 - prev * (2 * k)
    return cur


def wronskian(fs: Sequence[ExactPolynomial]) -> ExactPolynomial:
    """Exact Wronskian det[f_k^{(i)}] by fraction-free Bareiss elimination."""
    if not fs:
        raise ValueError("need at least one polynomial")
    n = len(fs)
    rows = []
    current = list(fs)
    for _ in range(n):
        rows.append(current)
        current = [f.derivative() for f in current]
    a = [list(r) for r in rows]
    sign = 1
    prev = ExactPolynomial((1,))
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return ExactPolynomial(())
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det * sign


def make_monic(p: ExactPolynomial) -> ExactPolynomial:
    if p.is_zero():
        raise ValueError("cannot normalise the zero polynomial")
    return p * (1 / p.leading)


@dataclass(frozen=True)
class ComplexRootSet:
    """Distinct roots with multiplicities, in canonical order."""

    roots: tuple[complex, ...]
    multiplicities: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.multiplicities)

    def expanded(self) -> np.ndarray:
        return np.array(
            [r for r, m in zip(self.roots, self.multiplicities) for _ in range(m)], dtype=complex
        )

    def multiplicity_of_zero(self) -> int:
        return sum(m for r, m in zip(self.roots, self.multiplicities) if r == 0)

    def nonzero(self) -> tuple[tuple[complex, int], ...]:
        return tuple((r, m) for r, m in zip(self.roots, self.multiplicities) if r != 0)


def canonical_order(values: Iterable[complex]) -> list[complex]:
    return sorted(
        (complex(v) for v in values),
        key=lambda z: (round(z.real, ORDER_QUANTUM), round(z.imag, ORDER_QUANTUM)),
    )


def _aberth(coeffs: np.ndarray, z: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
    """Simultaneous Aberth-Ehrlich refinement; coeffs lowest degree first."""
    p = np.polynomial.Polynomial(coeffs)
    dp = p.deriv()
    deg = len(coeffs) - 1
    for _ in range(max_iter):
        pz, dpz = p(z), dp(z)
        scaled = np.abs(pz) / (1 + np.abs(z)) ** deg
        if np.all(scaled < tol):
            return z
        ratio = pz / dpz
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        step = ratio / (1 - ratio * inv.sum(axis=1))
        z = z - step
        if np.all(np.abs(step) <= 1e-16 * (1 + np.abs(z))):
            return z
    return z


def _polish(p: ExactPolynomial, z: np.ndarray, dps: int = 40, steps: int = 4) -> np.ndarray:
    """Newton polish with exact coefficients in extended precision."""
    dp = p.derivative()
    out = []
    with mpmath.workdps(dps):
        cs = [mpmath.mpf(c.numerator) / c.denominator for c in p.coeffs]
        dcs = [mpmath.mpf(c.numerator) / c.denominator for c in dp.coeffs]
        for root in z:
            x = mpmath.mpc(root.real, root.imag)
            for _ in range(steps):
                d = mpmath.polyval(dcs[::-1], x)
                if d == 0:
                    break
                x -= mpmath.polyval(cs[::-1], x) / d
            out.append(complex(x))
    return np.array(out)


def _merge(values: np.ndarray, rel: float) -> list[tuple[complex, int]]:
    groups: list[list[complex]] = []
    for v in values:
        for g in groups:
            ref = g[0]
            if abs(v - ref) <= rel * max(1.0, abs(ref)):
                g.append(v)
                break
        else:
            groups.append([v])
    return [(complex(np.mean(g)), len(g)) for g in groups]


def find_roots(p: ExactPolynomial, tol: float = 1e-14, max_iter: int = 500) -> ComplexRootSet:
    """All roots of ``p``. The zero root's multiplicity is counted exactly."""
    if p.degree < 1:
        raise ValueError("need degree at least 1")
    zero_mult = p.trailing_zeros()
    rest = make_monic(p.shift_down(zero_mult))
    found: list[tuple[complex, int]] = []
    if rest.degree >= 1:
        coeffs = rest.to_complex()
        start = np.roots(coeffs[::-1]).astype(complex)
        z = _aberth(coeffs, start, tol, max_iter)
        z = _polish(rest, z)
        resid = np.abs(np.polynomial.Polynomial(coeffs)(z)) / (1 + np.abs(z)) ** rest.degree
        if not np.all(resid < max(tol, 1e-12)):
            raise RootFindingError(f"root refinement stalled, residual {resid.max():.3e}", z)
        found = _merge(z, COALESCE_REL)
    if zero_mult:
        found.append((0j, zero_mult))
    found.sort(key=lambda rm: (round(rm[0].real, ORDER_QUANTUM), round(rm[0].imag, ORDER_QUANTUM)))
    return ComplexRootSet(tuple(r for r, _ in found), tuple(m for _, m in found))
