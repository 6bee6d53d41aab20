"""Exponential sums on exact DFT grids and the integral identities they obey.

Grids carry a trigonometric polynomial P evaluated at j/M; whenever
M >= 2*degree + 1 the grid mean equals the constant Fourier coefficient
exactly (no nonzero frequency survives reduction mod M), which turns the
unit-interval integrals below into finite sums. Short windows near 0 use
trapezoid quadrature instead, and the mean-square prime-count integrals
are evaluated in closed form from their breakpoints.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DegreeError, DomainError, RangeError
from .goldbach import g_partial_sum, g_table_fft
from .sieve import LambdaTable, PsiTable

DEFAULT_GRID_CAP = 1 << 26


@dataclass(frozen=True)
class ExpSumGrid:
    size: int
    values: np.ndarray
    degree: int


@dataclass(frozen=True)
class DecompositionTerms:
    main: float
    second: float
    third: float
    second_closed: float


def _next_pow2(n: int) -> int:
    return 1 << max(0, n - 1).bit_length()


def exp_sum_grid(coeffs, m: int, *, grid_cap: int = DEFAULT_GRID_CAP) -> ExpSumGrid:
    """Evaluate P(j/M) = sum_n c_n e(n j / M) for j = 0..M-1 by padded DFT.

    ``coeffs`` holds c_1..c_N (no constant term). M must exceed the degree.
    """
    c = np.asarray(coeffs)
    n = len(c)
    if m < n + 1:
        raise DegreeError(f"grid size {m} too small for degree {n}")
    if m > grid_cap:
        raise CapacityError(f"grid size {m} exceeds cap {grid_cap}")
    padded = np.zeros(m, dtype=complex)
    padded[1 : n + 1] = c
    values = np.fft.ifft(padded) * m
    values.flags.writeable = False
    return ExpSumGrid(m, values, n)


def grid_mean(grid: ExpSumGrid) -> complex:
    return complex(np.add.reduce(grid.values) / grid.size)


def t_closed_form(alpha: float, y: float) -> complex:
    """Geometric closed form of sum_{n <= y} e(alpha n); floor(y) at integers."""
    if y < 0:
        raise DomainError("window length must be nonnegative")
    m = math.floor(y)
    if m < 1:
        return 0j
    if alpha == math.floor(alpha):
        return complex(m)
    e1 = cmath.exp(2j * math.pi * alpha)
    return e1 * (cmath.exp(2j * math.pi * alpha * m) - 1.0) / (e1 - 1.0)


def _lambda_grids(x: float, lam: LambdaTable, *, grid_cap: int) -> tuple[ExpSumGrid, ExpSumGrid]:
    """Prime-weight and flat exponential sums for n <= floor(x), on a shared
    grid large enough for degree-3X products."""
    bound = math.floor(x)
    if bound > lam.limit:
        raise RangeError(f"x={x} beyond sieve limit {lam.limit}")
    m = _next_pow2(4 * bound + 2)
    s_grid = exp_sum_grid(lam.values[1 : bound + 1], m, grid_cap=grid_cap)
    t_grid = exp_sum_grid(np.ones(bound), m, grid_cap=grid_cap)
    return s_grid, t_grid


def total_integral_check(
    x: float,
    lam: LambdaTable,
    *,
    grid_cap: int = DEFAULT_GRID_CAP,
) -> tuple[float, float]:
    """Both sides of: sum_{n<=x} G(n) = integral_0^1 T(-a) S(a)^2 da.

    Returns (grid quadrature, partial-sum value); the caller asserts
    closeness.
    """
    s_grid, t_grid = _lambda_grids(x, lam, grid_cap=grid_cap)
    integrand = np.conj(t_grid.values) * s_grid.values * s_grid.values
    lhs = float((np.add.reduce(integrand) / s_grid.size).real)
    bound = math.floor(x)
    sliced = LambdaTable(bound, lam.values[: bound + 1])
    rhs = g_partial_sum(x, g_table_fft(sliced))
    return lhs, rhs


def decomposition_terms(
    x: float,
    lam: LambdaTable,
    psi_table: PsiTable,
    *,
    grid_cap: int = DEFAULT_GRID_CAP,
) -> DecompositionTerms:
    """Split T(-a)S^2 = T(-a)T^2 + 2|T|^2 R + T(-a)R^2 and integrate each
    piece on the shared grid; `second_closed` is the closed form
    2 sum_{n <= floor(x)-1} (psi(n) - n) of the middle term."""
    s_grid, t_grid = _lambda_grids(x, lam, grid_cap=grid_cap)
    tv = t_grid.values
    rv = s_grid.values - tv
    tbar = np.conj(tv)
    m = s_grid.size
    main = float((np.add.reduce(tbar * tv * tv) / m).real)
    second = float(2.0 * (np.add.reduce(tbar * tv * rv) / m).real)
    third = float((np.add.reduce(tbar * rv * rv) / m).real)
    bound = math.floor(x)
    if bound - 1 >= 1:
        if bound - 1 > psi_table.limit:
            raise RangeError(f"psi table limit {psi_table.limit} below {bound - 1}")
        prefix_part = float(np.add.reduce(psi_table.prefix[1:bound]))
        second_closed = 2.0 * (prefix_part - (bound - 1) * bound / 2.0)
    else:
        second_closed = 0.0
    return DecompositionTerms(main, second, third, second_closed)


def _trapezoid_window(f: np.ndarray, m: int, alpha_end: float) -> float:
    """Trapezoid integral of a grid function over [0, alpha_end], with the
    fractional last cell linearly interpolated."""
    scaled = m * alpha_end
    j_full = int(math.floor(scaled))
    frac = scaled - j_full
    idx = np.arange(j_full + 1) % m
    fv = f[idx]
    total = float(np.add.reduce((fv[:-1] + fv[1:]) * 0.5)) / m
    if frac > 0.0:
        f_lo = float(f[j_full % m])
        f_hi = float(f[(j_full + 1) % m])
        f_end = f_lo + frac * (f_hi - f_lo)
        total += 0.5 * (f_lo + f_end) * frac / m
    return total


def local_l2(
    x: float,
    y: float,
    lam: LambdaTable,
    *,
    grid_refine: int = 1,
    grid_cap: int = DEFAULT_GRID_CAP,
) -> float:
    """Mean square of R = S - T over the window [-1/y, 1/y].

    Trapezoid rule on a grid of 2^k points with at least ~64 cells per
    window width; ``grid_refine`` doubles the grid for convergence checks.
    """
    if y < 1 or y > x:
        raise DomainError(f"window scale must satisfy 1 <= y <= x, got y={y}, x={x}")
    bound = math.floor(x)
    if bound > lam.limit:
        raise RangeError(f"x={x} beyond sieve limit {lam.limit}")
    m = _next_pow2(max(2 * bound + 2, 64 * math.ceil(x / y))) * max(1, grid_refine)
    s_grid = exp_sum_grid(lam.values[1 : bound + 1], m, grid_cap=grid_cap)
    t_grid = exp_sum_grid(np.ones(bound), m, grid_cap=grid_cap)
    rv = s_grid.values - t_grid.values
    f = (rv * np.conj(rv)).real
    return 2.0 * _trapezoid_window(f, m, 1.0 / y)


def selberg_integral(x: float, h: float, psi_table: PsiTable) -> float:
    """Exact integral of |psi(t+h) - psi(t) - h|^2 over [1, x].

    The integrand is constant between consecutive breakpoints {n} and
    {n - h}, so the integral is a finite sum of value^2 * piece length.
    """
    if h < 0:
        raise DomainError("shift h must be nonnegative")
    if x + h > psi_table.limit:
        raise RangeError(f"need x + h <= {psi_table.limit}, got {x + h}")
    if x <= 1:
        return 0.0
    ints = np.arange(2.0, math.floor(x) + 1.0)
    lo_shift = math.floor(1 + h) + 1
    hi_shift = math.ceil(x + h) - 1
    shifted = np.arange(lo_shift, hi_shift + 1.0) - h if hi_shift >= lo_shift else np.empty(0)
    points = np.concatenate([[1.0, float(x)], ints[ints < x], shifted])
    points = np.unique(points[(points >= 1.0) & (points <= x)])
    mids = 0.5 * (points[:-1] + points[1:])
    upper = psi_table.prefix[np.floor(mids + h).astype(np.int64)]
    lower = psi_table.prefix[np.floor(mids).astype(np.int64)]
    d = upper - lower - h
    return float(np.add.reduce(d * d * np.diff(points)))


def _piecewise_l2(starts: np.ndarray, ends: np.ndarray, weights: np.ndarray) -> float:
    """Exact integral of |sum of active weights|^2 for interval indicators."""
    times = np.concatenate([starts, ends])
    deltas = np.concatenate([weights, -weights])
    order = np.argsort(times, kind="stable")
    times = times[order]
    active = np.cumsum(deltas[order])
    lengths = np.diff(times)
    level = active[:-1]
    return float(np.add.reduce((level * np.conj(level)).real * lengths))


@dataclass(frozen=True)
class WindowSum:
    """Centered (A) and one-sided (B) moving sums of coefficients c_1..c_N.

    A(t) sums c_n over |n - t| <= y/4; B(t) sums c_n over t < n <= t + y/2.
    Both are piecewise constant, so their L2 masses come from the
    breakpoint decomposition with no quadrature error.
    """

    y: float
    coeffs: np.ndarray

    def _n(self) -> np.ndarray:
        return np.arange(1, len(self.coeffs) + 1, dtype=float)

    def a_value(self, t: float) -> complex:
        n = self._n()
        mask = np.abs(n - t) <= self.y / 4.0
        return complex(np.add.reduce(self.coeffs[mask])) if mask.any() else 0j

    def b_value(self, t: float) -> complex:
        n = self._n()
        mask = (n > t) & (n <= t + self.y / 2.0)
        return complex(np.add.reduce(self.coeffs[mask])) if mask.any() else 0j

    def a_l2(self) -> float:
        n = self._n()
        return _piecewise_l2(n - self.y / 4.0, n + self.y / 4.0, np.asarray(self.coeffs, complex))

    def b_l2(self) -> float:
        n = self._n()
        return _piecewise_l2(n - self.y / 2.0, n, np.asarray(self.coeffs, complex))


def gallagher_check(coeffs, y: float) -> tuple[float, float, float]:
    """Window L2 of S(t) = sum c_n e(tn) vs the centered moving-sum mass.

    lhs: dense trapezoid of |S|^2 over [-1/y, 1/y] (step <= 1/(64N));
    rhs: y^{-2} * exact L2 of the centered window sum A. Returns
    (lhs, rhs, lhs/rhs), with ratio 0 when both sides vanish.
    """
    c = np.asarray(coeffs, dtype=complex)
    n = len(c)
    if n < 1:
        raise DomainError("need at least one coefficient")
    if y <= 0:
        raise DomainError("window scale must be positive")
    steps = math.ceil(128.0 * n / y)
    t = np.linspace(-1.0 / y, 1.0 / y, steps + 1)
    phases = np.exp(2j * math.pi * t[:, None] * np.arange(1, n + 1)[None, :])
    s = np.add.reduce(phases * c[None, :], axis=1)
    lhs = float(np.trapezoid((s * np.conj(s)).real, t))
    rhs = WindowSum(y, c).a_l2() / (y * y)
    ratio = lhs / rhs if rhs > 0.0 else 0.0
    return lhs, rhs, ratio


def dyadic_shell_report(
    x: float,
    lam: LambdaTable,
    *,
    grid_cap: int = DEFAULT_GRID_CAP,
) -> list[tuple[int, float, float, float]]:
    """Per-shell grid estimates of the mass of |T| |R|^2 near 0.

    Shell -1 is the central window [-1/x, 1/x]; shell k >= 0 covers
    2^k/x <= |alpha| < 2^{k+1}/x, clipped at 1/2. Reported as
    (shell, lo, hi, contribution); contributions are diagnostics, not
    bound assertions.
    """
    s_grid, t_grid = _lambda_grids(x, lam, grid_cap=grid_cap)
    tv = t_grid.values
    rv = s_grid.values - tv
    f = (np.abs(tv) * (rv * np.conj(rv)).real)
    m = s_grid.size
    report = [(-1, 0.0, 1.0 / x, 2.0 * _trapezoid_window(f, m, 1.0 / x))]
    k = 0
    while 2.0**k / x < 0.5:
        lo = 2.0**k / x
        hi = min(2.0 ** (k + 1) / x, 0.5)
        mass = 2.0 * (_trapezoid_window(f, m, hi) - _trapezoid_window(f, m, lo))
        report.append((k, lo, hi, mass))
        k += 1
    return report
