"""Weighted Goldbach representation counts G(n) and their partial sums.

G(n) sums Lambda(k1)*Lambda(k2) over ordered pairs k1 + k2 = n. The table
builder computes the additive autocorrelation of the von Mangoldt array by
real FFT (zero-padded to a power of two, so the linear convolution is
alias-free); `g_direct` is the O(n) oracle the fast path is tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DomainError, RangeError
from .sieve import LambdaTable

DEFAULT_FFT_CAP = 1 << 26


@dataclass(frozen=True)
class GTable:
    """g[n] for n in [2, 2*limit] plus compensated prefix sums.

    For n <= limit + 1 the pair parts are automatically <= limit, so g[n]
    is the unrestricted representation count; beyond that the table is the
    part-bounded autocorrelation.
    """

    limit: int
    g: np.ndarray
    gprefix: np.ndarray


def g_direct(n: int, lam: LambdaTable) -> float:
    """Oracle: sum Lambda(k)*Lambda(n-k) over k = 1..n-1, ascending k."""
    if n < 2 or n > lam.limit + 1:
        raise RangeError(f"g_direct({n}) needs 2 <= n <= {lam.limit + 1}")
    products = (lam.values[1:n] * lam.values[n - 1 : 0 : -1]).tolist()
    total = 0.0
    for p in products:
        total += p
    return total


def _neumaier_prefix(values: np.ndarray) -> np.ndarray:
    """Running sums with Neumaier compensation, one stored value per index.

    Zero increments leave the state untouched, so the stored prefix is
    nondecreasing whenever the inputs are nonnegative.
    """
    out = np.empty_like(values)
    s = 0.0
    c = 0.0
    for i, y in enumerate(values.tolist()):
        t = s + y
        if abs(s) >= abs(y):
            c += (s - t) + y
        else:
            c += (y - t) + s
        s = t
        out[i] = s + c
    return out


def g_table_fft(lam: LambdaTable, *, fft_cap: int = DEFAULT_FFT_CAP) -> GTable:
    """Autocorrelation table via rfft of length 2^ceil(lg(2N+2))."""
    n = lam.limit
    size = 1 << (2 * n + 1).bit_length()
    if size > fft_cap:
        raise CapacityError(f"transform size {size} exceeds cap {fft_cap}")
    padded = np.zeros(size)
    padded[1 : n + 1] = lam.values[1:]
    spectrum = np.fft.rfft(padded)
    conv = np.fft.irfft(spectrum * spectrum, size)
    g = conv[: 2 * n + 1].copy()
    g[:4] = 0.0
    np.maximum(g, 0.0, out=g)
    gprefix = _neumaier_prefix(g)
    g.flags.writeable = False
    gprefix.flags.writeable = False
    return GTable(n, g, gprefix)


def g_partial_sum(x: float, table: GTable) -> float:
    """Sum of g[n] over n <= x (valid while x <= limit + 1)."""
    if x > table.limit + 1:
        raise RangeError(f"partial sum at {x} beyond unrestricted range")
    m = math.floor(x)
    if m < 2:
        return 0.0
    return float(table.gprefix[m])


def max_g_scan(
    lo: int,
    hi: int,
    table: GTable,
    modulus: int | None = None,
) -> tuple[int, float, float]:
    """Argmax of g over [lo, hi], optionally restricted to multiples of
    ``modulus``; ties resolve to the smaller n."""
    if lo < 2 or hi > 2 * table.limit or lo > hi:
        raise RangeError(f"scan range [{lo}, {hi}] outside table")
    if modulus is not None:
        if modulus < 1:
            raise DomainError("modulus filter must be positive")
        start = ((lo + modulus - 1) // modulus) * modulus
        candidates = np.arange(start, hi + 1, modulus)
        if candidates.size == 0:
            raise DomainError(f"no multiples of {modulus} in [{lo}, {hi}]")
    else:
        candidates = np.arange(lo, hi + 1)
    vals = table.g[candidates]
    best = int(np.argmax(vals))
    n_star = int(candidates[best])
    g_star = float(vals[best])
    return n_star, g_star, g_star / n_star
