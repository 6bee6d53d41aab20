"""Error term of the mean value of G and the primorial lower-bound checks.

The error term E(x) = sum_{n<=x} G(n) - x^2/2 - H_T(x) is evaluated at
half-integers so no jump of the partial sum sits on the evaluation point.
Each record carries the truncation tail alongside, making truncation slack
visible instead of folding it into E.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RangeError
from .explicit import DEFAULT_CHUNK, h_term
from .goldbach import GTable, g_partial_sum
from .sieve import LambdaTable, euler_phi
from .zeros import ZeroTable

TWIN_PRIME_CONSTANT = 0.6601618158


@dataclass(frozen=True)
class ErrorRecord:
    x: float
    sum_g: float
    h_value: float
    h_tail: float
    e_value: float
    ratio_upper: float
    ratio_lower: float
    ratio_fujii: float


@dataclass(frozen=True)
class OmegaCheck:
    x: float
    q: int
    lhs: float
    mid: float
    rhs: float
    degenerate_modulus: bool


def error_term(
    x: float,
    gtable: GTable,
    zeros: ZeroTable,
    t: float,
    *,
    chunk_size: int = DEFAULT_CHUNK,
    threads: int = 1,
) -> ErrorRecord:
    """One error record at a half-integer x = N + 1/2, N >= 16."""
    n = math.floor(x)
    if x != n + 0.5 or n < 16:
        raise DomainError(f"evaluation point must be N + 1/2 with N >= 16, got {x}")
    sum_g = g_partial_sum(x, gtable)
    h = h_term(x, zeros, t, chunk_size=chunk_size, threads=threads)
    e_value = sum_g - x * x / 2.0 - h.value
    log_x = math.log(x)
    return ErrorRecord(
        x=x,
        sum_g=sum_g,
        h_value=h.value,
        h_tail=h.tail_estimate,
        e_value=e_value,
        ratio_upper=e_value / (x * log_x**5),
        ratio_lower=e_value / (x * math.log(log_x)),
        ratio_fujii=e_value / (x * log_x) ** (4.0 / 3.0),
    )


def error_ratio_table(
    xs,
    gtable: GTable,
    zeros: ZeroTable,
    t: float,
    *,
    chunk_size: int = DEFAULT_CHUNK,
    threads: int = 1,
) -> list[ErrorRecord]:
    xs = list(xs)
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise DomainError("evaluation points must be ascending")
    return [
        error_term(x, gtable, zeros, t, chunk_size=chunk_size, threads=threads)
        for x in xs
    ]


def half_integer_logspace(lo: float, hi: float, count: int) -> list[float]:
    """Log-spaced points snapped to half-integers, deduplicated, ascending."""
    raw = np.logspace(math.log10(lo), math.log10(hi), count)
    snapped = sorted({math.floor(v) + 0.5 for v in raw})
    return [float(v) for v in snapped]


def ap_chebyshev(x: float, q: int, a: int, lam: LambdaTable) -> float:
    """Chebyshev sum restricted to the progression n = a (mod q), n <= x."""
    if q < 1:
        raise DomainError("modulus must be positive")
    if not 0 <= a < q:
        raise DomainError(f"residue {a} outside [0, {q})")
    if x > lam.limit:
        raise RangeError(f"x={x} beyond sieve limit {lam.limit}")
    n = math.floor(x)
    if n < 1:
        return 0.0
    start = a if a >= 1 else q
    if start > n:
        return 0.0
    return float(np.add.reduce(lam.values[start : n + 1 : q]))


def _is_squarefree(q: int) -> bool:
    d = 2
    while d * d <= q:
        if q % (d * d) == 0:
            return False
        if q % d == 0:
            q //= d
        d += 1 if d == 2 else 2
    return True


def omega_lower_check(
    x: float,
    q: int,
    gtable: GTable,
    lam: LambdaTable,
) -> OmegaCheck:
    """Triple (lhs, mid, rhs) behind the primorial-multiples mechanism.

    lhs sums G(n) over multiples of q up to 4x; mid pairs progression
    sums S(x,q,a) S(x,q,q-a) over residues coprime to q; rhs is the
    x^2/(4 phi(q)) floor those progression sums imply. Every product in
    mid is a pair counted by lhs, so lhs >= mid holds unconditionally.
    """
    if q < 1:
        raise DomainError("modulus must be positive")
    if not _is_squarefree(q):
        raise DomainError(f"modulus {q} is not squarefree")
    top = math.floor(4 * x)
    if top > 2 * gtable.limit:
        raise RangeError(f"4x={top} beyond table range {2 * gtable.limit}")
    lhs = float(np.add.reduce(gtable.g[q : top + 1 : q]))
    degenerate = q == 1
    if degenerate:
        s = ap_chebyshev(x, 1, 0, lam)
        mid = s * s
    else:
        mid = 0.0
        for a in range(1, q):
            if math.gcd(a, q) == 1:
                mid += ap_chebyshev(x, q, a, lam) * ap_chebyshev(x, q, q - a, lam)
    rhs = x * x / (4.0 * euler_phi(q))
    return OmegaCheck(x, q, lhs, mid, rhs, degenerate)


def singular_series(n: int) -> float:
    """Heuristic density constant for even n: 2 C2 prod (p-1)/(p-2) over
    odd primes p | n; zero for odd n. Diagnostic only."""
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    if n % 2 == 1:
        return 0.0
    value = 2.0 * TWIN_PRIME_CONSTANT
    m = n
    while m % 2 == 0:
        m //= 2
    p = 3
    while p * p <= m:
        if m % p == 0:
            value *= (p - 1.0) / (p - 2.0)
            while m % p == 0:
                m //= p
        p += 2
    if m > 1:
        value *= (m - 1.0) / (m - 2.0)
    return value
