"""Oscillation sums over zeta zeros: the H term and the truncated psi formula.

Sums run over ordinates 0 < gamma <= T in ascending order; conjugate pairs
are folded into a manifestly real term, and accumulation is exact per chunk
(Shewchuk summation) with a fixed pairwise combination tree, so results are
independent of the number of worker threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RangeError
from .zeros import TWO_PI, ZeroTable, tail_bound

DEFAULT_CHUNK = 4096


@dataclass(frozen=True)
class HTermResult:
    x: float
    T: float
    value: float
    terms_used: int
    tail_estimate: float


def _chunked_sum(terms: np.ndarray, chunk_size: int, threads: int) -> float:
    """fsum each chunk, then combine partials along a fixed binary tree."""
    if terms.size == 0:
        return 0.0
    chunks = [
        terms[i : i + chunk_size].tolist() for i in range(0, len(terms), chunk_size)
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(math.fsum, chunks))
    else:
        partials = [math.fsum(c) for c in chunks]
    while len(partials) > 1:
        partials = [
            partials[i] + partials[i + 1] if i + 1 < len(partials) else partials[i]
            for i in range(0, len(partials), 2)
        ]
    return partials[0]


def _truncate(zeros: ZeroTable, t: float) -> np.ndarray:
    if t > zeros.gammas[-1]:
        raise RangeError(f"truncation height {t} beyond table top {zeros.gammas[-1]}")
    return zeros.gammas[: int(np.searchsorted(zeros.gammas, t, side="right"))]


def h_term(
    x: float,
    zeros: ZeroTable,
    t: float,
    *,
    chunk_size: int = DEFAULT_CHUNK,
    threads: int = 1,
) -> HTermResult:
    """H truncated at height t: -4 x^{3/2} sum Re(x^{i gamma}/(rho(1+rho))).

    The factor 4 folds each conjugate pair of the full two-sided zero sum
    -2 sum x^{1+rho}/(rho(1+rho)) into one real term.
    """
    if x < 1:
        raise DomainError(f"h_term needs x >= 1, got {x}")
    gammas = _truncate(zeros, t)
    rho = 0.5 + 1j * gammas
    terms = (np.exp(1j * (gammas * math.log(x))) / (rho * (1.0 + rho))).real
    value = -4.0 * x**1.5 * _chunked_sum(terms, chunk_size, threads)
    tail = tail_bound(t, x) if t >= TWO_PI else math.inf
    return HTermResult(x, t, value, len(gammas), tail)


def psi_explicit(
    x: float,
    zeros: ZeroTable,
    t: float,
    *,
    chunk_size: int = DEFAULT_CHUNK,
    threads: int = 1,
) -> float:
    """Truncated explicit formula x - 2 sqrt(x) sum Re(x^{i gamma}/rho)
    - log(2 pi) - (1/2) log(1 - x^{-2})."""
    if x <= 1:
        raise DomainError(f"psi_explicit needs x > 1, got {x}")
    gammas = _truncate(zeros, t)
    rho = 0.5 + 1j * gammas
    terms = (np.exp(1j * (gammas * math.log(x))) / rho).real
    osc = 2.0 * math.sqrt(x) * _chunked_sum(terms, chunk_size, threads)
    return x - osc - math.log(TWO_PI) - 0.5 * math.log1p(-(x**-2.0))
