"""Von Mangoldt values, Chebyshev prefix sums, and elementary arithmetic.

Tables are plain frozen dataclasses around read-only numpy arrays, indexed
so that entry ``n`` lives at position ``n`` (position 0 is unused). All
downstream modules treat them as immutable shared inputs.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CapacityError, DomainError, IntegrityError, RangeError

DEFAULT_LIMIT_CAP = 100_000_000
DEFAULT_SEGMENT = 1 << 20

CACHE_MAGIC = b"GLAB"
CACHE_VERSION = 1
_CACHE_HEADER = struct.Struct("<4sIQ")

_INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class LambdaTable:
    """values[n] = log p when n = p^k for prime p and k >= 1, else 0."""

    limit: int
    values: np.ndarray


@dataclass(frozen=True)
class PsiTable:
    """prefix[n] = sum of von Mangoldt values over 1..n (sequential order)."""

    limit: int
    prefix: np.ndarray


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _base_primes(n: int) -> np.ndarray:
    if n < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.nonzero(flags)[0].astype(np.int64)


def build_lambda(
    limit: int,
    *,
    segment_size: int = DEFAULT_SEGMENT,
    limit_cap: int = DEFAULT_LIMIT_CAP,
) -> LambdaTable:
    """Sieve von Mangoldt values up to ``limit``.

    Segmented over blocks of ``segment_size`` entries; every entry is
    written exactly once, so the resulting table is bit-identical for any
    segment size.
    """
    if limit < 1:
        raise CapacityError("sieve limit must be at least 1")
    if limit > limit_cap:
        raise CapacityError(f"sieve limit {limit} exceeds cap {limit_cap}")

    values = np.zeros(limit + 1)
    base = _base_primes(math.isqrt(limit))
    for lo in range(2, limit + 1, segment_size):
        hi = min(lo + segment_size, limit + 1)
        flags = np.ones(hi - lo, dtype=bool)
        for p in base:
            p = int(p)
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start < hi:
                flags[start - lo :: p] = False
        primes = np.nonzero(flags)[0] + lo
        values[primes] = np.log(primes)
    for p in base:
        p = int(p)
        pk = p * p
        while pk <= limit:
            values[pk] = np.log(float(p))
            pk *= p
    return LambdaTable(limit, _readonly(values))


def build_psi(table: LambdaTable) -> PsiTable:
    """Prefix sums of a LambdaTable (cumsum, left-to-right)."""
    return PsiTable(table.limit, _readonly(np.cumsum(table.values)))


def psi(x: float, table: PsiTable) -> float:
    """Chebyshev sum over n <= x (closed at the right endpoint)."""
    if x < 0:
        raise DomainError("psi argument must be nonnegative")
    if x > table.limit:
        raise RangeError(f"psi({x}) beyond table limit {table.limit}")
    n = math.floor(x)
    return float(table.prefix[n]) if n >= 1 else 0.0


def euler_phi(q: int) -> int:
    """Euler totient by trial factorization."""
    if q < 1:
        raise DomainError("totient argument must be positive")
    result = 1
    n = q
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            pk = p - 1
            while n % p == 0:
                n //= p
                pk *= p
            result *= pk
        p += 1 if p == 2 else 2
    if n > 1:
        result *= n - 1
    return result


def primorial(k: int) -> int:
    """Product of the first k primes; errors beyond 64-bit width."""
    if k < 1:
        raise DomainError("primorial index must be positive")
    result = 1
    found = 0
    p = 2
    while found < k:
        if all(p % d for d in range(2, math.isqrt(p) + 1)):
            result *= p
            found += 1
            if result > _INT64_MAX:
                raise OverflowError(f"primorial({k}) exceeds 64-bit range")
        p += 1
    return result


def save_lambda(table: LambdaTable, path: str | Path) -> None:
    """Write the binary cache: header {magic, version u32, N u64} + N f64."""
    header = _CACHE_HEADER.pack(CACHE_MAGIC, CACHE_VERSION, table.limit)
    payload = np.ascontiguousarray(table.values[1:], dtype="<f8").tobytes()
    tmp = Path(path).with_suffix(".tmp")
    tmp.write_bytes(header + payload)
    tmp.replace(path)


def load_lambda(path: str | Path) -> LambdaTable:
    raw = Path(path).read_bytes()
    if len(raw) < _CACHE_HEADER.size:
        raise IntegrityError(f"cache file {path} too short for header")
    magic, version, n = _CACHE_HEADER.unpack_from(raw)
    if magic != CACHE_MAGIC:
        raise IntegrityError(f"cache file {path} has bad magic {magic!r}")
    if version != CACHE_VERSION:
        raise IntegrityError(f"cache file {path} has version {version}")
    expected = _CACHE_HEADER.size + 8 * n
    if len(raw) != expected:
        raise IntegrityError(f"cache file {path}: {len(raw)} bytes, expected {expected}")
    body = np.frombuffer(raw, dtype="<f8", offset=_CACHE_HEADER.size)
    values = np.concatenate([[0.0], body])
    return LambdaTable(int(n), _readonly(values))
