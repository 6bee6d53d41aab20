"""Ingest, validate, cache, and serve tables of zeta-zero ordinates.

Ordinates are input data (one decimal per line, `#` comments allowed);
this module never computes zeros. All stored zeros are ordinates gamma of
zeros on the critical line, so a table *is* the half-line representation.
"""

from __future__ import annotations

import hashlib
import json
import math
import urllib.request
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
from filelock import FileLock

from ._builtin_zeros import BUILTIN_ZEROS_TEXT
from .errors import (
    DomainError,
    EmptyTableError,
    FetchError,
    IntegrityError,
    OrderError,
    ParseError,
)

TWO_PI = 2.0 * math.pi
FIRST_ZERO = 14.134725
FIRST_ZERO_TOL = 1e-5
_SMALL_T = TWO_PI * math.e


@dataclass(frozen=True)
class ZeroTable:
    gammas: np.ndarray
    source: str
    precision_digits: int

    def height_of_prefix(self, count: int) -> float:
        """Ordinate of the count-th zero (truncation height for prefixes)."""
        if count < 1 or count > len(self.gammas):
            raise DomainError(f"prefix length {count} outside table of {len(self.gammas)}")
        return float(self.gammas[count - 1])


@dataclass(frozen=True)
class ValidationReport:
    count: int
    last_gamma: float
    estimate: float
    deviation: float
    passed: bool
    small_t: bool


def parse_zeros(stream, source: str = "<memory>", *, starts_at_first: bool = True) -> ZeroTable:
    """Parse one ordinate per line; blank lines and '#' comments skipped."""
    if hasattr(stream, "read"):
        text = stream.read()
    else:
        text = stream
    gammas: list[float] = []
    frac_digits: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        token = line.strip()
        if not token or token.startswith("#"):
            continue
        try:
            value = float(token)
        except ValueError:
            raise ParseError(f"not a decimal ordinate: {token!r}", lineno) from None
        if not math.isfinite(value) or value <= 14.0:
            raise ParseError(f"ordinate {token} outside the valid range (> 14)", lineno)
        gammas.append(value)
        frac_digits.append(len(token.partition(".")[2]))
    if not gammas:
        raise EmptyTableError(f"no ordinates in {source}")
    arr = np.asarray(gammas)
    if np.any(np.diff(arr) <= 0):
        bad = int(np.nonzero(np.diff(arr) <= 0)[0][0])
        raise OrderError(
            f"{source}: ordinates not strictly ascending near entry {bad + 1} "
            f"({arr[bad]} -> {arr[bad + 1]})"
        )
    if starts_at_first and abs(arr[0] - FIRST_ZERO) > FIRST_ZERO_TOL:
        raise OrderError(f"{source}: first ordinate {arr[0]} is not the first zero")
    arr.flags.writeable = False
    return ZeroTable(arr, source, min(frac_digits))


def serialize_zeros(table: ZeroTable) -> str:
    digits = table.precision_digits
    return "".join(f"{g:.{digits}f}\n" for g in table.gammas)


def load_zeros(path: str | Path, *, starts_at_first: bool = True) -> ZeroTable:
    p = Path(path)
    return parse_zeros(p.read_text(), source=str(p), starts_at_first=starts_at_first)


def builtin_zeros() -> ZeroTable:
    """The embedded first-100 table (offline default)."""
    return parse_zeros(BUILTIN_ZEROS_TEXT, source="builtin")


def _cache_paths(url: str, cache_dir: Path) -> tuple[Path, Path]:
    key = hashlib.sha256(url.encode()).hexdigest()[:16]
    return cache_dir / f"zeros-{key}.txt", cache_dir / f"zeros-{key}.json"


def fetch_zeros(
    url: str,
    cache_dir: str | Path,
    *,
    allow_network: bool = True,
    timeout: float = 60.0,
) -> ZeroTable:
    """Download a zero table once, verify against the cached digest after.

    Concurrent fetches into one cache directory are serialized through a
    lock file; a cache whose content no longer matches its recorded sha256
    raises IntegrityError rather than silently refetching.
    """
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    raw_path, meta_path = _cache_paths(url, cache_dir)
    with FileLock(str(cache_dir / "fetch.lock")):
        if meta_path.exists() and raw_path.exists():
            meta = json.loads(meta_path.read_text())
            digest = hashlib.sha256(raw_path.read_bytes()).hexdigest()
            if digest != meta.get("sha256"):
                raise IntegrityError(f"cache {raw_path} does not match recorded sha256")
            return parse_zeros(raw_path.read_text(), source=str(raw_path))
        if not allow_network:
            raise FetchError(f"cache cold for {url} and network disabled")
        try:
            with urllib.request.urlopen(url, timeout=timeout) as resp:
                data = resp.read()
        except OSError as exc:
            raise FetchError(f"fetch of {url} failed: {exc}") from exc
        tmp = raw_path.with_suffix(".part")
        tmp.write_bytes(data)
        tmp.replace(raw_path)
        meta = {
            "url": url,
            "sha256": hashlib.sha256(data).hexdigest(),
            "fetched_at": datetime.now(timezone.utc).isoformat(),
        }
        meta_path.write_text(json.dumps(meta, indent=2) + "\n")
        return parse_zeros(raw_path.read_text(), source=str(raw_path))


def zero_count_estimate(t: float) -> float:
    """Main-term estimate (t/2pi) log(t/(2pi e)) + 7/8 for the zero count."""
    if t < _SMALL_T:
        raise DomainError(f"count estimate needs T >= 2*pi*e, got {t}")
    return t / TWO_PI * math.log(t / (TWO_PI * math.e)) + 7.0 / 8.0


def validate_zeros(table: ZeroTable) -> ValidationReport:
    """Compare the table's count against the count estimate at its top."""
    count = len(table.gammas)
    last = float(table.gammas[-1])
    if last < _SMALL_T:
        return ValidationReport(count, last, math.nan, math.nan, True, True)
    estimate = zero_count_estimate(last)
    deviation = abs(count - estimate)
    passed = deviation <= 1.0 + 0.05 * estimate
    return ValidationReport(count, last, estimate, deviation, passed, False)


def tail_bound(t: float, x: float) -> float:
    """Upper estimate for the oscillation sum truncated at height t.

    Each zero with ordinate gamma contributes at most x^{3/2}/gamma^2 in
    absolute value; integrating the zero density log(u/2pi)/(2pi) du above
    t and doubling for safety gives 2*(2/pi)*x^{3/2}*(log(t/2pi)+1)/t.
    """
    if t < TWO_PI:
        raise DomainError(f"tail bound needs T >= 2*pi, got {t}")
    if x < 0:
        raise DomainError("tail bound needs x >= 0")
    return 4.0 / math.pi * x**1.5 * (math.log(t / TWO_PI) + 1.0) / t
