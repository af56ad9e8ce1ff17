"""Plain-text cache for computed correlator values.

Format: one header line, then one tab-separated record per line::

    wprec-cache v1
    0|1:1|0,0,0,0<TAB>1/1
    2||3,2<TAB>29/5760

A record is the key text (genus ``|`` kappa ``|`` comma-joined psi
exponents) and the exact value as ``numerator/denominator``.  Files are
append-only: saving writes only keys not already present, in sorted
order, so re-running a warmed computation leaves the file
byte-identical.  Cached values are trusted on load; ``check_cache``
recomputes every record with a fresh engine.
"""

from __future__ import annotations

import os
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .correlator import CorrelatorEngine, CorrelatorKey

CACHE_HEADER = "wprec-cache v1"

_ENV_VAR = "WPREC_CACHE"


def default_cache_path() -> str | None:
    """Cache file named by the WPREC_CACHE environment variable, if set."""
    path = os.environ.get(_ENV_VAR)
    return path if path else None


def _format_value(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def load_cache(path: str | os.PathLike[str]) -> dict[CorrelatorKey, Fraction]:
    """Parse a cache file; malformed or conflicting lines raise ValueError."""
    text = Path(path).read_text(encoding="ascii")
    lines = text.split("\n")
    if not lines or lines[0] != CACHE_HEADER:
        raise ValueError(f"{path}:1: expected header {CACHE_HEADER!r}")
    records: dict[CorrelatorKey, Fraction] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected '<key>\\t<num/den>'")
        try:
            key = CorrelatorKey.from_text(parts[0])
            value = Fraction(parts[1])
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
        if key in records and records[key] != value:
            raise ValueError(f"{path}:{lineno}: conflicting value for {parts[0]}")
        records[key] = value
    return records


def save_new_records(
    path: str | os.PathLike[str],
    records: Mapping[CorrelatorKey, Fraction],
) -> int:
    """Append records whose keys are absent; return how many were written.

    Creates the file (with header) when missing.  A key already present
    with a different value is a corruption signal and raises.
    """
    target = Path(path)
    existing: dict[CorrelatorKey, Fraction] = {}
    if target.exists():
        existing = load_cache(target)
    fresh = {}
    for key, value in records.items():
        if key in existing:
            if existing[key] != value:
                raise ValueError(
                    f"{path}: cached {key.text()} disagrees with new value"
                )
        else:
            fresh[key] = value
    if not target.exists():
        target.write_text(CACHE_HEADER + "\n", encoding="ascii")
    with open(target, "a", encoding="ascii") as handle:
        for key in sorted(fresh):
            handle.write(f"{key.text()}\t{_format_value(fresh[key])}\n")
    return len(fresh)


def seed_engine(
    engine: CorrelatorEngine, records: Mapping[CorrelatorKey, Fraction]
) -> None:
    """Preload an engine's memo table with cached values."""
    engine.memo.update(records)


def check_cache(
    path: str | os.PathLike[str],
) -> tuple[bool, int, str | None]:
    """Recompute every cached record with a fresh engine.

    Returns (all_match, record_count, first_mismatch_description).
    """
    records = load_cache(path)
    fresh = CorrelatorEngine()
    for key in sorted(records):
        recomputed = fresh.correlator(key.genus, key.kappa, key.psi)
        if recomputed != records[key]:
            detail = (
                f"{key.text()}: cached {records[key]} != recomputed {recomputed}"
            )
            return False, len(records), detail
    return True, len(records), None
