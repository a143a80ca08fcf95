"""Persistent on-disk store for memoized intersection numbers.

The format is line-oriented ASCII so caches are auditable, diff-able and
mergeable: a header line naming format, version and normalization, then one
record per correlator, keys canonically sorted.  Writes are atomic
(temp file + rename) so an interrupted save never corrupts a cache.
"""

from __future__ import annotations

import os
import random
import tempfile

from .intersect import MemoTable, TauSpec, tau
from .rationals import format_rat, parse_rat

__all__ = [
    "HEADER",
    "CacheError",
    "CacheVersionError",
    "CacheFormatError",
    "CacheDimensionError",
    "CacheDuplicateError",
    "CacheConflictError",
    "save",
    "load",
    "merge_tables",
    "merge_files",
]

HEADER = "WPMEMO 1 kappa-normalization"


class CacheError(Exception):
    """Base class for cache-file failures."""


class CacheVersionError(CacheError):
    pass


class CacheFormatError(CacheError):
    pass


class CacheDimensionError(CacheError):
    pass


class CacheDuplicateError(CacheError):
    pass


class CacheConflictError(CacheError):
    """Same key with different values: signals a broken engine, never merged."""


def _sort_key(key):
    g, d = key
    return (g, sum(d), tuple(-x for x in d))


def _render(memo: MemoTable) -> str:
    lines = [HEADER]
    for g, d in sorted(memo.keys(), key=_sort_key):
        value = memo.get((g, d))
        lines.append(f"{g};{','.join(map(str, d))};{format_rat(value)}")
    return "\n".join(lines) + "\n"


def save(memo: MemoTable, path) -> None:
    """Write the table atomically; a crash mid-save leaves the old file."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp_path = tempfile.mkstemp(
            prefix=".wpmemo-", dir=directory, text=True
        )
        try:
            with os.fdopen(fd, "w") as handle:
                handle.write(_render(memo))
            os.replace(tmp_path, path)
        except BaseException:
            os.unlink(tmp_path)
            raise
    except OSError as exc:
        raise CacheError(f"cannot write cache {path}: {exc}") from exc


def load(path, verify_sample: int = 0, seed: int = 0) -> MemoTable:
    """Read a cache file back into a memo table.

    Every record is re-validated against stability and the dimension
    constraint.  ``verify_sample`` > 0 additionally re-derives that many
    randomly chosen entries from scratch and errors on any mismatch.
    """
    path = os.fspath(path)
    try:
        with open(path) as handle:
            lines = handle.read().splitlines()
    except OSError as exc:
        raise CacheError(f"cannot read cache {path}: {exc}") from exc
    if not lines or lines[0] != HEADER:
        found = lines[0] if lines else "<empty file>"
        raise CacheVersionError(
            f"{path}: expected header {HEADER!r}, found {found!r}"
        )
    memo = MemoTable()
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(";")
        if len(parts) != 3:
            raise CacheFormatError(f"{path}:{lineno}: malformed record {line!r}")
        try:
            g = int(parts[0])
            exponents = tuple(int(x) for x in parts[1].split(","))
            value = parse_rat(parts[2])
        except (ValueError, ZeroDivisionError) as exc:
            raise CacheFormatError(
                f"{path}:{lineno}: malformed record {line!r}: {exc}"
            ) from exc
        spec = TauSpec.of(g, exponents)
        if not spec.constructible:
            raise CacheDimensionError(
                f"{path}:{lineno}: spec (g={g}, d={exponents}) violates "
                "stability or the dimension constraint"
            )
        key = (spec.genus, spec.exponents)
        if key in memo:
            raise CacheDuplicateError(f"{path}:{lineno}: duplicate key {key}")
        memo.put(key, value)
    if verify_sample > 0:
        _verify_entries(memo, verify_sample, seed, path)
    return memo


def _verify_entries(memo: MemoTable, count: int, seed: int, path) -> None:
    keys = sorted(memo.keys(), key=_sort_key)
    rng = random.Random(seed)
    sample = rng.sample(keys, min(count, len(keys)))
    scratch = MemoTable()
    for g, d in sample:
        derived = tau(TauSpec(g, d), scratch)
        stored = memo.get((g, d))
        if derived != stored:
            raise CacheConflictError(
                f"{path}: stored value {format_rat(stored)} for "
                f"(g={g}, d={d}) does not re-derive "
                f"(got {format_rat(derived)})"
            )


def merge_tables(a: MemoTable, b: MemoTable) -> MemoTable:
    """Union of two tables; identical keys must carry identical values."""
    merged = MemoTable()
    for key, value in a.items():
        merged.put(key, value)
    for key, value in b.items():
        existing = merged.get(key) if key in merged else None
        if existing is not None and existing != value:
            raise CacheConflictError(
                f"conflicting values for {key}: "
                f"{format_rat(existing)} vs {format_rat(value)}"
            )
        merged.put(key, value)
    return merged


def merge_files(path_a, path_b, path_out) -> None:
    """Offline merge of two cache files into a third (may equal an input)."""
    merged = merge_tables(load(path_a), load(path_b))
    save(merged, path_out)
