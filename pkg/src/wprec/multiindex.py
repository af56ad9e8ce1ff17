"""Multi-indices with finite support and the splitting combinatorics on them.

A multi-index assigns a nonnegative multiplicity to each positive integer
index; only finitely many are nonzero. Weight is sum(i * m(i)), length is
sum(m(i)). Instances are immutable, hashable and totally ordered by their
canonical entry tuple, so they work as dict keys and sort stably in output.

The text form is ``i:m`` pairs joined by commas in ascending index order
("1:2,3:1"); the zero index is the empty string.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

from .numbers import binomial, factorial


class MultiIndex:
    """Immutable finitely-supported map from positive indices to counts."""

    __slots__ = ("_entries", "_weight", "_length", "_hash")

    def __init__(self, source: Iterable[tuple[int, int]] | dict[int, int] = ()):
        if isinstance(source, dict):
            items = source.items()
        else:
            items = tuple(source)
        merged: dict[int, int] = {}
        for i, m in items:
            if i < 1:
                raise ValueError(f"multi-index positions start at 1, got {i}")
            if m < 0:
                raise ValueError(f"negative multiplicity {m} at position {i}")
            if m:
                merged[i] = merged.get(i, 0) + m
        self._init_from(tuple(sorted(merged.items())))

    def _init_from(self, entries: tuple[tuple[int, int], ...]) -> None:
        self._entries = entries
        self._weight = sum(i * m for i, m in entries)
        self._length = sum(m for _, m in entries)
        self._hash = hash(entries)

    @classmethod
    def _raw(cls, entries: tuple[tuple[int, int], ...]) -> "MultiIndex":
        """Trusted constructor: entries already sorted, positive, merged."""
        self = object.__new__(cls)
        self._init_from(entries)
        return self

    @property
    def entries(self) -> tuple[tuple[int, int], ...]:
        return self._entries

    @property
    def weight(self) -> int:
        """sum(i * m(i)): the total degree the index carries."""
        return self._weight

    @property
    def length(self) -> int:
        """sum(m(i)): how many factors the index stands for."""
        return self._length

    def __getitem__(self, i: int) -> int:
        for j, m in self._entries:
            if j == i:
                return m
        return 0

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiIndex):
            return NotImplemented
        return self._entries == other._entries

    def __lt__(self, other: "MultiIndex") -> bool:
        return self._entries < other._entries

    def __le__(self, other: "MultiIndex") -> bool:
        return self._entries <= other._entries

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other: "MultiIndex") -> "MultiIndex":
        if not other._entries:
            return self
        if not self._entries:
            return other
        merged = dict(self._entries)
        for i, m in other._entries:
            merged[i] = merged.get(i, 0) + m
        return MultiIndex._raw(tuple(sorted(merged.items())))

    def __sub__(self, other: "MultiIndex") -> "MultiIndex":
        merged = dict(self._entries)
        for i, m in other._entries:
            left = merged.get(i, 0) - m
            if left < 0:
                raise ValueError(f"{other} is not contained in {self}")
            if left:
                merged[i] = left
            else:
                merged.pop(i, None)
        return MultiIndex._raw(tuple(sorted(merged.items())))

    def contains(self, other: "MultiIndex") -> bool:
        return all(self[i] >= m for i, m in other._entries)

    def scaled(self, c: int) -> "MultiIndex":
        if c < 0:
            raise ValueError(f"negative scale {c}")
        if c == 0 or not self._entries:
            return ZERO
        return MultiIndex._raw(tuple((i, c * m) for i, m in self._entries))

    def factorial(self) -> int:
        """Product of m(i)! over the support."""
        out = 1
        for _, m in self._entries:
            out *= factorial(m)
        return out

    def to_text(self) -> str:
        return ",".join(f"{i}:{m}" for i, m in self._entries)

    @classmethod
    def from_text(cls, text: str) -> "MultiIndex":
        text = text.strip()
        if not text:
            return ZERO
        pairs = []
        for chunk in text.split(","):
            i_text, sep, m_text = chunk.partition(":")
            if not sep:
                raise ValueError(f"bad multi-index entry {chunk!r}")
            pairs.append((int(i_text), int(m_text)))
        return cls(pairs)

    def __repr__(self) -> str:
        return f"MultiIndex({self.to_text()!r})"


ZERO = MultiIndex._raw(())


def delta(a: int) -> MultiIndex:
    """The multi-index with a single 1 at position a."""
    return MultiIndex(((a, 1),))


def multi_binomial(b: MultiIndex, sub: MultiIndex) -> int:
    """Product of C(b(i), sub(i)); sub must be contained in b."""
    if not b.contains(sub):
        raise ValueError(f"{sub} is not contained in {b}")
    return _multi_binomial_unchecked(b, sub)


def _multi_binomial_unchecked(b: MultiIndex, sub: MultiIndex) -> int:
    out = 1
    for i, m in sub:
        out *= binomial(b[i], m)
    return out


def multi_multinomial(b: MultiIndex, *parts: MultiIndex) -> int:
    """Ways to deal b's copies into the given parts plus an implicit rest."""
    out = 1
    remaining = b
    for part in parts:
        out *= multi_binomial(remaining, part)
        remaining = remaining - part
    return out


def splits2(b: MultiIndex) -> Iterator[tuple[MultiIndex, MultiIndex]]:
    """All ordered pairs (L, L') with L + L' = b.

    The first pair yielded is (0, b) and the last is (b, 0); there are
    prod(b(i) + 1) pairs in total.
    """
    entries = b.entries
    positions = [i for i, _ in entries]
    for counts in itertools.product(*(range(m + 1) for _, m in entries)):
        left = MultiIndex._raw(
            tuple((i, c) for i, c in zip(positions, counts) if c)
        )
        yield left, b - left


def splits3(
    b: MultiIndex,
) -> Iterator[tuple[MultiIndex, MultiIndex, MultiIndex]]:
    """All ordered triples (L, e, f) with L + e + f = b."""
    for left, rest in splits2(b):
        for mid, right in splits2(rest):
            yield left, mid, right


def ordered_nonempty_partitions(
    m: MultiIndex, k: int
) -> Iterator[tuple[MultiIndex, ...]]:
    """Ordered k-tuples of nonzero multi-indices summing to m."""
    if k == 0:
        if not m:
            yield ()
        return
    if m.length < k:
        return
    if k == 1:
        yield (m,)
        return
    for first, rest in splits2(m):
        if not first:
            continue
        for tail in ordered_nonempty_partitions(rest, k - 1):
            yield (first,) + tail


def multiset_partitions(
    m: MultiIndex,
) -> Iterator[tuple[tuple[MultiIndex, int], ...]]:
    """Unordered partitions of m into nonzero parts, with repetition counts.

    Each yield is ((part, count), ...) with parts strictly decreasing in the
    canonical order, so every partition shape appears exactly once: all
    copies of a given part are consumed in one step, and the tail only uses
    strictly smaller parts.
    """

    def canonical(
        remaining: MultiIndex, bound: MultiIndex | None
    ) -> Iterator[tuple[tuple[MultiIndex, int], ...]]:
        if not remaining:
            yield ()
            return
        for part, _ in splits2(remaining):
            if not part:
                continue
            if bound is not None and not part < bound:
                continue
            rest = remaining
            count = 0
            while rest.contains(part):
                rest = rest - part
                count += 1
                for tail in canonical(rest, part):
                    yield ((part, count),) + tail

    yield from canonical(m, None)


def subsets(items: tuple) -> Iterator[tuple[tuple, tuple]]:
    """All 2^n ordered complement pairs (I, J) of positions of `items`.

    Yields the picked and left values (not positions), sized small to large
    and lexicographically within a size, so output order is reproducible.
    """
    n = len(items)
    for size in range(n + 1):
        for picked in itertools.combinations(range(n), size):
            chosen = set(picked)
            yield (
                tuple(items[i] for i in picked),
                tuple(items[i] for i in range(n) if i not in chosen),
            )


def multiset_splits(values: tuple) -> Iterator[tuple[tuple, tuple, int]]:
    """Complement pairs of `values` grouped by distinct submultiset.

    Yields (I, J, count) with count = number of position-subsets realizing
    the value-multiset I; summing count over all yields gives 2^len(values).
    Equal values are interchangeable in a symmetric sum, so weighting each
    distinct split by its count reproduces the full subset sum exactly.
    """
    groups: list[tuple[object, int]] = []
    for v in sorted(values):
        if groups and groups[-1][0] == v:
            groups[-1] = (v, groups[-1][1] + 1)
        else:
            groups.append((v, 1))
    for takes in itertools.product(*(range(c + 1) for _, c in groups)):
        picked: list = []
        left: list = []
        count = 1
        for (v, c), t in zip(groups, takes):
            picked.extend([v] * t)
            left.extend([v] * (c - t))
            count *= binomial(c, t)
        yield tuple(picked), tuple(left), count


def indices_of_weight(
    w: int, max_index: int | None = None, max_length: int | None = None
) -> Iterator[MultiIndex]:
    """All multi-indices of weight w, optionally bounded in index and length.

    Weight 0 yields only the zero index.
    """
    if w < 0:
        return
    top = w if max_index is None else min(w, max_index)

    def build(
        remaining: int, largest: int, room: int | None
    ) -> Iterator[tuple[tuple[int, int], ...]]:
        if remaining == 0:
            yield ()
            return
        if room is not None and room == 0:
            return
        for i in range(min(largest, remaining), 0, -1):
            max_copies = remaining // i
            if room is not None:
                max_copies = min(max_copies, room)
            for m in range(max_copies, 0, -1):
                next_room = None if room is None else room - m
                for tail in build(remaining - i * m, i - 1, next_room):
                    yield ((i, m),) + tail

    for entries in build(w, top, max_length):
        yield MultiIndex._raw(tuple(sorted(entries)))
