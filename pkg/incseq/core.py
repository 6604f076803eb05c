"""Items, itemsets, patterns and windows, with the containment relations
the miners are built on.

Items are dense integer ids; the total order on items is the order on ids.
An itemset is a sorted tuple of distinct ids, a pattern is a tuple of
non-empty itemsets, and an occurrence is a strictly increasing tuple of
absolute 1-based stream positions, one per pattern itemset.
"""

from __future__ import annotations

import enum
from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

Item = int
Itemset = tuple[int, ...]
Pattern = tuple[Itemset, ...]
Occurrence = tuple[int, ...]


class OrderingError(ValueError):
    """An itemset or pattern violates the item order."""


class OccurrenceOrderError(ValueError):
    """An occurrence was appended before an already stored one."""


class Kind(enum.Enum):
    SUCCESSION = "s"
    COMPOSITION = "c"


class Extension(NamedTuple):
    item: Item
    kind: Kind


def make_itemset(items: Iterable[Item]) -> Itemset:
    return tuple(sorted(set(items)))


def make_pattern(itemsets: Iterable[Iterable[Item]]) -> Pattern:
    """Build a pattern, rejecting empty itemsets."""
    pattern = tuple(make_itemset(itemset) for itemset in itemsets)
    if not pattern:
        raise OrderingError("a pattern needs at least one itemset")
    if any(not itemset for itemset in pattern):
        raise OrderingError(f"empty itemset in pattern {pattern}")
    return pattern


def pattern_size(pattern: Pattern) -> int:
    """Total item count of a pattern."""
    return sum(len(itemset) for itemset in pattern)


def is_subitemset(beta: Sequence[Item], alpha: Sequence[Item]) -> bool:
    """Whether every item of ``beta`` occurs in ``alpha`` (both sorted)."""
    if len(beta) > len(alpha):
        return False
    j = 0
    n = len(alpha)
    for item in beta:
        while j < n and alpha[j] < item:
            j += 1
        if j == n or alpha[j] != item:
            return False
        j += 1
    return True


def is_subsequence(pattern: Sequence[Sequence[Item]], sequence: Iterable[Sequence[Item]]) -> bool:
    """Whether ``pattern`` embeds into ``sequence`` with increasing indices.

    A greedy left-to-right scan is exact: matching each pattern itemset at the
    earliest possible element never rules out a later match.
    """
    if not pattern:
        return True
    k = 0
    for element in sequence:
        if is_subitemset(pattern[k], element):
            k += 1
            if k == len(pattern):
                return True
    return False


def extend(pattern: Pattern, item: Item, kind: Kind) -> Pattern:
    """Child pattern along a succession or composition edge."""
    if kind is Kind.SUCCESSION:
        return pattern + ((item,),)
    if not pattern:
        raise OrderingError("composition needs a non-empty pattern")
    last = pattern[-1]
    if item <= last[-1]:
        raise OrderingError(
            f"cannot compose item {item} into itemset {last}: "
            f"item must be greater than {last[-1]}"
        )
    return pattern[:-1] + (last + (item,),)


def parent_of(pattern: Pattern) -> tuple[Pattern, Extension]:
    """Canonical decomposition: the parent pattern and the edge leading back."""
    if not pattern:
        raise ValueError("the empty pattern has no parent")
    last = pattern[-1]
    if len(last) > 1:
        return pattern[:-1] + (last[:-1],), Extension(last[-1], Kind.COMPOSITION)
    return pattern[:-1], Extension(last[0], Kind.SUCCESSION)


def derivation(pattern: Pattern) -> list[Extension]:
    """Edges from the empty pattern down to ``pattern``, root first."""
    chain = []
    while pattern:
        pattern, edge = parent_of(pattern)
        chain.append(edge)
    chain.reverse()
    return chain


def occurrence_interval(occurrence: Occurrence) -> tuple[int, int]:
    return occurrence[0], occurrence[-1]


@dataclass(frozen=True)
class Window:
    """An immutable slice of the stream; element k sits at ``start + k``."""

    start: int
    itemsets: tuple[Itemset, ...]

    @classmethod
    def of(cls, itemsets: Iterable[Iterable[Item]], start: int = 1) -> "Window":
        return cls(start, tuple(make_itemset(itemset) for itemset in itemsets))

    def __len__(self) -> int:
        return len(self.itemsets)

    @property
    def end(self) -> int:
        """Absolute position of the newest element (``start - 1`` when empty)."""
        return self.start + len(self.itemsets) - 1

    def itemset_at(self, pos: int) -> Itemset:
        return self.itemsets[pos - self.start]

    def items(self) -> Iterator[tuple[int, Itemset]]:
        """(position, itemset) pairs in stream order."""
        return enumerate(self.itemsets, self.start)

    def slice(self, first: int, last: int) -> tuple[Itemset, ...]:
        """Elements at absolute positions ``first..last`` inclusive."""
        lo = max(first, self.start) - self.start
        hi = min(last, self.end) - self.start + 1
        if hi <= lo:
            return ()
        return self.itemsets[lo:hi]

    @cached_property
    def _index(self) -> dict[Item, list[int]]:
        index: dict[Item, list[int]] = {}
        for pos, itemset in self.items():
            for item in itemset:
                index.setdefault(item, []).append(pos)
        return index

    @cached_property
    def _sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(itemset) for itemset in self.itemsets)

    def vocabulary(self) -> list[Item]:
        """Distinct items present in the window, ascending."""
        return sorted(self._index)

    def positions_of(self, item: Item) -> Sequence[int]:
        return self._index.get(item, ())

    def next_position(self, item: Item, after: int) -> Optional[int]:
        """First position greater than ``after`` whose itemset holds ``item``."""
        positions = self._index.get(item)
        if not positions:
            return None
        i = bisect_right(positions, after)
        return positions[i] if i < len(positions) else None

    def contains(self, pos: int, itemset: Iterable[Item]) -> bool:
        return self._sets[pos - self.start].issuperset(itemset)


class OccurrenceList:
    """Minimal occurrences of one pattern, kept as an antichain of intervals.

    First positions and last positions are both strictly increasing, which is
    the same as saying no stored interval contains another.
    """

    __slots__ = ("_occurrences",)

    def __init__(self, occurrences: Iterable[Occurrence] = ()):
        self._occurrences: list[Occurrence] = []
        for occurrence in occurrences:
            self.append(occurrence)

    def append(self, occurrence: Occurrence) -> bool:
        """Insert an occurrence arriving in first-position order.

        Rejects the occurrence when a stored interval lies inside its
        interval and evicts stored intervals that strictly contain it.
        Returns whether the occurrence was kept.
        """
        occurrences = self._occurrences
        first, last = occurrence[0], occurrence[-1]
        if occurrences:
            tail = occurrences[-1]
            if first < tail[0]:
                raise OccurrenceOrderError(
                    f"occurrence {occurrence} starts before stored occurrence {tail}"
                )
            if tail[0] == first and tail[-1] <= last:
                return False
            while occurrences and occurrences[-1][-1] >= last:
                occurrences.pop()
        occurrences.append(occurrence)
        return True

    def drop_starting_at(self, pos: int) -> bool:
        """Remove the occurrence starting at ``pos``; only the head can."""
        occurrences = self._occurrences
        if occurrences and occurrences[0][0] == pos:
            del occurrences[0]
            return True
        return False

    def last(self) -> Optional[Occurrence]:
        return self._occurrences[-1] if self._occurrences else None

    def as_tuple(self) -> tuple[Occurrence, ...]:
        return tuple(self._occurrences)

    def copy(self) -> "OccurrenceList":
        clone = OccurrenceList()
        clone._occurrences = list(self._occurrences)
        return clone

    def __len__(self) -> int:
        return len(self._occurrences)

    def __iter__(self) -> Iterator[Occurrence]:
        return iter(self._occurrences)

    def __getitem__(self, index: int) -> Occurrence:
        return self._occurrences[index]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, OccurrenceList):
            return self._occurrences == other._occurrences
        if isinstance(other, (list, tuple)):
            return self._occurrences == list(other)
        return NotImplemented

    def __repr__(self) -> str:
        return f"OccurrenceList({self._occurrences!r})"
