"""Itemset streams: the symbol dictionary, the line-based text format and
numeric series input for discretisation.

Text format: one itemset per line, items are whitespace-separated tokens,
lines starting with ``#`` are comments and a blank line is an empty itemset.
"""

from __future__ import annotations

import logging
import re
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from typing import IO, Optional

import numpy as np

from .core import Item, Itemset, make_itemset

logger = logging.getLogger(__name__)

# characters used by the pattern dump format are not allowed in symbols
_TOKEN = re.compile(r"^[^\s#(),;]+$")


class StreamParseError(ValueError):
    def __init__(self, lineno: int, token: str):
        self.lineno = lineno
        self.token = token
        super().__init__(f"line {lineno}: malformed token {token!r}")


class ItemDictionary:
    """Two-way mapping between item symbols and dense integer ids.

    Ids are handed out in order of first appearance, so the item order is
    the order in which symbols were first seen unless the dictionary was
    seeded with :meth:`from_symbols`.
    """

    def __init__(self):
        self._ids: dict[str, Item] = {}
        self._symbols: list[str] = []

    @classmethod
    def from_symbols(cls, symbols: Iterable[str]) -> "ItemDictionary":
        dictionary = cls()
        for symbol in symbols:
            dictionary.encode(symbol)
        return dictionary

    def encode(self, symbol: str) -> Item:
        item = self._ids.get(symbol)
        if item is None:
            item = len(self._symbols)
            self._ids[symbol] = item
            self._symbols.append(symbol)
        return item

    def decode(self, item: Item) -> str:
        return self._symbols[item]

    def symbols(self) -> list[str]:
        return list(self._symbols)

    def __contains__(self, symbol: object) -> bool:
        return symbol in self._ids

    def __len__(self) -> int:
        return len(self._symbols)


@dataclass
class StreamSource:
    """Itemsets in stream order, together with the dictionary naming their
    items. Single pass: iterating consumes the stream."""

    itemsets: Iterator[Itemset]
    dictionary: ItemDictionary = field(default_factory=ItemDictionary)

    def __iter__(self) -> Iterator[Itemset]:
        return iter(self.itemsets)


def _parse_lines(lines: Iterable[str], dictionary: ItemDictionary) -> Iterator[Itemset]:
    for lineno, line in enumerate(lines, 1):
        stripped = line.strip()
        if stripped.startswith("#"):
            continue
        tokens = stripped.split()
        for token in tokens:
            if not _TOKEN.match(token):
                raise StreamParseError(lineno, token)
        yield make_itemset(dictionary.encode(token) for token in tokens)


def read_itemset_stream(
    lines: Iterable[str], dictionary: Optional[ItemDictionary] = None
) -> StreamSource:
    """Parse the text format lazily; parse errors surface while iterating."""
    if dictionary is None:
        dictionary = ItemDictionary()
    return StreamSource(_parse_lines(lines, dictionary), dictionary)


def format_stream_line(itemset: Itemset, dictionary: ItemDictionary) -> str:
    return " ".join(dictionary.decode(item) for item in itemset)


def write_itemset_stream(
    itemsets: Iterable[Itemset], dictionary: ItemDictionary, out: IO[str]
) -> int:
    """Write itemsets in the text format; returns the number written."""
    count = 0
    for itemset in itemsets:
        out.write(format_stream_line(itemset, dictionary))
        out.write("\n")
        count += 1
    return count


def read_numeric_series(source) -> np.ndarray:
    """One number per line, ``#`` comments allowed."""
    series = np.loadtxt(source, dtype=np.float64, comments="#", ndmin=1)
    logger.debug("read %d samples", len(series))
    return series
