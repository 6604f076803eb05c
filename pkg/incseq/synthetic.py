from __future__ import annotations

import string
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from .core import Itemset
from .streams import ItemDictionary, StreamSource


@dataclass(frozen=True)
class GenConfig:
    vocab_size: int = 40
    item_probability: float = 0.03
    length: int = 80_000
    seed: int = 42

    def __post_init__(self):
        if self.vocab_size < 1:
            raise ValueError(f"vocab_size must be at least 1, got {self.vocab_size}")
        if not 0.0 <= self.item_probability <= 1.0:
            raise ValueError(
                f"item_probability must be within [0, 1], got {self.item_probability}"
            )
        if self.length < 0:
            raise ValueError(f"length must not be negative, got {self.length}")


def item_symbol(item: int, vocab_size: int) -> str:
    """Name of a generated item; symbol order equals id order."""
    if vocab_size <= len(string.ascii_lowercase):
        return string.ascii_lowercase[item]
    width = max(2, len(str(vocab_size - 1)))
    return f"e{item:0{width}d}"


class StreamGenerator:
    """Independent Bernoulli draws per item and position.

    Positions are drawn in chunks of ``chunk_size`` rows at a time; the
    stream for a given seed does not depend on how far it is consumed.
    """

    def __init__(self, cfg: GenConfig, chunk_size: int = 4096):
        self.cfg = cfg
        self.chunk_size = chunk_size
        self.rng = np.random.default_rng(cfg.seed)

    def dictionary(self) -> ItemDictionary:
        return ItemDictionary.from_symbols(
            item_symbol(i, self.cfg.vocab_size) for i in range(self.cfg.vocab_size)
        )

    def generate_matrix(self, num_rows: int) -> np.ndarray:
        """Boolean presence matrix, one row per position."""
        return self.rng.random((num_rows, self.cfg.vocab_size)) < self.cfg.item_probability

    def itemsets(self) -> Iterator[Itemset]:
        remaining = self.cfg.length
        while remaining > 0:
            rows = min(self.chunk_size, remaining)
            matrix = self.generate_matrix(rows)
            for row in matrix:
                yield tuple(int(i) for i in np.flatnonzero(row))
            remaining -= rows


def generate_synthetic(cfg: GenConfig) -> StreamSource:
    gen = StreamGenerator(cfg)
    return StreamSource(gen.itemsets(), gen.dictionary())
