"""Numeric series to symbol streams: z-normalisation, piecewise aggregate
approximation and Gaussian equiprobable breakpoints."""

from __future__ import annotations

import logging
import string
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .streams import ItemDictionary, StreamSource

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SaxConfig:
    alphabet_size: int = 14
    paa_size: int = 24
    epsilon: float = 1e-6

    def __post_init__(self):
        if self.alphabet_size < 2:
            raise ValueError(f"alphabet_size must be at least 2, got {self.alphabet_size}")
        if self.paa_size < 1:
            raise ValueError(f"paa_size must be at least 1, got {self.paa_size}")


def znormalize(series: np.ndarray, epsilon: float = 1e-6) -> np.ndarray:
    """Zero mean, unit deviation; all zeros when the deviation is below ``epsilon``."""
    series = np.asarray(series, dtype=np.float64)
    std = series.std()
    if std < epsilon:
        return np.zeros_like(series)
    return (series - series.mean()) / std


def paa(series: np.ndarray, paa_size: int) -> np.ndarray:
    """Means of consecutive blocks of ``paa_size`` samples; a trailing partial
    block is dropped."""
    blocks = len(series) // paa_size
    return np.asarray(series[: blocks * paa_size]).reshape(blocks, paa_size).mean(axis=1)


def breakpoints(alphabet_size: int) -> np.ndarray:
    """Standard normal quantiles at k / alphabet_size, k = 1 .. alphabet_size - 1."""
    return norm.ppf(np.arange(1, alphabet_size) / alphabet_size)


def symbolize(means: np.ndarray, alphabet_size: int) -> np.ndarray:
    """Symbol index of each value; a value on a breakpoint goes to the upper
    symbol."""
    return np.digitize(means, breakpoints(alphabet_size))


def sax_symbol(index: int, alphabet_size: int) -> str:
    if alphabet_size <= len(string.ascii_lowercase):
        return string.ascii_lowercase[index]
    return f"s{index:02d}"


def sax_discretize(series: np.ndarray, cfg: SaxConfig = SaxConfig()) -> StreamSource:
    """One singleton itemset per PAA block."""
    series = np.asarray(series, dtype=np.float64)
    if len(series) < cfg.paa_size:
        raise ValueError(
            f"series has {len(series)} samples, fewer than one PAA block of {cfg.paa_size}"
        )
    symbols = symbolize(paa(znormalize(series, cfg.epsilon), cfg.paa_size), cfg.alphabet_size)
    logger.info(
        "discretised %d samples into %d symbols (alphabet %d)",
        len(series),
        len(symbols),
        cfg.alphabet_size,
    )
    dictionary = ItemDictionary.from_symbols(
        sax_symbol(i, cfg.alphabet_size) for i in range(cfg.alphabet_size)
    )
    itemsets = ((int(symbol),) for symbol in symbols)
    return StreamSource(itemsets, dictionary)
