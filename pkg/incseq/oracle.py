"""Brute-force minimal occurrences, straight from their definition.

Nothing here is meant to be fast. Every embedding of a pattern is
enumerated, the minimality conditions are re-checked on window slices with
``is_subsequence``, and the miners are judged against the result. Keep
windows to a couple of dozen positions.
"""

from __future__ import annotations

from collections.abc import Iterator

from .core import (
    Kind,
    Occurrence,
    Pattern,
    Window,
    extend,
    is_subitemset,
    is_subsequence,
)


def embeddings(pattern: Pattern, window: Window) -> Iterator[Occurrence]:
    """All position tuples mapping each pattern itemset into a window
    itemset, in strictly increasing order."""
    candidates = [
        [pos for pos, element in window.items() if is_subitemset(itemset, element)]
        for itemset in pattern
    ]

    def grow(k: int, after: int, prefix: Occurrence) -> Iterator[Occurrence]:
        if k == len(pattern):
            yield prefix
            return
        for pos in candidates[k]:
            if pos > after:
                yield from grow(k + 1, pos, prefix + (pos,))

    yield from grow(0, window.start - 1, ())


def enumerate_minimal_occurrences(pattern: Pattern, window: Window) -> list[Occurrence]:
    """Minimal occurrences of ``pattern`` in ``window``, sorted.

    An embedding is kept when the pattern does not embed into its interval
    with the first position removed, nor with the last position removed.
    Embeddings sharing an interval collapse onto the lexicographically
    smallest tuple.
    """
    if len(pattern) > len(window):
        return []
    minimal: dict[tuple[int, int], bool] = {}
    chosen: dict[tuple[int, int], Occurrence] = {}
    for occurrence in embeddings(pattern, window):
        first, last = occurrence[0], occurrence[-1]
        key = (first, last)
        if key not in minimal:
            minimal[key] = not (
                is_subsequence(pattern, window.slice(first + 1, last))
                or is_subsequence(pattern, window.slice(first, last - 1))
            )
        if minimal[key] and (key not in chosen or occurrence < chosen[key]):
            chosen[key] = occurrence
    return sorted(chosen.values())


def support(pattern: Pattern, window: Window) -> int:
    return len(enumerate_minimal_occurrences(pattern, window))


def _children(pattern: Pattern, vocabulary: list[int]) -> Iterator[Pattern]:
    last = pattern[-1][-1]
    for item in vocabulary:
        if item > last:
            yield extend(pattern, item, Kind.COMPOSITION)
    for item in vocabulary:
        yield extend(pattern, item, Kind.SUCCESSION)


def mine_oracle(window: Window, sigma: int) -> dict[Pattern, list[Occurrence]]:
    """Every pattern with at least ``sigma`` minimal occurrences.

    Breadth-first growth along the canonical parent edges; a pattern below
    the threshold is not grown further, since support can only shrink along
    an edge.
    """
    if sigma < 1:
        raise ValueError(f"sigma must be at least 1, got {sigma}")
    vocabulary = window.vocabulary()
    frequent: dict[Pattern, list[Occurrence]] = {}
    frontier: list[Pattern] = [((item,),) for item in vocabulary]
    while frontier:
        grown = []
        for pattern in frontier:
            occurrences = enumerate_minimal_occurrences(pattern, window)
            if len(occurrences) >= sigma:
                frequent[pattern] = occurrences
                grown.extend(_children(pattern, vocabulary))
        frontier = grown
    return frequent


def mine_exhaustive(window: Window, sigma: int) -> dict[Pattern, list[Occurrence]]:
    """Same answer as :func:`mine_oracle`, without threshold pruning.

    Every pattern that embeds into the window at all is visited; only
    patterns that do not embed anywhere stop the search.
    """
    vocabulary = window.vocabulary()
    frequent: dict[Pattern, list[Occurrence]] = {}
    stack: list[Pattern] = [((item,),) for item in vocabulary]
    while stack:
        pattern = stack.pop()
        if not is_subsequence(pattern, window.itemsets):
            continue
        occurrences = enumerate_minimal_occurrences(pattern, window)
        if len(occurrences) >= sigma:
            frequent[pattern] = occurrences
        stack.extend(_children(pattern, vocabulary))
    return frequent
