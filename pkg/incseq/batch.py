"""From-scratch mining of one window, the baseline the incremental miner is
measured against.

Occurrence lists grow from the parent's list: each parent occurrence anchors
the greedy leftmost embedding of the child starting at the same position,
and the candidates are filtered down to an antichain of intervals. Every
minimal occurrence of a child starts where a minimal occurrence of its
parent starts, so no candidate is missed.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable, Sequence
from typing import Optional, Protocol

from .core import (
    Extension,
    Item,
    Itemset,
    Kind,
    Occurrence,
    OccurrenceList,
    Window,
)
from .tree import PatternNode, PatternTree

logger = logging.getLogger(__name__)


class WindowView(Protocol):
    """Read access the growth scan needs; ``Window`` and the incremental
    window buffer both provide it."""

    @property
    def start(self) -> int: ...

    @property
    def end(self) -> int: ...

    def vocabulary(self) -> list[Item]: ...

    def positions_of(self, item: Item) -> Sequence[int]: ...

    def next_position(self, item: Item, after: int) -> Optional[int]: ...

    def contains(self, pos: int, itemset: Iterable[Item]) -> bool: ...


def _first_match(
    window: WindowView, item: Item, rest: Itemset, after: int, limit: int
) -> Optional[int]:
    """First position in ``(after, limit]`` holding ``item`` and all of ``rest``."""
    pos = window.next_position(item, after)
    while pos is not None and pos <= limit:
        if not rest or window.contains(pos, rest):
            return pos
        pos = window.next_position(item, pos)
    return None


def occurrences_by_growth(
    parent_occurrences: Sequence[Occurrence],
    extension: Extension,
    window: WindowView,
    last_itemset: Itemset = (),
) -> OccurrenceList:
    """Minimal occurrences of the parent pattern extended by ``extension``.

    ``last_itemset`` is the parent's last itemset; it is empty for the root,
    whose succession children occur wherever their item does.
    """
    item, kind = extension
    result = OccurrenceList()
    if not last_itemset:
        if kind is Kind.COMPOSITION:
            raise ValueError("the root has no composition children")
        for pos in window.positions_of(item):
            result.append((pos,))
        return result

    n = len(parent_occurrences)
    for k, occurrence in enumerate(parent_occurrences):
        if kind is Kind.COMPOSITION and len(occurrence) == 1:
            pos = occurrence[0]
            if window.contains(pos, (item,)):
                result.append(occurrence)
            continue
        if kind is Kind.SUCCESSION:
            anchor = occurrence[-1]
            limit = parent_occurrences[k + 1][-1] if k + 1 < n else window.end
            pos = _first_match(window, item, (), anchor, limit)
            if pos is not None:
                result.append(occurrence + (pos,))
        else:
            anchor = occurrence[-2]
            limit = parent_occurrences[k + 1][-2] if k + 1 < n else window.end
            pos = _first_match(window, item, last_itemset, anchor, limit)
            if pos is not None:
                result.append(occurrence[:-1] + (pos,))
    return result


def expand(
    tree: PatternTree,
    node: PatternNode,
    last_itemset: Itemset,
    window: WindowView,
    vocabulary: Sequence[Item],
) -> list[tuple[PatternNode, Itemset]]:
    """Attach every frequent child of a frequent node; returns the children."""
    grown = []
    candidates = [
        Extension(item, Kind.COMPOSITION) for item in vocabulary if item > last_itemset[-1]
    ]
    candidates += [Extension(item, Kind.SUCCESSION) for item in vocabulary]
    for extension in candidates:
        occurrences = occurrences_by_growth(node.occurrences, extension, window, last_itemset)
        if len(occurrences) >= tree.sigma:
            child = tree.add_child(node, extension.item, extension.kind, occurrences)
            if extension.kind is Kind.SUCCESSION:
                grown.append((child, (extension.item,)))
            else:
                grown.append((child, last_itemset + (extension.item,)))
    return grown


def mine_batch(window: Window, sigma: int) -> PatternTree:
    """The tree of all patterns with at least ``sigma`` minimal occurrences."""
    tree = PatternTree(sigma)
    stack: list[tuple[PatternNode, Itemset]] = []
    vocabulary = window.vocabulary()
    for item in vocabulary:
        occurrences = occurrences_by_growth((), Extension(item, Kind.SUCCESSION), window)
        if len(occurrences) >= sigma:
            child = tree.add_child(tree.root, item, Kind.SUCCESSION, occurrences)
            stack.append((child, (item,)))
    while stack:
        node, last_itemset = stack.pop()
        stack.extend(expand(tree, node, last_itemset, window, vocabulary))
    logger.debug(
        "batch window %d-%d: %d nodes, %d occurrences",
        window.start,
        window.end,
        tree.node_count,
        tree.occurrence_count,
    )
    return tree


class BatchMiner:
    """Keeps the last ``window_size`` itemsets and re-mines them on every push."""

    mode = "batch"

    def __init__(self, window_size: int, sigma: int):
        if window_size < 1:
            raise ValueError(f"window_size must be at least 1, got {window_size}")
        self.window_size = window_size
        self.sigma = sigma
        self._buffer: deque[Itemset] = deque()
        self._start = 1
        self.tree = PatternTree(sigma)

    @property
    def window(self) -> Window:
        return Window(self._start, tuple(self._buffer))

    @property
    def is_warm(self) -> bool:
        return len(self._buffer) == self.window_size

    def push(self, itemset: Itemset) -> PatternTree:
        self._buffer.append(itemset)
        if len(self._buffer) > self.window_size:
            self._buffer.popleft()
            self._start += 1
        self.tree = mine_batch(self.window, self.sigma)
        return self.tree
