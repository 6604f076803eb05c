"""Sliding-window maintenance of the frequent pattern tree.

Each new itemset moves the window one position. The tree of the old window
is turned into the tree of the new one in four steps:

1. delete: occurrences starting at the oldest position go away, nodes that
   can still reach the threshold with the new itemset are flagged quasi and
   kept, the rest of the infrequent nodes are pruned;
2. merge: the tree of sub-itemsets of the new itemset is grafted under the
   root and under every frequent node, each copy prefixed with that node's
   last occurrence;
3. complete: nodes introduced by the merge get their full occurrence list
   rebuilt from their parent's list;
4. prune: nodes below the threshold are removed.

Occurrence lists of nodes that were already in the tree stay exact through
the whole update: a window slide removes at most one minimal occurrence of a
pattern (the one starting at the oldest position) and adds at most one (the
one ending at the new position).
"""

from __future__ import annotations

import logging
from bisect import bisect_right
from collections import deque
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from itertools import chain
from typing import Optional

from .batch import occurrences_by_growth
from .core import (
    Extension,
    Item,
    Itemset,
    Kind,
    Occurrence,
    OccurrenceList,
    Window,
    is_subitemset,
)
from .tree import PatternNode, PatternTree, child_last_itemset

logger = logging.getLogger(__name__)

StepObserver = Callable[[str, "MinerState"], None]


class WindowBuffer:
    """Mutable window with a per-item index of positions.

    Pushing and popping cost O(size of the itemset); position lookups are
    binary searches in the index.
    """

    def __init__(self, start: int = 1):
        self.start = start
        self._itemsets: deque[Itemset] = deque()
        self._sets: deque[frozenset] = deque()
        self._index: dict[Item, list[int]] = {}
        self._heads: dict[Item, int] = {}

    def __len__(self) -> int:
        return len(self._itemsets)

    @property
    def end(self) -> int:
        return self.start + len(self._itemsets) - 1

    def append(self, itemset: Itemset) -> int:
        """Add the newest itemset; returns its absolute position."""
        pos = self.end + 1
        self._itemsets.append(itemset)
        self._sets.append(frozenset(itemset))
        for item in itemset:
            if item not in self._index:
                self._index[item] = []
                self._heads[item] = 0
            self._index[item].append(pos)
        return pos

    def popleft(self) -> Itemset:
        itemset = self._itemsets.popleft()
        self._sets.popleft()
        for item in itemset:
            positions = self._index[item]
            head = self._heads[item] + 1
            if head == len(positions):
                del self._index[item]
                del self._heads[item]
            elif head > 32 and 2 * head > len(positions):
                del positions[:head]
                self._heads[item] = 0
            else:
                self._heads[item] = head
        self.start += 1
        return itemset

    def itemset_at(self, pos: int) -> Itemset:
        return self._itemsets[pos - self.start]

    def items(self) -> Iterator[tuple[int, Itemset]]:
        return enumerate(self._itemsets, self.start)

    def vocabulary(self) -> list[Item]:
        return sorted(self._index)

    def positions_of(self, item: Item) -> Sequence[int]:
        positions = self._index.get(item)
        if positions is None:
            return ()
        return positions[self._heads[item]:]

    def next_position(self, item: Item, after: int) -> Optional[int]:
        positions = self._index.get(item)
        if positions is None:
            return None
        i = bisect_right(positions, after, self._heads[item])
        return positions[i] if i < len(positions) else None

    def contains(self, pos: int, itemset: Iterable[Item]) -> bool:
        return self._sets[pos - self.start].issuperset(itemset)

    def snapshot(self) -> Window:
        return Window(self.start, tuple(self._itemsets))


@dataclass
class MinerState:
    window_size: int
    sigma: int
    tree: PatternTree = field(init=False)
    window: WindowBuffer = field(init=False)
    # graft roots waiting for completion, with their parent's last itemset
    pending: list[tuple[PatternNode, Itemset]] = field(init=False, default_factory=list)

    def __post_init__(self):
        if self.window_size < 1:
            raise ValueError(f"window_size must be at least 1, got {self.window_size}")
        self.tree = PatternTree(self.sigma)
        self.window = WindowBuffer()

    @property
    def is_full(self) -> bool:
        return len(self.window) >= self.window_size


def build_itemset_tree(incoming: Itemset, pos: int) -> PatternTree:
    """Tree of all non-empty sub-itemsets of ``incoming``, each occurring
    once at ``pos``.

    Singletons hang under the root by succession; a larger sub-itemset is the
    composition child of the sub-itemset without its greatest item.
    """
    if not incoming:
        raise ValueError("cannot build the itemset tree of an empty itemset")
    tree = PatternTree(1)
    stack: list[tuple[PatternNode, int]] = []
    for i, item in enumerate(incoming):
        node = tree.add_child(tree.root, item, Kind.SUCCESSION, OccurrenceList([(pos,)]))
        stack.append((node, i))
    while stack:
        node, i = stack.pop()
        for j in range(i + 1, len(incoming)):
            child = tree.add_child(node, incoming[j], Kind.COMPOSITION, OccurrenceList([(pos,)]))
            stack.append((child, j))
    return tree


def delete_oldest(state: MinerState, incoming: Itemset) -> None:
    """Forget the oldest window position and flag quasi-frequent nodes."""
    tree = state.tree
    oldest = state.window.start
    dropped = tree.drop_occurrences_starting_at(oldest)
    target = state.sigma - 1
    marked = 0
    for node, last in tree.walk():
        if node.support == target and is_subitemset(last, incoming):
            node.quasi = True
            marked += 1
    tree.prune(retain_quasi=True)
    state.window.popleft()
    logger.debug(
        "deleted position %d: %d occurrences dropped, %d quasi nodes", oldest, dropped, marked
    )


def rec_merge(
    state: MinerState,
    n: PatternNode,
    N: PatternNode,
    N_last: Itemset,
    prefix: Occurrence,
) -> None:
    """Merge itemset-tree node ``n``, prefixed by ``prefix``, into the
    pattern-tree node ``N`` representing the same pattern."""
    tree = state.tree
    for occurrence in n.occurrences:
        if tree.append_occurrence(N, prefix + occurrence) and N.quasi:
            N.quasi = False
    for s_n in n.ordered_children():
        s_N = N.child(s_n.item, s_n.kind)
        if s_N is not None:
            rec_merge(state, s_n, s_N, child_last_itemset(N_last, s_N), prefix)
        else:
            graft = tree.graft(N, s_n, lambda occurrence: prefix + occurrence)
            state.pending.append((graft, N_last))


def merge_roots(state: MinerState) -> list[tuple[PatternNode, Itemset, Occurrence]]:
    """The root and every frequent, non-quasi node, with its last itemset and
    last occurrence. Placeholders kept above quasi nodes are never roots."""
    roots: list[tuple[PatternNode, Itemset, Occurrence]] = [(state.tree.root, (), ())]
    for node, last in state.tree.walk():
        if not node.quasi and node.support >= state.sigma:
            roots.append((node, last, node.occurrences.last()))
    return roots


def merging(state: MinerState, itemset_tree: PatternTree) -> None:
    """Merge the itemset tree under every node of :func:`merge_roots`.

    Prefix occurrences are taken before anything is merged, so a node that
    absorbs the new position is still prefixed with its previous last
    occurrence.
    """
    roots = merge_roots(state)
    for node, last, prefix in roots:
        rec_merge(state, itemset_tree.root, node, last, prefix)
    logger.debug("merged under %d roots, %d new subtrees", len(roots), len(state.pending))


def completion(state: MinerState) -> None:
    """Rebuild the occurrence lists of nodes introduced by the merge.

    Runs top-down from each graft, so a node's parent is always complete when
    its own list is grown. Subtrees under a node that ends below the
    threshold are left to the final prune.
    """
    tree = state.tree
    window = state.window
    sigma = state.sigma
    completed = 0
    stack: list[tuple[PatternNode, Itemset]] = []
    for graft, parent_last in state.pending:
        stack.append((graft, parent_last))
        while stack:
            node, parent_last = stack.pop()
            parent = node.parent
            if not parent.is_root and parent.support < sigma:
                continue
            grown = occurrences_by_growth(
                parent.occurrences, Extension(node.item, node.kind), window, parent_last
            )
            merged = sorted(
                chain(grown, node.occurrences), key=lambda occ: (occ[0], occ[-1])
            )
            tree.replace_occurrences(node, OccurrenceList(merged))
            node.needs_completion = False
            completed += 1
            last = child_last_itemset(parent_last, node)
            stack.extend((child, last) for child in node.ordered_children())
    state.pending.clear()
    logger.debug("completed %d nodes", completed)


def _add(state: MinerState, incoming: Itemset, on_step: Optional[StepObserver]) -> None:
    pos = state.window.append(incoming)
    if incoming:
        merging(state, build_itemset_tree(incoming, pos))
        if on_step is not None:
            on_step("merge", state)
        completion(state)
        if on_step is not None:
            on_step("complete", state)
    state.tree.prune()
    if on_step is not None:
        on_step("prune", state)
    logger.debug(
        "window %d-%d: %d nodes, %d occurrences",
        state.window.start,
        state.window.end,
        state.tree.node_count,
        state.tree.occurrence_count,
    )


def warmup_append(
    state: MinerState, incoming: Itemset, on_step: Optional[StepObserver] = None
) -> MinerState:
    """Add an itemset while the window is still filling up."""
    if state.is_full:
        raise ValueError("window is full, slide it instead")
    _add(state, incoming, on_step)
    return state


def slide(
    state: MinerState, incoming: Itemset, on_step: Optional[StepObserver] = None
) -> MinerState:
    """Move the window one itemset forward."""
    if state.is_full:
        delete_oldest(state, incoming)
        if on_step is not None:
            on_step("delete", state)
    _add(state, incoming, on_step)
    return state


class IncrementalMiner(MinerState):
    """Push-driven miner; the instance is the state the slide steps work on.

    ``window`` is the live :class:`WindowBuffer`; take ``window.snapshot()``
    for an immutable copy.
    """

    mode = "incremental"

    @property
    def is_warm(self) -> bool:
        return self.is_full

    def push(self, itemset: Itemset) -> PatternTree:
        if self.is_full:
            slide(self, itemset)
        else:
            warmup_append(self, itemset)
        return self.tree
