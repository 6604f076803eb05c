"""Prefix tree of patterns with their minimal-occurrence lists.

A node stores the single edge (item and kind) leading to it from its
parent; its pattern is rebuilt by walking the edges from the root. Children
hang off two dicts, one per edge kind, and are always visited in ascending
item order.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator
from typing import Optional

from .core import (
    Extension,
    Itemset,
    Kind,
    Occurrence,
    OccurrenceList,
    OrderingError,
    Pattern,
    derivation,
    extend,
)

logger = logging.getLogger(__name__)


class PatternNode:
    __slots__ = (
        "item",
        "kind",
        "parent",
        "occurrences",
        "s_children",
        "c_children",
        "quasi",
        "needs_completion",
    )

    def __init__(
        self,
        item: Optional[int] = None,
        kind: Optional[Kind] = None,
        parent: Optional["PatternNode"] = None,
    ):
        self.item = item
        self.kind = kind
        self.parent = parent
        self.occurrences = OccurrenceList()
        self.s_children: dict[int, PatternNode] = {}
        self.c_children: dict[int, PatternNode] = {}
        self.quasi = False
        self.needs_completion = False

    @property
    def is_root(self) -> bool:
        return self.parent is None

    @property
    def support(self) -> int:
        return len(self.occurrences)

    def children(self, kind: Kind) -> dict[int, "PatternNode"]:
        return self.s_children if kind is Kind.SUCCESSION else self.c_children

    def child(self, item: int, kind: Kind) -> Optional["PatternNode"]:
        return self.children(kind).get(item)

    def ordered_children(self) -> Iterator["PatternNode"]:
        """Succession children, then composition children, items ascending."""
        for item in sorted(self.s_children):
            yield self.s_children[item]
        for item in sorted(self.c_children):
            yield self.c_children[item]

    def pattern(self) -> Pattern:
        edges = []
        node = self
        while node.parent is not None:
            edges.append(Extension(node.item, node.kind))
            node = node.parent
        pattern: Pattern = ()
        for item, kind in reversed(edges):
            pattern = extend(pattern, item, kind)
        return pattern

    def __repr__(self) -> str:
        flags = "*" if self.quasi else ""
        return f"PatternNode({self.pattern()}{flags}, {self.occurrences.as_tuple()})"


def child_last_itemset(parent_last: Itemset, node: PatternNode) -> Itemset:
    if node.kind is Kind.SUCCESSION:
        return (node.item,)
    return parent_last + (node.item,)


class PatternTree:
    """Tree of patterns for one threshold, with node and occurrence counts
    kept up to date by every mutation."""

    def __init__(self, sigma: int):
        if sigma < 1:
            raise ValueError(f"sigma must be at least 1, got {sigma}")
        self.sigma = sigma
        self.root = PatternNode()
        self.node_count = 0
        self.occurrence_count = 0

    def __len__(self) -> int:
        return self.node_count

    def add_child(
        self,
        parent: PatternNode,
        item: int,
        kind: Kind,
        occurrences: Optional[OccurrenceList] = None,
    ) -> PatternNode:
        children = parent.children(kind)
        if item in children:
            raise ValueError(f"{parent!r} already has a {kind.name.lower()} child {item}")
        # the edge item into a node is always the greatest item of its last itemset
        if kind is Kind.COMPOSITION and (parent.is_root or item <= parent.item):
            raise OrderingError(f"cannot compose item {item} under {parent!r}")
        node = PatternNode(item, kind, parent)
        if occurrences is not None:
            node.occurrences = occurrences
            self.occurrence_count += len(occurrences)
        children[item] = node
        self.node_count += 1
        return node

    def insert_or_get(self, pattern: Pattern) -> PatternNode:
        """Node for ``pattern``, creating the missing part of its chain."""
        node = self.root
        for item, kind in derivation(pattern):
            child = node.child(item, kind)
            if child is None:
                child = self.add_child(node, item, kind)
            node = child
        return node

    def find(self, pattern: Pattern) -> Optional[PatternNode]:
        node: Optional[PatternNode] = self.root
        for item, kind in derivation(pattern):
            node = node.child(item, kind)
            if node is None:
                return None
        return node

    def append_occurrence(self, node: PatternNode, occurrence: Occurrence) -> bool:
        before = len(node.occurrences)
        accepted = node.occurrences.append(occurrence)
        self.occurrence_count += len(node.occurrences) - before
        return accepted

    def replace_occurrences(self, node: PatternNode, occurrences: OccurrenceList) -> None:
        self.occurrence_count += len(occurrences) - len(node.occurrences)
        node.occurrences = occurrences

    def drop_occurrences_starting_at(self, pos: int) -> int:
        """Remove every occurrence starting at ``pos``; returns how many."""
        dropped = 0
        for node in self.nodes():
            if node.occurrences.drop_starting_at(pos):
                dropped += 1
        self.occurrence_count -= dropped
        return dropped

    def graft(
        self,
        parent: PatternNode,
        source: PatternNode,
        map_occurrence: Callable[[Occurrence], Occurrence],
    ) -> PatternNode:
        """Copy ``source`` and its subtree under ``parent``, rewriting every
        occurrence. Copied nodes are tagged for completion."""
        copy = self.add_child(parent, source.item, source.kind)
        stack = [(source, copy)]
        while stack:
            src, dst = stack.pop()
            for occurrence in src.occurrences:
                self.append_occurrence(dst, map_occurrence(occurrence))
            dst.needs_completion = True
            for child in src.ordered_children():
                stack.append((child, self.add_child(dst, child.item, child.kind)))
        return copy

    def remove(self, node: PatternNode) -> None:
        """Detach ``node`` with its whole subtree."""
        nodes = occurrences = 0
        for sub in self._subtree(node):
            nodes += 1
            occurrences += len(sub.occurrences)
        del node.parent.children(node.kind)[node.item]
        self.node_count -= nodes
        self.occurrence_count -= occurrences

    def prune(self, retain_quasi: bool = False) -> int:
        """Remove nodes whose support is below sigma, subtrees included.

        With ``retain_quasi`` a quasi node survives, and so does any node on
        the path to a surviving node. Returns the number of removed nodes.
        """
        before = self.node_count
        if not retain_quasi:
            stack = [self.root]
            while stack:
                node = stack.pop()
                for child in list(node.ordered_children()):
                    if child.support < self.sigma:
                        self.remove(child)
                    else:
                        stack.append(child)
        else:
            keep: dict[int, bool] = {}
            for node in self._postorder():
                if node.is_root:
                    continue
                keep[id(node)] = (
                    node.support >= self.sigma
                    or node.quasi
                    or any(keep[id(child)] for child in node.ordered_children())
                )
            stack = [self.root]
            while stack:
                node = stack.pop()
                for child in list(node.ordered_children()):
                    if keep[id(child)]:
                        stack.append(child)
                    else:
                        self.remove(child)
        removed = before - self.node_count
        logger.debug("pruned %d nodes (retain_quasi=%s)", removed, retain_quasi)
        return removed

    def nodes(self) -> Iterator[PatternNode]:
        """Non-root nodes in depth-first order."""
        for node in self._subtree(self.root):
            if not node.is_root:
                yield node

    def walk(self) -> Iterator[tuple[PatternNode, Itemset]]:
        """Non-root nodes in enumeration order, with their last itemset."""
        stack: list[tuple[PatternNode, Itemset]] = [
            (child, child_last_itemset((), child))
            for child in reversed(list(self.root.ordered_children()))
        ]
        while stack:
            node, last = stack.pop()
            yield node, last
            for child in reversed(list(node.ordered_children())):
                stack.append((child, child_last_itemset(last, child)))

    def walk_patterns(self) -> Iterator[tuple[PatternNode, Pattern]]:
        """Non-root nodes in enumeration order, with their full pattern."""
        stack: list[tuple[PatternNode, Pattern]] = [
            (child, extend((), child.item, child.kind))
            for child in reversed(list(self.root.ordered_children()))
        ]
        while stack:
            node, pattern = stack.pop()
            yield node, pattern
            for child in reversed(list(node.ordered_children())):
                stack.append((child, extend(pattern, child.item, child.kind)))

    def enumerate(self) -> list[tuple[Pattern, int, tuple[Occurrence, ...]]]:
        """(pattern, support, occurrences) for every node, depth first,
        succession children before composition children."""
        return [
            (pattern, node.support, node.occurrences.as_tuple())
            for node, pattern in self.walk_patterns()
        ]

    def to_dict(self) -> dict[Pattern, list[Occurrence]]:
        return {
            pattern: list(node.occurrences) for node, pattern in self.walk_patterns()
        }

    def recount(self) -> tuple[int, int]:
        """Node and occurrence counts by traversal."""
        nodes = occurrences = 0
        for node in self.nodes():
            nodes += 1
            occurrences += len(node.occurrences)
        return nodes, occurrences

    @staticmethod
    def _subtree(node: PatternNode) -> Iterator[PatternNode]:
        stack = [node]
        while stack:
            current = stack.pop()
            yield current
            stack.extend(current.s_children.values())
            stack.extend(current.c_children.values())

    def _postorder(self) -> Iterator[PatternNode]:
        stack: list[tuple[PatternNode, bool]] = [(self.root, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                yield node
                continue
            stack.append((node, True))
            stack.extend((child, False) for child in node.ordered_children())
