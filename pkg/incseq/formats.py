"""Text rendering of mined patterns.

One record per pattern, ``pattern<TAB>support<TAB>occurrences``, in tree
enumeration order. Itemsets print as ``(a b)``, singletons bare, and
occurrences as ``(2,3);(3,5)``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Optional

from .core import Itemset, Occurrence, Pattern
from .streams import ItemDictionary
from .tree import PatternTree


def format_itemset(itemset: Itemset, dictionary: ItemDictionary) -> str:
    symbols = [dictionary.decode(item) for item in itemset]
    if len(symbols) == 1:
        return symbols[0]
    return "(" + " ".join(symbols) + ")"


def format_pattern(pattern: Pattern, dictionary: ItemDictionary) -> str:
    return " ".join(format_itemset(itemset, dictionary) for itemset in pattern)


def format_occurrences(occurrences: Iterable[Occurrence]) -> str:
    return ";".join("(" + ",".join(map(str, occ)) + ")" for occ in occurrences)


def format_record(
    pattern: Pattern,
    support: int,
    occurrences: Iterable[Occurrence],
    dictionary: ItemDictionary,
) -> str:
    return "\t".join(
        [format_pattern(pattern, dictionary), str(support), format_occurrences(occurrences)]
    )


def dump_lines(tree: PatternTree, dictionary: ItemDictionary) -> Iterator[str]:
    for pattern, support, occurrences in tree.enumerate():
        yield format_record(pattern, support, occurrences, dictionary)


@dataclass(frozen=True)
class PatternDump:
    """Writes pattern trees, either to an open stream or one file per slide."""

    name = "patterns"
    suffix = "tsv"
    prefix: str = "slide"

    def derive_path(self, slide: int, directory: Path) -> Path:
        return directory / f"{self.prefix}-{slide:06d}.{self.suffix}"

    def write_to(
        self,
        tree: PatternTree,
        dictionary: ItemDictionary,
        out: IO[str],
        header: Optional[str] = None,
    ) -> int:
        """Write the records to ``out``, preceded by a ``# header`` line when
        given; returns the number of records."""
        if header is not None:
            out.write(f"# {header}\n")
        count = 0
        for line in dump_lines(tree, dictionary):
            out.write(line)
            out.write("\n")
            count += 1
        return count

    def write(
        self, tree: PatternTree, dictionary: ItemDictionary, slide: int, directory: Path
    ) -> Path:
        dest = self.derive_path(slide, directory)
        with dest.open("w") as f:
            self.write_to(tree, dictionary, f)
        return dest
