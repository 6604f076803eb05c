import pytest

from incseq.core import Kind, OccurrenceList, OrderingError, make_pattern
from incseq.tree import PatternTree

A, B, C = 0, 1, 2


@pytest.fixture
def tree():
    #  root
    #  ├─S a {(1),(3)}
    #  │   └─S b {(1,2),(3,5)}
    #  └─S b {(2),(3),(5)}
    #      └─C c {(2),(3)}
    #          └─S c {(2,3),(3,4)}
    t = PatternTree(2)
    a = t.add_child(t.root, A, Kind.SUCCESSION, OccurrenceList([(1,), (3,)]))
    t.add_child(a, B, Kind.SUCCESSION, OccurrenceList([(1, 2), (3, 5)]))
    b = t.add_child(t.root, B, Kind.SUCCESSION, OccurrenceList([(2,), (3,), (5,)]))
    bc = t.add_child(b, C, Kind.COMPOSITION, OccurrenceList([(2,), (3,)]))
    t.add_child(bc, C, Kind.SUCCESSION, OccurrenceList([(2, 3), (3, 4)]))
    return t


class TestStructure:
    def test_counts(self, tree):
        assert tree.node_count == 5
        assert tree.occurrence_count == 11
        assert tree.recount() == (5, 11)

    def test_find_and_pattern(self, tree):
        node = tree.find(make_pattern([[B, C], [C]]))
        assert node is not None
        assert node.pattern() == ((B, C), (C,))
        assert node.parent.pattern() == ((B, C),)
        assert tree.find(make_pattern([[C]])) is None

    def test_enumeration_order(self, tree):
        patterns = [pattern for pattern, _, _ in tree.enumerate()]
        assert patterns == [
            ((A,),),
            ((A,), (B,)),
            ((B,),),
            ((B, C),),
            ((B, C), (C,)),
        ]

    def test_walk_last_itemsets(self, tree):
        lasts = [last for _, last in tree.walk()]
        assert lasts == [(A,), (B,), (B,), (B, C), (C,)]

    def test_duplicate_child(self, tree):
        with pytest.raises(ValueError):
            tree.add_child(tree.root, A, Kind.SUCCESSION)

    def test_composition_order_enforced(self, tree):
        b = tree.find(make_pattern([[B]]))
        with pytest.raises(OrderingError):
            tree.add_child(b, A, Kind.COMPOSITION)
        with pytest.raises(OrderingError):
            tree.add_child(tree.root, A, Kind.COMPOSITION)

    def test_insert_or_get(self, tree):
        node = tree.insert_or_get(make_pattern([[A], [B, C]]))
        assert node.pattern() == ((A,), (B, C))
        assert tree.node_count == 6
        assert tree.insert_or_get(make_pattern([[A], [B, C]])) is node

    def test_sigma_must_be_positive(self):
        with pytest.raises(ValueError):
            PatternTree(0)


class TestMutation:
    def test_append_updates_count(self, tree):
        node = tree.find(make_pattern([[A]]))
        assert tree.append_occurrence(node, (5,))
        assert not tree.append_occurrence(node, (5,))
        assert tree.occurrence_count == 12

    def test_drop_occurrences_starting_at(self, tree):
        dropped = tree.drop_occurrences_starting_at(3)
        # no list holds an occurrence starting at 3 at its head
        assert dropped == 0
        assert tree.drop_occurrences_starting_at(1) == 2
        assert tree.drop_occurrences_starting_at(2) == 3
        assert tree.recount() == (5, tree.occurrence_count)

    def test_remove_subtree(self, tree):
        tree.remove(tree.find(make_pattern([[B]])))
        assert tree.node_count == 2
        assert tree.occurrence_count == 4
        assert tree.recount() == (2, 4)

    def test_graft_maps_and_tags(self, tree):
        source = PatternTree(1)
        c = source.add_child(source.root, C, Kind.SUCCESSION, OccurrenceList([(6,)]))
        a = tree.find(make_pattern([[A]]))
        copy = tree.graft(a, c, lambda occ: (3,) + occ)
        assert copy.pattern() == ((A,), (C,))
        assert copy.occurrences == [(3, 6)]
        assert copy.needs_completion
        assert tree.recount() == (tree.node_count, tree.occurrence_count)

    def test_prune_removes_subtrees(self, tree):
        tree.drop_occurrences_starting_at(1)
        removed = tree.prune()
        # a and a→b fall to support 1
        assert removed == 2
        assert [p for p, _, _ in tree.enumerate()] == [((B,),), ((B, C),), ((B, C), (C,))]

    def test_prune_retains_quasi_and_ancestors(self, tree):
        tree.drop_occurrences_starting_at(1)
        tree.drop_occurrences_starting_at(2)
        bcc = tree.find(make_pattern([[B, C], [C]]))
        bcc.quasi = True
        tree.prune(retain_quasi=True)
        # b still frequent, (b c) kept as the quasi node's ancestor, a dropped
        patterns = [p for p, _, _ in tree.enumerate()]
        assert patterns == [((B,),), ((B, C),), ((B, C), (C,))]
        tree.prune()
        assert [p for p, _, _ in tree.enumerate()] == [((B,),)]
        assert tree.recount() == (tree.node_count, tree.occurrence_count)
