import pytest
from hypothesis import given, settings, strategies as st

from incseq.batch import BatchMiner, mine_batch, occurrences_by_growth
from incseq.core import Extension, Kind, Window, make_itemset, make_pattern
from incseq.oracle import mine_oracle

A, B, C = 0, 1, 2


@pytest.fixture
def example_window():
    return Window.of([[A], [B, C], [A, B, C], [C], [B]])


windows = st.lists(
    st.lists(st.integers(0, 2), max_size=3).map(make_itemset), max_size=8
).map(Window.of)


class TestGrowth:
    def test_root_children(self, example_window):
        grown = occurrences_by_growth((), Extension(B, Kind.SUCCESSION), example_window)
        assert grown == [(2,), (3,), (5,)]

    def test_root_has_no_compositions(self, example_window):
        with pytest.raises(ValueError):
            occurrences_by_growth((), Extension(B, Kind.COMPOSITION), example_window)

    def test_succession(self, example_window):
        parent = [(2,), (3,)]
        grown = occurrences_by_growth(parent, Extension(C, Kind.SUCCESSION), example_window, (B, C))
        assert grown == [(2, 3), (3, 4)]
        grown = occurrences_by_growth(parent, Extension(B, Kind.SUCCESSION), example_window, (B, C))
        assert grown == [(2, 3), (3, 5)]

    def test_single_itemset_composition(self, example_window):
        parent = [(2,), (3,), (5,)]
        grown = occurrences_by_growth(parent, Extension(C, Kind.COMPOSITION), example_window, (B,))
        assert grown == [(2,), (3,)]

    def test_composition_searches_past_next_parent_occurrence(self):
        # a a b (bc): the parent <a b> only has (2,3), but <a (bc)> ends at 4
        window = Window.of([[A], [A], [B], [B, C]])
        grown = occurrences_by_growth(
            [(2, 3)], Extension(C, Kind.COMPOSITION), window, (B,)
        )
        assert grown == [(2, 4)]


class TestMineBatch:
    def test_example_window(self, example_window):
        tree = mine_batch(example_window, 2)
        node = tree.find(make_pattern([[B, C], [C]]))
        assert node.support == 2
        assert node.occurrences == [(2, 3), (3, 4)]
        node = tree.find(make_pattern([[B, C], [B]]))
        assert node.occurrences == [(2, 3), (3, 5)]
        assert node.parent.pattern() == ((B, C),)

    def test_matches_oracle_on_example(self, example_window):
        for sigma in (1, 2, 3):
            assert mine_batch(example_window, sigma).to_dict() == mine_oracle(example_window, sigma)

    def test_composition_regression(self):
        window = Window.of([[A], [A], [B], [B, C]])
        tree = mine_batch(window, 1)
        assert tree.find(make_pattern([[A], [B, C]])).occurrences == [(2, 4)]

    def test_counts_match_traversal(self, example_window):
        tree = mine_batch(example_window, 1)
        assert tree.recount() == (tree.node_count, tree.occurrence_count)

    def test_empty_window(self):
        assert len(mine_batch(Window.of([]), 1)) == 0

    @given(window=windows, sigma=st.integers(1, 3))
    @settings(max_examples=60, deadline=None)
    def test_matches_oracle(self, window, sigma):
        assert mine_batch(window, sigma).to_dict() == mine_oracle(window, sigma)


class TestBatchMiner:
    def test_push_slides(self):
        miner = BatchMiner(3, 1)
        for itemset in [(A,), (B,), (A,), (B,)]:
            miner.push(itemset)
        assert miner.is_warm
        assert miner.window == Window.of([[B], [A], [B]], start=2)
        assert miner.tree.find(make_pattern([[B], [A]])).occurrences == [(2, 3)]

    def test_warm_up(self):
        miner = BatchMiner(3, 1)
        miner.push((A,))
        assert not miner.is_warm
        assert miner.tree.find(make_pattern([[A]])).occurrences == [(1,)]

    def test_window_size_must_be_positive(self):
        with pytest.raises(ValueError):
            BatchMiner(0, 1)
