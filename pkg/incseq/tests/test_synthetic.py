import numpy as np
import pytest

from incseq.synthetic import GenConfig, StreamGenerator, generate_synthetic, item_symbol


def collect(cfg):
    return list(generate_synthetic(cfg))


class TestGenConfig:
    @pytest.mark.parametrize("prob", [-0.1, 1.5])
    def test_probability_range(self, prob):
        with pytest.raises(ValueError):
            GenConfig(item_probability=prob)

    def test_vocab_size(self):
        with pytest.raises(ValueError):
            GenConfig(vocab_size=0)


class TestDeterminism:
    def test_same_seed_same_stream(self):
        cfg = GenConfig(vocab_size=40, item_probability=0.03, length=500, seed=7)
        assert collect(cfg) == collect(cfg)

    def test_different_seed_different_stream(self):
        a = collect(GenConfig(length=500, seed=1))
        b = collect(GenConfig(length=500, seed=2))
        assert a != b

    def test_independent_of_chunking(self):
        cfg = GenConfig(length=300, seed=3)
        chunked = list(StreamGenerator(cfg, chunk_size=7).itemsets())
        assert len(chunked) == 300
        assert chunked == collect(cfg)


class TestStatistics:
    def test_mean_items_per_itemset(self):
        cfg = GenConfig(vocab_size=40, item_probability=0.03, length=10**5, seed=42)
        sizes = np.array([len(itemset) for itemset in collect(cfg)])
        assert len(sizes) == 10**5
        assert abs(sizes.mean() - 1.2) < 0.05
        # 0.97 ** 40 of the positions carry no item
        assert abs((sizes == 0).mean() - 0.97**40) < 0.01

    def test_probability_zero(self):
        assert collect(GenConfig(vocab_size=5, item_probability=0.0, length=20)) == [()] * 20

    def test_probability_one(self):
        full = tuple(range(5))
        assert collect(GenConfig(vocab_size=5, item_probability=1.0, length=20)) == [full] * 20

    def test_itemsets_sorted(self):
        for itemset in collect(GenConfig(vocab_size=10, item_probability=0.5, length=50)):
            assert list(itemset) == sorted(set(itemset))


class TestSymbols:
    def test_letters_for_small_vocabularies(self):
        assert [item_symbol(i, 26) for i in (0, 25)] == ["a", "z"]

    def test_padded_names_keep_order(self):
        names = [item_symbol(i, 40) for i in range(40)]
        assert names[0] == "e00"
        assert names == sorted(names)

    def test_dictionary_ids_equal_indices(self):
        stream = generate_synthetic(GenConfig(vocab_size=40, length=1))
        assert stream.dictionary.encode("e07") == 7
        assert len(stream.dictionary) == 40
