import numpy as np
import pytest

from incseq.sax import (
    SaxConfig,
    breakpoints,
    paa,
    sax_discretize,
    symbolize,
    znormalize,
)


def symbols_of(series, cfg):
    return np.array([itemset[0] for itemset in sax_discretize(series, cfg)])


class TestSaxConfig:
    def test_defaults(self):
        cfg = SaxConfig()
        assert (cfg.alphabet_size, cfg.paa_size) == (14, 24)

    @pytest.mark.parametrize("kwargs", [{"alphabet_size": 1}, {"paa_size": 0}])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            SaxConfig(**kwargs)


class TestPrimitives:
    def test_znormalize(self):
        normalized = znormalize(np.array([1.0, 2.0, 3.0, 4.0]))
        assert abs(normalized.mean()) < 1e-12
        assert abs(normalized.std() - 1) < 1e-12

    def test_znormalize_constant(self):
        np.testing.assert_array_equal(znormalize(np.full(5, 3.0)), np.zeros(5))

    def test_paa_drops_partial_block(self):
        np.testing.assert_array_equal(paa(np.arange(7.0), 3), [1.0, 4.0])

    def test_paa_of_constant_is_constant(self):
        np.testing.assert_array_equal(paa(np.full(48, 2.0), 24), [2.0, 2.0])

    def test_breakpoints(self):
        np.testing.assert_allclose(breakpoints(2), [0.0])
        np.testing.assert_allclose(breakpoints(4), [-0.6744897501960817, 0.0, 0.6744897501960817])

    def test_value_on_breakpoint_goes_up(self):
        np.testing.assert_array_equal(symbolize(np.array([-1.0, 0.0, 1.0]), 2), [0, 1, 1])


class TestSaxDiscretize:
    def test_block_count(self):
        series = np.random.default_rng(0).standard_normal(18_000)
        assert len(symbols_of(series, SaxConfig())) == 750

    def test_constant_series_single_symbol(self):
        symbols = symbols_of(np.full(240, 5.0), SaxConfig())
        assert set(symbols) == {7}

    def test_alphabet_two_is_sign(self):
        series = np.repeat([-3.0, 2.0, -1.0, 4.0], 4)
        assert list(symbols_of(series, SaxConfig(alphabet_size=2, paa_size=4))) == [0, 1, 0, 1]

    def test_too_short(self):
        with pytest.raises(ValueError):
            sax_discretize(np.zeros(10), SaxConfig(paa_size=24))

    def test_dictionary(self):
        stream = sax_discretize(np.arange(48.0), SaxConfig())
        assert stream.dictionary.symbols()[:3] == ["a", "b", "c"]
        assert len(stream.dictionary) == 14
        wide = sax_discretize(np.arange(48.0), SaxConfig(alphabet_size=30))
        assert wide.dictionary.decode(5) == "s05"

    def test_equiprobable_symbols(self):
        rng = np.random.default_rng(42)
        # each PAA block repeats one standard normal draw
        series = np.repeat(rng.standard_normal(10**5), 24)
        symbols = symbols_of(series, SaxConfig(alphabet_size=14, paa_size=24))
        assert len(symbols) == 10**5
        assert set(symbols) == set(range(14))
        frequencies = np.bincount(symbols, minlength=14) / len(symbols)
        assert np.all(np.abs(frequencies - 1 / 14) < 0.01)

    def test_block_means_centered(self):
        series = np.random.default_rng(1).standard_normal(10**5)
        assert abs(paa(znormalize(series), 24).mean()) < 0.01
