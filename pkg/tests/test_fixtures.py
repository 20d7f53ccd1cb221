from __future__ import annotations

from codes.fixtures import DPERP8_COUNTS, DPERP10_COUNTS, G32_ENUMERATORS
from codes.gf2core import rank
from codes.metrics import WeightEnumerator, code_params, is_even, weight_enumerator


def test_g32_enumerators(g32_codes):
    for generator, expected in zip(g32_codes, G32_ENUMERATORS):
        assert str(weight_enumerator(generator)) == expected


def test_g32_parameters(g32_codes):
    for generator in g32_codes:
        assert (generator.k, generator.n) == (15, 32)
        assert rank(generator) == 15
        assert is_even(generator)
        params = code_params(generator)
        assert (params.d, params.dperp) == (8, 8)


def test_enumerators_are_symmetric():
    for text in G32_ENUMERATORS:
        enumerator = WeightEnumerator.parse(text, 32)
        assert enumerator.coeffs == enumerator.coeffs[::-1]
        assert enumerator.total == 1 << 15


def test_count_columns_end_with_zero():
    for table in (DPERP8_COUNTS, DPERP10_COUNTS):
        for k, column in table.items():
            assert min(column) == k
            assert column[max(column)] == (0, False)
            assert column[k] == (1, True)
