from __future__ import annotations

import numpy as np
import pytest

from codes.errors import NotACodewordError
from codes.gf2core import BitVector, rank
from codes.metrics import codewords, dual_distance, min_distance, word_weights
from codes.residual import assemble_code, residual_code, scaffold


def _min_weight_word(generator) -> int:
    words = codewords(generator)
    weights = word_weights(words)
    weights[weights == 0] = generator.n + 1
    return int(words[int(np.argmin(weights))])


def test_residual_parameters(g32_codes):
    for generator in g32_codes:
        word = _min_weight_word(generator)
        residual = residual_code(generator, word)
        assert (residual.n, residual.k) == (24, 14)
        assert rank(residual) == 14
        assert min_distance(residual) >= 4


def test_residual_of_hamming(hamming):
    residual = residual_code(hamming, BitVector.from_string("1000011"))
    assert (residual.n, residual.k) == (4, 3)
    assert min_distance(residual) >= 2


def test_zero_word_is_rejected(hamming):
    with pytest.raises(NotACodewordError):
        residual_code(hamming, 0)


def test_non_codeword_is_rejected(hamming):
    with pytest.raises(NotACodewordError):
        residual_code(hamming, 0b0000001)


def test_scaffold_shape(hamming):
    residual = residual_code(hamming, BitVector.from_string("1000011"))
    base = scaffold(residual, 3)
    assert (base.k, base.n) == (4, 5)
    assert base.row_strings()[0] == "00001"
    assert base.row_strings()[1:] == [row + "0" for row in residual.row_strings()]
    assert base.columns[-1] == 1


def test_scaffold_rejects_nonpositive_distance(hamming):
    with pytest.raises(ValueError):
        scaffold(hamming, 0)


def test_assembled_code_has_weight_d_top_row(hamming):
    residual = residual_code(hamming, BitVector.from_string("1000011"))
    base = scaffold(residual, 3)
    code = assemble_code(base, [0b0001, 0b0011])
    assert code.n == 7
    assert code.rows()[0].bit_count() == 3


def test_residual_bounds_on_small_families(small_families):
    checked = 0
    for levels in small_families.values():
        for db in levels:
            for record in db.records:
                generator = record.matrix
                d = min_distance(generator)
                dperp = dual_distance(generator)
                for word in codewords(generator):
                    w = int(word).bit_count()
                    if w == 0 or w >= 2 * d:
                        continue
                    residual = residual_code(generator, int(word))
                    assert (residual.n, residual.k) == (db.n - w, db.k - 1)
                    if residual.k == 0:
                        continue
                    assert min_distance(residual) >= d - w + -(-w // 2)
                    if w == d:
                        assert min_distance(residual) >= -(-d // 2)
                    assert dual_distance(residual) >= dperp
                    checked += 1
    assert checked > 100
