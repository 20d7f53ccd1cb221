from __future__ import annotations

import pytest

from codes.equivalence import canonical_labeling
from codes.errors import DimensionGuardError, MatrixFormatError, RankDeficientError
from codes.gf2core import (
    BitMatrix,
    BitVector,
    apply_map,
    contains_word,
    dual_generator,
    format_matrix,
    induced_linear_map,
    odd_column_basis,
    parse_matrix_text,
    rank,
    rref,
    span_equal,
)
from tests.helpers import random_full_rank


def _dot(a: int, b: int) -> int:
    return (a & b).bit_count() % 2


class TestBitMatrix:
    def test_rows_and_columns_agree(self, hamming):
        assert hamming.row_strings() == ["1000011", "0100101", "0010110", "0001111"]
        assert hamming.columns[0] == 0b0001
        assert hamming.columns[4] == 0b1110
        assert hamming.columns[6] == 0b1011

    def test_transpose_twice_is_identity(self, rng):
        matrix = random_full_rank(rng, 5, 9)
        assert matrix.transpose().transpose() == matrix

    def test_rejects_oversized_columns(self):
        with pytest.raises(ValueError):
            BitMatrix(2, 1, (4,))

    def test_rejects_too_many_rows(self):
        with pytest.raises(DimensionGuardError):
            BitMatrix.zeros(65, 3)

    def test_from_strings_rejects_ragged_rows(self):
        with pytest.raises(MatrixFormatError):
            BitMatrix.from_strings(["101", "11"])

    def test_bit_vector(self):
        vector = BitVector.from_string("01101")
        assert vector.weight() == 3
        assert vector.support() == [1, 2, 4]
        assert str(vector) == "01101"


class TestElimination:
    def test_rank_of_dependent_rows(self):
        matrix = BitMatrix.from_strings(["1100", "0110", "1010"])
        assert rank(matrix) == 2

    def test_rref_keeps_row_space(self, rng):
        matrix = random_full_rank(rng, 6, 12)
        reduced = rref(matrix)
        assert reduced.rank == 6
        assert span_equal(reduced.matrix, matrix)
        for i, pivot in enumerate(reduced.pivots):
            assert reduced.matrix.columns[pivot] == 1 << i

    def test_dual_generator_is_orthogonal(self, rng):
        matrix = random_full_rank(rng, 5, 11)
        dual = dual_generator(matrix)
        assert (dual.k, dual.n) == (6, 11)
        assert rank(dual) == 6
        for row in matrix.rows():
            for other in dual.rows():
                assert _dot(row, other) == 0

    def test_dual_of_rank_deficient_input(self):
        matrix = BitMatrix.from_strings(["110", "110"])
        with pytest.raises(RankDeficientError):
            dual_generator(matrix)

    def test_dual_of_full_space_is_empty(self):
        assert dual_generator(BitMatrix.identity(4)).k == 0

    def test_contains_word(self, hamming):
        assert contains_word(hamming, 0b1111111)
        assert not contains_word(hamming, 0b0000001)


class TestLinearMaps:
    def test_odd_column_basis(self, hamming):
        rebased = odd_column_basis(hamming)
        assert span_equal(rebased, hamming)
        assert all(column.bit_count() % 2 == 1 for column in rebased.columns)

    def test_odd_column_basis_needs_all_ones(self):
        matrix = BitMatrix.from_strings(["1100", "0110"])
        with pytest.raises(ValueError):
            odd_column_basis(matrix)

    def test_induced_map_moves_columns(self, hamming):
        generators = canonical_labeling(hamming).generators
        assert generators
        for sigma in generators:
            linear_map = induced_linear_map(hamming, sigma)
            for i, column in enumerate(hamming.columns):
                assert apply_map(linear_map, column) == hamming.columns[sigma[i]]

    def test_odd_column_basis_rebases_rows(self):
        matrix = BitMatrix.from_strings(["1111", "0011"])
        rebased = odd_column_basis(matrix)
        assert span_equal(rebased, matrix)
        assert all(column.bit_count() % 2 == 1 for column in rebased.columns)


class TestMatrixText:
    def test_parse_skips_comments(self):
        matrix = parse_matrix_text("# header\n101\n\n011  # trailing\n")
        assert matrix.row_strings() == ["101", "011"]

    def test_format_matches_parse(self, hamming):
        assert parse_matrix_text(format_matrix(hamming)) == hamming

    def test_empty_text(self):
        with pytest.raises(MatrixFormatError):
            parse_matrix_text("# nothing\n")

    def test_bad_characters(self):
        with pytest.raises(MatrixFormatError):
            parse_matrix_text("1021\n")


class TestInvariants:
    def test_dual_of_dual(self, rng):
        for _ in range(5):
            matrix = random_full_rank(rng, 7, 15)
            assert span_equal(dual_generator(dual_generator(matrix)), matrix)

    def test_rank_of_transpose(self, rng):
        for _ in range(10):
            columns = tuple(int(c) for c in rng.integers(0, 1 << 20, size=30))
            matrix = BitMatrix(20, 30, columns)
            assert rank(matrix) == rank(matrix.transpose())

    def test_rref_is_idempotent(self, rng):
        matrix = random_full_rank(rng, 6, 14)
        once = rref(matrix).matrix
        assert rref(once).matrix == once

    def test_g32_dual(self, g32_codes):
        generator = g32_codes[0]
        assert rank(generator) == 15
        assert rref(generator).rank == 15
        dual = dual_generator(generator)
        assert (dual.k, dual.n) == (17, 32)
        for row in generator.rows():
            for other in dual.rows():
                assert _dot(row, other) == 0

    def test_zero_matrix(self):
        assert rank(BitMatrix.zeros(3, 5)) == 0
