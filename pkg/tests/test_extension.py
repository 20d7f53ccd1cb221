from __future__ import annotations

from math import comb

import numpy as np
import pytest

from classifier import classify_dimension
from codes.equivalence import are_equivalent, canonical_form, canonical_labeling, invariant_key
from codes.gf2core import BitMatrix
from codes.extension import (
    candidate_columns,
    column_orbit_representatives,
    extend_code,
    subset_sum_layers,
    subset_sums,
)
from codes.metrics import contains_all_ones, dual_distance
from tests.helpers import all_column_multisets, random_full_rank


def _simplex(k: int) -> BitMatrix:
    return BitMatrix(k, (1 << k) - 1, tuple(range(1, 1 << k)))


@pytest.mark.parametrize("n,depth", [(7, 2), (12, 4), (15, 6)])
def test_operation_count(rng, n, depth):
    matrix = random_full_rank(rng, 6, n)
    _, operations = subset_sums(matrix.columns, depth, 6)
    assert operations == sum(comb(n, i) for i in range(1, depth + 1))


def test_subset_sums_match_brute_force(rng):
    matrix = random_full_rank(rng, 5, 8)
    reached, _ = subset_sums(matrix.columns, 3, 5)
    expected = np.zeros(32, dtype=bool)
    for mask in range(1, 1 << matrix.n):
        if mask.bit_count() <= 3:
            acc = 0
            for j in range(matrix.n):
                if (mask >> j) & 1:
                    acc ^= matrix.columns[j]
            expected[acc] = True
    assert np.array_equal(reached, expected)


def test_layers_are_cumulative(rng):
    matrix = random_full_rank(rng, 5, 9)
    layers, _ = subset_sum_layers(matrix.columns, 3, 5)
    assert len(layers) == 4
    assert layers[0].sum() == 1 and layers[0][0]
    for smaller, larger in zip(layers, layers[1:]):
        assert np.all(larger[smaller])


def test_hamming_extends_to_one_column(hamming):
    mask = candidate_columns(hamming, 4)
    assert len(mask) == 1
    assert 0b0111 in mask
    child = hamming.with_columns([0b0111])
    assert dual_distance(child) == 4


def test_all_nonzero_columns_leave_nothing():
    mask = candidate_columns(_simplex(3), 3)
    assert len(mask) == 0
    assert 0 not in mask


def test_candidate_columns_rejects_small_dperp(hamming):
    with pytest.raises(ValueError):
        candidate_columns(hamming, 1)


def test_every_candidate_keeps_dual_distance(rng):
    matrix = random_full_rank(rng, 5, 7)
    while dual_distance(matrix) < 3:
        matrix = random_full_rank(rng, 5, 7)
    mask = candidate_columns(matrix, 3)
    for column in range(1, 32):
        assert (column in mask) == (dual_distance(matrix.with_columns([column])) >= 3)


def test_orbit_representatives_cover_every_class(hamming):
    mask = candidate_columns(hamming, 3)
    generators = canonical_labeling(hamming).generators
    representatives = column_orbit_representatives(mask, hamming, generators)
    assert 0 < len(representatives) < len(mask)
    every = {canonical_form(hamming.with_columns([int(c)])) for c in mask.values()}
    chosen = {canonical_form(hamming.with_columns([int(c)])) for c in representatives}
    assert chosen == every


def test_even_extensions_contain_all_ones(hamming):
    generators = canonical_labeling(hamming).generators
    children = extend_code(hamming, 3, generators, even_dual=True)
    assert children
    assert all(contains_all_ones(child) for child in children)


@pytest.mark.parametrize("k,dperp,n_max", [(2, 3, 5), (3, 3, 8), (3, 4, 6)])
def test_extension_matches_exhaustive_enumeration(k, dperp, n_max):
    levels = classify_dimension(k, dperp, n_max)
    counts = {level.n: level.count for level in levels}
    for n in range(k, n_max + 1):
        forms = {canonical_form(matrix) for matrix in all_column_multisets(k, n, dperp)}
        assert counts.get(n, 0) == len(forms), f"[{n},{k}]^{dperp}"


def _naive_next_level(parents, dperp):
    """Every one-column extension kept by its dual distance, reduced pairwise."""
    classes = []
    for parent in parents:
        for column in range(1, 1 << parent.k):
            child = parent.with_columns([column])
            if dual_distance(child) < dperp:
                continue
            key = invariant_key(child)
            if not any(key == other_key and are_equivalent(child, other) for other_key, other in classes):
                classes.append((key, child))
    return classes


def _check_levels_against_naive_extension(k, dperp, n_max):
    levels = classify_dimension(k, dperp, n_max)
    for parents, children in zip(levels, levels[1:]):
        oracle = _naive_next_level([record.matrix for record in parents.records], dperp)
        assert children.count == len(oracle), f"[{children.n},{k}]^{dperp}"
        produced = [(invariant_key(record.matrix), record.matrix) for record in children.records]
        for key, matrix in oracle:
            matches = [other for other_key, other in produced if other_key == key and are_equivalent(matrix, other)]
            assert len(matches) == 1


@pytest.mark.parametrize("k,dperp,n_max", [(4, 3, 10), (5, 3, 8), (4, 4, 9), (5, 4, 10), (6, 4, 9)])
def test_extension_matches_naive_extension(k, dperp, n_max):
    _check_levels_against_naive_extension(k, dperp, n_max)


@pytest.mark.slow
@pytest.mark.parametrize("k,dperp,n_max", [(5, 3, 10), (6, 3, 10), (6, 4, 10)])
def test_extension_matches_naive_extension_long(k, dperp, n_max):
    _check_levels_against_naive_extension(k, dperp, n_max)


def test_g32_codes_do_not_extend(g32_codes):
    for generator in g32_codes:
        assert len(candidate_columns(generator, 8)) == 0
