from __future__ import annotations

import functools
import itertools
import os

import numpy as np

from codes.gf2core import BitMatrix, rank
from codes.metrics import smallest_dependent_columns
from database import save_db


def random_full_rank(rng, k: int, n: int) -> BitMatrix:
    """A uniformly drawn k×n generator of full rank."""
    while True:
        columns = tuple(int(c) for c in rng.integers(0, 1 << k, size=n))
        matrix = BitMatrix(k, n, columns)
        if rank(matrix) == k:
            return matrix


def random_permutation(rng, n: int):
    return [int(p) for p in rng.permutation(n)]


def all_column_multisets(k: int, n: int, dperp: int):
    """
    Every k×n full-rank generator whose columns are nonzero and sorted, with
    no dependent set of fewer than dperp columns. Brute force for tiny k, n.
    """
    values = range(1, 1 << k)

    def rec(start, chosen):
        if len(chosen) == n:
            matrix = BitMatrix(k, n, tuple(chosen))
            if rank(matrix) == k and smallest_dependent_columns(matrix, dperp - 1) > dperp - 1:
                yield matrix
            return
        for value in values:
            if value >= start:
                yield from rec(value, chosen + [value])

    yield from rec(1, [])


def save_family(directory: str, levels):
    """Write every level of a family into one directory, returning the paths."""
    paths = []
    for db in levels:
        path = os.path.join(directory, db.filename)
        save_db(db, path)
        paths.append(path)
    return paths


def dense_refine(incidence: np.ndarray, coord: np.ndarray, word: np.ndarray):
    """
    Reference coordinate/word refinement through one-hot matrix products.
    Slow but obviously correct; the labeling search must agree with it.
    """
    incidence = incidence.astype(np.int64)
    while True:
        coord_onehot = np.eye(int(coord.max()) + 1, dtype=np.int64)[coord]
        word_sig = np.column_stack((word, incidence @ coord_onehot))
        _, new_word = np.unique(word_sig, axis=0, return_inverse=True)
        new_word = new_word.reshape(-1)

        word_onehot = np.eye(int(new_word.max()) + 1, dtype=np.int64)[new_word]
        coord_sig = np.column_stack((coord, incidence.T @ word_onehot))
        _, new_coord = np.unique(coord_sig, axis=0, return_inverse=True)
        new_coord = new_coord.reshape(-1)

        if new_coord.max() == coord.max() and new_word.max() == word.max():
            return new_coord, new_word
        coord, word = new_coord, new_word


@functools.lru_cache(maxsize=None)
def _basis_change_tables(k: int) -> np.ndarray:
    """Row A holds A·c for every c in GF(2)^k, one row per invertible A."""
    images = np.array(list(itertools.product(range(1, 1 << k), repeat=k)), dtype=np.int64).reshape(-1, k)
    table = np.zeros((images.shape[0], 1 << k), dtype=np.int64)
    for c in range(1 << k):
        for i in range(k):
            if (c >> i) & 1:
                table[:, c] ^= images[:, i]
    invertible = np.all(table[:, 1:] != 0, axis=1)
    return table[invertible]


def brute_force_class_key(matrix: BitMatrix) -> int:
    """
    Exhaustive equivalence invariant: the smallest sorted column multiset
    over every change of basis. Two generators of equal shape get the same
    key exactly when their codes are permutation equivalent. Small k only.
    """
    table = _basis_change_tables(matrix.k)
    images = np.sort(table[:, list(matrix.columns)], axis=1)
    keys = np.zeros(images.shape[0], dtype=np.int64)
    for j in range(matrix.n):
        keys = (keys << matrix.k) | images[:, j]
    return int(keys.min())
