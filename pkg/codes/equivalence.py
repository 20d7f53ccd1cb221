"""
Permutation equivalence of binary linear codes.

Two codes are equivalent when a coordinate permutation maps one onto the
other. Equivalence is decided through a canonical form: a generator matrix
that depends only on the equivalence class.

Canonical labeling works on the coordinates:
- a label-invariant set W of low-weight codewords is collected (the whole
  minimum-weight class, plus heavier classes while |W| stays under
  config.CANONICAL_WORD_CAP)
- coordinate colors and word colors are refined against each other on the
  W×n incidence matrix until stable; new colors are ranks of sorted
  signatures, so the result does not depend on the input order
- non-discrete partitions are split by individualizing one coordinate of the
  first smallest non-singleton cell, and the search recurses
- every discrete partition gives a leaf: the reduced row echelon form of the
  permuted generator; the canonical form is the lexicographically smallest
  leaf
- equal leaves reveal automorphisms, which prune sibling branches lying in
  the same orbit and let the search jump back to the common ancestor

The invariant key (enumerator plus per-coordinate weight profiles) is a cheap
necessary condition used to bucket codes before canonical forms are compared.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

import config
from codes.gf2core import BitMatrix, require_full_rank
from codes.metrics import codewords, word_weights

logger = logging.getLogger(__name__)


def _row_hex(row: int, n: int) -> str:
    """Column 0 is the most significant bit of the first hex digit."""
    bits = "".join("1" if (row >> j) & 1 else "0" for j in range(n))
    bits += "0" * (-n % 4)
    return format(int(bits, 2), f"0{len(bits) // 4}x") if bits else ""


def _hex_row(text: str, n: int) -> int:
    width = -(-n // 4)
    if len(text) != width or any(ch not in "0123456789abcdef" for ch in text):
        raise ValueError(f"row {text!r} is not {width} lowercase hex digits")
    bits = format(int(text, 16), f"0{width * 4}b")
    if "1" in bits[n:]:
        raise ValueError(f"row {text!r} has padding bits set")
    return sum(1 << j for j in range(n) if bits[j] == "1")


def _reverse_bits(word: int, n: int) -> int:
    return int(format(word, f"0{n}b")[::-1], 2) if n else 0


@dataclass(frozen=True)
class CanonicalForm:
    """
    Canonical generator of an equivalence class, rows in RREF order.

    Rows use the usual convention (bit j = column j). The text form joins
    per-row hex strings with ':'; lexicographic order of the text equals the
    row-major bit order used to pick the minimum leaf.
    """

    n: int
    k: int
    rows: Tuple[int, ...]

    def hex(self) -> str:
        return ":".join(_row_hex(row, self.n) for row in self.rows)

    def __str__(self) -> str:
        return self.hex()

    @classmethod
    def from_hex(cls, text: str, n: int, k: int) -> "CanonicalForm":
        parts = text.split(":") if text else []
        if len(parts) != k:
            raise ValueError(f"expected {k} rows, found {len(parts)}")
        return cls(n, k, tuple(_hex_row(part, n) for part in parts))

    def to_matrix(self) -> BitMatrix:
        if self.k == 0:
            return BitMatrix.zeros(0, self.n)
        return BitMatrix.from_rows(self.rows, self.n)


@dataclass(frozen=True)
class CanonicalLabeling:
    """
    Result of the canonical labeling search.

    Attributes:
        form (CanonicalForm): the canonical generator
        labeling (Tuple[int, ...]): labeling[j] = input coordinate placed at
            canonical position j
        generators (Tuple[Tuple[int, ...], ...]): automorphisms found on the
            way, as coordinate maps sigma[i] = image of i
    """

    form: CanonicalForm
    labeling: Tuple[int, ...]
    generators: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class InvariantKey:
    n: int
    k: int
    enumerator_digest: str
    coordinate_digest: str


def _digest(value) -> str:
    return hashlib.blake2b(repr(value).encode("ascii"), digest_size=16).hexdigest()


def invariant_key(generator: BitMatrix, words: Optional[np.ndarray] = None) -> InvariantKey:
    """
    Equivalence invariant: weight enumerator plus the multiset of
    per-coordinate weight profiles (for each coordinate, the weight
    distribution of codewords that are 1 there).
    """
    if words is None:
        words = codewords(generator)
    weights = word_weights(words)
    n = generator.n
    enumerator = tuple(int(c) for c in np.bincount(weights, minlength=n + 1))
    profiles = []
    for j in range(n):
        hit = ((words >> np.uint64(j)) & np.uint64(1)).astype(bool)
        profiles.append(tuple(int(c) for c in np.bincount(weights[hit], minlength=n + 1)))
    profiles.sort()
    return InvariantKey(n, generator.k, _digest(enumerator), _digest(tuple(profiles)))


def _leaf_rows(columns: Sequence[int], perm: np.ndarray, k: int, n: int) -> Tuple[int, ...]:
    """
    RREF of the column-permuted generator, rows packed with column 0 as the
    most significant bit so tuple comparison is row-major lexicographic.
    """
    rows = [0] * k
    for j, source in enumerate(perm):
        column = columns[source]
        bit = 1 << (n - 1 - j)
        i = 0
        while column:
            if column & 1:
                rows[i] |= bit
            column >>= 1
            i += 1
    row_idx = 0
    for shift in range(n - 1, -1, -1):
        if row_idx == k:
            break
        bit = 1 << shift
        pivot = next((r for r in range(row_idx, k) if rows[r] & bit), None)
        if pivot is None:
            continue
        rows[row_idx], rows[pivot] = rows[pivot], rows[row_idx]
        pivot_row = rows[row_idx]
        for r in range(k):
            if r != row_idx and rows[r] & bit:
                rows[r] ^= pivot_row
        row_idx += 1
    return tuple(rows)


class _OrbitUnion:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _split_colors(
    colors: np.ndarray,
    owners: np.ndarray,
    neighbours: np.ndarray,
    size: int,
    width: int,
) -> np.ndarray:
    """
    One refinement half-step on the sparse incidence.

    Element i gets the signature (colors[i], number of incident elements of
    each neighbour color); the new color is the rank of the signature among
    all distinct signatures, so it does not depend on element order.
    """
    counts = np.bincount(owners * width + neighbours, minlength=size * width).reshape(size, width)
    signature = np.column_stack((colors, counts))
    _, ranks = np.unique(signature, axis=0, return_inverse=True)
    return ranks.reshape(-1).astype(np.int64)


class _LabelingSearch:
    """Individualization-refinement search over the coordinates of one code."""

    def __init__(self, generator: BitMatrix, words: np.ndarray, word_cap: int):
        self.generator = generator
        self.n = generator.n
        self.k = generator.k
        weights = word_weights(words)
        nonzero = weights > 0
        classes, counts = np.unique(weights[nonzero], return_counts=True)
        chosen = []
        total = 0
        for weight, count in zip(classes, counts):
            if chosen and total + count > word_cap:
                break
            chosen.append(weight)
            total += int(count)
        selected = nonzero & np.isin(weights, chosen)
        picked = words[selected]
        shifts = np.arange(self.n, dtype=np.uint64)
        self.incidence = ((picked[:, None] >> shifts) & np.uint64(1)).astype(np.uint8)
        self.word_count = int(picked.shape[0])
        # sparse (word, coordinate) incidence pairs, word-major
        self.pair_words, self.pair_coords = (idx.astype(np.int64) for idx in np.nonzero(self.incidence))
        _, word_colors = np.unique(weights[selected], return_inverse=True)
        self.initial_words = word_colors.reshape(-1).astype(np.int64)

        self.generators: List[np.ndarray] = []
        self.first: Optional[Tuple[Tuple[int, ...], np.ndarray, List[int]]] = None
        self.best: Optional[Tuple[Tuple[int, ...], np.ndarray, List[int]]] = None

    # -- partition refinement ---------------------------------------------

    def _refine(self, coord: np.ndarray, word: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        if self.word_count == 0:
            return coord, word
        while True:
            new_word = _split_colors(
                word, self.pair_words, coord[self.pair_coords], self.word_count, int(coord.max()) + 1
            )
            new_coord = _split_colors(
                coord, self.pair_coords, new_word[self.pair_words], self.n, int(new_word.max()) + 1
            )
            if new_coord.max() == coord.max() and new_word.max() == word.max():
                return new_coord, new_word
            coord, word = new_coord, new_word

    @staticmethod
    def _individualize(coord: np.ndarray, vertex: int) -> np.ndarray:
        color = coord[vertex]
        split = coord.copy()
        split[coord > color] += 1
        split[coord == color] = color + 1
        split[vertex] = color
        return split

    @staticmethod
    def _target_cell(coord: np.ndarray) -> np.ndarray:
        sizes = np.bincount(coord)
        multi = np.flatnonzero(sizes > 1)
        color = multi[np.argmin(sizes[multi])]
        return np.flatnonzero(coord == color)

    # -- automorphisms ----------------------------------------------------

    def _record_automorphism(self, source: np.ndarray, target: np.ndarray) -> None:
        sigma = np.empty(self.n, dtype=np.int64)
        sigma[source] = target
        if not np.array_equal(sigma, np.arange(self.n)):
            self.generators.append(sigma)

    def _skip_by_orbit(self, vertex: int, explored: List[int], path: List[int]) -> bool:
        fixing = [g for g in self.generators if all(g[p] == p for p in path)]
        if not fixing:
            return False
        orbits = _OrbitUnion(self.n)
        for sigma in fixing:
            for i, image in enumerate(sigma):
                orbits.union(i, int(image))
        root = orbits.find(vertex)
        return any(orbits.find(u) == root for u in explored)

    # -- search -----------------------------------------------------------

    def _leaf(self, coord: np.ndarray, path: List[int]) -> Optional[int]:
        perm = np.argsort(coord)
        key = _leaf_rows(self.generator.columns, perm, self.k, self.n)
        if self.first is None:
            self.first = self.best = (key, perm, list(path))
            return None
        if key == self.first[0]:
            self._record_automorphism(self.first[1], perm)
            return _common_prefix(path, self.first[2])
        if key < self.best[0]:
            self.best = (key, perm, list(path))
            return None
        if key == self.best[0]:
            self._record_automorphism(self.best[1], perm)
            return _common_prefix(path, self.best[2])
        return None

    def search(self, coord: np.ndarray, word: np.ndarray, path: List[int]) -> Optional[int]:
        coord, word = self._refine(coord, word)
        if int(coord.max()) + 1 == self.n:
            return self._leaf(coord, path)
        depth = len(path)
        explored: List[int] = []
        for vertex in self._target_cell(coord):
            vertex = int(vertex)
            if explored and self._skip_by_orbit(vertex, explored, path):
                continue
            explored.append(vertex)
            jump = self.search(self._individualize(coord, vertex), word, path + [vertex])
            if jump is not None and jump < depth:
                return jump
        return None

    def run(self) -> CanonicalLabeling:
        self.search(np.zeros(self.n, dtype=np.int64), self.initial_words, [])
        key, perm, _ = self.best
        form = CanonicalForm(self.n, self.k, tuple(_reverse_bits(row, self.n) for row in key))
        return CanonicalLabeling(
            form,
            tuple(int(p) for p in perm),
            tuple(tuple(int(x) for x in g) for g in self.generators),
        )


def _common_prefix(first: List[int], second: List[int]) -> int:
    depth = 0
    for a, b in zip(first, second):
        if a != b:
            break
        depth += 1
    return depth


def canonical_labeling(
    generator: BitMatrix,
    words: Optional[np.ndarray] = None,
    word_cap: Optional[int] = None,
) -> CanonicalLabeling:
    """
    Canonical form, canonical labeling and automorphism generators.

    Args:
        generator (BitMatrix): full-rank generator matrix
        words (np.ndarray, optional): codewords from codewords(), if known
        word_cap (int, optional): refinement word budget, defaults to
            config.CANONICAL_WORD_CAP

    Returns:
        CanonicalLabeling: the same form for every generator of every code
        in the equivalence class
    """
    require_full_rank(generator)
    n, k = generator.n, generator.k
    if n == 0 or k == 0:
        return CanonicalLabeling(CanonicalForm(n, k, ()), tuple(range(n)), ())
    if words is None:
        words = codewords(generator)
    cap = config.CANONICAL_WORD_CAP if word_cap is None else word_cap
    result = _LabelingSearch(generator, words, cap).run()
    logger.debug(
        "canonical form of [%d,%d] found with %d automorphism generators",
        n, k, len(result.generators),
    )
    return result


def canonical_form(generator: BitMatrix, words: Optional[np.ndarray] = None) -> CanonicalForm:
    return canonical_labeling(generator, words).form


def are_equivalent(first: BitMatrix, second: BitMatrix) -> bool:
    """True if a coordinate permutation maps one code onto the other."""
    if (first.n, first.k) != (second.n, second.k):
        return False
    words_a = codewords(first)
    words_b = codewords(second)
    if invariant_key(first, words_a) != invariant_key(second, words_b):
        return False
    return canonical_form(first, words_a) == canonical_form(second, words_b)


def permute_columns(generator: BitMatrix, perm: Sequence[int]) -> BitMatrix:
    """Column j of the result is column perm[j] of the input."""
    return generator.select_columns(perm)
