"""
Weight enumerators, minimum distance and dual distance.

Codewords are enumerated in reflected Gray order: the word list for rows
0..i is the list for rows 0..i-1 followed by its reverse XOR-ed with row i,
so each step costs one vectorized XOR over numpy arrays. Weights come from
np.bitwise_count.

Dual distances are computed on whichever side is smaller: by enumerating the
dual directly when n-k <= k, otherwise by the MacWilliams transform of the
code's own enumerator with exact integer Krawtchouk values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Optional, Tuple

import numpy as np

import config
from codes.errors import DimensionGuardError, InvalidEnumeratorError, ZeroCodeError
from codes.gf2core import (
    INF,
    BitMatrix,
    CodeParams,
    Distance,
    contains_word,
    dual_generator,
    require_full_rank,
)

_TERM = re.compile(r"^(\d*)(?:z(?:\^\{?(\d+)\}?)?)?$")


@dataclass(frozen=True)
class WeightEnumerator:
    """
    Coefficients A_0..A_n of a weight enumerator.

    Printed and parsed in the form 1+124z^8+1152z^10+...+z^32.
    """

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    @property
    def total(self) -> int:
        return sum(self.coeffs)

    @property
    def min_weight(self) -> Distance:
        """Smallest nonzero weight with a codeword, INF for the zero code."""
        for weight, count in enumerate(self.coeffs[1:], start=1):
            if count:
                return weight
        return INF

    def __getitem__(self, weight: int) -> int:
        return self.coeffs[weight]

    def __str__(self) -> str:
        terms = []
        for weight, count in enumerate(self.coeffs):
            if not count:
                continue
            if weight == 0:
                terms.append(str(count))
                continue
            power = "z" if weight == 1 else f"z^{weight}"
            terms.append(power if count == 1 else f"{count}{power}")
        return "+".join(terms) if terms else "0"

    @classmethod
    def parse(cls, text: str, n: int) -> "WeightEnumerator":
        coeffs = [0] * (n + 1)
        for term in re.sub(r"\s+", "", text).split("+"):
            match = _TERM.match(term)
            if not term or not match or (not match.group(1) and "z" not in term):
                raise ValueError(f"cannot parse enumerator term {term!r}")
            count = int(match.group(1)) if match.group(1) else 1
            if "z" not in term:
                weight = 0
            else:
                weight = int(match.group(2)) if match.group(2) else 1
            if weight > n:
                raise ValueError(f"term {term!r} exceeds length {n}")
            coeffs[weight] += count
        return cls(tuple(coeffs))


def _guard_enumeration(k: int, n: int) -> None:
    if k > config.MAX_ENUM_DIM:
        raise DimensionGuardError(
            f"enumerating 2^{k} codewords exceeds MAX_ENUM_DIM={config.MAX_ENUM_DIM}"
        )
    if n > 64:
        raise DimensionGuardError(f"codewords of length {n} do not fit a 64-bit word")


def codewords(generator: BitMatrix) -> np.ndarray:
    """All 2^k codewords as uint64 words (bit j = coordinate j), Gray order."""
    _guard_enumeration(generator.k, generator.n)
    words = np.zeros(1, dtype=np.uint64)
    for row in generator.rows():
        words = np.concatenate((words, words[::-1] ^ np.uint64(row)))
    return words


def word_weights(words: np.ndarray) -> np.ndarray:
    return np.bitwise_count(words).astype(np.int64)


def weight_enumerator(generator: BitMatrix, words: Optional[np.ndarray] = None) -> WeightEnumerator:
    """
    Weight distribution of the code spanned by a full-rank generator.

    Args:
        generator (BitMatrix): full-rank generator matrix
        words (np.ndarray, optional): codewords already enumerated by codewords()

    Returns:
        WeightEnumerator: coefficients summing to 2^k
    """
    if words is None:
        require_full_rank(generator)
        words = codewords(generator)
    counts = np.bincount(word_weights(words), minlength=generator.n + 1)
    return WeightEnumerator(tuple(int(c) for c in counts))


def min_distance(generator: BitMatrix, words: Optional[np.ndarray] = None) -> int:
    if generator.k == 0:
        raise ZeroCodeError("the zero code has no minimum distance")
    return weight_enumerator(generator, words).min_weight


@lru_cache(maxsize=None)
def krawtchouk(n: int, j: int, i: int) -> int:
    """K_j(i) = sum_s (-1)^s C(i, s) C(n - i, j - s)."""
    return sum((-1) ** s * comb(i, s) * comb(n - i, j - s) for s in range(j + 1))


def macwilliams_dual_enumerator(enumerator: WeightEnumerator) -> WeightEnumerator:
    """
    Weight enumerator of the dual code by the MacWilliams identity.

    Raises:
        InvalidEnumeratorError: the input is not the enumerator of a linear
        code (A_0 != 1, total not a power of two, or a transformed
        coefficient that is fractional or negative)
    """
    n = enumerator.n
    total = enumerator.total
    if enumerator[0] != 1 or total & (total - 1):
        raise InvalidEnumeratorError(f"{enumerator} is not a linear code enumerator")
    dual = []
    for j in range(n + 1):
        value = sum(a * krawtchouk(n, j, i) for i, a in enumerate(enumerator.coeffs) if a)
        if value % total or value < 0:
            raise InvalidEnumeratorError(
                f"dual coefficient B_{j} = {value}/{total} is not a non-negative integer"
            )
        dual.append(value // total)
    return WeightEnumerator(tuple(dual))


def dual_distance(generator: BitMatrix, enumerator: Optional[WeightEnumerator] = None) -> Distance:
    """
    Minimum distance of the dual code; INF when k = n.

    Args:
        generator (BitMatrix): full-rank generator matrix
        enumerator (WeightEnumerator, optional): the code's own enumerator,
            reused for the MacWilliams route when it is already known
    """
    require_full_rank(generator)
    n, k = generator.n, generator.k
    if k == n:
        return INF
    if n - k <= k:
        return min_distance(dual_generator(generator))
    if enumerator is None:
        enumerator = weight_enumerator(generator)
    return macwilliams_dual_enumerator(enumerator).min_weight


def is_even(generator: BitMatrix) -> bool:
    """True if every codeword has even weight."""
    return all(row.bit_count() % 2 == 0 for row in generator.rows())


def contains_all_ones(generator: BitMatrix) -> bool:
    return contains_word(generator, (1 << generator.n) - 1)


def smallest_dependent_columns(generator: BitMatrix, limit: Optional[int] = None) -> Distance:
    """
    Size of the smallest linearly dependent set of columns, by brute force.

    This equals the dual distance and is kept as an independent check for
    small codes. Returns INF when no set of at most `limit` columns is
    dependent.
    """
    limit = generator.n if limit is None else min(limit, generator.n)
    columns = generator.columns
    for size in range(1, limit + 1):
        for subset in combinations(columns, size):
            acc = 0
            for column in subset:
                acc ^= column
            if acc == 0:
                return size
    return INF


def code_params(generator: BitMatrix) -> CodeParams:
    """[n,k,d]^dperp of a full-rank generator; d is INF for the zero code."""
    require_full_rank(generator)
    if generator.k == 0:
        return CodeParams(generator.n, 0, INF, 1 if generator.n else INF)
    words = codewords(generator)
    enumerator = weight_enumerator(generator, words)
    return CodeParams(
        generator.n,
        generator.k,
        enumerator.min_weight,
        dual_distance(generator, enumerator),
    )
