"""
Bit-packed linear algebra over GF(2).

Matrices are stored column-wise: a k×n matrix is a tuple of n integers, the
j-th integer holding column j with row i at bit i. This is the packing form
the extension and proper-set searches work with, since both spend their time
XOR-ing columns together. Row views (bit j = column j) are produced on demand
for elimination.

Key Features:
- BitVector / BitMatrix value types, immutable after construction
- rank, reduced row echelon form with lowest-index pivots, dual generator
- span tests and the odd-column basis used by the even-code reduction
- the linear map induced on column space by a code automorphism
- plain-text matrix IO (one row of 0/1 characters per line)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from operator import xor
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import config
from codes.errors import DimensionGuardError, MatrixFormatError, RankDeficientError

# Dual distance of the full space [n,n]; compares greater than every integer.
INF = math.inf

Distance = Union[int, float]


@dataclass(frozen=True)
class BitVector:
    """A vector of `length` bits packed into one integer (bit j = entry j)."""

    length: int
    bits: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("BitVector length must be non-negative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits beyond position {self.length} must be zero")

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        text = text.strip()
        if any(ch not in "01" for ch in text):
            raise MatrixFormatError(f"not a 0/1 string: {text!r}")
        bits = sum(1 << j for j, ch in enumerate(text) if ch == "1")
        return cls(len(text), bits)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> List[int]:
        return [j for j in range(self.length) if (self.bits >> j) & 1]

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> j) & 1 else "0" for j in range(self.length))


@dataclass(frozen=True)
class BitMatrix:
    """
    A k×n matrix over GF(2) stored as n packed column words of k bits.

    Attributes:
        k (int): number of rows, at most config.WORD_BITS
        n (int): number of columns
        columns (Tuple[int, ...]): column j holds row i at bit i
    """

    k: int
    n: int
    columns: Tuple[int, ...]

    def __post_init__(self):
        if self.k < 0 or self.n < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if self.k > config.WORD_BITS:
            raise DimensionGuardError(
                f"{self.k} rows exceed the {config.WORD_BITS}-bit column word"
            )
        columns = tuple(int(c) for c in self.columns)
        if len(columns) != self.n:
            raise ValueError(f"expected {self.n} columns, got {len(columns)}")
        limit = 1 << self.k
        for j, column in enumerate(columns):
            if column < 0 or column >= limit:
                raise ValueError(f"column {j} does not fit in {self.k} rows")
        object.__setattr__(self, "columns", columns)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[int], n: int) -> "BitMatrix":
        """Build a matrix from row words (bit j of a row = column j)."""
        columns = [0] * n
        for i, row in enumerate(rows):
            if row >> n:
                raise ValueError(f"row {i} is wider than {n} columns")
            bit = 1 << i
            j = 0
            while row:
                if row & 1:
                    columns[j] |= bit
                row >>= 1
                j += 1
        return cls(len(rows), n, tuple(columns))

    @classmethod
    def from_strings(cls, lines: Iterable[str]) -> "BitMatrix":
        """Build a matrix from 0/1 row strings, exactly as matrices are printed."""
        rows = [line.strip() for line in lines if line.strip()]
        if not rows:
            return cls(0, 0, ())
        n = len(rows[0])
        for number, row in enumerate(rows, start=1):
            if len(row) != n:
                raise MatrixFormatError(f"row {number} has {len(row)} entries, expected {n}")
            if any(ch not in "01" for ch in row):
                raise MatrixFormatError(f"row {number} contains characters other than 0/1")
        words = [sum(1 << j for j, ch in enumerate(row) if ch == "1") for row in rows]
        return cls.from_rows(words, n)

    @classmethod
    def identity(cls, k: int) -> "BitMatrix":
        return cls(k, k, tuple(1 << i for i in range(k)))

    @classmethod
    def zeros(cls, k: int, n: int) -> "BitMatrix":
        return cls(k, n, (0,) * n)

    # -- views --------------------------------------------------------------

    def rows(self) -> List[int]:
        """Row words, bit j = column j."""
        rows = [0] * self.k
        for j, column in enumerate(self.columns):
            i = 0
            while column:
                if column & 1:
                    rows[i] |= 1 << j
                column >>= 1
                i += 1
        return rows

    def row_strings(self) -> List[str]:
        return [
            "".join("1" if (row >> j) & 1 else "0" for j in range(self.n))
            for row in self.rows()
        ]

    def column_vector(self, j: int) -> BitVector:
        return BitVector(self.k, self.columns[j])

    # -- derived matrices ---------------------------------------------------

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.n, self.k, tuple(self.rows()))

    def with_columns(self, extra: Iterable[int]) -> "BitMatrix":
        extra = tuple(int(c) for c in extra)
        return BitMatrix(self.k, self.n + len(extra), self.columns + extra)

    def select_columns(self, indices: Iterable[int]) -> "BitMatrix":
        picked = tuple(self.columns[j] for j in indices)
        return BitMatrix(self.k, len(picked), picked)

    def __str__(self) -> str:
        return "\n".join(self.row_strings())


@dataclass(frozen=True)
class CodeParams:
    """Parameters of an [n,k,d] code with dual distance dperp (INF for k = n)."""

    n: int
    k: int
    d: Distance
    dperp: Distance

    def __str__(self) -> str:
        dperp = "inf" if self.dperp == INF else str(self.dperp)
        return f"[{self.n},{self.k},{self.d}]^{dperp}"


@dataclass(frozen=True)
class RowReduction:
    """Reduced row echelon form: nonzero rows only, plus their pivot columns."""

    matrix: BitMatrix
    pivots: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _eliminate(rows: List[int], n: int) -> Tuple[List[int], List[int]]:
    """Gauss-Jordan elimination on row words; lowest column index pivots first."""
    work = list(rows)
    pivots: List[int] = []
    row_idx = 0
    for col in range(n):
        if row_idx == len(work):
            break
        bit = 1 << col
        pivot = None
        for r in range(row_idx, len(work)):
            if work[r] & bit:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        pivot_row = work[row_idx]
        for r in range(len(work)):
            if r != row_idx and work[r] & bit:
                work[r] ^= pivot_row
        pivots.append(col)
        row_idx += 1
    return work[:row_idx], pivots


def rank(matrix: BitMatrix) -> int:
    """GF(2) row rank of a matrix."""
    _, pivots = _eliminate(matrix.rows(), matrix.n)
    return len(pivots)


def rref(matrix: BitMatrix) -> RowReduction:
    """
    Reduced row echelon form with deterministic lowest-index pivots.

    The returned matrix keeps only the rank-many nonzero rows; it spans the
    same row space as the input and carries the identity pattern on its
    pivot columns.
    """
    rows, pivots = _eliminate(matrix.rows(), matrix.n)
    return RowReduction(BitMatrix.from_rows(rows, matrix.n), tuple(pivots))


def dual_generator(generator: BitMatrix) -> BitMatrix:
    """
    Generator matrix of the dual code (a parity check matrix of the code).

    Args:
        generator (BitMatrix): full-rank k×n generator matrix

    Returns:
        BitMatrix: (n−k)×n matrix of rank n−k, orthogonal to every row of G

    Raises:
        RankDeficientError: the input rows are linearly dependent
    """
    rows, pivots = _eliminate(generator.rows(), generator.n)
    if len(pivots) != generator.k:
        raise RankDeficientError(
            f"generator has rank {len(pivots)}, expected {generator.k}"
        )
    pivot_set = set(pivots)
    dual_rows = []
    for free in range(generator.n):
        if free in pivot_set:
            continue
        word = 1 << free
        for row, pivot in zip(rows, pivots):
            if (row >> free) & 1:
                word |= 1 << pivot
        dual_rows.append(word)
    if not dual_rows:
        return BitMatrix.zeros(0, generator.n)
    return BitMatrix.from_rows(dual_rows, generator.n)


def require_full_rank(generator: BitMatrix) -> None:
    found = rank(generator)
    if found != generator.k:
        raise RankDeficientError(f"generator has rank {found}, expected {generator.k}")


def contains_word(generator: BitMatrix, word: int) -> bool:
    """True if `word` (bit j = coordinate j) lies in the row span."""
    rows = generator.rows()
    base = len(_eliminate(rows, generator.n)[1])
    return len(_eliminate(rows + [word], generator.n)[1]) == base


def span_equal(first: BitMatrix, second: BitMatrix) -> bool:
    """True if both matrices span the same row space."""
    if first.n != second.n:
        return False
    r1 = rank(first)
    if r1 != rank(second):
        return False
    _, pivots = _eliminate(first.rows() + second.rows(), first.n)
    return len(pivots) == r1


def _solve_combination(basis: Sequence[int], target: int) -> Optional[int]:
    """
    Express `target` as a sum of `basis` words.

    Returns:
        Optional[int]: bit mask of the basis indices used, or None when the
        target is outside the span
    """
    echelon: List[Tuple[int, int]] = []  # (word, combination mask), distinct leading bits
    for index, word in enumerate(basis):
        mask = 1 << index
        for pivot_word, pivot_mask in echelon:
            if word ^ pivot_word < word:
                word ^= pivot_word
                mask ^= pivot_mask
        if word:
            echelon.append((word, mask))
            echelon.sort(reverse=True)
    used = 0
    for pivot_word, pivot_mask in echelon:
        if target ^ pivot_word < target:
            target ^= pivot_word
            used ^= pivot_mask
    return used if target == 0 else None


def odd_column_basis(generator: BitMatrix) -> BitMatrix:
    """
    Re-base a code containing the all-ones word so its rows sum to all-ones.

    Every column of the result then has odd weight. The code is unchanged.

    Raises:
        ValueError: the all-ones word is not in the code
        RankDeficientError: the rows are dependent
    """
    require_full_rank(generator)
    rows = generator.rows()
    ones = (1 << generator.n) - 1
    delta = reduce(xor, rows, 0) ^ ones
    if delta == 0:
        return generator
    used = _solve_combination(rows, delta)
    if used is None:
        raise ValueError("the all-ones word is not in the code")
    # delta is never the sum of all rows, so some row is free to absorb it
    free = next(i for i in range(len(rows)) if not (used >> i) & 1)
    rows[free] ^= delta
    return BitMatrix.from_rows(rows, generator.n)


def induced_linear_map(generator: BitMatrix, sigma: Sequence[int]) -> BitMatrix:
    """
    The k×k map T with T·g_i = g_sigma(i) for a coordinate automorphism sigma.

    Columns of the result are the images of the unit vectors.
    """
    _, pivots = _eliminate(generator.rows(), generator.n)
    if len(pivots) != generator.k:
        raise RankDeficientError("automorphism map needs a full-rank generator")
    source = [generator.columns[i] for i in pivots]
    image = [generator.columns[sigma[i]] for i in pivots]
    columns = []
    for unit in range(generator.k):
        used = _solve_combination(source, 1 << unit)
        columns.append(reduce(xor, (image[j] for j in range(generator.k) if (used >> j) & 1), 0))
    return BitMatrix(generator.k, generator.k, tuple(columns))


def apply_map(linear_map: BitMatrix, vector: int) -> int:
    """Apply a k×k matrix (given by column images) to a k-bit vector."""
    result = 0
    j = 0
    while vector:
        if vector & 1:
            result ^= linear_map.columns[j]
        vector >>= 1
        j += 1
    return result


def parse_matrix_text(text: str) -> BitMatrix:
    """Parse one 0/1 row per line; blank lines and '#' comments are skipped."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise MatrixFormatError("no matrix rows found")
    return BitMatrix.from_strings(lines)


def read_matrix(path: str) -> BitMatrix:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_matrix_text(handle.read())


def format_matrix(matrix: BitMatrix) -> str:
    return "\n".join(matrix.row_strings()) + "\n"
