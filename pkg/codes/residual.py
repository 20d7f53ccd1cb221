"""
Residual codes and the scaffold matrix the proper-set search starts from.

For a codeword c of weight w, Res(C, c) is C restricted to the coordinates
where c is zero. With c of minimum weight d in an [n,k,d] code, the residual
is an [n-d, k-1] code whose minimum distance is at least ceil(d/2).

Conversely, every [n,k] code with a weight-d word is, up to equivalence,
    | 1 ... 1 | 0 ... 0 |
    |    X    |  Res    |
so the search fixes A = [Res padded with a zero top bit | e_top] and looks
for the d-1 columns of X among vectors whose top entry is 1.
"""

from __future__ import annotations

from codes.errors import NotACodewordError
from codes.gf2core import BitMatrix, BitVector, contains_word, rref


def residual_code(generator: BitMatrix, codeword) -> BitMatrix:
    """
    Generator matrix of the residual code with respect to a codeword.

    Args:
        generator (BitMatrix): generator of C
        codeword (BitVector | int): nonzero word of C (bit j = coordinate j)

    Returns:
        BitMatrix: full-rank generator of length n - wt(c); its dimension is
        k-1 when c has minimum weight below 2d

    Raises:
        NotACodewordError: c is zero or not in C
    """
    word = codeword.bits if isinstance(codeword, BitVector) else int(codeword)
    if word == 0:
        raise NotACodewordError("residual code needs a nonzero codeword")
    if word >> generator.n or not contains_word(generator, word):
        raise NotACodewordError("word is not a codeword of the code")
    outside = [j for j in range(generator.n) if not (word >> j) & 1]
    restricted = generator.select_columns(outside)
    reduced = rref(restricted)
    return reduced.matrix


def scaffold(residual: BitMatrix, d: int) -> BitMatrix:
    """
    The matrix A = [Res 0-padded on top | e_top] of shape (k'+1)×(n'+1).

    Row 0 is the new top row: zero on the residual columns and 1 on the
    final column. Rows 1..k' carry the residual generator.
    """
    if d < 1:
        raise ValueError("minimum distance must be positive")
    columns = [column << 1 for column in residual.columns] + [1]
    return BitMatrix(residual.k + 1, residual.n + 1, tuple(columns))


def assemble_code(base: BitMatrix, vectors) -> BitMatrix:
    """A followed by the chosen columns: the candidate [n,k] generator."""
    return base.with_columns(int(v) for v in vectors)
