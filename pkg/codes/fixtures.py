"""
Reference data: the two [32,15]^8 generator matrices, their enumerators and
the published class counts used to cross-check local classifications.

Counts are keyed by k, then n, and hold (count, starred). A starred cell
contains at least one code whose dual distance is larger than the threshold.
"""

from __future__ import annotations

import os
from typing import Dict, Tuple

import config
from codes.gf2core import BitMatrix, read_matrix

G32_ENUMERATORS = (
    "1+124z^8+1152z^10+3584z^12+6016z^14+11014z^16+6016z^18+3584z^20+1152z^22+124z^24+z^32",
    "1+116z^8+1216z^10+3360z^12+6464z^14+10454z^16+6464z^18+3360z^20+1216z^22+116z^24+z^32",
)

CountTable = Dict[int, Dict[int, Tuple[int, bool]]]


def _column(start: int, counts: str) -> Dict[int, Tuple[int, bool]]:
    cells = {}
    for offset, cell in enumerate(counts.split()):
        cells[start + offset] = (int(cell.rstrip("*")), cell.endswith("*"))
    return cells


# Inequivalent [n,k]^{>=8} codes
DPERP8_COUNTS: CountTable = {
    10: _column(10, "1* 4* 1 0"),
    11: _column(11, "1* 5* 3 1 1 1 0"),
    12: _column(12, "1* 6* 7* 4 5 5 2 1 1 1 1 1 1 0"),
    13: _column(13, "1* 7* 14* 16 23 39 30 27 13 10 9 10 8 0"),
    14: _column(14, "1* 8* 24* 50* 131 450 1863 11497 46701 40289 5177 536 274 1 1 0"),
}

# Inequivalent [n,k]^{>=10} codes. The k=14 and k=15 columns are left out:
# their printed rows repeat n=16 and cannot be placed reliably.
DPERP10_COUNTS: CountTable = {
    16: _column(16, "1* 8* 14 7 3 2 0"),
    17: _column(17, "1* 9* 24* 29* 30 39 29 6 0"),
    18: _column(18, "1* 10* 38* 90* 237* 1031* 11114 188572 563960 30481 11 0"),
}

PUBLISHED_COUNTS: Dict[int, CountTable] = {8: DPERP8_COUNTS, 10: DPERP10_COUNTS}


def fixture_path(name: str) -> str:
    return os.path.join(config.DATA_DIR, name)


def load_g32() -> Tuple[BitMatrix, BitMatrix]:
    """The two inequivalent [32,15,8] codes with dual distance 8."""
    first, second = (read_matrix(fixture_path(name)) for name in config.FIXTURE_G32_FILES)
    return first, second


def load_hamming() -> BitMatrix:
    return read_matrix(fixture_path("hamming_7_4.txt"))


def bounds_path() -> str:
    return fixture_path(config.BOUNDS_FILENAME)
