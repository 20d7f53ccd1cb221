from __future__ import annotations

import os
import sys

import numpy as np
import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from classifier import classify_dimension  # noqa: E402
from codes.fixtures import load_g32, load_hamming  # noqa: E402


@pytest.fixture(scope="session")
def g32_codes():
    return load_g32()


@pytest.fixture(scope="session")
def hamming():
    return load_hamming()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def small_families():
    """Complete (k, d⊥) families, each classified up to its first empty level."""
    return {
        (k, dperp): classify_dimension(k, dperp, n_max)
        for k, dperp, n_max in ((3, 3, 8), (4, 3, 16), (3, 4, 5), (4, 4, 9), (5, 4, 17))
    }
