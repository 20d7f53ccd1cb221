from __future__ import annotations

from dataclasses import dataclass

import pytest

from codes.bounds import (
    PROVENANCE_COMPUTED,
    PROVENANCE_EXTERNAL,
    PROVENANCE_LITERATURE,
    LEntry,
    LTable,
    distance_range,
    even_reduction_check,
    l_value,
    load_external_bounds,
    n2_lower_bounds,
    nonexistence_consequences,
    published_ltable,
    zero_column_guard,
)
from codes.errors import (
    ConfigError,
    IncompleteClassificationError,
    MissingBoundError,
    ReductionInapplicableError,
)
from codes.fixtures import bounds_path
from codes.gf2core import BitMatrix


@dataclass
class Level:
    n: int
    k: int
    dperp: int
    count: int
    complete: bool = True


def _family(k: int, counts):
    return [Level(k + i, k, 8, count) for i, count in enumerate(counts)]


class TestLValue:
    def test_read_off_first_empty_level(self):
        entry = l_value(_family(10, [1, 4, 1, 0]))
        assert (entry.k, entry.dperp, entry.value) == (10, 8, 12)
        assert entry.provenance == PROVENANCE_COMPUTED

    def test_order_does_not_matter(self):
        assert l_value(list(reversed(_family(11, [1, 5, 3, 1, 1, 1, 0])))).value == 16

    def test_unfinished_family(self):
        with pytest.raises(IncompleteClassificationError):
            l_value(_family(10, [1, 4, 1]))

    def test_incomplete_level(self):
        levels = _family(10, [1, 4, 1, 0])
        levels[2].complete = False
        with pytest.raises(IncompleteClassificationError):
            l_value(levels)

    def test_missing_level(self):
        levels = _family(10, [1, 4, 1, 0])
        del levels[1]
        with pytest.raises(IncompleteClassificationError):
            l_value(levels)


class TestLTable:
    def test_published_values(self):
        table = published_ltable()
        assert table.get(14, 8).value == 28
        assert table.get(18, 10).provenance == PROVENANCE_LITERATURE
        assert (13, 8) in table
        assert table.violations() == []

    def test_missing_value(self):
        with pytest.raises(MissingBoundError):
            published_ltable().get(9, 8)

    def test_computed_values_win(self):
        computed = LTable([LEntry(10, 8, 12, PROVENANCE_COMPUTED)])
        merged = computed.merged(LTable([LEntry(10, 8, 13, PROVENANCE_EXTERNAL)]))
        assert merged.get(10, 8).value == 12
        merged = published_ltable().merged(computed)
        assert merged.get(10, 8).provenance == PROVENANCE_COMPUTED

    def test_violations(self):
        table = LTable([LEntry(10, 8, 12), LEntry(11, 8, 12), LEntry(10, 10, 13), LEntry(5, 8, 4)])
        problems = table.violations()
        assert any("L(11,8)" in p for p in problems)
        assert any("L(10,10)" in p for p in problems)
        assert any("below k" in p for p in problems)


class TestDistanceRange:
    def test_residual_lower_bound(self):
        span = distance_range(33, 15, 8, published_ltable())
        assert (span.dlo, span.dhi) == (5, 19)
        assert 8 in span

    def test_external_upper_bound(self):
        span = distance_range(33, 19, 10, published_ltable(), external_dhi=6)
        assert (span.dlo, span.dhi) == (5, 6)
        assert list(span) == [5, 6]

    def test_empty_range(self):
        span = distance_range(20, 16, 10, published_ltable(), external_dhi=1)
        assert span.is_empty
        assert list(span) == []

    def test_missing_l_value(self):
        with pytest.raises(MissingBoundError):
            distance_range(20, 5, 8, published_ltable())


class TestExternalBounds:
    def test_bundled_file(self):
        bounds = load_external_bounds(bounds_path())
        assert bounds.dhi(32, 15) == 8
        assert bounds.dhi(33, 19) == 6
        assert bounds.dhi(30, 10) is None

    def test_malformed_line(self, tmp_path):
        path = tmp_path / "bounds.txt"
        path.write_text("# n k dhi\n32 15\n", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_external_bounds(str(path))


def test_even_reduction():
    target = even_reduction_check(33, 18, 8)
    assert (target.n, target.k, target.d) == (33, 18, 8)
    with pytest.raises(ReductionInapplicableError):
        even_reduction_check(33, 18, 7)


def test_consequences_of_even_distance():
    found = {(c.n, c.k, c.d) for c in nonexistence_consequences(33, 18, 8)}
    assert found == {(34, 19, 8), (32, 18, 7), (33, 19, 7)}


def test_consequences_of_odd_distance():
    found = [(c.n, c.k, c.d) for c in nonexistence_consequences(8, 2, 7)]
    assert found == [(9, 3, 7)]


def test_n2_lines():
    assert n2_lower_bounds(33, 18, 8, 2) == ["n2(18,8) >= 34", "n2(19,8) >= 35", "n2(20,8) >= 36"]


def test_zero_column_guard():
    assert zero_column_guard(BitMatrix.identity(3))
    assert not zero_column_guard(BitMatrix(2, 3, (1, 0, 2)))
