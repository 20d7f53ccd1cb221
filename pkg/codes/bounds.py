"""
Length bounds, distance ranges and nonexistence bookkeeping.

L(k, d⊥) is the largest length of a binary [n,k] code with dual distance at
least d⊥; it is read off a finished classification family (the length just
before the first empty level). Together with an upper bound on d it gives
the distance range a residual classification must cover:

    d >= n - L(k-1, d⊥)      (the residual has length n - d <= L(k-1, d⊥))

Key Features:
- LTable with provenance (computed from databases, literature values, or
  external input) and a monotonicity check
- external "n k dhi" bounds files
- the even-code reduction check for nonexistence targets
- consequences of a nonexistence result for neighbouring parameters and the
  n2(k, d) lower bounds they imply
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Protocol, Sequence, Tuple

from codes.errors import (
    ConfigError,
    IncompleteClassificationError,
    MissingBoundError,
    ReductionInapplicableError,
)
from codes.gf2core import BitMatrix

logger = logging.getLogger(__name__)

PROVENANCE_COMPUTED = "computed"
PROVENANCE_LITERATURE = "literature"
PROVENANCE_EXTERNAL = "external"


class LevelSummary(Protocol):
    n: int
    k: int
    dperp: int
    complete: bool

    @property
    def count(self) -> int: ...


@dataclass(frozen=True)
class LEntry:
    k: int
    dperp: int
    value: int
    provenance: str = PROVENANCE_COMPUTED


class LTable:
    """
    Maximal lengths L(k, d⊥).

    Example:
        table = published_ltable()
        table.get(14, 8).value   # 28
    """

    def __init__(self, entries: Iterable[LEntry] = ()):
        self._entries: Dict[Tuple[int, int], LEntry] = {}
        for entry in entries:
            self.set(entry)

    def set(self, entry: LEntry) -> None:
        self._entries[(entry.k, entry.dperp)] = entry

    def get(self, k: int, dperp: int) -> LEntry:
        try:
            return self._entries[(k, dperp)]
        except KeyError:
            raise MissingBoundError(f"L({k},{dperp}) is not known") from None

    def __contains__(self, key: Tuple[int, int]) -> bool:
        return key in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def entries(self) -> List[LEntry]:
        return [self._entries[key] for key in sorted(self._entries)]

    def merged(self, other: "LTable") -> "LTable":
        """Copy with `other` layered on top; computed values are never replaced."""
        result = LTable(self.entries())
        for entry in other.entries():
            key = (entry.k, entry.dperp)
            current = result._entries.get(key)
            if current is not None and current.provenance == PROVENANCE_COMPUTED \
                    and entry.provenance != PROVENANCE_COMPUTED:
                continue
            result.set(entry)
        return result

    def violations(self) -> List[str]:
        """
        Monotonicity problems: L(k, d⊥) >= k, L is non-increasing in d⊥ and
        L(k+1, d⊥) >= L(k, d⊥) + 1 (a code of length L(k, d⊥) extends by a
        unit row and column).
        """
        problems = []
        for (k, dperp), entry in sorted(self._entries.items()):
            if entry.value < k:
                problems.append(f"L({k},{dperp})={entry.value} is below k")
            for (k2, d2), other in self._entries.items():
                if k2 == k and d2 > dperp and other.value > entry.value:
                    problems.append(
                        f"L({k},{d2})={other.value} exceeds L({k},{dperp})={entry.value}"
                    )
                if d2 == dperp and k2 == k + 1 and other.value < entry.value + 1:
                    problems.append(
                        f"L({k2},{dperp})={other.value} is below L({k},{dperp})+1"
                    )
        return problems


# Literature values used when no classification has been run locally
_LITERATURE_L = {
    (10, 8): 12, (11, 8): 16, (12, 8): 24, (13, 8): 25, (14, 8): 28,
    (15, 10): 18, (16, 10): 21, (17, 10): 24, (18, 10): 28,
}


def published_ltable() -> LTable:
    """L values of the published d⊥ >= 8 and d⊥ >= 10 classifications."""
    return LTable(
        LEntry(k, dperp, value, PROVENANCE_LITERATURE)
        for (k, dperp), value in _LITERATURE_L.items()
    )


def l_value(levels: Sequence[LevelSummary]) -> LEntry:
    """
    L(k, d⊥) from one classification family.

    Args:
        levels: summaries of every level n = k, k+1, ... of one (k, d⊥)
            family, in any order

    Raises:
        IncompleteClassificationError: a level is incomplete or missing, or
        the family never reached an empty level
    """
    if not levels:
        raise IncompleteClassificationError("no levels given")
    ordered = sorted(levels, key=lambda level: level.n)
    k, dperp = ordered[0].k, ordered[0].dperp
    if ordered[0].n != k:
        raise IncompleteClassificationError(f"family k={k} does not start at n={k}")
    longest = None
    for expected, level in enumerate(ordered, start=k):
        if level.n != expected:
            raise IncompleteClassificationError(f"level n={expected} is missing")
        if not level.complete:
            raise IncompleteClassificationError(f"level n={level.n} is incomplete")
        if level.count == 0:
            return LEntry(k, dperp, longest if longest is not None else k - 1)
        longest = level.n
    raise IncompleteClassificationError(
        f"family k={k} dperp={dperp} has no empty level up to n={ordered[-1].n}"
    )


@dataclass(frozen=True)
class DistanceRange:
    dlo: int
    dhi: int

    @property
    def is_empty(self) -> bool:
        return self.dlo > self.dhi

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.dlo, self.dhi + 1))

    def __contains__(self, d: int) -> bool:
        return self.dlo <= d <= self.dhi


def distance_range(n: int, k: int, dperp: int, ltable: LTable, external_dhi: Optional[int] = None) -> DistanceRange:
    """
    Minimum distances an [n,k]^{>=d⊥} code can have.

    dlo = max(1, n - L(k-1, d⊥)); dhi comes from an external bound (the
    trivial bound n - k + 1 when none is given).

    Raises:
        MissingBoundError: L(k-1, d⊥) is not in the table
    """
    entry = ltable.get(k - 1, dperp)
    dlo = max(1, n - entry.value)
    dhi = n - k + 1 if external_dhi is None else external_dhi
    return DistanceRange(dlo, dhi)


class ExternalBounds:
    """Upper bounds on the minimum distance, keyed by (n, k)."""

    def __init__(self, bounds: Optional[Dict[Tuple[int, int], int]] = None):
        self._bounds = dict(bounds or {})

    def dhi(self, n: int, k: int) -> Optional[int]:
        return self._bounds.get((n, k))

    def __len__(self) -> int:
        return len(self._bounds)

    def items(self):
        return sorted(self._bounds.items())


def load_external_bounds(path: str) -> ExternalBounds:
    """
    Read an "n k dhi" bounds file; '#' starts a comment.

    Raises:
        ConfigError: a line does not hold three integers
    """
    bounds = {}
    with open(path, "r", encoding="utf-8") as handle:
        for number, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3 or not all(part.isdigit() for part in parts):
                raise ConfigError(f"{path}:{number}: expected 'n k dhi', got {raw.strip()!r}")
            n, k, dhi = (int(part) for part in parts)
            bounds[(n, k)] = dhi
    logger.debug("loaded %d external distance bounds from %s", len(bounds), path)
    return ExternalBounds(bounds)


@dataclass(frozen=True)
class EvenTarget:
    """An [n,k,d] target with even d: only even codes need to be excluded."""

    n: int
    k: int
    d: int


def even_reduction_check(n: int, k: int, d: int) -> EvenTarget:
    """
    An [n,k,d] code with d even exists iff an even [n,k,d] code exists
    (puncture a coordinate and add a parity bit). The dual of an even code
    contains the all-ones word.

    Raises:
        ReductionInapplicableError: d is odd
    """
    if d < 2 or d % 2:
        raise ReductionInapplicableError(f"even reduction needs an even d, got d={d}")
    return EvenTarget(n, k, d)


@dataclass(frozen=True)
class Consequence:
    n: int
    k: int
    d: int
    reason: str

    def __str__(self) -> str:
        return f"no [{self.n},{self.k},{self.d}] code ({self.reason})"


def nonexistence_consequences(n: int, k: int, d: int) -> List[Consequence]:
    """Parameters that cannot exist once [n,k,d] is known not to exist."""
    found = [Consequence(n + 1, k + 1, d, f"it would shorten to [{n},{k},{d}]")]
    if d >= 2 and d % 2 == 0:
        found.append(Consequence(n - 1, k, d - 1, f"a parity bit would give [{n},{k},{d}]"))
        found.append(Consequence(
            n, k + 1, d - 1, f"it would shorten to [{n - 1},{k},{d - 1}]"
        ))
    return found


def n2_lower_bounds(n: int, k: int, d: int, steps: int) -> List[str]:
    """
    Lower bounds on n2(k+i, d), the shortest length of a binary code of
    dimension k+i and minimum distance d, implied by the nonexistence of
    [n,k,d]. Equality needs a matching construction, which is not checked.
    """
    lines = []
    for i in range(steps + 1):
        lines.append(f"n2({k + i},{d}) >= {n + i + 1}")
    return lines


def zero_column_guard(generator: BitMatrix) -> bool:
    """True if the generator has no zero column (required whenever d⊥ >= 2)."""
    return all(column != 0 for column in generator.columns)
