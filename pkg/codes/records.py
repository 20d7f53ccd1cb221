"""
Code records and the duplicate-free code set used while classifying.

A CodeRecord is identified by its canonical form alone. Metrics (weight
enumerator, exact dual distance, generator matrix) are computed lazily and
cached on the instance; workers that already enumerated the codewords hand
them over through CodeRecord.build().
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional

import numpy as np

from codes.equivalence import CanonicalForm, InvariantKey, canonical_labeling, invariant_key
from codes.gf2core import BitMatrix, CodeParams, Distance
from codes.metrics import WeightEnumerator, codewords, dual_distance, weight_enumerator


@dataclass(frozen=True)
class CodeRecord:
    """One equivalence class, stored as its canonical form."""

    canon: CanonicalForm

    @classmethod
    def build(
        cls,
        canon: CanonicalForm,
        enumerator: Optional[WeightEnumerator] = None,
        exact_dperp: Optional[Distance] = None,
    ) -> "CodeRecord":
        record = cls(canon)
        if enumerator is not None:
            record.__dict__["enumerator"] = enumerator
        if exact_dperp is not None:
            record.__dict__["exact_dperp"] = exact_dperp
        return record

    @property
    def n(self) -> int:
        return self.canon.n

    @property
    def k(self) -> int:
        return self.canon.k

    @cached_property
    def matrix(self) -> BitMatrix:
        return self.canon.to_matrix()

    @cached_property
    def enumerator(self) -> WeightEnumerator:
        return weight_enumerator(self.matrix)

    @cached_property
    def exact_dperp(self) -> Distance:
        return dual_distance(self.matrix, self.enumerator)

    @property
    def params(self) -> CodeParams:
        return CodeParams(self.n, self.k, self.enumerator.min_weight, self.exact_dperp)


@dataclass(frozen=True)
class KeyedRecord:
    """A record together with its invariant key, as returned by workers."""

    key: InvariantKey
    record: CodeRecord


def make_record(generator: BitMatrix, words: Optional[np.ndarray] = None, word_cap: Optional[int] = None) -> KeyedRecord:
    """Canonicalize a generator and precompute its metrics from one enumeration."""
    if words is None:
        words = codewords(generator)
    labeling = canonical_labeling(generator, words, word_cap)
    enumerator = weight_enumerator(generator, words)
    record = CodeRecord.build(
        labeling.form,
        enumerator=enumerator,
        exact_dperp=dual_distance(generator, enumerator),
    )
    return KeyedRecord(invariant_key(generator, words), record)


class CodeSet:
    """
    Records bucketed by invariant key; canonical forms decide within a bucket.

    Example:
        codes = CodeSet()
        codes.add(make_record(matrix))
        ordered = codes.records()
    """

    def __init__(self, items: Iterable[KeyedRecord] = ()):
        self._buckets: Dict[InvariantKey, Dict[str, CodeRecord]] = {}
        self._size = 0
        for item in items:
            self.add(item)

    def add(self, item: KeyedRecord) -> bool:
        """Add a record; returns False when an equivalent code is present."""
        bucket = self._buckets.setdefault(item.key, {})
        text = item.record.canon.hex()
        if text in bucket:
            return False
        bucket[text] = item.record
        self._size += 1
        return True

    def __len__(self) -> int:
        return self._size

    @property
    def bucket_count(self) -> int:
        return len(self._buckets)

    def items(self) -> Iterator[KeyedRecord]:
        for key, bucket in self._buckets.items():
            for record in bucket.values():
                yield KeyedRecord(key, record)

    def records(self) -> List[CodeRecord]:
        """All records sorted by canonical text."""
        merged = [record for bucket in self._buckets.values() for record in bucket.values()]
        merged.sort(key=lambda record: record.canon.hex())
        return merged
