"""
Column extension: [n,k]^{>=d⊥} codes to [n+1,k]^{>=d⊥} codes.

A new column b keeps the dual distance at least d⊥ exactly when b is not the
sum of at most d⊥-2 distinct existing columns (any dependent set through b
would otherwise have at most d⊥-1 members). The forbidden sums are built level
by level: level i holds the sums of i columns whose largest column index is
known, so level i+1 only adds columns with a larger index and every subset is
produced once.

Candidates equivalent under the automorphism group of the parent are
reduced to one orbit representative before the children are canonicalized.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

import config
from codes.equivalence import canonical_labeling
from codes.errors import DimensionGuardError
from codes.gf2core import BitMatrix, induced_linear_map
from codes.metrics import codewords, contains_all_ones
from codes.records import CodeRecord, CodeSet, KeyedRecord, make_record
from codes.workers import WorkerPool

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CandidateMask:
    """
    Admissible new columns for one parent code.

    Attributes:
        k (int): column length
        dperp (int): dual distance the extension must keep
        admissible (np.ndarray): bool array over all 2^k column values
        operations (int): XOR operations spent on the forbidden sums
    """

    k: int
    dperp: int
    admissible: np.ndarray = field(repr=False)
    operations: int = 0

    def values(self) -> np.ndarray:
        return np.flatnonzero(self.admissible)

    def __len__(self) -> int:
        return int(np.count_nonzero(self.admissible))

    def __contains__(self, column: int) -> bool:
        return 0 <= column < self.admissible.size and bool(self.admissible[column])


def _guard_mask(k: int) -> None:
    if k > config.MAX_ENUM_DIM:
        raise DimensionGuardError(
            f"a candidate mask over 2^{k} columns exceeds MAX_ENUM_DIM={config.MAX_ENUM_DIM}"
        )


def subset_sum_layers(columns: Sequence[int], depth: int, k: int) -> Tuple[List[np.ndarray], int]:
    """
    Cumulative masks of sums of distinct columns.

    Returns:
        Tuple[List[np.ndarray], int]: layers[j] marks the zero vector and
        every sum of at most j distinct columns, for j = 0..depth, plus the
        number of XOR operations, which is sum_{i=1..depth} C(n, i)
    """
    _, layers, operations = _walk_subset_sums(columns, depth, k)
    return layers, operations


def subset_sums(columns: Sequence[int], depth: int, k: int) -> Tuple[np.ndarray, int]:
    """Mask of all sums of 1..depth distinct columns and the XOR count."""
    reached, _, operations = _walk_subset_sums(columns, depth, k)
    return reached, operations


def _walk_subset_sums(columns: Sequence[int], depth: int, k: int):
    _guard_mask(k)
    size = 1 << k
    reached = np.zeros(size, dtype=bool)

    def snapshot() -> np.ndarray:
        layer = reached.copy()
        layer[0] = True
        return layer

    layers = [snapshot()]
    if depth <= 0:
        return reached, layers, 0

    cols = np.asarray(columns, dtype=np.int64)
    n = cols.size
    # frontier[j]: sums of the current level whose largest column index is j
    frontier = [cols[j:j + 1] for j in range(n)]
    reached[cols] = True
    operations = n
    layers.append(snapshot())

    for level in range(2, depth + 1):
        flat = np.concatenate(frontier) if frontier else np.empty(0, dtype=np.int64)
        offsets = np.cumsum([0] + [part.size for part in frontier])
        keep = level < depth
        next_frontier = []
        for j in range(n):
            part = flat[: offsets[j]] ^ cols[j]
            reached[part] = True
            operations += part.size
            if keep:
                next_frontier.append(part)
        frontier = next_frontier
        layers.append(snapshot())
    return reached, layers, operations


def candidate_columns(generator: BitMatrix, dperp: int) -> CandidateMask:
    """
    Columns b for which [G | b] still has dual distance at least dperp.

    The parent is assumed to have dual distance at least dperp. The zero
    column is never admissible.

    Args:
        generator (BitMatrix): parent generator, k <= config.MAX_ENUM_DIM
        dperp (int): required dual distance, at least 2

    Returns:
        CandidateMask: admissible columns and the operation count
    """
    if dperp < 2:
        raise ValueError("dual distance must be at least 2")
    forbidden, operations = subset_sums(generator.columns, dperp - 2, generator.k)
    admissible = ~forbidden
    admissible[0] = False
    return CandidateMask(generator.k, dperp, admissible, operations)


def column_orbit_representatives(
    mask: CandidateMask,
    generator: BitMatrix,
    automorphisms: Sequence[Sequence[int]],
) -> np.ndarray:
    """
    One admissible column per orbit of the automorphism group acting on
    column space; the representative is the smallest column value.
    """
    admissible = mask.admissible
    if not automorphisms:
        return np.flatnonzero(admissible)
    size = admissible.size
    index = np.arange(size, dtype=np.int64)
    moves = []
    for sigma in automorphisms:
        linear_map = induced_linear_map(generator, sigma)
        image = np.zeros(size, dtype=np.int64)
        for bit, column in enumerate(linear_map.columns):
            image ^= ((index >> bit) & 1) * column
        inverse = np.empty(size, dtype=np.int64)
        inverse[image] = index
        moves.append((image, inverse))

    labels = index.copy()
    while True:
        updated = labels
        for image, inverse in moves:
            updated = np.minimum(updated, updated[image])
            updated = np.minimum(updated, updated[inverse])
        if np.array_equal(updated, labels):
            break
        labels = updated
    return np.flatnonzero(admissible & (labels == index))


def extend_code(
    generator: BitMatrix,
    dperp: int,
    automorphisms: Optional[Sequence[Sequence[int]]] = None,
    even_dual: bool = False,
) -> List[BitMatrix]:
    """
    All one-column extensions of a code that keep dual distance >= dperp.

    Args:
        generator (BitMatrix): parent code
        dperp (int): required dual distance
        automorphisms (sequence, optional): coordinate automorphisms of the
            parent; candidates in the same orbit give equivalent children and
            only one is kept
        even_dual (bool): keep only children that contain the all-ones word

    Returns:
        List[BitMatrix]: children in increasing order of the new column
    """
    mask = candidate_columns(generator, dperp)
    representatives = column_orbit_representatives(mask, generator, automorphisms or ())
    children = []
    for column in representatives:
        child = generator.with_columns([int(column)])
        if even_dual and not contains_all_ones(child):
            continue
        children.append(child)
    return children


@dataclass(frozen=True)
class ExtensionTask:
    record: CodeRecord
    dperp: int
    even_dual: bool
    word_cap: int


def extension_task(task: ExtensionTask) -> List[KeyedRecord]:
    """Worker entry point: extend one parent and canonicalize the children."""
    parent = task.record.matrix
    labeling = canonical_labeling(parent, codewords(parent), task.word_cap)
    local = CodeSet()
    for child in extend_code(parent, task.dperp, labeling.generators, task.even_dual):
        local.add(make_record(child, word_cap=task.word_cap))
    return list(local.items())


def bruteforce_extend_all(
    records: Sequence[CodeRecord],
    dperp: int,
    even_dual: bool = False,
    jobs: int = 1,
    word_cap: Optional[int] = None,
) -> List[CodeRecord]:
    """
    Every inequivalent [n+1,k]^{>=dperp} code obtained from the given
    [n,k]^{>=dperp} codes, sorted by canonical form.

    Complete whenever the input is complete: every code of length n+1 with
    dual distance at least dperp punctures to one of length n.
    """
    cap = config.CANONICAL_WORD_CAP if word_cap is None else word_cap
    tasks = [ExtensionTask(record, dperp, even_dual, cap) for record in records]
    merged = CodeSet()
    with WorkerPool(jobs, label="extend") as pool:
        for keyed in pool.map(extension_task, tasks):
            for item in keyed:
                merged.add(item)
    result = merged.records()
    logger.info(
        "extended %d codes to %d inequivalent codes (%d invariant buckets)",
        len(records), len(result), merged.bucket_count,
    )
    return result
