"""
Search for (d⊥-1)-proper sets extending a scaffold matrix A.

A set X of vectors is p-proper with respect to A when every p vectors taken
from the columns of A together with X are linearly independent. With
p = d⊥-1 and |X| = d-1, the code [A | X] has dual distance at least d⊥.

The search is a branch and bound over the candidate list V, in the style of
maximum-clique solvers: vectors are added in index order, and the remaining
candidates U are pruned to those that keep the set proper. Pruning uses
r[i], the largest proper subset found among V[i:], capped at t; it is filled
in while the outer loop walks i from the end of V towards the start.

Three modes:
- "all": every proper set of size t (used by the residual classification)
- "exists": stop at the first proper set of size t
- "max": only the largest proper size, capped at t
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import List, Mapping, Optional, Sequence, Tuple

import numpy as np

import config
from codes.errors import DimensionGuardError, InconsistentDatabaseError, MissingDatabaseError
from codes.extension import subset_sum_layers, subset_sums
from codes.gf2core import BitMatrix, odd_column_basis
from codes.metrics import codewords, contains_all_ones, min_distance, word_weights
from codes.records import CodeRecord, CodeSet, KeyedRecord, make_record
from codes.residual import assemble_code, scaffold
from codes.workers import WorkerPool

logger = logging.getLogger(__name__)

SEARCH_MODES = ("all", "exists", "max")


@dataclass(frozen=True)
class SearchSpace:
    """
    Candidate vectors V for one scaffold A.

    Every vector has its top entry (bit 0) set, is not a sum of at most
    d⊥-2 columns of A, and in even mode has odd weight.
    """

    k: int
    dperp: int
    even_reduction: bool
    vectors: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class ProperSet:
    indices: Tuple[int, ...]
    vectors: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.indices)


def build_search_space(base: BitMatrix, dperp: int, even_reduction: bool = False) -> SearchSpace:
    """
    Candidate list V for the scaffold `base`, in increasing vector order.

    Example:
        A = scaffold(residual, d)
        space = build_search_space(A, dperp=8, even_reduction=True)
    """
    if base.k > config.MAX_ENUM_DIM:
        raise DimensionGuardError(f"search over 2^{base.k} vectors exceeds MAX_ENUM_DIM")
    forbidden, _ = subset_sums(base.columns, dperp - 2, base.k)
    candidates = np.arange(1, 1 << base.k, 2, dtype=np.int64)
    keep = ~forbidden[candidates]
    if even_reduction:
        keep &= word_weights(candidates.astype(np.uint64)) % 2 == 1
    vectors = tuple(int(v) for v in candidates[keep])
    logger.debug("search space for k=%d dperp=%d: %d vectors", base.k, dperp, len(vectors))
    return SearchSpace(base.k, dperp, even_reduction, vectors)


class _ProperSetSearch:
    def __init__(self, space: SearchSpace, base: BitMatrix, t: int, dperp: int, mode: str, prune: bool):
        self.V = np.asarray(space.vectors, dtype=np.int64)
        self.t = t
        self.mode = mode
        self.prune = prune
        self.depth = dperp - 3
        self.index = np.arange(1 << base.k, dtype=np.int64)
        self.base_layers = None
        if self.depth >= 0:
            self.base_layers, _ = subset_sum_layers(base.columns, self.depth, base.k)
        self.r = [0] * len(self.V)
        self.max = 0
        self.found = False
        self.stop = False
        self.stop_at_target = True
        self.solutions: List[Tuple[int, ...]] = []

    def _add(self, layers: List[np.ndarray], vector: int) -> List[np.ndarray]:
        shifted = self.index ^ vector
        grown = [layers[0]]
        for j in range(1, len(layers)):
            grown.append(layers[j] | layers[j - 1][shifted])
        return grown

    def _compatible(self, layers, candidates: np.ndarray, vector: int) -> np.ndarray:
        if layers is None or candidates.size == 0:
            return candidates
        return candidates[~layers[self.depth][self.V[candidates] ^ vector]]

    def _dead(self, size: int, bound: int) -> bool:
        # bound is an upper limit on the set size reachable from here
        if self.max < self.t:
            return size + bound <= self.max
        return size + bound < self.t

    def _ext(self, chosen: List[int], candidates: np.ndarray, layers) -> None:
        size = len(chosen)
        if size == self.t:
            self.max = self.t
            if self.mode != "max":
                self.solutions.append(tuple(chosen))
            if self.mode != "all" and self.stop_at_target:
                self.stop = True
            return
        if candidates.size == 0:
            if size > self.max:
                self.max = size
                self.found = True
            return
        while candidates.size:
            if self.prune and self._dead(size, candidates.size):
                return
            i = int(candidates[0])
            if self.prune and self._dead(size, self.r[i]):
                return
            candidates = candidates[1:]
            vector = int(self.V[i])
            remaining = self._compatible(layers, candidates, vector)
            grown = self._add(layers, vector) if layers is not None and size + 1 < self.t else layers
            self._ext(chosen + [i], remaining, grown)
            if self.stop:
                return
            if self.found and self.mode != "all":
                return

    def run(self) -> None:
        count = len(self.V)
        for i in range(count - 1, -1, -1):
            self.found = False
            vector = int(self.V[i])
            later = np.arange(i + 1, count, dtype=np.int64)
            candidates = self._compatible(self.base_layers, later, vector)
            layers = None
            if self.base_layers is not None and self.t > 1:
                layers = self._add(self.base_layers, vector)
            self._ext([i], candidates, layers)
            self.r[i] = self.max
            if self.stop:
                break


def find_proper_sets(
    space: SearchSpace,
    base: BitMatrix,
    t: int,
    dperp: int,
    mode: str = "all",
    prune: bool = True,
) -> List[ProperSet]:
    """
    Proper sets of size t drawn from the search space.

    Args:
        space (SearchSpace): candidates from build_search_space()
        base (BitMatrix): the scaffold A
        t (int): required set size, d - 1
        dperp (int): dual distance; sets are (dperp-1)-proper
        mode (str): "all" or "exists"
        prune (bool): disable to run the plain exhaustive search

    Returns:
        List[ProperSet]: sorted by index tuple; t = 0 yields only the
        empty set
    """
    if mode not in ("all", "exists"):
        raise ValueError(f"mode must be 'all' or 'exists', not {mode!r}")
    if t < 0:
        raise ValueError("proper set size must be non-negative")
    if t == 0:
        return [ProperSet((), ())]
    if not space.vectors:
        return []
    search = _ProperSetSearch(space, base, t, dperp, mode, prune)
    search.run()
    ordered = sorted(search.solutions)
    return [ProperSet(indices, tuple(space.vectors[i] for i in indices)) for indices in ordered]


def max_proper_size(space: SearchSpace, base: BitMatrix, t: int, dperp: int) -> int:
    """Size of the largest proper set, capped at t."""
    if t <= 0 or not space.vectors:
        return 0
    search = _ProperSetSearch(space, base, t, dperp, "max", prune=True)
    search.run()
    return search.max


def pruning_bounds(space: SearchSpace, base: BitMatrix, t: int, dperp: int) -> List[int]:
    """The r-vector of a full max-size run: r[i] = min(largest proper subset of V[i:], t)."""
    search = _ProperSetSearch(space, base, t, dperp, "max", prune=True)
    search.stop_at_target = False
    search.run()
    return list(search.r)


def is_proper(vectors: Sequence[int], base: Optional[BitMatrix], p: int) -> bool:
    """
    True if every set of at most p vectors among the columns of `base` and
    `vectors` is linearly independent. Brute force, for checking results.
    """
    pool = list(base.columns if base is not None else ()) + [int(v) for v in vectors]
    for size in range(1, min(p, len(pool)) + 1):
        for subset in combinations(pool, size):
            acc = 0
            for vector in subset:
                acc ^= vector
            if acc == 0:
                return False
    return True


def proper_set_exists(space: SearchSpace, base: BitMatrix, t: int, dperp: int) -> bool:
    """Existence check with the early-exit search."""
    return bool(find_proper_sets(space, base, t, dperp, mode="exists"))


@dataclass(frozen=True)
class ResidualTask:
    residual: BitMatrix
    d: int
    dmin: int
    dmax: int
    dperp: int
    even_dual: bool
    word_cap: int


def residual_task(task: ResidualTask) -> List[KeyedRecord]:
    """Worker entry point: all codes built on one residual with top weight d."""
    base = scaffold(task.residual, task.d)
    space = build_search_space(base, task.dperp, task.even_dual)
    local = CodeSet()
    for proper in find_proper_sets(space, base, task.d - 1, task.dperp):
        generator = assemble_code(base, proper.vectors)
        words = codewords(generator)
        distance = min_distance(generator, words)
        if task.dmin <= distance <= task.dmax:
            local.add(make_record(generator, words, task.word_cap))
    logger.debug(
        "residual [%d,%d] with d=%d: %d candidates, %d codes",
        task.residual.n, task.residual.k, task.d, len(space), len(local),
    )
    return list(local.items())


def classify_via_residuals(
    residual_dbs: Mapping[int, Sequence],
    dmin: int,
    dmax: int,
    dperp: int,
    n: int,
    k: int,
    even_dual: bool = False,
    jobs: int = 1,
    word_cap: Optional[int] = None,
) -> List[CodeRecord]:
    """
    All inequivalent [n,k]^{>=dperp} codes with minimum distance in
    [dmin, dmax], built from their residual codes.

    Args:
        residual_dbs: for each d in the range, every [n-d, k-1]^{>=dperp}
            code (BitMatrix or CodeRecord)
        dmin, dmax (int): distance range; an empty range gives no codes
        dperp (int): dual distance of the target codes
        n, k (int): target parameters
        even_dual (bool): only codes containing the all-ones word; the
            search is then restricted to odd-weight columns

    Raises:
        MissingDatabaseError: a residual database of the range is missing
        InconsistentDatabaseError: a residual has the wrong shape
    """
    if dmin > dmax:
        return []
    cap = config.CANONICAL_WORD_CAP if word_cap is None else word_cap
    tasks = []
    for d in range(dmin, dmax + 1):
        if d not in residual_dbs:
            raise MissingDatabaseError(f"no residual database for d={d} ([{n - d},{k - 1}])")
        kept = 0
        for item in residual_dbs[d]:
            residual = item.matrix if isinstance(item, CodeRecord) else item
            if (residual.n, residual.k) != (n - d, k - 1):
                raise InconsistentDatabaseError(
                    f"residual for d={d} is [{residual.n},{residual.k}], expected [{n - d},{k - 1}]"
                )
            if residual.k and min_distance(residual) < (d + 1) // 2:
                continue
            if even_dual:
                if not contains_all_ones(residual):
                    logger.warning(
                        "skipping residual without the all-ones word in even mode (d=%d)", d
                    )
                    continue
                residual = odd_column_basis(residual)
            tasks.append(ResidualTask(residual, d, dmin, dmax, dperp, even_dual, cap))
            kept += 1
        logger.info("d=%d: %d residual codes to extend", d, kept)

    merged = CodeSet()
    with WorkerPool(jobs, label="residual search") as pool:
        for keyed in pool.map(residual_task, tasks):
            for item in keyed:
                merged.add(item)
    result = merged.records()
    logger.info("[%d,%d]^%d with d in %d..%d: %d inequivalent codes", n, k, dperp, dmin, dmax, len(result))
    return result
