"""
Classification Manager for CodeClass

This module drives whole classifications: it grows a (k, d⊥) family level by
level from the [k,k] seed, renders count tables, derives optimal-code counts
and runs nonexistence pipelines for target [n,k,d] parameters.

Key Features:
- classify_dimension: iterated column extension with early termination at
  the first empty level and a per-level resource guard
- report_table: count grid with stars, "?" for incomplete cells, text and
  CSV output
- derive_optimal_counts: count(n,k) - count(n-1,k-1) for unstarred cells
- nonexistence_pipeline: even reduction, dual-side classification through
  stored databases, desk-scale builds or residual codes, and a verdict with
  a JSON-ready evidence bundle
- ClassificationManager: persistence of levels and L values for one output
  directory
"""

from __future__ import annotations

import csv
import io
import logging
import os
import time
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import config
from codes.bounds import (
    ExternalBounds,
    LTable,
    distance_range,
    even_reduction_check,
    l_value,
    load_external_bounds,
    n2_lower_bounds,
    nonexistence_consequences,
    published_ltable,
)
from codes.errors import (
    IncompleteClassificationError,
    InconsistentDatabaseError,
    MissingBoundError,
    MissingDatabaseError,
    ReductionInapplicableError,
    StarredCellError,
)
from codes.extension import bruteforce_extend_all, extend_code
from codes.fixtures import bounds_path
from codes.gf2core import BitMatrix
from codes.metrics import contains_all_ones
from codes.propersearch import classify_via_residuals
from codes.records import CodeRecord, make_record
from database import (
    CatalogManager,
    CodeDatabase,
    find_level,
    load_db,
    load_directory,
    load_family,
    save_db,
)

logger = logging.getLogger(__name__)


# =============================================================================
# CLASSIFICATION
# =============================================================================

@dataclass
class ClassifyOptions:
    jobs: int = 1
    even: bool = False
    max_codes_per_level: Optional[int] = None
    word_cap: Optional[int] = None


def classify_dimension(
    k: int,
    dperp: int,
    n_max: int,
    options: Optional[ClassifyOptions] = None,
    on_level: Optional[Callable[[CodeDatabase, float], None]] = None,
) -> List[CodeDatabase]:
    """
    Classify all [n,k]^{>=dperp} codes for n = k..n_max.

    Args:
        k (int): dimension, at least 1
        dperp (int): dual distance threshold, at least 2
        n_max (int): longest length to classify
        options (ClassifyOptions, optional): jobs, even mode, guards
        on_level (callable, optional): called with each finished level and
            its run time in seconds

    Returns:
        List[CodeDatabase]: one database per level; stops after the first
        empty level, or after a level cut short by the resource guard
        (complete=False)
    """
    if k < 1:
        raise ValueError("dimension must be at least 1")
    if dperp < 2:
        raise ValueError("dual distance threshold must be at least 2")
    options = options or ClassifyOptions()
    limit = options.max_codes_per_level or config.MAX_CODES_PER_LEVEL

    started = time.perf_counter()
    seed = make_record(BitMatrix.identity(k), word_cap=options.word_cap).record
    current = CodeDatabase(k, k, dperp, (seed,), True, options.even)
    levels = [current]
    if on_level:
        on_level(current, time.perf_counter() - started)
    logger.info("[%d,%d]^%d: 1 code", k, k, dperp)

    for n in range(k + 1, n_max + 1):
        started = time.perf_counter()
        records = bruteforce_extend_all(
            current.records, dperp,
            even_dual=options.even, jobs=options.jobs, word_cap=options.word_cap,
        )
        complete = len(records) <= limit
        if not complete:
            logger.warning(
                "[%d,%d]^%d: %d codes exceed the limit of %d, stopping",
                n, k, dperp, len(records), limit,
            )
            records = records[:limit]
        current = CodeDatabase(n, k, dperp, tuple(records), complete, options.even)
        levels.append(current)
        elapsed = time.perf_counter() - started
        if on_level:
            on_level(current, elapsed)
        logger.info(
            "[%d,%d]^%d: %d codes%s (%.1fs)",
            n, k, dperp, current.count, "*" if current.starred else "", elapsed,
        )
        if not complete or current.count == 0:
            break
    return levels


# =============================================================================
# REPORTS
# =============================================================================

@dataclass(frozen=True)
class TableCell:
    n: int
    k: int
    count: Optional[int]
    starred: bool = False

    def render(self) -> str:
        if self.count is None:
            return "?"
        return f"{self.count}{'*' if self.starred else ''}"


@dataclass
class TableReport:
    """
    Count grid of one d⊥ threshold: rows are lengths n, columns dimensions k.
    """

    dperp: int
    even: bool
    ks: List[int]
    ns: List[int]
    cells: Dict[Tuple[int, int], TableCell] = field(default_factory=dict)

    def cell(self, n: int, k: int) -> Optional[TableCell]:
        return self.cells.get((n, k))

    def rows(self) -> List[TableCell]:
        return [self.cells[key] for key in sorted(self.cells)]

    def render(self) -> str:
        title = f"Inequivalent [n,k]^(d>={self.dperp}) codes" + (" (even duals)" if self.even else "")
        grid = [["n\\k"] + [str(k) for k in self.ks]]
        for n in self.ns:
            line = [str(n)]
            for k in self.ks:
                cell = self.cells.get((n, k))
                line.append(cell.render() if cell else "")
            grid.append(line)
        widths = [max(len(row[i]) for row in grid) for i in range(len(grid[0]))]
        body = "\n".join(
            "  ".join(value.rjust(width) for value, width in zip(row, widths)) for row in grid
        )
        return f"{title}\n{body}\n"

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["dperp", "even", "n", "k", "count", "starred", "complete"])
        for cell in self.rows():
            writer.writerow([
                self.dperp, int(self.even), cell.n, cell.k,
                "" if cell.count is None else cell.count,
                int(cell.starred), int(cell.count is not None),
            ])
        return buffer.getvalue()


def report_table(dbs: Sequence[CodeDatabase]) -> List[TableReport]:
    """
    Count grids, one per (d⊥, even) group of the given databases.

    Cells past the first empty level of a family are 0; cells of stored
    incomplete levels, or past the last stored level of an unfinished family,
    are "?".
    """
    groups: Dict[Tuple[int, bool], Dict[int, Dict[int, CodeDatabase]]] = {}
    for db in dbs:
        groups.setdefault((db.dperp, db.even), {}).setdefault(db.k, {})[db.n] = db

    reports = []
    for (dperp, even), families in sorted(groups.items()):
        ks = sorted(families)
        finished = {
            k: min((n for n, db in levels.items() if db.complete and db.count == 0), default=None)
            for k, levels in families.items()
        }
        # an unfinished family gets one unknown row past its last stored level
        last = max(
            max(levels) + (0 if finished[k] is not None else 1)
            for k, levels in families.items()
        )
        ns = list(range(min(ks), last + 1))
        report = TableReport(dperp, even, ks, ns)
        for k, levels in families.items():
            finished_at = finished[k]
            for n in ns:
                if n < k:
                    continue
                db = levels.get(n)
                if finished_at is not None and n > finished_at:
                    report.cells[(n, k)] = TableCell(n, k, 0)
                elif db is None or not db.complete:
                    report.cells[(n, k)] = TableCell(n, k, None)
                else:
                    report.cells[(n, k)] = TableCell(n, k, db.count, db.starred)
        reports.append(report)
    return reports


def _cell_database(dbs: Sequence[CodeDatabase], n: int, k: int) -> Optional[CodeDatabase]:
    for db in dbs:
        if (db.n, db.k) == (n, k):
            return db
    return None


def _cell_count(dbs: Sequence[CodeDatabase], n: int, k: int) -> Tuple[int, bool]:
    """Count and star of one cell, using early termination for missing levels."""
    if n < k:
        return 0, False
    db = _cell_database(dbs, n, k)
    if db is not None:
        if not db.complete:
            raise IncompleteClassificationError(f"level [{n},{k}] is incomplete")
        return db.count, db.starred
    if any(other.k == k and other.n < n and other.complete and other.count == 0 for other in dbs):
        return 0, False
    raise MissingDatabaseError(f"no database for [{n},{k}]")


def derive_optimal_counts(dbs: Sequence[CodeDatabase], n: int, k: int) -> int:
    """
    Number of inequivalent optimal [n, n-k, d⊥] codes read off the table:
    count(n,k) - count(n-1,k-1).

    Raises:
        StarredCellError: the (n,k) cell is starred
        InconsistentDatabaseError: the difference is negative
    """
    count, starred = _cell_count(dbs, n, k)
    if starred:
        raise StarredCellError(
            f"cell [{n},{k}] holds codes with dual distance above the threshold; "
            "the subtraction only counts optimal codes for unstarred cells"
        )
    shorter, _ = _cell_count(dbs, n - 1, k - 1)
    difference = count - shorter
    if difference < 0:
        raise InconsistentDatabaseError(
            f"count[{n},{k}]={count} is smaller than count[{n - 1},{k - 1}]={shorter}"
        )
    return difference


# =============================================================================
# NONEXISTENCE PIPELINE
# =============================================================================

class Verdict(str, Enum):
    NONEXISTENT = "NONEXISTENT"
    EXISTS = "EXISTS"
    UNRESOLVED = "UNRESOLVED"


@dataclass(frozen=True)
class Target:
    n: int
    k: int
    d: int

    @classmethod
    def parse(cls, text: str) -> "Target":
        parts = text.replace("[", "").replace("]", "").split(",")
        if len(parts) != 3 or not all(part.strip().isdigit() for part in parts):
            raise ValueError(f"target must look like N,K,D, got {text!r}")
        return cls(*(int(part) for part in parts))

    def __str__(self) -> str:
        return f"[{self.n},{self.k},{self.d}]"


# Enumerators listed per family in the evidence bundle
MAX_LISTED_CODES = 20

# Routes used for the two published nonexistence results
KNOWN_ROUTES = {
    (33, 18, 8): "puncture",
    (33, 14, 10): "direct",
}


@dataclass
class PipelinePlan:
    """
    How the nonexistence pipeline may obtain its prerequisites.

    Attributes:
        db_dir (str): directory with CODEDB files and an optional catalog
        desk_scale (bool): build small missing families on the fly
        route (str): "auto", "direct" (classify the dual family at length
            n) or "puncture" (classify at length n-1, then extend)
        dual_method (str): "auto", "family" (stored or built levels only)
            or "residual" (residual-code search only)
        jobs (int): worker processes
        ltable (LTable, optional): L values; defaults to catalog values over
            the published table
        bounds (ExternalBounds, optional): upper bounds on d; defaults to
            the bundled bounds file
    """

    db_dir: str
    desk_scale: bool = False
    route: str = "auto"
    dual_method: str = "auto"
    jobs: int = 1
    ltable: Optional[LTable] = None
    bounds: Optional[ExternalBounds] = None


@dataclass
class EvidenceItem:
    step: str
    detail: str
    data: Dict = field(default_factory=dict)


@dataclass
class PipelineResult:
    target: Target
    verdict: Verdict
    evidence: List[EvidenceItem]

    def to_dict(self) -> Dict:
        return {
            "target": asdict(self.target),
            "verdict": self.verdict.value,
            "evidence": [asdict(item) for item in self.evidence],
        }


class _Pipeline:
    def __init__(self, target: Target, plan: PipelinePlan):
        self.target = target
        self.plan = plan
        self.evidence: List[EvidenceItem] = []
        self.ltable = plan.ltable if plan.ltable is not None else self._default_ltable()
        self.bounds = plan.bounds if plan.bounds is not None else self._default_bounds()

    def note(self, step: str, detail: str, **data) -> None:
        logger.info("%s: %s", step, detail)
        self.evidence.append(EvidenceItem(step, detail, data))

    def _default_ltable(self) -> LTable:
        table = published_ltable()
        catalog = os.path.join(self.plan.db_dir, config.CATALOG_FILENAME)
        if os.path.exists(catalog):
            table = table.merged(CatalogManager(self.plan.db_dir).get_l_table())
        return table

    def _default_bounds(self) -> ExternalBounds:
        path = bounds_path()
        return load_external_bounds(path) if os.path.exists(path) else ExternalBounds()

    # -- prerequisite families ------------------------------------------------

    def family_level(self, k: int, dperp: int, n: int, even: bool) -> Optional[List[CodeRecord]]:
        """All [n,k]^{>=dperp} codes (with all-ones when even), or None."""
        if n < k:
            return []
        if os.path.isdir(self.plan.db_dir):
            path = find_level(self.plan.db_dir, k, dperp, n, even)
            if path is not None:
                db = load_db(path)
                if db.complete:
                    records = list(db.records)
                    if even and not db.even:
                        records = [r for r in records if contains_all_ones(r.matrix)]
                    self.note("database", f"[{n},{k}]^{dperp} loaded from {os.path.basename(path)}",
                              n=n, k=k, dperp=dperp, count=len(records))
                    return records
            for candidate in (True, False) if even else (False,):
                for db in load_family(self.plan.db_dir, k, dperp, candidate):
                    if db.n < n and db.complete and db.count == 0:
                        self.note("database", f"[{db.n},{k}]^{dperp} is empty, so [{n},{k}]^{dperp} is too",
                                  n=n, k=k, dperp=dperp, count=0)
                        return []
        if self.plan.desk_scale and k <= config.DESK_SCALE_MAX_DIM:
            levels = classify_dimension(k, dperp, n, ClassifyOptions(jobs=self.plan.jobs, even=even))
            last = levels[-1]
            if not last.complete:
                return None
            records = list(last.records) if last.n == n else []
            self.note("desk-scale", f"classified [{n},{k}]^{dperp}{' (even duals)' if even else ''}",
                      n=n, k=k, dperp=dperp, count=len(records))
            return records
        return None

    def residual_family(self, n: int, k: int, dperp: int, even: bool) -> Optional[List[CodeRecord]]:
        if k < 2:
            return None
        try:
            entry = self.ltable.get(k - 1, dperp)
        except MissingBoundError as e:
            self.note("bounds", str(e))
            return None
        external = self.bounds.dhi(n, k)
        span = distance_range(n, k, dperp, self.ltable, external)
        self.note(
            "distance range",
            f"[{n},{k}]^{dperp}: {span.dlo} <= d <= {span.dhi}",
            l_value=entry.value, l_provenance=entry.provenance, external_dhi=external,
            dlo=span.dlo, dhi=span.dhi,
        )
        if span.is_empty:
            return []
        residual_dbs = {}
        for d in span:
            records = self.family_level(k - 1, dperp, n - d, even)
            if records is None:
                self.note("missing", f"no complete [{n - d},{k - 1}]^{dperp} database",
                          n=n - d, k=k - 1, dperp=dperp)
                return None
            residual_dbs[d] = records
        records = classify_via_residuals(
            residual_dbs, span.dlo, span.dhi, dperp, n, k, even_dual=even, jobs=self.plan.jobs,
        )
        self.note("residual search", f"{len(records)} inequivalent [{n},{k}]^{dperp} codes",
                  n=n, k=k, dperp=dperp, count=len(records))
        return records

    def dual_family(self, n: int, k: int, dperp: int, even: bool) -> Optional[List[CodeRecord]]:
        method = self.plan.dual_method
        if method in ("auto", "family"):
            records = self.family_level(k, dperp, n, even)
            if records is not None:
                return records
        if method in ("auto", "residual"):
            return self.residual_family(n, k, dperp, even)
        return None

    # -- main flow ------------------------------------------------------------

    def run(self) -> PipelineResult:
        n, k, d = self.target.n, self.target.k, self.target.d
        if k < 1 or k > n or d < 1:
            raise ValueError(f"{self.target} is not a valid parameter set")
        self.note("target", f"decide whether an {self.target} code exists", n=n, k=k, d=d)
        if self.target == Target(33, 14, 10):
            self.note(
                "published counts",
                "the published text names 30481 [27,18]^10 and 11 [26,18]^10 codes, "
                "while the table lists 30481 at n=27 and 11 at n=28; residual lengths "
                "for d=5 and d=6 at n=33 are 28 and 27",
                readings=[{"n=27": 30481, "n=26": 11}, {"n=27": 30481, "n=28": 11}],
            )

        dual_k = n - k
        if dual_k == 0:
            verdict = Verdict.EXISTS if d <= 1 else Verdict.NONEXISTENT
            self.note("trivial", "the full space has minimum distance 1")
            return self.finish(verdict)

        try:
            even_reduction_check(n, k, d)
            even = True
            self.note("even reduction", f"only even {self.target} codes need to be excluded; "
                      f"their duals contain the all-ones word")
        except ReductionInapplicableError as e:
            even = False
            self.note("even reduction", f"not applied: {e}")

        route = self.plan.route
        if route == "auto":
            route = KNOWN_ROUTES.get((n, k, d), "direct")
        self.note("route", route, route=route)

        length = n - 1 if route == "puncture" else n
        family = self.dual_family(length, dual_k, d, even)
        if family is None:
            self.note("unresolved", f"[{length},{dual_k}]^{d} could not be classified")
            return self.finish(Verdict.UNRESOLVED)
        self.note("dual family", f"{len(family)} inequivalent [{length},{dual_k}]^{d} codes"
                  f"{' containing the all-ones word' if even else ''}",
                  n=length, k=dual_k, dperp=d, count=len(family),
                  enumerators=[str(record.enumerator) for record in family[:MAX_LISTED_CODES]])

        survivors = family
        if route == "puncture":
            extended = []
            for record in family:
                children = extend_code(record.matrix, d, even_dual=even)
                self.note("extension", f"{record.canon.hex()}: {len(children)} extensions",
                          count=len(children))
                extended.extend(children)
            survivors = extended

        return self.finish(Verdict.EXISTS if survivors else Verdict.NONEXISTENT)

    def finish(self, verdict: Verdict) -> PipelineResult:
        if verdict == Verdict.NONEXISTENT:
            n, k, d = self.target.n, self.target.k, self.target.d
            for consequence in nonexistence_consequences(n, k, d):
                self.note("consequence", str(consequence),
                          n=consequence.n, k=consequence.k, d=consequence.d)
            self.note("n2 bounds", "; ".join(n2_lower_bounds(n, k, d, 4)))
        self.note("verdict", verdict.value)
        return PipelineResult(self.target, verdict, self.evidence)


def nonexistence_pipeline(target: Target, plan: PipelinePlan) -> PipelineResult:
    """
    Decide whether an [n,k,d] code exists by classifying the dual side.

    An [n,k,d] code exists iff an [n, n-k]^{>=d} code exists. For even d the
    dual may be assumed to contain the all-ones word. The verdict is
    NONEXISTENT only after every prerequisite has been classified completely;
    a missing prerequisite gives UNRESOLVED.
    """
    return _Pipeline(target, plan).run()


# =============================================================================
# MANAGER
# =============================================================================

class ClassificationManager:
    """
    Runs classifications into one output directory.

    Every finished level is written as a CODEDB file and recorded in the
    directory's SQLite catalog; finished families also record their L value.

    Example:
        manager = ClassificationManager("codedb")
        levels = manager.classify(k=10, dperp=8, n_max=14)
    """

    def __init__(self, out_dir: str):
        self.out_dir = out_dir
        os.makedirs(out_dir, exist_ok=True)
        self.catalog = CatalogManager(out_dir)
        logger.debug("classification manager ready in %s", out_dir)

    def classify(self, k: int, dperp: int, n_max: int, options: Optional[ClassifyOptions] = None) -> List[CodeDatabase]:
        def store(db: CodeDatabase, seconds: float) -> None:
            path = os.path.join(self.out_dir, db.filename)
            save_db(db, path)
            self.catalog.record_level(db, seconds, path)

        levels = classify_dimension(k, dperp, n_max, options, on_level=store)
        if not (options and options.even):
            try:
                entry = l_value(levels)
            except IncompleteClassificationError:
                logger.info("family k=%d dperp=%d did not terminate by n=%d", k, dperp, n_max)
            else:
                self.catalog.record_l_value(entry)
                logger.info("L(%d,%d) = %d", k, dperp, entry.value)
        return levels

    def load_all(self) -> List[CodeDatabase]:
        return load_directory(self.out_dir)
