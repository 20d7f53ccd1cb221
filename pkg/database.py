"""
Database Manager for CodeClass

This module handles persistence of classification results: one CODEDB v1
text file per (k, d⊥, n) level, plus a SQLite catalog per output directory
that records which levels were computed and the L(k, d⊥) values read off
finished families.

Key Features:
- CODEDB v1 writer and strict reader with optional re-verification
- sorted, canonical, byte-identical output for identical inputs
- SQLite catalog with automatic table setup and schema migration
- Transaction safety with context managers

CODEDB v1 layout:
    codedb 1 n=<n> k=<k> dperp=<t> count=<c> complete=<0|1>
    <canonical hex of record 1>
    ...
Every line ends with a newline; records are sorted ascending.

Catalog schema:
- levels table: id, k, dperp, n, even, count, starred, complete, seconds,
  path, created_at, updated_at; one row per (k, dperp, n, even)
- l_values table: id, k, dperp, value, provenance, updated_at
"""

from __future__ import annotations

import logging
import os
import re
import sqlite3
from dataclasses import dataclass
from datetime import datetime
from typing import Dict, List, Optional

import config
from codes.bounds import LEntry, LTable
from codes.equivalence import CanonicalForm, canonical_form
from codes.errors import (
    MalformedDatabaseError,
    MissingDatabaseError,
    VerificationError,
    VersionMismatchError,
)
from codes.gf2core import rank
from codes.records import CodeRecord

logger = logging.getLogger(__name__)

_HEADER = re.compile(
    r"^codedb (\d+) n=(\d+) k=(\d+) dperp=(\d+) count=(\d+) complete=([01])$"
)


@dataclass(frozen=True)
class CodeDatabase:
    """
    All inequivalent [n,k]^{>=dperp} codes of one level.

    Attributes:
        n, k, dperp (int): level parameters
        records (tuple): CodeRecords sorted by canonical text
        complete (bool): False when a resource guard stopped the level early
        even (bool): only codes containing the all-ones word were kept
    """

    n: int
    k: int
    dperp: int
    records: tuple
    complete: bool = True
    even: bool = False

    def __post_init__(self):
        ordered = tuple(sorted(self.records, key=lambda record: record.canon.hex()))
        object.__setattr__(self, "records", ordered)

    @property
    def count(self) -> int:
        return len(self.records)

    @property
    def starred(self) -> bool:
        """Some code in the level has a dual distance above the threshold."""
        return any(record.exact_dperp > self.dperp for record in self.records)

    @property
    def filename(self) -> str:
        return level_filename(self.k, self.dperp, self.n, self.even)


def level_filename(k: int, dperp: int, n: int, even: bool = False) -> str:
    suffix = "_even" if even else ""
    return f"k{k}_d{dperp}_n{n}{suffix}{config.CODEDB_SUFFIX}"


def save_db(db: CodeDatabase, path: str) -> None:
    """
    Write a CODEDB v1 file.

    The file is written to a temporary name and renamed, so readers never see
    a partial file.
    """
    lines = [
        f"codedb {config.CODEDB_VERSION} n={db.n} k={db.k} dperp={db.dperp} "
        f"count={db.count} complete={int(db.complete)}"
    ]
    lines.extend(record.canon.hex() for record in db.records)
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    temporary = path + ".tmp"
    with open(temporary, "w", encoding="ascii", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")
    os.replace(temporary, path)
    logger.debug("wrote %d records to %s", db.count, path)


def load_db(path: str, verify: bool = False, even: Optional[bool] = None) -> CodeDatabase:
    """
    Read a CODEDB v1 file.

    Args:
        path (str): file to read
        verify (bool): also recompute rank, dual distance and canonical form
            of every record
        even (bool, optional): even flag of the level; taken from the file
            name when not given

    Raises:
        MissingDatabaseError: the file does not exist
        MalformedDatabaseError: bad header, truncated file or bad record text
        VersionMismatchError: the header names another format version
        VerificationError: wrong count, unsorted records or a failed check
    """
    if not os.path.exists(path):
        raise MissingDatabaseError(f"{path} does not exist")
    with open(path, "rb") as handle:
        raw = handle.read()
    if not raw.endswith(b"\n"):
        raise MalformedDatabaseError(f"{path}: file is truncated (no final newline)")
    lines = []
    for number, chunk in enumerate(raw[:-1].split(b"\n"), start=1):
        try:
            lines.append(chunk.decode("ascii"))
        except UnicodeDecodeError as e:
            raise MalformedDatabaseError(
                f"{path}:{number}: non-ASCII byte 0x{chunk[e.start]:02x} at column {e.start + 1}"
            ) from None

    header = lines[0]
    tokens = header.split()
    if len(tokens) < 2 or tokens[0] != "codedb":
        raise MalformedDatabaseError(f"{path}: missing codedb header")
    version = tokens[1]
    if version != str(config.CODEDB_VERSION):
        raise VersionMismatchError(f"{path}: format version {version} is not supported")
    match = _HEADER.match(header)
    if not match:
        raise MalformedDatabaseError(f"{path}: cannot parse header {header!r}")
    _, n, k, dperp, count, complete = (int(group) for group in match.groups())

    body = lines[1:]
    records = []
    for number, line in enumerate(body, start=2):
        try:
            canon = CanonicalForm.from_hex(line, n, k)
        except ValueError as e:
            raise MalformedDatabaseError(f"{path}:{number}: {e}") from None
        records.append(CodeRecord(canon))

    if len(records) != count:
        raise VerificationError(f"{path}: header count {count} but {len(records)} records")
    for previous, current in zip(body, body[1:]):
        if previous >= current:
            raise VerificationError(f"{path}: records are not strictly sorted")

    if verify:
        for record in records:
            _verify_record(path, record, dperp)

    if even is None:
        even = os.path.basename(path).endswith(f"_even{config.CODEDB_SUFFIX}")
    return CodeDatabase(n, k, dperp, tuple(records), bool(complete), even)


def _verify_record(path: str, record: CodeRecord, dperp: int) -> None:
    matrix = record.matrix
    if rank(matrix) != matrix.k:
        raise VerificationError(f"{path}: record {record.canon} is rank deficient")
    if record.exact_dperp < dperp:
        raise VerificationError(
            f"{path}: record {record.canon} has dual distance {record.exact_dperp} < {dperp}"
        )
    if canonical_form(matrix) != record.canon:
        raise VerificationError(f"{path}: record {record.canon} is not in canonical form")


def find_level(directory: str, k: int, dperp: int, n: int, even: bool = False) -> Optional[str]:
    """Path of a stored level, or None. Even requests fall back to full levels."""
    names = [level_filename(k, dperp, n, True)] if even else []
    names.append(level_filename(k, dperp, n, False))
    for name in names:
        path = os.path.join(directory, name)
        if os.path.exists(path):
            return path
    return None


class CatalogManager:
    """
    Manages the SQLite catalog of one output directory.

    The catalog lists every stored level with its count, star flag and run
    time, and keeps the L(k, d⊥) values derived from finished families.

    Example:
        catalog = CatalogManager("codedb")
        catalog.record_level(db, seconds=1.5, path="codedb/k10_d8_n12.codedb")
        table = catalog.get_l_table()
    """

    def __init__(self, directory: str):
        """
        Initialize the catalog manager and set up the database.

        Args:
            directory: output directory holding the CODEDB files
        """
        self.db_path = self._get_db_path(directory)
        self._ensure_db_directory()
        self._initialize_database()
        self._migrate_database()

    def _get_db_path(self, directory: str) -> str:
        return os.path.join(directory, config.CATALOG_FILENAME)

    def _ensure_db_directory(self):
        db_dir = os.path.dirname(os.path.abspath(self.db_path))
        if not os.path.exists(db_dir):
            os.makedirs(db_dir)

    def _initialize_database(self):
        """Create the catalog tables if they do not exist."""
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.cursor()

            cursor.execute('''
                CREATE TABLE IF NOT EXISTS levels (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    k INTEGER NOT NULL,
                    dperp INTEGER NOT NULL,
                    n INTEGER NOT NULL,
                    count INTEGER NOT NULL,
                    starred BOOLEAN DEFAULT 0,
                    complete BOOLEAN DEFAULT 1,
                    seconds REAL DEFAULT 0,
                    path TEXT,
                    created_at TEXT DEFAULT CURRENT_TIMESTAMP,
                    updated_at TEXT DEFAULT CURRENT_TIMESTAMP
                )
            ''')

            cursor.execute('''
                CREATE TABLE IF NOT EXISTS l_values (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    k INTEGER NOT NULL,
                    dperp INTEGER NOT NULL,
                    value INTEGER NOT NULL,
                    provenance TEXT DEFAULT 'computed',
                    updated_at TEXT DEFAULT CURRENT_TIMESTAMP,
                    UNIQUE(k, dperp)
                )
            ''')

            conn.commit()

    def _migrate_database(self):
        """
        Add the `even` column to catalogs written before even-mode runs were
        tracked, and the unique index that goes with it.
        """
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.cursor()

            cursor.execute("PRAGMA table_info(levels)")
            columns = [column[1] for column in cursor.fetchall()]

            if 'even' not in columns:
                logger.info("Migrating catalog: adding even column to levels table")
                cursor.execute('ALTER TABLE levels ADD COLUMN even BOOLEAN DEFAULT 0')
                cursor.execute('UPDATE levels SET even = 0 WHERE even IS NULL')

            cursor.execute('''
                CREATE UNIQUE INDEX IF NOT EXISTS levels_key
                ON levels (k, dperp, n, even)
            ''')
            conn.commit()

    def record_level(self, db: CodeDatabase, seconds: float = 0.0, path: Optional[str] = None) -> None:
        """Insert or replace the catalog row of one level."""
        now = datetime.now().isoformat()
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.cursor()
            cursor.execute('''
                INSERT INTO levels (k, dperp, n, even, count, starred, complete, seconds, path, created_at, updated_at)
                VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
                ON CONFLICT (k, dperp, n, even) DO UPDATE SET
                    count = excluded.count,
                    starred = excluded.starred,
                    complete = excluded.complete,
                    seconds = excluded.seconds,
                    path = excluded.path,
                    updated_at = excluded.updated_at
            ''', (db.k, db.dperp, db.n, int(db.even), db.count, int(db.starred),
                  int(db.complete), seconds, path, now, now))
            conn.commit()

    def get_levels(self, k: Optional[int] = None, dperp: Optional[int] = None) -> List[Dict]:
        """Catalog rows ordered by dperp, k and n, optionally filtered."""
        query = 'SELECT k, dperp, n, even, count, starred, complete, seconds, path FROM levels'
        clauses, params = [], []
        if k is not None:
            clauses.append('k = ?')
            params.append(k)
        if dperp is not None:
            clauses.append('dperp = ?')
            params.append(dperp)
        if clauses:
            query += ' WHERE ' + ' AND '.join(clauses)
        query += ' ORDER BY dperp, k, n, even'
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.cursor()
            cursor.execute(query, params)
            return [
                {
                    'k': row[0], 'dperp': row[1], 'n': row[2], 'even': bool(row[3]),
                    'count': row[4], 'starred': bool(row[5]), 'complete': bool(row[6]),
                    'seconds': row[7], 'path': row[8],
                }
                for row in cursor.fetchall()
            ]

    def record_l_value(self, entry: LEntry) -> None:
        now = datetime.now().isoformat()
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.cursor()
            cursor.execute('''
                INSERT INTO l_values (k, dperp, value, provenance, updated_at)
                VALUES (?, ?, ?, ?, ?)
                ON CONFLICT (k, dperp) DO UPDATE SET
                    value = excluded.value,
                    provenance = excluded.provenance,
                    updated_at = excluded.updated_at
            ''', (entry.k, entry.dperp, entry.value, entry.provenance, now))
            conn.commit()

    def get_l_table(self) -> LTable:
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.cursor()
            cursor.execute('SELECT k, dperp, value, provenance FROM l_values')
            return LTable(LEntry(*row) for row in cursor.fetchall())

    def get_stats(self) -> Dict:
        """Totals over the catalog: levels, codes, time and families."""
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.cursor()
            cursor.execute('SELECT COUNT(*), COALESCE(SUM(count), 0), COALESCE(SUM(seconds), 0) FROM levels')
            levels, codes, seconds = cursor.fetchone()
            cursor.execute('SELECT COUNT(*) FROM (SELECT DISTINCT k, dperp, even FROM levels)')
            families = cursor.fetchone()[0]
            cursor.execute('SELECT COUNT(*) FROM levels WHERE complete = 0')
            incomplete = cursor.fetchone()[0]
        return {
            'levels': levels,
            'codes': codes,
            'seconds': seconds,
            'families': families,
            'incomplete_levels': incomplete,
        }


def load_family(directory: str, k: int, dperp: int, even: bool = False) -> List[CodeDatabase]:
    """Every stored level of one (k, d⊥) family, ordered by n."""
    suffix = "_even" if even else ""
    pattern = re.compile(rf"^k{k}_d{dperp}_n(\d+){suffix}{re.escape(config.CODEDB_SUFFIX)}$")
    found = []
    for name in os.listdir(directory):
        match = pattern.match(name)
        if match:
            found.append((int(match.group(1)), os.path.join(directory, name)))
    return [load_db(path, even=even) for _, path in sorted(found)]


def load_directory(directory: str) -> List[CodeDatabase]:
    """Every CODEDB file of a directory."""
    if not os.path.isdir(directory):
        raise MissingDatabaseError(f"{directory} is not a directory")
    names = sorted(name for name in os.listdir(directory) if name.endswith(config.CODEDB_SUFFIX))
    return [load_db(os.path.join(directory, name)) for name in names]
