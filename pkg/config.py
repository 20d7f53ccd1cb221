# =============================================================================
# CODECLASS CONFIGURATION
# =============================================================================
#
# Defaults for the classifier library and the command line tool.
# Every value can be overridden from a JSON file passed with --config
# (keys mirror the CLI flags, see load_overrides()); flags given on the
# command line win over the file.
#
# =============================================================================

import json
import os
from typing import Any, Dict

from codes.errors import ConfigError

# =============================================================================
# WORD AND ENUMERATION LIMITS
# =============================================================================

# Number of bits in one packed column word.
# Matrices with more rows than this are rejected at construction.
WORD_BITS = 64

# Largest dimension k for which all 2^k codewords (or a 2^k candidate mask)
# may be enumerated. 2^28 words of 8 bytes is already 2 GiB.
MAX_ENUM_DIM = 28

# Upper bound on the number of low-weight codewords used to refine coordinate
# partitions during canonical labeling. The minimum-weight class is always
# used in full; heavier classes are added while the total stays below the cap.
CANONICAL_WORD_CAP = 2048

# =============================================================================
# CLASSIFICATION SETTINGS
# =============================================================================

# Worker processes used for per-code and per-residual tasks.
# 1 runs everything in the calling process.
DEFAULT_JOBS = 1

# Resource guard: a level with more codes than this stops the run and is
# persisted with complete=0.
MAX_CODES_PER_LEVEL = 3_000_000

# Largest dual-side dimension the nonexistence pipeline builds on its own in
# --desk-scale mode. Bigger prerequisites must already exist in --db-dir.
DESK_SCALE_MAX_DIM = 10

# =============================================================================
# FILES AND DIRECTORIES
# =============================================================================

# Bundled fixtures and bounds live next to this file
DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")

# Generator matrices printed for the two [32,15]^8 codes
FIXTURE_G32_FILES = ("g32_1.txt", "g32_2.txt")

# External upper bounds on the minimum distance, "n k dhi" per line
BOUNDS_FILENAME = "bounds.txt"

# CODEDB v1 database files
CODEDB_SUFFIX = ".codedb"
CODEDB_VERSION = 1

# SQLite run catalog kept in every output directory
CATALOG_FILENAME = "catalog.sqlite3"

# Default output directory for `classify`
DEFAULT_OUT_DIR = "codedb"

# =============================================================================
# LOGGING SETTINGS
# =============================================================================

# Root log level used by main.py (DEBUG, INFO, WARNING, ERROR)
LOG_LEVEL = "INFO"

# Format of every log line
LOG_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"

# Enable debug output for every module
# True: forces LOG_LEVEL to DEBUG
DEBUG_MODE = False

# =============================================================================
# CONFIGURATION VALIDATION
# =============================================================================

# Keys accepted in a JSON override file and the config constant they set.
# Keys without a constant are passed through to the CLI layer untouched.
OVERRIDE_KEYS = {
    "jobs": "DEFAULT_JOBS",
    "max_codes_per_level": "MAX_CODES_PER_LEVEL",
    "canonical_word_cap": "CANONICAL_WORD_CAP",
    "desk_scale_max_dim": "DESK_SCALE_MAX_DIM",
    "log_level": "LOG_LEVEL",
    "debug": "DEBUG_MODE",
    "out": None,
    "even": None,
    "max_n": None,
    "dperp": None,
    "k": None,
    "db_dir": None,
    "desk_scale": None,
    "bounds": None,
    "dir": None,
}


def validate_config():
    """Validate configuration settings and return any errors."""
    errors = []

    if not (1 <= WORD_BITS <= 64):
        errors.append("WORD_BITS must be between 1 and 64")

    if not (1 <= MAX_ENUM_DIM <= 30):
        errors.append("MAX_ENUM_DIM must be between 1 and 30")

    if CANONICAL_WORD_CAP < 1:
        errors.append("CANONICAL_WORD_CAP must be positive")

    if DEFAULT_JOBS < 1:
        errors.append("DEFAULT_JOBS must be at least 1")

    if MAX_CODES_PER_LEVEL < 1:
        errors.append("MAX_CODES_PER_LEVEL must be positive")

    if LOG_LEVEL.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        errors.append(f"LOG_LEVEL {LOG_LEVEL!r} is not a logging level")

    return errors


def get_config_summary():
    """Return a summary of the current configuration."""
    return {
        'word_bits': WORD_BITS,
        'max_enum_dim': MAX_ENUM_DIM,
        'canonical_word_cap': CANONICAL_WORD_CAP,
        'jobs': DEFAULT_JOBS,
        'max_codes_per_level': MAX_CODES_PER_LEVEL,
        'desk_scale_max_dim': DESK_SCALE_MAX_DIM,
        'data_dir': DATA_DIR,
        'log_level': LOG_LEVEL,
        'debug_mode': DEBUG_MODE,
    }


def load_overrides(path: str) -> Dict[str, Any]:
    """
    Read a JSON override file and apply the values that map to constants.

    Args:
        path (str): JSON file holding one object whose keys mirror CLI flags

    Returns:
        Dict[str, Any]: all keys of the file, for the CLI layer to merge with
        flags that were not given explicitly

    Raises:
        ConfigError: unknown key or a file that is not a JSON object
    """
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)

    if not isinstance(data, dict):
        raise ConfigError(f"{path}: config file must hold a JSON object")

    unknown = sorted(set(data) - set(OVERRIDE_KEYS))
    if unknown:
        raise ConfigError(f"{path}: unknown config keys {unknown}")

    for key, value in data.items():
        constant = OVERRIDE_KEYS[key]
        if constant is not None:
            globals()[constant] = value

    return data
