#!/usr/bin/env python3
"""
CodeClass - Command Line Entry Point

CodeClass classifies binary linear codes with a prescribed dual distance and
uses the classifications to settle existence questions. Subcommands:
- classify: all [n,k]^{>=d⊥} codes for one k, level by level
- report: count tables (and catalog statistics) of an output directory
- metrics: weight enumerator, d, d⊥ and evenness of a matrix file
- canon: canonical form of a matrix file
- nonexist: decide whether an [n,k,d] code exists
- verify-fixtures: check the bundled [32,15]^8 codes

Exit codes: 0 success, 2 UNRESOLVED verdict, 1 error.

Author: CodeClass Team
Version: 1.0.0
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

import config
from classifier import (
    ClassificationManager,
    ClassifyOptions,
    PipelinePlan,
    Target,
    Verdict,
    derive_optimal_counts,
    nonexistence_pipeline,
    report_table,
)
from codes.bounds import load_external_bounds, published_ltable
from codes.equivalence import are_equivalent, canonical_labeling
from codes.errors import CodeClassificationError, ConfigError, StarredCellError
from codes.extension import candidate_columns
from codes.fixtures import G32_ENUMERATORS, load_g32
from codes.gf2core import rank, read_matrix
from codes.metrics import code_params, is_even, weight_enumerator
from database import CatalogManager, load_directory

logger = logging.getLogger("codeclass")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNRESOLVED = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codeclass",
        description="Classify binary linear codes with prescribed dual distance.",
    )
    parser.add_argument("--config", help="JSON file with default values for the flags")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    verbosity.add_argument("--quiet", "-q", action="store_true", help="warnings and errors only")

    commands = parser.add_subparsers(dest="command", required=True)

    classify = commands.add_parser("classify", help="classify [n,k]^{>=dperp} codes for one k")
    classify.add_argument("--dperp", type=int)
    classify.add_argument("--k", type=int)
    classify.add_argument("--max-n", type=int, dest="max_n")
    classify.add_argument("--even", action="store_true", default=None,
                          help="only codes containing the all-ones word")
    classify.add_argument("--jobs", type=int)
    classify.add_argument("--out")

    report = commands.add_parser("report", help="print count tables of an output directory")
    report.add_argument("--dir")
    report.add_argument("--csv", action="store_true", help="machine-readable rows")
    report.add_argument("--stats", action="store_true", help="catalog statistics")
    report.add_argument("--optimal", metavar="N,K", help="derive the optimal-code count of one cell")

    metrics = commands.add_parser("metrics", help="parameters of a generator matrix file")
    metrics.add_argument("--in", dest="input", required=True)

    canon = commands.add_parser("canon", help="canonical form of a generator matrix file")
    canon.add_argument("--in", dest="input", required=True)

    nonexist = commands.add_parser("nonexist", help="decide whether an [n,k,d] code exists")
    nonexist.add_argument("--target", required=True, help="N,K,D")
    nonexist.add_argument("--db-dir", dest="db_dir")
    nonexist.add_argument("--desk-scale", action="store_true", default=None, dest="desk_scale")
    nonexist.add_argument("--route", choices=("auto", "direct", "puncture"), default="auto")
    nonexist.add_argument("--dual-method", choices=("auto", "family", "residual"), default="auto",
                          dest="dual_method", help="how the dual family is obtained")
    nonexist.add_argument("--bounds", metavar="FILE",
                          help="distance upper bounds, one 'n k dhi' triple per line (keyed by length and "
                               "dimension, not 'k d dhi'); defaults to the bundled file")
    nonexist.add_argument("--jobs", type=int)
    nonexist.add_argument("--evidence", help="write the evidence bundle to this JSON file")

    commands.add_parser("verify-fixtures", help="check the bundled [32,15]^8 codes")
    return parser


class CodeClassApp:
    """
    Coordinates configuration, logging and the subcommands.

    The constructor applies the configuration file, sets up logging and
    validates the configuration; run() dispatches the subcommand.
    """

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.init_config()
        self.init_logging()

    def init_config(self):
        """Apply --config values to every flag that was not given explicitly."""
        if self.args.config:
            overrides = config.load_overrides(self.args.config)
            for key, value in overrides.items():
                if hasattr(self.args, key) and getattr(self.args, key) is None:
                    setattr(self.args, key, value)
        errors = config.validate_config()
        if errors:
            raise ConfigError("; ".join(errors))

    def init_logging(self):
        level = config.LOG_LEVEL.upper()
        if config.DEBUG_MODE or self.args.verbose:
            level = "DEBUG"
        elif self.args.quiet:
            level = "WARNING"
        logging.basicConfig(level=level, format=config.LOG_FORMAT, force=True)
        if config.DEBUG_MODE:
            logger.debug("configuration: %s", config.get_config_summary())

    def run(self) -> int:
        handler = {
            "classify": self.cmd_classify,
            "report": self.cmd_report,
            "metrics": self.cmd_metrics,
            "canon": self.cmd_canon,
            "nonexist": self.cmd_nonexist,
            "verify-fixtures": self.cmd_verify_fixtures,
        }[self.args.command]
        return handler()

    # -- subcommands ------------------------------------------------------

    def _require(self, *names: str) -> None:
        missing = [name for name in names if getattr(self.args, name) is None]
        if missing:
            raise ConfigError(f"missing required option(s): {', '.join('--' + m.replace('_', '-') for m in missing)}")

    def cmd_classify(self) -> int:
        self._require("dperp", "k", "max_n")
        args = self.args
        options = ClassifyOptions(
            jobs=args.jobs or config.DEFAULT_JOBS,
            even=bool(args.even),
        )
        manager = ClassificationManager(args.out or config.DEFAULT_OUT_DIR)
        levels = manager.classify(args.k, args.dperp, args.max_n, options)
        for db in levels:
            star = "*" if db.starred else ""
            flag = "" if db.complete else " (incomplete)"
            print(f"[{db.n},{db.k}]^{db.dperp}: {db.count}{star}{flag}")
        return EXIT_OK

    def cmd_report(self) -> int:
        directory = self.args.dir or config.DEFAULT_OUT_DIR
        dbs = load_directory(directory)
        for report in report_table(dbs):
            print(report.to_csv() if self.args.csv else report.render())
        if self.args.optimal:
            n, k = (int(part) for part in self.args.optimal.split(","))
            full = [db for db in dbs if not db.even]
            try:
                print(f"optimal codes for cell [{n},{k}]: {derive_optimal_counts(full, n, k)}")
            except StarredCellError as e:
                print(f"cell [{n},{k}]: {e}")
        if self.args.stats:
            catalog = CatalogManager(directory)
            stats = catalog.get_stats()
            print("Catalog statistics:")
            for key, value in stats.items():
                print(f"  {key}: {value}")
            for entry in catalog.get_l_table().entries():
                print(f"  L({entry.k},{entry.dperp}) = {entry.value} ({entry.provenance})")
        return EXIT_OK

    def cmd_metrics(self) -> int:
        generator = read_matrix(self.args.input)
        params = code_params(generator)
        print(f"parameters: {params}")
        print(f"rank: {rank(generator)}")
        print(f"even: {'yes' if is_even(generator) else 'no'}")
        print(f"weight enumerator: {weight_enumerator(generator)}")
        return EXIT_OK

    def cmd_canon(self) -> int:
        generator = read_matrix(self.args.input)
        labeling = canonical_labeling(generator)
        print(labeling.form.hex())
        print(labeling.form.to_matrix())
        print(f"automorphism generators found: {len(labeling.generators)}")
        return EXIT_OK

    def cmd_nonexist(self) -> int:
        args = self.args
        plan = PipelinePlan(
            db_dir=args.db_dir or config.DEFAULT_OUT_DIR,
            desk_scale=bool(args.desk_scale),
            route=args.route,
            dual_method=args.dual_method,
            jobs=args.jobs or config.DEFAULT_JOBS,
            bounds=load_external_bounds(args.bounds) if args.bounds else None,
        )
        result = nonexistence_pipeline(Target.parse(args.target), plan)
        for item in result.evidence:
            print(f"{item.step}: {item.detail}")
        if args.evidence:
            with open(args.evidence, "w", encoding="utf-8") as handle:
                json.dump(result.to_dict(), handle, indent=2, default=str)
        print(f"{result.target}: {result.verdict.value}")
        return EXIT_UNRESOLVED if result.verdict == Verdict.UNRESOLVED else EXIT_OK

    def cmd_verify_fixtures(self) -> int:
        codes = load_g32()
        ok = True
        for number, (generator, expected) in enumerate(zip(codes, G32_ENUMERATORS), start=1):
            enumerator = str(weight_enumerator(generator))
            params = code_params(generator)
            mask = candidate_columns(generator, 8)
            checks = {
                "enumerator": enumerator == expected,
                "rank 15": rank(generator) == 15,
                "even": is_even(generator),
                "d = 8": params.d == 8,
                "dual distance 8": params.dperp == 8,
                "no [33,15]^8 extension": len(mask) == 0,
            }
            for name, passed in checks.items():
                print(f"G32-{number} {name}: {'ok' if passed else 'FAILED'}")
            ok &= all(checks.values())
        inequivalent = not are_equivalent(*codes)
        print(f"G32-1 and G32-2 inequivalent: {'ok' if inequivalent else 'FAILED'}")
        ok &= inequivalent
        problems = published_ltable().violations()
        for problem in problems:
            print(f"L table: {problem}")
        return EXIT_OK if ok and not problems else EXIT_ERROR


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point for the command line tool.

    Returns:
        int: exit code (0 success, 2 unresolved verdict, 1 error)
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on usage errors, which is reserved for UNRESOLVED
        return EXIT_OK if not e.code else EXIT_ERROR

    try:
        app = CodeClassApp(args)
        return app.run()
    except CodeClassificationError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR


# Application entry point
if __name__ == "__main__":
    sys.exit(main())
