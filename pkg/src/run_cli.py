"""
Command-line entry point: ``python -m src.run_cli <command> [options]``.

Commands print a human readable report, or with ``--json`` a single
deterministic JSON document on stdout. Logs go to stderr. Exit status is
0 on success, 1 when a verification fails or two methods disagree, 2 on
usage errors.
"""
from __future__ import annotations

import argparse
import logging
import sys

from src.cells.asymptotics import CellAnalyzer
from src.cells.schutzenberger import mathas_decompose, schutzenberger_L, schutzenberger_R
from src.core.errors import MethodDisagreementError, RankBoundError, VerificationError
from src.core.permutations import Permutation
from src.core.utils import (
    LOG_FORMAT,
    dump_json,
    load_config,
    print_header,
    print_metrics,
    print_section,
    resolve_cache_dir,
    save_report,
    setup_logging,
)
from src.hecke.algebra import HeckeAlgebra
from src.hecke.kl_table import build_kl_table, check_rank, configure_tables
from src.shapes.complexes import rouquier_shape
from src.twists.braids import full_twist, half_twist
from src.twists.idempotents import TableauPath, gamma, quasi_idempotent, young_idempotent
from src.verification.verification_runner import LEVELS, VerificationRunner

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", type=int, default=None, help="rank of the symmetric group")
    common.add_argument("--json", action="store_true", help="emit JSON on stdout")
    common.add_argument("--cache-dir", default=None, help="KL table cache directory")
    common.add_argument("--force", action="store_true", help="allow ranks above kl.max_rank")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized checks")
    common.add_argument("--config", default=None, help="path to config.yaml")
    common.add_argument("--log-level", default=None, help="logging level")

    parser = argparse.ArgumentParser(prog="hecke-cells", description="Exact Kazhdan-Lusztig computations for S_n")
    commands = parser.add_subparsers(dest="command", required=True)

    kl = commands.add_parser("kl-poly", parents=[common], help="KL polynomial h_{y,w} or the full table")
    kl.add_argument("--y", default="id")
    kl.add_argument("--w", default=None)
    kl.add_argument("--table", action="store_true")

    commands.add_parser("cells", parents=[common], help="cells, statistics and distinguished involutions")

    schutz = commands.add_parser("schutz", parents=[common], help="Schützenberger images of an element")
    schutz.add_argument("--w", required=True)

    twist = commands.add_parser("twist-expand", parents=[common], help="half or full twist in the KL basis")
    twist.add_argument("which", choices=["ht", "ft"])

    idem = commands.add_parser("idempotent", parents=[common], help="k_T, γ_T and p_T for a tableau path")
    idem.add_argument("--path", required=True, help='shapes separated by ";", e.g. "1;1,1"')

    shape = commands.add_parser("complex-shape", parents=[common], help="shape of the minimal Rouquier complex")
    shape.add_argument("--w", required=True)

    verify = commands.add_parser("verify", parents=[common], help="run the acceptance suite")
    verify.add_argument("--level", choices=sorted(LEVELS), default="fast")
    verify.add_argument("--report", action="store_true", help="save a CSV report under reports.dir")
    verify.add_argument("--only", nargs="*", default=None, help="criteria to run")
    return parser


def configure(args: argparse.Namespace) -> dict:
    """Loads config, sets up logging and the KL table registry."""
    config = load_config(args.config)
    log_config = config.get("logging", {})
    setup_logging(args.log_level or log_config.get("level", "WARNING"), log_config.get("format") or LOG_FORMAT)
    kl_config = config.get("kl", {})
    cache_config = config.get("cache", {})
    configure_tables(
        max_rank=kl_config.get("max_rank", 7),
        workers=kl_config.get("workers", 1),
        progress=kl_config.get("progress", False) and not args.json,
        use_cache=bool(cache_config.get("enabled", True)),
        cache_dir=resolve_cache_dir(args.cache_dir, config),
    )
    args.warn_rank = (config.get("idempotents") or {}).get("warn_rank", 5)
    return config


def require_rank(args: argparse.Namespace) -> int:
    if args.n is None:
        raise ValueError(f"{args.command} needs -n")
    check_rank(args.n, args.force)
    return args.n


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------
def cmd_kl_poly(args: argparse.Namespace) -> dict:
    n = require_rank(args)
    if args.table:
        table = build_kl_table(n, args.force)
        entries = [
            [str(y), str(w), table.kl_polynomial(y, w).to_json()]
            for y, w, _ in sorted(table.items(), key=lambda item: (item[1].sort_key, item[0].sort_key))
        ]
        return {"n": n, "table": entries}
    if args.w is None:
        raise ValueError("kl-poly needs --w or --table")
    y, w = Permutation.parse(args.y, n), Permutation.parse(args.w, n)
    h = HeckeAlgebra.for_rank(n).kl_polynomial(y, w)
    return {"n": n, "y": str(y), "w": str(w), "h": str(h), "coeffs": h.to_json()}


def cmd_cells(args: argparse.Namespace) -> dict:
    n = require_rank(args)
    analyzer = CellAnalyzer(n)
    report = analyzer.cell_report()
    for entry in report:
        entry["delta"] = [
            [d, analyzer.delta(Permutation.from_json(d))] for d in entry["distinguished"]
        ]
    return {"n": n, "cells": report}


def cmd_schutz(args: argparse.Namespace) -> dict:
    n = require_rank(args)
    w = Permutation.parse(args.w, n)
    left = schutzenberger_L(w, method="both")
    return {
        "n": n,
        "w": str(w),
        "sch_L": str(left),
        "sch_R": str(schutzenberger_R(w, method="both")),
        "mathas": mathas_decompose(w).to_json(),
    }


def cmd_twist_expand(args: argparse.Namespace) -> dict:
    n = require_rank(args)
    algebra = HeckeAlgebra.for_rank(n)
    element = half_twist(n) if args.which == "ht" else full_twist(n)
    return {"n": n, "which": args.which, "kl": algebra.to_kl(element).to_json(), "text": str(algebra.to_kl(element))}


def cmd_idempotent(args: argparse.Namespace) -> dict:
    T = TableauPath.parse(args.path)
    if args.n is not None and args.n != T.n:
        raise ValueError(f"Path has size {T.n}, but -n {args.n} was given")
    check_rank(T.n, args.force)
    p = young_idempotent(T, warn_rank=args.warn_rank)
    return {
        "path": T.to_json(),
        "tableau": T.tableau().to_json(),
        "gamma": gamma(T).to_json(),
        "k_T": quasi_idempotent(T, warn_rank=args.warn_rank).to_json(),
        "p_T": p.to_json(),
        "text": str(p),
    }


def cmd_complex_shape(args: argparse.Namespace) -> dict:
    n = require_rank(args)
    w = Permutation.parse(args.w, n)
    shape = rouquier_shape(w)
    return {"w": str(w), **shape.to_json(), "perverse": shape.is_perverse()}


COMMANDS = {
    "kl-poly": cmd_kl_poly,
    "cells": cmd_cells,
    "schutz": cmd_schutz,
    "twist-expand": cmd_twist_expand,
    "idempotent": cmd_idempotent,
    "complex-shape": cmd_complex_shape,
}


def cmd_verify(args: argparse.Namespace, config: dict) -> int:
    verify_config = config.get("verify", {})
    seed = args.seed if args.seed is not None else verify_config.get("seed", 0)
    runner = VerificationRunner(
        level=args.level,
        seed=seed,
        closure_max_rank=verify_config.get("closure_max_rank", 5),
        levels=verify_config.get("levels") or LEVELS,
        progress=not args.json,
    )
    report = runner.run(only=args.only)
    summary = runner.summary(report)

    if args.report:
        path = save_report(report, f"verify_{args.level}_seed{seed}.csv", (config.get("reports") or {}).get("dir"))
        logger.info("Report written to %s", path)

    if args.json:
        print(dump_json({"level": args.level, "seed": seed, "summary": summary, "criteria": report.to_dict(orient="records")}))
    else:
        print_header(f"VERIFICATION ({args.level.upper()}, n <= {runner.max_rank}, seed {seed})")
        print_section("Criteria")
        print(report[["criterion", "cases", "passed", "seconds"]].to_string(index=False))
        failed = report[~report["passed"]]
        for _, row in failed.iterrows():
            print_section(f"FAILED: {row['criterion']}")
            print(f"   {row['error']}")
            print(f"   witness: {row['witness']}")
        print_metrics(summary, "Summary")
    return 0 if summary["failed"] == 0 else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = configure(args)
        if args.command == "verify":
            return cmd_verify(args, config)
        payload = COMMANDS[args.command](args)
    except (VerificationError, MethodDisagreementError) as exc:
        logger.error("%s", exc)
        if args.json:
            print(dump_json({"error": str(exc), "witness": exc.witness}))
        return 1
    except (RankBoundError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.json:
        print(dump_json(payload))
    else:
        print_header(f"{args.command.upper()}")
        for key, value in payload.items():
            if key in ("text", "h"):
                continue
            print(f"   {key:.<30} {dump_json(value) if isinstance(value, (dict, list)) else value}")
        if "text" in payload:
            print(f"\n   {payload['text']}")
        if "h" in payload:
            print(f"\n   h = {payload['h']}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
