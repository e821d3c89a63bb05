"""
Main CLI Application
gaussmp: separability of bipartite Gaussian states, Simon oracle versus
Marchenko-Pastur support test

Exit codes: 0 separable (or success), 1 entangled, 2 error.
stdout carries only the command payload; logs go to stderr.
"""
import argparse
import json
import logging
import sqlite3
import sys
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from dotenv import load_dotenv

from config import ERROR_MESSAGES, LOG_MESSAGES, MP_DEFAULTS, ENSEMBLE_DEFAULTS, get_settings
from criteria import mp_criterion, simon_criterion
from exceptions import GaussMPError
from formats import (
    read_state,
    report_json,
    write_curve_csv,
    write_eigenvalues_csv,
    write_histogram_csv,
    write_report,
    write_state,
)
from gaussian_states import (
    derive_seed,
    random_mixed,
    random_pure,
    separable_product,
    thermal,
    two_mode_squeezed,
    two_mode_squeezed_pairs,
    vacuum,
)
from models import (
    BoundSource,
    ConfusionMatrix,
    EnsembleSpec,
    MPCriterionConfig,
    Normalization,
    PartitionSpec,
    RunConfig,
    StateKind,
    Verdict,
)
from orchestrator import orchestrator
from random_matrix import ks_distance, mp_params, sample_wishart
from run_log import RunLog

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

CommandResult = Tuple[int, Dict[str, Any]]

STOCHASTIC_KINDS = {StateKind.RANDOM_PURE, StateKind.RANDOM_MIXED, StateKind.SEPARABLE_PRODUCT}


def configure_logging(level_name: str) -> None:
    """Log to stderr so stdout stays machine-readable"""
    logging.basicConfig(
        level=getattr(logging, level_name.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S',
        stream=sys.stderr,
        force=True,
    )


def entropy_seed() -> int:
    """Fresh 64-bit seed from OS entropy"""
    seed = int(np.random.SeedSequence().generate_state(1, dtype=np.uint64)[0])
    logger.info(LOG_MESSAGES["generated_seed"].format(seed=seed))
    return seed


def parse_partition(text: Optional[str]) -> Optional[PartitionSpec]:
    return PartitionSpec.parse(text) if text else None


def parse_range(text: str) -> Tuple[float, float]:
    low, high = (float(token) for token in text.split(","))
    return low, high


def parse_ensemble_item(item: str) -> Tuple[StateKind, int]:
    """KIND:COUNT, e.g. separable-product:100"""
    kind, sep, count = item.partition(":")
    if not sep:
        raise ValueError(ERROR_MESSAGES["ensemble_item"].format(item=item))
    try:
        return StateKind(kind), int(count)
    except ValueError as e:
        raise ValueError(ERROR_MESSAGES["ensemble_item"].format(item=item)) from e


def mp_config_from_args(args: argparse.Namespace) -> MPCriterionConfig:
    return MPCriterionConfig(
        r=args.r,
        normalization=Normalization(args.normalization),
        support_tol=args.support_tol,
        bound_source=BoundSource(args.bounds),
    )


def emit(payload: str) -> None:
    sys.stdout.write(payload + "\n")


def cmd_gen_state(args: argparse.Namespace) -> CommandResult:
    """Write a state file in the shared JSON schema"""
    kind = StateKind(args.kind)
    seed = args.seed
    if kind in STOCHASTIC_KINDS and seed is None:
        seed = entropy_seed()
        args.seed = seed

    if kind == StateKind.VACUUM:
        state = vacuum(args.modes)
    elif kind == StateKind.THERMAL:
        state = thermal([args.occupation] * args.modes)
    elif kind == StateKind.TWO_MODE_SQUEEZED:
        if args.modes == 1:
            state = two_mode_squeezed(args.squeezing, args.occupation)
        else:
            state = two_mode_squeezed_pairs([args.squeezing] * args.modes, args.occupation)
    elif kind == StateKind.RANDOM_PURE:
        state = random_pure(args.modes, seed)
    elif kind == StateKind.RANDOM_MIXED:
        state = random_mixed(args.modes, seed, args.noise)
    else:
        state = separable_product(args.modes, seed, args.noise)

    write_state(state, args.out)
    return 0, {"kind": kind.value, "n_modes": state.n_modes, "seed": seed, "out": args.out}


def cmd_check(args: argparse.Namespace) -> CommandResult:
    """Print a separability report; exit 1 when entangled"""
    state = read_state(args.state)
    partition = parse_partition(args.partition)
    if args.criterion == "simon":
        report = simon_criterion.simon_check(state, partition, args.tol)
    else:
        report = mp_criterion.mp_separability_check(state, partition, mp_config_from_args(args))
    payload = report_json(report)
    emit(payload)
    if args.out:
        write_report(report, args.out)
    exit_code = 1 if report.verdict == Verdict.ENTANGLED else 0
    return exit_code, {"criterion": args.criterion, "verdict": report.verdict.value}


def cmd_wishart(args: argparse.Namespace) -> CommandResult:
    """Sample a Wishart spectrum, write it and summarize it against MP(m/n)"""
    seed = args.seed if args.seed is not None else entropy_seed()
    args.seed = seed
    sample = sample_wishart(args.m, args.n, seed)
    logger.info(LOG_MESSAGES["wishart_sampled"].format(m=args.m, n=args.n, seed=seed))
    if args.out:
        if args.format == "json":
            write_report(sample, args.out)
        else:
            write_eigenvalues_csv(sample.eigenvalues, args.out)

    values = sample.eigenvalues
    summary = {
        "m": args.m,
        "n": args.n,
        "seed": seed,
        "mean": float(np.mean(values)),
        "min": float(values[0]),
        "max": float(values[-1]),
        "ks_distance": ks_distance(sample, mp_params(args.m / args.n)),
    }
    emit(json.dumps(summary, indent=2))
    return 0, summary


def format_confusion(confusion: ConfusionMatrix) -> str:
    """Aligned text table, Simon verdicts as rows"""
    rows = [
        ("", "MP Separable", "MP Entangled"),
        ("Simon Separable", confusion.separable_separable, confusion.separable_entangled),
        ("Simon Entangled", confusion.entangled_separable, confusion.entangled_entangled),
    ]
    return "\n".join(f"{str(a):<16}{str(b):>14}{str(c):>14}" for a, b, c in rows)


def cmd_compare(args: argparse.Namespace) -> CommandResult:
    """Run both criteria over labelled ensembles"""
    seed = args.seed if args.seed is not None else entropy_seed()
    args.seed = seed
    squeezing_range = parse_range(args.squeezing_range) if args.squeezing_range else None

    ensembles: List[EnsembleSpec] = []
    for position, item in enumerate(args.ensemble or ["separable-product:100", "tmsv:100"]):
        kind, count = parse_ensemble_item(item)
        ensembles.append(
            EnsembleSpec(
                n_states=count,
                n_modes_per_party=args.modes,
                kind=kind,
                seed=derive_seed(seed, position),
                squeezing=args.squeezing,
                squeezing_range=squeezing_range,
                occupation=args.occupation,
                noise=args.noise,
            )
        )

    report = orchestrator.compare_criteria(
        ensembles,
        parse_partition(args.partition),
        mp_config_from_args(args),
    ).model_copy(update={"seed": seed})
    if args.out:
        write_report(report, args.out)

    lines = [
        f"seed: {seed}",
        format_confusion(report.confusion),
        f"agreement_rate: {report.agreement_rate:.4f}",
        f"simon_label_matches: {report.simon_label_matches}/{report.labeled_states}",
    ]
    lines.extend(f"pooled_ks[{kind}]: {value:.6f}" for kind, value in report.pooled_ks.items())
    emit("\n".join(lines))
    return 0, {
        "seed": seed,
        "n_states": report.n_states,
        "agreement_rate": report.agreement_rate,
        "disagreements": len(report.disagreeing_seeds),
    }


def cmd_spectrum(args: argparse.Namespace) -> CommandResult:
    """Write <prefix>_hist.csv and <prefix>_mp.csv plot data"""
    state = read_state(args.state)
    bins = int(args.bins) if args.bins.isdigit() else args.bins
    report = mp_criterion.spectrum_report(
        state,
        parse_partition(args.partition),
        mp_config_from_args(args),
        bins,
    )
    hist_path, mp_path = f"{args.out}_hist.csv", f"{args.out}_mp.csv"
    write_histogram_csv(report.histogram, hist_path)
    write_curve_csv(report.grid, report.mp_density, mp_path)
    summary = {"hist": hist_path, "mp": mp_path, "ks_distance": report.ks_distance, "bounds": list(report.bounds)}
    emit(json.dumps(summary, indent=2))
    return 0, summary


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--log-level", default=None, help="Overrides GAUSSMP_LOG_LEVEL")
    common.add_argument("--run-log", default=None, help="SQLite run log path; empty disables it")

    criterion_flags = argparse.ArgumentParser(add_help=False)
    criterion_flags.add_argument("--partition", default=None, help="Party B modes, comma separated (0-based)")
    criterion_flags.add_argument("--r", type=float, default=MP_DEFAULTS["r"], help="MP aspect ratio in (0, 1]")
    criterion_flags.add_argument("--normalization", choices=["none", "mean-one"], default="mean-one")
    criterion_flags.add_argument("--bounds", choices=["formula", "paper"], default="formula")
    criterion_flags.add_argument("--support-tol", type=float, default=0.0)

    parser = argparse.ArgumentParser(
        prog="gaussmp",
        description="Gaussian-state separability: Simon PPT oracle vs Marchenko-Pastur support test",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    gen = subparsers.add_parser("gen-state", parents=[common], help="Generate a state file")
    gen.add_argument("--kind", required=True, choices=[kind.value for kind in StateKind])
    gen.add_argument("--modes", type=int, default=1,
                     help="Modes (vacuum, thermal, random-*), modes per party (separable-product) or pairs (tmsv)")
    gen.add_argument("--squeezing", type=float, default=ENSEMBLE_DEFAULTS["squeezing"])
    gen.add_argument("--occupation", type=float, default=ENSEMBLE_DEFAULTS["occupation"])
    gen.add_argument("--noise", type=float, default=ENSEMBLE_DEFAULTS["noise"])
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--out", required=True)
    gen.set_defaults(handler=cmd_gen_state)

    check = subparsers.add_parser("check", parents=[common, criterion_flags], help="Check one state")
    check.add_argument("state", help="State JSON file")
    check.add_argument("--criterion", choices=["simon", "mp"], default="simon")
    check.add_argument("--tol", type=float, default=None, help="Overrides GAUSSMP_DEFAULT_TOL")
    check.add_argument("--out", default=None, help="Also write the report JSON here")
    check.set_defaults(handler=cmd_check)

    wishart = subparsers.add_parser("wishart", parents=[common], help="Sample a Wishart spectrum")
    wishart.add_argument("--m", type=int, required=True)
    wishart.add_argument("--n", type=int, required=True)
    wishart.add_argument("--seed", type=int, default=None)
    wishart.add_argument("--out", default=None)
    wishart.add_argument("--format", choices=["csv", "json"], default="csv")
    wishart.set_defaults(handler=cmd_wishart)

    compare = subparsers.add_parser("compare", parents=[common, criterion_flags], help="Compare the criteria")
    compare.add_argument("--ensemble", action="append", default=None, help="KIND:COUNT, repeatable")
    compare.add_argument("--modes", type=int, default=1, help="Modes per party")
    compare.add_argument("--squeezing", type=float, default=ENSEMBLE_DEFAULTS["squeezing"])
    compare.add_argument("--squeezing-range", default="0.5,2.0", help="LOW,HIGH; empty for fixed squeezing")
    compare.add_argument("--occupation", type=float, default=ENSEMBLE_DEFAULTS["occupation"])
    compare.add_argument("--noise", type=float, default=ENSEMBLE_DEFAULTS["noise"])
    compare.add_argument("--seed", type=int, default=None)
    compare.add_argument("--out", default=None, help="AgreementReport JSON path")
    compare.set_defaults(handler=cmd_compare)

    spectrum = subparsers.add_parser("spectrum", parents=[common, criterion_flags], help="Write plot data")
    spectrum.add_argument("state", help="State JSON file")
    spectrum.add_argument("--bins", default="fd", help="numpy bin rule or bin count")
    spectrum.add_argument("--out", required=True, help="Output prefix")
    spectrum.set_defaults(handler=cmd_spectrum)

    return parser


def open_run_log(path: str) -> Optional[RunLog]:
    if not path:
        return None
    try:
        return RunLog(path)
    except (sqlite3.Error, OSError) as e:
        logger.warning(f"Run log disabled: {e}")
        return None


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    known = {"command", "seed", "partition", "r", "tol", "out", "format", "handler", "log_level", "run_log"}
    extra = {key: value for key, value in vars(args).items() if key not in known}
    return RunConfig(
        command=args.command,
        seed=getattr(args, "seed", None),
        n_modes=getattr(args, "modes", None),
        partition=getattr(args, "partition", None),
        r=getattr(args, "r", None),
        tol=getattr(args, "tol", None),
        out=getattr(args, "out", None),
        format=getattr(args, "format", "json"),
        extra=extra,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one command and return its exit code

    Args:
        argv: Argument list without the program name (defaults to sys.argv[1:])

    Returns:
        int: 0 separable/success, 1 entangled, 2 error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    settings = get_settings()
    configure_logging(args.log_level or settings.log_level)
    run_log = open_run_log(args.run_log if args.run_log is not None else settings.run_log_path)

    logger.info(LOG_MESSAGES["command_start"].format(command=args.command))
    handler: Callable[[argparse.Namespace], CommandResult] = args.handler
    run_id = None
    try:
        if run_log is not None:
            run_id = run_log.start_run(run_config_from_args(args))
        exit_code, summary = handler(args)
    except (GaussMPError, ValueError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        sys.stderr.write(f"error: {e}\n")
        exit_code, summary = 2, {"error": str(e), "type": type(e).__name__}
    except Exception as e:
        logger.error(f"{args.command} failed unexpectedly: {e}")
        sys.stderr.write(f"error: {type(e).__name__}: {e}\n")
        exit_code, summary = 2, {"error": str(e), "type": type(e).__name__}

    if run_log is not None:
        run_log.finish_run(run_id, exit_code, summary)

    logger.info(LOG_MESSAGES["command_done"].format(command=args.command, exit_code=exit_code))
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
