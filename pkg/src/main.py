"""
Main entry point for Mealy Cycle Groups.

Command-line front end: classification, orders and witnesses of automaton
groups, union bounds and the seeded studies. Reports go to standard output
(or ``--out``); logs and errors go to standard error.
"""

import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from src.algebra.groups import group_order
from src.algebra.permutation import format_cycles
from src.automata.embedding import generated_group
from src.automata.formats import load_automaton
from src.automata.structure import classify_structure
from src.config import Settings, configure, get_settings
from src.errors import MealyGroupError, PreconditionError, UsageError
from src.experiments import reporting
from src.experiments import studies
from src.models import DixonReport, StructureKind, TrialConfig, TrialMode
from src.theory.classifier import cycle_components, classify
from src.theory.signatures import union_exponent
from src.theory.witness import coprime_split, witness_prime_cycle_n

logger = logging.getLogger("mcg")

SEED_LIMIT = 2 ** 64


def _seed(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be a decimal integer, got {text!r}") from None
    if not 0 <= value < SEED_LIMIT:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "csv"], default="text", help="Output format")
    common.add_argument("--out", type=Path, help="Write the report to this file instead of stdout")
    common.add_argument("--jobs", type=_positive, default=1, help="Parallel trial workers")
    common.add_argument("--log-level", default=None, help="Logging level (default from settings)")
    common.add_argument("--config", type=Path, help="JSON or YAML settings file")

    parser = argparse.ArgumentParser(prog="mcg", description="Groups generated by cycle-without-exit Mealy automata")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="Classify an automaton group")
    p.add_argument("file", type=Path)
    p.add_argument("--witness", action="store_true", help="Also extract a prime-cycle witness")

    p = sub.add_parser("order", parents=[common], help="Order of an automaton group")
    p.add_argument("file", type=Path)

    p = sub.add_parser("witness", parents=[common], help="Prime-cycle witness of a cyclic automaton")
    p.add_argument("file", type=Path)

    p = sub.add_parser("sample", parents=[common], help="Outcome distribution of random cyclic automata")
    p.add_argument("--states", type=_positive, default=2)
    p.add_argument("--letters", type=_positive, required=True)
    p.add_argument("--trials", type=_positive, default=1000)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--summary", action="store_true", help="CSV per outcome instead of per trial")

    p = sub.add_parser("enumerate", parents=[common], help="Exact n = 2 distribution for small k")
    p.add_argument("--letters", type=_positive, required=True)
    p.add_argument("--summary", action="store_true", help="CSV per outcome instead of per classification")

    p = sub.add_parser("order-stats", parents=[common], help="Estimate of k^2 P(o(σ) = o(τ))")
    p.add_argument("--letters", type=_positive, required=True)
    p.add_argument("--trials", type=_positive, default=1000)
    p.add_argument("--seed", type=_seed, required=True)

    p = sub.add_parser("union-bound", parents=[common], help="Exponent u of the union sign bound")
    p.add_argument("sizes", type=_positive, nargs="+")

    p = sub.add_parser("dixon-ref", parents=[common], help="Truncated Dixon series, optionally measured")
    p.add_argument("k", type=_positive)
    p.add_argument("--trials", type=_positive)
    p.add_argument("--seed", type=_seed)

    p = sub.add_parser("inverse-pairs", parents=[common], help="Groups of (σ, σ⁻¹), (τ, τ⁻¹)")
    p.add_argument("--letters", type=_positive, required=True)
    p.add_argument("--trials", type=_positive, default=1000)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--force-even", action="store_true")
    p.add_argument("--include-identity", action="store_true")
    return parser


def _classify(args: argparse.Namespace) -> str:
    report = classify(load_automaton(args.file), with_witness=args.witness)
    if args.format == "csv":
        return reporting.classify_csv([report])
    return reporting.classification_text(report)


def _order(args: argparse.Namespace) -> str:
    order = group_order(generated_group(load_automaton(args.file)))
    if args.format == "csv":
        return f"verified_order\n{order}\n"
    return f"verified_order: {order}\n"


def _witness(args: argparse.Namespace) -> str:
    automaton = load_automaton(args.file)
    if classify_structure(automaton).kind != StructureKind.CYCLIC:
        raise PreconditionError("witnesses are defined for cyclic automata")
    perms = cycle_components(automaton)[0]
    witness = witness_prime_cycle_n(perms)
    if args.format == "csv":
        return f"coordinate,prime,cycle\n{witness.coordinate},{witness.prime},{format_cycles(witness.cycle)}\n"
    lines = [
        f"coordinate: {witness.coordinate}",
        f"prime: {witness.prime}",
        f"cycle: {format_cycles(witness.cycle)}",
    ]
    if len(perms) == 2:
        certificates = coprime_split(perms[0], perms[1])
        for c in certificates or []:
            pair = ", ".join(format_cycles(p) for p in c.element)
            lines.append(f"coprime: rotation {c.rotation} ^ {c.exponent} = ({pair})")
    return "\n".join(lines) + "\n"


async def _sample(args: argparse.Namespace) -> str:
    cfg = TrialConfig(n=args.states, k=args.letters, trials=args.trials, seed=args.seed, mode=TrialMode.SAMPLE)
    report = await studies.sample_cyclic_distribution(cfg, jobs=args.jobs)
    if args.format == "csv":
        return reporting.summary_csv(report) if args.summary else reporting.sample_csv(report.records)
    return reporting.distribution_text(report)


async def _enumerate(args: argparse.Namespace) -> str:
    report = await studies.exact_enumeration_2(args.letters, jobs=args.jobs)
    if args.format == "csv":
        return reporting.summary_csv(report) if args.summary else reporting.enumeration_csv(report.records)
    return reporting.distribution_text(report)


async def _order_stats(args: argparse.Namespace) -> str:
    report = await studies.same_order_probability(args.letters, args.trials, args.seed, jobs=args.jobs)
    if args.format == "csv":
        return reporting.order_stats_csv(report)
    return reporting.order_stats_text(report)


def _union_bound(args: argparse.Namespace) -> str:
    u = union_exponent(args.sizes)
    if args.format == "csv":
        return f"sizes,u\n{' '.join(str(s) for s in args.sizes)},{u}\n"
    return f"u = {u}\n"


async def _dixon(args: argparse.Namespace) -> str:
    if args.trials is not None and args.seed is None:
        raise UsageError("--seed is required when --trials is given")
    if args.trials is None:
        report = DixonReport(k=args.k, reference=studies.dixon_reference(args.k))
    else:
        report = await studies.dixon_frequency(args.k, args.trials, args.seed, jobs=args.jobs)
    if args.format == "csv":
        return reporting.dixon_csv(report)
    return reporting.dixon_text(report)


async def _inverse_pairs(args: argparse.Namespace) -> str:
    report = await studies.inverse_pair_experiment(
        args.letters,
        args.trials,
        args.seed,
        jobs=args.jobs,
        force_even=args.force_even,
        include_identity=args.include_identity,
    )
    if args.format == "csv":
        return reporting.summary_csv(report)
    return reporting.distribution_text(report, title=f"inverse pairs (k={args.letters})")


async def execute(args: argparse.Namespace) -> str:
    """Run the selected subcommand and return its report."""
    handlers = {
        "classify": _classify,
        "order": _order,
        "witness": _witness,
        "union-bound": _union_bound,
        "sample": _sample,
        "enumerate": _enumerate,
        "order-stats": _order_stats,
        "dixon-ref": _dixon,
        "inverse-pairs": _inverse_pairs,
    }
    result = handlers[args.command](args)
    return await result if asyncio.iscoroutine(result) else result


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _emit(output: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(output)
        return
    try:
        out.write_text(output)
    except OSError as e:
        raise UsageError(f"cannot write report to {out}: {e.strerror or e}") from e


def run(argv: Optional[List[str]] = None) -> int:
    """Execute one command line; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        if args.config is not None:
            configure(Settings.from_file(args.config))
        _configure_logging(args.log_level or get_settings().log_level)
        logger.debug(f"Running {args.command}")
        output = asyncio.run(execute(args))
        _emit(output, args.out)
    except MealyGroupError as e:
        print(f"mcg: error: {e}", file=sys.stderr)
        return e.exit_code
    except (OSError, ValidationError) as e:
        print(f"mcg: error: {e}", file=sys.stderr)
        return UsageError.exit_code
    return 0


def main() -> None:
    load_dotenv()
    sys.exit(run())


if __name__ == "__main__":
    main()
