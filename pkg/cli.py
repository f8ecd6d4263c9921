"""Command-line interface for Swapnet.

Usage:
    python cli.py synth sample.spec --method bsssn --side output
    python cli.py synth sample.spec --opt --discovery-order -o sample.circ
    python cli.py optimize sample.circ --templates extra.tpl
    python cli.py simulate sample.circ --input 5
    python cli.py simulate sample.circ --bits 101
    python cli.py verify sample.circ sample.spec
    python cli.py embed adder.tbl
    python cli.py stats sample.circ --spec sample.spec
    python cli.py bench --widths 3 5 --trials 10 -o bench.csv

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections import Counter
from pathlib import Path

from pydantic import ValidationError

from config import BENCH_DEFAULT_SEED, BENCH_DEFAULT_TRIALS, BENCH_DEFAULT_WIDTHS, LOG_FORMAT
from engine.bench import bench
from engine.embedding import embed
from engine.metrics import complexity
from engine.notation import (
    format_circuit,
    format_report,
    format_spec,
    format_table,
    parse_circuit,
    parse_spec,
    parse_table,
    parse_template,
)
from engine.optimizer import optimize
from engine.simulator import apply_circuit, realized_spec, realizes
from engine.synthesis import synthesize
from engine.templates import BUILTIN_TEMPLATES
from models.bits import bitstring, from_int
from models.errors import SwapnetError
from models.options import BenchConfig, Method, OptimizeConfig, Side, SynthesisOptions, TieRule

logger = logging.getLogger("swapnet.cli")


def _read(path: str) -> str:
    return Path(path).read_text()


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
        logger.info("wrote %s", output)
    else:
        sys.stdout.write(text)


def cmd_synth(args: argparse.Namespace) -> int:
    """Synthesize a spec file into a circuit."""
    spec = parse_spec(_read(args.spec))
    options = SynthesisOptions(
        method=Method(args.method),
        tie_rule=TieRule(args.tie),
        side=Side(args.side),
        reduce_controls=args.reduce_controls,
        seed=args.seed,
    )
    circuit = synthesize(spec, options)
    if args.opt:
        circuit = optimize(circuit)
    _emit(format_circuit(circuit, discovery_order=args.discovery_order), args.output)
    return 0


def cmd_optimize(args: argparse.Namespace) -> int:
    """Optimize a circuit file, optionally with extra templates."""
    circuit = parse_circuit(_read(args.circuit))
    config = OptimizeConfig()
    if args.templates:
        extra = tuple(parse_template(_read(path), Path(path).stem) for path in args.templates)
        config = OptimizeConfig(templates=BUILTIN_TEMPLATES + extra)
    _emit(format_circuit(optimize(circuit, config)), args.output)
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    """Print circuit outputs for one input or for all of them."""
    circuit = parse_circuit(_read(args.circuit))
    if args.all:
        spec = realized_spec(circuit)
        lines = [f"{x} -> {y}" for x, y in enumerate(spec.perm)]
    else:
        x = bitstring(args.bits) if args.bits else from_int(args.input, circuit.width)
        y = apply_circuit(circuit, x)
        lines = [f"{x.value} -> {y.value} ({x} -> {y})"]
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    """Exit 0 when the circuit realizes the spec, 1 otherwise."""
    circuit = parse_circuit(_read(args.circuit))
    spec = parse_spec(_read(args.spec))
    if circuit.width != spec.width:
        print(f"not equivalent: circuit has {circuit.width} lines, spec has {spec.width}")
        return 1
    if realizes(circuit, spec):
        print("equivalent")
        return 0
    print("not equivalent")
    return 1


def cmd_embed(args: argparse.Namespace) -> int:
    """Embed a truth table; the report trails the spec as comments."""
    table = parse_table(_read(args.table))
    logger.debug("table as read:\n%s", format_table(table))
    spec, report = embed(table)
    _emit(format_spec(spec) + format_report(report), args.output)
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    """Gate count, control histogram and C(f)."""
    circuit = parse_circuit(_read(args.circuit))
    spec = parse_spec(_read(args.spec)) if args.spec else realized_spec(circuit)
    histogram = Counter(gate.control_count for gate in circuit.gates)
    print(f"lines {circuit.width}")
    print(f"gates {len(circuit)}")
    print(f"controls {circuit.control_count}")
    for count in sorted(histogram):
        print(f"gates_with_{count}_controls {histogram[count]}")
    print(f"cf {complexity(spec)}")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    """Run the benchmark sweep; exit 1 if any row failed verification."""
    config = BenchConfig(
        widths=tuple(args.widths),
        trials=args.trials,
        methods=tuple(Method(m) for m in args.methods),
        tie_rules=tuple(TieRule(t) for t in args.ties),
        sides=tuple(Side(s) for s in args.sides),
        base_seed=args.seed,
        output=Path(args.output) if args.output else None,
        timing=args.timing,
    )
    text = bench(config)
    if config.output is None:
        sys.stdout.write(text)
    return 1 if ",verify_failed\n" in text else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swapnet",
        description="Reversible logic synthesis by bit-string swapping",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More logging (repeatable)")
    parser.add_argument("-q", "--quiet", action="store_true", help="Only log errors")

    subparsers = parser.add_subparsers(dest="command", required=True)

    synth_parser = subparsers.add_parser("synth", help="Synthesize a spec into a circuit")
    synth_parser.add_argument("spec", help="Spec file ('n <width>' then 'perm ...')")
    synth_parser.add_argument("--method", choices=[m.value for m in Method], default=Method.BSSSN.value)
    synth_parser.add_argument("--side", choices=[s.value for s in Side], default=Side.OUTPUT.value)
    synth_parser.add_argument("--tie", choices=[t.value for t in TieRule], default=TieRule.LOWEST_VALUE.value)
    synth_parser.add_argument("--reduce-controls", action="store_true", help="Drop unneeded controls while sorting")
    synth_parser.add_argument("--seed", type=int, default=None, help="Seed for --method random")
    synth_parser.add_argument("--opt", action="store_true", help="Optimize the synthesized circuit")
    synth_parser.add_argument("--discovery-order", "--paper-order", dest="discovery_order", action="store_true",
                              help="List gates last-applied first")
    synth_parser.add_argument("-o", "--output", help="Write the circuit here instead of stdout")
    synth_parser.set_defaults(handler=cmd_synth)

    optimize_parser = subparsers.add_parser("optimize", help="Reduce a circuit")
    optimize_parser.add_argument("circuit", help="Circuit file")
    optimize_parser.add_argument("--templates", nargs="+", help="Extra template files")
    optimize_parser.add_argument("-o", "--output", help="Write the circuit here instead of stdout")
    optimize_parser.set_defaults(handler=cmd_optimize)

    simulate_parser = subparsers.add_parser("simulate", help="Run input vectors through a circuit")
    simulate_parser.add_argument("circuit", help="Circuit file")
    vectors = simulate_parser.add_mutually_exclusive_group(required=True)
    vectors.add_argument("--input", type=int, help="Integer input assignment")
    vectors.add_argument("--bits", help="Input as bits, most significant line first (e.g. 101)")
    vectors.add_argument("--all", action="store_true", help="Every input in ascending order")
    simulate_parser.set_defaults(handler=cmd_simulate)

    verify_parser = subparsers.add_parser("verify", help="Check a circuit against a spec")
    verify_parser.add_argument("circuit", help="Circuit file")
    verify_parser.add_argument("spec", help="Spec file")
    verify_parser.set_defaults(handler=cmd_verify)

    embed_parser = subparsers.add_parser("embed", help="Embed a truth table into a reversible spec")
    embed_parser.add_argument("table", help="Table file (.inputs, .outputs, rows)")
    embed_parser.add_argument("-o", "--output", help="Write the spec here instead of stdout")
    embed_parser.set_defaults(handler=cmd_embed)

    stats_parser = subparsers.add_parser("stats", help="Gate and control counts")
    stats_parser.add_argument("circuit", help="Circuit file")
    stats_parser.add_argument("--spec", help="Report C(f) of this spec instead of the realized one")
    stats_parser.set_defaults(handler=cmd_stats)

    bench_parser = subparsers.add_parser("bench", help="Benchmark random permutations")
    bench_parser.add_argument("--widths", type=int, nargs=2, default=list(BENCH_DEFAULT_WIDTHS),
                              metavar=("LOW", "HIGH"))
    bench_parser.add_argument("--trials", type=int, default=BENCH_DEFAULT_TRIALS)
    bench_parser.add_argument("--methods", nargs="+", choices=[m.value for m in Method],
                              default=[m.value for m in Method])
    bench_parser.add_argument("--ties", nargs="+", choices=[t.value for t in TieRule],
                              default=[TieRule.LOWEST_VALUE.value])
    bench_parser.add_argument("--sides", nargs="+", choices=[s.value for s in Side],
                              default=[Side.OUTPUT.value])
    bench_parser.add_argument("--seed", type=int, default=BENCH_DEFAULT_SEED, help="Base seed")
    bench_parser.add_argument("--timing", action="store_true", help="Record runtime_us")
    bench_parser.add_argument("-o", "--output", help="Write the CSV here instead of stdout")
    bench_parser.set_defaults(handler=cmd_bench)

    return parser


def _configure_logging(verbose: int, quiet: bool) -> None:
    if quiet:
        level = logging.ERROR
    elif verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(format=LOG_FORMAT, level=level, stream=sys.stderr, force=True)


def run(argv: list[str] | None = None) -> int:
    """Parse arguments, dispatch a subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2

    _configure_logging(args.verbose, args.quiet)
    try:
        return args.handler(args)
    except (SwapnetError, ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
