"""Benchmark sweep: random permutations through synthesis and optimization, one CSV row each."""

from __future__ import annotations

import csv
import io
import logging
import time
from collections.abc import Iterator

from pydantic import BaseModel, ConfigDict

from config import BENCH_CSV_HEADER
from engine.metrics import complexity
from engine.optimizer import optimize
from engine.simulator import realizes
from engine.splitmix import SplitMix64, trial_seed
from engine.synthesis import synthesize
from models.bits import ReversibleSpec
from models.errors import SwapnetError
from models.options import BenchConfig, Method, SynthesisOptions

logger = logging.getLogger(__name__)


class BenchRow(BaseModel):
    """One synthesized and optimized trial."""
    model_config = ConfigDict(frozen=True)

    n: int
    trial: int
    method: str
    tie: str
    side: str
    gates_raw: int
    gates_opt: int
    cf: int
    runtime_us: int
    seed: int
    status: str                       # "ok" or "verify_failed"

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, name) for name in BENCH_CSV_HEADER)


def random_spec(width: int, seed: int) -> ReversibleSpec:
    """Uniform random permutation of width lines from a SplitMix64 shuffle."""
    perm = SplitMix64(seed).shuffle(list(range(1 << width)))
    return ReversibleSpec(width=width, perm=tuple(perm))


def bench_rows(config: BenchConfig) -> Iterator[BenchRow]:
    """Yield rows in (width, trial, method, tie, side) order.

    Every combination for one trial shares the permutation drawn from that
    trial's seed; random selection is seeded with it too.
    """
    low, high = config.widths
    for width in range(low, high + 1):
        for trial in range(config.trials):
            index = (width - low) * config.trials + trial
            seed = trial_seed(config.base_seed, index)
            spec = random_spec(width, seed)
            cf = complexity(spec)
            for method in config.methods:
                for tie in config.tie_rules:
                    for side in config.sides:
                        options = SynthesisOptions(
                            method=method,
                            tie_rule=tie,
                            side=side,
                            seed=seed if method == Method.RANDOM else None,
                        )
                        yield _run_trial(config, spec, options, trial, seed, cf)


def _run_trial(
    config: BenchConfig,
    spec: ReversibleSpec,
    options: SynthesisOptions,
    trial: int,
    seed: int,
    cf: int,
) -> BenchRow:
    started = time.perf_counter_ns()
    status = "ok"
    gates_raw = gates_opt = 0
    try:
        raw = synthesize(spec, options)
        gates_raw = len(raw)
        optimized = optimize(raw)
        gates_opt = len(optimized)
        if not (realizes(raw, spec) and realizes(optimized, spec)):
            status = "verify_failed"
    except SwapnetError as exc:
        logger.debug("trial raised %s", exc)
        status = "verify_failed"
    elapsed = (time.perf_counter_ns() - started) // 1000 if config.timing else 0

    if status != "ok":
        logger.warning(
            "verification failed: width %d trial %d %s/%s/%s",
            spec.width, trial, options.method.value, options.tie_rule.value, options.side.value,
        )
    row = BenchRow(
        n=spec.width,
        trial=trial,
        method=options.method.value,
        tie=options.tie_rule.value,
        side=options.side.value,
        gates_raw=gates_raw,
        gates_opt=gates_opt,
        cf=cf,
        runtime_us=elapsed,
        seed=seed,
        status=status,
    )
    logger.debug("bench row %s", row.as_tuple())
    return row


def write_csv(rows: list[BenchRow], stream: io.TextIOBase) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(BENCH_CSV_HEADER)
    for row in rows:
        writer.writerow(row.as_tuple())


def bench(config: BenchConfig) -> str:
    """Run the sweep and return the CSV text, also writing it to config.output if set.

    Raises:
        OSError: If the output file cannot be written.
    """
    rows = list(bench_rows(config))
    buffer = io.StringIO()
    write_csv(rows, buffer)
    text = buffer.getvalue()

    if config.output is not None:
        config.output.write_text(text)
    failed = sum(row.status != "ok" for row in rows)
    logger.info("bench finished: %d rows, %d failed", len(rows), failed)
    return text
