"""Option bundles for synthesis, optimization and benchmarking."""

from __future__ import annotations

from enum import Enum
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import (
    BENCH_DEFAULT_SEED,
    BENCH_DEFAULT_TRIALS,
    BENCH_DEFAULT_WIDTHS,
    BENCH_MAX_WIDTH,
    BENCH_MIN_WIDTH,
    DEFAULT_MAX_PASSES,
    GATE_BUDGET_FACTOR,
)
from models.templates import Template

MAX_SEED = (1 << 64) - 1


class Method(str, Enum):
    """How the next misplaced bit string is chosen."""
    BSSSN = "bsssn"                 # Occupant of the lowest-index misplaced slot
    VARIANT = "variant"             # Lowest misplaced value, repeated upward scans
    RANDOM = "random"               # Seeded uniform pick among misplaced values


class TieRule(str, Enum):
    """How equally close chain candidates are ranked."""
    LOWEST_VALUE = "lowest_value"
    HIGHEST_VALUE = "highest_value"
    PREFER_MISPLACED = "prefer_misplaced_then_lowest"
    MOST_SIGNIFICANT_FLIP = "most_significant_flip"


class Side(str, Enum):
    """Which column of the specification gets sorted."""
    OUTPUT = "output"
    INPUT = "input"


class SynthesisOptions(BaseModel):
    """Strategy selection for one synthesis run."""
    model_config = ConfigDict(frozen=True)

    method: Method = Method.BSSSN
    tie_rule: TieRule = TieRule.LOWEST_VALUE
    side: Side = Side.OUTPUT
    reduce_controls: bool = False
    seed: int | None = Field(default=None, ge=0, le=MAX_SEED)
    max_gates: int | None = Field(default=None, ge=1)  # None: GATE_BUDGET_FACTOR * n * 2^n

    @model_validator(mode="after")
    def _seed_matches_method(self) -> SynthesisOptions:
        if self.method == Method.RANDOM and self.seed is None:
            raise ValueError("method 'random' requires a seed")
        if self.method != Method.RANDOM and self.seed is not None:
            raise ValueError(f"method '{self.method.value}' does not take a seed")
        return self

    def gate_budget(self, width: int) -> int:
        if self.max_gates is not None:
            return self.max_gates
        return GATE_BUDGET_FACTOR * width * (1 << width)


class OptimizeConfig(BaseModel):
    """Which reduction rules optimize() runs."""
    model_config = ConfigDict(frozen=True)

    enable_pair_removal: bool = True
    enable_merge: bool = True
    enable_control_elimination: bool = True
    templates: tuple[Template, ...] | None = None  # None selects the built-in library
    max_passes: int = Field(default=DEFAULT_MAX_PASSES, ge=1)


class BenchConfig(BaseModel):
    """A sweep of random permutations through synthesis and optimization."""
    model_config = ConfigDict(frozen=True)

    widths: tuple[int, int] = BENCH_DEFAULT_WIDTHS   # Inclusive range
    trials: int = Field(default=BENCH_DEFAULT_TRIALS, ge=1)
    methods: tuple[Method, ...] = (Method.BSSSN, Method.VARIANT, Method.RANDOM)
    tie_rules: tuple[TieRule, ...] = (TieRule.LOWEST_VALUE,)
    sides: tuple[Side, ...] = (Side.OUTPUT,)
    base_seed: int = Field(default=BENCH_DEFAULT_SEED, ge=0, le=MAX_SEED)
    output: Path | None = None
    timing: bool = False                              # runtime_us stays 0 unless set

    @model_validator(mode="after")
    def _check_widths(self) -> BenchConfig:
        low, high = self.widths
        if not BENCH_MIN_WIDTH <= low <= high <= BENCH_MAX_WIDTH:
            raise ValueError(
                f"widths must satisfy {BENCH_MIN_WIDTH} <= low <= high <= {BENCH_MAX_WIDTH}"
            )
        if not self.methods or not self.tie_rules or not self.sides:
            raise ValueError("methods, tie_rules and sides must not be empty")
        return self
