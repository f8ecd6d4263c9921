"""Toolkit-wide configuration constants for Swapnet."""

MAX_WIDTH = 16                   # Exhaustive simulation ceiling (2^16 rows)
MAX_TEMPLATE_ARITY = 10          # Largest abstract line count a template may use
EQUIVALENCE_CHECK_MAX_WIDTH = 10  # optimize() re-verifies its output up to this width
DEFAULT_MAX_PASSES = 32          # Optimizer fixed-point pass limit
GATE_BUDGET_FACTOR = 4           # Synthesis safety cap: factor * n * 2^n gates
TEMPLATE_MATCH_WINDOW = 24       # How far the template matcher looks past a gate
LINE_NAMES = "abcdefghijklmnop"  # Line 0 is `a` (least significant bit)

BENCH_MIN_WIDTH = 3
BENCH_MAX_WIDTH = 10
BENCH_DEFAULT_WIDTHS = (3, 5)
BENCH_DEFAULT_TRIALS = 10
BENCH_DEFAULT_SEED = 0x5EED
BENCH_CSV_HEADER = (
    "n", "trial", "method", "tie", "side",
    "gates_raw", "gates_opt", "cf", "runtime_us", "seed", "status",
)

SERVICE_NAME = "Swapnet"
SERVICE_VERSION = "0.1.0"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
