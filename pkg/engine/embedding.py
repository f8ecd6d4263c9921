"""Embedding irreversible truth tables into reversible specifications."""

from __future__ import annotations

import logging
from collections import Counter

from config import MAX_WIDTH
from models.bits import ReversibleSpec
from models.errors import TooManyLines
from models.tables import EmbeddingReport, IoBinding, IrreversibleTable

logger = logging.getLogger(__name__)


def output_multiplicity(table: IrreversibleTable) -> int:
    """How often the most frequent output pattern occurs."""
    return max(Counter(table.rows).values())


def min_garbage(m: int) -> int:
    """ceil(log2 m): garbage lines needed to tell apart m rows sharing one output."""
    if m < 1:
        raise ValueError(f"multiplicity must be at least 1, got {m}")
    return (m - 1).bit_length()


def embed(table: IrreversibleTable) -> tuple[ReversibleSpec, EmbeddingReport]:
    """Turn an n-input k-output table into a reversible specification.

    The spec uses L = max(n, p + k) lines. Inputs sit on lines 0..n-1 and added
    constant lines n..L-1 are held at 0. Output bit j is read from line
    L - k + j; the L - k lines below the outputs are garbage.

    When the garbage lines hold all n inputs, every row becomes
    x -> x_low | ((f(x_low) XOR x_high) << n), the multi-output form of
    replacing f by f XOR constant. Otherwise each input keeps its own low bits
    as garbage when that (garbage, output) pair is still free, else takes the
    smallest free garbage pattern; rows with non-zero constants then take the
    smallest unused values in input order.

    Raises:
        TooManyLines: If L exceeds MAX_WIDTH.
    """
    n, k = table.inputs, table.outputs
    m = output_multiplicity(table)
    p = min_garbage(m)
    total = max(n, p + k)
    if total > MAX_WIDTH:
        raise TooManyLines(f"embedding needs {total} lines, max is {MAX_WIDTH}")

    garbage_width = total - k
    size = 1 << total
    reassigned: list[int] = []

    if garbage_width >= n:
        completion = "xor"
        low_mask = (1 << n) - 1
        perm = [
            (x & low_mask) | ((table.rows[x & low_mask] ^ (x >> n)) << n)
            for x in range(size)
        ]
    else:
        completion = "greedy"
        garbage_mask = (1 << garbage_width) - 1
        used: set[int] = set()
        perm = []
        for x, row in enumerate(table.rows):
            garbage = x & garbage_mask
            if (row << garbage_width | garbage) in used:
                garbage = next(
                    g for g in range(1 << garbage_width) if (row << garbage_width | g) not in used
                )
                reassigned.append(x)
            value = row << garbage_width | garbage
            used.add(value)
            perm.append(value)
        free = (v for v in range(size) if v not in used)
        perm.extend(next(free) for _ in range(size - len(perm)))

    rows = 1 << n
    preserved = tuple(
        line for line in range(total)
        if all((perm[x] >> line) & 1 == (x >> line) & 1 for x in range(rows))
    )
    report = EmbeddingReport(
        m=m,
        p=p,
        total_lines=total,
        constant_lines=tuple(range(n, total)),
        output_bindings=tuple(range(garbage_width, total)),
        garbage_lines=tuple(range(garbage_width)),
        preserved_inputs=preserved,
        completion=completion,
        reassigned_rows=tuple(reassigned),
    )
    logger.info(
        "embedded %d-in %d-out table on %d lines (m=%d, %s completion)",
        n, k, total, m, completion,
    )
    return ReversibleSpec(width=total, perm=tuple(perm)), report


def binding_for(report: EmbeddingReport, inputs: int) -> IoBinding:
    """The wiring that reads the embedded function back out of a circuit."""
    return IoBinding(
        input_lines=tuple(range(inputs)),
        constant_lines=frozenset(report.constant_lines),
        output_lines=report.output_bindings,
    )
