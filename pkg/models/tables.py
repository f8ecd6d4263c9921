"""Irreversible truth tables, embedding reports and circuit I/O wiring."""

from __future__ import annotations

from collections.abc import Sequence
from typing import Literal

from pydantic import BaseModel, ConfigDict, model_validator

from config import MAX_WIDTH
from models.errors import (
    BindingInvalid,
    RowCountMismatch,
    ValueOutOfRange,
    WidthOutOfRange,
)


def _check_table(inputs: int, outputs: int, rows: Sequence[int]) -> None:
    for label, count in (("inputs", inputs), ("outputs", outputs)):
        if not 1 <= count <= MAX_WIDTH:
            raise WidthOutOfRange(f"{label} must be in 1..{MAX_WIDTH}, got {count}")
    if len(rows) != 1 << inputs:
        raise RowCountMismatch(
            f"{inputs} inputs need {1 << inputs} rows, got {len(rows)}"
        )
    for index, row in enumerate(rows):
        if not 0 <= row < (1 << outputs):
            raise ValueOutOfRange(f"row {index} value {row} does not fit {outputs} outputs")


class IrreversibleTable(BaseModel):
    """An n-input k-output truth table; rows[x] is the output pattern for input x."""
    model_config = ConfigDict(frozen=True)

    inputs: int
    outputs: int
    rows: tuple[int, ...]

    @model_validator(mode="after")
    def _check_shape(self) -> IrreversibleTable:
        _check_table(self.inputs, self.outputs, self.rows)
        return self


def table_from_rows(inputs: int, outputs: int, rows: Sequence[int]) -> IrreversibleTable:
    """Validate and build a truth table.

    Raises:
        WidthOutOfRange: If inputs or outputs is outside 1..MAX_WIDTH.
        RowCountMismatch: If there are not exactly 2^inputs rows.
        ValueOutOfRange: If a row does not fit in `outputs` bits.
    """
    _check_table(inputs, outputs, rows)
    return IrreversibleTable(inputs=inputs, outputs=outputs, rows=tuple(rows))


class EmbeddingReport(BaseModel):
    """How an irreversible table was made reversible."""
    model_config = ConfigDict(frozen=True)

    m: int                                  # Max output-pattern multiplicity
    p: int                                  # ceil(log2 m)
    total_lines: int
    constant_lines: tuple[int, ...]         # Added inputs, fixed to 0
    output_bindings: tuple[int, ...]        # output_bindings[j] carries output bit j
    garbage_lines: tuple[int, ...]          # Lines whose outputs are unconstrained
    preserved_inputs: tuple[int, ...]       # Lines whose output equals their input
    completion: Literal["xor", "greedy"]
    reassigned_rows: tuple[int, ...] = ()   # Inputs whose garbage pattern was moved off a collision


class IoBinding(BaseModel):
    """Wiring between a truth table and the lines of a circuit."""
    model_config = ConfigDict(frozen=True)

    input_lines: tuple[int, ...]            # input_lines[i] carries table input i
    constant_lines: frozenset[int] = frozenset()
    output_lines: tuple[int, ...]           # output_lines[j] carries table output j

    def check(self, width: int) -> None:
        """Validate the binding against a circuit width.

        Raises:
            BindingInvalid: If mappings are not injective, overlap, or leave the circuit.
        """
        if len(set(self.input_lines)) != len(self.input_lines):
            raise BindingInvalid("input lines must be distinct")
        if len(set(self.output_lines)) != len(self.output_lines):
            raise BindingInvalid("output lines must be distinct")
        if self.constant_lines & set(self.input_lines):
            raise BindingInvalid("constant lines overlap input lines")
        used = set(self.input_lines) | self.constant_lines | set(self.output_lines)
        if any(not 0 <= line < width for line in used):
            raise BindingInvalid(f"binding uses a line outside 0..{width - 1}")
