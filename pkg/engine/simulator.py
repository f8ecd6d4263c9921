"""Exhaustive and single-vector circuit simulation; the toolkit's verification oracle."""

from __future__ import annotations

import numpy as np

from models.bits import BitString, ReversibleSpec, check_width
from models.errors import BindingInvalid, WidthMismatch
from models.gates import Circuit, ToffoliGate
from models.tables import IoBinding, IrreversibleTable


def _same_width(expected: int, actual: int) -> None:
    if expected != actual:
        raise WidthMismatch(f"width {actual} does not match width {expected}")


def apply_gate(gate: ToffoliGate, x: BitString) -> BitString:
    """Flip the target bit of x when the gate's controls are satisfied.

    Raises:
        WidthMismatch: If gate and bit string widths differ.
    """
    _same_width(gate.width, x.width)
    return BitString(width=x.width, value=gate.apply_int(x.value))


def apply_circuit(circuit: Circuit, x: BitString) -> BitString:
    """Run x through every gate in application order."""
    _same_width(circuit.width, x.width)
    value = x.value
    for gate in circuit.gates:
        value = gate.apply_int(value)
    return BitString(width=x.width, value=value)


def run_vectors(circuit: Circuit, vectors: np.ndarray) -> np.ndarray:
    """Simulate many integer input assignments at once.

    Args:
        circuit: The circuit to run.
        vectors: 1-D integer array of input assignments.

    Returns:
        A new array with the corresponding outputs.
    """
    values = np.array(vectors, dtype=np.int64, copy=True)
    for gate in circuit.gates:
        pos = gate.pos_mask
        fire = ((values & pos) == pos) & ((values & gate.neg_mask) == 0)
        values[fire] ^= gate.target_mask
    return values


def realized_spec(circuit: Circuit) -> ReversibleSpec:
    """The permutation a circuit computes, by exhaustive simulation.

    Raises:
        WidthOutOfRange: If the circuit is wider than MAX_WIDTH.
    """
    check_width(circuit.width)
    outputs = run_vectors(circuit, np.arange(1 << circuit.width, dtype=np.int64))
    return ReversibleSpec(width=circuit.width, perm=tuple(outputs.tolist()))


def realizes(circuit: Circuit, spec: ReversibleSpec) -> bool:
    """Whether the circuit computes exactly `spec`."""
    _same_width(spec.width, circuit.width)
    return realized_spec(circuit).perm == spec.perm


def equivalent(c1: Circuit, c2: Circuit) -> bool:
    """Whether two circuits compute the same permutation."""
    _same_width(c1.width, c2.width)
    check_width(c1.width)
    inputs = np.arange(1 << c1.width, dtype=np.int64)
    return bool(np.array_equal(run_vectors(c1, inputs), run_vectors(c2, inputs)))


def realizes_function(circuit: Circuit, table: IrreversibleTable, binding: IoBinding) -> bool:
    """Whether the circuit computes an irreversible table under a wiring.

    Every table row is loaded onto the input lines with all other lines at 0
    (constant lines included); the output lines are then compared with the row.

    Raises:
        BindingInvalid: If the binding does not fit the table or the circuit.
    """
    binding.check(circuit.width)
    if len(binding.input_lines) != table.inputs:
        raise BindingInvalid(
            f"binding wires {len(binding.input_lines)} inputs, table has {table.inputs}"
        )
    if len(binding.output_lines) != table.outputs:
        raise BindingInvalid(
            f"binding wires {len(binding.output_lines)} outputs, table has {table.outputs}"
        )

    rows = np.arange(1 << table.inputs, dtype=np.int64)
    loaded = np.zeros_like(rows)
    for i, line in enumerate(binding.input_lines):
        loaded |= ((rows >> i) & 1) << line

    result = run_vectors(circuit, loaded)
    observed = np.zeros_like(rows)
    for j, line in enumerate(binding.output_lines):
        observed |= ((result >> line) & 1) << j

    return bool(np.array_equal(observed, np.array(table.rows, dtype=np.int64)))
