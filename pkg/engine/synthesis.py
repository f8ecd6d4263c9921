"""Bit-string swapping sorting network: Toffoli synthesis by sorting a specification."""

from __future__ import annotations

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict

from engine.metrics import hamming_distance, inverse
from engine.splitmix import SplitMix64
from models.bits import BitString, ReversibleSpec, from_int
from models.errors import GateBudgetExceeded, NotAdjacent, WidthMismatch
from models.gates import Circuit, ToffoliGate, toffoli
from models.options import Method, Side, SynthesisOptions, TieRule

logger = logging.getLogger(__name__)


class SortState(BaseModel):
    """The working set being sorted: slots[i] is the value currently at position i."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    width: int
    slots: np.ndarray

    @classmethod
    def from_spec(cls, spec: ReversibleSpec) -> SortState:
        return cls(width=spec.width, slots=np.array(spec.perm, dtype=np.int64))

    @property
    def size(self) -> int:
        return len(self.slots)

    def occupant(self, slot: int) -> int:
        return int(self.slots[slot])

    def in_place(self, value: int) -> bool:
        """A value is in its intended place when the slot of the same index holds it."""
        return int(self.slots[value]) == value

    def misplaced(self) -> np.ndarray:
        """Indices of misplaced slots, ascending (equally, the misplaced values)."""
        return np.flatnonzero(self.slots != np.arange(self.size))

    def is_sorted(self) -> bool:
        return not self.misplaced().size

    def placed_values(self) -> np.ndarray:
        return np.flatnonzero(self.slots == np.arange(self.size))

    def preview(self, gate: ToffoliGate) -> np.ndarray:
        """Slots after applying the gate to every value, without mutating the state."""
        values = self.slots.copy()
        pos = gate.pos_mask
        fire = ((values & pos) == pos) & ((values & gate.neg_mask) == 0)
        values[fire] ^= gate.target_mask
        return values

    def apply(self, gate: ToffoliGate) -> None:
        self.slots = self.preview(gate)

    def complexity(self, slots: np.ndarray | None = None) -> int:
        """Sum of distances between each slot index and its value."""
        values = self.slots if slots is None else slots
        return int(np.bitwise_count(values ^ np.arange(self.size)).sum())


def swap_gate(p: BitString, q: BitString) -> ToffoliGate:
    """The gate that exchanges two adjacent bit strings and fixes every other one.

    The target is the line where p and q differ; every other line becomes a
    control with the polarity of p's bit on it.

    Raises:
        WidthMismatch: If the widths differ.
        NotAdjacent: If p and q do not differ in exactly one line.
    """
    if p.width != q.width:
        raise WidthMismatch(f"cannot swap widths {p.width} and {q.width}")
    diff = p.value ^ q.value
    if diff.bit_count() != 1:
        raise NotAdjacent(f"{p} and {q} are at distance {diff.bit_count()}, need 1")

    target = diff.bit_length() - 1
    others = [line for line in range(p.width) if line != target]
    return toffoli(
        p.width,
        target,
        pos=(line for line in others if p.bit(line)),
        neg=(line for line in others if not p.bit(line)),
    )


def chain_step(a: BitString, b: BitString, state: SortState, tie_rule: TieRule) -> BitString:
    """Pick the neighbour c of b (distance 1) that is closest to a.

    Candidates flip one line where a and b differ, so every candidate sits at
    distance(a, b) - 1 from a; the tie rule decides among them.

    Args:
        a: The bit string being brought home.
        b: The current occupant of a's intended place.
        state: Current slot configuration (used by prefer_misplaced_then_lowest).
        tie_rule: Ranking among equally close candidates.

    Returns:
        The chosen candidate c.

    Raises:
        ValueError: If a and b are closer than distance 2 (swap them directly instead).
    """
    diff = a.value ^ b.value
    if diff.bit_count() < 2:
        raise ValueError(f"chain_step needs distance >= 2 between {a} and {b}")

    if tie_rule == TieRule.MOST_SIGNIFICANT_FLIP:
        return b.flip(diff.bit_length() - 1)

    candidates = [b.flip(line) for line in range(b.width) if diff >> line & 1]
    if tie_rule == TieRule.LOWEST_VALUE:
        return min(candidates, key=int)
    if tie_rule == TieRule.HIGHEST_VALUE:
        return max(candidates, key=int)
    return min(candidates, key=lambda c: (state.in_place(c.value), c.value))


def reduce_controls(gate: ToffoliGate, state: SortState) -> ToffoliGate:
    """Greedily drop controls while no placed value moves and C(f) does not grow.

    Each round tries removing one control at a time; a drop is admissible when
    the reduced gate fixes every value already in its intended place. The
    admissible drop with the lowest post-application complexity is kept if it
    is no worse than the current gate (lowest line index wins ties).

    Args:
        gate: A gate emitted by swap_gate during sorting.
        state: The slot configuration before the gate is applied.

    Returns:
        The reduced gate, or `gate` itself when no drop is admissible.
    """
    placed = state.placed_values()
    best = gate
    best_cost = state.complexity(state.preview(gate))

    while best.controls:
        candidate: ToffoliGate | None = None
        candidate_cost = best_cost
        for line in sorted(best.controls):
            trial = best.without_controls([line])
            pos = trial.pos_mask
            moved = ((placed & pos) == pos) & ((placed & trial.neg_mask) == 0)
            if moved.any():
                continue
            cost = state.complexity(state.preview(trial))
            if cost < candidate_cost or (candidate is None and cost == candidate_cost):
                candidate, candidate_cost = trial, cost
        if candidate is None:
            break
        best, best_cost = candidate, candidate_cost

    return best


class _Network:
    """Gate emission for one sort_network call: budget, control reduction, state update."""

    def __init__(self, spec: ReversibleSpec, options: SynthesisOptions):
        self.state = SortState.from_spec(spec)
        self.options = options
        self.budget = options.gate_budget(spec.width)
        self.gates: list[ToffoliGate] = []

    def emit(self, gate: ToffoliGate) -> None:
        if self.options.reduce_controls:
            gate = reduce_controls(gate, self.state)
        if len(self.gates) >= self.budget:
            raise GateBudgetExceeded(
                f"more than {self.budget} gates for width {self.state.width}"
            )
        logger.debug("gate %d: %s", len(self.gates) + 1, gate)
        self.gates.append(gate)
        self.state.apply(gate)

    def place(self, value: int) -> None:
        """Bring one value to its intended place through a chain of adjacent swaps."""
        width = self.state.width
        a = from_int(value, width)
        b = from_int(self.state.occupant(value), width)
        while hamming_distance(a, b) >= 2:
            c = chain_step(a, b, self.state, self.options.tie_rule)
            self.emit(swap_gate(b, c))
            b = c
        self.emit(swap_gate(a, b))


def sort_network(spec: ReversibleSpec, options: SynthesisOptions | None = None) -> list[ToffoliGate]:
    """Build gates g1..gk that, applied in order to every value, sort spec.perm.

    Args:
        spec: The specification whose integer set is sorted.
        options: Selection method, tie rule, control reduction and seed.

    Returns:
        Gates in discovery order.

    Raises:
        GateBudgetExceeded: If the safety cap is hit.
    """
    options = options or SynthesisOptions()
    network = _Network(spec, options)
    state = network.state

    if options.method == Method.BSSSN:
        while not state.is_sorted():
            network.place(state.occupant(int(state.misplaced()[0])))
    elif options.method == Method.VARIANT:
        while not state.is_sorted():
            for value in range(state.size):
                if not state.in_place(value):
                    network.place(value)
    else:
        rng = SplitMix64(options.seed)
        while not state.is_sorted():
            misplaced = state.misplaced()
            network.place(int(misplaced[rng.below(len(misplaced))]))

    return network.gates


class SynthesisResult(BaseModel):
    """A synthesized circuit together with the order in which its gates were found."""
    model_config = ConfigDict(frozen=True)

    circuit: Circuit
    discovery: tuple[ToffoliGate, ...]


def synthesize_with_trace(spec: ReversibleSpec, options: SynthesisOptions | None = None) -> SynthesisResult:
    """Like synthesize(), also returning the discovery-order gate list."""
    options = options or SynthesisOptions()
    if options.side == Side.OUTPUT:
        discovery = sort_network(spec, options)
        applied = discovery[::-1]
    else:
        discovery = sort_network(inverse(spec), options)
        applied = discovery

    circuit = Circuit(width=spec.width, gates=tuple(applied))
    logger.info(
        "synthesized width %d with %s/%s/%s: %d gates, %d controls",
        spec.width, options.method.value, options.tie_rule.value, options.side.value,
        len(circuit), circuit.control_count,
    )
    return SynthesisResult(circuit=circuit, discovery=tuple(discovery))


def synthesize(spec: ReversibleSpec, options: SynthesisOptions | None = None) -> Circuit:
    """Synthesize a circuit that realizes spec.

    Output side sorts the output column, so its discovery list realizes the
    inverse and is reversed into application order. Input side sorts the
    inverse specification and keeps discovery order.

    Raises:
        GateBudgetExceeded: If the safety cap is hit.
    """
    return synthesize_with_trace(spec, options).circuit
