"""Circuit reduction: useless pairs, polarity merges, templates and conjugated controls."""

from __future__ import annotations

import logging

from pydantic import BaseModel, ConfigDict

from config import EQUIVALENCE_CHECK_MAX_WIDTH
from engine.simulator import equivalent
from engine.templates import BUILTIN_TEMPLATES, apply_templates, register_templates
from models.errors import EquivalenceViolation
from models.gates import Circuit, ToffoliGate, gates_commute
from models.options import OptimizeConfig

logger = logging.getLogger(__name__)

__all__ = [
    "OptimizeReport",
    "eliminate_conjugated_controls",
    "gates_commute",
    "merge_adjacent",
    "merge_gates",
    "optimize",
    "optimize_with_report",
    "remove_useless_pairs",
]


class OptimizeReport(BaseModel):
    """What one optimize() call did."""
    model_config = ConfigDict(frozen=True)

    passes: int
    gates_before: int
    gates_after: int
    controls_before: int
    controls_after: int
    equivalence_checked: bool


def _find_partner(gates: list[ToffoliGate], i: int) -> int | None:
    """Index of the next copy of gates[i] reachable through commuting gates."""
    gate = gates[i]
    for j in range(i + 1, len(gates)):
        if gates[j] == gate:
            return j
        if not gates_commute(gate, gates[j]):
            return None
    return None


def remove_useless_pairs(circuit: Circuit) -> Circuit:
    """Delete identical gate pairs whose in-between gates all commute with them."""
    gates = list(circuit.gates)
    changed = True
    while changed:
        changed = False
        for i in range(len(gates)):
            j = _find_partner(gates, i)
            if j is not None:
                logger.debug("useless pair %s at %d and %d", gates[i], i, j)
                del gates[j]
                del gates[i]
                changed = True
                break
    return Circuit(width=circuit.width, gates=tuple(gates))


def merge_adjacent(g: ToffoliGate, h: ToffoliGate) -> ToffoliGate | None:
    """T(C,x:t) T(C,x':t) = T(C:t): merge two gates differing only in one control's polarity."""
    if g.width != h.width or g.target != h.target or g.controls != h.controls:
        return None
    differ = [line for line in g.controls if g.polarity(line) != h.polarity(line)]
    if len(differ) != 1:
        return None
    return g.without_controls(differ)


def merge_gates(circuit: Circuit) -> Circuit:
    """Apply merge_adjacent wherever a gate can be commuted next to its partner."""
    gates = list(circuit.gates)
    changed = True
    while changed:
        changed = False
        for i in range(len(gates)):
            for j in range(i + 1, len(gates)):
                merged = merge_adjacent(gates[i], gates[j])
                if merged is not None:
                    logger.debug("merged %s and %s into %s", gates[i], gates[j], merged)
                    gates[j] = merged
                    del gates[i]
                    changed = True
                    break
                if not gates_commute(gates[i], gates[j]):
                    break
            if changed:
                break
    return Circuit(width=circuit.width, gates=tuple(gates))


def eliminate_conjugated_controls(circuit: Circuit) -> Circuit:
    """Drop controls from an identical pair G ... G that every gate between them shares.

    If each middle gate is controlled by x with the polarity G uses, then
    whenever x disables G it disables the whole middle too, and the two
    copies of G cancel anyway. The gate count is unchanged.
    """
    gates = list(circuit.gates)
    changed = True
    while changed:
        changed = False
        for i, gate in enumerate(gates):
            shared = set(gate.controls)
            for j in range(i + 1, len(gates)):
                other = gates[j]
                if other == gate and j > i + 1:
                    reduced = gate.without_controls(shared)
                    logger.debug("conjugated controls %s dropped from %s", sorted(shared), gate)
                    gates[i] = gates[j] = reduced
                    changed = True
                    break
                shared = {line for line in shared if other.polarity(line) == gate.polarity(line)}
                if not shared:
                    break
            if changed:
                break
    return Circuit(width=circuit.width, gates=tuple(gates))


def optimize_with_report(
    circuit: Circuit, config: OptimizeConfig | None = None
) -> tuple[Circuit, OptimizeReport]:
    """Run the enabled rules in turn until a pass changes nothing.

    Raises:
        EquivalenceViolation: If the result no longer realizes the input's permutation.
        TemplateInvalid: If a configured template fails registration.
    """
    config = config or OptimizeConfig()
    templates = BUILTIN_TEMPLATES if config.templates is None else register_templates(config.templates)

    current = circuit
    passes = 0
    while passes < config.max_passes:
        passes += 1
        before = current
        if config.enable_pair_removal:
            current = remove_useless_pairs(current)
        if config.enable_merge:
            current = merge_gates(current)
        if templates:
            current = apply_templates(current, templates, config.max_passes)
        if config.enable_control_elimination:
            current = eliminate_conjugated_controls(current)
        if current == before:
            break

    checked = circuit.width <= EQUIVALENCE_CHECK_MAX_WIDTH
    if checked:
        if not equivalent(circuit, current):
            raise EquivalenceViolation("optimization changed the realized permutation")
    else:
        logger.warning(
            "width %d exceeds %d, skipping the equivalence check",
            circuit.width, EQUIVALENCE_CHECK_MAX_WIDTH,
        )

    report = OptimizeReport(
        passes=passes,
        gates_before=len(circuit),
        gates_after=len(current),
        controls_before=circuit.control_count,
        controls_after=current.control_count,
        equivalence_checked=checked,
    )
    logger.info(
        "optimized in %d passes: %d -> %d gates, %d -> %d controls",
        passes, report.gates_before, report.gates_after,
        report.controls_before, report.controls_after,
    )
    return current, report


def optimize(circuit: Circuit, config: OptimizeConfig | None = None) -> Circuit:
    """Reduce a circuit; the result realizes the same permutation with no more gates."""
    return optimize_with_report(circuit, config)[0]
