"""Tests for commutation, pair removal, merging, control elimination and optimize()."""

import logging

import pytest

from engine.embedding import binding_for, embed
from engine.notation import parse_circuit
from engine.optimizer import (
    eliminate_conjugated_controls,
    gates_commute,
    merge_adjacent,
    merge_gates,
    optimize,
    optimize_with_report,
    remove_useless_pairs,
)
from engine.simulator import equivalent, realizes, realizes_function
from engine.synthesis import synthesize
from models.errors import WidthMismatch
from models.gates import Circuit, toffoli
from models.options import OptimizeConfig
from models.tables import table_from_rows


def _make_circuit(text: str, width: int = 3) -> Circuit:
    """Helper to parse a circuit at a fixed width."""
    return parse_circuit(f".lines {width}\n{text}")


def _names(circuit: Circuit) -> list[str]:
    return [str(gate) for gate in circuit.gates]


class TestGatesCommute:
    """Tests for gates_commute()."""

    def test_shared_target(self):
        """Gates sharing a target commute."""
        assert gates_commute(toffoli(3, 2, pos=[0, 1]), toffoli(3, 2, pos=[0]))

    def test_cnot_pair(self):
        """CNOTs in opposite directions do not commute."""
        assert not gates_commute(toffoli(2, 1, pos=[0]), toffoli(2, 0, pos=[1]))

    def test_disjoint_lines(self):
        """Gates on disjoint lines commute."""
        assert gates_commute(toffoli(3, 0), toffoli(3, 2, pos=[1]))

    def test_negative_control_blocks(self):
        """A control on the other gate's target blocks commuting."""
        assert not gates_commute(toffoli(3, 0), toffoli(3, 2, neg=[0]))

    def test_width_mismatch(self):
        """Gates of different widths cannot be compared."""
        with pytest.raises(WidthMismatch):
            gates_commute(toffoli(2, 0), toffoli(3, 0))


class TestRemoveUselessPairs:
    """Tests for remove_useless_pairs()."""

    def test_pair_around_commuting_gate(self):
        """A pair cancels around a gate it commutes with."""
        circuit = _make_circuit("T(a,b:c) T(a:c) T(a,b:c)")
        assert _names(remove_useless_pairs(circuit)) == ["T(a:c)"]

    def test_adjacent_pair(self):
        """An adjacent identical pair cancels."""
        assert len(remove_useless_pairs(_make_circuit("T(a:b) T(a:b)"))) == 0

    def test_blocked_by_middle_gate(self):
        """A gate that does not commute keeps the pair apart."""
        circuit = _make_circuit("T(a:b) T(b:a) T(a:b)")
        assert remove_useless_pairs(circuit) == circuit

    def test_nested_pairs(self):
        """Nested pairs cancel from the inside out."""
        circuit = _make_circuit("T(a:b) T(:c) T(:c) T(a:b)")
        assert len(remove_useless_pairs(circuit)) == 0


class TestMergeAdjacent:
    """Tests for merge_adjacent() and merge_gates()."""

    def test_opposite_polarity(self):
        """Gates differing in one control's polarity merge and drop it."""
        merged = merge_adjacent(toffoli(3, 0, neg=[1, 2]), toffoli(3, 0, pos=[1], neg=[2]))
        assert str(merged) == "T(c':a)"

    def test_identical_gates(self):
        """Identical gates cancel rather than merge."""
        assert merge_adjacent(toffoli(2, 1, pos=[0]), toffoli(2, 1, pos=[0])) is None

    def test_different_targets(self):
        """Gates on different targets do not merge."""
        assert merge_adjacent(toffoli(3, 1, pos=[0]), toffoli(3, 2, pos=[0])) is None

    def test_two_polarities_differ(self):
        """Gates differing in two polarities do not merge."""
        assert merge_adjacent(toffoli(3, 0, pos=[1, 2]), toffoli(3, 0, neg=[1, 2])) is None

    def test_merge_across_commuting_gate(self):
        """A merge can reach across a commuting gate."""
        circuit = _make_circuit("T(b',c':a) T(:d) T(b,c':a)", width=4)
        assert _names(merge_gates(circuit)) == ["T(:d)", "T(c':a)"]

    def test_merge_blocked(self):
        """A non-commuting gate in between blocks the merge."""
        circuit = _make_circuit("T(b',c':a) T(:b) T(b,c':a)")
        assert merge_gates(circuit) == circuit


class TestEliminateConjugatedControls:
    """Tests for eliminate_conjugated_controls()."""

    def test_fredkin_bsssn(self):
        """The BSSSN Fredkin drops its shared c control."""
        circuit = _make_circuit("T(a,c:b) T(b,c:a) T(a,c:b)")
        assert _names(eliminate_conjugated_controls(circuit)) == ["T(a:b)", "T(b,c:a)", "T(a:b)"]

    def test_fredkin_variant(self):
        """The variant Fredkin drops its shared c control."""
        circuit = _make_circuit("T(b,c:a) T(a,c:b) T(b,c:a)")
        assert _names(eliminate_conjugated_controls(circuit)) == ["T(b:a)", "T(a,c:b)", "T(b:a)"]

    def test_polarity_must_agree(self):
        """Controls of opposite polarity are not conjugated."""
        circuit = _make_circuit("T(a,c:b) T(b,c':a) T(a,c:b)")
        assert eliminate_conjugated_controls(circuit) == circuit

    def test_preserves_function(self):
        """Eliminating controls keeps the function."""
        circuit = _make_circuit("T(a,c:b) T(b,c:a) T(a,c:b)")
        assert equivalent(circuit, eliminate_conjugated_controls(circuit))


class TestOptimize:
    """Tests for optimize() and optimize_with_report()."""

    def test_pair_around_commuting_gate(self):
        """The full pipeline removes the pair around T(a:c)."""
        circuit = _make_circuit("T(a,b:c) T(a:c) T(a,b:c)")
        assert _names(optimize(circuit)) == ["T(a:c)"]

    def test_fredkin_unchanged(self):
        """The optimized Fredkin is already minimal."""
        circuit = _make_circuit("T(a:b) T(b,c:a) T(a:b)")
        assert optimize(circuit) == circuit

    def test_pair_then_rest(self):
        """A cancelled pair leaves the remaining gate."""
        assert _names(optimize(_make_circuit("T(a:b) T(a:b) T(b:c)"))) == ["T(b:c)"]

    def test_empty(self):
        """An empty circuit stays empty."""
        assert len(optimize(Circuit(width=3))) == 0

    def test_report(self):
        """The report counts gates and controls before and after."""
        circuit = _make_circuit("T(a,b:c) T(a:c) T(a,b:c)")
        result, report = optimize_with_report(circuit)
        assert report.gates_before == 3
        assert report.gates_after == 1
        assert report.controls_before == 5
        assert report.controls_after == 1
        assert report.equivalence_checked
        assert report.passes >= 1
        assert len(result) == 1

    def test_everything_disabled(self):
        """With every rule off the circuit is returned as is."""
        circuit = _make_circuit("T(a:b) T(a:b)")
        config = OptimizeConfig(
            enable_pair_removal=False,
            enable_merge=False,
            enable_control_elimination=False,
            templates=(),
        )
        assert optimize(circuit, config) == circuit

    def test_templates_alone(self):
        """Templates alone still cancel the pair."""
        circuit = _make_circuit("T(a,b:c) T(a:c) T(a,b:c)")
        config = OptimizeConfig(enable_pair_removal=False, enable_merge=False)
        assert _names(optimize(circuit, config)) == ["T(a:c)"]

    def test_wide_circuit_skips_check(self, caplog):
        """Circuits over ten lines skip the equivalence check with a warning."""
        circuit = Circuit(width=11, gates=(toffoli(11, 0), toffoli(11, 0)))
        with caplog.at_level(logging.WARNING):
            result, report = optimize_with_report(circuit)
        assert len(result) == 0
        assert not report.equivalence_checked
        assert "skipping the equivalence check" in caplog.text


class TestEmbeddedPipeline:
    """Embed, synthesize and optimize the worked irreversible functions."""

    def test_exor(self):
        """XOR optimizes to a single CNOT."""
        spec, _ = embed(table_from_rows(2, 1, [0, 1, 1, 0]))
        assert _names(optimize(synthesize(spec))) == ["T(a:b)"]

    def test_and(self):
        """AND optimizes to a single Toffoli."""
        spec, _ = embed(table_from_rows(2, 1, [0, 0, 0, 1]))
        assert _names(optimize(synthesize(spec))) == ["T(a,b:c)"]

    def test_full_adder(self):
        """The full adder stays correct and never grows under optimization."""
        table = table_from_rows(3, 2, [0, 1, 1, 2, 1, 2, 2, 3])
        spec, report = embed(table)
        raw = synthesize(spec)
        optimized, summary = optimize_with_report(raw)
        assert realizes(optimized, spec)
        assert realizes_function(optimized, table, binding_for(report, table.inputs))
        assert len(optimized) <= len(raw)
        logging.getLogger(__name__).info("full adder: %d gates (target 8)", summary.gates_after)
