"""Tests for bit strings, specifications, gates, circuits, tables and options."""

import pytest
from pydantic import ValidationError

from models.bits import BitString, ReversibleSpec, bitstring, from_int, line_name, spec_from_perm
from models.errors import (
    BindingInvalid,
    NotAPermutation,
    ParseError,
    RowCountMismatch,
    SelfControl,
    SwapnetError,
    UnknownLine,
    ValueOutOfRange,
    WidthMismatch,
    WidthOutOfRange,
)
from models.gates import Circuit, ToffoliGate, make_circuit, toffoli
from models.options import BenchConfig, Method, OptimizeConfig, SynthesisOptions
from models.tables import IoBinding, IrreversibleTable, table_from_rows

SAMPLE = [1, 0, 3, 2, 5, 7, 4, 6]


class TestBitString:
    """Tests for BitString and its constructors."""

    def test_from_int(self):
        """from_int(5, 3) carries bits 1, 0, 1 on lines a, b, c."""
        x = from_int(5, 3)
        assert x.value == 5
        assert x.bits() == (1, 0, 1)
        assert x.bit(1) == 0

    def test_str_is_most_significant_first(self):
        """Printing puts line c first."""
        assert str(from_int(1, 3)) == "001"
        assert str(from_int(6, 3)) == "110"

    def test_flip(self):
        """Flipping line b of 101 gives 111."""
        assert from_int(5, 3).flip(1).value == 7

    def test_int(self):
        """int() returns the integer encoding."""
        assert int(from_int(6, 3)) == 6

    def test_bitstring_parses_text(self):
        """bitstring() reads the most significant line first."""
        assert bitstring("101") == BitString(width=3, value=5)
        assert bitstring("011").value == 3

    def test_bitstring_rejects_garbage(self):
        """Characters other than 0 and 1 are a parse error."""
        with pytest.raises(ParseError, match="Invalid bit string"):
            bitstring("10x")

    def test_value_too_large(self):
        """8 does not fit in three lines."""
        with pytest.raises(ValueOutOfRange, match="does not fit"):
            from_int(8, 3)

    def test_negative_value(self):
        """Negative encodings are rejected."""
        with pytest.raises(ValueOutOfRange):
            from_int(-1, 3)

    @pytest.mark.parametrize("width", [0, 17])
    def test_width_out_of_range(self, width):
        """Widths outside 1..16 are rejected."""
        with pytest.raises(WidthOutOfRange):
            from_int(0, width)

    def test_errors_are_value_errors(self):
        """Domain errors can be caught as ValueError."""
        with pytest.raises(ValueError):
            from_int(8, 3)

    def test_model_rejects_value_too_large(self):
        """Building a BitString directly still checks the value fits."""
        with pytest.raises(ValidationError, match="does not fit"):
            BitString(width=3, value=9)

    def test_model_rejects_bad_width(self):
        """Building a BitString directly still checks the width."""
        with pytest.raises(ValidationError):
            BitString(width=0, value=0)

    def test_line_names(self):
        """Line 0 is a, line 3 is d."""
        assert line_name(0) == "a"
        assert line_name(3) == "d"


class TestSpecFromPerm:
    """Tests for spec_from_perm() and ReversibleSpec validation."""

    def test_sample(self):
        """The width is inferred from eight values."""
        spec = spec_from_perm(SAMPLE)
        assert spec.width == 3
        assert spec.size == 8
        assert spec(5) == 7

    def test_explicit_width(self):
        """A given width is accepted when it matches the length."""
        assert spec_from_perm([0, 1], width=1).is_identity()

    def test_duplicate_value(self):
        """A repeated value names the value that repeats."""
        with pytest.raises(NotAPermutation, match="value 0 appears more than once") as exc:
            spec_from_perm([0, 0, 1, 2])
        assert exc.value.value == 0

    def test_length_not_power_of_two(self):
        """Three values cannot be a width."""
        with pytest.raises(WidthOutOfRange):
            spec_from_perm([0, 1, 2])

    def test_length_does_not_match_width(self):
        """Four values do not fill three lines."""
        with pytest.raises(WidthOutOfRange):
            spec_from_perm([0, 1, 2, 3], width=3)

    def test_value_out_of_range(self):
        """4 does not fit in two lines."""
        with pytest.raises(ValueOutOfRange):
            spec_from_perm([0, 1, 2, 4])

    def test_not_identity(self):
        """The sample moves values."""
        assert not spec_from_perm(SAMPLE).is_identity()

    def test_model_rejects_repeated_value(self):
        """A directly built spec must still be a bijection."""
        with pytest.raises(ValidationError, match="more than once"):
            ReversibleSpec(width=2, perm=(0, 0, 1, 2))

    def test_model_rejects_value_out_of_range(self):
        """A directly built spec must keep its values inside the width."""
        with pytest.raises(ValidationError, match="does not fit"):
            ReversibleSpec(width=2, perm=(0, 11, 1, 2))

    def test_model_rejects_wrong_length(self):
        """A directly built spec must hold 2^width values."""
        with pytest.raises(ValidationError, match="needs 4 values"):
            ReversibleSpec(width=2, perm=(1, 0))

    def test_model_accepts_valid_perm(self):
        """Direct construction of a valid spec equals the factory result."""
        assert ReversibleSpec(width=3, perm=tuple(SAMPLE)) == spec_from_perm(SAMPLE)


class TestToffoli:
    """Tests for gate construction and printing."""

    def test_negative_controls(self):
        """Negative controls print with a trailing quote."""
        assert str(toffoli(3, 0, neg=[1, 2])) == "T(b',c':a)"

    def test_positive_controls(self):
        """Positive controls print bare."""
        assert str(toffoli(3, 2, pos=[0, 1])) == "T(a,b:c)"

    def test_not_gate(self):
        """A gate without controls is a NOT."""
        gate = toffoli(3, 0)
        assert str(gate) == "T(:a)"
        assert gate.control_count == 0

    def test_mixed_controls_sorted_by_line(self):
        """Controls print in line order whatever their polarity."""
        assert str(toffoli(4, 3, pos=[2], neg=[0])) == "T(a',c:d)"

    def test_self_control(self):
        """The target cannot also be a control."""
        with pytest.raises(SelfControl):
            toffoli(3, 1, pos=[1])

    def test_both_polarities(self):
        """One line cannot be a positive and a negative control."""
        with pytest.raises(SelfControl):
            toffoli(3, 0, pos=[1], neg=[1])

    def test_unknown_line(self):
        """Line 3 does not exist in a three-line gate."""
        with pytest.raises(UnknownLine):
            toffoli(3, 3)

    def test_model_validation(self):
        """Direct construction checks the lines too."""
        with pytest.raises(ValidationError):
            ToffoliGate(width=2, target=0, pos_controls=frozenset({0}))

    def test_fires(self):
        """Positive controls fire only when both read 1."""
        gate = toffoli(3, 0, pos=[1, 2])
        assert gate.fires(7)
        assert gate.fires(6)
        assert not gate.fires(3)

    def test_negative_control_fires_on_zero(self):
        """Negative controls fire only when both read 0."""
        gate = toffoli(3, 0, neg=[1, 2])
        assert gate.apply_int(0) == 1
        assert gate.apply_int(2) == 2

    def test_without_controls(self):
        """Dropping line c leaves only the b control."""
        gate = toffoli(3, 0, pos=[1], neg=[2])
        assert str(gate.without_controls([2])) == "T(b:a)"

    def test_polarity(self):
        """polarity() reports positive, negative or no control."""
        gate = toffoli(3, 0, pos=[1], neg=[2])
        assert gate.polarity(1) is True
        assert gate.polarity(2) is False
        assert gate.polarity(0) is None

    def test_gates_are_hashable_values(self):
        """Equal gates compare and hash equal."""
        assert toffoli(3, 0, pos=[1]) == toffoli(3, 0, pos=[1])
        assert len({toffoli(3, 0, pos=[1]), toffoli(3, 0, pos=[1])}) == 1


class TestCircuit:
    """Tests for Circuit and make_circuit()."""

    def test_counts(self):
        """Gate and control counts add up over the circuit."""
        circuit = make_circuit(3, [toffoli(3, 0, pos=[1, 2]), toffoli(3, 1)])
        assert len(circuit) == 2
        assert circuit.control_count == 2

    def test_width_mismatch(self):
        """A two-line gate does not fit a three-line circuit."""
        with pytest.raises(WidthMismatch):
            make_circuit(3, [toffoli(2, 0)])

    def test_model_rejects_mixed_widths(self):
        """Direct construction checks gate widths too."""
        with pytest.raises(ValidationError):
            Circuit(width=3, gates=(toffoli(2, 0),))

    def test_reversed(self):
        """reversed() lists the gates last-applied first."""
        g, h = toffoli(3, 0), toffoli(3, 1, pos=[0])
        assert make_circuit(3, [g, h]).reversed().gates == (h, g)


class TestTables:
    """Tests for truth tables and bindings."""

    def test_valid_table(self):
        """A two-input XOR table keeps its rows."""
        table = table_from_rows(2, 1, [0, 1, 1, 0])
        assert table.rows == (0, 1, 1, 0)

    def test_row_count(self):
        """Two inputs need four rows."""
        with pytest.raises(RowCountMismatch):
            table_from_rows(2, 1, [0, 1, 1])

    def test_row_value(self):
        """A row of 2 does not fit one output."""
        with pytest.raises(ValueOutOfRange):
            table_from_rows(2, 1, [0, 1, 2, 0])

    def test_zero_outputs(self):
        """A table needs at least one output."""
        with pytest.raises(WidthOutOfRange):
            table_from_rows(1, 0, [0, 0])

    def test_model_rejects_row_out_of_range(self):
        """A directly built table must keep rows inside its outputs."""
        with pytest.raises(ValidationError, match="does not fit"):
            IrreversibleTable(inputs=1, outputs=1, rows=(0, 5))

    def test_model_rejects_row_count(self):
        """A directly built table must hold 2^inputs rows."""
        with pytest.raises(ValidationError, match="need 4 rows"):
            IrreversibleTable(inputs=2, outputs=1, rows=(0, 1))

    def test_binding_duplicate_inputs(self):
        """Two table inputs cannot share a line."""
        binding = IoBinding(input_lines=(0, 0), output_lines=(1,))
        with pytest.raises(BindingInvalid, match="input lines must be distinct"):
            binding.check(2)

    def test_binding_constant_overlap(self):
        """A constant line cannot also carry an input."""
        binding = IoBinding(input_lines=(0, 1), constant_lines=frozenset({1}), output_lines=(1,))
        with pytest.raises(BindingInvalid, match="overlap"):
            binding.check(2)

    def test_binding_outside_circuit(self):
        """Line 2 is outside a two-line circuit."""
        binding = IoBinding(input_lines=(0, 1), output_lines=(2,))
        with pytest.raises(BindingInvalid, match="outside"):
            binding.check(2)

    def test_binding_error_is_domain_error(self):
        """Binding errors are SwapnetErrors."""
        binding = IoBinding(input_lines=(0, 0), output_lines=(1,))
        with pytest.raises(SwapnetError):
            binding.check(2)


class TestOptions:
    """Tests for option bundles."""

    def test_defaults(self):
        """Defaults are BSSSN without control reduction and a 4n2^n budget."""
        options = SynthesisOptions()
        assert options.method == Method.BSSSN
        assert not options.reduce_controls
        assert options.gate_budget(3) == 4 * 3 * 8

    def test_explicit_budget(self):
        """max_gates overrides the default budget."""
        assert SynthesisOptions(max_gates=5).gate_budget(3) == 5

    def test_random_requires_seed(self):
        """The random method cannot run unseeded."""
        with pytest.raises(ValidationError, match="requires a seed"):
            SynthesisOptions(method=Method.RANDOM)

    def test_seed_only_for_random(self):
        """Deterministic methods refuse a seed."""
        with pytest.raises(ValidationError, match="does not take a seed"):
            SynthesisOptions(seed=1)

    def test_seed_range(self):
        """Seeds must fit in 64 bits."""
        with pytest.raises(ValidationError):
            SynthesisOptions(method=Method.RANDOM, seed=1 << 64)

    def test_max_passes_positive(self):
        """At least one optimizer pass is required."""
        with pytest.raises(ValidationError):
            OptimizeConfig(max_passes=0)

    def test_bench_width_range(self):
        """Bench widths start at 3."""
        with pytest.raises(ValidationError, match="widths"):
            BenchConfig(widths=(2, 5))

    def test_bench_empty_methods(self):
        """A bench needs at least one method."""
        with pytest.raises(ValidationError, match="must not be empty"):
            BenchConfig(methods=())
