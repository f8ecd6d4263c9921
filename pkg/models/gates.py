"""Mixed-polarity Toffoli gates and circuits."""

from __future__ import annotations

from collections.abc import Iterable
from functools import lru_cache

from pydantic import BaseModel, ConfigDict, model_validator

from models.bits import check_width, line_name
from models.errors import SelfControl, UnknownLine, WidthMismatch


@lru_cache(maxsize=4096)
def _mask(lines: frozenset[int]) -> int:
    mask = 0
    for line in lines:
        mask |= 1 << line
    return mask


class ToffoliGate(BaseModel):
    """Flips `target` when every positive control reads 1 and every negative control reads 0."""
    model_config = ConfigDict(frozen=True)

    width: int
    target: int
    pos_controls: frozenset[int] = frozenset()
    neg_controls: frozenset[int] = frozenset()

    @model_validator(mode="after")
    def _check_lines(self) -> ToffoliGate:
        if self.pos_controls & self.neg_controls:
            raise ValueError("a line cannot be both a positive and a negative control")
        if self.target in self.pos_controls or self.target in self.neg_controls:
            raise ValueError("the target cannot also be a control")
        if any(not 0 <= line < self.width for line in self.lines()):
            raise ValueError(f"gate uses a line outside 0..{self.width - 1}")
        return self

    @property
    def controls(self) -> frozenset[int]:
        return self.pos_controls | self.neg_controls

    @property
    def control_count(self) -> int:
        return len(self.pos_controls) + len(self.neg_controls)

    @property
    def pos_mask(self) -> int:
        return _mask(self.pos_controls)

    @property
    def neg_mask(self) -> int:
        return _mask(self.neg_controls)

    @property
    def target_mask(self) -> int:
        return 1 << self.target

    def lines(self) -> frozenset[int]:
        """Every line the gate touches."""
        return self.pos_controls | self.neg_controls | {self.target}

    def polarity(self, line: int) -> bool | None:
        """True for a positive control, False for a negative one, None otherwise."""
        if line in self.pos_controls:
            return True
        if line in self.neg_controls:
            return False
        return None

    def fires(self, x: int) -> bool:
        """Whether the control condition holds for the integer assignment x."""
        pos = self.pos_mask
        return (x & pos) == pos and not x & self.neg_mask

    def apply_int(self, x: int) -> int:
        return x ^ self.target_mask if self.fires(x) else x

    def without_controls(self, lines: Iterable[int]) -> ToffoliGate:
        dropped = frozenset(lines)
        return ToffoliGate(
            width=self.width,
            target=self.target,
            pos_controls=self.pos_controls - dropped,
            neg_controls=self.neg_controls - dropped,
        )

    def __str__(self) -> str:
        parts = []
        for line in sorted(self.controls):
            name = line_name(line)
            parts.append(name if line in self.pos_controls else name + "'")
        return f"T({','.join(parts)}:{line_name(self.target)})"


def toffoli(
    width: int,
    target: int,
    pos: Iterable[int] = (),
    neg: Iterable[int] = (),
) -> ToffoliGate:
    """Build a gate, raising domain errors instead of pydantic ones.

    Raises:
        WidthOutOfRange: If width is invalid.
        UnknownLine: If any index is outside 0..width-1.
        SelfControl: If the target is listed as a control, or a line has both polarities.
    """
    check_width(width)
    pos_set, neg_set = frozenset(pos), frozenset(neg)
    for line in pos_set | neg_set | {target}:
        if not 0 <= line < width:
            raise UnknownLine(f"line {line} is outside 0..{width - 1}")
    if target in pos_set or target in neg_set:
        raise SelfControl(f"line {line_name(target)} cannot control itself")
    if pos_set & neg_set:
        raise SelfControl("a line cannot be both a positive and a negative control")
    return ToffoliGate(width=width, target=target, pos_controls=pos_set, neg_controls=neg_set)


def gates_commute(g: ToffoliGate, h: ToffoliGate) -> bool:
    """Sufficient condition for gh == hg: neither target is a control of the other.

    Raises:
        WidthMismatch: If the widths differ.
    """
    if g.width != h.width:
        raise WidthMismatch(f"cannot compare gates of widths {g.width} and {h.width}")
    return g.target not in h.controls and h.target not in g.controls


class Circuit(BaseModel):
    """A width plus gates in application order (first-applied first)."""
    model_config = ConfigDict(frozen=True)

    width: int
    gates: tuple[ToffoliGate, ...] = ()

    @model_validator(mode="after")
    def _check_widths(self) -> Circuit:
        for gate in self.gates:
            if gate.width != self.width:
                raise ValueError(
                    f"gate {gate} has width {gate.width}, circuit has {self.width}"
                )
        return self

    def __len__(self) -> int:
        return len(self.gates)

    @property
    def control_count(self) -> int:
        return sum(gate.control_count for gate in self.gates)

    def reversed(self) -> Circuit:
        """The inverse circuit (every gate is self-inverse)."""
        return Circuit(width=self.width, gates=self.gates[::-1])


def make_circuit(width: int, gates: Iterable[ToffoliGate]) -> Circuit:
    """Build a circuit, raising WidthMismatch for a gate of the wrong width."""
    check_width(width)
    gates = tuple(gates)
    for gate in gates:
        if gate.width != width:
            raise WidthMismatch(f"gate {gate} has width {gate.width}, circuit has {width}")
    return Circuit(width=width, gates=gates)
