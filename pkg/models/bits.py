"""Bit strings and reversible specifications."""

from __future__ import annotations

from collections.abc import Sequence

from pydantic import BaseModel, ConfigDict, model_validator

from config import LINE_NAMES, MAX_WIDTH
from models.errors import NotAPermutation, ParseError, ValueOutOfRange, WidthOutOfRange


def check_width(width: int) -> int:
    """Validate a line count against the exhaustive-simulation ceiling.

    Raises:
        WidthOutOfRange: If width is not in 1..MAX_WIDTH.
    """
    if not 1 <= width <= MAX_WIDTH:
        raise WidthOutOfRange(f"width {width} is outside 1..{MAX_WIDTH}")
    return width


def _check_value(value: int, width: int) -> None:
    if not 0 <= value < (1 << width):
        raise ValueOutOfRange(f"value {value} does not fit in {width} lines")


def _check_perm(perm: Sequence[int], width: int) -> None:
    size = len(perm)
    if size != 1 << width:
        raise WidthOutOfRange(f"width {width} needs {1 << width} values, got {size}")
    seen = [False] * size
    for value in perm:
        _check_value(value, width)
        if seen[value]:
            raise NotAPermutation(value)
        seen[value] = True


class BitString(BaseModel):
    """An assignment of the n circuit lines; line 0 is the least significant bit."""
    model_config = ConfigDict(frozen=True)

    width: int
    value: int

    @model_validator(mode="after")
    def _check_fits(self) -> BitString:
        check_width(self.width)
        _check_value(self.value, self.width)
        return self

    def bit(self, line: int) -> int:
        """Return the bit carried by one line."""
        return (self.value >> line) & 1

    def bits(self) -> tuple[int, ...]:
        """All bits in line order (a first)."""
        return tuple(self.bit(line) for line in range(self.width))

    def flip(self, line: int) -> BitString:
        return BitString(width=self.width, value=self.value ^ (1 << line))

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        # Most significant line first: "c b a"
        return format(self.value, f"0{self.width}b")


def from_int(value: int, width: int) -> BitString:
    """Build the bit string whose integer encoding is `value`.

    Args:
        value: Unsigned integer encoding (line 0 = least significant bit).
        width: Number of lines, 1..MAX_WIDTH.

    Returns:
        The corresponding BitString.

    Raises:
        WidthOutOfRange: If width is invalid.
        ValueOutOfRange: If value does not fit in `width` bits.
    """
    check_width(width)
    _check_value(value, width)
    return BitString(width=width, value=value)


def bitstring(text: str) -> BitString:
    """Parse a most-significant-first string such as "101".

    Raises:
        ParseError: If the text is empty or holds anything but 0 and 1.
    """
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise ParseError(f"Invalid bit string: {text!r}")
    return from_int(int(text, 2), len(text))


def line_name(line: int) -> str:
    """Name used for a line in gate notation (0 -> 'a')."""
    return LINE_NAMES[line]


class ReversibleSpec(BaseModel):
    """A width-n permutation of {0..2^n-1}; perm[i] = f(i)."""
    model_config = ConfigDict(frozen=True)

    width: int
    perm: tuple[int, ...]

    @model_validator(mode="after")
    def _check_bijection(self) -> ReversibleSpec:
        check_width(self.width)
        _check_perm(self.perm, self.width)
        return self

    @property
    def size(self) -> int:
        return len(self.perm)

    def __call__(self, x: int) -> int:
        return self.perm[x]

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.perm))


def spec_from_perm(perm: Sequence[int], width: int | None = None) -> ReversibleSpec:
    """Validate an ordered integer set and wrap it as a ReversibleSpec.

    Args:
        perm: perm[i] is the output for input i.
        width: Line count; inferred from len(perm) when omitted.

    Returns:
        The validated specification.

    Raises:
        WidthOutOfRange: If the length is not 2^width for a valid width.
        ValueOutOfRange: If a value is outside 0..2^width-1.
        NotAPermutation: If a value is repeated.
    """
    size = len(perm)
    if width is None:
        if size < 2 or size & (size - 1):
            raise WidthOutOfRange(f"length {size} is not a power of two >= 2")
        width = size.bit_length() - 1
    check_width(width)
    _check_perm(perm, width)
    return ReversibleSpec(width=width, perm=tuple(int(v) for v in perm))
