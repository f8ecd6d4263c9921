"""Distances and complexity measures over bit strings and specifications."""

from __future__ import annotations

from itertools import combinations

from models.bits import BitString, ReversibleSpec, check_width
from models.errors import WidthMismatch


def hamming_distance(p: BitString, q: BitString) -> int:
    """Count the lines on which p and q differ.

    Raises:
        WidthMismatch: If the widths differ.
    """
    if p.width != q.width:
        raise WidthMismatch(f"cannot compare widths {p.width} and {q.width}")
    return (p.value ^ q.value).bit_count()


def complexity(spec: ReversibleSpec) -> int:
    """C(f): the sum of row-wise Hamming distances between input and output."""
    return sum((i ^ v).bit_count() for i, v in enumerate(spec.perm))


def inverse(spec: ReversibleSpec) -> ReversibleSpec:
    """The specification g with g(f(i)) = i."""
    inv = [0] * spec.size
    for i, v in enumerate(spec.perm):
        inv[v] = i
    return ReversibleSpec(width=spec.width, perm=tuple(inv))


def identity_spec(width: int) -> ReversibleSpec:
    """The specification that leaves every line unchanged.

    Raises:
        WidthOutOfRange: If width is outside 1..MAX_WIDTH.
    """
    check_width(width)
    return ReversibleSpec(width=width, perm=tuple(range(1 << width)))


def distance_bounds_hold(spec: ReversibleSpec) -> bool:
    """Check 1 <= distance <= n for every pair of distinct output rows."""
    return all(
        1 <= (p ^ q).bit_count() <= spec.width
        for p, q in combinations(spec.perm, 2)
    )
