"""Template validation, registration and commutation-aware template matching."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator
from itertools import permutations, product

from pydantic import BaseModel, ConfigDict

from config import DEFAULT_MAX_PASSES, MAX_TEMPLATE_ARITY, TEMPLATE_MATCH_WINDOW
from engine.notation import parse_template
from engine.simulator import equivalent
from models.errors import ArityTooLarge, TemplateInvalid
from models.gates import Circuit, ToffoliGate, gates_commute, toffoli
from models.templates import Template

logger = logging.getLogger(__name__)

# (pos controls, neg controls) shared by every open gate of a match
Extras = tuple[frozenset[int], frozenset[int]]


def _controlled(template: Template, circuit: Circuit, extra: int) -> Circuit:
    """Widen a template side by one line that positively controls every open gate."""
    width = template.arity + 1
    return Circuit(
        width=width,
        gates=tuple(
            toffoli(
                width,
                gate.target,
                pos=gate.pos_controls | ({extra} if template.is_open(gate) else set()),
                neg=gate.neg_controls,
            )
            for gate in circuit.gates
        ),
    )


def validate_template(template: Template) -> bool:
    """Whether pattern and replacement agree on every input.

    Open gates are checked under one extra positive control, which stands for
    any set of extra controls a match may bring along.

    Raises:
        ArityTooLarge: If the template uses more than MAX_TEMPLATE_ARITY lines.
    """
    if template.arity > MAX_TEMPLATE_ARITY:
        raise ArityTooLarge(
            f"template {template.name!r} has arity {template.arity}, max is {MAX_TEMPLATE_ARITY}"
        )
    extra = template.arity
    return equivalent(
        _controlled(template, template.pattern, extra),
        _controlled(template, template.replacement, extra),
    )


def register_templates(templates: Iterable[Template]) -> tuple[Template, ...]:
    """Validate templates for use by apply_templates.

    Raises:
        ArityTooLarge: If a template is too wide to validate.
        TemplateInvalid: If a template is not equivalent, not strictly
            shorter, or its replacement uses lines the pattern does not bind.
    """
    registered = []
    for template in templates:
        if len(template.replacement) >= len(template.pattern):
            raise TemplateInvalid(f"template {template.name!r}: replacement is not shorter")
        used: frozenset[int] = frozenset()
        for gate in template.replacement.gates:
            used |= gate.lines()
        if not used <= template.lines():
            raise TemplateInvalid(f"template {template.name!r}: replacement uses unbound lines")
        if not validate_template(template):
            raise TemplateInvalid(f"template {template.name!r}: pattern and replacement differ")
        registered.append(template)
    return tuple(registered)


# --- Matching ---

class TemplateMatch(BaseModel):
    """Where a template pattern was found and how its abstract lines were bound."""
    model_config = ConfigDict(frozen=True)

    positions: tuple[int, ...]          # Circuit indices of the matched gates, ascending
    binding: dict[int, int]             # Abstract line -> concrete line
    extras: Extras | None = None


def _bind_gate(
    abstract: ToffoliGate,
    is_open: bool,
    gate: ToffoliGate,
    binding: dict[int, int],
    extras: Extras | None,
) -> Iterator[tuple[dict[int, int], Extras | None]]:
    """Every way of extending `binding` so that `abstract` lands on `gate`."""
    taken = set(binding.values())

    bound_target = binding.get(abstract.target)
    if bound_target is None:
        if gate.target in taken:
            return
        base = {**binding, abstract.target: gate.target}
    elif bound_target == gate.target:
        base = dict(binding)
    else:
        return

    unbound = {True: [], False: []}
    for line in sorted(abstract.controls):
        polarity = abstract.polarity(line)
        concrete = base.get(line)
        if concrete is None:
            unbound[polarity].append(line)
        elif gate.polarity(concrete) != polarity:
            return

    taken = set(base.values())
    choices = {
        polarity: [line for line in sorted(gate.controls)
                   if gate.polarity(line) == polarity and line not in taken]
        for polarity in (True, False)
    }
    for pos_pick, neg_pick in product(
        permutations(choices[True], len(unbound[True])),
        permutations(choices[False], len(unbound[False])),
    ):
        extended = {**base, **dict(zip(unbound[True], pos_pick)), **dict(zip(unbound[False], neg_pick))}
        images = {extended[line] for line in abstract.controls}
        leftover = gate.controls - images
        found: Extras = (
            frozenset(line for line in leftover if gate.polarity(line)),
            frozenset(line for line in leftover if not gate.polarity(line)),
        )
        if not is_open:
            if leftover:
                continue
            found_extras = extras
        elif extras is None:
            found_extras = found
        elif extras == found:
            found_extras = extras
        else:
            continue
        if found_extras and (found_extras[0] | found_extras[1]) & set(extended.values()):
            continue
        yield extended, found_extras


def _extend_match(
    template: Template,
    gates: list[ToffoliGate],
    index: int,
    limit: int,
    positions: list[int],
    binding: dict[int, int],
    extras: Extras | None,
) -> TemplateMatch | None:
    pattern = template.pattern.gates
    if index == len(pattern):
        return TemplateMatch(positions=tuple(positions), binding=binding, extras=extras)

    # A later pattern gate has to move left past every unmatched gate since the first match
    matched = set(positions)
    skipped = [gates[s] for s in range(positions[0] + 1, positions[-1]) if s not in matched]
    for j in range(positions[-1] + 1, limit):
        gate = gates[j]
        if all(gates_commute(gate, other) for other in skipped):
            for extended, found in _bind_gate(
                pattern[index], template.is_open(pattern[index]), gate, binding, extras
            ):
                result = _extend_match(
                    template, gates, index + 1, limit, positions + [j], extended, found
                )
                if result is not None:
                    return result
        skipped.append(gate)
    return None


def find_match(template: Template, gates: list[ToffoliGate], start: int) -> TemplateMatch | None:
    """Match the template with its first gate at `start`.

    Later pattern gates may sit up to TEMPLATE_MATCH_WINDOW positions away,
    provided each commutes with every unmatched gate in front of it.
    """
    pattern = template.pattern.gates
    if not pattern:
        return None
    limit = min(len(gates), start + TEMPLATE_MATCH_WINDOW + 1)
    for binding, extras in _bind_gate(
        pattern[0], template.is_open(pattern[0]), gates[start], {}, None
    ):
        result = _extend_match(template, gates, 1, limit, [start], binding, extras)
        if result is not None:
            return result
    return None


def _concrete(template: Template, gate: ToffoliGate, match: TemplateMatch, width: int) -> ToffoliGate:
    pos = {match.binding[line] for line in gate.pos_controls}
    neg = {match.binding[line] for line in gate.neg_controls}
    if match.extras and template.is_open(gate):
        pos |= match.extras[0]
        neg |= match.extras[1]
    return toffoli(width, match.binding[gate.target], pos=pos, neg=neg)


def substitute(
    template: Template, gates: list[ToffoliGate], match: TemplateMatch, width: int
) -> list[ToffoliGate]:
    """Replace a match: the replacement goes where the first matched gate was,
    followed by the gates that were skipped over."""
    first, last = match.positions[0], match.positions[-1]
    matched = set(match.positions)
    replacement = [_concrete(template, gate, match, width) for gate in template.replacement.gates]
    skipped = [gates[j] for j in range(first + 1, last + 1) if j not in matched]
    return gates[:first] + replacement + skipped + gates[last + 1:]


def apply_templates(
    circuit: Circuit,
    templates: Iterable[Template] | None = None,
    max_passes: int = DEFAULT_MAX_PASSES,
) -> Circuit:
    """Rewrite every template occurrence until none is left or max_passes is hit.

    Args:
        circuit: The circuit to reduce.
        templates: Registered templates; None selects BUILTIN_TEMPLATES.
        max_passes: Upper bound on sweeps over the circuit.

    Returns:
        An equivalent circuit with no more gates than the input.
    """
    templates = BUILTIN_TEMPLATES if templates is None else tuple(templates)
    gates = list(circuit.gates)

    for _ in range(max_passes):
        changed = False
        i = 0
        while i < len(gates):
            for template in templates:
                match = find_match(template, gates, i)
                if match is not None:
                    logger.debug("template %s at %s", template.name, match.positions)
                    gates = substitute(template, gates, match, circuit.width)
                    changed = True
                    i = max(0, i - TEMPLATE_MATCH_WINDOW)
                    break
            else:
                i += 1
        if not changed:
            break

    return Circuit(width=circuit.width, gates=tuple(gates))


_BUILTIN_TEXT = {
    "pair-cancellation": ".lines 1\nT(:a) T(:a) =>",
    "polarity-merge": "T(b:a) T(b':a) => T(:a)",
    "polarity-merge-mirror": "T(b':a) T(b:a) => T(:a)",
    "control-absorption": "T(b:a) T(:a) => T(b':a)",
    "control-absorption-mirror": "T(:a) T(b:a) => T(b':a)",
    "negative-control-absorption": "T(b':a) T(:a) => T(b:a)",
    "negative-control-absorption-mirror": "T(:a) T(b':a) => T(b:a)",
    "not-conjugation": ".open a\nT(:b) T(b:a) T(:b) => T(b':a)",
    "not-conjugation-negative": ".open a\nT(:b) T(b':a) T(:b) => T(b:a)",
}

BUILTIN_TEMPLATES: tuple[Template, ...] = register_templates(
    parse_template(text, name) for name, text in _BUILTIN_TEXT.items()
)
