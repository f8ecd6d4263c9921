"""Text formats: spec files, circuit files in T(controls:target) notation, truth tables, templates."""

from __future__ import annotations

import re

from config import LINE_NAMES, MAX_WIDTH
from models.bits import ReversibleSpec, line_name, spec_from_perm
from models.errors import ParseError, SelfControl, UnknownLine
from models.gates import Circuit, make_circuit, toffoli
from models.tables import EmbeddingReport, IrreversibleTable, table_from_rows
from models.templates import Template

GATE_PATTERN = re.compile(r"T\(([^()]*)\)")
CONTROL_PATTERN = re.compile(r"^([a-p])('?)$")
HEADER_PATTERN = re.compile(r"^\.(\w+)\s*(.*)$")


def _strip_comment(text: str) -> str:
    return text.split("#", 1)[0]


def _numbered(text: str) -> list[tuple[int, str]]:
    """Non-blank lines with comments removed, paired with 1-based line numbers."""
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw).rstrip()
        if body.strip():
            lines.append((number, body))
    return lines


def _parse_int(token: str, line: int, column: int) -> int:
    if not re.fullmatch(r"\d+", token):
        raise ParseError(f"expected an integer, got {token!r}", line, column)
    return int(token)


# --- Specifications ---

def parse_spec(text: str) -> ReversibleSpec:
    """Parse `n <width>` followed by `perm <2^n integers>`.

    Tokens may be spread over any number of lines; `#` starts a comment.

    Raises:
        ParseError: On malformed input, located by line and column.
        WidthOutOfRange: If the width is invalid or the count does not match it.
        NotAPermutation: If a value is repeated.
    """
    tokens = [
        (match.group(), number, match.start() + 1)
        for number, body in _numbered(text)
        for match in re.finditer(r"\S+", body)
    ]
    if len(tokens) < 2 or tokens[0][0] != "n":
        where = tokens[0][1:] if tokens else (1, 1)
        raise ParseError("spec must start with 'n <width>'", *where)
    width = _parse_int(*tokens[1])
    if len(tokens) < 3 or tokens[2][0] != "perm":
        where = tokens[2][1:] if len(tokens) > 2 else tokens[1][1:]
        raise ParseError("expected 'perm' after the width", *where)

    perm = [_parse_int(*token) for token in tokens[3:]]
    return spec_from_perm(perm, width)


def format_spec(spec: ReversibleSpec) -> str:
    return f"n {spec.width}\nperm {' '.join(str(v) for v in spec.perm)}\n"


# --- Circuits ---

def _line_index(name: str, width: int | None, line: int, column: int) -> int:
    index = LINE_NAMES.index(name)
    if width is not None and index >= width:
        raise UnknownLine(f"line {name} is outside a..{line_name(width - 1)}", line, column)
    return index


def _parse_gate_body(body: str, width: int | None, line: int, column: int) -> tuple[int, set[int], set[int]]:
    """Split the inside of T(...) into target and control sets."""
    parts = re.split(r"[:;]", body)
    if len(parts) > 2:
        raise ParseError(f"more than one target separator in T({body})", line, column)
    controls_text, target_text = parts if len(parts) == 2 else ("", parts[0])

    target_text = target_text.strip()
    if not re.fullmatch(r"[a-p]", target_text):
        raise ParseError(f"bad target {target_text!r} in T({body})", line, column)
    target = _line_index(target_text, width, line, column)

    pos: set[int] = set()
    neg: set[int] = set()
    for item in filter(None, (c.strip() for c in controls_text.split(","))):
        match = CONTROL_PATTERN.match(item)
        if not match:
            raise ParseError(f"bad control {item!r} in T({body})", line, column)
        index = _line_index(match.group(1), width, line, column)
        if index == target:
            raise SelfControl(f"line {match.group(1)} cannot control itself", line, column)
        if index in pos or index in neg:
            raise SelfControl(f"line {match.group(1)} listed twice as a control", line, column)
        (neg if match.group(2) else pos).add(index)
    return target, pos, neg


def _parse_gates(lines: list[tuple[int, str]], width: int | None) -> list[tuple[int, set[int], set[int]]]:
    gates = []
    for number, body in lines:
        if body.strip() in ("∅", "()"):
            continue
        position = 0
        for match in GATE_PATTERN.finditer(body):
            gap = body[position:match.start()]
            if gap.strip():
                column = position + len(gap) - len(gap.lstrip()) + 1
                raise ParseError(f"unexpected text {gap.strip()!r}", number, column)
            gates.append(_parse_gate_body(match.group(1), width, number, match.start() + 1))
            position = match.end()
        tail = body[position:]
        if tail.strip():
            column = position + len(tail) - len(tail.lstrip()) + 1
            raise ParseError(f"unexpected text {tail.strip()!r}", number, column)
    return gates


def _build_circuit(width: int, gates: list[tuple[int, set[int], set[int]]]) -> Circuit:
    return make_circuit(width, (toffoli(width, t, pos=p, neg=n) for t, p, n in gates))


def _inferred_width(gates: list[tuple[int, set[int], set[int]]]) -> int:
    highest = max((max({t} | p | n) for t, p, n in gates), default=0)
    return highest + 1


def _parse_lines_header(value: str, number: int) -> int:
    width = _parse_int(value.strip(), number, 8)
    if not 1 <= width <= MAX_WIDTH:
        raise ParseError(f".lines must be in 1..{MAX_WIDTH}", number, 8)
    return width


def parse_circuit(text: str) -> Circuit:
    """Parse a circuit file: optional `.lines n` header, then gates in application order.

    Several gates may share a line, as in `T(a,b;d)T(a;b)`. Both `:`
    and `;` separate controls from the target, `'` marks a negative control,
    and `T(a)` is accepted for `T(:a)`. Without a header the width is the
    highest line used plus one.

    Raises:
        ParseError: On malformed text.
        UnknownLine: If a gate names a line beyond the declared width.
        SelfControl: If a gate lists its target (or a line twice) as a control.
    """
    width: int | None = None
    body: list[tuple[int, str]] = []
    for number, line in _numbered(text):
        header = HEADER_PATTERN.match(line.strip())
        if header:
            if header.group(1) != "lines":
                raise ParseError(f"unknown header .{header.group(1)}", number, 1)
            width = _parse_lines_header(header.group(2), number)
        else:
            body.append((number, line))

    gates = _parse_gates(body, width)
    return _build_circuit(width or _inferred_width(gates), gates)


def format_circuit(circuit: Circuit, discovery_order: bool = False) -> str:
    """One canonical gate per line under a `.lines` header.

    With discovery_order the gates are listed last-applied first, the order in
    which output-side synthesis discovers them.
    """
    gates = circuit.gates[::-1] if discovery_order else circuit.gates
    lines = [f".lines {circuit.width}"] + [str(gate) for gate in gates]
    return "\n".join(lines) + "\n"


# --- Truth tables ---

def parse_table(text: str) -> IrreversibleTable:
    """Parse `.inputs n`, `.outputs k` and 2^n rows in ascending input order.

    A row is either the k output bits (most significant output first) or the
    n input bits followed by the k output bits.

    Raises:
        ParseError: On malformed rows or headers.
        RowCountMismatch: If the row count is not 2^n.
    """
    counts: dict[str, int] = {}
    rows: list[int] = []
    for number, line in _numbered(text):
        header = HEADER_PATTERN.match(line.strip())
        if header:
            name = header.group(1)
            if name not in ("inputs", "outputs"):
                raise ParseError(f"unknown header .{name}", number, 1)
            counts[name] = _parse_int(header.group(2).strip(), number, len(name) + 3)
            continue
        if "inputs" not in counts or "outputs" not in counts:
            raise ParseError("rows must follow .inputs and .outputs", number, 1)

        fields = line.split()
        n, k = counts["inputs"], counts["outputs"]
        if len(fields) == 2:
            in_bits, out_bits = fields
            if len(in_bits) != n or set(in_bits) - {"0", "1"}:
                raise ParseError(f"expected {n} input bits, got {in_bits!r}", number, 1)
            if int(in_bits, 2) != len(rows):
                raise ParseError(
                    f"rows must be in ascending input order, expected {len(rows):0{n}b}", number, 1
                )
        elif len(fields) == 1:
            out_bits = fields[0]
        else:
            raise ParseError("a row is '<outputs>' or '<inputs> <outputs>'", number, 1)
        if len(out_bits) != k or set(out_bits) - {"0", "1"}:
            column = line.index(out_bits) + 1
            raise ParseError(f"expected {k} output bits, got {out_bits!r}", number, column)
        rows.append(int(out_bits, 2))

    if "inputs" not in counts or "outputs" not in counts:
        raise ParseError("table needs .inputs and .outputs headers", 1, 1)
    return table_from_rows(counts["inputs"], counts["outputs"], rows)


def format_table(table: IrreversibleTable) -> str:
    lines = [f".inputs {table.inputs}", f".outputs {table.outputs}"]
    for x, row in enumerate(table.rows):
        lines.append(f"{x:0{table.inputs}b} {row:0{table.outputs}b}")
    return "\n".join(lines) + "\n"


# --- Templates ---

def parse_template(text: str, name: str = "template") -> Template:
    """Parse a template: circuit grammar with the pattern and replacement split by `=>`.

    Headers: `.lines n` (abstract line count, otherwise inferred from both
    sides), `.name <name>` and `.open <lines>` listing the targets that may
    carry extra controls (absent: every gate may). The separator may sit on
    its own line or inline, as in `T(:a)T(:a) => `.

    Raises:
        ParseError: If `=>` is missing or repeated, or on malformed gates.
    """
    width: int | None = None
    open_targets: frozenset[int] | None = None
    sides: list[list[tuple[int, str]]] = [[]]
    for number, line in _numbered(text):
        header = HEADER_PATTERN.match(line.strip())
        if header:
            key, value = header.group(1), header.group(2)
            if key == "lines":
                width = _parse_lines_header(value, number)
            elif key == "name":
                name = value.strip()
            elif key == "open":
                targets = set()
                for item in value.split():
                    if not re.fullmatch(r"[a-p]", item):
                        raise ParseError(f"bad line name {item!r} in .open", number, 1)
                    targets.add(LINE_NAMES.index(item))
                open_targets = frozenset(targets)
            else:
                raise ParseError(f"unknown header .{key}", number, 1)
            continue
        chunks = line.split("=>")
        for index, chunk in enumerate(chunks):
            if index:
                sides.append([])
            if chunk.strip():
                sides[-1].append((number, chunk))

    if len(sides) != 2:
        raise ParseError(f"template needs exactly one '=>', found {len(sides) - 1}", 1, 1)

    pattern = _parse_gates(sides[0], width)
    replacement = _parse_gates(sides[1], width)
    arity = width or max(_inferred_width(pattern), _inferred_width(replacement))
    return Template(
        name=name,
        arity=arity,
        pattern=_build_circuit(arity, pattern),
        replacement=_build_circuit(arity, replacement),
        open_targets=open_targets,
    )


# --- Reports ---

def _names(lines: tuple[int, ...]) -> str:
    return " ".join(line_name(line) for line in lines) or "-"


def format_report(report: EmbeddingReport) -> str:
    """Embedding report as `#` comment lines, so it can trail a spec file."""
    fields = [
        ("m", str(report.m)),
        ("p", str(report.p)),
        ("lines", str(report.total_lines)),
        ("constants", _names(report.constant_lines)),
        ("outputs", _names(report.output_bindings)),
        ("garbage", _names(report.garbage_lines)),
        ("preserved", _names(report.preserved_inputs)),
        ("completion", report.completion),
        ("reassigned", " ".join(str(x) for x in report.reassigned_rows) or "-"),
    ]
    return "".join(f"# {key} {value}\n" for key, value in fields)
