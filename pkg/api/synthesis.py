"""Synthesis, optimization, verification and embedding endpoints."""

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel

from engine.embedding import binding_for, embed
from engine.metrics import complexity
from engine.notation import format_circuit, parse_circuit, parse_table
from engine.optimizer import optimize_with_report
from engine.simulator import apply_circuit, realized_spec, realizes
from engine.synthesis import synthesize_with_trace
from models.bits import from_int, spec_from_perm
from models.errors import SwapnetError
from models.options import Method, Side, SynthesisOptions, TieRule

router = APIRouter()


class SynthesizeRequest(BaseModel):
    """Request body for synthesizing a permutation."""
    perm: list[int]
    method: Method = Method.BSSSN
    tie_rule: TieRule = TieRule.LOWEST_VALUE
    side: Side = Side.OUTPUT
    reduce_controls: bool = False
    seed: int | None = None
    optimize: bool = False


class CircuitResponse(BaseModel):
    """A circuit in the text circuit format plus its counts."""
    circuit: str
    gates: int
    controls: int


class SynthesizeResponse(CircuitResponse):
    """Synthesis result; discovery lists the gates in the order they were found."""
    discovery: list[str]
    cf: int


class CircuitRequest(BaseModel):
    """Request body carrying one circuit."""
    circuit: str


class OptimizeResponse(CircuitResponse):
    """Optimization result with before/after counts."""
    passes: int
    gates_before: int
    controls_before: int


class VerifyRequest(BaseModel):
    """Request body for checking a circuit against a permutation."""
    circuit: str
    perm: list[int]


class VerifyResponse(BaseModel):
    """Whether the circuit realizes the permutation."""
    equivalent: bool
    realized: list[int]


class SimulateRequest(BaseModel):
    """Request body for simulating input values; empty means all of them."""
    circuit: str
    inputs: list[int] = []


class SimulateResponse(BaseModel):
    """Outputs in the same order as the inputs."""
    inputs: list[int]
    outputs: list[int]


class EmbedRequest(BaseModel):
    """Request body carrying a truth table in the table file format."""
    table: str


class EmbedResponse(BaseModel):
    """The embedded permutation and how its lines are wired."""
    width: int
    perm: list[int]
    m: int
    p: int
    constant_lines: list[int]
    output_lines: list[int]
    garbage_lines: list[int]
    preserved_inputs: list[int]
    completion: str


def _bad_request(exc: Exception) -> HTTPException:
    return HTTPException(status_code=400, detail=str(exc))


@router.post("/synthesize", response_model=SynthesizeResponse)
def synthesize_circuit(body: SynthesizeRequest) -> SynthesizeResponse:
    """Synthesize a circuit for a permutation, optionally optimizing it."""
    try:
        spec = spec_from_perm(body.perm)
        options = SynthesisOptions(
            method=body.method,
            tie_rule=body.tie_rule,
            side=body.side,
            reduce_controls=body.reduce_controls,
            seed=body.seed,
        )
        result = synthesize_with_trace(spec, options)
        circuit = result.circuit
        if body.optimize:
            circuit, _ = optimize_with_report(circuit)
    except (SwapnetError, ValueError) as exc:
        raise _bad_request(exc)

    return SynthesizeResponse(
        circuit=format_circuit(circuit),
        gates=len(circuit),
        controls=circuit.control_count,
        discovery=[str(gate) for gate in result.discovery],
        cf=complexity(spec),
    )


@router.post("/optimize", response_model=OptimizeResponse)
def optimize_circuit(body: CircuitRequest) -> OptimizeResponse:
    """Optimize a circuit with the built-in rules."""
    try:
        circuit, report = optimize_with_report(parse_circuit(body.circuit))
    except SwapnetError as exc:
        raise _bad_request(exc)

    return OptimizeResponse(
        circuit=format_circuit(circuit),
        gates=report.gates_after,
        controls=report.controls_after,
        passes=report.passes,
        gates_before=report.gates_before,
        controls_before=report.controls_before,
    )


@router.post("/verify", response_model=VerifyResponse)
def verify_circuit(body: VerifyRequest) -> VerifyResponse:
    """Check a circuit against a permutation by exhaustive simulation."""
    try:
        circuit = parse_circuit(body.circuit)
        spec = spec_from_perm(body.perm)
        realized = realized_spec(circuit)
        equivalent = circuit.width == spec.width and realizes(circuit, spec)
    except SwapnetError as exc:
        raise _bad_request(exc)

    return VerifyResponse(equivalent=equivalent, realized=list(realized.perm))


@router.post("/simulate", response_model=SimulateResponse)
def simulate_circuit(body: SimulateRequest) -> SimulateResponse:
    """Run input values through a circuit."""
    try:
        circuit = parse_circuit(body.circuit)
        if not body.inputs:
            realized = realized_spec(circuit)
            return SimulateResponse(inputs=list(range(realized.size)), outputs=list(realized.perm))
        outputs = [apply_circuit(circuit, from_int(x, circuit.width)).value for x in body.inputs]
    except SwapnetError as exc:
        raise _bad_request(exc)

    return SimulateResponse(inputs=body.inputs, outputs=outputs)


@router.post("/embed", response_model=EmbedResponse)
def embed_table(body: EmbedRequest) -> EmbedResponse:
    """Embed a truth table into a reversible permutation."""
    try:
        table = parse_table(body.table)
        spec, report = embed(table)
    except SwapnetError as exc:
        raise _bad_request(exc)

    binding = binding_for(report, table.inputs)
    return EmbedResponse(
        width=spec.width,
        perm=list(spec.perm),
        m=report.m,
        p=report.p,
        constant_lines=sorted(binding.constant_lines),
        output_lines=list(binding.output_lines),
        garbage_lines=list(report.garbage_lines),
        preserved_inputs=list(report.preserved_inputs),
        completion=report.completion,
    )
