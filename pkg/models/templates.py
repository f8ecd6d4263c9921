"""Rewrite templates for the optimizer."""

from pydantic import BaseModel, ConfigDict

from models.gates import Circuit, ToffoliGate


class Template(BaseModel):
    """A pattern and a shorter, simulation-equivalent replacement over abstract lines."""
    model_config = ConfigDict(frozen=True)

    name: str
    arity: int
    pattern: Circuit
    replacement: Circuit
    open_targets: frozenset[int] | None = None  # None: every line may carry extra controls

    def is_open(self, gate: ToffoliGate) -> bool:
        """Whether a template gate may pick up the match's extra controls."""
        return self.open_targets is None or gate.target in self.open_targets

    def lines(self) -> frozenset[int]:
        """Abstract lines touched by the pattern."""
        used: frozenset[int] = frozenset()
        for gate in self.pattern.gates:
            used |= gate.lines()
        return used
