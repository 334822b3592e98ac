"""Machine, state and reachability models for the small-width semantics."""

from collections.abc import Iterator, Mapping
from enum import StrEnum
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


class MachineConfig(BaseModel):
    """Bit width of the two's-complement machine."""

    model_config = ConfigDict(frozen=True)

    width: int = Field(ge=2, le=16)

    @property
    def modulus(self) -> int:
        return 1 << self.width

    @property
    def min_value(self) -> int:
        return -(1 << (self.width - 1))

    @property
    def max_value(self) -> int:
        return (1 << (self.width - 1)) - 1

    def domain(self) -> range:
        return range(self.min_value, self.max_value + 1)

    def wrap(self, value: int) -> int:
        """Reinterpret an unbounded integer as a `width`-bit two's-complement value."""
        half = 1 << (self.width - 1)
        return ((value + half) % self.modulus) - half


class State(BaseModel):
    """Immutable valuation of program variables.

    Attributes:
        names: Variable names, in declaration order
        values: Values, aligned with names
    """

    model_config = ConfigDict(frozen=True)

    names: tuple[str, ...]
    values: tuple[int, ...]

    @classmethod
    def of(cls, bindings: Mapping[str, int]) -> "State":
        return cls(names=tuple(bindings), values=tuple(bindings.values()))

    @classmethod
    def zeros(cls, names: tuple[str, ...]) -> "State":
        return cls(names=names, values=(0,) * len(names))

    def __getitem__(self, name: str) -> int:
        return self.values[self.names.index(name)]

    def items(self) -> Iterator[tuple[str, int]]:
        return iter(zip(self.names, self.values))

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.names, self.values))

    def updated(self, name: str, value: int) -> "State":
        index = self.names.index(name)
        values = self.values[:index] + (value,) + self.values[index + 1 :]
        return State.model_construct(names=self.names, values=values)

    def project(self, names: tuple[str, ...]) -> "State":
        return State.model_construct(names=names, values=tuple(self[n] for n in names))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{n}: {v}" for n, v in self.items()) + "}"


class FaultKind(StrEnum):
    DIV_BY_ZERO = "DivByZero"
    SHIFT_OUT_OF_RANGE = "ShiftOutOfRange"


class EvalFault(BaseModel):
    """A partial operation hit during evaluation; the faulting path ends here."""

    model_config = ConfigDict(frozen=True)

    kind: FaultKind
    location: int | None = None  # origin tag of the statement being executed


class ErrorToken(BaseModel):
    """Outcome of executing `error`."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["error"] = "error"


Observation = tuple[int, State]


class ReachResult(BaseModel):
    """Finite, observable shadow of a program's traces.

    Attributes:
        observed: (origin tag, state projected onto the observed variables) pairs
        error_reached: True if some path executed `error`
        faults: Evaluation faults met on some path
        exhausted: True if exploration stopped at the step bound before the fixpoint
        steps: Number of (location, state) pairs expanded
    """

    model_config = ConfigDict(frozen=True)

    observed: frozenset[Observation] = frozenset()
    error_reached: bool = False
    faults: frozenset[EvalFault] = frozenset()
    exhausted: bool = False
    steps: int = 0

    def summary(self) -> dict[str, object]:
        return {
            "error_reached": self.error_reached,
            "exhausted": self.exhausted,
            "fault_count": len(self.faults),
            "observed_count": len(self.observed),
            "steps": self.steps,
        }
