"""Whole-program verdict models."""

from enum import StrEnum

from pydantic import BaseModel

from bitbranch.domain.machine import State


class InclusionStatus(StrEnum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


class Witness(BaseModel):
    """An observation of the original program missing from the transformed one."""

    origin: int
    state: State

    def __str__(self) -> str:
        return f"@{self.origin} {self.state}"


class InclusionVerdict(BaseModel):
    """Outcome of comparing observations of P and T(P).

    Attributes:
        status: holds, fails (with witness) or inconclusive (a run hit the step bound)
        witness: Observation of P absent from T(P), set when status is fails
        error_monotone: False if P reaches `error` but T(P) does not
        original_observed / transformed_observed: Observation counts
        original_exhausted / transformed_exhausted: Step-bound flags of both runs
        original_error_reached / transformed_error_reached: Whether each run executed `error`
    """

    status: InclusionStatus
    witness: Witness | None = None
    error_monotone: bool = True
    original_observed: int = 0
    transformed_observed: int = 0
    original_exhausted: bool = False
    transformed_exhausted: bool = False
    original_error_reached: bool = False
    transformed_error_reached: bool = False

    @property
    def holds(self) -> bool:
        return self.status is InclusionStatus.HOLDS


class SafetyOutcome(StrEnum):
    SAFE = "safe"
    TRUE_ALARM = "true_alarm"
    SPURIOUS_ALARM = "spurious_alarm"
    INCONCLUSIVE = "inconclusive"


class SafetyReport(BaseModel):
    outcome: SafetyOutcome
    width: int
    message: str
    transformed_error_reached: bool
    original_error_reached: bool | None = None  # only run when T(P) raises an alarm


class FuzzReport(BaseModel):
    """Summary of an inclusion fuzz campaign."""

    seed: int
    count: int
    width: int
    holds: int = 0
    inconclusive: int = 0
    counterexamples: list[str] = []  # validated witnesses, with the failing program's index
    unconfirmed: int = 0  # witnesses the structured interpreter could not replay
    monotonicity_violations: int = 0
    spurious_alarms: int = 0
