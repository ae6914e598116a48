"""Report models printed by the command line.

Exact values are carried as ``num/den`` strings; their ``decimal`` renderings
are roundings for humans and never authoritative.
"""

from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator

from stepfit.core.config import Algorithm
from stepfit.utils.parsing import format_decimal, format_fraction

FRACTION_PATTERN = r"^-?\d+/\d+$"


class StatusEnum(str, Enum):
    """Verdict of a feasibility query."""

    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"


class ExactValue(BaseModel):
    """A rational number with its exact and rounded renderings."""

    model_config = ConfigDict(frozen=True)

    exact: str = Field(..., pattern=FRACTION_PATTERN, examples=["3/2"])
    decimal: str = Field(..., examples=["1.5"])

    @classmethod
    def of(cls, value: Fraction, precision: int) -> "ExactValue":
        return cls(exact=format_fraction(value), decimal=format_decimal(value, precision))


def exact_values(values: Sequence[Fraction], precision: int) -> List[ExactValue]:
    return [ExactValue.of(v, precision) for v in values]


class StepFunctionModel(BaseModel):
    """Breakpoints and step values of a step function."""

    breakpoints: List[ExactValue] = Field(default_factory=list)
    values: List[ExactValue] = Field(..., min_length=1)

    @field_validator("values")
    def check_lengths(cls, v: List[ExactValue], info: ValidationInfo) -> List[ExactValue]:
        breakpoints = info.data.get("breakpoints", [])
        if len(v) != len(breakpoints) + 1:
            raise ValueError("a step function needs one more value than breakpoints")
        return v


class RunReport(BaseModel):
    """Result of ``stepfit fit``."""

    eps_star: ExactValue
    breakpoints: List[ExactValue]
    values: List[ExactValue]
    algorithm: Algorithm
    n: int = Field(..., ge=1)
    k: int = Field(..., ge=1)
    oracle_calls: int = Field(..., ge=0)
    elapsed_ms: float = Field(..., ge=0)
    max_active: Optional[int] = Field(
        default=None, description="Largest active comparator count (parametric only)"
    )


class DecisionReport(BaseModel):
    """Result of ``stepfit decide``."""

    status: StatusEnum
    eps: ExactValue
    k: int = Field(..., ge=1)
    steps_used: int = Field(..., ge=1)
    witness: Optional[StepFunctionModel] = None


class KCenterReport(BaseModel):
    """Result of ``stepfit kcenter``."""

    cost: ExactValue
    centers: List[ExactValue] = Field(..., min_length=1)
    n: int = Field(..., ge=1)
    k: int = Field(..., ge=1)
    oracle_calls: int = Field(..., ge=0)


class BenchRow(BaseModel):
    """One CSV row of ``stepfit bench``."""

    n: int
    algorithm: Algorithm
    millis: float
    oracle_calls: int
    max_active: Optional[int] = None


class VerifyReport(BaseModel):
    """Result of ``stepfit verify``."""

    parametric: ExactValue
    bruteforce: ExactValue
    backends_agree: bool
    certificate_valid: bool
    problems: List[str] = Field(default_factory=list)
