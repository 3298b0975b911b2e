from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field


class CheckStatus(str, Enum):
    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"


class CheckReport(BaseModel):
    name: str = Field(..., min_length=1)
    anchor: str
    deviation: Optional[float] = None
    tolerance: float = Field(..., ge=0)
    passed: Optional[bool] = Field(None, alias="pass")
    seconds: Optional[float] = None
    status: CheckStatus
    reason: Optional[str] = None

    class Config:
        populate_by_name = True

    @classmethod
    def evaluate(cls, name: str, anchor: str, deviation: float, tolerance: float) -> "CheckReport":
        passed = bool(deviation <= tolerance)
        return cls(
            name=name,
            anchor=anchor,
            deviation=float(deviation),
            tolerance=tolerance,
            passed=passed,
            status=CheckStatus.PASSED if passed else CheckStatus.FAILED,
        )

    @classmethod
    def skipped(cls, name: str, anchor: str, tolerance: float, reason: str) -> "CheckReport":
        return cls(
            name=name,
            anchor=anchor,
            tolerance=tolerance,
            passed=None,
            status=CheckStatus.SKIPPED,
            reason=reason,
        )

    @classmethod
    def errored(cls, name: str, anchor: str, tolerance: float, reason: str) -> "CheckReport":
        """A check that could not produce a deviation counts as failed."""
        return cls(
            name=name,
            anchor=anchor,
            tolerance=tolerance,
            passed=False,
            status=CheckStatus.FAILED,
            reason=reason,
        )

    def to_record(self) -> dict:
        return self.model_dump(mode="json", by_alias=True)
