from enum import Enum

from pydantic import BaseModel, Field, field_validator, model_validator


class Statistics(str, Enum):
    BOSE = "bose"
    FERMI = "fermi"


class LatticeSpec(BaseModel):
    """Discretization of the 1D periodic box plus the Fock truncation."""

    mode_count: int = Field(5, ge=3, description="M, odd")
    box_length: float = Field(6.283185307179586, gt=0)
    mass: float = Field(1.0, gt=0)
    hbar: float = Field(1.0, gt=0)
    dimension: int = Field(1, ge=1, le=1)
    statistics: Statistics = Statistics.BOSE
    n_max: int = Field(4, ge=1)

    class Config:
        frozen = True
        extra = "forbid"

    @field_validator("mode_count")
    @classmethod
    def mode_count_must_be_odd(cls, value: int) -> int:
        if value % 2 == 0:
            raise ValueError(f"mode_count must be odd so k pairs with -k around a zero mode, got {value}")
        return value

    @model_validator(mode="after")
    def fermi_truncation_fits(self) -> "LatticeSpec":
        if self.statistics == Statistics.FERMI and self.n_max > self.mode_count:
            raise ValueError(
                f"n_max={self.n_max} exceeds mode_count={self.mode_count} under Fermi statistics"
            )
        return self

    def with_statistics(self, statistics: Statistics) -> "LatticeSpec":
        n_max = self.n_max
        if statistics == Statistics.FERMI:
            n_max = min(n_max, self.mode_count)
        return self.model_copy(update={"statistics": statistics, "n_max": n_max})
