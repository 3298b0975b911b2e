from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from .continuum import QuadratureSpec
from .lattice import LatticeSpec


class ComplexFieldSpec(BaseModel):
    mode_count: int = Field(3, ge=3)
    n_max_a: int = Field(2, ge=1)
    n_max_b: int = Field(2, ge=1)
    charge: float = 1.0
    margin: int = Field(1, ge=1, description="field forms are compared on N_a, N_b <= n_max - margin")

    class Config:
        extra = "forbid"


class RunConfig(BaseModel):
    """Everything one `verify` run depends on; a fixed seed makes the JSON report byte-identical."""

    lattice: LatticeSpec = LatticeSpec()
    complex_field: ComplexFieldSpec = ComplexFieldSpec()
    quadrature: QuadratureSpec = QuadratureSpec()
    rapidities: List[float] = Field(default_factory=lambda: [0.2, 0.5, 1.0], min_length=1)
    tolerances: Dict[str, float] = Field(default_factory=dict)
    output_dir: str = "reports"
    seed: int = Field(20240917, ge=0)

    # Check knobs
    random_pairs: int = Field(20, ge=1)
    max_word_length: int = Field(8, ge=1)
    oracle_max_particles: int = Field(3, ge=1, le=6)
    oracle_max_degree: int = Field(3, ge=0)
    field_margin: int = Field(2, ge=1)
    wavepacket_mode_count: int = Field(41, ge=11)
    velocity_mode_count: int = Field(81, ge=11)
    classical_times: List[float] = Field(
        default_factory=lambda: [0.0, 1.7, 2.5, 5.0, 7.5, 10.0], min_length=1
    )

    record_timings: bool = False
    workers: Optional[int] = Field(None, ge=1)

    class Config:
        extra = "forbid"

    @field_validator("tolerances")
    @classmethod
    def tolerances_are_non_negative(cls, value: Dict[str, float]) -> Dict[str, float]:
        negative = sorted(name for name, tol in value.items() if tol < 0)
        if negative:
            raise ValueError(f"tolerances must be non-negative: {', '.join(negative)}")
        return value

    def tolerance(self, name: str, default: float) -> float:
        return self.tolerances.get(name, default)
