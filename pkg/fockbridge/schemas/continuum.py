import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field


class QuadratureSpec(BaseModel):
    mass: float = Field(1.0, gt=0)
    hbar: float = Field(1.0, gt=0)
    cutoff_factor: float = Field(40.0, ge=20.0, description="K as a multiple of the mass")
    node_count: int = Field(4001, ge=101)

    class Config:
        frozen = True
        extra = "forbid"

    @property
    def cutoff(self) -> float:
        return self.cutoff_factor * self.mass


class BoostParams(BaseModel):
    rapidity: float = Field(0.0, ge=-20.0, le=20.0)

    class Config:
        frozen = True

    @property
    def beta(self) -> float:
        return math.tanh(self.rapidity)

    @property
    def gamma(self) -> float:
        return math.cosh(self.rapidity)

    def inverse(self) -> "BoostParams":
        return BoostParams(rapidity=-self.rapidity)

    def compose(self, other: "BoostParams") -> "BoostParams":
        return BoostParams(rapidity=self.rapidity + other.rapidity)


class ProfileKind(str, Enum):
    NW_CHI = "nw_chi"
    NW_X = "nw_x"
    CHI_OVERLAP = "chi_overlap"
    ANTICOMMUTATOR_KERNEL = "anticommutator_kernel"


class ProfileRequest(BaseModel):
    """Parameters of one CSV profile; `cutoff` is the absolute momentum window K."""

    kind: ProfileKind = ProfileKind.NW_CHI
    mass: float = Field(1.0, gt=0)
    hbar: float = Field(1.0, gt=0)
    cutoff: Optional[float] = Field(None, gt=0)
    node_count: int = Field(4001, ge=101)
    span: float = Field(0.5, gt=0, description="half-width of the sampled range in units of 1/m")
    points: int = Field(401, ge=3)
    mode_count: int = Field(21, ge=3)
    box_length: float = Field(5.0, gt=0)

    class Config:
        frozen = True
        extra = "forbid"

    def quadrature(self) -> QuadratureSpec:
        factor = 40.0 if self.cutoff is None else self.cutoff / self.mass
        return QuadratureSpec(mass=self.mass, hbar=self.hbar, cutoff_factor=factor, node_count=self.node_count)
