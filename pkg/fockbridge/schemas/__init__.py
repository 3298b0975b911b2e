from .continuum import BoostParams, ProfileKind, ProfileRequest, QuadratureSpec
from .lattice import LatticeSpec, Statistics
from .report import CheckReport, CheckStatus
from .run_config import ComplexFieldSpec, RunConfig

__all__ = [
    "BoostParams",
    "CheckReport",
    "CheckStatus",
    "ComplexFieldSpec",
    "LatticeSpec",
    "ProfileKind",
    "ProfileRequest",
    "QuadratureSpec",
    "RunConfig",
    "Statistics",
]
