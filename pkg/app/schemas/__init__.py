from .reports import (
    BoundsReport,
    ChecksReport,
    ComponentOut,
    DecompositionReport,
    HullReport,
    IdealReport,
    RunReport,
    VerifyReport,
)
from .run_config import LatticeSpec, RunConfig

__all__ = [
    "BoundsReport",
    "ChecksReport",
    "ComponentOut",
    "DecompositionReport",
    "HullReport",
    "IdealReport",
    "RunReport",
    "VerifyReport",
    "LatticeSpec",
    "RunConfig",
]
