"""Refined curve counting on h-transverse polygons via floor diagrams."""

from .laurent import LaurentError, LaurentPoly, quantum_integer
from .polygon import DEGENERATE, FloorProfile, HPolygon, PolygonError, is_degenerate
from .floordiag import DiagramError, FloorDiagram, enumerate_diagrams, refined_invariant
from .invariants import (
    CACHE_ENV_VAR,
    ENGINE_VERSION,
    InvariantError,
    InvariantKey,
    InvariantRecord,
    InvariantTable,
    max_pairs,
)
from .surgery import (
    ClassLattice,
    NumberTable,
    SurgeryError,
    check_conjecture_quadric,
    check_increase,
    check_mainproof_coeffs,
    check_u_inversion,
    gamma_transform,
    lagrangian_transform,
    u_coeff,
)

__version__ = ENGINE_VERSION

__all__ = [
    "CACHE_ENV_VAR",
    "DEGENERATE",
    "ENGINE_VERSION",
    "ClassLattice",
    "DiagramError",
    "FloorDiagram",
    "FloorProfile",
    "HPolygon",
    "InvariantError",
    "InvariantKey",
    "InvariantRecord",
    "InvariantTable",
    "LaurentError",
    "LaurentPoly",
    "NumberTable",
    "PolygonError",
    "SurgeryError",
    "check_conjecture_quadric",
    "check_increase",
    "check_mainproof_coeffs",
    "check_u_inversion",
    "enumerate_diagrams",
    "gamma_transform",
    "is_degenerate",
    "lagrangian_transform",
    "max_pairs",
    "quantum_integer",
    "refined_invariant",
    "u_coeff",
]
