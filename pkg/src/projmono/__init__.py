"""Monodromy groups of linear projections of curves."""

from .curve import (
    FiberFamily,
    PencilFamily,
    PlaneCurveImplicit,
    ProjectionCenter,
    RationalCurveMap,
    branch_multiplicity,
    fiber_multiplicities,
    make_pencil,
    make_pencil_implicit,
    osculating_kplane,
    ramification_sequence,
)
from .monodromy import build_loops, classify_line, compute_branch_points, monodromy, track_fiber
from .permgroup import Perm, PermutationGroup, format_cycles, parse_cycles
from .polynomial import ComplexPoly, RatPoly

__version__ = "0.1.0"

__all__ = [
    "branch_multiplicity",
    "build_loops",
    "classify_line",
    "ComplexPoly",
    "compute_branch_points",
    "fiber_multiplicities",
    "FiberFamily",
    "format_cycles",
    "make_pencil",
    "make_pencil_implicit",
    "monodromy",
    "osculating_kplane",
    "parse_cycles",
    "PencilFamily",
    "Perm",
    "PermutationGroup",
    "PlaneCurveImplicit",
    "ProjectionCenter",
    "ramification_sequence",
    "RationalCurveMap",
    "RatPoly",
    "track_fiber",
]
