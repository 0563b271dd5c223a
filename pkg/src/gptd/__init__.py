"""Perfect distinguishability structures of polytope state spaces, decided by exact LP."""

from .convex_geometry import RPoint, StateSpace, convex_combination, in_simplex, indicator, project, simplex_vertex
from .distinguishability import (
    ErrorReport,
    Measurement,
    find_jpd_measurement,
    is_antipodal,
    is_jpd,
    jpd_family,
    symmetric_error,
)
from .gpt_construction import ConstructionOutput, build, epsilon, ruin_point
from .indep_system import IndependenceSystem, IndexSubset, MissingSingleton, NotDownwardClosed
from .lp_core import LinearProgram, LPResult, Relation, Status, feasible, solve
from .verifier import enumerate_systems, pe_profile, random_system, verify_realization

__all__ = [
    "ConstructionOutput", "ErrorReport", "IndependenceSystem", "IndexSubset", "LPResult",
    "LinearProgram", "Measurement", "MissingSingleton", "NotDownwardClosed", "RPoint",
    "Relation", "StateSpace", "Status", "build", "convex_combination", "enumerate_systems",
    "epsilon", "feasible", "find_jpd_measurement", "in_simplex", "indicator", "is_antipodal",
    "is_jpd", "jpd_family", "pe_profile", "project", "random_system", "ruin_point",
    "simplex_vertex", "solve", "symmetric_error", "verify_realization",
]
