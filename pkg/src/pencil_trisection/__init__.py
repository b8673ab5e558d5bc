"""Trisections of 4-manifolds built from combinatorial Lefschetz-pencil data."""

from .homology import (
    FiberBasis,
    IntMatrix,
    cokernel_divisors,
    fiber_basis,
    fiber_intersection_form,
    smith_normal_form,
    transvection_matrix,
)
from .pencil import (
    PencilData,
    PencilError,
    PencilInvariants,
    VanishingCycle,
    check_monodromy,
    expected_invariants,
    homological_monodromy,
    parse_pencil,
)
from .builder import (
    CentralSurface,
    ConventionError,
    ConventionSpace,
    DiagramCurve,
    TrisectionDiagram,
    TrisectionParameters,
    build_central_surface,
    build_diagram,
    resolve_conventions,
    trisection_parameters,
)
from .verifier import (
    CheckResult,
    InvariantReport,
    check_cut_system,
    check_pairwise_heegaard,
    diagram_h1,
    verify_diagram,
)

__version__ = "0.1.0"
