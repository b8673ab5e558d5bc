"""Homological verification of trisection diagrams.

All checks are necessary conditions only.  A cut system must span a primitive
isotropic rank-g summand; each pair of families must present a 3-manifold
with H1 = Z^k; H1 and the Euler characteristic of the closed 4-manifold must
agree with the values computed from the pencil.
"""
from __future__ import annotations

from typing import Sequence

from .builder import CentralSurface, DiagramCurve, TrisectionDiagram, build_central_surface, trisection_parameters
from .homology import IntMatrix, cokernel_divisors, elementary_divisors, pairing
from .pencil import PencilData, expected_invariants
from .results import CheckResult, InvariantReport


class BasisMismatch(ValueError):
    """Diagram and pencil (or surface) do not share a basis."""


def _check_lengths(surface: CentralSurface, curves: Sequence[DiagramCurve]) -> None:
    for c in curves:
        if len(c.cls) != surface.rank:
            raise BasisMismatch(
                f"curve {c.support} has length {len(c.cls)}, surface rank is {surface.rank}"
            )


def check_cut_system(surface: CentralSurface, family: Sequence[DiagramCurve], name: str = "cut_system") -> CheckResult:
    _check_lengths(surface, family)
    g = surface.genus
    details: dict = {"size": len(family), "genus": g}
    if len(family) != g:
        details["reason"] = f"family has {len(family)} curves, expected {g}"
        return CheckResult(name, False, details)
    clashes = [
        [i, j, pairing(surface.form, family[i].cls, family[j].cls)]
        for i in range(len(family))
        for j in range(i + 1, len(family))
        if pairing(surface.form, family[i].cls, family[j].cls)
    ]
    if clashes:
        details["reason"] = "curves intersect algebraically"
        details["nonzero_pairings"] = clashes
        return CheckResult(name, False, details)
    if g == 0:
        details["divisors"] = []
        return CheckResult(name, True, details)
    m = IntMatrix.from_rows([c.cls for c in family], surface.rank)
    divisors = elementary_divisors(m)
    details["rank"] = len(divisors)
    details["divisors"] = divisors
    if len(divisors) < g:
        details["reason"] = f"classes span rank {len(divisors)} < {g}"
        return CheckResult(name, False, details)
    if any(d != 1 for d in divisors):
        details["reason"] = "span is not a primitive summand"
        return CheckResult(name, False, details)
    return CheckResult(name, True, details)


def check_pairwise_heegaard(
    surface: CentralSurface,
    fam_a: Sequence[DiagramCurve],
    fam_b: Sequence[DiagramCurve],
    k: int,
    name: str = "pairwise",
) -> CheckResult:
    """H1 of the Heegaard union must be free of rank k (boundary of k copies of S1 x B3)."""
    _check_lengths(surface, list(fam_a) + list(fam_b))
    free, torsion = cokernel_divisors(surface.rank, [c.cls for c in fam_a] + [c.cls for c in fam_b])
    details = {"free_rank": free, "torsion": torsion, "expected_free_rank": k}
    passed = free == k and not torsion
    if not passed:
        details["reason"] = "torsion in quotient" if torsion else f"free rank {free} != {k}"
    return CheckResult(name, passed, details)


def diagram_h1(surface: CentralSurface, diagram: TrisectionDiagram) -> tuple[int, list[int]]:
    curves = [c for fam in diagram.families for c in fam]
    _check_lengths(surface, curves)
    return cokernel_divisors(surface.rank, [c.cls for c in curves])


def verify_diagram(p: PencilData, d: TrisectionDiagram, fail_fast: bool = False) -> InvariantReport:
    """Run every check; a basis mismatch raises instead of failing a check.

    With ``fail_fast`` the report stops at the first failing check (used by the
    convention search, where most candidates die on a cheap check).
    """
    surface = build_central_surface(p)
    if d.surface.labels != surface.labels or d.surface.form != surface.form:
        raise BasisMismatch("diagram basis does not match the pencil's central surface")
    # k comes from the pencil, never from the diagram
    params = trisection_parameters(p.h, p.b, p.l)
    euler_diagram = 2 + params.g - 3 * params.k
    inv = expected_invariants(p)
    euler_pencil = inv.euler
    h1_pencil = (inv.h1_free_rank, tuple(inv.h1_torsion))
    checks = []

    def report() -> InvariantReport:
        return InvariantReport(
            params.g, params.k, euler_diagram, euler_pencil, (-1, ()), h1_pencil,
            tuple(sorted(checks, key=lambda c: c.name)),
        )

    for f in range(3):
        checks.append(check_cut_system(surface, d.families[f], f"cut_system_{f + 1}"))
        if fail_fast and not checks[-1].passed:
            return report()
    for f1, f2 in ((0, 1), (1, 2), (2, 0)):
        checks.append(
            check_pairwise_heegaard(
                surface, d.families[f1], d.families[f2], params.k, f"pairwise_{f1 + 1}{f2 + 1}"
            )
        )
        if fail_fast and not checks[-1].passed:
            return report()
    checks.append(
        CheckResult(
            "euler",
            euler_diagram == euler_pencil,
            {"diagram": euler_diagram, "pencil": euler_pencil},
        )
    )
    free, torsion = diagram_h1(surface, d)
    h1_diagram = (free, tuple(torsion))
    checks.append(
        CheckResult(
            "h1",
            h1_diagram == h1_pencil,
            {
                "diagram": {"free_rank": free, "torsion": list(torsion)},
                "pencil": {"free_rank": inv.h1_free_rank, "torsion": list(inv.h1_torsion)},
            },
        )
    )
    checks.sort(key=lambda c: c.name)
    return InvariantReport(
        params.g, params.k, euler_diagram, euler_pencil, h1_diagram, h1_pencil, tuple(checks)
    )
