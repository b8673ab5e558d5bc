"""Trisection diagrams from Lefschetz pencils, at the level of homology classes.

The central surface is assembled from

* the south fiber F_{h,b} (closed part s1..s_{2h}),
* the north fiber F_{h+l,b}: its closed part n1..n_{2h} plus one torus summand
  (mu_i, lambda_i) per vanishing cycle,
* one genus-1 connector (x_j, y_j) per base point, and
* b-1 boundary pairs (d_j, e_j): d_j is the j-th boundary circle, e_j the
  double of an arc from boundary j to boundary b running through connectors
  j and b.

The north fiber appears with reversed orientation, so a fiber class c sits on
the north side as nu(c): a-coordinates keep their sign, b-coordinates flip.

Each family has g curves.  Family 3 is the handlebody containing the
vanishing cycles; its arc doubles pick up meridian corrections where the
arcs cross the solid tori, and its torus curves pick up meridian corrections
where the shadow of a cycle crosses lower cycles.  All corrections are forced
by disjointness.  The remaining sign and role freedom is fixed by
:func:`resolve_conventions`, which returns the first assignment (in a fixed
enumeration order) accepted by the homology verifier.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field, replace
from typing import Any, Iterator, Sequence

from .homology import (
    HomologyClass,
    IntMatrix,
    pairing,
    symplectic_form,
)
from .pencil import PencilData, PencilError, check_monodromy

ROLES = ("x", "y", "x+y")
BOUNDARY_CHOICES = ("e", "d", "d+e")


@dataclass(frozen=True)
class TrisectionParameters:
    g: int
    k: int


def trisection_parameters(h: int, b: int, l: int) -> TrisectionParameters:  # noqa: E741
    if b < 1:
        raise ValueError("base locus must be nonempty")
    if h < 0 or l < 0:
        raise ValueError("h and l must be non-negative")
    return TrisectionParameters(2 * h + 2 * b + l - 1, 2 * h + b - 1)


# -- central surface --------------------------------------------------------

@dataclass(frozen=True)
class CentralSurface:
    h: int
    b: int
    l: int  # noqa: E741
    labels: tuple[str, ...]
    form: IntMatrix

    @property
    def genus(self) -> int:
        return len(self.labels) // 2

    @property
    def rank(self) -> int:
        return len(self.labels)

    def blocks(self) -> dict[str, list[tuple[str, str]]]:
        pairs = list(zip(self.labels[::2], self.labels[1::2]))
        out: dict[str, list[tuple[str, str]]] = {
            "south": [], "north": [], "torus": [], "connector": [], "boundary": []
        }
        for a, b in pairs:
            key = {"s": "south", "n": "north", "mu": "torus", "x": "connector", "d": "boundary"}[
                a.rstrip("0123456789")
            ]
            out[key].append((a, b))
        return out

    # coordinates of named basis elements; indices are 0-based
    def s(self, m: int) -> int:
        return m

    def n(self, m: int) -> int:
        return 2 * self.h + m

    def mu(self, i: int) -> int:
        return 4 * self.h + 2 * i

    def lam(self, i: int) -> int:
        return 4 * self.h + 2 * i + 1

    def x(self, j: int) -> int:
        return 4 * self.h + 2 * self.l + 2 * j

    def y(self, j: int) -> int:
        return self.x(j) + 1

    def d(self, j: int) -> int:
        return 4 * self.h + 2 * self.l + 2 * self.b + 2 * j

    def e(self, j: int) -> int:
        return self.d(j) + 1

    def zero(self) -> list[int]:
        return [0] * self.rank

    def boundary_circle(self, j: int) -> list[int]:
        """Class of the j-th boundary circle; the last one is minus the sum."""
        v = self.zero()
        if j < self.b - 1:
            v[self.d(j)] = 1
        else:
            for i in range(self.b - 1):
                v[self.d(i)] = -1
        return v

    def north(self, c: Sequence[int]) -> list[int]:
        """nu(c): a fiber class written on the (reversed) north fiber."""
        v = self.zero()
        for m in range(2 * self.h):
            v[self.n(m)] = c[m] if m % 2 == 0 else -c[m]
        for j in range(self.b - 1):
            v[self.d(j)] = c[2 * self.h + j]
        return v


def surface_labels(h: int, b: int, l: int) -> tuple[str, ...]:  # noqa: E741
    labels = [f"s{m}" for m in range(1, 2 * h + 1)]
    labels += [f"n{m}" for m in range(1, 2 * h + 1)]
    for i in range(1, l + 1):
        labels += [f"mu{i}", f"lambda{i}"]
    for j in range(1, b + 1):
        labels += [f"x{j}", f"y{j}"]
    for j in range(1, b):
        labels += [f"d{j}", f"e{j}"]
    return tuple(labels)


def make_surface(h: int, b: int, l: int) -> CentralSurface:  # noqa: E741
    labels = surface_labels(h, b, l)
    return CentralSurface(h, b, l, labels, symplectic_form(len(labels) // 2))


def build_central_surface(p: PencilData) -> CentralSurface:
    return make_surface(p.h, p.b, p.l)


def surface_from_labels(labels: Sequence[str]) -> CentralSurface:
    """Recover the block structure from a serialized basis."""
    labels = tuple(labels)
    count = lambda prefix: sum(1 for s in labels if s.rstrip("0123456789") == prefix)  # noqa: E731
    h2, l, b = count("s"), count("mu"), count("x")
    if h2 % 2 or b < 1:
        raise ValueError("basis labels do not describe a central surface")
    surf = make_surface(h2 // 2, b, l)
    if surf.labels != labels:
        raise ValueError("basis labels do not describe a central surface")
    return surf


# -- diagrams ---------------------------------------------------------------

@dataclass(frozen=True)
class DiagramCurve:
    """A curve known only by its homology class and structural origin.

    Primitivity is not enforced here; it is what the cut-system check certifies.
    """

    family: int
    cls: HomologyClass
    support: str


@dataclass(frozen=True)
class TrisectionDiagram:
    surface: CentralSurface
    families: tuple[tuple[DiagramCurve, ...], tuple[DiagramCurve, ...], tuple[DiagramCurve, ...]]
    provenance: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def g(self) -> int:
        return self.surface.genus

    def classes(self, f: int) -> list[HomologyClass]:
        return [c.cls for c in self.families[f]]

    def to_dict(self) -> dict[str, Any]:
        s = self.surface
        return {
            "g": s.genus,
            "k": trisection_parameters(s.h, s.b, s.l).k,
            "basis": list(s.labels),
            "families": [
                [{"class": list(c.cls), "support": c.support} for c in fam] for fam in self.families
            ],
            "provenance": self.provenance,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def diagram_from_dict(obj: Any) -> TrisectionDiagram:
    if not isinstance(obj, dict):
        raise ValueError("diagram must be a JSON object")
    unknown = set(obj) - {"g", "k", "basis", "families", "provenance"}
    if unknown:
        raise ValueError(f"unknown keys: {sorted(unknown)}")
    try:
        surf = surface_from_labels(obj["basis"])
        if obj["g"] != surf.genus:
            raise ValueError(f"g={obj['g']} does not match basis genus {surf.genus}")
        if obj["k"] != trisection_parameters(surf.h, surf.b, surf.l).k:
            raise ValueError("k does not match the basis")
        fams = obj["families"]
        if not isinstance(fams, list) or len(fams) != 3:
            raise ValueError("families must be a list of three lists")
        families = []
        for f, fam in enumerate(fams, start=1):
            curves = []
            for c in fam:
                cls = c["class"]
                if len(cls) != surf.rank or any(isinstance(v, bool) or not isinstance(v, int) for v in cls):
                    raise ValueError(f"family {f}: class length must be {surf.rank} integers")
                curves.append(DiagramCurve(f, tuple(cls), str(c["support"])))
            families.append(tuple(curves))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed diagram: {exc}") from exc
    return TrisectionDiagram(surf, tuple(families), dict(obj.get("provenance", {})))


def parse_diagram(text: bytes | str) -> TrisectionDiagram:
    try:
        if isinstance(text, bytes):
            text = text.decode("utf-8")
        obj = json.loads(text)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ValueError(f"malformed JSON: {exc}") from exc
    return diagram_from_dict(obj)


# -- conventions ------------------------------------------------------------

@dataclass(frozen=True)
class Conventions:
    """One point of the convention search space.

    roles: connector curve role of families 1, 2, 3 (a permutation of ROLES);
    boundary: boundary-pair curve choice per family;
    eps_connector: sign in the connector curve x + eps*y;
    eps_oneone: sign in mu_i + eps*chirality_i*lambda_i (family 2);
    eps_lambda: sign in lambda_i + eps*nu(c_i) (family 3);
    twist: sign of the boundary circle carried by the diagonal connector curve.
    """

    roles: tuple[str, str, str] = ("x", "y", "x+y")
    boundary: tuple[str, str, str] = ("e", "e", "e")
    eps_connector: int = 1
    eps_oneone: int = 1
    eps_lambda: int = 1
    twist: int = 1
    connector_roles: tuple[tuple[int, tuple[str, str, str]], ...] = ()

    def roles_for(self, j: int) -> tuple[str, str, str]:
        return dict(self.connector_roles).get(j, self.roles)

    def to_dict(self) -> dict[str, Any]:
        out = {
            "roles": list(self.roles),
            "boundary": list(self.boundary),
            "eps_connector": self.eps_connector,
            "eps_oneone": self.eps_oneone,
            "eps_lambda": self.eps_lambda,
            "twist": self.twist,
        }
        if self.connector_roles:
            out["connector_roles"] = {str(j + 1): list(r) for j, r in self.connector_roles}
        return out


@dataclass(frozen=True)
class ConventionSpace:
    """Finite search space.  Enumeration is lexicographic in the field order
    below, each field in the order its values are listed."""

    roles: tuple[tuple[str, str, str], ...] = tuple(itertools.permutations(ROLES))
    boundary: tuple[str, ...] = BOUNDARY_CHOICES
    eps_connector: tuple[int, ...] = (1, -1)
    eps_oneone: tuple[int, ...] = (1, -1)
    eps_lambda: tuple[int, ...] = (1, -1)
    twist: tuple[int, ...] = (1, -1)
    # per-connector role overrides, 0-based connector index
    connector_roles: tuple[tuple[int, tuple[str, str, str]], ...] = ()

    def enumerate(self, surf: CentralSurface) -> Iterator[Conventions]:
        # choices that cannot affect the diagram collapse to their first value
        boundary = self.boundary if surf.b > 1 else self.boundary[:1]
        eps_oo = self.eps_oneone if surf.l else self.eps_oneone[:1]
        eps_lam = self.eps_lambda if surf.l else self.eps_lambda[:1]
        twist = self.twist if surf.b > 1 else self.twist[:1]
        for roles, b1, b2, b3, ec, eo, el, tw in itertools.product(
            self.roles, boundary, boundary, boundary, self.eps_connector, eps_oo, eps_lam, twist
        ):
            yield Conventions(roles, (b1, b2, b3), ec, eo, el, tw, self.connector_roles)


class ConventionError(RuntimeError):
    """No assignment in the search space yields a verified diagram."""

    def __init__(self, message: str, scorecard: dict[str, Any] | None = None):
        super().__init__(message)
        self.scorecard = scorecard or {}


# -- curve construction -----------------------------------------------------

def _role_vector(surf: CentralSurface, role: str, j: int, conv: Conventions) -> list[int]:
    v = surf.zero()
    if "x" in role:
        v[surf.x(j)] = 1
    if "y" in role:
        v[surf.y(j)] = conv.eps_connector if role == "x+y" else 1
    if role == "x+y":
        # the diagonal curve separates the two boundary circles of the connector
        for idx, coeff in enumerate(surf.boundary_circle(j)):
            v[idx] += conv.twist * coeff
    return v


_ROLE_TAG = {"x": "ConnectorMeridian", "y": "ConnectorLongitude", "x+y": "ConnectorDiagonal"}


def _add(u: list[int], v: Sequence[int], k: int = 1) -> list[int]:
    return [a + k * b for a, b in zip(u, v)]


def _unit(surf: CentralSurface, idx: int) -> list[int]:
    v = surf.zero()
    v[idx] = 1
    return v


def build_with(p: PencilData, conv: Conventions) -> TrisectionDiagram:
    """Instantiate the curve table for one convention assignment (unverified)."""
    surf = build_central_surface(p)
    form = surf.form
    h, b, l = p.h, p.b, p.l  # noqa: E741
    nu = [surf.north(c.cls) for c in p.cycles]

    # arc doubles for the closed part of the fiber
    arc_doubles = []
    for m in range(2 * h):
        fiber_e = [0] * (2 * h + b - 1)
        fiber_e[m] = 1
        arc_doubles.append(_add(_unit(surf, surf.s(m)), surf.north(fiber_e), -1))

    connectors = [
        [_role_vector(surf, conv.roles_for(j)[f], j, conv) for j in range(b)] for f in range(3)
    ]

    def boundary_curve(f: int, j: int) -> list[int]:
        choice = conv.boundary[f]
        v = surf.zero()
        if "d" in choice:
            v[surf.d(j)] = 1
        if "e" in choice:
            v[surf.e(j)] = 1
        # route the arc through connectors j and b so it misses the family's
        # connector curves there
        for end, sign in ((j, 1), (b - 1, -1)):
            kappa = connectors[f][end]
            clash = pairing(form, v, kappa)
            if clash:
                z = surf.x(end) if kappa[surf.x(end)] else surf.y(end)
                zpair = pairing(form, _unit(surf, z), kappa)
                if clash % zpair:
                    raise ConventionError("connector correction is not integral")
                v[z] -= clash // zpair
        return v

    boundary = [[boundary_curve(f, j) for j in range(b - 1)] for f in range(3)]

    # family 3 torus curves: lambda_i + eps*nu(c_i), corrected by meridians of
    # the lower solid tori so the family stays disjoint
    torus3 = []
    for i in range(l):
        v = _add(_unit(surf, surf.lam(i)), nu[i], conv.eps_lambda)
        for j in range(i):
            clash = pairing(form, v, torus3[j])
            # <mu_j, tau_j> = <mu_j, lambda_j> = 1
            v[surf.mu(j)] -= clash
        torus3.append(v)

    def corrected(v: list[int]) -> list[int]:
        w = list(v)
        for i in range(l):
            w[surf.mu(i)] -= pairing(form, w, torus3[i])
        return w

    fam1, fam2, fam3 = [], [], []
    for m, v in enumerate(arc_doubles, start=1):
        fam1.append(DiagramCurve(1, tuple(v), f"ArcDouble({m})"))
        fam2.append(DiagramCurve(2, tuple(v), f"ParallelCopy(ArcDouble({m}))"))
        fam3.append(DiagramCurve(3, tuple(corrected(v)), f"ArcDouble({m})"))
    for j in range(b - 1):
        tag = f"BoundaryPairCurve({j + 1})"
        fam1.append(DiagramCurve(1, tuple(boundary[0][j]), tag))
        fam2.append(DiagramCurve(2, tuple(boundary[1][j]), f"ParallelCopy({tag})"))
        fam3.append(DiagramCurve(3, tuple(corrected(boundary[2][j])), tag))
    for i, c in enumerate(p.cycles):
        fam1.append(DiagramCurve(1, tuple(_unit(surf, surf.mu(i))), f"TorusMeridian({i + 1})"))
        v = _unit(surf, surf.mu(i))
        v[surf.lam(i)] = conv.eps_oneone * c.chirality
        fam2.append(DiagramCurve(2, tuple(v), f"TorusOneOne({i + 1})"))
        fam3.append(DiagramCurve(3, tuple(torus3[i]), f"TorusLambda({i + 1})"))
    for f, fam in enumerate((fam1, fam2, fam3)):
        for j in range(b):
            tag = f"{_ROLE_TAG[conv.roles_for(j)[f]]}({j + 1})"
            fam.append(DiagramCurve(f + 1, tuple(connectors[f][j]), tag))
    return TrisectionDiagram(surf, (tuple(fam1), tuple(fam2), tuple(fam3)), {"conventions": conv.to_dict()})


def resolve_conventions(
    p: PencilData, space: ConventionSpace | None = None
) -> tuple[Conventions, TrisectionDiagram]:
    """First assignment in enumeration order whose diagram passes every check."""
    from .verifier import verify_diagram

    space = space or ConventionSpace()
    surf = build_central_surface(p)
    best: tuple[int, dict[str, Any]] | None = None
    tried = 0
    for index, conv in enumerate(space.enumerate(surf)):
        tried += 1
        try:
            d = build_with(p, conv)
        except (ConventionError, ValueError):
            continue
        report = verify_diagram(p, d, fail_fast=True)
        if report.overall:
            prov = {"conventions": conv.to_dict(), "candidate_index": index}
            return conv, replace(d, provenance=prov)
        score = sum(c.passed for c in report.checks)
        if best is None or score > best[0]:
            best = (score, {
                "conventions": conv.to_dict(),
                "checks": {c.name: c.passed for c in report.checks},
            })
    card = {"candidates_tried": tried}
    if best is not None:
        card["best"] = best[1]
    raise ConventionError("no admissible convention", card)


def build_diagram(p: PencilData, force: bool = False, space: ConventionSpace | None = None) -> TrisectionDiagram:
    if not force:
        mono = check_monodromy(p)
        if not mono.passed:
            raise PencilError("homological monodromy is not the identity; refusing to build")
    return resolve_conventions(p, space)[1]
