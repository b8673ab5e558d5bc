"""Combinatorial Lefschetz pencils: parsing, validation, homological monodromy.

A pencil is recorded by its fiber genus h, its number of base points b and the
ordered list of vanishing cycles as homology classes on the compact fiber
F_{h,b}, in the basis of :func:`~pencil_trisection.homology.fiber_basis`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .homology import (
    FiberBasis,
    HomologyClass,
    IntMatrix,
    cokernel_divisors,
    fiber_basis,
    fiber_intersection_form,
    is_primitive_or_zero,
    transvection_matrix,
)
from .results import CheckResult


class PencilError(ValueError):
    """Malformed or structurally invalid pencil input."""


@dataclass(frozen=True)
class VanishingCycle:
    cls: HomologyClass
    chirality: int = 1
    label: str | None = None

    def __post_init__(self):
        if self.chirality not in (1, -1):
            raise PencilError("chirality must be ±1")
        if not is_primitive_or_zero(self.cls):
            raise PencilError(f"vanishing cycle class {list(self.cls)} is not primitive")


@dataclass(frozen=True)
class PencilData:
    h: int
    b: int
    cycles: tuple[VanishingCycle, ...] = ()
    name: str | None = None

    def __post_init__(self):
        if self.h < 0:
            raise PencilError("fiber genus h must be non-negative")
        if self.b < 1:
            raise PencilError("base locus must be nonempty (b >= 1)")
        n = 2 * self.h + self.b - 1
        for i, c in enumerate(self.cycles):
            if len(c.cls) != n:
                raise PencilError(
                    f"cycle {i}: class length {len(c.cls)} != 2h+b-1 = {n}"
                )

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.cycles)

    @property
    def basis(self) -> FiberBasis:
        return fiber_basis(self.h, self.b)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        if self.name is not None:
            out["name"] = self.name
        out["h"] = self.h
        out["b"] = self.b
        cycles = []
        for c in self.cycles:
            entry: dict[str, Any] = {"class": list(c.cls), "sign": c.chirality}
            if c.label is not None:
                entry["label"] = c.label
            cycles.append(entry)
        out["cycles"] = cycles
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


@dataclass(frozen=True)
class PencilInvariants:
    euler: int
    h1_free_rank: int
    h1_torsion: tuple[int, ...]


_PENCIL_KEYS = {"name", "h", "b", "cycles"}
_CYCLE_KEYS = {"class", "sign", "label"}


def _uint(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise PencilError(f"{what} must be a non-negative integer")
    return value


def pencil_from_dict(obj: Any) -> PencilData:
    if not isinstance(obj, dict):
        raise PencilError("pencil must be a JSON object")
    unknown = set(obj) - _PENCIL_KEYS
    if unknown:
        raise PencilError(f"unknown keys: {sorted(unknown)}")
    for key in ("h", "b", "cycles"):
        if key not in obj:
            raise PencilError(f"missing key {key!r}")
    h = _uint(obj["h"], "h")
    b = _uint(obj["b"], "b")
    if b < 1:
        raise PencilError("base locus must be nonempty (b >= 1)")
    name = obj.get("name")
    if name is not None and not isinstance(name, str):
        raise PencilError("name must be a string")
    raw = obj["cycles"]
    if not isinstance(raw, list):
        raise PencilError("cycles must be a list")
    n = 2 * h + b - 1
    cycles = []
    for i, c in enumerate(raw):
        if not isinstance(c, dict):
            raise PencilError(f"cycle {i} must be an object")
        unknown = set(c) - _CYCLE_KEYS
        if unknown:
            raise PencilError(f"cycle {i}: unknown keys {sorted(unknown)}")
        if "class" not in c:
            raise PencilError(f"cycle {i}: missing key 'class'")
        cls = c["class"]
        if not isinstance(cls, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in cls):
            raise PencilError(f"cycle {i}: class must be a list of integers")
        if len(cls) != n:
            raise PencilError(f"cycle {i}: class length {len(cls)} != 2h+b-1 = {n}")
        sign = c.get("sign", 1)
        if isinstance(sign, bool) or sign not in (1, -1):
            raise PencilError(f"cycle {i}: chirality must be ±1")
        label = c.get("label")
        if label is not None and not isinstance(label, str):
            raise PencilError(f"cycle {i}: label must be a string")
        cycles.append(VanishingCycle(tuple(cls), sign, label))
    return PencilData(h, b, tuple(cycles), name)


def parse_pencil(text: bytes | str) -> PencilData:
    try:
        if isinstance(text, bytes):
            text = text.decode("utf-8")
        obj = json.loads(text)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise PencilError(f"malformed JSON: {exc}") from exc
    return pencil_from_dict(obj)


def homological_monodromy(p: PencilData) -> IntMatrix:
    """Product T_{c_l} ... T_{c_1} of transvections; cycle 1 acts first."""
    form = fiber_intersection_form(p.basis)
    m = IntMatrix.identity(form.rows)
    for c in p.cycles:
        m = transvection_matrix(form, c.cls, c.chirality) @ m
    return m


def check_monodromy(p: PencilData) -> CheckResult:
    """Homological shadow of the pencil relation: the monodromy must act as the
    identity on H1 of the compact fiber.  Necessary, not sufficient."""
    m = homological_monodromy(p)
    if m.is_identity():
        return CheckResult("monodromy", True, {"rank": m.rows, "monodromy": "identity"})
    eye = IntMatrix.identity(m.rows)
    deviation = [[m[i, j] - eye[i, j] for j in range(m.cols)] for i in range(m.rows)]
    return CheckResult("monodromy", False, {"rank": m.rows, "deviation": deviation})


def expected_invariants(p: PencilData) -> PencilInvariants:
    """Euler characteristic and H1 of the total space from the pencil alone."""
    euler = 2 * (2 - 2 * p.h) + p.l - p.b
    # capping the boundary kills the delta coordinates
    projected = [c.cls[: 2 * p.h] for c in p.cycles]
    free, torsion = cokernel_divisors(2 * p.h, projected)
    return PencilInvariants(euler, free, tuple(torsion))
