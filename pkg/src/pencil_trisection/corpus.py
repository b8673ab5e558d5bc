"""Built-in example pencils, addressable as ``corpus:NAME``.

Each entry stores its expected invariants; they are recomputed and compared
whenever an entry is loaded.
"""
from __future__ import annotations

from dataclasses import dataclass

from .builder import TrisectionParameters, trisection_parameters
from .pencil import PencilData, PencilInvariants, VanishingCycle, expected_invariants


class CorpusError(RuntimeError):
    """A stored expectation disagrees with recomputation."""


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    pencil: PencilData
    invariants: PencilInvariants
    params: TrisectionParameters
    note: str
    monodromy_ok: bool = True


def _cycles(*specs) -> tuple[VanishingCycle, ...]:
    return tuple(VanishingCycle(tuple(c), s, lab) for c, s, lab in specs)


_A, _B = (1, 0), (0, 1)

_ENTRIES = [
    CorpusEntry(
        "cp2_lines",
        PencilData(0, 1, (), "cp2_lines"),
        PencilInvariants(3, 0, ()),
        TrisectionParameters(1, 0),
        "Pencil of lines in CP^2: one base point, sphere fibers, no singular fibers. "
        "Yields the standard genus-1 trisection of CP^2.",
    ),
    CorpusEntry(
        "cp2_conics",
        PencilData(
            0, 4,
            _cycles(((1, 1, 0), 1, "d1+d2"), ((0, 1, 1), 1, "d2+d3"), ((1, 0, 1), 1, "d1+d3")),
            "cp2_conics",
        ),
        PencilInvariants(3, 0, ()),
        TrisectionParameters(10, 3),
        "Pencil of conics through four points of CP^2; the monodromy is the lantern "
        "relation on the four-holed sphere.",
    ),
    CorpusEntry(
        "genus1_pencil",
        PencilData(1, 1, _cycles(*[(_A, 1, "a"), (_B, 1, "b")] * 6), "genus1_pencil"),
        PencilInvariants(11, 0, ()),
        TrisectionParameters(15, 2),
        "Genus-1 pencil with one base point on CP^2 # 8 (-CP^2); monodromy is the "
        "one-holed torus relation (t_a t_b)^6 = t_boundary.",
    ),
    CorpusEntry(
        "genus1_truncated",
        PencilData(1, 1, _cycles(*([(_A, 1, "a"), (_B, 1, "b")] * 6)[:11]), "genus1_truncated"),
        PencilInvariants(10, 0, ()),
        TrisectionParameters(14, 2),
        "genus1_pencil with the last twist removed. Not a pencil: the monodromy "
        "check must fail.",
        monodromy_ok=False,
    ),
    CorpusEntry(
        "cp2_lines_achiral",
        PencilData(1, 1, _cycles((_A, 1, "a+"), (_A, -1, "a-")), "cp2_lines_achiral"),
        PencilInvariants(1, 1, ()),
        TrisectionParameters(5, 2),
        "Achiral test case: a Lefschetz and an achiral twist about the same curve "
        "cancel in the monodromy.",
    ),
]


def _validate(entry: CorpusEntry) -> CorpusEntry:
    p = entry.pencil
    inv = expected_invariants(p)
    params = trisection_parameters(p.h, p.b, p.l)
    if inv != entry.invariants or params != entry.params:
        raise CorpusError(
            f"corpus entry {entry.name}: stored expectations {entry.invariants}, {entry.params} "
            f"disagree with recomputed {inv}, {params}"
        )
    return entry


def names() -> list[str]:
    return [e.name for e in _ENTRIES]


def get(name: str) -> CorpusEntry:
    for e in _ENTRIES:
        if e.name == name:
            return _validate(e)
    raise KeyError(name)


def entries() -> list[CorpusEntry]:
    return [_validate(e) for e in _ENTRIES]
