"""Schematic SVG of a diagram on the standard 4g-gon.

The polygon carries the word u1 v1 u1^-1 v1^-1 ... for the symplectic pairs of
the basis.  A curve is drawn as chords: for each nonzero coordinate on a basis
element, |coefficient| chords join the two edges of its symplectic partner.
This realises the homology class only; no isotopy information is implied.
"""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .builder import TrisectionDiagram

COLORS = {1: "red", 2: "blue", 3: "green"}
SIZE = 800
RADIUS = 330


def _pt(x: float, y: float) -> str:
    return f"{x:.2f} {y:.2f}"


def render_svg(d: TrisectionDiagram) -> bytes:
    labels = d.surface.labels
    n_edges = 2 * len(labels)  # 4g
    cx = cy = SIZE / 2
    verts = [
        (cx + RADIUS * math.cos(2 * math.pi * t / n_edges - math.pi / 2),
         cy + RADIUS * math.sin(2 * math.pi * t / n_edges - math.pi / 2))
        for t in range(n_edges)
    ]

    def edge_point(e: int, t: float) -> tuple[float, float]:
        (x0, y0), (x1, y1) = verts[e], verts[(e + 1) % n_edges]
        return x0 + t * (x1 - x0), y0 + t * (y1 - y0)

    # basis element idx -> its two edges (the word is u v u^-1 v^-1 per pair)
    edges = {}
    for pair in range(len(labels) // 2):
        u, v = 2 * pair, 2 * pair + 1
        edges[u] = (4 * pair, 4 * pair + 2)
        edges[v] = (4 * pair + 1, 4 * pair + 3)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<title>trisection diagram, genus {d.g}</title>',
        '<polygon class="surface" fill="none" stroke="black" stroke-width="1.5" points="'
        + " ".join(f"{x:.2f},{y:.2f}" for x, y in verts) + '"/>',
    ]
    for pair in range(len(labels) // 2):
        for k, idx in enumerate((2 * pair, 2 * pair + 1, 2 * pair, 2 * pair + 1)):
            x, y = edge_point(4 * pair + k, 0.5)
            x, y = cx + 1.07 * (x - cx), cy + 1.07 * (y - cy)
            name = escape(labels[idx]) + ("" if k < 2 else "⁻¹")
            out.append(
                f'<text class="edge-label" x="{x:.2f}" y="{y:.2f}" font-size="11" '
                f'text-anchor="middle">{name}</text>'
            )

    total = sum(len(f) for f in d.families)
    slot = 0
    for f, fam in enumerate(d.families, start=1):
        for curve in fam:
            slot += 1
            segs = []
            for idx, coeff in enumerate(curve.cls):
                if not coeff:
                    continue
                partner = idx + 1 if idx % 2 == 0 else idx - 1
                e0, e1 = edges[partner]
                for r in range(abs(coeff)):
                    # spread chords along the edges so they stay distinguishable
                    t = (slot + 0.5 + r / (abs(coeff) + 1)) / (total + 1)
                    a = edge_point(e0, t)
                    b = edge_point(e1, 1 - t)
                    if coeff < 0:
                        a, b = b, a
                    segs.append(f"M {_pt(*a)} L {_pt(*b)}")
            out.append(
                f'<path class="curve family-{f}" data-support="{escape(curve.support)}" '
                f'fill="none" stroke="{COLORS[f]}" stroke-width="1.2" d="{" ".join(segs)}"/>'
            )
    out.append(
        f'<text class="watermark" x="{SIZE / 2:.2f}" y="{SIZE - 12}" font-size="14" '
        'text-anchor="middle" fill="gray">homology-schematic</text>'
    )
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
