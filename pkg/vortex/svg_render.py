# vortex/svg_render.py
from __future__ import annotations

import logging
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple

from django.template.loader import render_to_string

from .cell_complex import CellComplex, Edge, closure
from .cycles import FilledCycle

logger = logging.getLogger(__name__)

TEMPLATE_NAME = "vortex/complex.svg"
DEFAULT_SCALE = 100.0
MARGIN = 20.0


def render_svg(
    E: CellComplex,
    annotations: Optional[Tuple[Sequence[FilledCycle], Iterable[Edge]]] = None,
    *,
    scale: float = DEFAULT_SCALE,
) -> str:
    """
    SVG drawing of E. Hole cycles are shaded, the other cycles stroked and
    attached edges drawn in red. `annotations` is (cycles, attached edges);
    None draws the complex's own annotations, ((), ()) a bare drawing.
    Output is byte-stable for a given complex.
    """
    E = closure(E)
    if annotations is None:
        cycles, attached = E.declared_cycles, E.attached_edges
    else:
        cycles, attached = annotations
    vertices = E.vertices
    if vertices:
        xs = [v.x for v in vertices]
        ys = [v.y for v in vertices]
        minx, maxx, miny, maxy = min(xs), max(xs), min(ys), max(ys)
    else:
        minx = maxx = miny = maxy = 0.0

    def at(vid: int) -> Tuple[float, float]:
        x, y = E.point(vid)
        return (x - minx) * scale + MARGIN, (maxy - y) * scale + MARGIN

    def segment(e: Edge) -> Tuple[float, float, float, float]:
        return at(e.a) + at(e.b)

    def outline(c: FilledCycle) -> Dict[str, Any]:
        kind = "polygon" if len(c.boundary) >= 3 else ("segment" if len(c.boundary) == 2 else "point")
        return {"kind": kind, "name": c.name, "points": [at(v) for v in c.boundary]}

    context = {
        "width": (maxx - minx) * scale + 2 * MARGIN,
        "height": (maxy - miny) * scale + 2 * MARGIN,
        "vertices": [{"id": v.id, "x": at(v.id)[0], "y": at(v.id)[1]} for v in vertices],
        "edges": [segment(e) for e in sorted(E.edges)],
        "triangles": [[at(v) for v in t] for t in sorted(E.triangles)],
        "holes": [outline(c) for c in cycles if c.hole],
        "cycles": [outline(c) for c in cycles if not c.hole],
        "attached": [segment(e) for e in sorted(attached)],
    }
    svg = render_to_string(TEMPLATE_NAME, context)
    logger.debug("rendered %s: %d cycles, %d holes", E.label() if len(E) < 12 else "complex", len(context["cycles"]), len(context["holes"]))
    return svg
