from django.core.management.base import BaseCommand, CommandError

from vortex.betti import betti_numbers, homology_betti
from vortex.cell_complex import boundary, interior
from vortex.choices import BettiView
from vortex.cli import AnalysisRequest, emit, load_complex_input
from vortex.cycles import complex_cycles
from vortex.exceptions import VortexError
from vortex.nerves import is_vortex_nerve


class Command(BaseCommand):
    help = "Summarise a .cx complex: cells, cycles, holes, boundary, Betti views and vortex-nerve certificate."

    def add_arguments(self, parser):
        parser.add_argument("path", help="Path to a .cx file (bundled figures may be named directly)")
        parser.add_argument("-o", "--output", default=None, help="Write the report to this file instead of stdout")

    def handle(self, *args, **options):
        request = AnalysisRequest(command="analyze", inputs=(options["path"],), output=options["output"]).validate()
        cx = load_complex_input(request.inputs[0])

        try:
            non_hole, holes = complex_cycles(cx)
            bdy = boundary(cx)
            inner = interior(cx)
            h0, h1 = homology_betti(cx)
        except VortexError as exc:
            raise CommandError(str(exc))

        views = {}
        for view in BettiView.values:
            try:
                views[view] = betti_numbers(cx, view).as_dict()
            except VortexError as exc:
                views[view] = {"error": str(exc)}

        payload = {
            "input": str(request.inputs[0]),
            "cells": {
                "vertices": len(cx.vertex_ids),
                "edges": len(cx.edges),
                "triangles": len(cx.triangles),
            },
            "cycles": [{"name": c.name, "boundary": list(c.boundary)} for c in non_hole],
            "holes": [{"name": c.name, "boundary": list(c.boundary)} for c in holes],
            "attached_edges": [[e.a, e.b] for e in sorted(cx.attached_edges)],
            "boundary": bdy.label(),
            "interior": inner.label(),
            "betti": views,
            "vortex_nerve": is_vortex_nerve(cx).as_dict(),
            "homology": {"h0": h0, "h1": h1},
        }
        emit(self, payload, request.output)
