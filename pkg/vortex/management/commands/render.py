from pathlib import Path

from django.core.management.base import BaseCommand

from vortex.cli import AnalysisRequest, load_complex_input
from vortex.svg_render import render_svg


class Command(BaseCommand):
    help = "Draw a complex as SVG: holes shaded, cycles outlined, attached edges in red."

    def add_arguments(self, parser):
        parser.add_argument("path", help="Path to a .cx file")
        parser.add_argument("-o", "--output", default=None, help="Destination .svg file")
        parser.add_argument("--bare", action="store_true", help="Draw the cells only, without cycle annotations")
        parser.add_argument("--scale", type=float, default=100.0, help="Pixels per unit (default: 100)")

    def handle(self, *args, **options):
        request = AnalysisRequest(command="render", inputs=(options["path"],), output=options["output"]).validate()
        cx = load_complex_input(request.inputs[0])
        svg = render_svg(cx, ((), ()) if options["bare"] else None, scale=options["scale"])
        Path(request.output).write_text(svg, encoding="utf-8")
        self.stdout.write(self.style.SUCCESS(f"Wrote {request.output}"))
