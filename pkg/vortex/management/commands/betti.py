from django.core.management.base import BaseCommand, CommandError

from vortex.betti import betti_numbers
from vortex.choices import BettiView
from vortex.cli import AnalysisRequest, emit, load_complex_input
from vortex.exceptions import VortexError


class Command(BaseCommand):
    help = "Betti numbers of a complex read as a plain complex, a shape, a vortex or a vortex nerve."

    def add_arguments(self, parser):
        parser.add_argument("path", help="Path to a .cx file")
        parser.add_argument(
            "--as",
            dest="view",
            default=BettiView.COMPLEX,
            choices=BettiView.values,
            help="Reading of the complex (default: complex)",
        )

    def handle(self, *args, **options):
        request = AnalysisRequest(command="betti", inputs=(options["path"],)).validate()
        cx = load_complex_input(request.inputs[0])
        try:
            report = betti_numbers(cx, options["view"])
        except VortexError as exc:
            raise CommandError(f"{options['view']} reading failed: {exc}")
        emit(self, {"input": str(request.inputs[0]), "view": options["view"], **report.as_dict()})
