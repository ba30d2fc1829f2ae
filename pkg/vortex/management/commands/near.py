from django.core.management.base import BaseCommand, CommandError

from vortex.cli import AnalysisRequest, emit, load_complex_input
from vortex.exceptions import VortexError
from vortex.proximity import descriptive_intersection


class Command(BaseCommand):
    help = "Descriptive nearness of two complexes under a named probe."

    def add_arguments(self, parser):
        parser.add_argument("path_a", help="First .cx file")
        parser.add_argument("path_b", help="Second .cx file")
        parser.add_argument("--probe", required=True, help="Probe name (hole-count, cycle-count, cell-count, area, centroid)")
        parser.add_argument("--eps", type=float, default=None, help="Matching tolerance for non-exact probes")

    def handle(self, *args, **options):
        request = AnalysisRequest(
            command="near",
            inputs=(options["path_a"], options["path_b"]),
            probe=options["probe"],
            tolerance=options["eps"],
        ).validate()
        probe = request.resolve_probe()
        a = load_complex_input(request.inputs[0])
        b = load_complex_input(request.inputs[1])

        try:
            described_a = probe.describe(a)
            described_b = probe.describe(b)
            meet = descriptive_intersection([a], [b], probe)
        except VortexError as exc:
            raise CommandError(str(exc))

        emit(self, {
            "probe": probe.name,
            "tolerance": probe.tolerance,
            "descriptions": [
                {"input": str(request.inputs[0]), "description": described_a.as_list(probe.exact)},
                {"input": str(request.inputs[1]), "description": described_b.as_list(probe.exact)},
            ],
            "intersection_size": len(meet),
            "dnear": bool(meet),
        })
