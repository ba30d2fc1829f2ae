from django.core.management.base import BaseCommand, CommandError

from vortex.choices import GenerateKind
from vortex.cli import AnalysisRequest
from vortex.complex_io import write_document
from vortex.exceptions import VortexError
from vortex.generators import generate


class Command(BaseCommand):
    help = "Generate a seeded random planar complex, nested-cycle vortex nerve or disk family."

    def add_arguments(self, parser):
        parser.add_argument("--kind", required=True, choices=GenerateKind.values, help="What to generate")
        parser.add_argument("--size", type=int, required=True, help="Vertices, cycles or disks, depending on --kind")
        parser.add_argument("--seed", type=int, default=None, help="RNG seed (default: VORTEX_NERVE_SEED)")
        parser.add_argument("-o", "--output", default=None, help="Destination file")
        parser.add_argument("--holes", type=int, default=0, help="nested-cycles: holes inside the innermost cycle")
        parser.add_argument("--attached", type=int, default=0, help="nested-cycles: edges attached between cycles")

    def handle(self, *args, **options):
        request = AnalysisRequest(command="gen", seed=options["seed"], output=options["output"]).validate()
        kind = options["kind"]
        if kind != GenerateKind.NESTED_CYCLES and (options["holes"] or options["attached"]):
            raise CommandError("--holes and --attached only apply to nested-cycles")

        try:
            doc = generate(
                kind,
                options["size"],
                request.effective_seed,
                holes=options["holes"],
                attached=options["attached"],
            )
        except VortexError as exc:
            raise CommandError(str(exc))

        path = write_document(doc, request.output)
        self.stdout.write(self.style.SUCCESS(f"{kind} (size={options['size']}, seed={request.effective_seed}) -> {path}"))
