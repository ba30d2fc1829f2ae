from django.core.management.base import BaseCommand, CommandError

from vortex.betti import homology_betti
from vortex.cell_complex import CellComplex
from vortex.cli import AnalysisRequest, emit, load_input
from vortex.cycles import find_cycles
from vortex.exceptions import VortexError
from vortex.nerves import eh_nerve, is_vortex_nerve


class Command(BaseCommand):
    help = "Edelsbrunner-Harer nerve of the filled cycles of a complex (or of a disk family)."

    def add_arguments(self, parser):
        parser.add_argument("path", help="Path to a .cx complex or disk-family file")
        parser.add_argument(
            "--vortex",
            action="store_true",
            help="Also decide whether the complex is a vortex nerve and print the certificate.",
        )

    def handle(self, *args, **options):
        request = AnalysisRequest(command="nerve", inputs=(options["path"],)).validate()
        doc = load_input(request.inputs[0])

        if isinstance(doc, CellComplex):
            try:
                members = [c for c in find_cycles(doc) if c.filled]
            except VortexError as exc:
                raise CommandError(str(exc))
            labels = [c.name for c in members]
        else:
            if options["vortex"]:
                raise CommandError("--vortex needs a complex, not a disk family")
            members = doc
            labels = [f"disk{i}" for i in range(len(doc))]

        payload = {"input": str(request.inputs[0]), "members": labels}
        if members:
            try:
                nerve = eh_nerve(members)
            except VortexError as exc:
                raise CommandError(str(exc))
            h0, h1 = homology_betti(nerve.skeleton(2))
            payload.update({
                "simplices": [[labels[i] for i in s] for s in nerve],
                "dimension": nerve.dimension,
                "homology": {"h0": h0, "h1": h1},
            })
        else:
            payload.update({"simplices": [], "dimension": -1})

        if not options["vortex"]:
            emit(self, payload)
            return

        cert = is_vortex_nerve(doc)
        payload["vortex_nerve"] = cert.as_dict()
        if cert.nerve is not None:
            payload["vortex_nerve"].update({
                "cycles": [c.name for c in cert.nerve.cycles],
                "attached_edges": [[e.a, e.b] for e in cert.nerve.attached_edges],
                "holes": [h.name for h in cert.nerve.holes],
            })
        emit(self, payload)
        if not cert.holds:
            raise CommandError(cert.describe(), returncode=1)
        self.stderr.write(self.style.SUCCESS(cert.describe()))
