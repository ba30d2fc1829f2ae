import logging

import numpy as np
from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from vortex.betti import check_union_homotopy
from vortex.cell_complex import check_cw_conditions, complete_collection
from vortex.choices import GenerateKind
from vortex.cli import AnalysisRequest, emit, expand_inputs, load_complex_input
from vortex.cycles import cycle_complex
from vortex.exceptions import VortexError
from vortex.generators import generate
from vortex.nerves import cw_from_collection
from vortex.proximity import DescriptiveProximitySpace, builtin_probes, check_axioms
from vortex.reports import ConditionReport

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = (
        "Verify the theory on inputs: descriptive proximity axioms (--axioms), CW conditions on a "
        "collection (--cw) and nerve/union homology on seeded disk families (--homotopy)."
    )

    def add_arguments(self, parser):
        parser.add_argument("paths", nargs="*", help=".cx files or directories of .cx files")
        parser.add_argument("--axioms", action="store_true", help="Sweep the descriptive proximity axioms")
        parser.add_argument("--cw", action="store_true", help="Check CW containment/intersection conditions")
        parser.add_argument("--homotopy", action="store_true", help="Compare nerve and union homology on disk families")
        parser.add_argument("--probe", default=None, help="Restrict --axioms (and make --cw descriptive) with this probe")
        parser.add_argument("--trials", type=int, default=None, help="Axiom trials per probe (default: VORTEX_AXIOM_TRIALS)")
        parser.add_argument("--seed", type=int, default=None, help="Sweep seed (default: VORTEX_NERVE_SEED)")
        parser.add_argument(
            "--count",
            type=int,
            default=None,
            help="Generated complexes (--axioms without paths) or disk families (--homotopy); default VORTEX_AXIOM_UNIVERSE_SIZE",
        )
        parser.add_argument(
            "--no-complete",
            action="store_true",
            help="--cw: take the collection as given instead of closing it under intersection",
        )

    def handle(self, *args, **options):
        request = AnalysisRequest(
            command="verify",
            inputs=tuple(options["paths"]),
            probe=options["probe"],
            seed=options["seed"],
        ).validate()
        if not (options["axioms"] or options["cw"] or options["homotopy"]):
            raise CommandError("choose at least one of --axioms, --cw, --homotopy")
        if options["cw"] and not request.inputs:
            raise CommandError("--cw needs at least one complex file")
        count = options["count"] or int(getattr(settings, "VORTEX_AXIOM_UNIVERSE_SIZE", 50))
        if count < 1:
            raise CommandError("--count must be positive")
        seed = request.effective_seed

        reports = []
        try:
            if options["axioms"]:
                reports += self._axioms(request, count, options["trials"], seed)
            if options["cw"]:
                reports += self._cw(request, not options["no_complete"])
            if options["homotopy"]:
                reports.append(self._homotopy(count, seed))
        except VortexError as exc:
            raise CommandError(str(exc))

        emit(self, {"seed": seed, "reports": [r.as_dict() for r in reports]})
        failed = [r.title for r in reports if not r.passed]
        if failed:
            raise CommandError(f"{len(failed)} check(s) failed: {'; '.join(failed)}", returncode=1)
        self.stderr.write(self.style.SUCCESS(f"{len(reports)} check(s) passed"))

    # ------------------------
    # Sweeps
    # ------------------------
    def _universe(self, request, count, seed):
        if request.inputs:
            return [load_complex_input(p) for p in expand_inputs(request.inputs)]
        rng = np.random.default_rng(seed)
        sizes = rng.integers(4, 13, size=count)
        return [generate(GenerateKind.RANDOM_PLANAR, int(n), seed + i) for i, n in enumerate(sizes)]

    def _axioms(self, request, count, trials, seed):
        universe = self._universe(request, count, seed)
        probes = [request.resolve_probe()] if request.probe else builtin_probes()
        logger.info("axiom sweep over %d complexes, %d probes", len(universe), len(probes))
        return [check_axioms(DescriptiveProximitySpace(universe, probe), trials, seed) for probe in probes]

    def _cw(self, request, complete):
        paths = expand_inputs(request.inputs)
        if len(paths) == 1:
            cx = load_complex_input(paths[0])
            members = [cycle_complex(cx, c) for c in cx.declared_cycles] or [cx]
        else:
            members = [load_complex_input(p) for p in paths]
        if complete:
            members = complete_collection(members)
        probe = request.resolve_probe() if request.probe else None
        return [check_cw_conditions(members), cw_from_collection(members, probe)]

    def _homotopy(self, count, seed):
        ceiling = int(getattr(settings, "VORTEX_GENERATE_MAX_DISKS", 6))
        report = ConditionReport(title="nerve homology matches union homology")
        for i in range(count):
            size = 1 + i % min(5, ceiling)
            family = generate(GenerateKind.DISK_FAMILY, size, seed + i)
            check = check_union_homotopy(family)
            report.record(f"family[{i}] ({size} disks)", check.agrees, check.describe())
        return report
