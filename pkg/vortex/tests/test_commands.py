import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from vortex.complex_io import write_document

from .builders import two_squares


class CommandTestCase(SimpleTestCase):
    def run_command(self, *args):
        out, err = StringIO(), StringIO()
        call_command(*args, stdout=out, stderr=err)
        return out.getvalue()

    def run_json(self, *args):
        return json.loads(self.run_command(*args))

    def run_failing(self, *args):
        out, err = StringIO(), StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command(*args, stdout=out, stderr=err)
        return ctx.exception, out.getvalue()


class AnalyzeCommandTests(CommandTestCase):
    def test_summary(self):
        payload = self.run_json("analyze", "nested_vortex.cx")
        self.assertEqual(payload["cells"], {"vertices": 22, "edges": 24, "triangles": 0})
        self.assertEqual(len(payload["cycles"]), 5)
        self.assertEqual(len(payload["holes"]), 1)
        self.assertEqual(payload["betti"]["shape"]["b_sh"], 8)
        self.assertEqual(payload["betti"]["vortex"]["b_vtex"], 5)
        self.assertTrue(payload["vortex_nerve"]["is_vortex_nerve"])

    def test_report_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            target = Path(tmp) / "report.json"
            self.assertEqual(self.run_command("analyze", "touching_cycles.cx", "-o", str(target)), "")
            self.assertEqual(json.loads(target.read_text())["cells"]["vertices"], 10)

    def test_missing_file(self):
        exc, _ = self.run_failing("analyze", "/nonexistent/missing.cx")
        self.assertIn("missing.cx", str(exc))


class BettiCommandTests(CommandTestCase):
    def test_views(self):
        self.assertEqual(self.run_json("betti", "nested_vortex.cx", "--as", "vortex")["b_vtex"], 5)
        self.assertEqual(self.run_json("betti", "nested_vortex.cx", "--as", "shape")["b_sh"], 8)
        self.assertEqual(self.run_json("betti", "nested_vortex.cx", "--as", "vnrv")["b_vnrv"], 8)
        complex_view = self.run_json("betti", "nested_vortex.cx")
        self.assertEqual((complex_view["b1"], complex_view["b2"]), (5, 1))

    def test_short_figure_names(self):
        self.assertEqual(self.run_json("betti", "fig1ii.cx", "--as", "vortex")["b_vtex"], 5)
        self.assertEqual(self.run_json("betti", "fig1ii.cx", "--as", "shape")["b_sh"], 8)
        payload = self.run_json("near", "fig1i.cx", "fig1ii.cx", "--probe", "hole-count")
        self.assertEqual([d["description"] for d in payload["descriptions"]], [[1], [1]])
        self.assertTrue(payload["dnear"])

    def test_vortex_reading_of_overlapping_cycles(self):
        exc, _ = self.run_failing("betti", "touching_cycles.cx", "--as", "vortex")
        self.assertIn("vortex reading failed", str(exc))


class NerveCommandTests(CommandTestCase):
    def test_eh_nerve(self):
        payload = self.run_json("nerve", "touching_cycles.cx")
        self.assertEqual(payload["simplices"], [["cycA"], ["cycA", "cycB"], ["cycB"]])
        self.assertEqual(payload["homology"], {"h0": 1, "h1": 0})

    def test_vortex_certificate(self):
        payload = self.run_json("nerve", "touching_cycles.cx", "--vortex")
        self.assertEqual(payload["vortex_nerve"]["case"], "decomposition")

    def test_not_a_vortex_nerve(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = write_document(two_squares(), Path(tmp) / "apart.cx")
            exc, out = self.run_failing("nerve", str(path), "--vortex")
        self.assertEqual(exc.returncode, 1)
        self.assertFalse(json.loads(out)["vortex_nerve"]["is_vortex_nerve"])


class NearCommandTests(CommandTestCase):
    def test_hole_count(self):
        payload = self.run_json("near", "touching_cycles.cx", "nested_vortex.cx", "--probe", "hole-count")
        self.assertEqual([d["description"] for d in payload["descriptions"]], [[1], [1]])
        self.assertTrue(payload["dnear"])

    def test_probe_is_required(self):
        self.run_failing("near", "touching_cycles.cx", "nested_vortex.cx")

    def test_unknown_probe(self):
        exc, _ = self.run_failing("near", "touching_cycles.cx", "nested_vortex.cx", "--probe", "colour")
        self.assertIn("unknown probe", str(exc))


class GenAndRenderCommandTests(CommandTestCase):
    def test_generated_nerve_betti(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "nested.cx"
            self.run_command("gen", "--kind", "nested-cycles", "--size", "3", "--seed", "2", "--holes", "1", "--attached", "2", "-o", str(path))
            self.assertEqual(self.run_json("betti", str(path), "--as", "vnrv")["b_vnrv"], 2 + 3 + 1)

    def test_holes_need_nested_cycles(self):
        with tempfile.TemporaryDirectory() as tmp:
            self.run_failing("gen", "--kind", "random-planar", "--size", "5", "--holes", "1", "-o", str(Path(tmp) / "x.cx"))

    def test_output_is_required(self):
        self.run_failing("gen", "--kind", "disk-family", "--size", "3")

    def test_render(self):
        with tempfile.TemporaryDirectory() as tmp:
            target = Path(tmp) / "fig.svg"
            self.run_command("render", "nested_vortex.cx", "-o", str(target))
            self.assertEqual(target.read_text().count('class="hole"'), 1)


class VerifyCommandTests(CommandTestCase):
    def test_cw(self):
        payload = self.run_json("verify", "--cw", "touching_cycles.cx")
        self.assertTrue(all(r["pass"] for r in payload["reports"]))

    def test_cw_without_completion(self):
        exc, out = self.run_failing("verify", "--cw", "--no-complete", "touching_cycles.cx")
        self.assertEqual(exc.returncode, 1)
        witnesses = [f["witness"] for r in json.loads(out)["reports"] for f in r["failures"]]
        self.assertIn("missing V{4,5} E{4-5}", witnesses)

    def test_axioms(self):
        payload = self.run_json("verify", "--axioms", "--count", "5", "--trials", "50", "--probe", "cell-count")
        (report,) = payload["reports"]
        self.assertTrue(report["pass"])
        self.assertEqual(report["probe"], "cell-count")

    def test_homotopy(self):
        payload = self.run_json("verify", "--homotopy", "--count", "10")
        self.assertTrue(payload["reports"][0]["pass"])

    def test_needs_a_check(self):
        self.run_failing("verify", "touching_cycles.cx")
