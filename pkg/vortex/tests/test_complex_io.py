import json
import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from vortex.betti import Disk
from vortex.cell_complex import Edge
from vortex.complex_io import (
    FIGURES_DIR,
    dump_complex,
    dump_disk_family,
    load_complex,
    load_disk_family,
    parse_complex,
    parse_document,
    resolve_input,
    write_document,
)
from vortex.exceptions import ComplexParseError

from .builders import figure

SQUARE = {
    "vertices": [
        {"id": 0, "x": 0, "y": 0},
        {"id": 1, "x": 1, "y": 0},
        {"id": 2, "x": 1, "y": 1},
        {"id": 3, "x": 0, "y": 1},
    ],
    "edges": [[0, 1], [1, 2], [2, 3], [3, 0]],
}


def variant(**changes):
    doc = json.loads(json.dumps(SQUARE))
    doc.update(changes)
    return doc


class LoadComplexTests(SimpleTestCase):
    def test_figures(self):
        touching = figure("touching_cycles.cx")
        self.assertEqual((len(touching.vertex_ids), len(touching.edges), len(touching.declared_cycles)), (10, 11, 2))
        nested = figure("nested_vortex.cx")
        self.assertEqual((len(nested.vertex_ids), len(nested.edges), len(nested.declared_cycles)), (22, 24, 6))
        self.assertEqual(nested.attached_edges, {Edge(11, 12), Edge(0, 6)})

    def test_round_trip(self):
        for name in ("touching_cycles.cx", "nested_vortex.cx"):
            cx = figure(name)
            self.assertEqual(load_complex(dump_complex(cx)), cx)

    def assertLocus(self, doc, locus):
        with self.assertRaises(ComplexParseError) as ctx:
            load_complex(doc)
        self.assertEqual(ctx.exception.locus, locus)

    def test_unknown_key(self):
        self.assertLocus(variant(faces=[]), "document")

    def test_missing_vertices(self):
        self.assertLocus({"edges": []}, "document")

    def test_empty_vertex_list(self):
        self.assertLocus({"vertices": []}, "vertices")
        self.assertLocus(variant(vertices=[], edges=[]), "vertices")

    def test_bad_coordinate(self):
        doc = variant()
        doc["vertices"][2]["x"] = "one"
        self.assertLocus(doc, "vertices[2].x")

    def test_negative_id(self):
        doc = variant()
        doc["vertices"][0]["id"] = -1
        self.assertLocus(doc, "vertices[0].id")

    def test_duplicate_id(self):
        doc = variant()
        doc["vertices"][3]["id"] = 0
        self.assertLocus(doc, "vertices[3]")

    def test_undeclared_vertex(self):
        self.assertLocus(variant(edges=[[0, 9]]), "edges[0][1]")

    def test_duplicate_edge(self):
        self.assertLocus(variant(edges=[[0, 1], [1, 0]]), "edges[1]")

    def test_crossing_edges(self):
        self.assertLocus(variant(edges=[[0, 2], [1, 3]]), "edges")

    def test_hole_flag_type(self):
        cycles = [{"boundary": [0, 1, 2, 3], "hole": "yes"}]
        self.assertLocus(variant(filled_cycles=cycles), "filled_cycles[0].hole")

    def test_cycle_without_edges(self):
        cycles = [{"boundary": [0, 2, 3]}]
        self.assertLocus(variant(filled_cycles=cycles), "complex")


class FileTests(SimpleTestCase):
    def test_bad_json(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "broken.cx"
            path.write_text('{"vertices": [\n  {"id": 0,}\n]}', encoding="utf-8")
            with self.assertRaises(ComplexParseError) as ctx:
                parse_complex(path)
        self.assertTrue(ctx.exception.locus.startswith("line 2"))

    def test_missing_file(self):
        with self.assertRaises(ComplexParseError):
            parse_complex("/nonexistent/nowhere.cx")

    def test_bundled_figures_resolve_by_name(self):
        self.assertEqual(resolve_input("touching_cycles.cx"), FIGURES_DIR / "touching_cycles.cx")

    def test_short_figure_names(self):
        self.assertEqual(resolve_input("fig1i.cx"), FIGURES_DIR / "touching_cycles.cx")
        self.assertEqual(parse_complex("fig1ii.cx"), figure("nested_vortex.cx"))

    def test_write_and_read_back(self):
        cx = figure("nested_vortex.cx")
        disks = [Disk(0.0, 0.0, 1.0), Disk(1.5, 0.0, 1.0)]
        with tempfile.TemporaryDirectory() as tmp:
            written = write_document(cx, Path(tmp) / "nested" / "fig.cx")
            self.assertEqual(parse_document(written), cx)
            family = write_document(disks, Path(tmp) / "disks.cx")
            self.assertEqual(parse_document(family), disks)


class DiskFamilyTests(SimpleTestCase):
    def test_load(self):
        disks = load_disk_family({"disks": [{"x": 0, "y": 0, "r": 1}]})
        self.assertEqual(disks, [Disk(0.0, 0.0, 1.0)])
        self.assertEqual(dump_disk_family(disks), {"disks": [{"x": 0.0, "y": 0.0, "r": 1.0}]})

    def test_bad_radius(self):
        with self.assertRaises(ComplexParseError) as ctx:
            load_disk_family({"disks": [{"x": 0, "y": 0, "r": -1}]})
        self.assertEqual(ctx.exception.locus, "disks[0]")

    def test_empty_family(self):
        with self.assertRaises(ComplexParseError):
            load_disk_family({"disks": []})
