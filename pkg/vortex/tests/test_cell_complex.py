from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from vortex.cell_complex import (
    CellComplex,
    Edge,
    Triangle,
    Vertex,
    boundary,
    check_cw_conditions,
    closure,
    complete_collection,
    complex_intersection,
    interior,
)
from vortex.cycles import cycle_complex
from vortex.exceptions import EmbeddingError, IncompatibleSpaceError, MalformedComplexError

from .builders import cycle_named, figure, filled_triangle, nested_squares, ring, square, square_points


class CellTests(SimpleTestCase):
    def test_edges_are_unordered(self):
        self.assertEqual(Edge(3, 1), Edge(1, 3))
        self.assertEqual(str(Edge(3, 1)), "1-3")

    def test_loop_edge_is_rejected(self):
        with self.assertRaises(MalformedComplexError):
            Edge(2, 2)

    def test_triangle_sorts_corners(self):
        t = Triangle(2, 0, 1)
        self.assertEqual((t.a, t.b, t.c), (0, 1, 2))
        self.assertEqual(set(t.edges), {Edge(0, 1), Edge(1, 2), Edge(0, 2)})


class BuildTests(SimpleTestCase):
    def test_duplicate_vertex_id(self):
        with self.assertRaises(MalformedComplexError):
            CellComplex.build([Vertex(0, 0, 0), Vertex(0, 1, 1)])

    def test_coincident_vertices(self):
        with self.assertRaises(MalformedComplexError):
            CellComplex.build([Vertex(0, 1, 1), Vertex(1, 1, 1)])

    def test_dangling_edge(self):
        with self.assertRaises(MalformedComplexError):
            CellComplex.build([Vertex(0, 0, 0)], [(0, 7)])

    def test_triangle_needs_its_edges(self):
        vertices = [Vertex(0, 0, 0), Vertex(1, 1, 0), Vertex(2, 0, 1)]
        with self.assertRaises(MalformedComplexError):
            CellComplex.build(vertices, [(0, 1), (1, 2)], [(0, 1, 2)])

    def test_collinear_triangle(self):
        vertices = [Vertex(0, 0, 0), Vertex(1, 1, 0), Vertex(2, 2, 0)]
        with self.assertRaises(MalformedComplexError):
            CellComplex.build(vertices, [(0, 1), (1, 2), (0, 2)], [(0, 1, 2)])

    def test_crossing_edges(self):
        vertices = [Vertex(0, 0, 0), Vertex(1, 2, 2), Vertex(2, 0, 2), Vertex(3, 2, 0)]
        with self.assertRaises(EmbeddingError):
            CellComplex.build(vertices, [(0, 1), (2, 3)])

    def test_vertex_inside_edge(self):
        vertices = [Vertex(0, 0, 0), Vertex(1, 2, 0), Vertex(2, 1, 0)]
        with self.assertRaises(EmbeddingError):
            CellComplex.build(vertices, [(0, 1)])

    def test_attached_edge_must_exist(self):
        vertices, edges = ring(square_points(0, 0, 1))
        with self.assertRaises(MalformedComplexError):
            CellComplex.build(vertices, edges, attached_edges=[(0, 2)])

    def test_build_is_closed(self):
        self.assertTrue(figure("nested_vortex.cx").is_closed())

    def test_label(self):
        cx = figure("touching_cycles.cx")
        meet = cx.subcomplex(vertex_ids=[4, 5], edges=[(4, 5)])
        self.assertEqual(meet.label(), "V{4,5} E{4-5}")
        self.assertEqual(CellComplex.empty().label(), "∅")


class ClosureTests(SimpleTestCase):
    def test_closure_of_a_lone_triangle(self):
        cx = filled_triangle()
        lone = cx.subcomplex(triangles=[(0, 1, 2)])
        self.assertFalse(lone.is_closed())
        closed = closure(lone)
        self.assertEqual(len(closed), 7)
        self.assertTrue(closed.is_closed())

    def test_closure_outside_the_space(self):
        cx = square()
        stray = CellComplex(space=cx.space, vertex_ids=frozenset({42}))
        with self.assertRaises(MalformedComplexError):
            closure(stray)

    @settings(deadline=None, max_examples=50)
    @given(st.data())
    def test_closure_is_idempotent_and_extensive(self, data):
        cx = figure("nested_vortex.cx")
        edges = data.draw(st.sets(st.sampled_from(sorted(cx.edges))))
        vids = data.draw(st.sets(st.sampled_from(sorted(cx.vertex_ids))))
        sub = cx.subcomplex(vertex_ids=vids, edges=edges)
        once = closure(sub)
        self.assertEqual(closure(once).cells, once.cells)
        self.assertTrue(sub.cells <= once.cells)


class BoundedFaceTests(SimpleTestCase):
    def test_square_has_one_face(self):
        faces = square().bounded_faces
        self.assertEqual(len(faces), 1)
        self.assertAlmostEqual(faces[0].area, 1.0)

    def test_nested_squares_leave_an_annulus(self):
        faces = sorted(nested_squares().bounded_faces, key=lambda f: f.area)
        self.assertEqual([f.area for f in faces], [4.0, 12.0])
        self.assertEqual(len(faces[1].interiors), 1)

    def test_path_bounds_nothing(self):
        vertices = [Vertex(0, 0, 0), Vertex(1, 1, 0), Vertex(2, 2, 1)]
        cx = CellComplex.build(vertices, [(0, 1), (1, 2)])
        self.assertEqual(cx.bounded_faces, ())
        self.assertTrue(cx.filled_region.is_empty)


class BoundaryInteriorTests(SimpleTestCase):
    def test_filled_triangle(self):
        cx = filled_triangle()
        bdy = boundary(cx)
        self.assertEqual(bdy.vertex_ids, {0, 1, 2})
        self.assertEqual(len(bdy.edges), 3)
        self.assertFalse(bdy.triangles)
        inner = interior(cx)
        self.assertFalse(inner.vertex_ids)
        self.assertFalse(inner.edges)
        self.assertEqual(len(inner.triangles), 1)

    def test_outer_cycle_is_the_boundary(self):
        cx = figure("nested_vortex.cx")
        bdy = boundary(cx)
        outer = cycle_named(cx, "cycC")
        self.assertEqual(bdy.vertex_ids, outer.vertex_ids)
        self.assertEqual(bdy.edges, frozenset(outer.edges()))

    def test_inner_cycles_are_interior(self):
        cx = figure("nested_vortex.cx")
        inner = interior(cx)
        self.assertTrue(cycle_named(cx, "cycA").vertex_ids <= inner.vertex_ids)
        self.assertTrue(cycle_named(cx, "cycB").vertex_ids <= inner.vertex_ids)
        self.assertIn(Edge(6, 0), inner.edges)

    def test_boundary_and_interior_partition_the_cells(self):
        cx = figure("nested_vortex.cx")
        bdy, inner = boundary(cx), interior(cx)
        self.assertFalse(bdy.cells & inner.cells)
        self.assertEqual(bdy.cells | inner.cells, cx.cells)


class IntersectionTests(SimpleTestCase):
    def setUp(self):
        self.cx = figure("touching_cycles.cx")
        self.a = cycle_complex(self.cx, cycle_named(self.cx, "cycA"))
        self.b = cycle_complex(self.cx, cycle_named(self.cx, "cycB"))

    def test_shared_edge(self):
        meet = complex_intersection(self.a, self.b)
        self.assertEqual(meet.label(), "V{4,5} E{4-5}")

    def test_laws(self):
        ab = complex_intersection(self.a, self.b)
        self.assertEqual(ab.cell_key, complex_intersection(self.b, self.a).cell_key)
        self.assertEqual(complex_intersection(self.a, self.a).cell_key, self.a.cell_key)

    def test_disjoint_is_empty(self):
        left = self.cx.subcomplex(vertex_ids=[1])
        right = self.cx.subcomplex(vertex_ids=[7])
        self.assertTrue(complex_intersection(left, right).is_empty)

    def test_incompatible_spaces(self):
        here = CellComplex.build([Vertex(0, 0, 0)])
        there = CellComplex.build([Vertex(0, 1, 1)])
        with self.assertRaises(IncompatibleSpaceError):
            complex_intersection(here, there)

    def test_same_point_different_ids(self):
        here = CellComplex.build([Vertex(0, 0, 0)])
        there = CellComplex.build([Vertex(1, 0, 0)])
        with self.assertRaises(IncompatibleSpaceError):
            complex_intersection(here, there)


class CWConditionTests(SimpleTestCase):
    def setUp(self):
        cx = figure("touching_cycles.cx")
        self.members = [cycle_complex(cx, c) for c in cx.declared_cycles]

    def test_completed_collection_passes(self):
        completed = complete_collection(self.members)
        self.assertEqual(len(completed), 3)
        self.assertEqual(completed[2].label(), "V{4,5} E{4-5}")
        self.assertTrue(check_cw_conditions(completed).passed)

    def test_missing_intersection_is_reported(self):
        report = check_cw_conditions(self.members)
        self.assertFalse(report.passed)
        witnesses = [e.witness for e in report.failures]
        self.assertIn("missing V{4,5} E{4-5}", witnesses)

    def test_disjoint_members_pass_vacuously(self):
        cx = figure("touching_cycles.cx")
        report = check_cw_conditions([cx.subcomplex(vertex_ids=[1]), cx.subcomplex(vertex_ids=[7])])
        self.assertTrue(report.passed)

    def test_empty_collection_fails(self):
        self.assertFalse(check_cw_conditions([]).passed)
