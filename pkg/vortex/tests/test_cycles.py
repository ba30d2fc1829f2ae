import random

import networkx as nx
from django.test import SimpleTestCase
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from shapely.geometry import LinearRing, Point

from vortex.cell_complex import CellComplex, Vertex
from vortex.choices import GenerateKind, PointLocation
from vortex.cycles import (
    FilledCycle,
    build_vortex,
    complex_cycles,
    cycles_intersect,
    extract_shape,
    find_cycles,
    is_nested,
    nerve_cycles,
    point_in_cycle,
)
from vortex.exceptions import MalformedComplexError, NotAShapeError, NotAVortexError
from vortex.generators import generate

from .builders import bowtie, cycle_named, figure, nested_squares, ring, square, two_squares, zigzag_hexagon

L_SHAPE = [(0, 0), (3, 0), (3, 1), (1, 1), (1, 3), (0, 3)]


def crossing_number(p, polygon):
    x, y = p
    inside = False
    for (x1, y1), (x2, y2) in zip(polygon, polygon[1:] + polygon[:1]):
        if (y1 > y) != (y2 > y):
            xcross = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x < xcross:
                inside = not inside
    return inside


class FilledCycleTests(SimpleTestCase):
    def test_identity_ignores_rotation_and_orientation(self):
        cx = square()
        a = FilledCycle.on(cx, [0, 1, 2, 3])
        b = FilledCycle.on(cx, [2, 1, 0, 3])
        self.assertEqual(a, b)
        self.assertNotEqual(a, FilledCycle.on(cx, [0, 1, 2, 3], hole=True))

    def test_repeated_vertex(self):
        cx = square()
        with self.assertRaises(MalformedComplexError):
            FilledCycle.on(cx, [0, 1, 0])

    def test_unknown_vertex(self):
        with self.assertRaises(MalformedComplexError):
            FilledCycle.on(square(), [0, 1, 9])

    def test_degenerate_cycles(self):
        cx = square()
        edge = FilledCycle.on(cx, [0, 1])
        self.assertTrue(edge.is_degenerate)
        self.assertEqual(edge.region().geom_type, "LineString")
        self.assertEqual(FilledCycle.on(cx, [2]).outline.geom_type, "Point")


class PointInCycleTests(SimpleTestCase):
    def setUp(self):
        vertices, _ = ring(L_SHAPE)
        self.cycle = FilledCycle(tuple(v.id for v in vertices), tuple(v.xy for v in vertices))

    def test_locations(self):
        self.assertEqual(point_in_cycle((0.5, 2.5), self.cycle), PointLocation.INSIDE)
        self.assertEqual(point_in_cycle((2, 2), self.cycle), PointLocation.OUTSIDE)
        self.assertEqual(point_in_cycle((2, 1), self.cycle), PointLocation.ON_BOUNDARY)
        self.assertEqual(point_in_cycle((3, 0), self.cycle), PointLocation.ON_BOUNDARY)

    @settings(deadline=None, max_examples=200)
    @given(st.floats(-1, 4), st.floats(-1, 4))
    def test_agrees_with_crossing_number(self, x, y):
        assume(LinearRing(L_SHAPE).distance(Point(x, y)) > 1e-6)
        expected = PointLocation.INSIDE if crossing_number((x, y), L_SHAPE) else PointLocation.OUTSIDE
        self.assertEqual(point_in_cycle((x, y), self.cycle), expected)


class PairPredicateTests(SimpleTestCase):
    def test_nested(self):
        cx = figure("nested_vortex.cx")
        a, c = cycle_named(cx, "cycA"), cycle_named(cx, "cycC")
        self.assertTrue(is_nested(a, c))
        self.assertFalse(is_nested(c, a))
        self.assertTrue(cycles_intersect(a, c))

    def test_shared_edge_is_not_nesting(self):
        cx = figure("touching_cycles.cx")
        a, b = cycle_named(cx, "cycA"), cycle_named(cx, "cycB")
        self.assertFalse(is_nested(a, b))
        self.assertFalse(is_nested(b, a))
        self.assertTrue(cycles_intersect(a, b))

    def test_disjoint(self):
        left, right = find_cycles(two_squares())
        self.assertFalse(cycles_intersect(left, right))

    def test_degenerate_cycles_nest_but_contain_nothing(self):
        cx = figure("nested_vortex.cx")
        self.assertTrue(is_nested(cycle_named(cx, "e1"), cycle_named(cx, "cycC")))
        self.assertFalse(is_nested(cycle_named(cx, "cycA"), cycle_named(cx, "e1")))


class FindCyclesTests(SimpleTestCase):
    def test_declared_cycles_come_first(self):
        cx = figure("touching_cycles.cx")
        self.assertEqual([c.name for c in find_cycles(cx)], ["cycA", "cycB"])

    def test_face_cycles_of_a_bare_complex(self):
        found = find_cycles(square())
        self.assertEqual(len(found), 1)
        self.assertEqual(found[0].boundary, (0, 1, 2, 3))

    def test_complex_cycles_split_holes(self):
        non_hole, holes = complex_cycles(figure("nested_vortex.cx"))
        self.assertEqual(len(non_hole), 5)
        self.assertEqual([h.name for h in holes], ["hole"])

    @settings(deadline=None, max_examples=30)
    @given(st.integers(0, 10_000), st.integers(3, 30))
    def test_face_count_follows_euler(self, seed, size):
        cx = generate(GenerateKind.RANDOM_PLANAR, size, seed)
        graph = nx.Graph()
        graph.add_nodes_from(cx.vertex_ids)
        graph.add_edges_from((e.a, e.b) for e in cx.edges)
        components = nx.number_connected_components(graph)
        self.assertEqual(len(find_cycles(cx)), len(cx.edges) - len(cx.vertex_ids) + components)


class NerveCyclesTests(SimpleTestCase):
    def test_unenclosed_hole_becomes_a_member(self):
        members, enclosed = nerve_cycles(figure("touching_cycles.cx"))
        self.assertEqual(sorted(c.name for c in members), ["cycA", "cycB"])
        self.assertEqual(enclosed, [])

    def test_enclosed_hole(self):
        members, enclosed = nerve_cycles(figure("nested_vortex.cx"))
        self.assertEqual(len(members), 5)
        self.assertEqual([h.name for h in enclosed], ["hole"])

    def test_two_cells_merge_into_one_cycle(self):
        members, enclosed = nerve_cycles(zigzag_hexagon())
        self.assertEqual([c.boundary for c in members], [(0, 1, 2, 3, 4, 5)])
        self.assertEqual(enclosed, [])
        self.assertEqual(len(find_cycles(zigzag_hexagon())), 4)

    def test_two_cells_meeting_at_a_vertex_stay_apart(self):
        members, _ = nerve_cycles(bowtie())
        self.assertEqual(sorted(c.boundary for c in members), [(0, 2, 1), (2, 4, 3)])


class VortexTests(SimpleTestCase):
    def test_chain_order(self):
        cx = figure("nested_vortex.cx")
        non_hole = [c for c in cx.declared_cycles if not c.hole]
        expected = ["cycA", "e1", "cycB", "e0", "cycC"]
        self.assertEqual([c.name for c in build_vortex(non_hole).cycles], expected)
        shuffled = list(non_hole)
        random.Random(7).shuffle(shuffled)
        self.assertEqual([c.name for c in build_vortex(shuffled).cycles], expected)

    def test_innermost_and_outermost(self):
        vortex = build_vortex(find_cycles(nested_squares()))
        self.assertEqual(len(vortex), 2)
        self.assertLess(vortex.innermost.polygon.area, vortex.outermost.polygon.area)

    def test_overlapping_cycles(self):
        cx = figure("touching_cycles.cx")
        with self.assertRaises(NotAVortexError) as ctx:
            build_vortex(cx.declared_cycles)
        self.assertEqual(len(ctx.exception.pair), 2)

    def test_empty(self):
        with self.assertRaises(NotAVortexError):
            build_vortex([])


class ShapeTests(SimpleTestCase):
    def test_filled_square(self):
        shape = extract_shape(square())
        self.assertEqual(shape.boundary_cycle.boundary, (0, 1, 2, 3))
        self.assertEqual(shape.holes, ())
        self.assertIsNotNone(shape.nerve)

    def test_annulus(self):
        shape = extract_shape(nested_squares(inner_hole=True))
        self.assertEqual(len(shape.holes), 1)
        self.assertAlmostEqual(shape.region.area, 12.0)

    def test_figure_with_hole(self):
        shape = extract_shape(figure("nested_vortex.cx"))
        self.assertEqual(shape.boundary_cycle.name, "cycC")
        self.assertEqual([h.name for h in shape.holes], ["hole"])
        self.assertEqual(shape.nerve.cycle_count, 5)

    def test_two_components(self):
        with self.assertRaises(NotAShapeError):
            extract_shape(two_squares())

    def test_no_region(self):
        with self.assertRaises(NotAShapeError):
            extract_shape(CellComplex.build([Vertex(0, 0, 0), Vertex(1, 1, 0)], [(0, 1)]))

    def test_hole_with_cells_inside(self):
        cx = nested_squares()
        with self.assertRaises(MalformedComplexError):
            cx.with_annotations([FilledCycle.on(cx, [0, 1, 2, 3], hole=True)])
