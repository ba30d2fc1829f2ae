# vortex/cell_complex.py
"""
Planar embedded cell complexes.

A complex lives in a *space*: the table of vertex ids and their planar
coordinates. Sub-collections of a complex share that table, which is what
makes closure, boundary and intersection well defined between them. Cells
are identified structurally (a vertex by its id, an edge and a triangle by
their vertex ids), never by label.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import TYPE_CHECKING, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import shapely
from django.conf import settings
from scipy.spatial import KDTree
from shapely.geometry import GeometryCollection, LineString, Point, Polygon
from shapely.geometry.base import BaseGeometry
from shapely.ops import polygonize, unary_union
from shapely.strtree import STRtree

from .exceptions import EmbeddingError, IncompatibleSpaceError, MalformedComplexError
from .reports import ConditionReport

if TYPE_CHECKING:
    from .cycles import FilledCycle

logger = logging.getLogger(__name__)


def get_tolerance(tol: Optional[float] = None) -> float:
    if tol is not None:
        return float(tol)
    return float(getattr(settings, "VORTEX_TOLERANCE", 1e-9))


# ------------------------
# Cells
# ------------------------
@dataclass(frozen=True, order=True)
class Vertex:
    id: int
    x: float
    y: float

    @property
    def xy(self) -> Tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True, order=True)
class Edge:
    """Bidirectional 1-cell: Edge(3, 1) and Edge(1, 3) are the same cell."""
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise MalformedComplexError(f"edge ({self.a},{self.b}) joins a vertex to itself")
        if self.a > self.b:
            lo, hi = self.b, self.a
            object.__setattr__(self, "a", lo)
            object.__setattr__(self, "b", hi)

    @property
    def endpoints(self) -> frozenset[int]:
        return frozenset((self.a, self.b))

    def __iter__(self) -> Iterator[int]:
        return iter((self.a, self.b))

    def other(self, v: int) -> int:
        return self.b if v == self.a else self.a

    def __str__(self) -> str:
        return f"{self.a}-{self.b}"


@dataclass(frozen=True, order=True)
class Triangle:
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        corners = sorted((self.a, self.b, self.c))
        if len(set(corners)) != 3:
            raise MalformedComplexError(f"triangle {tuple(corners)} repeats a corner")
        for name, value in zip("abc", corners):
            object.__setattr__(self, name, value)

    @property
    def corners(self) -> frozenset[int]:
        return frozenset((self.a, self.b, self.c))

    @property
    def edges(self) -> Tuple[Edge, Edge, Edge]:
        return (Edge(self.a, self.b), Edge(self.b, self.c), Edge(self.a, self.c))

    def __iter__(self) -> Iterator[int]:
        return iter((self.a, self.b, self.c))

    def __str__(self) -> str:
        return f"{self.a}-{self.b}-{self.c}"


Cell = Union[int, Edge, Triangle]


# ------------------------
# Complex
# ------------------------
@dataclass(frozen=True, eq=False)
class CellComplex:
    """
    A (sub-)collection of cells of one planar space.

    Complexes produced by `build` and `closure` are closed under face
    incidence; `subcomplex` may produce open sub-collections, which `closure`
    completes. Instances are immutable and safe to share between threads.
    """
    space: Mapping[int, Vertex]
    vertex_ids: frozenset[int] = frozenset()
    edges: frozenset[Edge] = frozenset()
    triangles: frozenset[Triangle] = frozenset()
    declared_cycles: Tuple["FilledCycle", ...] = ()
    attached_edges: frozenset[Edge] = frozenset()

    # ------------------------
    # Construction
    # ------------------------
    @classmethod
    def build(
        cls,
        vertices: Iterable[Vertex],
        edges: Iterable[Union[Edge, Sequence[int]]] = (),
        triangles: Iterable[Union[Triangle, Sequence[int]]] = (),
        declared_cycles: Iterable["FilledCycle"] = (),
        attached_edges: Iterable[Union[Edge, Sequence[int]]] = (),
        *,
        tol: Optional[float] = None,
    ) -> "CellComplex":
        """Validate every structural invariant and return a closed complex."""
        tol = get_tolerance(tol)
        table: dict[int, Vertex] = {}
        for v in vertices:
            if v.id in table:
                raise MalformedComplexError(f"duplicate vertex id {v.id}")
            if v.id < 0:
                raise MalformedComplexError(f"vertex id {v.id} is negative")
            table[v.id] = v

        edge_set = frozenset(_as_edge(e) for e in edges)
        tri_set = frozenset(_as_triangle(t) for t in triangles)
        attached = frozenset(_as_edge(e) for e in attached_edges)

        for e in edge_set:
            missing = [v for v in e if v not in table]
            if missing:
                raise MalformedComplexError(f"edge {e} references undeclared vertex {missing[0]}")
        for t in tri_set:
            for e in t.edges:
                if e not in edge_set:
                    raise MalformedComplexError(f"triangle {t} is missing boundary edge {e}")
            if _twice_area(*(table[v].xy for v in t)) <= tol:
                raise MalformedComplexError(f"triangle {t} has collinear corners")
        for e in attached:
            if e not in edge_set:
                raise MalformedComplexError(f"attached edge {e} is not an edge of the complex")

        _check_distinct_points(table.values(), tol)
        _check_planar(table, edge_set, tol)

        cx = cls(
            space=MappingProxyType(table),
            vertex_ids=frozenset(table),
            edges=edge_set,
            triangles=tri_set,
            declared_cycles=tuple(declared_cycles),
            attached_edges=attached,
        )
        _check_annotations(cx)
        logger.debug(
            "built complex: %d vertices, %d edges, %d triangles, %d declared cycles",
            len(cx.vertex_ids), len(cx.edges), len(cx.triangles), len(cx.declared_cycles),
        )
        return cx

    @classmethod
    def empty(cls, space: Optional[Mapping[int, Vertex]] = None) -> "CellComplex":
        return cls(space=space if space is not None else MappingProxyType({}))

    def subcomplex(
        self,
        vertex_ids: Iterable[int] = (),
        edges: Iterable[Union[Edge, Sequence[int]]] = (),
        triangles: Iterable[Union[Triangle, Sequence[int]]] = (),
    ) -> "CellComplex":
        """
        Select cells of this complex's space. The selection need not be closed.
        Annotations whose cells are all selected are carried along.
        """
        vids = frozenset(vertex_ids)
        edge_set = frozenset(_as_edge(e) for e in edges)
        tri_set = frozenset(_as_triangle(t) for t in triangles)
        for cell in itertools.chain(vids, edge_set, tri_set):
            _require_in_space(self.space, cell)
        selected = vids | {v for e in edge_set for v in e} | {v for t in tri_set for v in t}
        declared = tuple(
            c for c in self.declared_cycles
            if c.vertex_ids <= selected and all(e in edge_set for e in c.edges())
        )
        return CellComplex(
            space=self.space,
            vertex_ids=vids,
            edges=edge_set,
            triangles=tri_set,
            declared_cycles=declared,
            attached_edges=self.attached_edges & edge_set,
        )

    def with_annotations(
        self,
        declared_cycles: Iterable["FilledCycle"] = (),
        attached_edges: Iterable[Union[Edge, Sequence[int]]] = (),
    ) -> "CellComplex":
        attached = frozenset(_as_edge(e) for e in attached_edges)
        for e in attached:
            if e not in self.edges:
                raise MalformedComplexError(f"attached edge {e} is not an edge of the complex")
        cx = CellComplex(
            space=self.space,
            vertex_ids=self.vertex_ids,
            edges=self.edges,
            triangles=self.triangles,
            declared_cycles=tuple(declared_cycles),
            attached_edges=attached,
        )
        _check_annotations(cx)
        return cx

    # ------------------------
    # Cells & identity
    # ------------------------
    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return tuple(sorted(self.space[v] for v in self.vertex_ids))

    @property
    def cells(self) -> frozenset[Cell]:
        return frozenset(itertools.chain(self.vertex_ids, self.edges, self.triangles))

    @property
    def is_empty(self) -> bool:
        return not (self.vertex_ids or self.edges or self.triangles)

    def __len__(self) -> int:
        return len(self.vertex_ids) + len(self.edges) + len(self.triangles)

    def point(self, vid: int) -> Tuple[float, float]:
        return self.space[vid].xy

    @cached_property
    def cell_key(self) -> tuple:
        """Cells plus the coordinates of member vertices (annotations excluded)."""
        coords = frozenset((v, *self.space[v].xy) for v in self.vertex_ids if v in self.space)
        return (coords, self.edges, self.triangles)

    @cached_property
    def _identity(self) -> tuple:
        return (self.cell_key, frozenset(self.declared_cycles), self.attached_edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CellComplex):
            return NotImplemented
        return self._identity == other._identity

    def __hash__(self) -> int:
        return hash(self._identity)

    def label(self) -> str:
        """Compact cell listing used as a report witness."""
        parts = []
        if self.vertex_ids:
            parts.append("V{" + ",".join(str(v) for v in sorted(self.vertex_ids)) + "}")
        if self.edges:
            parts.append("E{" + ",".join(str(e) for e in sorted(self.edges)) + "}")
        if self.triangles:
            parts.append("T{" + ",".join(str(t) for t in sorted(self.triangles)) + "}")
        return " ".join(parts) if parts else "∅"

    def __repr__(self) -> str:
        return f"CellComplex({self.label()})"

    def is_closed(self) -> bool:
        return all(e.endpoints <= self.vertex_ids for e in self.edges) and all(
            e in self.edges for t in self.triangles for e in t.edges
        )

    def simplices(self) -> List[Tuple[int, ...]]:
        return (
            [(v,) for v in sorted(self.vertex_ids)]
            + [(e.a, e.b) for e in sorted(self.edges)]
            + [(t.a, t.b, t.c) for t in sorted(self.triangles)]
        )

    # ------------------------
    # Geometry
    # ------------------------
    def segment(self, e: Edge) -> LineString:
        return LineString([self.point(e.a), self.point(e.b)])

    def triangle_polygon(self, t: Triangle) -> Polygon:
        return Polygon([self.point(v) for v in t])

    def geometry(self) -> BaseGeometry:
        parts: List[BaseGeometry] = [Point(self.point(v)) for v in sorted(self.vertex_ids)]
        parts += [self.segment(e) for e in sorted(self.edges)]
        parts += [self.triangle_polygon(t) for t in sorted(self.triangles)]
        return GeometryCollection(parts)

    @cached_property
    def bounded_faces(self) -> Tuple[Polygon, ...]:
        """
        Bounded faces of the edge arrangement. Dangling edges and bridges do
        not bound a face; nested components show up as polygon interiors.
        """
        ensure_planar(self)
        lines = [self.segment(e) for e in sorted(self.edges)]
        faces = tuple(polygonize(lines)) if lines else ()
        logger.debug("%d bounded faces for %s", len(faces), self.label())
        return faces

    @cached_property
    def filled_region(self) -> BaseGeometry:
        """Union of every bounded face (holes filled in) and every 2-cell."""
        parts: List[BaseGeometry] = [Polygon(f.exterior) for f in self.bounded_faces]
        parts += [self.triangle_polygon(t) for t in self.triangles]
        if not parts:
            return Polygon()
        return unary_union(parts)


# ------------------------
# Validation helpers
# ------------------------
def _as_edge(e: Union[Edge, Sequence[int]]) -> Edge:
    if isinstance(e, Edge):
        return e
    ids = list(e)
    if len(ids) != 2:
        raise MalformedComplexError(f"edge {ids} must have exactly two endpoints")
    return Edge(int(ids[0]), int(ids[1]))


def _as_triangle(t: Union[Triangle, Sequence[int]]) -> Triangle:
    if isinstance(t, Triangle):
        return t
    ids = list(t)
    if len(ids) != 3:
        raise MalformedComplexError(f"triangle {ids} must have exactly three corners")
    return Triangle(int(ids[0]), int(ids[1]), int(ids[2]))


def _twice_area(p: Tuple[float, float], q: Tuple[float, float], r: Tuple[float, float]) -> float:
    return abs((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


def _require_in_space(space: Mapping[int, Vertex], cell: Cell) -> None:
    ids = (cell,) if isinstance(cell, int) else tuple(cell)
    for v in ids:
        if v not in space:
            raise MalformedComplexError(f"cell {cell} references vertex {v}, which is not in the space")


def _check_distinct_points(vertices: Iterable[Vertex], tol: float) -> None:
    verts = list(vertices)
    if len(verts) < 2:
        return
    coords = np.array([v.xy for v in verts], dtype=float)
    pairs = sorted(KDTree(coords).query_pairs(r=tol))
    if pairs:
        i, j = pairs[0]
        raise MalformedComplexError(
            f"vertices {verts[i].id} and {verts[j].id} coincide at {verts[i].xy}"
        )


def _check_planar(table: Mapping[int, Vertex], edges: frozenset[Edge], tol: float) -> None:
    """Edges may only meet at shared endpoints; no vertex may sit inside an edge."""
    ordered = sorted(edges)
    if not ordered:
        return
    lines = [LineString([table[e.a].xy, table[e.b].xy]) for e in ordered]
    tree = STRtree(lines)
    for i, e in enumerate(ordered):
        for j in tree.query(lines[i]):
            j = int(j)
            if j <= i:
                continue
            f = ordered[j]
            meet = lines[i].intersection(lines[j])
            if meet.is_empty:
                continue
            shared = e.endpoints & f.endpoints
            if shared and meet.geom_type == "Point":
                corner = Point(table[next(iter(shared))].xy)
                if meet.distance(corner) <= tol:
                    continue
            raise EmbeddingError(f"edges {e} and {f} cross away from a shared endpoint")

    points = [Point(v.xy) for v in table.values()]
    ids = list(table)
    for k, (vid, p) in enumerate(zip(ids, points)):
        for j in tree.query(p.buffer(tol) if tol > 0 else p):
            e = ordered[int(j)]
            if vid in e.endpoints:
                continue
            if lines[int(j)].distance(p) <= tol:
                raise EmbeddingError(f"vertex {vid} lies on edge {e}")


def _check_cycle_cells(cx: CellComplex, cycle: "FilledCycle") -> None:
    for v in cycle.boundary:
        if v not in cx.vertex_ids:
            raise MalformedComplexError(f"cycle {cycle.name} uses vertex {v}, which is not in the complex")
    for e in cycle.edges():
        if e not in cx.edges:
            raise MalformedComplexError(f"cycle {cycle.name} needs edge {e}, which is not in the complex")


def _check_annotations(cx: CellComplex) -> None:
    from .cycles import validate_annotations

    seen = set()
    for cycle in cx.declared_cycles:
        _check_cycle_cells(cx, cycle)
        if cycle.key in seen:
            raise MalformedComplexError(f"cycle {cycle.name} is declared twice")
        seen.add(cycle.key)
    validate_annotations(cx)


def ensure_planar(E: CellComplex, tol: Optional[float] = None) -> None:
    """Raise EmbeddingError when the straight-line drawing of E is not planar."""
    if "_planar_checked" in E.__dict__:
        return
    _check_planar(E.space, frozenset(e for e in E.edges if e.endpoints <= set(E.space)), get_tolerance(tol))
    E.__dict__["_planar_checked"] = True


# ------------------------
# Operations
# ------------------------
def closure(E: CellComplex) -> CellComplex:
    """E plus every face of every member cell."""
    for cell in itertools.chain(E.vertex_ids, E.edges, E.triangles):
        _require_in_space(E.space, cell)
    edges = set(E.edges)
    for t in E.triangles:
        edges.update(t.edges)
    vids = set(E.vertex_ids)
    for e in edges:
        vids.update(e)
    if len(vids) == len(E.vertex_ids) and len(edges) == len(E.edges):
        return E
    return CellComplex(
        space=E.space,
        vertex_ids=frozenset(vids),
        edges=frozenset(edges),
        triangles=E.triangles,
        declared_cycles=E.declared_cycles,
        attached_edges=E.attached_edges,
    )


def _strictly_inside(region: BaseGeometry, geom: BaseGeometry, tol: float) -> bool:
    if region.is_empty:
        return False
    return region.contains(geom) and region.boundary.distance(geom) > tol


def boundary(E: CellComplex, tol: Optional[float] = None) -> CellComplex:
    """Cells of closure(E) incident to the unbounded face of the embedding."""
    tol = get_tolerance(tol)
    E = closure(E)
    region = E.filled_region
    vids = frozenset(v for v in E.vertex_ids if not _strictly_inside(region, Point(E.point(v)), tol))
    edges = frozenset(
        e for e in E.edges
        if not _strictly_inside(region, E.segment(e).interpolate(0.5, normalized=True), tol)
    )
    return CellComplex(space=E.space, vertex_ids=vids, edges=edges)


def interior(E: CellComplex, tol: Optional[float] = None) -> CellComplex:
    E = closure(E)
    bdy = boundary(E, tol)
    return CellComplex(
        space=E.space,
        vertex_ids=E.vertex_ids - bdy.vertex_ids,
        edges=E.edges - bdy.edges,
        triangles=E.triangles,
    )


def check_same_space(A: CellComplex, B: CellComplex, tol: Optional[float] = None) -> None:
    if A.space is B.space:
        return
    tol = get_tolerance(tol)
    for vid in A.space.keys() & B.space.keys():
        pa, pb = A.space[vid].xy, B.space[vid].xy
        if abs(pa[0] - pb[0]) > tol or abs(pa[1] - pb[1]) > tol:
            raise IncompatibleSpaceError(f"vertex {vid} sits at {pa} in one complex and {pb} in the other")
    located = {v.xy: v.id for v in A.space.values()}
    for v in B.space.values():
        other = located.get(v.xy)
        if other is not None and other != v.id:
            raise IncompatibleSpaceError(f"point {v.xy} is vertex {other} in one complex and {v.id} in the other")


def complex_intersection(A: CellComplex, B: CellComplex, tol: Optional[float] = None) -> CellComplex:
    """Cells common to A and B. Cell-set semantics: commutative, associative, idempotent."""
    check_same_space(A, B, tol)
    if A.space is B.space:
        space = A.space
    else:
        space = MappingProxyType({**B.space, **A.space})
    shared_cycles = tuple(c for c in A.declared_cycles if c in set(B.declared_cycles))
    return CellComplex(
        space=space,
        vertex_ids=A.vertex_ids & B.vertex_ids,
        edges=A.edges & B.edges,
        triangles=A.triangles & B.triangles,
        declared_cycles=shared_cycles,
        attached_edges=A.attached_edges & B.attached_edges,
    )


def complete_collection(K: Sequence[CellComplex], tol: Optional[float] = None) -> List[CellComplex]:
    """
    Smallest collection holding the closures of K and closed under nonempty
    pairwise intersection. Members keep their first-seen order.
    """
    members: List[CellComplex] = []
    keys = set()

    def add(m: CellComplex) -> None:
        if m.is_empty or m.cell_key in keys:
            return
        keys.add(m.cell_key)
        members.append(m)

    for m in K:
        add(closure(m))
    i = 0
    while i < len(members):
        for j in range(i):
            add(closure(complex_intersection(members[j], members[i], tol)))
        i += 1
    return members


def check_cw_conditions(K: Sequence[CellComplex], tol: Optional[float] = None) -> ConditionReport:
    """
    CW containment and intersection conditions over a finite collection.

    Disjoint members satisfy the intersection condition vacuously: the empty
    complex is a value but never a member of a CW collection.
    """
    report = ConditionReport(title="CW containment and intersection conditions")
    members = list(K)
    if not members:
        report.fail("collection", "K is empty")
        return report
    keys = {m.cell_key for m in members}
    for i, m in enumerate(members):
        if m.is_empty:
            report.fail(f"member[{i}]", "the empty complex is not a CW member")
            continue
        cl = closure(m)
        report.record(
            f"containment[{i}]",
            cl.cell_key in keys,
            f"cl({m.label()})" if cl.cell_key in keys else f"missing cl = {cl.label()}",
        )
    for i, j in itertools.combinations(range(len(members)), 2):
        meet = complex_intersection(members[i], members[j], tol)
        if meet.is_empty:
            report.ok(f"intersection[{i},{j}]", "disjoint (vacuous)")
            continue
        present = meet.cell_key in keys
        report.record(
            f"intersection[{i},{j}]",
            present,
            meet.label() if present else f"missing {meet.label()}",
        )
    return report
