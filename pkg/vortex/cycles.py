# vortex/cycles.py
"""
Filled cycles, vortexes and shapes.

A cycle is kept as its boundary walk plus the coordinates of that walk, so
the geometric predicates here never need the complex it came from.
Degenerate cycles (one vertex, or two vertices joined by an edge) are
allowed; they are what an attached edge looks like when it is declared as a
member of a vortex.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from shapely.geometry import LinearRing, LineString, Point, Polygon
from shapely.geometry.base import BaseGeometry
from shapely.geometry.polygon import orient
from shapely.ops import unary_union

from .cell_complex import CellComplex, Edge, Triangle, Vertex, closure, ensure_planar, get_tolerance
from .choices import PointLocation
from .exceptions import EmbeddingError, MalformedComplexError, NotANerveError, NotAShapeError, NotAVortexError

if TYPE_CHECKING:
    from .nerves import VortexNerve

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FilledCycle:
    boundary: Tuple[int, ...]
    coords: Tuple[Tuple[float, float], ...]
    filled: bool = True
    hole: bool = False
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "boundary", tuple(int(v) for v in self.boundary))
        object.__setattr__(self, "coords", tuple((float(x), float(y)) for x, y in self.coords))
        if not self.boundary:
            raise MalformedComplexError("a cycle needs at least one vertex")
        if len(self.coords) != len(self.boundary):
            raise MalformedComplexError(f"cycle {self.name}: {len(self.coords)} coordinates for {len(self.boundary)} vertices")
        if len(set(self.boundary)) != len(self.boundary):
            raise MalformedComplexError(f"cycle {self.name} repeats a vertex")

    @classmethod
    def on(
        cls,
        space: Union[CellComplex, Mapping[int, Vertex]],
        boundary: Sequence[int],
        filled: bool = True,
        hole: bool = False,
        label: str = "",
    ) -> "FilledCycle":
        table = space.space if isinstance(space, CellComplex) else space
        try:
            coords = tuple(table[int(v)].xy for v in boundary)
        except KeyError as exc:
            raise MalformedComplexError(f"cycle {label or tuple(boundary)} uses unknown vertex {exc.args[0]}") from exc
        return cls(tuple(boundary), coords, filled=filled, hole=hole, label=label)

    @property
    def name(self) -> str:
        return self.label or "(" + ",".join(str(v) for v in self.boundary) + ")"

    @property
    def is_degenerate(self) -> bool:
        return len(self.boundary) < 3

    @property
    def vertex_ids(self) -> frozenset[int]:
        return frozenset(self.boundary)

    def edges(self) -> Tuple[Edge, ...]:
        b = self.boundary
        if len(b) == 1:
            return ()
        if len(b) == 2:
            return (Edge(b[0], b[1]),)
        return tuple(Edge(b[i], b[(i + 1) % len(b)]) for i in range(len(b)))

    @cached_property
    def key(self) -> tuple:
        """Orientation- and rotation-free identity of the boundary walk."""
        return (frozenset(self.edges()), frozenset(zip(self.boundary, self.coords)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FilledCycle):
            return NotImplemented
        return (self.key, self.filled, self.hole) == (other.key, other.filled, other.hole)

    def __hash__(self) -> int:
        return hash((self.key, self.filled, self.hole))

    def __repr__(self) -> str:
        flags = "hole" if self.hole else ("filled" if self.filled else "open")
        return f"FilledCycle({self.name}, {flags})"

    # ------------------------
    # Geometry
    # ------------------------
    @cached_property
    def outline(self) -> BaseGeometry:
        if len(self.coords) == 1:
            return Point(self.coords[0])
        if len(self.coords) == 2:
            return LineString(self.coords)
        return LinearRing(self.coords)

    @cached_property
    def polygon(self) -> Polygon:
        if self.is_degenerate:
            return Polygon()
        return Polygon(self.coords)

    def region(self) -> BaseGeometry:
        """Filled region: the closed polygon, or the segment/point for degenerate cycles."""
        return self.outline if self.is_degenerate else self.polygon

    def extent(self) -> BaseGeometry:
        """What the cycle occupies: its region when filled, its outline otherwise."""
        return self.region() if self.filled else self.outline


# ------------------------
# Point & pair predicates
# ------------------------
def point_in_cycle(p: Sequence[float], c: FilledCycle, tol: Optional[float] = None) -> PointLocation:
    tol = get_tolerance(tol)
    pt = Point(p[0], p[1])
    if c.outline.distance(pt) <= tol:
        return PointLocation.ON_BOUNDARY
    if not c.is_degenerate and c.polygon.contains(pt):
        return PointLocation.INSIDE
    return PointLocation.OUTSIDE


def is_nested(a: FilledCycle, b: FilledCycle, tol: Optional[float] = None) -> bool:
    """
    True when a sits strictly inside b: every boundary vertex of a is inside b
    and the two outlines never meet.
    """
    if b.is_degenerate or a.key == b.key:
        return False
    tol = get_tolerance(tol)
    if any(point_in_cycle(p, b, tol) != PointLocation.INSIDE for p in a.coords):
        return False
    return a.outline.distance(b.outline) > tol


def cycles_intersect(a: FilledCycle, b: FilledCycle, tol: Optional[float] = None) -> bool:
    return a.extent().distance(b.extent()) <= get_tolerance(tol)


# ------------------------
# Cycles of a complex
# ------------------------
def _rotate_to_min(ids: List[int]) -> List[int]:
    k = ids.index(min(ids))
    return ids[k:] + ids[:k]


def find_cycles(E: CellComplex) -> List[FilledCycle]:
    """
    Boundary cycles of every bounded face (counterclockwise, starting at the
    smallest vertex id), merged with the complex's declared cycles. A declared
    cycle replaces the face cycle with the same boundary.
    """
    E = closure(E)
    ensure_planar(E)
    by_xy = {E.point(v): v for v in E.vertex_ids}
    faces: List[FilledCycle] = []
    for face in E.bounded_faces:
        ring = face.exterior
        coords = list(ring.coords)[:-1]
        if not ring.is_ccw:
            coords.reverse()
        try:
            ids = [by_xy[(x, y)] for x, y in coords]
        except KeyError as exc:
            raise EmbeddingError(f"face corner {exc.args[0]} is not a vertex of the complex") from exc
        faces.append(FilledCycle.on(E, _rotate_to_min(ids)))

    declared = {c.key: c for c in E.declared_cycles}
    found = list(E.declared_cycles)
    extra = sorted(
        (c for c in faces if c.key not in declared),
        key=lambda c: (c.polygon.area, c.boundary),
    )
    found.extend(extra)
    logger.debug("find_cycles: %d declared, %d face cycles", len(declared), len(extra))
    return found


def complex_cycles(E: CellComplex) -> Tuple[List[FilledCycle], List[FilledCycle]]:
    """(non-hole cycles, hole cycles) of E."""
    found = find_cycles(E)
    return [c for c in found if not c.hole], [c for c in found if c.hole]


def merge_tiled_faces(E: CellComplex, cycles: Sequence[FilledCycle]) -> List[FilledCycle]:
    """
    Replace the face cycles that are 2-cells of E by the boundary cycle of
    each connected patch they tile. A patch with a hole in it, or one whose
    outline pinches at a vertex, keeps its 2-cells as separate cycles.
    """
    tiles = [c for c in cycles if len(c.boundary) == 3 and Triangle(*c.boundary) in E.triangles]
    if len(tiles) < 2:
        return list(cycles)
    merged = unary_union([c.polygon for c in tiles])
    patches = list(merged.geoms) if hasattr(merged, "geoms") else [merged]
    by_xy = {E.point(v): v for v in E.vertex_ids}

    out = [c for c in cycles if c not in tiles]
    for patch in patches:
        inside = [c for c in tiles if patch.covers(c.polygon.representative_point())]
        if len(inside) < 2 or patch.interiors:
            out.extend(inside)
            continue
        try:
            ids = [by_xy[xy] for xy in list(orient(patch, 1.0).exterior.coords)[:-1]]
            out.append(FilledCycle.on(E, _rotate_to_min(ids)))
        except (KeyError, MalformedComplexError):
            out.extend(inside)
    logger.debug("merge_tiled_faces: %d 2-cells into %d patches", len(tiles), len(patches))
    return out


def nerve_cycles(E: CellComplex) -> Tuple[List[FilledCycle], List[FilledCycle]]:
    """
    (member cycles, enclosed holes) of a nerve reading of E. Declared non-hole
    cycles win; a complex that declares none is read through its face cycles,
    each patch of 2-cells counting as one cycle.
    A hole that no member encloses is itself a member.
    """
    members = [c for c in E.declared_cycles if not c.hole]
    hole_cycles = [c for c in E.declared_cycles if c.hole]
    if not members:
        members, hole_cycles = complex_cycles(E)
        members = merge_tiled_faces(E, members)
    enclosed = [h for h in hole_cycles if any(is_nested(h, c) for c in members)]
    members = members + [h for h in hole_cycles if h not in enclosed]
    return members, enclosed


def interior_is_empty(E: CellComplex, c: FilledCycle, tol: Optional[float] = None) -> bool:
    """No cell of E lies strictly inside the polygon of c."""
    if c.is_degenerate:
        return True
    tol = get_tolerance(tol)
    poly, ring = c.polygon, c.outline

    def strictly_inside(g: BaseGeometry) -> bool:
        return poly.contains(g) and ring.distance(g) > tol

    if any(strictly_inside(Point(E.point(v))) for v in E.vertex_ids):
        return False
    if any(strictly_inside(E.segment(e).interpolate(0.5, normalized=True)) for e in E.edges):
        return False
    return not any(strictly_inside(E.triangle_polygon(t).centroid) for t in E.triangles)


def validate_annotations(E: CellComplex) -> None:
    for c in E.declared_cycles:
        if not c.hole:
            continue
        if c.is_degenerate:
            raise MalformedComplexError(f"hole {c.name} needs at least three vertices")
        if not interior_is_empty(E, c):
            raise MalformedComplexError(f"hole {c.name} has cells in its interior")


# ------------------------
# Vortex
# ------------------------
@dataclass(frozen=True)
class Vortex:
    """Cycles ordered innermost to outermost, each nested in the next."""
    cycles: Tuple[FilledCycle, ...]

    def __len__(self) -> int:
        return len(self.cycles)

    @property
    def innermost(self) -> FilledCycle:
        return self.cycles[0]

    @property
    def outermost(self) -> FilledCycle:
        return self.cycles[-1]


def _degenerate_side(d: FilledCycle, p: FilledCycle, tol: float) -> str:
    locations = [point_in_cycle(q, p, tol) for q in d.coords]
    if all(loc == PointLocation.ON_BOUNDARY for loc in locations):
        return "on"
    region = d.region()
    if region.disjoint(p.polygon) or region.touches(p.polygon):
        return "outside"
    if p.polygon.covers(region):
        return "inside"
    return "mixed"


def nests_within(a: FilledCycle, b: FilledCycle, tol: Optional[float] = None) -> bool:
    """Nesting that also admits a degenerate a lying in the closed region of b."""
    if not a.is_degenerate:
        return is_nested(a, b, tol)
    if b.is_degenerate:
        return False
    return _degenerate_side(a, b, get_tolerance(tol)) == "inside"


def build_vortex(
    cycles: Iterable[FilledCycle],
    *,
    allow_concentric: bool = True,
    tol: Optional[float] = None,
) -> Vortex:
    """
    Order the cycles into a nesting chain. Polygonal cycles are chained by
    area; each degenerate cycle goes into the gap between the last polygon it
    lies outside of and the first polygon that contains it.
    """
    tol = get_tolerance(tol)
    cycles = list(cycles)
    if not cycles:
        raise NotAVortexError("a vortex needs at least one cycle")
    polygons = sorted((c for c in cycles if not c.is_degenerate), key=lambda c: (c.polygon.area, c.boundary))
    degenerate = [c for c in cycles if c.is_degenerate]

    for inner, outer in zip(polygons, polygons[1:]):
        if not is_nested(inner, outer, tol):
            raise NotAVortexError(f"cycles {inner.name} and {outer.name} are not nested", pair=(inner, outer))
        if not allow_concentric and inner.polygon.centroid.distance(outer.polygon.centroid) <= tol:
            raise NotAVortexError(f"cycles {inner.name} and {outer.name} are concentric", pair=(inner, outer))

    slots: dict[int, FilledCycle] = {}
    for d in degenerate:
        sides = [_degenerate_side(d, p, tol) for p in polygons]
        for p, side in zip(polygons, sides):
            if side in ("on", "mixed"):
                raise NotAVortexError(f"cycle {d.name} is neither inside nor outside {p.name}", pair=(d, p))
        rank = sides.count("outside")
        if sides != ["outside"] * rank + ["inside"] * (len(sides) - rank):
            raise NotAVortexError(f"cycle {d.name} does not fit the nesting chain", pair=(d, polygons[rank]))
        if rank and d.region().distance(polygons[rank - 1].polygon) > tol:
            raise NotAVortexError(f"cycle {d.name} is not attached to {polygons[rank - 1].name}", pair=(d, polygons[rank - 1]))
        if rank in slots:
            raise NotAVortexError(f"cycles {slots[rank].name} and {d.name} share a nesting gap", pair=(slots[rank], d))
        slots[rank] = d

    chain: List[FilledCycle] = []
    for r in range(len(polygons) + 1):
        if r in slots:
            chain.append(slots[r])
        if r < len(polygons):
            chain.append(polygons[r])
    logger.debug("vortex of %d cycles: %s", len(chain), ", ".join(c.name for c in chain))
    return Vortex(tuple(chain))


# ------------------------
# Shape
# ------------------------
@dataclass(frozen=True)
class Shape:
    boundary_cycle: FilledCycle
    holes: Tuple[FilledCycle, ...] = ()
    nerve: Optional["VortexNerve"] = field(default=None, compare=False)

    @property
    def region(self) -> BaseGeometry:
        region: BaseGeometry = self.boundary_cycle.polygon
        for h in self.holes:
            region = region.difference(h.polygon)
        return region


def extract_shape(E: CellComplex, tol: Optional[float] = None) -> Shape:
    """
    The single outer boundary cycle of E, the holes inside it, and the vortex
    nerve its cycles form when they form one.
    """
    from .nerves import vortex_nerve

    tol = get_tolerance(tol)
    E = closure(E)
    region = E.filled_region
    if region.is_empty:
        raise NotAShapeError("the complex bounds no region")
    if region.geom_type != "Polygon":
        raise NotAShapeError(f"the complex has {len(region.geoms)} separate outer components")

    found, hole_cycles = complex_cycles(E)
    outer = next(
        (c for c in found if not c.is_degenerate and abs(c.polygon.area - region.area) <= tol and c.polygon.covers(region)),
        None,
    )
    if outer is None:
        exterior = orient(region, 1.0).exterior
        by_xy = {E.point(v): v for v in E.vertex_ids}
        try:
            ids = [by_xy[xy] for xy in list(exterior.coords)[:-1]]
        except KeyError as exc:
            raise NotAShapeError(f"outer boundary point {exc.args[0]} is not a vertex") from exc
        outer = FilledCycle.on(E, _rotate_to_min(ids), label="boundary")

    holes = tuple(h for h in hole_cycles if is_nested(h, outer, tol))
    members, enclosed = nerve_cycles(E)
    try:
        nerve = vortex_nerve(members, E.attached_edges, enclosed)
    except NotANerveError as exc:
        logger.debug("shape %s carries no vortex nerve: %s", outer.name, exc)
        nerve = None
    return Shape(boundary_cycle=outer, holes=holes, nerve=nerve)


def cycle_complex(E: CellComplex, c: FilledCycle) -> CellComplex:
    """The closed sub-collection of E occupied by the boundary of c."""
    return closure(E.subcomplex(vertex_ids=c.vertex_ids, edges=c.edges()))
