# vortex/nerves.py
"""
Vortex nerves and Edelsbrunner-Harer nerves.

A vortex nerve is a set of filled cycles with a common part, tied together
by attached edges, plus the holes it encloses. An Edelsbrunner-Harer nerve
is the abstract simplicial complex of index sets whose members meet.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Callable, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
from django.conf import settings
from shapely.geometry import Point
from shapely.geometry.base import BaseGeometry

from .cell_complex import CellComplex, Edge, Vertex, _as_edge, closure, complex_intersection, get_tolerance
from .choices import NerveCase
from .cycles import FilledCycle, build_vortex, is_nested, nerve_cycles
from .exceptions import FamilySizeError, NotANerveError, NotAVortexError, NotPathConnectedError
from .reports import ConditionReport

logger = logging.getLogger(__name__)


# ------------------------
# Vortex nerve
# ------------------------
@dataclass(frozen=True)
class VortexNerve:
    cycles: Tuple[FilledCycle, ...]
    attached_edges: Tuple[Edge, ...] = ()
    holes: Tuple[FilledCycle, ...] = ()
    nested: bool = field(default=False, compare=False)

    @property
    def cycle_count(self) -> int:
        return len(self.cycles)

    def to_complex(self) -> CellComplex:
        """The cells the nerve occupies, annotated with its cycles and attached edges."""
        table: dict[int, Vertex] = {}
        for c in self.cycles + self.holes:
            for vid, (x, y) in zip(c.boundary, c.coords):
                table.setdefault(vid, Vertex(vid, x, y))
        edges = {e for c in self.cycles + self.holes for e in c.edges()} | set(self.attached_edges)
        return CellComplex.build(
            table.values(),
            edges,
            declared_cycles=self.cycles + self.holes,
            attached_edges=self.attached_edges,
        )


def _homes(v: int, cycles: Sequence[FilledCycle]) -> List[int]:
    return [i for i, c in enumerate(cycles) if v in c.vertex_ids]


def vortex_nerve(
    cycles: Iterable[FilledCycle],
    attached_edges: Iterable[Union[Edge, Sequence[int]]] = (),
    holes: Iterable[FilledCycle] = (),
    tol: Optional[float] = None,
) -> VortexNerve:
    """
    Validate a vortex nerve: a nonempty set of filled cycles whose common part
    is nonempty, attached edges each joining two distinct cycles, and holes
    each lying inside one of the cycles. A nesting chain of filled cycles has
    its innermost member as common part.
    """
    tol = get_tolerance(tol)
    cycles = tuple(cycles)
    attached = tuple(sorted(_as_edge(e) for e in attached_edges))
    holes = tuple(holes)
    if not cycles:
        raise NotANerveError("a vortex nerve needs at least one filled cycle")

    links = nx.Graph()
    links.add_nodes_from(range(len(cycles)))
    for e in attached:
        pairs = [(i, j) for i in _homes(e.a, cycles) for j in _homes(e.b, cycles) if i != j]
        if not pairs:
            raise NotANerveError(f"attached edge {e} does not join two distinct cycles")
        links.add_edges_from(pairs)

    nested = False
    if all(c.filled for c in cycles):
        try:
            chain = build_vortex(cycles, tol=tol).cycles
            nested = True
        except NotAVortexError as exc:
            logger.debug("cycles are not a nesting chain: %s", exc)
    if nested:
        cycles = chain
        links.add_edges_from((i, i + 1) for i in range(len(cycles) - 1))
    else:
        extents = [c.extent() for c in cycles]
        for i, j in itertools.combinations(range(len(cycles)), 2):
            if extents[i].distance(extents[j]) > tol:
                raise NotANerveError(f"cycles {cycles[i].name} and {cycles[j].name} do not intersect")
            links.add_edge(i, j)
        common = reduce(lambda g, h: g.intersection(h), extents)
        if common.is_empty and len(cycles) > 1:
            raise NotANerveError("the cycles share no common point")

    if not nx.is_connected(links):
        raise NotPathConnectedError(f"the cycles fall into {nx.number_connected_components(links)} separate pieces")

    for h in holes:
        if not h.hole or h.is_degenerate:
            raise NotANerveError(f"cycle {h.name} is not a hole")
        if not any(is_nested(h, c, tol) for c in cycles):
            raise NotANerveError(f"hole {h.name} lies outside every nerve cycle")

    logger.debug(
        "vortex nerve: %d cycles, %d attached edges, %d holes", len(cycles), len(attached), len(holes)
    )
    return VortexNerve(cycles=cycles, attached_edges=attached, holes=holes, nested=nested)


@dataclass(frozen=True)
class NerveCertificate:
    holds: bool
    case: Optional[NerveCase] = None
    reason: str = ""
    nerve: Optional[VortexNerve] = field(default=None, compare=False)

    def __bool__(self) -> bool:
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return f"vortex nerve ({self.case.value})" + (f": {self.reason}" if self.reason else "")
        return f"not a vortex nerve: {self.reason}"

    def as_dict(self) -> dict:
        return {
            "is_vortex_nerve": self.holds,
            "case": self.case.value if self.case else None,
            "reason": self.reason,
        }


def _single_cycle(E: CellComplex) -> bool:
    if E.triangles or len(E.vertex_ids) < 3 or len(E.vertex_ids) != len(E.edges):
        return False
    g = nx.Graph()
    g.add_nodes_from(E.vertex_ids)
    g.add_edges_from((e.a, e.b) for e in E.edges)
    return nx.is_connected(g) and all(d == 2 for _, d in g.degree())


def _loose_cells(E: CellComplex, cycles: Sequence[FilledCycle], attached: Iterable[Edge]) -> Optional[str]:
    """First cell that is on no cycle, no attached edge and inside no filled cycle."""
    on_cycles = {e for c in cycles for e in c.edges()} | set(attached)
    on_vertices = {v for c in cycles for v in c.vertex_ids} | {v for e in attached for v in e}
    regions = [c.polygon for c in cycles if c.filled and not c.is_degenerate]

    def covered(g: BaseGeometry) -> bool:
        return any(r.covers(g) for r in regions)

    for v in sorted(E.vertex_ids - on_vertices):
        if not covered(Point(E.point(v))):
            return f"vertex {v}"
    for e in sorted(E.edges - on_cycles):
        if not covered(E.segment(e)):
            return f"edge {e}"
    for t in sorted(E.triangles):
        if not covered(E.triangle_polygon(t)):
            return f"triangle {t}"
    return None


def _bridging_edges(E: CellComplex, cycles: Sequence[FilledCycle]) -> List[Edge]:
    on_cycles = {e for c in cycles for e in c.edges()}
    return [
        e for e in sorted(E.edges - on_cycles)
        if any(i != j for i in _homes(e.a, cycles) for j in _homes(e.b, cycles))
    ]


def is_vortex_nerve(E: CellComplex, tol: Optional[float] = None) -> NerveCertificate:
    """
    Decide whether E is a vortex nerve. The five elementary cases are tried
    first; anything else must decompose into filled cycles with a common part
    and attached edges.
    """
    E = closure(E)
    if E.is_empty:
        return NerveCertificate(False, reason="the complex is empty")
    nv, ne, nt = len(E.vertex_ids), len(E.edges), len(E.triangles)
    if nv == 1 and ne == 0:
        return NerveCertificate(True, NerveCase.VERTEX)
    if nv == 2 and ne == 1 and nt == 0:
        return NerveCertificate(True, NerveCase.EDGE)
    if nv == 3 and ne == 3 and nt == 1:
        return NerveCertificate(True, NerveCase.TRIANGLE)

    cycles, holes = nerve_cycles(E)
    if not holes and _single_cycle(E) and all(not c.is_degenerate for c in cycles) and len(cycles) <= 1:
        return NerveCertificate(True, NerveCase.CYCLE)

    if not cycles:
        return NerveCertificate(False, reason="the complex has no filled cycle")

    bridges = sorted(set(E.attached_edges) | set(_bridging_edges(E, cycles)))
    loose = _loose_cells(E, list(cycles) + list(holes), bridges)
    if loose is not None:
        return NerveCertificate(False, reason=f"{loose} is on no cycle and no attached edge")

    try:
        nerve = vortex_nerve(cycles, bridges, holes, tol)
    except NotANerveError as exc:
        return NerveCertificate(False, reason=str(exc))

    polygonal = [c for c in cycles if not c.is_degenerate]
    if len(cycles) == 1 and polygonal and not holes and not bridges:
        return NerveCertificate(True, NerveCase.CYCLE, f"filled cycle {cycles[0].name}", nerve)
    if len(cycles) == 2 and len(polygonal) == 2 and not holes and nerve.nested:
        inner, outer = nerve.cycles
        return NerveCertificate(True, NerveCase.NESTED_PAIR, f"{inner.name} inside {outer.name}", nerve)
    return NerveCertificate(
        True,
        NerveCase.DECOMPOSITION,
        f"{len(nerve.cycles)} cycles, {len(nerve.attached_edges)} attached edges, {len(nerve.holes)} holes",
        nerve,
    )


# ------------------------
# CW collections of vortex nerves
# ------------------------
def cw_from_collection(K: Sequence[CellComplex], probe: Any = None, tol: Optional[float] = None) -> ConditionReport:
    """
    Closure-finiteness plus nerve-valued intersections. With a probe the
    intersections are descriptive, otherwise spatial. Empty intersections
    are exempt.
    """
    members = list(K)
    kind = f"descriptive ({probe.name})" if probe is not None else "spatial"
    report = ConditionReport(title=f"CW topology on vortex nerves, {kind} intersections")
    if not members:
        report.fail("collection", "K is empty")
        return report

    keys = {m.cell_key for m in members}
    for i, m in enumerate(members):
        cl = closure(m)
        report.record(f"containment[{i}]", cl.cell_key in keys, f"cl({m.label()})")

    if probe is not None:
        from .proximity import descriptive_intersection

    for i, j in itertools.combinations(range(len(members)), 2):
        if probe is not None:
            parts = sorted(descriptive_intersection([members[i]], [members[j]], probe), key=CellComplex.label)
        else:
            meet = complex_intersection(members[i], members[j], tol)
            parts = [] if meet.is_empty else [meet]
        if not parts:
            report.ok(f"intersection[{i},{j}]", "empty (exempt)")
            continue
        for part in parts:
            cert = is_vortex_nerve(part, tol)
            report.record(f"intersection[{i},{j}]", cert.holds, f"{part.label()}: {cert.describe()}")
    return report


# ------------------------
# Edelsbrunner-Harer nerve
# ------------------------
@dataclass(frozen=True)
class Nerve:
    """Index-set simplices over a family, listed lexicographically."""
    members: Tuple[Any, ...]
    simplices: Tuple[Tuple[int, ...], ...]

    def __contains__(self, simplex: Iterable[int]) -> bool:
        return tuple(sorted(simplex)) in set(self.simplices)

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        return iter(self.simplices)

    def __len__(self) -> int:
        return len(self.simplices)

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def simplices_of_dim(self, k: int) -> List[Tuple[int, ...]]:
        return [s for s in self.simplices if len(s) == k + 1]

    def skeleton(self, k: int) -> "Nerve":
        return Nerve(self.members, tuple(s for s in self.simplices if len(s) <= k + 1))

    def is_downward_closed(self) -> bool:
        present = set(self.simplices)
        return all(
            face in present
            for s in self.simplices if len(s) > 1
            for face in itertools.combinations(s, len(s) - 1)
        )


def _as_part(member: Any) -> Any:
    if isinstance(member, FilledCycle):
        return member.extent()
    if isinstance(member, (CellComplex, BaseGeometry, tuple)):
        return member
    if isinstance(member, (set, frozenset)):
        return frozenset(member)
    if hasattr(member, "region"):
        return member.region()
    raise TypeError(f"cannot intersect family member of type {type(member).__name__}")


def _meet(a: Any, b: Any) -> Any:
    if isinstance(a, CellComplex):
        return complex_intersection(a, b)
    if isinstance(a, frozenset):
        return a & b
    return a.intersection(b)


def _is_void(part: Any) -> bool:
    if part is None:
        return True
    if isinstance(part, (CellComplex, BaseGeometry)):
        return part.is_empty
    return not part


def eh_nerve(
    family: Iterable[Any],
    *,
    meet: Optional[Callable[[Any, Any], Any]] = None,
    max_family: Optional[int] = None,
) -> Nerve:
    """
    Nerve of a finite family. Candidates are grown level by level and only
    tried when every face already made it, so the cost follows the nerve's
    size rather than 2^|F|.
    """
    members = tuple(family)
    if not members:
        raise NotANerveError("the family is empty")
    limit = max_family if max_family is not None else int(getattr(settings, "VORTEX_NERVE_MAX_FAMILY", 20))
    if len(members) > limit:
        raise FamilySizeError(f"family of {len(members)} members exceeds the limit of {limit}")
    meet = meet or _meet
    parts = [_as_part(m) for m in members]
    n = len(parts)

    level = {(i,): p for i, p in enumerate(parts) if not _is_void(p)}
    found: List[Tuple[int, ...]] = []
    while level:
        found.extend(level)
        grown = {}
        for simplex in sorted(level):
            for j in range(simplex[-1] + 1, n):
                candidate = simplex + (j,)
                if any(candidate[:k] + candidate[k + 1:] not in level for k in range(len(candidate) - 1)):
                    continue
                joined = meet(level[simplex], parts[j])
                if not _is_void(joined):
                    grown[candidate] = joined
        level = grown
    logger.debug("nerve of %d members: %d simplices", n, len(found))
    return Nerve(members, tuple(sorted(found)))


def descriptive_nerve(family: Iterable[Any], probe: Any, *, max_family: Optional[int] = None) -> Nerve:
    """Index sets whose members all carry matching descriptions under `probe`."""
    members = tuple(family)
    tol = probe.tolerance
    descriptions = [(probe.describe(m),) for m in members]

    def agree(part: tuple, other: tuple) -> Optional[tuple]:
        d = other[0]
        return part + (d,) if all(d.matches(p, tol) for p in part) else None

    nerve = eh_nerve(descriptions, meet=agree, max_family=max_family)
    return Nerve(members, nerve.simplices)
