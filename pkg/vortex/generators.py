# vortex/generators.py
"""
Seeded generators for test and sweep inputs.

Every generator draws from one numpy Generator seeded by the caller, so the
same (kind, size, seed) always produces the same document.
"""
from __future__ import annotations

import itertools
import logging
import math
from functools import reduce
from typing import List, Optional, Union

import numpy as np
from django.conf import settings
from scipy.spatial import Delaunay, QhullError
from shapely.geometry import Point

from .betti import Disk
from .cell_complex import CellComplex, Edge, Vertex
from .choices import GenerateKind
from .cycles import FilledCycle, find_cycles, interior_is_empty
from .exceptions import EmbeddingError, GeneratorSizeError, MalformedComplexError

logger = logging.getLogger(__name__)

MAX_NESTED_HOLES = 3
MAX_ATTEMPTS = 200


def _max_vertices() -> int:
    return int(getattr(settings, "VORTEX_GENERATE_MAX_VERTICES", 200))


# ------------------------
# Random planar complexes
# ------------------------
def random_planar(
    size: int,
    rng: np.random.Generator,
    *,
    extent: float = 10.0,
    edge_keep: float = 0.7,
    fill: float = 0.2,
    hole: float = 0.35,
) -> CellComplex:
    """
    `size` random vertices, a random subset of their Delaunay edges, some of
    the triangles whose three edges survived, and hole flags on some of the
    empty faces.
    """
    if size < 1 or size > _max_vertices():
        raise GeneratorSizeError(f"random-planar size must be between 1 and {_max_vertices()}, got {size}")

    for attempt in range(MAX_ATTEMPTS):
        pts = np.round(rng.uniform(0.0, extent, size=(size, 2)), 6)
        if len(np.unique(pts, axis=0)) < size:
            continue
        vertices = [Vertex(i, float(x), float(y)) for i, (x, y) in enumerate(pts)]
        if size < 3:
            edges = [(0, 1)] if size == 2 else []
            return CellComplex.build(vertices, edges)
        try:
            simplices = Delaunay(pts).simplices
        except QhullError:
            continue

        candidates = sorted({Edge(int(a), int(b)) for s in simplices for a, b in itertools.combinations(s, 2)})
        keep = rng.random(len(candidates)) < edge_keep
        kept = {e for e, k in zip(candidates, keep) if k}
        triangles = [
            tuple(int(v) for v in s) for s in sorted(map(tuple, simplices))
            if all(Edge(int(a), int(b)) in kept for a, b in itertools.combinations(s, 2)) and rng.random() < fill
        ]
        try:
            cx = CellComplex.build(vertices, kept, triangles)
        except (EmbeddingError, MalformedComplexError) as exc:
            logger.debug("random-planar attempt %d rejected: %s", attempt, exc)
            continue

        empty_faces = [c for c in find_cycles(cx) if interior_is_empty(cx, c)]
        flags = rng.random(len(empty_faces)) < hole
        holes = [
            FilledCycle.on(cx, c.boundary, hole=True, label=f"hole{i}")
            for i, c in enumerate(c for c, f in zip(empty_faces, flags) if f)
        ]
        return cx.with_annotations(holes)
    raise GeneratorSizeError(f"no planar complex of {size} vertices after {MAX_ATTEMPTS} draws")


# ------------------------
# Nested cycles
# ------------------------
def nested_cycles(k: int, rng: np.random.Generator, *, holes: int = 0, attached: int = 0) -> CellComplex:
    """
    k concentric regular polygons (same vertex count, same rotation), `attached`
    radial edges between consecutive polygons, and `holes` small squares inside
    the innermost polygon. The polygons are declared as cycles and the holes as
    hole cycles; attached edges are annotated, not declared as cycles.
    """
    if k < 1:
        raise GeneratorSizeError("nested-cycles needs at least one cycle")
    if not 0 <= holes <= MAX_NESTED_HOLES:
        raise GeneratorSizeError(f"nested-cycles places 0 to {MAX_NESTED_HOLES} holes, got {holes}")
    if attached < 0 or (attached and k == 1):
        raise GeneratorSizeError("attached edges need at least two cycles")

    m = int(rng.integers(4, 9))
    if attached:
        m = max(m, math.ceil(attached / (k - 1)))
    if k * m + 4 * holes > _max_vertices():
        raise GeneratorSizeError(f"{k} cycles of {m} vertices exceed {_max_vertices()} vertices")

    cx, cy = (float(v) for v in np.round(rng.uniform(-1.0, 1.0, size=2), 3))
    theta0 = float(rng.uniform(0.0, 2 * math.pi / m))
    r0 = float(rng.uniform(1.0, 1.5))
    radii = r0 + np.concatenate([[0.0], np.cumsum(rng.uniform(0.5, 1.0, size=k - 1))])

    vertices: List[Vertex] = []
    edges: List[Edge] = []
    cycles: List[FilledCycle] = []
    for j, r in enumerate(radii):
        ids = [j * m + s for s in range(m)]
        for s, vid in enumerate(ids):
            angle = theta0 + 2 * math.pi * s / m
            vertices.append(Vertex(vid, round(cx + r * math.cos(angle), 6), round(cy + r * math.sin(angle), 6)))
        edges += [Edge(ids[s], ids[(s + 1) % m]) for s in range(m)]
    table = {v.id: v for v in vertices}
    for j in range(k):
        cycles.append(FilledCycle.on(table, [j * m + s for s in range(m)], label=f"ring{j}"))

    half = r0 / 8
    offsets = [0.0] if holes == 1 else list(np.linspace(-r0 / 2, r0 / 2, holes))
    for i, off in enumerate(offsets[:holes]):
        base = k * m + 4 * i
        ox = cx + float(off)
        corners = [(ox - half, cy - half), (ox + half, cy - half), (ox + half, cy + half), (ox - half, cy + half)]
        for q, (x, y) in enumerate(corners):
            table[base + q] = Vertex(base + q, round(x, 6), round(y, 6))
        ids = [base + q for q in range(4)]
        edges += [Edge(ids[q], ids[(q + 1) % 4]) for q in range(4)]
        cycles.append(FilledCycle.on(table, ids, hole=True, label=f"hole{i}"))

    spokes: List[Edge] = []
    if attached:
        orders = [rng.permutation(m) for _ in range(k - 1)]
        for t in range(attached):
            gap = t % (k - 1)
            s = int(orders[gap][t // (k - 1)])
            spokes.append(Edge(gap * m + s, (gap + 1) * m + s))

    logger.debug("nested-cycles: k=%d m=%d holes=%d attached=%d", k, m, holes, attached)
    return CellComplex.build(table.values(), edges + spokes, declared_cycles=cycles, attached_edges=spokes)


# ------------------------
# Disk families
# ------------------------
def _robust_family(disks: List[Disk], margin: float) -> bool:
    """No near-tangent pair, and every subset's emptiness survives growing and shrinking by margin/2."""
    for a, b in itertools.combinations(disks, 2):
        d = math.hypot(a.x - b.x, a.y - b.y)
        if abs(d - (a.r + b.r)) < margin or abs(d - abs(a.r - b.r)) < margin:
            return False
    delta = margin / 2
    grown = [Point(d.x, d.y).buffer(d.r + delta, quad_segs=64) for d in disks]
    shrunk = [Point(d.x, d.y).buffer(d.r - delta, quad_segs=64) for d in disks]
    for size in range(3, len(disks) + 1):
        for subset in itertools.combinations(range(len(disks)), size):
            big = reduce(lambda g, h: g.intersection(h), (grown[i] for i in subset))
            small = reduce(lambda g, h: g.intersection(h), (shrunk[i] for i in subset))
            if big.is_empty != small.is_empty:
                return False
    return True


def disk_family(size: int, rng: np.random.Generator, *, margin: float = 0.1) -> List[Disk]:
    ceiling = int(getattr(settings, "VORTEX_GENERATE_MAX_DISKS", 6))
    if size < 1 or size > ceiling:
        raise GeneratorSizeError(f"disk-family size must be between 1 and {ceiling}, got {size}")
    for _ in range(MAX_ATTEMPTS * 5):
        centres = np.round(rng.uniform(0.0, 4.0, size=(size, 2)), 4)
        radii = np.round(rng.uniform(0.5, 1.5, size=size), 4)
        disks = [Disk(float(x), float(y), float(r)) for (x, y), r in zip(centres, radii)]
        if _robust_family(disks, margin):
            return disks
    raise GeneratorSizeError(f"no well-separated family of {size} disks found")


def generate(
    kind: str,
    size: int,
    seed: Optional[int] = None,
    *,
    holes: int = 0,
    attached: int = 0,
) -> Union[CellComplex, List[Disk]]:
    kind = GenerateKind(kind)
    seed = int(seed if seed is not None else getattr(settings, "VORTEX_NERVE_SEED", 0))
    rng = np.random.default_rng(seed)
    if kind == GenerateKind.RANDOM_PLANAR:
        return random_planar(size, rng)
    if kind == GenerateKind.NESTED_CYCLES:
        return nested_cycles(size, rng, holes=holes, attached=attached)
    return disk_family(size, rng)
