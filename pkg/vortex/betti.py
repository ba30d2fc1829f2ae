# vortex/betti.py
"""
Betti numbers.

Two flavours live here. The *counting* Betti numbers of complexes, shapes,
vortexes and vortex nerves (cells, cycles, holes), and ordinary mod-2
simplicial homology of small nerves, which the union-of-disks check
compares against a raster of the union itself.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import shapely
from django.conf import settings
from scipy import ndimage
from shapely.geometry import Point, Polygon
from shapely.geometry.base import BaseGeometry
from shapely.ops import unary_union

from .cell_complex import CellComplex
from .choices import BettiView
from .cycles import Shape, Vortex, build_vortex, complex_cycles, extract_shape, nerve_cycles
from .exceptions import BettiDomainError, UnsupportedDimensionError, VortexError
from .nerves import Nerve, VortexNerve, eh_nerve, vortex_nerve

logger = logging.getLogger(__name__)


# ------------------------
# Counting Betti numbers
# ------------------------
@dataclass(frozen=True)
class BettiReport:
    """
    b0 counts cells for a plain complex and attached edges otherwise, b1
    counts non-hole cycles and b2 counts holes. The derived totals are only
    set for the structure they belong to.
    """
    kind: str
    b0: int
    b1: int
    b2: int
    b_vtex: Optional[int] = None
    b_vnrv: Optional[int] = None
    b_sh: Optional[int] = None

    def as_dict(self) -> Dict[str, Any]:
        return {k: v for k, v in asdict(self).items() if v is not None}


def betti_numbers(x: Union[CellComplex, Shape, Vortex, VortexNerve], view: Optional[str] = None) -> BettiReport:
    if isinstance(x, Vortex):
        n = len(x)
        return BettiReport(kind=BettiView.VORTEX, b0=0, b1=n, b2=0, b_vtex=n)
    if isinstance(x, VortexNerve):
        b0, b1, b2 = len(x.attached_edges), len(x.cycles), len(x.holes)
        return BettiReport(kind=BettiView.VNRV, b0=b0, b1=b1, b2=b2, b_vnrv=b0 + b1 + b2)
    if isinstance(x, Shape):
        b2 = len(x.holes)
        if x.nerve is None:
            return BettiReport(kind=BettiView.SHAPE, b0=0, b1=1, b2=b2, b_sh=1 + b2)
        b0, b1 = len(x.nerve.attached_edges), len(x.nerve.cycles)
        total = b0 + b1 + b2
        return BettiReport(kind=BettiView.SHAPE, b0=b0, b1=b1, b2=b2, b_vnrv=total, b_sh=total)
    if not isinstance(x, CellComplex):
        raise TypeError(f"no Betti numbers for {type(x).__name__}")

    view = BettiView(view or BettiView.COMPLEX)
    if view == BettiView.SHAPE:
        return betti_numbers(extract_shape(x))
    if view == BettiView.VORTEX:
        return betti_numbers(build_vortex(nerve_cycles(x)[0]))
    if view == BettiView.VNRV:
        cycles, holes = nerve_cycles(x)
        return betti_numbers(vortex_nerve(cycles, x.attached_edges, holes))

    non_hole, holes = complex_cycles(x)
    return BettiReport(
        kind=BettiView.COMPLEX,
        b0=len(x.vertex_ids) + len(x.edges) + len(x.triangles),
        b1=len(non_hole),
        b2=len(holes),
    )


def vnrv_closed_form(k: int, n: int, e: int) -> int:
    """Betti total of a vortex nerve with k cycles, n holes and e attached edges."""
    if k < 1:
        raise BettiDomainError("a vortex nerve has at least one cycle")
    if n < 0 or e < 0:
        raise BettiDomainError("hole and attached-edge counts cannot be negative")
    return e + k + n


# ------------------------
# Mod-2 homology
# ------------------------
def gf2_rank(matrix: Any) -> int:
    m = (np.asarray(matrix, dtype=np.int64) % 2).astype(np.uint8)
    if m.ndim != 2 or 0 in m.shape:
        return 0
    rows, cols = m.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        pivots = np.nonzero(m[rank:, col])[0]
        if pivots.size == 0:
            continue
        p = rank + int(pivots[0])
        if p != rank:
            m[[rank, p]] = m[[p, rank]]
        hits = np.nonzero(m[:, col])[0]
        hits = hits[hits != rank]
        m[hits] ^= m[rank]
        rank += 1
    return rank


def boundary_matrix(faces: Sequence[Tuple[int, ...]], simplices: Sequence[Tuple[int, ...]]) -> np.ndarray:
    """Mod-2 boundary operator from `simplices` down to `faces` (rows are faces)."""
    index = {f: i for i, f in enumerate(faces)}
    d = np.zeros((len(faces), len(simplices)), dtype=np.uint8)
    for j, s in enumerate(simplices):
        for face in itertools.combinations(s, len(s) - 1):
            d[index[face], j] = 1
    return d


def _simplices_of(E: Union[Nerve, CellComplex, Iterable[Sequence[int]]]) -> List[Tuple[int, ...]]:
    if isinstance(E, (Nerve, CellComplex)):
        raw = E.simplices if isinstance(E, Nerve) else E.simplices()
    else:
        raw = E
    closed = set()
    for s in raw:
        s = tuple(sorted(s))
        if len(s) > 3:
            raise UnsupportedDimensionError(f"simplex {s} has dimension {len(s) - 1}; only dimensions up to 2 are supported")
        for k in range(1, len(s) + 1):
            closed.update(itertools.combinations(s, k))
    return sorted(closed)


def homology_betti(E: Union[Nerve, CellComplex, Iterable[Sequence[int]]]) -> Tuple[int, int]:
    """(h0, h1) of a simplicial complex of dimension at most 2, over GF(2)."""
    simplices = _simplices_of(E)
    by_dim = [[s for s in simplices if len(s) == k + 1] for k in range(3)]
    r1 = gf2_rank(boundary_matrix(by_dim[0], by_dim[1])) if by_dim[1] else 0
    r2 = gf2_rank(boundary_matrix(by_dim[1], by_dim[2])) if by_dim[2] else 0
    h0 = len(by_dim[0]) - r1
    h1 = len(by_dim[1]) - r1 - r2
    return h0, h1


# ------------------------
# Unions of closed disks
# ------------------------
@dataclass(frozen=True)
class Disk:
    x: float
    y: float
    r: float

    def __post_init__(self) -> None:
        if not (self.r > 0 and math.isfinite(self.r)):
            raise VortexError(f"disk radius must be positive, got {self.r}")
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise VortexError("disk centre must be finite")

    def region(self, quad_segs: int = 64) -> Polygon:
        return Point(self.x, self.y).buffer(self.r, quad_segs=quad_segs)


@dataclass(frozen=True)
class UnionBetti:
    h0: int
    h1: int
    resolution: int
    too_coarse: bool = False


def _region(member: Union[Disk, BaseGeometry]) -> BaseGeometry:
    return member.region() if isinstance(member, Disk) else member


def _raster_betti(regions: Sequence[BaseGeometry], resolution: int, min_pixels: int) -> UnionBetti:
    minx, miny, maxx, maxy = unary_union(regions).bounds
    extent = max(maxx - minx, maxy - miny)
    if extent == 0:
        # every member is the same single point
        return UnionBetti(h0=1, h1=0, resolution=resolution)
    step = extent / resolution
    pad = 2
    nx_ = int(math.ceil((maxx - minx) / step)) + 2 * pad
    ny_ = int(math.ceil((maxy - miny) / step)) + 2 * pad
    xs = minx + (np.arange(nx_) - pad + 0.5) * step
    ys = miny + (np.arange(ny_) - pad + 0.5) * step
    gx, gy = np.meshgrid(xs, ys)

    mask = np.zeros(gx.shape, dtype=bool)
    for g in regions:
        shapely.prepare(g)
        mask |= shapely.intersects_xy(g, gx, gy)

    fg, h0 = ndimage.label(mask, structure=np.ones((3, 3), dtype=int))
    bg, nbg = ndimage.label(~mask)
    border = set(np.unique(np.concatenate([bg[0, :], bg[-1, :], bg[:, 0], bg[:, -1]]))) - {0}
    inner = [lab for lab in range(1, nbg + 1) if lab not in border]

    sizes = list(np.bincount(fg.ravel())[1:]) if h0 else []
    if inner:
        bg_sizes = np.bincount(bg.ravel())
        sizes += [int(bg_sizes[lab]) for lab in inner]
    too_coarse = any(s < min_pixels for s in sizes)
    return UnionBetti(h0=int(h0), h1=len(inner), resolution=resolution, too_coarse=too_coarse)


def union_betti(
    family: Sequence[Union[Disk, BaseGeometry]],
    resolution: Optional[int] = None,
    *,
    refine: bool = True,
) -> UnionBetti:
    """
    Components and bounded holes of the union of a family, read off a raster.
    The foreground uses 8-connectivity and the background 4-connectivity.
    A feature smaller than VORTEX_RASTER_MIN_FEATURE_PIXELS marks the result
    too coarse; with `refine` the resolution doubles until it is not, or
    until VORTEX_RASTER_MAX_RESOLUTION.
    """
    regions = [_region(m) for m in family]
    if not regions:
        return UnionBetti(h0=0, h1=0, resolution=0)
    resolution = int(resolution or getattr(settings, "VORTEX_RASTER_RESOLUTION", 512))
    ceiling = int(getattr(settings, "VORTEX_RASTER_MAX_RESOLUTION", 4096))
    min_pixels = int(getattr(settings, "VORTEX_RASTER_MIN_FEATURE_PIXELS", 9))

    result = _raster_betti(regions, resolution, min_pixels)
    while refine and result.too_coarse and result.resolution * 2 <= ceiling:
        logger.debug("raster at %d px too coarse, refining", result.resolution)
        result = _raster_betti(regions, result.resolution * 2, min_pixels)
    if result.too_coarse:
        logger.warning("union raster still too coarse at %d px", result.resolution)
    return result


@dataclass(frozen=True)
class HomotopyCheck:
    nerve_betti: Tuple[int, int]
    union: UnionBetti

    @property
    def agrees(self) -> bool:
        return self.nerve_betti == (self.union.h0, self.union.h1)

    def describe(self) -> str:
        return (
            f"nerve (h0,h1)={self.nerve_betti}, union (h0,h1)=({self.union.h0},{self.union.h1}) "
            f"at {self.union.resolution} px"
        )


def check_union_homotopy(family: Sequence[Union[Disk, BaseGeometry]], resolution: Optional[int] = None) -> HomotopyCheck:
    """Compare the homology of the 2-skeleton of the nerve with that of the union."""
    regions = [_region(m) for m in family]
    nerve = eh_nerve(regions).skeleton(2)
    return HomotopyCheck(nerve_betti=homology_betti(nerve), union=union_betti(regions, resolution))
