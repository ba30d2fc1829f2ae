# vortex/complex_io.py
"""
Reading and writing .cx documents.

A .cx file is a JSON object:

    {
      "vertices": [{"id": 0, "x": 2.0, "y": 2.0}, ...],
      "edges": [[0, 1], ...],
      "triangles": [[0, 1, 2], ...],
      "filled_cycles": [{"boundary": [0, 1, 2], "filled": true, "hole": false, "label": "cycA"}],
      "attached_edges": [[4, 7], ...]
    }

Only "vertices" is required. Ids must be declared before they are used and
unknown keys are rejected. Disk families use {"disks": [{"x", "y", "r"}]}.
"""
from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

from .betti import Disk
from .cell_complex import CellComplex, Vertex
from .cycles import FilledCycle
from .exceptions import ComplexParseError, EmbeddingError, MalformedComplexError, VortexError

logger = logging.getLogger(__name__)

FIGURES_DIR = Path(__file__).resolve().parent / "figures"
# Short names the bundled figures also answer to.
FIGURE_ALIASES = {
    "fig1i.cx": "touching_cycles.cx",
    "fig1ii.cx": "nested_vortex.cx",
}

COMPLEX_KEYS = ("vertices", "edges", "triangles", "filled_cycles", "attached_edges")
VERTEX_KEYS = ("id", "x", "y")
CYCLE_KEYS = ("boundary", "filled", "hole", "label")
DISK_KEYS = ("x", "y", "r")


def resolve_input(path: Union[str, Path]) -> Path:
    """Existing path as given, else a bundled figure of that name."""
    p = Path(path)
    if p.exists():
        return p
    bundled = FIGURES_DIR / FIGURE_ALIASES.get(p.name, p.name)
    if bundled.exists():
        logger.debug("using bundled figure %s", bundled)
        return bundled
    return p


def _read_json(path: Union[str, Path]) -> Any:
    p = resolve_input(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ComplexParseError(f"cannot read file: {exc.strerror or exc}", locus=str(path)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ComplexParseError(exc.msg, locus=f"line {exc.lineno} column {exc.colno}") from exc


# ------------------------
# Field helpers
# ------------------------
def _check_keys(obj: Any, allowed: Sequence[str], locus: str) -> Dict[str, Any]:
    if not isinstance(obj, dict):
        raise ComplexParseError("expected an object", locus=locus)
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise ComplexParseError(f"unknown key '{unknown[0]}'", locus=locus)
    return obj


def _list(obj: Any, locus: str) -> List[Any]:
    if not isinstance(obj, list):
        raise ComplexParseError("expected a list", locus=locus)
    return obj


def _number(value: Any, locus: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ComplexParseError(f"expected a finite number, got {value!r}", locus=locus)
    return float(value)


def _flag(value: Any, locus: str) -> bool:
    if not isinstance(value, bool):
        raise ComplexParseError(f"expected true or false, got {value!r}", locus=locus)
    return value


def _ids(value: Any, count: int, known: Dict[int, Vertex], locus: str) -> List[int]:
    items = _list(value, locus)
    if count and len(items) != count:
        raise ComplexParseError(f"expected {count} vertex ids, got {len(items)}", locus=locus)
    out = []
    for k, vid in enumerate(items):
        if isinstance(vid, bool) or not isinstance(vid, int):
            raise ComplexParseError(f"expected a vertex id, got {vid!r}", locus=f"{locus}[{k}]")
        if vid not in known:
            raise ComplexParseError(f"vertex {vid} is not declared", locus=f"{locus}[{k}]")
        out.append(vid)
    return out


# ------------------------
# Complexes
# ------------------------
def load_complex(doc: Any) -> CellComplex:
    doc = _check_keys(doc, COMPLEX_KEYS, "document")
    if "vertices" not in doc:
        raise ComplexParseError("missing required key 'vertices'", locus="document")

    vertices = _list(doc["vertices"], "vertices")
    if not vertices:
        raise ComplexParseError("a complex needs at least one vertex", locus="vertices")

    table: Dict[int, Vertex] = {}
    for i, item in enumerate(vertices):
        locus = f"vertices[{i}]"
        item = _check_keys(item, VERTEX_KEYS, locus)
        missing = [k for k in VERTEX_KEYS if k not in item]
        if missing:
            raise ComplexParseError(f"missing key '{missing[0]}'", locus=locus)
        vid = item["id"]
        if isinstance(vid, bool) or not isinstance(vid, int) or vid < 0:
            raise ComplexParseError(f"vertex id must be a non-negative integer, got {vid!r}", locus=f"{locus}.id")
        if vid in table:
            raise ComplexParseError(f"duplicate vertex id {vid}", locus=locus)
        table[vid] = Vertex(vid, _number(item["x"], f"{locus}.x"), _number(item["y"], f"{locus}.y"))

    edges = []
    seen = set()
    for i, item in enumerate(_list(doc.get("edges", []), "edges")):
        a, b = _ids(item, 2, table, f"edges[{i}]")
        if a == b:
            raise ComplexParseError(f"edge joins vertex {a} to itself", locus=f"edges[{i}]")
        if frozenset((a, b)) in seen:
            raise ComplexParseError(f"duplicate edge {a}-{b}", locus=f"edges[{i}]")
        seen.add(frozenset((a, b)))
        edges.append((a, b))

    triangles = [_ids(item, 3, table, f"triangles[{i}]") for i, item in enumerate(_list(doc.get("triangles", []), "triangles"))]

    cycles = []
    for i, item in enumerate(_list(doc.get("filled_cycles", []), "filled_cycles")):
        locus = f"filled_cycles[{i}]"
        item = _check_keys(item, CYCLE_KEYS, locus)
        if "boundary" not in item:
            raise ComplexParseError("missing key 'boundary'", locus=locus)
        boundary = _ids(item["boundary"], 0, table, f"{locus}.boundary")
        label = item.get("label", "")
        if not isinstance(label, str):
            raise ComplexParseError("label must be a string", locus=f"{locus}.label")
        filled = _flag(item.get("filled", True), f"{locus}.filled")
        hole = _flag(item.get("hole", False), f"{locus}.hole")
        try:
            cycles.append(FilledCycle.on(table, boundary, filled=filled, hole=hole, label=label))
        except MalformedComplexError as exc:
            raise ComplexParseError(str(exc), locus=locus) from exc

    attached = [_ids(item, 2, table, f"attached_edges[{i}]") for i, item in enumerate(_list(doc.get("attached_edges", []), "attached_edges"))]

    try:
        return CellComplex.build(table.values(), edges, triangles, cycles, attached)
    except EmbeddingError as exc:
        raise ComplexParseError(str(exc), locus="edges") from exc
    except MalformedComplexError as exc:
        raise ComplexParseError(str(exc), locus="complex") from exc


def parse_complex(path: Union[str, Path]) -> CellComplex:
    cx = load_complex(_read_json(path))
    logger.info("loaded %s: %s", path, cx.label() if len(cx) < 12 else f"{len(cx)} cells")
    return cx


def dump_complex(E: CellComplex) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "vertices": [{"id": v.id, "x": v.x, "y": v.y} for v in E.vertices],
        "edges": [[e.a, e.b] for e in sorted(E.edges)],
    }
    if E.triangles:
        doc["triangles"] = [[t.a, t.b, t.c] for t in sorted(E.triangles)]
    if E.declared_cycles:
        doc["filled_cycles"] = []
        for c in E.declared_cycles:
            entry: Dict[str, Any] = {"boundary": list(c.boundary), "filled": c.filled, "hole": c.hole}
            if c.label:
                entry["label"] = c.label
            doc["filled_cycles"].append(entry)
    if E.attached_edges:
        doc["attached_edges"] = [[e.a, e.b] for e in sorted(E.attached_edges)]
    return doc


# ------------------------
# Disk families
# ------------------------
def load_disk_family(doc: Any) -> List[Disk]:
    doc = _check_keys(doc, ("disks",), "document")
    disks = []
    for i, item in enumerate(_list(doc.get("disks", []), "disks")):
        locus = f"disks[{i}]"
        item = _check_keys(item, DISK_KEYS, locus)
        missing = [k for k in DISK_KEYS if k not in item]
        if missing:
            raise ComplexParseError(f"missing key '{missing[0]}'", locus=locus)
        try:
            disks.append(Disk(*(_number(item[k], f"{locus}.{k}") for k in DISK_KEYS)))
        except VortexError as exc:
            if isinstance(exc, ComplexParseError):
                raise
            raise ComplexParseError(str(exc), locus=locus) from exc
    if not disks:
        raise ComplexParseError("a disk family needs at least one disk", locus="disks")
    return disks


def parse_disk_family(path: Union[str, Path]) -> List[Disk]:
    return load_disk_family(_read_json(path))


def dump_disk_family(disks: Sequence[Disk]) -> Dict[str, Any]:
    return {"disks": [{"x": d.x, "y": d.y, "r": d.r} for d in disks]}


def parse_document(path: Union[str, Path]) -> Union[CellComplex, List[Disk]]:
    """A complex, or a disk family when the document has a "disks" key."""
    doc = _read_json(path)
    if isinstance(doc, dict) and "disks" in doc:
        return load_disk_family(doc)
    cx = load_complex(doc)
    logger.info("loaded %s", path)
    return cx


def write_document(obj: Union[CellComplex, Sequence[Disk]], path: Union[str, Path]) -> Path:
    doc = dump_complex(obj) if isinstance(obj, CellComplex) else dump_disk_family(obj)
    p = Path(path)
    if p.parent and not p.parent.exists():
        p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    logger.info("wrote %s", p)
    return p
