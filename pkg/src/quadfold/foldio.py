"""File interchange: FOLD documents, OBJ meshes and SVG crease patterns.

FOLD documents carry the crease pattern (2D) or a folded frame (3D) in the
standard fields plus a namespaced "quadfold:plan" block that allows lossless
reconstruction of the stitched pattern.  All floats are printed with 12
significant digits through a canonical serializer so identical inputs always
produce byte-identical files.
"""

from __future__ import annotations

import math
from typing import Optional, Union

import numpy as np

from .errors import SerializationError
from .pattern import QuadPattern, StitchPlan, stitch
from .realize import FoldedState

_FLOAT_FMT = "{:.12g}"


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if math.isnan(x) or math.isinf(x):
            raise SerializationError(f"non-finite float {x!r} in document")
        s = _FLOAT_FMT.format(x)
        return "0" if s == "-0" else s
    if isinstance(value, str):
        import json
        return json.dumps(value)
    if value is None:
        return "null"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_fmt(v) for v in value) + "]"
    if isinstance(value, dict):
        items = sorted(value.items())
        return "{" + ",".join(f"{_fmt(str(k))}:{_fmt(v)}" for k, v in items) + "}"
    raise SerializationError(f"cannot serialize {type(value).__name__}")


def fold_dumps(doc: dict) -> str:
    """Canonical FOLD serialization: sorted keys, 12-significant-digit floats."""
    return _fmt(doc)


def _edges_of(p: QuadPattern):
    edges = p.edges()
    index = {}
    for k, (kind, a, b) in enumerate(edges):
        index[(a, b)] = k
        index[(b, a)] = k
    return edges, index


def export_fold(obj: Union[QuadPattern, FoldedState], mv: Optional[dict] = None,
                *, pattern: Optional[QuadPattern] = None,
                angles=None) -> dict:
    """Build a FOLD document for a pattern (crease pattern) or folded frame.

    For a FoldedState the owning pattern must be supplied; `angles` (a
    Propagation or edge-angle dict) fills edges_foldAngle, and `mv` overrides
    the assignment letters derived from the angle signs.
    """
    if isinstance(obj, QuadPattern):
        p = obj
        coords = [[float(x) for x in p.grid[r, c]]
                  for r in range(p.m + 2) for c in range(p.n + 2)]
        frame_class = "creasePattern"
    elif isinstance(obj, FoldedState):
        if pattern is None:
            raise SerializationError("folded frames need their pattern")
        p = pattern
        coords = [[float(x) for x in obj.coords[r, c]]
                  for r in range(p.m + 2) for c in range(p.n + 2)]
        frame_class = "foldedForm"
    else:
        raise SerializationError(f"cannot export {type(obj).__name__}")

    edges, _ = _edges_of(p)
    edges_vertices = []
    assignment = []
    fold_angle = []
    for kind, a, b in edges:
        edges_vertices.append([p.point_index(*a), p.point_index(*b)])
        if kind == "boundary":
            assignment.append("B")
            fold_angle.append(0.0)
            continue
        angle = 0.0
        if angles is not None:
            angle = (angles.edge_angle(kind, a, b)
                     if hasattr(angles, "edge_angle") else angles[(kind, a, b)])
        letter = None
        if mv is not None:
            letter = mv.get((a, b)) or mv.get((b, a))
        if letter is None:
            letter = "F" if abs(angle) < 1e-9 else ("V" if angle > 0 else "M")
        if letter == "V" and angle < 0 or letter == "M" and angle > 0:
            raise SerializationError(
                f"assignment {letter} contradicts fold angle {angle!r}"
            )
        assignment.append(letter)
        fold_angle.append(math.degrees(angle))

    faces = [
        [p.point_index(*q) for q in p.face_corners(r, c)]
        for r, c in p.faces()
    ]
    doc = {
        "file_spec": 1.1,
        "file_creator": "quadfold",
        "file_classes": ["singleModel"],
        "frame_classes": [frame_class],
        "vertices_coords": coords,
        "edges_vertices": edges_vertices,
        "edges_assignment": assignment,
        "edges_foldAngle": fold_angle,
        "faces_vertices": faces,
        "quadfold:grid": [p.m, p.n],
    }
    if p.plan is not None:
        doc["quadfold:plan"] = p.plan.to_json()
    return doc


def import_fold(doc: Union[dict, str]) -> QuadPattern:
    """Rebuild a pattern from a FOLD document produced by export_fold."""
    if isinstance(doc, str):
        import json
        doc = json.loads(doc)
    for key in ("vertices_coords", "edges_vertices", "faces_vertices"):
        if key not in doc:
            raise SerializationError(f"FOLD document lacks {key}")
    n_pts = len(doc["vertices_coords"])
    for ev in doc["edges_vertices"]:
        if any(not (0 <= v < n_pts) for v in ev):
            raise SerializationError("edges_vertices indices out of range")
    for fv in doc["faces_vertices"]:
        if any(not (0 <= v < n_pts) for v in fv):
            raise SerializationError("faces_vertices indices out of range")
    ea = doc.get("edges_assignment", [])
    fa = doc.get("edges_foldAngle", [])
    if ea and fa:
        for letter, ang in zip(ea, fa):
            if letter == "V" and ang < 0 or letter == "M" and ang > 0:
                raise SerializationError(
                    f"assignment {letter} contradicts fold angle {ang!r}"
                )
    if "quadfold:plan" not in doc:
        raise SerializationError(
            "document lacks quadfold:plan; cannot rebuild the pattern"
        )
    plan = StitchPlan.from_json(doc["quadfold:plan"])
    return stitch(plan)


def export_obj(state: FoldedState, pattern: QuadPattern) -> str:
    """Wavefront OBJ with quad faces; vertex order is grid row-major."""
    lines = ["# quadfold folded state"]
    for r in range(pattern.m + 2):
        for c in range(pattern.n + 2):
            x, y, z = state.coords[r, c]
            lines.append("v " + " ".join(_FLOAT_FMT.format(v) for v in (x, y, z)))
    for r, c in pattern.faces():
        ids = [pattern.point_index(*q) + 1 for q in pattern.face_corners(r, c)]
        pts = [state.coords[q] for q in pattern.face_corners(r, c)]
        area = 0.5 * np.linalg.norm(
            np.cross(pts[2] - pts[0], pts[3] - pts[1])
        )
        if area < 1e-12:
            raise SerializationError(
                f"face ({r},{c}) has zero area; refusing to emit"
            )
        lines.append("f " + " ".join(str(i) for i in ids))
    return "\n".join(lines) + "\n"


_SVG_COLORS = {"M": "#d62728", "V": "#1f77b4", "F": "#999999", "B": "#000000"}


def export_svg(pattern: QuadPattern, mv: Optional[dict] = None,
               *, stroke_width: float = 0.01) -> str:
    """Printable crease pattern: mountains red, valleys blue, flat grey,
    boundary black."""
    if pattern.m < 1 or pattern.n < 1:
        raise SerializationError("empty pattern")
    pts = pattern.grid.reshape(-1, 2)
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    span = hi - lo
    pad = 0.05 * max(span[0], span[1], 1e-9)
    view = (lo[0] - pad, -(hi[1] + pad), span[0] + 2 * pad, span[1] + 2 * pad)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="{}">'.format(
            " ".join(_FLOAT_FMT.format(v) for v in view)
        ),
    ]
    for kind, a, b in pattern.edges():
        if kind == "boundary":
            letter = "B"
        elif mv is None:
            letter = "F"
        else:
            letter = mv.get((a, b)) or mv.get((b, a)) or "F"
        xa, ya = pattern.grid[a]
        xb, yb = pattern.grid[b]
        lines.append(
            '<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" '
            'stroke-width="{}"/>'.format(
                _FLOAT_FMT.format(xa), _FLOAT_FMT.format(-ya),
                _FLOAT_FMT.format(xb), _FLOAT_FMT.format(-yb),
                _SVG_COLORS[letter], _FLOAT_FMT.format(stroke_width)
            )
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
