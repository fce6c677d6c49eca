"""Quadrilateral blankets: stitch unit columns into a grid crease pattern.

Grid model
----------
A pattern has m*n inner vertices arranged in rows (index i, downward) and
columns (index j, rightward).  Every inner vertex carries four creases

    U (up), L (left), D (down), R (right)

which in the vertex labelling of :mod:`quadfold.vertex` are c1, c2, c3, c4.
Stored sector angles are therefore (a1, a2, a3, a4) = (R^U, U^L, L^D, D^R
sectors).  Units occupy vertically adjacent vertex pairs; adjacent units in a
column share a vertex, adjacent columns share their horizontal creases.

The planar layout spans a point grid with one ring of boundary points around
the inner vertices: grid point (r, c), r in 0..m+1, c in 0..n+1, with inner
vertex (i, j) at grid point (i+1, j+1).  Faces are the (m+1)*(n+1) grid
quads.  Interior crease lengths follow from intersecting crease lines; only
the top-row and left-column crease lengths (and the boundary stub length)
are free design inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .config import TAU_ANGLE, TAU_DIR, TAU_LAYOUT
from .errors import (
    IncompatibleUnits,
    LayoutFailure,
    NegativeDof,
    NotABlanket,
    ValidationFailed,
)
from .units import FFUnitMode, Unit, identical_vertex_unit, \
    make_flatfoldable_basic_unit, make_straightline_unit, solve_ff_unit, \
    valid_branch_pairs, validate_unit
from .vertex import BranchId, Vertex4, normalize_angle

TWO_PI = 2.0 * math.pi

# per-kind independent-sector-angle contributions: (first unit in a column,
# each additionally stitched unit).  Identical-vertex basic units add nothing
# once their shared vertex is fixed; a freshly designed flat-foldable unit
# keeps one free angle when stitched below an existing vertex.
DOF_TABLE = {
    "straight_line": (2, 0),
    "flat_foldable_basic": (2, 0),
    "flat_foldable": (3, 1),
    "double_collinear": (1, 0),
    "custom": (3, 0),
}


@dataclass(frozen=True)
class PlanLengths:
    top: Optional[tuple] = None      # n-1 horizontal crease lengths in row 0
    left: Optional[tuple] = None     # m-1 vertical crease lengths in column 0
    boundary: float = 1.0

    def top_at(self, j: int) -> float:
        return 1.0 if self.top is None else self.top[j]

    def left_at(self, i: int) -> float:
        return 1.0 if self.left is None else self.left[i]


@dataclass(frozen=True)
class StitchPlan:
    """Ordered unit stacks, one per column, plus free crease lengths."""

    columns: tuple
    lengths: PlanLengths = field(default_factory=PlanLengths)

    def __post_init__(self):
        if not self.columns or any(len(col) == 0 for col in self.columns):
            raise NotABlanket("a plan needs at least one unit per column")
        heights = {len(col) for col in self.columns}
        if len(heights) != 1:
            raise NotABlanket(
                "all columns must stack the same number of units "
                f"(got heights {sorted(heights)})"
            )

    @property
    def n_cols(self) -> int:
        return len(self.columns)

    @property
    def n_rows(self) -> int:
        return len(self.columns[0]) + 1

    def units(self):
        for col in self.columns:
            yield from col

    def to_json(self) -> dict:
        doc = {"columns": [[u.to_json() for u in col] for col in self.columns]}
        if self.lengths.top is not None:
            doc["top_lengths"] = list(self.lengths.top)
        if self.lengths.left is not None:
            doc["left_lengths"] = list(self.lengths.left)
        if self.lengths.boundary != 1.0:
            doc["boundary_length"] = self.lengths.boundary
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "StitchPlan":
        columns = []
        for col in doc["columns"]:
            columns.append(tuple(unit_from_descriptor(d) for d in col))
        lengths = PlanLengths(
            top=tuple(doc["top_lengths"]) if "top_lengths" in doc else None,
            left=tuple(doc["left_lengths"]) if "left_lengths" in doc else None,
            boundary=float(doc.get("boundary_length", 1.0)),
        )
        return cls(columns=tuple(columns), lengths=lengths)


def unit_from_descriptor(d: dict) -> Unit:
    """Build a unit from a plan descriptor.

    Descriptors either carry the full 8-angle form (handled by
    :meth:`Unit.from_json`) or name a constructor:

    * ``{"kind": "straight_line", "alphas_deg": [a1, a2, a3, a4]}``
    * ``{"kind": "flat_foldable_basic", "alphas_deg": [a1, a2]}``
    * ``{"kind": "flat_foldable", "alphas_deg": [a1, a2, a3], "mode": "10a-2"}``
    * ``{"kind": "custom", "mirror_of_deg": [a1..a4], "branch": "1"}``
    """
    if "sector_deg" in d:
        return Unit.from_json(d)
    kind = d.get("kind", "custom")
    if kind == "straight_line":
        return make_straightline_unit(Vertex4.from_degrees(d["alphas_deg"]))
    if kind == "flat_foldable_basic":
        a1, a2 = (math.radians(x) for x in d["alphas_deg"])
        return make_flatfoldable_basic_unit(a1, a2)
    if kind == "flat_foldable":
        a1, a2, a3 = (math.radians(x) for x in d["alphas_deg"])
        return solve_ff_unit(a1, a2, a3, FFUnitMode.from_token(d["mode"]))
    if kind == "custom" and "mirror_of_deg" in d:
        return identical_vertex_unit(
            Vertex4.from_degrees(d["mirror_of_deg"]),
            BranchId.from_token(d.get("branch", "1")),
        )
    raise ValidationFailed(f"cannot interpret unit descriptor {d!r}")


# ---------------------------------------------------------------------------
# pattern
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadPattern:
    """Immutable stitched blanket: vertex grid, layout and branch defaults."""

    m: int
    n: int
    vertices: tuple                  # m rows of n Vertex4
    branch_default: tuple            # m rows of n BranchId
    plan: Optional[StitchPlan]
    lengths: PlanLengths
    grid: np.ndarray                 # (m+2, n+2, 2) planar layout
    directions: tuple                # per vertex (U, L, D, R) planar angles

    def __post_init__(self):
        self.grid.flags.writeable = False

    @classmethod
    def from_vertices(cls, vertices, branch_default, lengths=None, *,
                      check: bool = True) -> "QuadPattern":
        """Build a blanket directly from a vertex grid (no unit provenance).

        Rigid-foldability certification applies to any grid of developable
        vertices; this constructor supports blankets that were not stitched
        from units.  Panel angle sums are validated unless `check` is false.
        """
        vertices = tuple(tuple(row) for row in vertices)
        m, n = len(vertices), len(vertices[0])
        branch_default = tuple(tuple(row) for row in branch_default)
        lengths = lengths or PlanLengths()
        if check:
            for i in range(m - 1):
                for j in range(n - 1):
                    total = (vertices[i][j].alpha[3]
                             + vertices[i + 1][j].alpha[0]
                             + vertices[i + 1][j + 1].alpha[1]
                             + vertices[i][j + 1].alpha[2])
                    if abs(total - TWO_PI) > math.sqrt(TAU_ANGLE):
                        raise IncompatibleUnits(
                            f"inner panel ({i},{j}) sector angles sum to "
                            f"{total!r}, expected 2*pi"
                        )
        grid, dirs = _layout(vertices, lengths, check=check)
        return cls(m, n, vertices, branch_default, None, lengths, grid, dirs)

    def vertex(self, i: int, j: int) -> Vertex4:
        return self.vertices[i][j]

    def point(self, r: int, c: int) -> np.ndarray:
        return self.grid[r, c]

    def grid_shape(self) -> tuple:
        return (self.m + 2, self.n + 2)

    def point_index(self, r: int, c: int) -> int:
        return r * (self.n + 2) + c

    def faces(self):
        """Grid quads as (r, c) of their top-left corner."""
        return [(r, c) for r in range(self.m + 1) for c in range(self.n + 1)]

    def face_corners(self, r: int, c: int):
        return ((r, c), (r + 1, c), (r + 1, c + 1), (r, c + 1))

    def edges(self):
        """All grid edges as (kind, a, b) with kind 'col'/'row'/'boundary'.

        a, b are (r, c) grid coordinates; foldable creases are the vertical
        edges in columns 1..n and the horizontal edges in rows 1..m.
        """
        out = []
        for c in range(self.n + 2):
            for r in range(self.m + 1):
                kind = "col" if 1 <= c <= self.n else "boundary"
                out.append((kind, (r, c), (r + 1, c)))
        for r in range(self.m + 2):
            for c in range(self.n + 1):
                kind = "row" if 1 <= r <= self.m else "boundary"
                out.append((kind, (r, c), (r, c + 1)))
        return out

    def parallel_rows(self) -> tuple:
        """For each inner panel row, whether its column creases are parallel."""
        out = []
        for i in range(self.m - 1):
            dirs = [self.directions[i][j][2] for j in range(self.n)]
            ref = dirs[0]
            out.append(all(
                abs(normalize_angle(d - ref)) <= TAU_DIR for d in dirs[1:]
            ))
        return tuple(out)

    def with_vertex(self, i: int, j: int, v: Vertex4) -> "QuadPattern":
        """Copy with one vertex replaced, skipping all validation.

        Diagnostic helper: the result is generally *not* a valid blanket and
        exists so that certification can be exercised on broken input.
        """
        rows = [list(row) for row in self.vertices]
        rows[i][j] = v
        vertices = tuple(tuple(row) for row in rows)
        grid, dirs = _layout(vertices, self.lengths, check=False)
        return QuadPattern(self.m, self.n, vertices, self.branch_default,
                           self.plan, self.lengths, grid, dirs)

    def relayout(self, lengths: PlanLengths) -> "QuadPattern":
        grid, dirs = _layout(self.vertices, lengths, check=True)
        return QuadPattern(self.m, self.n, self.vertices, self.branch_default,
                           self.plan, lengths, grid, dirs)


def _vertex_directions(v: Vertex4, dir_u=None, dir_l=None):
    """Planar angles of (U, L, D, R) creases given one anchor direction."""
    a = v.alpha
    if dir_u is None:
        dir_u = dir_l - a[1]
    else:
        dir_l = dir_u + a[1]
    dir_d = dir_l + a[2]
    dir_r = dir_d + a[3]
    return (dir_u, dir_l, dir_d, dir_r)


def _unit_vec(angle: float) -> np.ndarray:
    return np.array([math.cos(angle), math.sin(angle)])


def _ray_intersection(p1, d1, p2, d2):
    """Parameters (t1, t2) with p1 + t1*u(d1) = p2 + t2*u(d2)."""
    u1, u2 = _unit_vec(d1), _unit_vec(d2)
    det = u1[0] * (-u2[1]) - (-u2[0]) * u1[1]
    if abs(det) < 1e-12:
        return None
    rhs = p2 - p1
    t1 = (rhs[0] * (-u2[1]) - (-u2[0]) * rhs[1]) / det
    t2 = (u1[0] * rhs[1] - rhs[0] * u1[1]) / det
    return t1, t2


def _layout(vertices, lengths: PlanLengths, *, check: bool = True):
    """Place the grid in the plane from sector angles and free lengths."""
    m, n = len(vertices), len(vertices[0])
    dirs = [[None] * n for _ in range(m)]
    pos = [[None] * n for _ in range(m)]

    dirs[0][0] = _vertex_directions(vertices[0][0], dir_u=math.pi / 2)
    pos[0][0] = np.zeros(2)
    for j in range(1, n):
        dirs[0][j] = _vertex_directions(
            vertices[0][j], dir_l=dirs[0][j - 1][3] + math.pi
        )
        pos[0][j] = pos[0][j - 1] + lengths.top_at(j - 1) * _unit_vec(
            dirs[0][j - 1][3]
        )
    for i in range(1, m):
        dirs[i][0] = _vertex_directions(
            vertices[i][0], dir_u=dirs[i - 1][0][2] + math.pi
        )
        pos[i][0] = pos[i - 1][0] + lengths.left_at(i - 1) * _unit_vec(
            dirs[i - 1][0][2]
        )
        for j in range(1, n):
            dirs[i][j] = _vertex_directions(
                vertices[i][j], dir_u=dirs[i - 1][j][2] + math.pi
            )
            if check:
                mismatch = normalize_angle(
                    dirs[i][j][1] - (dirs[i][j - 1][3] + math.pi)
                )
                if abs(mismatch) > TAU_LAYOUT:
                    raise LayoutFailure(
                        f"crease directions at vertex ({i},{j}) disagree by "
                        f"{mismatch:.3e} rad (inconsistent panel above-left)",
                        panel=(i - 1, j - 1),
                    )
            hit = _ray_intersection(
                pos[i - 1][j], dirs[i - 1][j][2], pos[i][j - 1], dirs[i][j - 1][3]
            )
            if hit is None:
                raise LayoutFailure(
                    f"crease lines bounding panel ({i - 1},{j - 1}) are "
                    "parallel; no intersection",
                    panel=(i - 1, j - 1),
                )
            t1, t2 = hit
            if check and (t1 <= 0 or t2 <= 0):
                raise LayoutFailure(
                    f"panel ({i - 1},{j - 1}) folds back on itself "
                    f"(intersection parameters {t1:.3g}, {t2:.3g})",
                    panel=(i - 1, j - 1),
                )
            pos[i][j] = pos[i - 1][j] + t1 * _unit_vec(dirs[i - 1][j][2])

    b = lengths.boundary
    grid = np.zeros((m + 2, n + 2, 2))
    for i in range(m):
        for j in range(n):
            grid[i + 1, j + 1] = pos[i][j]
    for j in range(n):
        grid[0, j + 1] = pos[0][j] + b * _unit_vec(dirs[0][j][0])
        grid[m + 1, j + 1] = pos[m - 1][j] + b * _unit_vec(dirs[m - 1][j][2])
    for i in range(m):
        grid[i + 1, 0] = pos[i][0] + b * _unit_vec(dirs[i][0][1])
        grid[i + 1, n + 1] = pos[i][n - 1] + b * _unit_vec(dirs[i][n - 1][3])
    # paper corners by parallelogram completion
    grid[0, 0] = grid[1, 0] + grid[0, 1] - grid[1, 1]
    grid[0, n + 1] = grid[1, n + 1] + grid[0, n] - grid[1, n]
    grid[m + 1, 0] = grid[m, 0] + grid[m + 1, 1] - grid[m, 1]
    grid[m + 1, n + 1] = grid[m, n + 1] + grid[m + 1, n] - grid[m, n]

    if check:
        _check_layout_angles(vertices, grid)
    return grid, tuple(tuple(row) for row in dirs)


def _check_layout_angles(vertices, grid):
    """Measured sector angles of the placed layout must match the data."""
    m, n = len(vertices), len(vertices[0])
    for i in range(m):
        for j in range(n):
            p = grid[i + 1, j + 1]
            spokes = (
                grid[i, j + 1] - p,      # U
                grid[i + 1, j] - p,      # L
                grid[i + 2, j + 1] - p,  # D
                grid[i + 1, j + 2] - p,  # R
            )
            ang = [math.atan2(s[1], s[0]) for s in spokes]
            # sectors a1..a4 = R^U, U^L, L^D, D^R
            order = (3, 0, 1, 2)
            for k in range(4):
                got = (ang[order[(k + 1) % 4]] - ang[order[k]]) % TWO_PI
                want = vertices[i][j].alpha[k]
                if abs(got - want) > TAU_LAYOUT * 10:
                    raise LayoutFailure(
                        f"layout does not realize sector a{k + 1} at vertex "
                        f"({i},{j}): measured {got!r} vs {want!r}"
                    )


def stitch(plan: StitchPlan, *, validate: bool = True,
           unit_samples: int = 33) -> QuadPattern:
    """Assemble a plan into a pattern, checking shared vertices and panels.

    Raises IncompatibleUnits for mismatched shared sector angles or branch
    assignments, ValidationFailed for a unit that fails its own sweep, and
    LayoutFailure when the planar layout cannot be realized.
    """
    m, n = plan.n_rows, plan.n_cols
    vertices = [[None] * n for _ in range(m)]
    branches = [[None] * n for _ in range(m)]

    for j, col in enumerate(plan.columns):
        for k, u in enumerate(col):
            if validate:
                rep = validate_unit(u, unit_samples)
                if not rep.valid():
                    raise ValidationFailed(
                        f"unit {k} of column {j} fails validation "
                        f"(max residual {rep.max_residual:.3e})"
                    )
            if k == 0:
                vertices[0][j] = u.top
                branches[0][j] = u.branch_top
            else:
                if not vertices[k][j].isclose(u.top):
                    raise IncompatibleUnits(
                        f"column {j}: unit {k} top vertex does not match the "
                        f"unit above (shared vertex ({k},{j}))"
                    )
                if branches[k][j] is not u.branch_top:
                    raise IncompatibleUnits(
                        f"column {j}: units {k - 1} and {k} assign different "
                        f"branches to shared vertex ({k},{j})"
                    )
            vertices[k + 1][j] = u.bottom
            branches[k + 1][j] = u.branch_bottom

    for i in range(m - 1):
        for j in range(n - 1):
            total = (vertices[i][j].alpha[3] + vertices[i + 1][j].alpha[0]
                     + vertices[i + 1][j + 1].alpha[1]
                     + vertices[i][j + 1].alpha[2])
            if abs(total - TWO_PI) > math.sqrt(TAU_ANGLE):
                raise IncompatibleUnits(
                    f"inner panel ({i},{j}) sector angles sum to {total!r}, "
                    "expected 2*pi; adjacent columns do not fit"
                )

    vertices = tuple(tuple(row) for row in vertices)
    branches = tuple(tuple(row) for row in branches)
    grid, dirs = _layout(vertices, plan.lengths, check=True)
    return QuadPattern(m, n, vertices, branches, plan, plan.lengths, grid, dirs)


# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DofReport:
    """Independent-sector-angle accounting of a plan.

    `unit_terms` lists every unit's contribution in column-major stitching
    order (zeros included); `terms` is the same list with zeros dropped, which
    is how the totals are conventionally written.  `row_deductions` holds the
    inner-panel count charged to each non-parallel panel row.
    """

    unit_terms: tuple
    row_deductions: tuple
    branch_count: int

    @property
    def terms(self) -> tuple:
        return tuple(t for t in self.unit_terms if t != 0)

    @property
    def deduction(self) -> int:
        return sum(self.row_deductions)

    @property
    def total(self) -> int:
        return sum(self.unit_terms) - self.deduction

    def caption(self) -> str:
        parts = " + ".join(str(t) for t in self.terms)
        if self.deduction:
            return f"{parts} - {self.deduction} = {self.total}"
        return f"{parts} = {self.total}"


def count_dof(plan: StitchPlan, table: Optional[dict] = None) -> DofReport:
    """Count independent sector angles unit by unit.

    Each column's first unit contributes its kind's base count and every
    further stitched unit the kind's stitch increment; each inner-panel row
    whose column creases are not parallel in the layout deducts its number of
    inner panels.  Raises NegativeDof when the total goes negative.
    """
    table = dict(DOF_TABLE, **(table or {}))
    pattern = stitch(plan, validate=False)
    unit_terms = []
    for col in plan.columns:
        for k, u in enumerate(col):
            base, inc = table.get(u.kind, table["custom"])
            unit_terms.append(base if k == 0 else inc)
    deductions = []
    n_inner = plan.n_cols - 1
    for parallel in pattern.parallel_rows():
        deductions.append(0 if parallel else n_inner)
    report = DofReport(tuple(unit_terms), tuple(deductions),
                       count_branches(plan))
    if report.total < 0:
        raise NegativeDof(
            f"plan over-constrained: {report.caption()} is negative"
        )
    return report


def count_branches(plan: StitchPlan) -> int:
    """Number of branch assignments of the whole pattern: the product over
    columns of each column's consistent, transmitting branch chains."""
    total = 1
    for col in plan.columns:
        pair_sets = [
            {(bt, bb) for bt, bb, _ in valid_branch_pairs(u)} for u in col
        ]
        # chain DP over per-vertex branch choices
        counts = {}
        for bt, bb in pair_sets[0]:
            counts[bb] = counts.get(bb, 0) + 1
        for pairs in pair_sets[1:]:
            nxt = {}
            for bt, bb in pairs:
                if bt in counts:
                    nxt[bb] = nxt.get(bb, 0) + counts[bt]
            counts = nxt
        total *= sum(counts.values())
    return total
