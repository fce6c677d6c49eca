"""3D folded states: rotation oracle, panel assembly, rigidity checks, sweeps.

The loop-closure oracle is deliberately independent of every closed-form
transmission in :mod:`quadfold.vertex`: it only composes rotations about the
unfolded crease directions and measures the distance from the identity, so it
can certify those formulas without sharing any algebra with them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .config import DEFAULT_SAMPLES, TAU_CLOSURE, TAU_RIGID
from .errors import ClosureViolation, RigidityViolation
from .foldability import BranchChoice, Propagation, build_tree, certify, propagate
from .pattern import QuadPattern
from .vertex import Vertex4, VertexSolution


def _rot3(ux: float, uy: float, uz: float, angle: float):
    """Rotation matrix about the unit axis (ux, uy, uz), as nested lists."""
    c, s = math.cos(angle), math.sin(angle)
    C = 1.0 - c
    return (
        (c + ux * ux * C, ux * uy * C - uz * s, ux * uz * C + uy * s),
        (uy * ux * C + uz * s, c + uy * uy * C, uy * uz * C - ux * s),
        (uz * ux * C - uy * s, uz * uy * C + ux * s, c + uz * uz * C),
    )


def _mat_mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def loop_closure_residual(v: Vertex4,
                          solution: Union[VertexSolution, Sequence[float]]
                          ) -> float:
    """Frobenius distance from identity of the composed crease rotations.

    The four creases are embedded in the plane by accumulating sector angles
    (c1 at angle 0, then a2, a3, a4 between consecutive creases) and each is
    rotated about by its folding angle, in counter-clockwise crease order.
    Zero means the four angles are a genuine rigid configuration of the
    vertex.
    """
    rho = solution.rho if isinstance(solution, VertexSolution) else tuple(solution)
    if len(rho) != 4:
        raise ValueError("need four folding angles")
    a = v.alpha
    angles = (0.0, a[1], a[1] + a[2], a[1] + a[2] + a[3])
    R = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
    for phi, r in zip(angles, rho):
        if r == 0.0:
            continue
        R = _mat_mul(R, _rot3(math.cos(phi), math.sin(phi), 0.0, r))
    s = 0.0
    for i in range(3):
        for j in range(3):
            d = R[i][j] - (1.0 if i == j else 0.0)
            s += d * d
    return math.sqrt(s)


def _rot_about_line(point: np.ndarray, direction: np.ndarray,
                    angle: float) -> np.ndarray:
    """Homogeneous 4x4 rotation about the line through `point` along
    `direction` (unit vector)."""
    ux, uy, uz = direction
    R = np.array(_rot3(ux, uy, uz, angle))
    T = np.eye(4)
    T[:3, :3] = R
    T[:3, 3] = point - R @ point
    return T


@dataclass(frozen=True)
class FoldedState:
    """Rigidly folded embedding of the whole grid at one driving angle."""

    coords: np.ndarray            # (m+2, n+2, 3)
    face_transforms: dict         # (r, c) -> 4x4
    driving_angle: float
    rigidity_residual: float      # worst relative length/planarity deviation
    closure_residual: float       # worst vertex/cycle closure

    def point(self, r: int, c: int) -> np.ndarray:
        return self.coords[r, c]


def _face_points(grid, r, c):
    return [grid[r, c], grid[r + 1, c], grid[r + 1, c + 1], grid[r, c + 1]]


def realize(p: QuadPattern, angles: Union[Propagation, dict], *,
            rigid_tol: float = TAU_RIGID, closure_tol: float = TAU_CLOSURE,
            check: bool = True) -> FoldedState:
    """Fold the pattern by the given crease angles.

    The top-left face stays in the plane; every other face picks up the
    composed rotation along the row-major spanning tree of face adjacencies,
    rotating about each crossed crease line by its folding angle.  The result
    is verified: panels congruent to the layout (edge lengths, diagonals,
    planarity) and matching positions wherever two faces share a point.

    `angles` is either a Propagation or a dict mapping (kind, a, b) grid
    edges to fold angles.
    """
    grid2 = p.grid

    def edge_angle(kind, a, b):
        if isinstance(angles, Propagation):
            return angles.edge_angle(kind, a, b)
        return angles[(kind, a, b)]

    transforms = {(0, 0): np.eye(4)}
    for r in range(p.m + 1):
        for c in range(p.n + 1):
            if (r, c) == (0, 0):
                continue
            if c > 0:
                parent = (r, c - 1)
                # shared vertical edge
                a_pt, b_pt = (r, c), (r + 1, c)
                kind = "col"
            else:
                parent = (r - 1, c)
                a_pt, b_pt = (r, c), (r, c + 1)
                kind = "row"
            rho = edge_angle(kind, a_pt, b_pt)
            pa = np.array([*grid2[a_pt], 0.0])
            pb = np.array([*grid2[b_pt], 0.0])
            d = pb - pa
            d /= np.linalg.norm(d)
            # crossing from the crease's right side to its left composes +rho
            ca = _face_center(grid2, *parent)
            cb = _face_center(grid2, r, c)
            side = d[0] * (cb - ca)[1] - d[1] * (cb - ca)[0]
            sign = 1.0 if side > 0 else -1.0
            transforms[(r, c)] = transforms[parent] @ _rot_about_line(
                pa, d, sign * rho
            )

    coords = np.zeros((p.m + 2, p.n + 2, 3))
    owner = {}
    for r in range(p.m + 1):
        for c in range(p.n + 1):
            for pt in ((r, c), (r + 1, c), (r + 1, c + 1), (r, c + 1)):
                if pt not in owner:
                    owner[pt] = (r, c)
    for (r, c), face in owner.items():
        pt = np.array([*grid2[r, c], 0.0, 1.0])
        coords[r, c] = (transforms[face] @ pt)[:3]

    closure = 0.0
    rigidity = 0.0
    for r in range(p.m + 1):
        for c in range(p.n + 1):
            T = transforms[(r, c)]
            flat = _face_points(grid2, r, c)
            folded = [coords[q] for q in ((r, c), (r + 1, c),
                                          (r + 1, c + 1), (r, c + 1))]
            # faces must agree with their corners' stored positions
            for q2, q3 in zip(flat, folded):
                own = (T @ np.array([*q2, 0.0, 1.0]))[:3]
                closure = max(closure, float(np.linalg.norm(own - q3)))
            # congruence: edges and diagonals
            idx = ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3))
            for a_i, b_i in idx:
                d2 = np.linalg.norm(flat[a_i] - flat[b_i])
                d3 = np.linalg.norm(folded[a_i] - folded[b_i])
                rigidity = max(rigidity, abs(d3 - d2) / max(d2, 1.0))
            # planarity
            e1 = folded[1] - folded[0]
            e2 = folded[3] - folded[0]
            nrm = np.cross(e1, e2)
            nn = np.linalg.norm(nrm)
            if nn > 1e-15:
                off = abs(float(np.dot(folded[2] - folded[0], nrm / nn)))
                scale = max(np.linalg.norm(e1), np.linalg.norm(e2), 1.0)
                rigidity = max(rigidity, off / scale)

    if isinstance(angles, Propagation):
        for i in range(p.m):
            for j in range(p.n):
                res = loop_closure_residual(p.vertex(i, j),
                                            angles.solutions[i][j])
                closure = max(closure, res)
        driving = angles.driving
    else:
        driving = math.nan

    if check:
        # inconsistent input angles show up as closure mismatch first;
        # rigidity failures on top of closure are a symptom, not the cause
        if closure > closure_tol:
            raise ClosureViolation(
                f"fold angles are inconsistent: closure residual "
                f"{closure:.3e} exceeds {closure_tol:.1e}"
            )
        if rigidity > rigid_tol:
            raise RigidityViolation(
                f"panel deformation {rigidity:.3e} exceeds {rigid_tol:.1e}"
            )
    return FoldedState(coords=coords, face_transforms=transforms,
                       driving_angle=driving, rigidity_residual=rigidity,
                       closure_residual=closure)


def _face_center(grid2, r, c):
    return 0.25 * (grid2[r, c] + grid2[r + 1, c]
                   + grid2[r + 1, c + 1] + grid2[r, c + 1])


@dataclass(frozen=True)
class SweepResult:
    """Folding motion sampled from the trivial state to the final state."""

    frames: tuple                 # FoldedState per sample
    driving_angles: tuple
    max_rigidity_residual: float
    max_closure_residual: float

    def __len__(self):
        return len(self.frames)


def sweep(p: QuadPattern, branch_choice: BranchChoice = None,
          n_frames: int = 30, *, fraction: float = 1.0,
          n_samples: int = DEFAULT_SAMPLES) -> SweepResult:
    """Realize the folding motion over the certified interval.

    Frames run from the trivial state (driving angle 0) to `fraction` of the
    certified interval endpoint.  Each frame is fully verified; the maxima of
    the per-frame residuals are reported.
    """
    if n_frames < 1:
        raise ValueError("need at least one frame")
    if not (0.0 < fraction <= 1.0):
        raise ValueError("fraction must lie in (0, 1]")
    report = certify(p, branch_choice, n_samples)
    if not report.verdict:
        raise ClosureViolation(
            f"cannot sweep an uncertified pattern: {report.reason}"
        )
    t_end = fraction * report.interval[1]
    tree = build_tree(p)
    frames = []
    ts = []
    worst_r = worst_c = 0.0
    for k in range(n_frames):
        t = 0.0 if n_frames == 1 else t_end * k / (n_frames - 1)
        prop = propagate(tree, t, branch_choice)
        state = realize(p, prop)
        frames.append(state)
        ts.append(t)
        worst_r = max(worst_r, state.rigidity_residual)
        worst_c = max(worst_c, state.closure_residual)
    return SweepResult(frames=tuple(frames), driving_angles=tuple(ts),
                       max_rigidity_residual=worst_r,
                       max_closure_residual=worst_c)
