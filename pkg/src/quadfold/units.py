"""Units: two degree-4 vertices sharing two panels, with matched transmissions.

A unit joins a top vertex and a bottom vertex along one connecting crease.
Both vertices are stored in the same grid orientation, with creases

    c1 = up, c2 = left, c3 = down, c4 = right,

so the connecting crease is the top vertex's c3 and the bottom vertex's c1.
The seven folding-angle slots are::

    rho1  connecting crease
    rho2  top-left     rho4  top-right     rho3  top outward (up)
    rho5  bottom-left  rho7  bottom-right  rho6  bottom outward (down)

A structurally valid unit keeps |rho2| = |rho5| and |rho4| = |rho7| along the
whole shared motion; `signs` = (s2, s4) records the sign relations
rho2 = s2*rho5 and rho4 = s4*rho7.

The "role" labelling of a vertex inside a unit puts its two sector angles
adjacent to the connecting crease at positions 3 and 4: for the top vertex
that is the stored labelling itself, for the bottom vertex it is the stored
labelling cyclically shifted by two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from .config import TAU_ANGLE, TAU_UNIT
from .errors import (
    DegenerateVertex,
    EmptyInterval,
    InvalidAngle,
    OutOfDomain,
    ValidationFailed,
    WrongClass,
)
from .vertex import (
    BranchId,
    ClassTag,
    Vertex4,
    classify,
    fold_interval,
    normalize_angle,
    solve_at_crease,
    solve_on_branch,
)


def _tan_half(x: float) -> float:
    return math.tan(x / 2.0)


class FFUnitMode(Enum):
    """The four surviving sign choices when both vertices are flat-foldable.

    A modes pair the first curve branch on both vertices, C modes the second.
    Tokens follow the CLI spelling.
    """

    A_PLUS = "10a-1"
    A_MINUS = "10a-2"
    C_PLUS = "10b-1"
    C_MINUS = "10b-2"

    @classmethod
    def from_token(cls, token: str) -> "FFUnitMode":
        for m in cls:
            if m.value == str(token).strip().lower():
                return m
        raise ValueError(f"unknown flat-foldable unit mode {token!r}")

    @property
    def branch(self) -> BranchId:
        return BranchId.BRANCH_1 if self in (self.A_PLUS, self.A_MINUS) \
            else BranchId.BRANCH_2

    @property
    def signs(self) -> tuple:
        if self in (self.A_MINUS, self.C_PLUS):
            return (1, 1)
        return (-1, -1)

    def alpha4(self, a1: float, a2: float, a3: float) -> float:
        t1, t2, t3 = _tan_half(a1), _tan_half(a2), _tan_half(a3)
        if self is FFUnitMode.A_PLUS:
            t4 = t2 * t3 / t1
        elif self is FFUnitMode.A_MINUS:
            t4 = t1 * t3 / t2
        elif self is FFUnitMode.C_PLUS:
            t4 = t1 * t2 / t3
        else:
            t4 = 1.0 / (t1 * t2 * t3)
        return 2.0 * math.atan(t4)


@dataclass(frozen=True)
class UnitState:
    """Folding angles of the seven unit creases at one configuration."""

    rho: tuple  # (rho1 .. rho7)

    @property
    def degrees(self) -> tuple:
        return tuple(math.degrees(x) for x in self.rho)


@dataclass(frozen=True)
class UnitReport:
    max_residual_24: float  # max |rho2 - s2*rho5|
    max_residual_47: float  # max |rho4 - s4*rho7|
    n_samples: int
    interval: tuple
    degenerate_shared: bool

    @property
    def max_residual(self) -> float:
        return max(self.max_residual_24, self.max_residual_47)

    def valid(self, tol: float = TAU_UNIT) -> bool:
        return self.max_residual < tol


@dataclass(frozen=True)
class Unit:
    top: Vertex4
    bottom: Vertex4
    branch_top: BranchId
    branch_bottom: BranchId
    signs: tuple  # (s2, s4), each +1 or -1
    kind: str = "custom"
    mode: Optional[FFUnitMode] = None
    shared_length: float = 1.0

    def __post_init__(self):
        if tuple(self.signs) not in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            raise ValidationFailed(f"signs must be +/-1 pairs, got {self.signs}")

    @property
    def sector(self) -> tuple:
        """The 8 sector angles in role labels: top a1..a4, bottom a1..a4."""
        return self.top.alpha + self.bottom.shifted(2).alpha

    @property
    def sector_degrees(self) -> tuple:
        return tuple(math.degrees(x) for x in self.sector)

    def solve(self, t: float) -> UnitState:
        """Configuration with the connecting crease folded by t."""
        st = solve_at_crease(self.top, 3, t, self.branch_top)
        sb = solve_at_crease(self.bottom, 1, t, self.branch_bottom)
        return UnitState(rho=(
            t,
            st.rho[1], st.rho[0], st.rho[3],
            sb.rho[1], sb.rho[2], sb.rho[3],
        ))

    def swapped(self) -> "Unit":
        """The same unit viewed upside down (paper rotated half a turn)."""
        return replace(
            self,
            top=self.bottom.shifted(2),
            bottom=self.top.shifted(2),
            branch_top=self.branch_bottom,
            branch_bottom=self.branch_top,
            signs=(self.signs[1], self.signs[0]),
        )

    def to_json(self) -> dict:
        doc = {
            "sector_deg": list(self.sector_degrees),
            "signs": list(self.signs),
            "branches": [self.branch_top.value, self.branch_bottom.value],
            "crease_lengths": {"shared": self.shared_length},
            "kind": self.kind,
        }
        if self.mode is not None:
            doc["mode"] = self.mode.value
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "Unit":
        sector = [math.radians(float(x)) for x in doc["sector_deg"]]
        if len(sector) != 8:
            raise ValidationFailed("sector_deg must hold 8 angles")
        top = Vertex4(sector[:4])
        bottom = Vertex4(sector[4:]).shifted(2)  # role -> stored labels
        s2, s4 = (int(x) for x in doc.get("signs", (1, 1)))
        branches = doc.get("branches", ("1", "1"))
        mode = FFUnitMode.from_token(doc["mode"]) if "mode" in doc else None
        lengths = doc.get("crease_lengths", {})
        return cls(
            top=top,
            bottom=bottom,
            branch_top=BranchId.from_token(branches[0]),
            branch_bottom=BranchId.from_token(branches[1]),
            signs=(s2, s4),
            kind=doc.get("kind", "custom"),
            mode=mode,
            shared_length=float(lengths.get("shared", 1.0)),
        )


def _shared_interval(u: Unit) -> float:
    """Largest |t| reachable by the connecting crease on both branches."""
    def reach(v, branch, comp):
        iv = fold_interval(v, branch)
        if iv.hi == 0.0:
            return 0.0
        return abs(solve_on_branch(v, iv.hi, branch).rho[comp])

    return min(reach(u.top, u.branch_top, 2), reach(u.bottom, u.branch_bottom, 0))


def validate_unit(u: Unit, n_samples: int = 200, tol: float = TAU_UNIT) -> UnitReport:
    """Numerically check the equal-magnitude transmission conditions.

    Sweeps the connecting crease over the common fold interval and compares
    rho2 against s2*rho5 and rho4 against s4*rho7 at every sample.  When the
    branch pair never folds the connecting crease (degenerate shared crease),
    the sweep drives the left-side pair instead and checks the right side
    plus the shared crease staying flat; EmptyInterval is raised when neither
    parametrization moves.
    """
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    s2, s4 = u.signs
    t_max = _shared_interval(u)

    if t_max > 1e-9:
        worst24 = worst47 = 0.0
        for k in range(n_samples):
            t = t_max * (2.0 * k / (n_samples - 1) - 1.0)
            st = u.solve(t)
            worst24 = max(worst24, abs(normalize_angle(st.rho[1] - s2 * st.rho[4])))
            worst47 = max(worst47, abs(normalize_angle(st.rho[3] - s4 * st.rho[6])))
        return UnitReport(worst24, worst47, n_samples, (-t_max, t_max), False)

    # shared crease never folds on this branch pair: drive the left pair
    def left_reach(v, branch):
        iv = fold_interval(v, branch)
        probe_r = iv.hi if iv.hi > 0 else math.pi
        try:
            return abs(solve_on_branch(v, probe_r, branch).rho[1])
        except OutOfDomain:
            return 0.0

    s_max = min(left_reach(u.top, u.branch_top),
                left_reach(u.bottom, u.branch_bottom))
    if s_max <= 1e-9:
        raise EmptyInterval(
            "the unit's common fold interval on this branch pair is {0}"
        )
    worst24 = worst47 = 0.0
    for k in range(n_samples):
        s = s_max * (2.0 * k / (n_samples - 1) - 1.0)
        if abs(s) < 1e-14:
            continue
        st_top = solve_at_crease(u.top, 2, s, u.branch_top)
        st_bot = solve_at_crease(u.bottom, 2, s2 * s, u.branch_bottom)
        # shared crease must agree (and stays flat on these branches)
        worst24 = max(worst24, abs(normalize_angle(st_top.rho[2] - st_bot.rho[0])))
        worst47 = max(worst47, abs(normalize_angle(st_top.rho[3] - s4 * st_bot.rho[3])))
    return UnitReport(worst24, worst47, n_samples, (-s_max, s_max), True)


def _discover_signs(u: Unit, n_probe: int = 9):
    """Pick the sign pair from a few samples; None when a side never folds."""
    t_max = _shared_interval(u)
    s2 = s4 = None
    if t_max > 1e-9:
        for k in range(1, n_probe + 1):
            st = u.solve(t_max * k / (n_probe + 1))
            if s2 is None and abs(st.rho[4]) > 1e-9:
                s2 = 1 if st.rho[1] * st.rho[4] > 0 else -1
            if s4 is None and abs(st.rho[6]) > 1e-9:
                s4 = 1 if st.rho[3] * st.rho[6] > 0 else -1
    return s2, s4


def _finalize(u: Unit, n_samples: int) -> Unit:
    s2, s4 = _discover_signs(u)
    u = replace(u, signs=(s2 if s2 else u.signs[0], s4 if s4 else u.signs[1]))
    report = validate_unit(u, n_samples)
    if not report.valid():
        raise ValidationFailed(
            f"unit validation failed: max residual {report.max_residual:.3e}"
        )
    return u


def identical_vertex_unit(v: Vertex4, branch: BranchId, *, mirrored: bool = True,
                          kind: str = "custom", n_samples: int = 64) -> Unit:
    """Unit whose bottom vertex is the same vertex, mirrored across the
    connecting crease (or the plain copy when `mirrored` is false).

    The mirrored pairing transmits with signs (+1, +1) on matching branches
    for every vertex class; the identical copy flips both signs.
    """
    bottom = v.mirrored() if mirrored else v
    unit = Unit(top=v, bottom=bottom, branch_top=branch, branch_bottom=branch,
                signs=(1, 1), kind=kind)
    return _finalize(unit, n_samples)


def make_straightline_unit(v: Vertex4, n_samples: int = 200) -> Unit:
    """Identical-vertex unit over a straight-line vertex (curve branch).

    The bottom vertex is the mirror image of `v`, which keeps the shared-panel
    sector angles consistent.  Double-collinear vertices are accepted and get
    their line-segment motion instead of the curve.
    """
    tag = classify(v).tag
    if tag is ClassTag.DOUBLE_COLLINEAR:
        bottom = v.mirrored()
        unit = Unit(top=v, bottom=bottom,
                    branch_top=BranchId.LINE_SEGMENT_1,
                    branch_bottom=BranchId.LINE_SEGMENT_1,
                    signs=(1, 1), kind="straight_line")
        report = validate_unit(unit, n_samples)
        if not report.valid():
            raise ValidationFailed(
                f"unit validation failed: max residual {report.max_residual:.3e}"
            )
        return unit
    if tag is not ClassTag.STRAIGHT_LINE:
        raise WrongClass("make_straightline_unit requires a straight-line vertex")
    return identical_vertex_unit(v, BranchId.BRANCH_2, kind="straight_line",
                                 n_samples=n_samples)


def make_flatfoldable_basic_unit(alpha1: float, alpha2: float,
                                 n_samples: int = 200) -> Unit:
    """Identical-vertex flat-foldable unit from its two free sector angles."""
    _check_open_interval(alpha1, "alpha1")
    _check_open_interval(alpha2, "alpha2")
    if abs(alpha1 - math.pi / 2) <= TAU_ANGLE and abs(alpha2 - math.pi / 2) <= TAU_ANGLE:
        raise DegenerateVertex("alpha1 = alpha2 = pi/2 admits no transmission")
    v = Vertex4((alpha1, alpha2, math.pi - alpha1, math.pi - alpha2))
    unit = Unit(top=v, bottom=v, branch_top=BranchId.BRANCH_1,
                branch_bottom=BranchId.BRANCH_1, signs=(1, 1),
                kind="flat_foldable_basic")
    return _finalize(unit, n_samples)


def _check_open_interval(x: float, name: str):
    if not (0.0 < x < math.pi):
        raise InvalidAngle(f"{name} must lie in (0, pi), got {x!r}")


def solve_ff_unit(alpha1: float, alpha2: float, alpha3: float,
                  mode: FFUnitMode, n_samples: int = 200) -> Unit:
    """Design a flat-foldable unit from three free sector angles.

    The fourth angle follows from the selected mode's tan-half identity; the
    top vertex is built from (alpha1, alpha2), the bottom from
    (alpha3, alpha4), each completed with the supplements that make it
    flat-foldable.  The branch pair and transmission signs are fixed by the
    mode and verified numerically before the unit is returned.
    """
    for x, name in ((alpha1, "alpha1"), (alpha2, "alpha2"), (alpha3, "alpha3")):
        _check_open_interval(x, name)
    alpha4 = mode.alpha4(alpha1, alpha2, alpha3)
    if not (0.0 < alpha4 < math.pi):
        raise InvalidAngle(f"mode {mode.value} yields alpha4 = {alpha4!r}")
    for a, b in ((alpha1, alpha2), (alpha3, alpha4)):
        if abs(a - math.pi / 2) <= TAU_ANGLE and abs(b - math.pi / 2) <= TAU_ANGLE:
            raise DegenerateVertex(
                "both free angles of one vertex equal pi/2; no transmission"
            )
    top = Vertex4((alpha1, alpha2, math.pi - alpha1, math.pi - alpha2))
    bottom = Vertex4((math.pi - alpha3, math.pi - alpha4, alpha3, alpha4))
    unit = Unit(top=top, bottom=bottom, branch_top=mode.branch,
                branch_bottom=mode.branch, signs=mode.signs,
                kind="flat_foldable", mode=mode)
    report = validate_unit(unit, n_samples)
    if not report.valid():
        raise ValidationFailed(
            f"mode {mode.value} unit failed validation: "
            f"max residual {report.max_residual:.3e}"
        )
    return unit


def valid_branch_pairs(u: Unit, *, transmitting_only: bool = True,
                       n_samples: int = 33, tol: float = TAU_UNIT) -> list:
    """Branch pairs (over the curve branches available to each vertex) on
    which the unit's transmission conditions hold.

    With `transmitting_only` the pairs whose connecting crease never folds
    are dropped; those motions do not couple a stitched column.
    """

    def curve_branches(v):
        tag = classify(v).tag
        if tag is ClassTag.STRAIGHT_LINE and not classify(v).flat_foldable:
            return (BranchId.BRANCH_2,)
        if tag in (ClassTag.DOUBLE_COLLINEAR, ClassTag.ADJACENT_COLLINEAR,
                   ClassTag.TRIVIAL):
            return ()
        return (BranchId.BRANCH_1, BranchId.BRANCH_2)

    pairs = []
    for bt in curve_branches(u.top):
        for bb in curve_branches(u.bottom):
            cand = replace(u, branch_top=bt, branch_bottom=bb)
            try:
                s2, s4 = _discover_signs(cand)
                if s2 is None and s4 is None and transmitting_only:
                    if _shared_interval(cand) <= 1e-9:
                        continue
                cand = replace(cand, signs=(s2 or 1, s4 or 1))
                report = validate_unit(cand, n_samples)
            except (EmptyInterval, OutOfDomain, DegenerateVertex, WrongClass):
                continue
            if transmitting_only and report.degenerate_shared:
                continue
            if report.valid(tol):
                pairs.append((bt, bb, cand.signs))
    return pairs


@dataclass(frozen=True)
class InfeasibilityReport:
    """Evaluation of the two transmission-matching equations that can never
    hold between a branch-1 and a branch-2 flat-foldable vertex.

    For each equation the bounded side has the form (t_a - t_b)/(t_a + t_b)
    and lies strictly inside (-1, 1); the unbounded side has the form
    (1 + t_a*t_b)/(1 - t_a*t_b) with absolute value strictly above 1 (or a
    pole).  `margin` is the gap min(|unbounded|) - max(|bounded|) > 0.
    """

    bounded_side: tuple      # values of the (t_a-t_b)/(t_a+t_b) sides
    unbounded_side: tuple    # values of the (1+t_a t_b)/(1-t_a t_b) sides
    poles: tuple             # pole flags for the unbounded sides
    margin: float


def infeasibility_witness(alpha1: float, alpha2: float, alpha3: float,
                          alpha4: float, pole_tol: float = 1e-12
                          ) -> InfeasibilityReport:
    """Show that the mixed branch pairings admit no sector-angle solution."""
    for x, name in ((alpha1, "alpha1"), (alpha2, "alpha2"),
                    (alpha3, "alpha3"), (alpha4, "alpha4")):
        _check_open_interval(x, name)
    t1, t2 = _tan_half(alpha1), _tan_half(alpha2)
    t3, t4 = _tan_half(alpha3), _tan_half(alpha4)

    bounded = ((t2 - t1) / (t2 + t1), (t4 - t3) / (t4 + t3))

    unbounded = []
    poles = []
    for prod in (t4 * t3, t2 * t1):
        den = 1.0 - prod
        if abs(den) < pole_tol:
            unbounded.append(math.inf)
            poles.append(True)
        else:
            unbounded.append((1.0 + prod) / den)
            poles.append(False)

    worst_bounded = max(abs(x) for x in bounded)
    best_unbounded = min(abs(x) for x in unbounded)
    return InfeasibilityReport(
        bounded_side=tuple(bounded),
        unbounded_side=tuple(unbounded),
        poles=tuple(poles),
        margin=best_unbounded - worst_bounded,
    )
