"""Closed-form kinematics of a developable degree-4 single-vertex creased paper.

Conventions
-----------
Sector angles ``alpha[0..3]`` (written a1..a4) are listed counter-clockwise.
Crease ``c_i`` separates sectors ``a_i`` and ``a_{i+1}`` (indices mod 4), so the
counter-clockwise order around the vertex reads::

    a1, c1, a2, c2, a3, c3, a4, c4, (back to a1)

``rho_i`` is the folding angle of crease ``c_i``: pi minus the dihedral angle
between the two panels meeting there, positive for a valley fold as seen from
the side on which the labelling runs counter-clockwise.  The driving angle of
every curve branch is ``rho1``; the auxiliary angle ``xi`` is the spherical
distance between the tips of creases c2 and c4, i.e.

    cos(xi) = cos(a1) cos(a2) - sin(a1) sin(a2) cos(rho1)

Configuration-space classes
---------------------------
A vertex falls in exactly one class, decided purely by which sums of
consecutive sector angles equal pi:

* ``ADJACENT_COLLINEAR``  one sector equals pi (its two creases form a line);
  motion: that line folds, the other two creases stay flat.
* ``STRAIGHT_LINE``       one opposite pair of creases collinear; motion is a
  line segment (fold the line only) plus one smooth curve.
* ``DOUBLE_COLLINEAR``    both opposite pairs collinear; two line segments.
* ``GENERIC``             no collinear pair, all sectors < pi; two smooth
  curves through the flat state.
* ``TRIVIAL``             a reflex sector and no collinear pair; the flat
  state is isolated.

Flat-foldability (a1 + a3 = pi and a2 + a4 = pi) is reported as a flag on top
of the class; for flat-foldable vertices the two curves reduce to tan-half
transmissions and branch identifiers BRANCH_1 / BRANCH_2 refer to those.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from enum import Enum
from typing import Callable, Sequence

from .config import TAU_ANGLE, TAU_CLAMP, TAU_CLASS_BAND, TAU_ROOT
from .errors import (
    DegenerateVertex,
    InvalidSectorAngles,
    MonotonicityViolation,
    OutOfDomain,
    WrongClass,
)

TWO_PI = 2.0 * math.pi


def normalize_angle(x: float) -> float:
    """Reduce an angle to the representative in (-pi, pi]."""
    y = math.remainder(x, TWO_PI)
    if y <= -math.pi:
        y += TWO_PI
    return y


def clamped_acos(x: float, tol: float = TAU_CLAMP) -> float:
    """arccos with clamping only inside `tol` of the bounds; OutOfDomain beyond."""
    if x > 1.0:
        if x > 1.0 + tol:
            raise OutOfDomain(f"arccos argument {x!r} exceeds 1")
        x = 1.0
    elif x < -1.0:
        if x < -1.0 - tol:
            raise OutOfDomain(f"arccos argument {x!r} below -1")
        x = -1.0
    return math.acos(x)


class ClassTag(Enum):
    ADJACENT_COLLINEAR = "adjacent_collinear"
    STRAIGHT_LINE = "straight_line"
    DOUBLE_COLLINEAR = "double_collinear"
    GENERIC = "generic"
    TRIVIAL = "trivial"


class BranchId(Enum):
    """Branch of the configuration space.

    BRANCH_1 / BRANCH_2 are the two smooth curves (for straight-line vertices
    only BRANCH_2, the curve, exists; BRANCH_1 is not defined there).
    LINE_SEGMENT_1 / LINE_SEGMENT_2 are the degenerate straight-line motions.
    """

    BRANCH_1 = "1"
    BRANCH_2 = "2"
    LINE_SEGMENT_1 = "line1"
    LINE_SEGMENT_2 = "line2"

    @classmethod
    def from_token(cls, token: str) -> "BranchId":
        token = str(token).strip().lower()
        aliases = {
            "1": cls.BRANCH_1, "branch1": cls.BRANCH_1, "b1": cls.BRANCH_1,
            "2": cls.BRANCH_2, "branch2": cls.BRANCH_2, "b2": cls.BRANCH_2,
            "line": cls.LINE_SEGMENT_1, "line1": cls.LINE_SEGMENT_1,
            "ls1": cls.LINE_SEGMENT_1,
            "line2": cls.LINE_SEGMENT_2, "ls2": cls.LINE_SEGMENT_2,
        }
        if token not in aliases:
            raise ValueError(f"unknown branch token {token!r}")
        return aliases[token]


CURVE_BRANCHES = (BranchId.BRANCH_1, BranchId.BRANCH_2)


@dataclass(frozen=True)
class VertexClass:
    tag: ClassTag
    collinear_pairs: tuple = ()
    flat_foldable: bool = False
    warnings: tuple = ()


@dataclass(frozen=True)
class Vertex4:
    """Four sector angles of a developable degree-4 vertex, in radians.

    Angles must be positive and sum to 2*pi.  A single sector may equal or
    exceed pi: exactly pi makes the flanking creases collinear (class (a)
    motion), above pi the vertex cannot fold at all (trivial class).
    """

    alpha: tuple

    def __init__(self, alpha: Sequence[float]):
        a = tuple(float(x) for x in alpha)
        if len(a) != 4:
            raise InvalidSectorAngles(f"expected 4 sector angles, got {len(a)}")
        for x in a:
            if not math.isfinite(x) or x <= 0.0 or x >= TWO_PI:
                raise InvalidSectorAngles(f"sector angle {x!r} outside (0, 2*pi)")
        if abs(sum(a) - TWO_PI) > 1e-9:
            raise InvalidSectorAngles(
                f"sector angles sum to {sum(a)!r}, expected 2*pi (not developable)"
            )
        object.__setattr__(self, "alpha", a)

    @classmethod
    def from_degrees(cls, alpha_deg: Sequence[float]) -> "Vertex4":
        return cls([math.radians(x) for x in alpha_deg])

    @property
    def degrees(self) -> tuple:
        return tuple(math.degrees(x) for x in self.alpha)

    def shifted(self, k: int) -> "Vertex4":
        """Cyclic relabelling: new a_i = old a_{i+k}."""
        k %= 4
        return Vertex4(self.alpha[k:] + self.alpha[:k])

    def mirrored(self) -> "Vertex4":
        """Reflected copy: sector order reversed as (a4, a3, a2, a1)."""
        a = self.alpha
        return Vertex4((a[3], a[2], a[1], a[0]))

    def isclose(self, other: "Vertex4", tol: float = TAU_ANGLE) -> bool:
        return all(abs(x - y) <= tol for x, y in zip(self.alpha, other.alpha))

    def __repr__(self):
        return "Vertex4(deg=[{:.6g}, {:.6g}, {:.6g}, {:.6g}])".format(*self.degrees)


@dataclass(frozen=True)
class VertexSolution:
    """One configuration on one branch: four folding angles plus xi.

    `rho` is normalized to (-pi, pi]; `raw_rho` keeps the values before the
    2*pi reduction for debugging.
    """

    rho: tuple
    xi: float
    branch: BranchId
    raw_rho: tuple = field(repr=False, default=())

    @property
    def degrees(self) -> tuple:
        return tuple(math.degrees(x) for x in self.rho)


@dataclass(frozen=True)
class FoldInterval:
    lo: float
    hi: float
    branch: BranchId

    def __post_init__(self):
        if not (self.lo <= 0.0 <= self.hi):
            raise ValueError("fold interval must contain 0")

    def contains(self, x: float, slack: float = 1e-12) -> bool:
        return self.lo - slack <= x <= self.hi + slack


def _near(x: float, target: float, tol: float) -> bool:
    return abs(x - target) <= tol


def classify(v: Vertex4, *, snap: bool = False) -> VertexClass:
    """Classify a vertex by its collinear crease pairs.

    Collinearity of two creases is decided by whether the sector angles
    strictly between them sum to pi (within TAU_ANGLE).  Sums that miss pi by
    less than TAU_CLASS_BAND are recorded as warnings; they are treated as
    collinear only when `snap` is set, so near-degenerate design inputs fail
    loudly instead of silently snapping.
    """
    return _classify_cached(v.alpha, snap)


@lru_cache(maxsize=16384)
def _classify_cached(alpha: tuple, snap: bool) -> VertexClass:
    v = Vertex4(alpha)
    return _classify_impl(v, snap)


def _classify_impl(v: Vertex4, snap: bool) -> VertexClass:
    a = v.alpha
    warnings = []
    tol = TAU_ANGLE

    def coll(total: float, what: str) -> bool:
        if _near(total, math.pi, tol):
            return True
        if _near(total, math.pi, TAU_CLASS_BAND):
            warnings.append(
                f"{what} misses pi by {total - math.pi:.3e}; "
                + ("snapped" if snap else "not snapped")
            )
            return snap
        return False

    flat = coll(a[0] + a[2], "a1+a3 (flat-foldability)")

    # one sector equal to pi: its flanking creases form a straight line
    for i in range(4):
        if coll(a[i], f"sector a{i + 1}"):
            pair = ((i - 1) % 4 + 1, i + 1)  # creases c_{i-1}, c_i (1-based)
            return VertexClass(ClassTag.ADJACENT_COLLINEAR, (pair,), flat,
                               tuple(warnings))

    if any(x > math.pi + tol for x in a):
        return VertexClass(ClassTag.TRIVIAL, (), False, tuple(warnings))

    c13 = coll(a[1] + a[2], "a2+a3 (creases c1,c3)")
    c24 = coll(a[2] + a[3], "a3+a4 (creases c2,c4)")
    if c13 and c24:
        return VertexClass(ClassTag.DOUBLE_COLLINEAR, ((1, 3), (2, 4)), flat,
                           tuple(warnings))
    if c13:
        return VertexClass(ClassTag.STRAIGHT_LINE, ((1, 3),), flat, tuple(warnings))
    if c24:
        return VertexClass(ClassTag.STRAIGHT_LINE, ((2, 4),), flat, tuple(warnings))
    return VertexClass(ClassTag.GENERIC, (), flat, tuple(warnings))


def xi_of(v: Vertex4, rho1: float) -> float:
    """Auxiliary spherical angle xi for driving angle rho1."""
    if abs(rho1) > math.pi + 1e-12:
        raise OutOfDomain(f"rho1 {rho1!r} outside [-pi, pi]")
    a1, a2 = v.alpha[0], v.alpha[1]
    arg = math.cos(a1) * math.cos(a2) - math.sin(a1) * math.sin(a2) * math.cos(rho1)
    return clamped_acos(arg)


# ---------------------------------------------------------------------------
# branch parametrizations
#
# Every branch is represented by a map r -> (rho1..rho4) in stored labels,
# with r running over a symmetric parameter interval.  For curves r is the
# canonical driving angle; for line segments r is the fold angle of the
# moving line.
# ---------------------------------------------------------------------------


# Branch formulas tolerate a little more arccos overshoot than the public
# xi_of contract: near the flat state the arguments equal +-1 exactly and
# floating-point noise pushes them past by O(1e-12).
_EVAL_CLAMP = 1e-9


def _xi_raw(a1, a2, rho1):
    arg = math.cos(a1) * math.cos(a2) - math.sin(a1) * math.sin(a2) * math.cos(rho1)
    return math.acos(max(-1.0, min(1.0, arg)))


def _generic_rhos(alpha, r, branch: BranchId, clamp_tol=_EVAL_CLAMP):
    a1, a2, a3, a4 = alpha
    rr = abs(r)
    xi = _xi_raw(a1, a2, rr)
    sx = math.sin(xi)
    if sx < 1e-14:
        raise OutOfDomain("xi hit 0 or pi; transmission undefined here")
    A = (math.cos(a2) * math.cos(xi) - math.cos(a1)) / (math.sin(a2) * sx)
    B = (math.cos(a4) - math.cos(a3) * math.cos(xi)) / (math.sin(a3) * sx)
    C = (math.cos(a3) * math.cos(a4) - math.cos(xi)) / (math.sin(a3) * math.sin(a4))
    D = (math.cos(a1) * math.cos(xi) - math.cos(a2)) / (math.sin(a1) * sx)
    E = (math.cos(a3) - math.cos(a4) * math.cos(xi)) / (math.sin(a4) * sx)
    aA = clamped_acos(A, clamp_tol)
    aB = clamped_acos(B, clamp_tol)
    aC = clamped_acos(C, clamp_tol)
    aD = clamped_acos(D, clamp_tol)
    aE = clamped_acos(E, clamp_tol)
    if branch is BranchId.BRANCH_1:
        raw = (rr, aA - aB, aC, aD - aE)
    else:
        raw = (rr, aA + aB, -aC, aD + aE)
    if r < 0:
        raw = tuple(-x for x in raw)
    return raw


_WRAP_SLACK = 1e-9


def _wrap_margin(raw, raw0) -> float:
    """Margin before any unnormalized component leaves [-pi, pi].

    The configuration curves are continuous and monotone in the unnormalized
    (lifted) folding angles; once a lift passes +-pi the crease is folded
    completely flat and the normalized representative wraps.  The usable
    parameter interval of a branch stops there.
    """
    worst = max(abs(x - x0) for x, x0 in zip(raw, raw0))
    return (math.pi + _WRAP_SLACK - worst) / math.pi


def _generic_margin(alpha, r, branch: BranchId, raw0) -> float:
    """Combined validity margin at |r|: arccos arguments inside [-1, 1] and
    no folding angle past +-pi.  Negative means the branch ended earlier."""
    a1, a2, a3, a4 = alpha
    xi = _xi_raw(a1, a2, abs(r))
    sx = math.sin(xi)
    if sx < 1e-14:
        return -1.0
    args = (
        (math.cos(a2) * math.cos(xi) - math.cos(a1)) / (math.sin(a2) * sx),
        (math.cos(a4) - math.cos(a3) * math.cos(xi)) / (math.sin(a3) * sx),
        (math.cos(a3) * math.cos(a4) - math.cos(xi)) / (math.sin(a3) * math.sin(a4)),
        (math.cos(a1) * math.cos(xi) - math.cos(a2)) / (math.sin(a1) * sx),
        (math.cos(a3) - math.cos(a4) * math.cos(xi)) / (math.sin(a4) * sx),
    )
    m = 1.0 - max(abs(x) for x in args)
    if m < -1e-13:
        return m
    raw = _generic_rhos(alpha, abs(r), branch)
    return min(m, _wrap_margin(raw, raw0))


def _sl_margin(alpha, r, raw0) -> float:
    a1, a2 = alpha[0], alpha[1]
    xi = _xi_raw(a1, a2, abs(r))
    sx = math.sin(xi)
    if sx < 1e-14:
        return -1.0
    args = (
        (math.cos(a2) * math.cos(xi) - math.cos(a1)) / (math.sin(a2) * sx),
        (math.cos(a1) * math.cos(xi) - math.cos(a2)) / (math.sin(a1) * sx),
    )
    m = 1.0 - max(abs(x) for x in args)
    if m < -1e-13:
        return m
    raw = _sl_rhos(alpha, abs(r))
    return min(m, _wrap_margin(raw, raw0))


def _sl_rhos(alpha, r, clamp_tol=_EVAL_CLAMP):
    """Curve branch of a straight-line vertex in canonical labels
    (a1 + a4 = pi, a2 + a3 = pi): rho3 = -rho1, rho2/rho4 doubled arccos."""
    a1, a2 = alpha[0], alpha[1]
    rr = abs(r)
    xi = _xi_raw(a1, a2, rr)
    sx = math.sin(xi)
    if sx < 1e-14:
        raise OutOfDomain("xi hit 0 or pi; transmission undefined here")
    A = (math.cos(a2) * math.cos(xi) - math.cos(a1)) / (math.sin(a2) * sx)
    D = (math.cos(a1) * math.cos(xi) - math.cos(a2)) / (math.sin(a1) * sx)
    raw = (rr, 2.0 * clamped_acos(A, clamp_tol), -rr, 2.0 * clamped_acos(D, clamp_tol))
    if r < 0:
        raw = tuple(-x for x in raw)
    return raw


def _ff_coefficient(alpha, branch: BranchId) -> float:
    a1, a2 = alpha[0], alpha[1]
    if branch is BranchId.BRANCH_1:
        return math.sin((a2 - a1) / 2.0) / math.sin((a2 + a1) / 2.0)
    den = math.cos((a2 + a1) / 2.0)
    if abs(den) < 1e-12:
        raise DegenerateVertex(
            "branch 2 of this flat-foldable vertex degenerates to a line "
            "segment (a1 + a2 = pi)"
        )
    return -math.cos((a2 - a1) / 2.0) / den


def _ff_rhos(alpha, r, branch: BranchId):
    K = _ff_coefficient(alpha, branch)
    r2 = 2.0 * math.atan2(K * math.sin(r / 2.0), math.cos(r / 2.0))
    if branch is BranchId.BRANCH_1:
        return (r, r2, r, -r2)
    return (r, r2, -r, r2)


def _segment_rhos(slots, r):
    return tuple(r if k in slots else 0.0 for k in range(4))


class _BranchParam:
    """Parametrized branch: rho(r) over a symmetric closed interval."""

    def __init__(self, fn: Callable[[float], tuple], r_max: float,
                 kind: str, raw_fn=None):
        self.fn = fn
        self.r_max = r_max
        self.kind = kind  # "curve" | "segment"
        self.raw_fn = raw_fn or fn

    def rho(self, r: float) -> tuple:
        return tuple(normalize_angle(x) for x in self.fn(r))


def _segment_slots(pair) -> tuple:
    """0-based rho components that move on the line-segment branch for a
    collinear crease pair given in 1-based labels."""
    return tuple(i - 1 for i in pair)


def _raw_baseline(raw_fn) -> tuple:
    """Multiples of 2*pi the raw components start from at the flat state."""
    raw = raw_fn(1e-9)
    return tuple(TWO_PI * round(x / TWO_PI) for x in raw)


def _curve_interval(alpha, margin_fn) -> float:
    """Largest r in (0, pi] on which the branch stays valid: every arccos
    argument inside [-1, 1] and no folding angle wrapped past +-pi; the
    endpoint is located by bisection on the first violated condition."""
    hi = math.pi
    if margin_fn(alpha, hi) >= -1e-13:
        return hi
    n = 64
    good = 0.0
    bad = hi
    for k in range(1, n + 1):
        r = hi * k / n
        if margin_fn(alpha, r) >= -1e-13:
            good = r
        else:
            bad = r
            break
    while bad - good > TAU_ROOT:
        mid = 0.5 * (good + bad)
        if margin_fn(alpha, mid) >= -1e-13:
            good = mid
        else:
            bad = mid
    return good


def _branch_param(v: Vertex4, branch: BranchId) -> _BranchParam:
    """Resolve a branch of `v` to an evaluable parametrization (cached).

    Raises WrongClass when the branch does not exist for the vertex class.
    """
    return _branch_param_cached(v.alpha, branch)


@lru_cache(maxsize=8192)
def _branch_param_cached(alpha: tuple, branch: BranchId) -> _BranchParam:
    v = Vertex4(alpha)
    cls = classify(v)
    a = alpha

    if cls.tag is ClassTag.TRIVIAL:
        raise WrongClass("trivial configuration space: no branches exist")

    if cls.flat_foldable and branch in CURVE_BRANCHES:
        a1, a2 = a[0], a[1]
        if abs(a1 - math.pi / 2) <= TAU_ANGLE and abs(a2 - math.pi / 2) <= TAU_ANGLE:
            raise DegenerateVertex("flat-foldable vertex with a1 = a2 = pi/2")
        if branch is BranchId.BRANCH_2 and abs(a1 + a2 - math.pi) <= TAU_ANGLE:
            # pole of the tan-half coefficient: branch 2 is the segment
            # rho2 = rho4 free, rho1 = rho3 = 0
            return _BranchParam(lambda r: _segment_rhos((1, 3), r), math.pi,
                                "segment")
        return _BranchParam(lambda r, b=branch: _ff_rhos(a, r, b), math.pi, "curve")

    if cls.tag is ClassTag.ADJACENT_COLLINEAR:
        if branch is not BranchId.LINE_SEGMENT_1:
            raise WrongClass(
                "adjacent-collinear vertex admits only its line-segment motion"
            )
        slots = _segment_slots(cls.collinear_pairs[0])
        return _BranchParam(lambda r: _segment_rhos(slots, r), math.pi, "segment")

    if cls.tag is ClassTag.DOUBLE_COLLINEAR:
        if branch is BranchId.LINE_SEGMENT_1:
            return _BranchParam(lambda r: _segment_rhos((0, 2), r), math.pi,
                                "segment")
        if branch is BranchId.LINE_SEGMENT_2:
            return _BranchParam(lambda r: _segment_rhos((1, 3), r), math.pi,
                                "segment")
        raise WrongClass("double-collinear vertex has only two line segments")

    if cls.tag is ClassTag.STRAIGHT_LINE:
        # canonical form puts the collinear pair on (c1, c3); a (c2, c4)
        # vertex is relabelled by a cyclic shift of 1
        shift = 0 if cls.collinear_pairs[0] == (1, 3) else 1
        ac = v.shifted(shift).alpha

        def unshift(t, k=shift):
            # stored rho_i = canonical rho_{i-k}
            return tuple(t[(i - k) % 4] for i in range(4))

        if branch is BranchId.LINE_SEGMENT_1:
            return _BranchParam(
                lambda r: unshift(_segment_rhos((0, 2), r)), math.pi, "segment"
            )
        if branch is BranchId.BRANCH_2:
            raw0 = _raw_baseline(lambda r: _sl_rhos(ac, r))
            r_max = _curve_interval(
                ac, lambda al, r, z=raw0: _sl_margin(al, r, z)
            )
            return _BranchParam(lambda r: unshift(_sl_rhos(ac, r)), r_max, "curve")
        raise WrongClass(
            "straight-line vertex has only LINE_SEGMENT_1 and BRANCH_2"
        )

    # generic
    if branch not in CURVE_BRANCHES:
        raise WrongClass("generic vertex has only the two curve branches")
    return _generic_param(a, branch)


@lru_cache(maxsize=8192)
def _generic_param(a: tuple, branch: BranchId) -> _BranchParam:
    """Curve parametrization through the general closed forms (no
    flat-foldable shortcut): used directly by solve_generic so the special
    and general transmissions stay independently testable."""
    raw0 = _raw_baseline(lambda r, b=branch: _generic_rhos(a, r, b))
    r_max = _curve_interval(
        a, lambda al, r, b=branch, z=raw0: _generic_margin(al, r, b, z)
    )
    return _BranchParam(lambda r, b=branch: _generic_rhos(a, r, b), r_max,
                        "curve")


def _eval_param(v: Vertex4, p: _BranchParam, r: float,
                branch: BranchId) -> VertexSolution:
    if abs(r) > p.r_max + 1e-12:
        raise OutOfDomain(
            f"parameter {r!r} outside fold interval [-{p.r_max!r}, {p.r_max!r}]"
        )
    if r == 0.0:
        zero = (0.0, 0.0, 0.0, 0.0)
        return VertexSolution(rho=zero, xi=xi_of(v, 0.0), branch=branch,
                              raw_rho=zero)
    raw = p.raw_fn(r)
    rho = tuple(normalize_angle(x) for x in raw)
    return VertexSolution(rho=rho, xi=xi_of(v, rho[0]), branch=branch, raw_rho=raw)


def solve_on_branch(v: Vertex4, r: float, branch: BranchId) -> VertexSolution:
    """Evaluate a branch at parameter r (class-dispatched).

    The flat state is returned exactly at r = 0 (all branches pass through
    it); elsewhere the branch's closed forms are evaluated.  Flat-foldable
    vertices use their specialized tan-half transmissions here; use
    solve_generic to evaluate the general equations on them instead.
    """
    return _eval_param(v, _branch_param(v, branch), r, branch)


def solve_generic(v: Vertex4, rho1: float, branch: BranchId) -> VertexSolution:
    """Solve a generic (no collinear creases) vertex at driving angle rho1.

    Always evaluates the general curve equations, also on vertices that
    happen to be flat-foldable, so the specialized transmissions can be
    checked against it.
    """
    if branch not in CURVE_BRANCHES:
        raise WrongClass("solve_generic takes BRANCH_1 or BRANCH_2")
    if classify(v).tag is not ClassTag.GENERIC:
        raise WrongClass(f"solve_generic requires a generic vertex, got {v!r}")
    return _eval_param(v, _generic_param(v.alpha, branch), rho1, branch)


def solve_straightline(v: Vertex4, rho1: float, branch: BranchId) -> VertexSolution:
    """Solve a straight-line vertex.

    `rho1` is the fold angle on the collinear crease line (the canonical
    driving angle); the returned angles are in the vertex's own labels.
    Double-collinear vertices are accepted for their line-segment motions.
    """
    tag = classify(v).tag
    if tag is ClassTag.DOUBLE_COLLINEAR:
        if branch is BranchId.BRANCH_2:
            raise WrongClass(
                "double-collinear vertex has no curve branch; use its segments"
            )
        return solve_on_branch(v, rho1, branch)
    if tag is not ClassTag.STRAIGHT_LINE:
        raise WrongClass("solve_straightline requires a straight-line vertex")
    if branch not in (BranchId.LINE_SEGMENT_1, BranchId.BRANCH_2):
        raise WrongClass("straight-line branches are LINE_SEGMENT_1 and BRANCH_2")
    return solve_on_branch(v, rho1, branch)


def solve_flatfoldable(v: Vertex4, rho1: float, branch: BranchId) -> VertexSolution:
    """Solve a flat-foldable vertex with the tan-half-angle transmissions."""
    if branch not in CURVE_BRANCHES:
        raise WrongClass("solve_flatfoldable takes BRANCH_1 or BRANCH_2")
    cls = classify(v)
    if not cls.flat_foldable:
        raise WrongClass("vertex is not flat-foldable (a1+a3 != pi)")
    a1, a2 = v.alpha[0], v.alpha[1]
    if abs(a1 - math.pi / 2) <= TAU_ANGLE and abs(a2 - math.pi / 2) <= TAU_ANGLE:
        raise DegenerateVertex("flat-foldable vertex with a1 = a2 = pi/2")
    if branch is BranchId.BRANCH_2 and abs(a1 + a2 - math.pi) <= TAU_ANGLE:
        # segment branch: only the flat point can be addressed through rho1
        if abs(rho1) > TAU_ANGLE:
            raise OutOfDomain(
                "branch 2 degenerates to a segment with rho1 = 0 here"
            )
        return VertexSolution((0.0,) * 4, xi_of(v, 0.0), branch, (0.0,) * 4)
    return solve_on_branch(v, rho1, branch)


def fold_interval(v: Vertex4, branch: BranchId) -> FoldInterval:
    """Maximal closed driving-angle interval containing 0 for a branch.

    For segment branches the returned interval refers to rho1: it is
    [-pi, pi] when crease c1 lies on the moving line and degenerate [0, 0]
    when rho1 is identically zero on the segment.
    """
    p = _branch_param(v, branch)
    if p.kind == "segment":
        rho_probe = p.fn(1.0)
        if rho_probe[0] != 0.0:
            return FoldInterval(-math.pi, math.pi, branch)
        return FoldInterval(0.0, 0.0, branch)
    return FoldInterval(-p.r_max, p.r_max, branch)


@dataclass(frozen=True)
class MonotonicityReport:
    branch: BranchId
    n_samples: int
    min_abs_slope: tuple  # per component rho2, rho3, rho4
    passed: bool


def monotonicity_check(v: Vertex4, branch: BranchId,
                       n_samples: int = 1000) -> MonotonicityReport:
    """Scan a curve branch and assert rho2, rho3, rho4 strictly monotone in
    the driving angle; returns the smallest finite-difference slope seen."""
    cls = classify(v)
    if cls.tag not in (ClassTag.GENERIC, ClassTag.STRAIGHT_LINE):
        raise WrongClass("monotonicity scan applies to generic or straight-line "
                         "vertices")
    p = _branch_param(v, branch)
    if p.kind != "curve":
        raise WrongClass("monotonicity scan applies to curve branches")
    if n_samples < 3:
        raise ValueError("need at least 3 samples")
    # monotonicity is a statement about the continuous (unnormalized) lifts
    # of the folding angles; the normalized representatives wrap at +-pi
    base = tuple(TWO_PI * round(x / TWO_PI) for x in p.raw_fn(1e-9))

    def lift(r):
        s = 1.0 if r >= 0 else -1.0
        return tuple(x - s * b for x, b in zip(p.raw_fn(r), base))

    rs = [p.r_max * (2.0 * k / (n_samples - 1) - 1.0) for k in range(n_samples)]
    prev = lift(rs[0])
    min_slope = [math.inf] * 3
    direction = [0] * 3
    for idx in range(1, n_samples):
        cur = lift(rs[idx])
        dr = rs[idx] - rs[idx - 1]
        for comp in range(3):
            d = (cur[comp + 1] - prev[comp + 1]) / dr
            sgn = 1 if d > 0 else (-1 if d < 0 else 0)
            if direction[comp] == 0:
                direction[comp] = sgn
            if sgn == 0 or sgn != direction[comp]:
                raise MonotonicityViolation(
                    f"rho{comp + 2} not strictly monotone between driving "
                    f"angles {rs[idx - 1]:.9g} and {rs[idx]:.9g}",
                    component=comp + 2,
                    sample_pair=(rs[idx - 1], rs[idx]),
                )
            min_slope[comp] = min(min_slope[comp], abs(d))
        prev = cur
    return MonotonicityReport(branch, n_samples, tuple(min_slope), True)


# ---------------------------------------------------------------------------
# driving a vertex from an arbitrary crease
# ---------------------------------------------------------------------------


def _bisect_component(p: _BranchParam, comp: int, target: float) -> float:
    """Invert the strictly monotone map r -> rho[comp] by bisection.

    Works on the unnormalized lift of the component, which is continuous and
    monotone over the whole parameter interval (the normalized value wraps at
    the interval endpoints where a crease folds completely flat).
    """
    base = tuple(TWO_PI * round(x / TWO_PI) for x in p.raw_fn(1e-9))

    def lift(r):
        s = 1.0 if r >= 0 else -1.0
        return p.raw_fn(r)[comp] - s * base[comp]

    lo, hi = -p.r_max, p.r_max
    vlo, vhi = lift(lo), lift(hi)
    for t in (target, target - TWO_PI, target + TWO_PI):
        a, b, fa, fb = lo, hi, vlo - t, vhi - t
        if fa == 0.0:
            return a
        if fb == 0.0:
            return b
        if fa * fb > 0.0:
            continue
        for _ in range(90):
            mid = 0.5 * (a + b)
            fm = lift(mid) - t
            if fm == 0.0:
                return mid
            if (fm > 0.0) == (fb > 0.0):
                b, fb = mid, fm
            else:
                a, fa = mid, fm
            if b - a < 1e-15:
                break
        return 0.5 * (a + b)
    raise OutOfDomain(
        f"target angle {target!r} outside the image of rho{comp + 1} "
        "on this branch"
    )


def solve_at_crease(v: Vertex4, crease: int, angle: float,
                    branch: BranchId) -> VertexSolution:
    """Solve the vertex so that crease `crease` (1..4) folds by `angle`.

    Uses the closed-form inversion where one exists (crease 1 always; crease 3
    for every class; any crease of a flat-foldable vertex) and monotone
    bisection otherwise.
    """
    if crease not in (1, 2, 3, 4):
        raise ValueError("crease index must be 1..4")
    comp = crease - 1
    if abs(angle) < 1e-15:
        return VertexSolution((0.0,) * 4, xi_of(v, 0.0), branch, (0.0,) * 4)

    cls = classify(v)
    p = _branch_param(v, branch)

    if p.kind == "segment":
        probe = p.fn(1.0)
        if probe[comp] == 0.0:
            raise OutOfDomain(
                f"crease {crease} does not fold on this segment; cannot drive"
            )
        sol = p.rho(angle)
        return VertexSolution(sol, xi_of(v, sol[0]), branch, p.fn(angle))

    # closed forms
    r = None
    if cls.flat_foldable:
        K = _ff_coefficient(v.alpha, branch)
        sgn3 = 1.0 if branch is BranchId.BRANCH_1 else -1.0
        if comp == 0:
            r = angle
        elif comp == 2:
            r = sgn3 * angle
        else:
            Keff = K if comp == 1 else (-K if branch is BranchId.BRANCH_1 else K)
            if abs(Keff) < 1e-14:
                raise OutOfDomain(
                    f"crease {crease} never folds on this branch (zero "
                    "transmission)"
                )
            r = normalize_angle(
                2.0 * math.atan2(math.sin(angle / 2.0), Keff * math.cos(angle / 2.0))
            )
    elif cls.tag is ClassTag.GENERIC:
        if comp == 0:
            r = angle
        elif comp == 2:
            a1, a2, a3, a4 = v.alpha
            cxi = (math.cos(a3) * math.cos(a4)
                   - math.sin(a3) * math.sin(a4) * math.cos(angle))
            cr = (math.cos(a1) * math.cos(a2) - cxi) / (math.sin(a1) * math.sin(a2))
            mag = clamped_acos(cr)
            same_sign = branch is BranchId.BRANCH_1
            r = mag if (angle > 0) == same_sign else -mag
    elif cls.tag is ClassTag.STRAIGHT_LINE:
        shift = 0 if cls.collinear_pairs[0] == (1, 3) else 1
        comp_c = (comp - shift) % 4  # component in canonical labels
        if comp_c == 0:
            r = angle
        elif comp_c == 2:
            r = -angle

    if r is None:
        r = _bisect_component(p, comp, angle)

    if abs(r) > p.r_max + 1e-9:
        raise OutOfDomain(
            f"driving crease {crease} to {angle!r} needs parameter {r!r} "
            f"outside [-{p.r_max!r}, {p.r_max!r}]"
        )
    r = max(-p.r_max, min(p.r_max, r))
    sol = solve_on_branch(v, r, branch)
    if abs(normalize_angle(sol.rho[comp] - angle)) > 1e-7:
        raise OutOfDomain(
            f"crease {crease} cannot reach {angle!r} on branch {branch.value}"
        )
    return sol
