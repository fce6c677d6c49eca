"""
Single-vertex kinematics
========================

A developable degree-4 vertex is a spherical four-bar linkage: pick one
driving fold angle and the other three follow in closed form.  This script
classifies a few vertices, walks their branches, and checks every
configuration against the rotation-composition oracle.
"""

import math

from quadfold import (
    BranchId,
    Vertex4,
    classify,
    fold_interval,
    loop_closure_residual,
    monotonicity_check,
    solve_flatfoldable,
    solve_generic,
    solve_straightline,
    xi_of,
)

deg = math.radians


def show(v, title):
    cls = classify(v)
    flags = " (flat-foldable)" if cls.flat_foldable else ""
    print(f"\n{title}: {v!r}")
    print(f"  class: {cls.tag.value}{flags}  collinear pairs: "
          f"{cls.collinear_pairs or '-'}")


# --- a generic vertex: two smooth branches of motion -----------------------
v = Vertex4.from_degrees((80, 95, 75, 110))
show(v, "generic vertex")
print(f"  xi at rho1=60 deg: {math.degrees(xi_of(v, deg(60))):.4f} deg")
for branch in (BranchId.BRANCH_1, BranchId.BRANCH_2):
    iv = fold_interval(v, branch)
    s = solve_generic(v, 0.8 * iv.hi, branch)
    print(f"  branch {branch.value}: interval +-{math.degrees(iv.hi):7.3f} deg"
          f"  rho = [{', '.join(f'{x:8.3f}' for x in s.degrees)}] deg"
          f"  closure residual {loop_closure_residual(v, s):.1e}")
    rep = monotonicity_check(v, branch, 1000)
    print(f"    strictly monotone, smallest |slope| "
          f"{min(rep.min_abs_slope):.3f}")

# --- a straight-line vertex: a rigid line fold plus one curve ---------------
v = Vertex4.from_degrees((70, 80, 100, 110))
show(v, "straight-line vertex")
seg = solve_straightline(v, deg(30), BranchId.LINE_SEGMENT_1)
cur = solve_straightline(v, deg(30), BranchId.BRANCH_2)
print(f"  line segment at 30 deg: rho = {[round(x, 3) for x in seg.degrees]}")
print(f"  curve at 30 deg:        rho = {[round(x, 3) for x in cur.degrees]}"
      f"  closure {loop_closure_residual(v, cur):.1e}")

# --- a flat-foldable vertex: tan-half-angle transmission --------------------
v = Vertex4.from_degrees((60, 70, 120, 110))
show(v, "flat-foldable vertex")
for branch in (BranchId.BRANCH_1, BranchId.BRANCH_2):
    s = solve_flatfoldable(v, deg(90), branch)
    K = math.tan(s.rho[1] / 2) / math.tan(s.rho[0] / 2)
    print(f"  branch {branch.value}: rho = "
          f"[{', '.join(f'{x:8.3f}' for x in s.degrees)}] deg"
          f"  transmission K = {K:+.5f}")
print("  the full interval is available: the vertex folds completely flat")

# --- the four vertex classes at a glance ------------------------------------
print()
for alphas in ((90, 90, 90, 90), (50, 180, 60, 70), (200, 50, 60, 50)):
    w = Vertex4.from_degrees(alphas)
    print(f"{alphas}: {classify(w).tag.value}")
