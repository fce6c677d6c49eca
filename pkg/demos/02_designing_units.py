"""
Designing transmission units
============================

A unit joins two vertices through one crease so that the side folding angles
keep equal magnitude along the whole motion.  Flat-foldable units can be
designed directly: three sector angles are free and the fourth follows from a
tan-half-angle identity, one identity per surviving mode.  This script
designs units in all four modes, validates them numerically, and shows why
the two mixed branch pairings can never work.
"""

import json
import math

from quadfold import (
    FFUnitMode,
    Vertex4,
    infeasibility_witness,
    make_flatfoldable_basic_unit,
    make_straightline_unit,
    solve_ff_unit,
    valid_branch_pairs,
    validate_unit,
)

deg = math.radians

print("designing from alpha1=80, alpha2=100, alpha3=60 (degrees):\n")
for mode in FFUnitMode:
    unit = solve_ff_unit(deg(80), deg(100), deg(60), mode)
    report = validate_unit(unit, 200)
    note = " (connecting crease stays flat; checked through the sides)" \
        if report.degenerate_shared else ""
    print(f"mode {mode.value}: alpha4 = {math.degrees(unit.sector[5]):9.5f} deg"
          f"  branches ({unit.branch_top.value},{unit.branch_bottom.value})"
          f"  signs {unit.signs}  residual {report.max_residual:.1e}{note}")

print("\nmode 10b-1 on these angles is the exact case tan40*tan50 = 1,")
print("so alpha4 is 120 degrees exactly.\n")

# every mode admits exactly one branch pairing
unit = solve_ff_unit(deg(80), deg(95), deg(60), FFUnitMode.A_MINUS)
pairs = valid_branch_pairs(unit)
print("valid branch pairings of the 10a-2 unit:",
      [(bt.value, bb.value, s) for bt, bb, s in pairs])

# the mixed pairings have no sector-angle solution at all
rep = infeasibility_witness(deg(80), deg(100), deg(60), deg(120))
print("\nmixed-pairing check: bounded sides",
      [round(x, 4) for x in rep.bounded_side],
      "unbounded sides", [round(x, 4) for x in rep.unbounded_side])
print(f"margin between the ranges: {rep.margin:.4f} (> 0: never equal)")

# identical-vertex units: the basic families
sl = make_straightline_unit(Vertex4.from_degrees((70, 80, 100, 110)))
ffb = make_flatfoldable_basic_unit(deg(60), deg(70))
print(f"\nstraight-line basic unit residual: "
      f"{validate_unit(sl, 200).max_residual:.1e}")
print(f"flat-foldable basic unit residual: "
      f"{validate_unit(ffb, 200).max_residual:.1e}")

print("\nunit JSON (interchange format):")
print(json.dumps(ffb.to_json(), indent=2, sort_keys=True)[:400], "...")
