"""
Stitching blankets and certifying rigid-foldability
===================================================

Units stack into columns and columns stitch into a quadrilateral blanket.
Certification cuts the creases between columns, propagates fold angles down
the resulting tree from a single driving angle, and demands that the two
values arriving at every cut crease coincide along a whole interval.  This
script runs the pipeline on both showcase blankets and on a deliberately
broken copy.
"""

import json
import math
import os

from quadfold import (
    Vertex4,
    certify,
    count_dof,
    enumerate_branch_choices,
    export_fold,
    export_svg,
    fold_dumps,
    mv_assignment,
    stitch,
)
from quadfold.fixtures import showcase_a_plan, showcase_b_plan

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

for name, plan in (("showcase_a", showcase_a_plan()),
                   ("showcase_b", showcase_b_plan())):
    print(f"\n=== {name} ===")
    plan_path = os.path.join(OUT, f"{name}_plan.json")
    with open(plan_path, "w", encoding="utf-8") as fh:
        json.dump(plan.to_json(), fh, indent=2, sort_keys=True)
    print(f"wrote {plan_path} (replayable: quadfold pattern count/stitch)")
    report = count_dof(plan)
    print(f"independent sector angles: {report.caption()}"
          f"   motion branches: {report.branch_count}")

    pattern = stitch(plan)
    print(f"stitched: {pattern.m}x{pattern.n} inner vertices, "
          f"parallel panel rows: {pattern.parallel_rows()}")

    cert = certify(pattern, None, 200)
    lo, hi = (math.degrees(x) for x in cert.interval)
    print(f"certified rigid-foldable: {cert.verdict}  "
          f"interval [{lo:.2f}, {hi:.2f}] deg  "
          f"max residual {cert.max_residual:.2e}")

    fold_path = os.path.join(OUT, f"{name}.fold")
    with open(fold_path, "w", encoding="utf-8") as fh:
        fh.write(fold_dumps(export_fold(pattern)))
    mv = mv_assignment(pattern, None, cert.interval[1] / 2)
    svg_path = os.path.join(OUT, f"{name}.svg")
    with open(svg_path, "w", encoding="utf-8") as fh:
        fh.write(export_svg(pattern, mv))
    print(f"wrote {fold_path} and {svg_path}")

# every branch choice of showcase B folds; a wrong choice does not
pattern_b = stitch(showcase_b_plan())
choices = list(enumerate_branch_choices(pattern_b))
print(f"\nshowcase B branch choices: {len(choices)}")
for k, choice in enumerate(choices):
    cert = certify(pattern_b, choice, 60)
    print(f"  choice {k}: certified={cert.verdict} "
          f"(residual {cert.max_residual:.1e})")

# break one vertex by half a degree and watch certification refuse
pattern_a = stitch(showcase_a_plan())
v = pattern_a.vertex(1, 1)
alpha = list(v.alpha)
alpha[0] += math.radians(0.5)
alpha[2] -= math.radians(0.5)
broken = pattern_a.with_vertex(1, 1, Vertex4(alpha))
cert = certify(broken, None, 60)
print(f"\nafter a 0.5 degree perturbation: certified={cert.verdict}")
print(f"  reason: {cert.reason}")
