"""Command-line interface.

All angles at this boundary are degrees.  Exit codes: 0 success, 1 validation
failure, 2 usage error.  Set QUADFOLD_CONFIG to a JSON file to override
tolerances and sample counts.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .config import CliConfig
from .errors import QuadfoldError
from .foldability import build_tree, certify, mv_assignment, propagate
from .foldio import export_fold, export_obj, export_svg, fold_dumps, import_fold
from .pattern import StitchPlan, count_dof, stitch
from .realize import sweep
from .units import FFUnitMode, Unit, solve_ff_unit, validate_unit
from .vertex import (
    BranchId,
    Vertex4,
    classify,
    fold_interval,
    solve_on_branch,
)

_F = "{:.12g}".format


def _parse_alphas(text: str, count: int):
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != count:
        raise argparse.ArgumentTypeError(
            f"expected {count} comma-separated angles, got {len(parts)}"
        )
    return [math.radians(float(p)) for p in parts]


def _deg_list(values):
    return " ".join(_F(math.degrees(v)) for v in values)


def _cmd_vertex_solve(args, cfg):
    v = Vertex4(_parse_alphas(args.alphas, 4))
    branch = BranchId.from_token(args.branch)
    cls = classify(v)
    sol = solve_on_branch(v, math.radians(args.rho1), branch)
    print(f"class: {cls.tag.value}"
          + (" (flat-foldable)" if cls.flat_foldable else ""))
    print(f"branch: {branch.value}")
    print(f"xi_deg: {_F(math.degrees(sol.xi))}")
    print(f"rho_deg: {_deg_list(sol.rho)}")
    return 0


def _cmd_vertex_interval(args, cfg):
    v = Vertex4(_parse_alphas(args.alphas, 4))
    branch = BranchId.from_token(args.branch)
    iv = fold_interval(v, branch)
    print(f"branch: {branch.value}")
    print(f"interval_deg: [{_F(math.degrees(iv.lo))}, {_F(math.degrees(iv.hi))}]")
    return 0


def _cmd_unit_solve_ff(args, cfg):
    a1, a2, a3 = _parse_alphas(args.alphas, 3)
    mode = FFUnitMode.from_token(args.mode)
    unit = solve_ff_unit(a1, a2, a3, mode, n_samples=cfg.samples)
    alpha4 = unit.sector[5]  # bottom vertex's second free angle
    print(f"alpha4_deg: {_F(math.degrees(alpha4))}")
    print(fold_dumps(unit.to_json()))
    return 0


def _cmd_unit_validate(args, cfg):
    with open(args.file, encoding="utf-8") as fh:
        unit = Unit.from_json(json.load(fh))
    report = validate_unit(unit, args.samples or cfg.samples,
                           tol=cfg.tolerances.unit)
    print(f"samples: {report.n_samples}")
    print(f"max_residual: {report.max_residual:.3e}")
    if report.degenerate_shared:
        print("note: connecting crease stays flat on this branch pair; "
              "validated through the side creases")
    ok = report.valid(cfg.tolerances.unit)
    print("valid" if ok else "INVALID")
    return 0 if ok else 1


def _load_pattern(path):
    with open(path, encoding="utf-8") as fh:
        return import_fold(fh.read())


def _parse_branch_spec(spec, p):
    """Columns separated by ';', per-row tokens separated by ','."""
    if spec is None:
        return None
    cols = [s for s in spec.split(";") if s.strip()]
    if len(cols) != p.n:
        raise argparse.ArgumentTypeError(
            f"branch spec needs {p.n} column groups, got {len(cols)}"
        )
    per_col = [[BranchId.from_token(t) for t in col.split(",")] for col in cols]
    for col in per_col:
        if len(col) != p.m:
            raise argparse.ArgumentTypeError(
                f"each column group needs {p.m} branch tokens"
            )
    return tuple(tuple(per_col[j][i] for j in range(p.n)) for i in range(p.m))


def _cmd_pattern_stitch(args, cfg):
    with open(args.plan, encoding="utf-8") as fh:
        plan = StitchPlan.from_json(json.load(fh))
    pattern = stitch(plan)
    doc = export_fold(pattern)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(fold_dumps(doc))
    print(f"wrote {args.output} ({pattern.m}x{pattern.n} inner vertices)")
    return 0


def _cmd_pattern_certify(args, cfg):
    p = _load_pattern(args.pattern)
    branches = _parse_branch_spec(args.branches, p)
    report = certify(p, branches, args.samples or cfg.samples,
                     compat_tol=cfg.tolerances.compat)
    print(report.summary())
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report.dumps())
        print(f"wrote {args.report}")
    return 0 if report.verdict else 1


def _cmd_pattern_count(args, cfg):
    with open(args.plan, encoding="utf-8") as fh:
        plan = StitchPlan.from_json(json.load(fh))
    report = count_dof(plan)
    print(f"{report.caption()}; branches {report.branch_count}")
    return 0


def _cmd_pattern_sweep(args, cfg):
    p = _load_pattern(args.pattern)
    branches = _parse_branch_spec(args.branches, p)
    result = sweep(p, branches, args.frames or cfg.frames,
                   n_samples=cfg.samples)
    os.makedirs(args.out_dir, exist_ok=True)
    tree = build_tree(p)
    for k, (state, t) in enumerate(zip(result.frames, result.driving_angles)):
        if args.format == "obj":
            path = os.path.join(args.out_dir, f"frame_{k:03d}.obj")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(export_obj(state, p))
        else:
            prop = propagate(tree, t, branches)
            doc = export_fold(state, pattern=p, angles=prop)
            path = os.path.join(args.out_dir, f"frame_{k:03d}.fold")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(fold_dumps(doc))
    print(f"wrote {len(result.frames)} frames to {args.out_dir}")
    print(f"max rigidity residual: {result.max_rigidity_residual:.3e}")
    print(f"max closure residual: {result.max_closure_residual:.3e}")
    return 0


def _cmd_pattern_svg(args, cfg):
    p = _load_pattern(args.pattern)
    mv = None
    if args.rho is not None:
        mv = mv_assignment(p, None, math.radians(args.rho),
                           flat_tol=cfg.tolerances.flat)
    svg = export_svg(p, mv)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="quadfold",
        description="Design, certify and fold rigid-foldable quadrilateral "
                    "crease patterns (angles in degrees).",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    vx = sub.add_parser("vertex", help="single-vertex kinematics")
    vxs = vx.add_subparsers(dest="subcommand", required=True)
    s = vxs.add_parser("solve", help="fold angles at one driving angle")
    s.add_argument("--alphas", required=True,
                   help="four sector angles, comma separated (deg)")
    s.add_argument("--rho1", type=float, required=True,
                   help="driving angle (deg)")
    s.add_argument("--branch", required=True,
                   help="branch: 1, 2 or line")
    s.set_defaults(fn=_cmd_vertex_solve)
    s = vxs.add_parser("interval", help="fold interval of a branch")
    s.add_argument("--alphas", required=True)
    s.add_argument("--branch", required=True)
    s.set_defaults(fn=_cmd_vertex_interval)

    un = sub.add_parser("unit", help="two-vertex transmission units")
    uns = un.add_subparsers(dest="subcommand", required=True)
    s = uns.add_parser("solve-ff", help="design a flat-foldable unit")
    s.add_argument("--alphas", required=True,
                   help="three free sector angles (deg)")
    s.add_argument("--mode", required=True,
                   choices=[m.value for m in FFUnitMode])
    s.set_defaults(fn=_cmd_unit_solve_ff)
    s = uns.add_parser("validate", help="validate a unit JSON file")
    s.add_argument("file")
    s.add_argument("--samples", type=int, default=None)
    s.set_defaults(fn=_cmd_unit_validate)

    pt = sub.add_parser("pattern", help="stitched blankets")
    pts = pt.add_subparsers(dest="subcommand", required=True)
    s = pts.add_parser("stitch", help="assemble a plan into a FOLD file")
    s.add_argument("plan")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(fn=_cmd_pattern_stitch)
    s = pts.add_parser("certify", help="certify rigid-foldability")
    s.add_argument("pattern")
    s.add_argument("--branches", default=None,
                   help="per-vertex branches: columns ';'-separated, rows "
                        "','-separated (default: stored assignment)")
    s.add_argument("--samples", type=int, default=None)
    s.add_argument("--report", default=None, help="write JSON report here")
    s.set_defaults(fn=_cmd_pattern_certify)
    s = pts.add_parser("count", help="independent sector angles and branches")
    s.add_argument("plan")
    s.set_defaults(fn=_cmd_pattern_count)
    s = pts.add_parser("sweep", help="realize the folding motion")
    s.add_argument("pattern")
    s.add_argument("--frames", type=int, default=None)
    s.add_argument("--out-dir", required=True)
    s.add_argument("--format", choices=("obj", "fold"), default="obj")
    s.add_argument("--branches", default=None)
    s.set_defaults(fn=_cmd_pattern_sweep)
    s = pts.add_parser("svg", help="export the crease pattern drawing")
    s.add_argument("pattern")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--rho", type=float, default=None,
                   help="driving angle (deg) for mountain/valley colors")
    s.set_defaults(fn=_cmd_pattern_svg)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = CliConfig.from_env()
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"bad QUADFOLD_CONFIG: {exc}", file=sys.stderr)
        return 2
    try:
        return args.fn(args, cfg)
    except argparse.ArgumentTypeError as exc:
        ap.error(str(exc))  # exits with code 2
    except QuadfoldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
