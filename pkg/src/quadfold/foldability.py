"""Numerical rigid-foldability certification of a quadrilateral blanket.

The check cuts every horizontal inner crease below the top row, which turns
the interior crease graph into a tree: the top row chains the columns
together and each column hangs below its top-row vertex.  Fold angles then
propagate uniquely from a single driving angle (the left crease of the
top-left vertex).  At every cut crease two values arrive independently - one
from the column on its left (theta), one from the column on its right (phi) -
and the pattern folds rigidly exactly when theta and phi coincide along a
whole interval of the driving angle.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

from .config import DEFAULT_SAMPLES, TAU_COMPAT, TAU_FLAT
from .errors import (
    EmptyInterval,
    NotABlanket,
    OutOfDomain,
    PropagationConflict,
    QuadfoldError,
    WrongClass,
)
from .pattern import QuadPattern
from .vertex import BranchId, normalize_angle, solve_at_crease

BranchChoice = Union[None, BranchId, Sequence]


@dataclass(frozen=True)
class TreeStructure:
    """Blanket with the inter-column creases below the top row severed."""

    pattern: QuadPattern
    cut_creases: tuple  # (i, j): crease between inner vertices (i,j)-(i,j+1)

    @property
    def n_cuts(self) -> int:
        return len(self.cut_creases)


def build_tree(p: QuadPattern) -> TreeStructure:
    """Select the cut creases and verify the interior becomes acyclic."""
    if p.m < 1 or p.n < 1:
        raise NotABlanket("pattern has no inner vertices")
    cuts = tuple((i, j) for i in range(1, p.m) for j in range(p.n - 1))

    # the kept interior edges must form a spanning tree of the inner vertices
    parent = list(range(p.m * p.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
        return True

    kept = 0
    for j in range(p.n):
        for i in range(p.m - 1):
            if not union(i * p.n + j, (i + 1) * p.n + j):
                raise NotABlanket("interior crease graph has a cycle")
            kept += 1
    for j in range(p.n - 1):
        if not union(j, j + 1):
            raise NotABlanket("interior crease graph has a cycle")
        kept += 1
    if kept != p.m * p.n - 1:
        raise NotABlanket("interior crease graph is not connected")
    return TreeStructure(pattern=p, cut_creases=cuts)


def _branch_grid(p: QuadPattern, choice: BranchChoice):
    if choice is None:
        return p.branch_default
    if isinstance(choice, BranchId):
        return tuple(tuple(choice for _ in range(p.n)) for _ in range(p.m))
    grid = tuple(
        tuple(b if isinstance(b, BranchId) else BranchId.from_token(b)
              for b in row)
        for row in choice
    )
    if len(grid) != p.m or any(len(row) != p.n for row in grid):
        raise ValueError(f"branch choice must be a {p.m}x{p.n} grid")
    return grid


@dataclass(frozen=True)
class Propagation:
    """All folding angles of the tree at one driving angle."""

    driving: float
    solutions: tuple          # m x n VertexSolution
    theta_phi: tuple          # ((i, j), theta, phi) per cut crease

    def max_residual(self) -> float:
        if not self.theta_phi:
            return 0.0
        return max(abs(normalize_angle(t - f)) for _, t, f in self.theta_phi)

    def rho(self, i: int, j: int) -> tuple:
        return self.solutions[i][j].rho

    def edge_angle(self, kind: str, a, b) -> float:
        """Fold angle of a grid edge (same addressing as QuadPattern.edges).

        Cut creases report the value propagated from the left column.
        """
        (r1, c1), (r2, c2) = a, b
        m = len(self.solutions)
        n = len(self.solutions[0])
        if kind == "col":
            c = c1
            r = min(r1, r2)
            j = c - 1
            if r <= m - 1:
                return self.solutions[r][j].rho[0]      # U crease of (r, j)
            return self.solutions[m - 1][j].rho[2]      # bottom stub
        if kind == "row":
            r = r1
            c = min(c1, c2)
            i = r - 1
            if c == 0:
                return self.solutions[i][0].rho[1]      # left stub
            return self.solutions[i][c - 1].rho[3]      # R crease of (i, c-1)
        raise ValueError("boundary edges do not fold")


def propagate(tree: TreeStructure, rho_top, branch_choice: BranchChoice = None,
              *, compat_tol: float = TAU_COMPAT) -> Propagation:
    """Solve every vertex of the tree from the driving angle.

    `rho_top` is the driving angle: the fold angle of the top-left vertex's
    left crease.  A full sequence of top-row angles is also accepted; the
    first entry drives and the rest are checked against the transmitted
    values (PropagationConflict on disagreement).
    """
    p = tree.pattern
    if isinstance(rho_top, (int, float)):
        driving = float(rho_top)
        expected = ()
    else:
        seq = [float(x) for x in rho_top]
        if not seq or len(seq) > p.n:
            raise ValueError(f"expected 1..{p.n} top angles, got {len(seq)}")
        driving, expected = seq[0], tuple(seq[1:])
    branches = _branch_grid(p, branch_choice)

    sols = [[None] * p.n for _ in range(p.m)]
    for j in range(p.n):
        v = p.vertex(0, j)
        angle = driving if j == 0 else sols[0][j - 1].rho[3]
        try:
            sols[0][j] = solve_at_crease(v, 2, angle, branches[0][j])
        except (OutOfDomain, WrongClass) as exc:
            raise OutOfDomain(f"top-row vertex (0,{j}): {exc}") from exc
    for k, want in enumerate(expected):
        got = sols[0][k].rho[3]
        if abs(normalize_angle(got - want)) > compat_tol:
            raise PropagationConflict(
                f"provided top-row angle {k + 1} = {want!r} conflicts with "
                f"the transmitted value {got!r}"
            )
    for i in range(1, p.m):
        for j in range(p.n):
            v = p.vertex(i, j)
            angle = sols[i - 1][j].rho[2]
            try:
                sols[i][j] = solve_at_crease(v, 1, angle, branches[i][j])
            except (OutOfDomain, WrongClass) as exc:
                raise OutOfDomain(f"vertex ({i},{j}): {exc}") from exc

    pairs = tuple(
        ((i, j), sols[i][j].rho[3], sols[i][j + 1].rho[1])
        for i, j in tree.cut_creases
    )
    return Propagation(driving=driving,
                       solutions=tuple(tuple(row) for row in sols),
                       theta_phi=pairs)


@dataclass(frozen=True)
class CompatibilityReport:
    """Certification result over a sampled closed driving interval."""

    interval: tuple
    samples: tuple
    residuals: tuple          # per sample: max |theta - phi| over cuts
    per_cut: tuple            # ((i, j), residual series over the samples)
    max_residual: float
    verdict: bool
    reason: str
    branch_choice: object = field(repr=False, default=None)

    def summary(self) -> str:
        lo, hi = self.interval
        lines = [
            "rigid-foldable: " + ("yes" if self.verdict else "no"),
            f"certified driving interval: [{math.degrees(lo):.6g}, "
            f"{math.degrees(hi):.6g}] deg ({len(self.samples)} samples)",
            f"max |theta - phi| residual: {self.max_residual:.3e} rad",
        ]
        if not self.verdict:
            lines.append(f"reason: {self.reason}")
        for (i, j), series in self.per_cut:
            worst = max(series) if series else 0.0
            lines.append(f"  cut crease ({i},{j})-({i},{j + 1}): {worst:.3e}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "interval_deg": [math.degrees(x) for x in self.interval],
            "samples_deg": [math.degrees(x) for x in self.samples],
            "residuals": list(self.residuals),
            "max_residual": self.max_residual,
            "per_cut": [
                {
                    "cut": list(c),
                    "max_residual": (max(series) if series else 0.0),
                    "residuals": [
                        (r if math.isfinite(r) else None) for r in series
                    ],
                }
                for c, series in self.per_cut
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


_PI_MARGIN = 1e-7


def _probe(tree, t, branches) -> bool:
    """Propagation succeeds and no fold angle is at the fully-flat +-pi.

    Angles at exactly +-pi have an ambiguous sign representation, which
    would flip downstream inversions, so the certified interval stops a
    representational margin short of any crease folding completely flat.
    """
    try:
        prop = propagate(tree, t, branches)
    except QuadfoldError:
        return False
    worst = max(
        abs(x) for row in prop.solutions for sol in row for x in sol.rho
    )
    return worst <= math.pi - _PI_MARGIN


def _driving_limit(tree, branches, coarse: int = 48) -> float:
    """Largest |driving angle| the whole tree can reach, by bisection."""
    if _probe(tree, math.pi, branches):
        return math.pi
    good, bad = 0.0, math.pi
    for k in range(1, coarse + 1):
        t = math.pi * k / coarse
        if _probe(tree, t, branches):
            good = t
        else:
            bad = t
            break
    for _ in range(60):
        mid = 0.5 * (good + bad)
        if _probe(tree, mid, branches):
            good = mid
        else:
            bad = mid
    return good


def certify(p: QuadPattern, branch_choice: BranchChoice = None,
            n_samples: int = DEFAULT_SAMPLES, *,
            compat_tol: float = TAU_COMPAT) -> CompatibilityReport:
    """Certify rigid-foldability by sampled tree propagation.

    The driving angle sweeps the largest symmetric closed interval on which
    propagation succeeds (endpoints included).  The verdict is positive only
    when the interval has positive length, propagation succeeded at every
    sample, and every cut-crease residual stays below `compat_tol`.
    """
    tree = build_tree(p)
    branches = _branch_grid(p, branch_choice)
    t_max = _driving_limit(tree, branches)
    if t_max < 1e-9:
        raise EmptyInterval(
            "no driving interval: the tree cannot move away from the "
            "trivial state on these branches"
        )
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")

    grid = [t_max * (2.0 * k / (n_samples - 1) - 1.0) for k in range(n_samples)]
    residuals = []
    per_cut = {c: [] for c in tree.cut_creases}
    verdict = True
    reason = "ok"
    for t in grid:
        try:
            prop = propagate(tree, t, branches)
        except QuadfoldError as exc:
            residuals.append(math.inf)
            for c in tree.cut_creases:
                per_cut[c].append(math.inf)
            verdict = False
            reason = f"propagation failed at driving angle {t!r}: {exc}"
            continue
        worst = 0.0
        for cut, theta, phi in prop.theta_phi:
            r = abs(normalize_angle(theta - phi))
            per_cut[cut].append(r)
            worst = max(worst, r)
        residuals.append(worst)
    finite = [r for r in residuals if math.isfinite(r)]
    max_res = max(finite) if finite else math.inf
    if verdict and max_res >= compat_tol:
        verdict = False
        reason = (f"cut-crease residual {max_res:.3e} exceeds "
                  f"tolerance {compat_tol:.1e}")
    return CompatibilityReport(
        interval=(-t_max, t_max),
        samples=tuple(grid),
        residuals=tuple(residuals),
        per_cut=tuple(sorted(
            (cut, tuple(series)) for cut, series in per_cut.items()
        )),
        max_residual=max_res,
        verdict=verdict,
        reason=reason,
        branch_choice=branches,
    )


def enumerate_branch_choices(p: QuadPattern):
    """All per-column-uniform branch grids built from each column's units.

    Columns built from units admit per-column chains; this enumerates the
    consistent chains per column (bounded by the branch count) and yields
    their cartesian products as full branch grids.
    """
    from .units import valid_branch_pairs

    per_column = []
    for j in range(p.n):
        units = [u for u in (p.plan.columns[j] if p.plan else ())]
        if not units:
            per_column.append([tuple(p.branch_default[i][j]
                                     for i in range(p.m))])
            continue
        pair_sets = [
            {(bt, bb) for bt, bb, _ in valid_branch_pairs(u)} for u in units
        ]
        chains = [[b] for b in {bt for bt, _ in pair_sets[0]}]
        for pairs in pair_sets:
            nxt = []
            for chain in chains:
                for bt, bb in pairs:
                    if bt is chain[-1]:
                        nxt.append(chain + [bb])
            chains = nxt
        per_column.append([tuple(c) for c in chains])

    def rec(j, acc):
        if j == p.n:
            yield tuple(
                tuple(acc[jj][i] for jj in range(p.n)) for i in range(p.m)
            )
            return
        for chain in per_column[j]:
            yield from rec(j + 1, acc + [chain])

    yield from rec(0, [])


def mv_assignment(p: QuadPattern, branch_choice: BranchChoice = None,
                  sample_rho: float = None, *,
                  flat_tol: float = TAU_FLAT) -> dict:
    """Mountain/valley/flat labels for every crease at one driving angle.

    Positive folding angles are valleys ("V"), negative mountains ("M"),
    magnitudes below `flat_tol` are flat ("F"); boundary edges get "B".
    Requires a certified pattern to be meaningful - the caller picks a
    sample angle inside the certified interval.
    """
    if sample_rho is None:
        raise ValueError("mv_assignment needs a sample driving angle")
    tree = build_tree(p)
    prop = propagate(tree, sample_rho, branch_choice)
    labels = {}
    for kind, a, b in p.edges():
        if kind == "boundary":
            labels[(a, b)] = "B"
            continue
        angle = prop.edge_angle(kind, a, b)
        if abs(angle) < flat_tol:
            labels[(a, b)] = "F"
        else:
            labels[(a, b)] = "V" if angle > 0 else "M"
    return labels
