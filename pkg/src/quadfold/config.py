"""Numerical tolerances and run configuration.

The module-level constants are the library defaults. `Tolerances` bundles
them for call sites that let users override (the CLI reads overrides from a
JSON config file referenced by the QUADFOLD_CONFIG environment variable).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields

# classification sums (radians)
TAU_ANGLE = 1e-9
# identity / residual checks on closed-form relations
TAU_EVAL = 1e-9
# arccos arguments are clamped into [-1, 1] only when this close to the bound
TAU_CLAMP = 1e-12
# bisection tolerance for fold-interval endpoints and crease-driven inversion
TAU_ROOT = 1e-10
# near-degenerate classification warning band
TAU_CLASS_BAND = 1e-6
# unit validation residual bound
TAU_UNIT = 1e-8
# theta/phi compatibility bound for rigid-foldability certification
TAU_COMPAT = 1e-8
# crease direction-vector equality for parallel-row detection
TAU_DIR = 1e-9
# layout angle-reproduction bound
TAU_LAYOUT = 1e-9
# relative edge-length / diagonal / planarity bound for realized states
TAU_RIGID = 1e-9
# rotation-composition distance from identity
TAU_CLOSURE = 1e-9
# |folding angle| below this counts as an unfolded (flat) crease
TAU_FLAT = 1e-9

DEFAULT_SAMPLES = 200


@dataclass(frozen=True)
class Tolerances:
    angle: float = TAU_ANGLE
    eval: float = TAU_EVAL
    clamp: float = TAU_CLAMP
    root: float = TAU_ROOT
    class_band: float = TAU_CLASS_BAND
    unit: float = TAU_UNIT
    compat: float = TAU_COMPAT
    direction: float = TAU_DIR
    layout: float = TAU_LAYOUT
    rigid: float = TAU_RIGID
    closure: float = TAU_CLOSURE
    flat: float = TAU_FLAT

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"tolerance {f.name!r} must be positive")


DEFAULT_TOL = Tolerances()


@dataclass
class CliConfig:
    """Runtime configuration for the command-line interface.

    All angle I/O at the CLI boundary is in degrees; internals are radians.
    """

    tolerances: Tolerances = field(default_factory=Tolerances)
    samples: int = DEFAULT_SAMPLES
    frames: int = 30
    out_dir: str = "."
    angle_unit: str = "degrees"

    def __post_init__(self):
        if self.samples < 2:
            raise ValueError("sample counts must be >= 2 for interval checks")
        if self.angle_unit != "degrees":
            raise ValueError("only 'degrees' is supported at the CLI boundary")

    @classmethod
    def from_env(cls) -> "CliConfig":
        """Build a config, applying overrides from $QUADFOLD_CONFIG if set."""
        path = os.environ.get("QUADFOLD_CONFIG")
        if not path:
            return cls()
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        tol_kwargs = {}
        for f in fields(Tolerances):
            key = f"tau_{f.name}"
            if key in raw:
                tol_kwargs[f.name] = float(raw[key])
        kwargs = {}
        for key in ("samples", "frames", "out_dir", "angle_unit"):
            if key in raw:
                kwargs[key] = raw[key]
        return cls(tolerances=Tolerances(**tol_kwargs), **kwargs)
