import math

import numpy as np
import pytest

from quadfold import ClassTag, Vertex4, classify

SEED = 20240817


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


def random_generic_vertex(rng, margin_deg: float = 4.0) -> Vertex4:
    """Random developable vertex guaranteed to classify as generic
    (no near-collinear pair, not near flat-foldable)."""
    margin = math.radians(margin_deg)
    while True:
        a = rng.uniform(math.radians(25), math.radians(155), size=3)
        a4 = 2 * math.pi - a.sum()
        if not (math.radians(25) < a4 < math.radians(155)):
            continue
        alpha = (*a, a4)
        sums = [alpha[i] + alpha[(i + 1) % 4] for i in range(4)]
        sums += [alpha[0] + alpha[2], alpha[1] + alpha[3]]
        if min(abs(s - math.pi) for s in sums) < margin:
            continue
        v = Vertex4(alpha)
        assert classify(v).tag is ClassTag.GENERIC
        return v


def random_ff_vertex(rng, margin_deg: float = 4.0) -> Vertex4:
    """Random flat-foldable vertex of generic class."""
    margin = math.radians(margin_deg)
    while True:
        a1 = rng.uniform(math.radians(25), math.radians(155))
        a2 = rng.uniform(math.radians(25), math.radians(155))
        if abs(a1 - a2) < margin:            # would be straight-line
            continue
        if abs(a1 + a2 - math.pi) < margin:  # other straight-line family
            continue
        if abs(a1 - math.pi / 2) < margin and abs(a2 - math.pi / 2) < margin:
            continue
        v = Vertex4((a1, a2, math.pi - a1, math.pi - a2))
        cls = classify(v)
        assert cls.flat_foldable and cls.tag is ClassTag.GENERIC
        return v


def random_straightline_vertex(rng, margin_deg: float = 4.0) -> Vertex4:
    """Random straight-line vertex in canonical position (c1, c3 collinear)."""
    margin = math.radians(margin_deg)
    while True:
        a1 = rng.uniform(math.radians(25), math.radians(155))
        a2 = rng.uniform(math.radians(25), math.radians(155))
        if abs(a1 - a2) < margin:            # would also be flat-foldable
            continue
        if abs(a1 + a2 - math.pi) < margin:  # would be double-collinear
            continue
        v = Vertex4((a1, a2, math.pi - a2, math.pi - a1))
        cls = classify(v)
        assert cls.tag is ClassTag.STRAIGHT_LINE and not cls.flat_foldable
        return v
