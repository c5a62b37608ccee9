import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from bettiseq import PersistenceDiagram, PersistencePair

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def make_diagram(points, dim=1):
    """Diagram from a list of (birth, death) tuples."""
    return PersistenceDiagram(
        dim, tuple(PersistencePair(float(b), float(d), dim) for b, d in points)
    )


def random_diagram(rng, max_points, dim=1, min_persistence=1e-6):
    """Small random diagram with births in [0,1) and positive persistence."""
    n = int(rng.integers(0, max_points + 1))
    pts = []
    for _ in range(n):
        b = rng.uniform(0.0, 0.9)
        d = b + rng.uniform(min_persistence, 1.0 - b)
        pts.append((b, d))
    return make_diagram(pts, dim)


@pytest.fixture
def np_rng():
    return np.random.default_rng(20240824)


SQRT2 = math.sqrt(2.0)
