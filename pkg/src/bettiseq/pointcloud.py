"""Seeded 2-D point-cloud generators and pairwise distances.

Four cloud families are supported: a (optionally perturbed) square lattice,
uniform samples on a square, chaos-game samples of the Sierpinski triangle,
and uniform samples with a square hole removed.  All generators are pure
functions of their parameters and seed; see :mod:`bettiseq.rng`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .rng import Xoshiro256StarStar

# Chaos-game triangle: unit-side equilateral triangle sitting on the x axis.
SIERPINSKI_VERTICES = ((0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3.0) / 2.0))

DEFAULT_BURN_IN = 20


class Generator(enum.Enum):
    PERTURBED_LATTICE = "perturbed_lattice"
    UNIFORM = "uniform"
    SIERPINSKI = "sierpinski"
    UNIFORM_WITH_HOLE = "uniform_with_hole"


@dataclass(frozen=True)
class PointCloud:
    """A finite multiset of 2-D points plus its generation provenance."""

    points: np.ndarray
    seed: int
    generator: Generator
    domain_scale: float = 1.0

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] == 0:
            raise ValueError("points must be a non-empty (n, 2) array")
        if not np.all(np.isfinite(pts)):
            raise ValueError("point coordinates must be finite")
        if not self.domain_scale > 0:
            raise ValueError("domain_scale must be positive")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric Euclidean distance matrix with a zero diagonal."""

    d: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.d, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError("distance matrix must be square")
        if not np.array_equal(d, d.T):
            raise ValueError("distance matrix must be symmetric")
        if np.any(np.diag(d) != 0.0) or np.any(d < 0.0):
            raise ValueError("distances must be non-negative with zero diagonal")
        object.__setattr__(self, "d", d)

    @property
    def n(self) -> int:
        return self.d.shape[0]


def distances_from_points(points: np.ndarray) -> DistanceMatrix:
    """Euclidean distance matrix of an (n, 2) coordinate array.

    Symmetry is exact by construction: each pair is computed once and
    mirrored.
    """
    pts = np.asarray(points, dtype=float)
    diff = pts[:, None, :] - pts[None, :, :]
    d = np.sqrt((diff * diff).sum(axis=-1))
    d = np.triu(d, 1)
    d = d + d.T
    return DistanceMatrix(d)


def pairwise_distances(pc: PointCloud) -> DistanceMatrix:
    return distances_from_points(pc.points)


def enclosing_radius(dm: DistanceMatrix) -> float:
    """min over points of the max distance to any other point.

    Beyond this scale the Rips complex is a cone over some vertex, hence has
    trivial homology in every positive dimension; bars never persist past it.
    """
    if dm.n == 1:
        return 0.0
    return float(np.min(np.max(dm.d, axis=1)))


def gen_perturbed_lattice(
    n_side: int,
    domain_scale: float,
    epsilon: float,
    seed: int,
    perturb: float = 0.0,
) -> PointCloud:
    """Square lattice on [0, (1+epsilon)*domain_scale]^2, optionally jittered.

    The unperturbed lattice has spacing ``(1+epsilon)*domain_scale/(n_side-1)``.
    Each coordinate is then shifted by an independent uniform draw in
    ``[-perturb, perturb]``.  ``perturb`` defaults to 0 because the epsilon
    sweep relies on exact spacing; batch experiments pass the bin width.
    """
    if n_side < 2:
        raise ValueError("n_side must be at least 2")
    if domain_scale <= 0:
        raise ValueError("domain_scale must be positive")
    if 1.0 + epsilon <= 0:
        raise ValueError("1 + epsilon must be positive")
    if perturb < 0:
        raise ValueError("perturb must be non-negative")

    spacing = (1.0 + epsilon) * domain_scale / (n_side - 1)
    rng = Xoshiro256StarStar(seed)
    pts = np.empty((n_side * n_side, 2), dtype=float)
    k = 0
    for ix in range(n_side):
        for iy in range(n_side):
            x = ix * spacing
            y = iy * spacing
            if perturb > 0:
                x += rng.uniform(-perturb, perturb)
                y += rng.uniform(-perturb, perturb)
            pts[k, 0] = x
            pts[k, 1] = y
            k += 1
    return PointCloud(pts, seed, Generator.PERTURBED_LATTICE, domain_scale)


def gen_uniform(n: int, side: float, seed: int) -> PointCloud:
    """n i.i.d. uniform points on [0, side]^2."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if side <= 0:
        raise ValueError("side must be positive")
    rng = Xoshiro256StarStar(seed)
    pts = np.empty((n, 2), dtype=float)
    for i in range(n):
        pts[i, 0] = rng.uniform(0.0, side)
        pts[i, 1] = rng.uniform(0.0, side)
    return PointCloud(pts, seed, Generator.UNIFORM, side)


def gen_sierpinski(n: int, seed: int, burn_in: int = DEFAULT_BURN_IN) -> PointCloud:
    """Chaos-game samples of the Sierpinski triangle.

    Starting from a uniform point in the bounding box, repeatedly move
    halfway toward a uniformly chosen triangle vertex.  The first ``burn_in``
    iterates are discarded; the contraction factor 1/2 reaches the attractor
    to double precision well within the default 20 steps.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if burn_in < 0:
        raise ValueError("burn_in must be non-negative")
    rng = Xoshiro256StarStar(seed)
    vx = SIERPINSKI_VERTICES
    x = rng.random()
    y = rng.random() * vx[2][1]
    pts = np.empty((n, 2), dtype=float)
    for i in range(burn_in + n):
        v = vx[rng.randrange(3)]
        x = 0.5 * (x + v[0])
        y = 0.5 * (y + v[1])
        if i >= burn_in:
            pts[i - burn_in, 0] = x
            pts[i - burn_in, 1] = y
    return PointCloud(pts, seed, Generator.SIERPINSKI, 1.0)


def gen_uniform_with_hole(
    n: int, hole_lo: float, hole_hi: float, seed: int
) -> PointCloud:
    """n uniform points on [0,1]^2 minus the open square (hole_lo, hole_hi)^2.

    Rejection sampling; exactly n points are returned.  A degenerate hole
    (hole_lo == hole_hi) reduces to plain uniform sampling.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not (0.0 <= hole_lo <= hole_hi <= 1.0):
        raise ValueError("hole bounds must satisfy 0 <= lo <= hi <= 1")
    if hole_lo <= 0.0 and hole_hi >= 1.0 and hole_lo < hole_hi:
        raise ValueError("hole covers the whole domain")
    rng = Xoshiro256StarStar(seed)
    pts = np.empty((n, 2), dtype=float)
    i = 0
    while i < n:
        x = rng.random()
        y = rng.random()
        if hole_lo < x < hole_hi and hole_lo < y < hole_hi:
            continue
        pts[i, 0] = x
        pts[i, 1] = y
        i += 1
    return PointCloud(pts, seed, Generator.UNIFORM_WITH_HOLE, 1.0)


def write_pointcloud_csv(pc: PointCloud, path) -> None:
    """Write the `x,y` CSV format (one point per row, full precision)."""
    with open(path, "w") as fh:
        fh.write("x,y\n")
        for x, y in pc.points:
            fh.write(f"{float(x)!r},{float(y)!r}\n")


def read_pointcloud_csv(path) -> np.ndarray:
    """Read an `x,y` CSV back into an (n, 2) coordinate array."""
    pts = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if pts.shape[1] != 2:
        raise ValueError("point-cloud CSV must have exactly two columns")
    return pts
