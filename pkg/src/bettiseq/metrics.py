"""Distances between persistence diagrams and between Betti vectors.

The p-Wasserstein distance uses the standard diagonal-augmented assignment
formulation: every off-diagonal point of one diagram is matched either to a
point of the other or to its closest diagonal projection (l-inf cost
(death - birth) / 2), and the optimal assignment is solved exactly.  The
bottleneck distance is the p -> infinity limit, computed by binary search
over the candidate cost set with a feasibility matching at each threshold.

``brute_force_wasserstein`` enumerates every augmented matching and is the
test oracle for both; it refuses inputs with more than 8 combined points.
"""

from __future__ import annotations

import itertools
import math

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .diagram import require_finite
from .homology import PersistenceDiagram
from .vectorize import BettiVector

#: Marker for "matched to the diagonal" in a Matching.
DIAG = "diag"


@dataclass(frozen=True)
class Matching:
    """An augmented matching: every off-diagonal point of either diagram
    appears exactly once, matched to a point index of the other diagram or
    to DIAG (its closest diagonal projection)."""

    pairs: tuple[tuple[object, object], ...]
    cost: float


def _points(pd: PersistenceDiagram) -> np.ndarray:
    require_finite(pd)
    b, d = pd.births_deaths()
    return np.column_stack([b, d]) if len(b) else np.empty((0, 2))


def _linf(p: np.ndarray, q: np.ndarray) -> float:
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def _diag_cost(p: np.ndarray) -> float:
    return (p[1] - p[0]) / 2.0


def _augmented_cost_matrix(xs: np.ndarray, ys: np.ndarray, p: float) -> np.ndarray:
    m, n = len(xs), len(ys)
    size = m + n
    big = np.zeros((size, size))
    cross = np.maximum(
        np.abs(xs[:, None, 0] - ys[None, :, 0]),
        np.abs(xs[:, None, 1] - ys[None, :, 1]),
    ) ** p if m and n else np.empty((m, n))
    diag_x = ((xs[:, 1] - xs[:, 0]) / 2.0) ** p if m else np.empty(0)
    diag_y = ((ys[:, 1] - ys[:, 0]) / 2.0) ** p if n else np.empty(0)
    # Forbid off-diagonal entries of the diagonal blocks with a finite
    # sentinel larger than any feasible total.
    sentinel = float(cross.sum() + diag_x.sum() + diag_y.sum()) + 1.0
    big[:m, :n] = cross
    big[:m, n:] = sentinel
    big[:m, n:][np.arange(m), np.arange(m)] = diag_x
    big[m:, :n] = sentinel
    big[m:, :n][np.arange(n), np.arange(n)] = diag_y
    return big


def wasserstein(
    X: PersistenceDiagram,
    Y: PersistenceDiagram,
    p: float = 1.0,
    return_matching: bool = False,
):
    """p-Wasserstein distance between finite diagrams (l-inf ground metric)."""
    if p < 1:
        raise ValueError("p must be at least 1")
    xs, ys = _points(X), _points(Y)
    m, n = len(xs), len(ys)
    if m == 0 and n == 0:
        return (0.0, Matching((), 0.0)) if return_matching else 0.0
    big = _augmented_cost_matrix(xs, ys, p)
    rows, cols = linear_sum_assignment(big)
    total = float(big[rows, cols].sum())
    dist = total ** (1.0 / p)
    if not return_matching:
        return dist
    pairs = []
    for r, c in zip(rows, cols):
        if r < m and c < n:
            pairs.append((int(r), int(c)))
        elif r < m:
            pairs.append((int(r), DIAG))
        elif c < n:
            pairs.append((DIAG, int(c)))
    return dist, Matching(tuple(pairs), dist)


def _feasible(adj: list[list[int]], n_left: int, n_right: int) -> bool:
    """Is there a perfect matching saturating the left side?  Kuhn's
    augmenting-path algorithm; sizes here are small."""
    match_right = [-1] * n_right

    def try_augment(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] == -1 or try_augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in range(n_left):
        if not try_augment(u, [False] * n_right):
            return False
    return True


def bottleneck(X: PersistenceDiagram, Y: PersistenceDiagram) -> float:
    """Bottleneck distance: min over augmented matchings of the max cost."""
    xs, ys = _points(X), _points(Y)
    m, n = len(xs), len(ys)
    if m == 0 and n == 0:
        return 0.0

    candidates = {0.0}
    candidates.update(float(_diag_cost(x)) for x in xs)
    candidates.update(float(_diag_cost(y)) for y in ys)
    candidates.update(
        float(_linf(x, y)) for x in xs for y in ys
    )
    candidates = sorted(candidates)

    def ok(t: float) -> bool:
        # Left: X points then n diagonal slots for Y; right: Y points then
        # m diagonal slots for X.  Diagonal-to-diagonal edges are free.
        n_left = m + n
        n_right = n + m
        adj: list[list[int]] = [[] for _ in range(n_left)]
        for i in range(m):
            for j in range(n):
                if _linf(xs[i], ys[j]) <= t:
                    adj[i].append(j)
            if _diag_cost(xs[i]) <= t:
                adj[i].append(n + i)
        for j in range(n):
            if _diag_cost(ys[j]) <= t:
                adj[m + j].append(j)
            for i in range(m):
                adj[m + j].append(n + i)  # diag-diag, always allowed
        return _feasible(adj, n_left, n_right)

    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return candidates[lo]


def brute_force_wasserstein(
    X: PersistenceDiagram, Y: PersistenceDiagram, p: float = 1.0
) -> float:
    """Exhaustive minimum over all augmented matchings.

    Exact oracle for `wasserstein` (finite p) and `bottleneck`
    (p = math.inf); refuses more than 8 combined off-diagonal points.
    """
    if p != math.inf and p < 1:
        raise ValueError("p must be at least 1 or math.inf")
    xs, ys = _points(X), _points(Y)
    m, n = len(xs), len(ys)
    if m + n > 8:
        raise ValueError("brute force limited to 8 combined points")

    best = math.inf
    y_indices = list(range(n))
    # Choose which X points match real Y points (injectively); everything
    # else pairs with the diagonal.
    for k in range(0, min(m, n) + 1):
        for x_sub in itertools.combinations(range(m), k):
            for y_perm in itertools.permutations(y_indices, k):
                costs = [
                    _linf(xs[i], ys[j]) for i, j in zip(x_sub, y_perm)
                ]
                x_rest = set(range(m)) - set(x_sub)
                y_rest = set(y_indices) - set(y_perm)
                costs.extend(_diag_cost(xs[i]) for i in x_rest)
                costs.extend(_diag_cost(ys[j]) for j in y_rest)
                if p == math.inf:
                    total = max(costs, default=0.0)
                else:
                    total = sum(c**p for c in costs) ** (1.0 / p)
                best = min(best, total)
    return 0.0 if best == math.inf else best


def sup_distance(u: BettiVector, v: BettiVector) -> float:
    """Sup-norm distance between two Betti vectors on the same grid."""
    if u.grid != v.grid:
        raise ValueError("vectors live on different grids")
    return float(np.max(np.abs(u.values - v.values))) if u.grid.n_bins else 0.0
