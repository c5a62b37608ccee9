"""Persistence diagrams in dimensions 0 and 1, plus a rank oracle.

H0 comes from union-find over the edges in filtration order (elder rule:
the component born later dies at a merge).  H1 comes from GF(2) column
reduction of the dimension-2 boundary matrix; cycle-creating edges never
killed within the threshold become essential classes.  ``betti_numbers_at``
is an independent brute-force check computing Betti numbers at a single
scale by Gaussian elimination over GF(2).

Zero-persistence pairs (birth == death) are diagonal points and are
discarded everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._reduction import merging_edge_mask, pair_edges_cofacets
from .filtration import FilteredComplex, build_rips
from .pointcloud import DistanceMatrix

INF = math.inf


@dataclass(frozen=True)
class PersistencePair:
    birth: float
    death: float  # math.inf for essential classes
    dim: int

    def __post_init__(self):
        # Valid persistence pairs have death > birth; the constructor stays
        # permissive so degenerate and below-diagonal points can be fed to
        # the region predicate, which defines their behavior.
        if math.isnan(self.birth) or math.isnan(self.death):
            raise ValueError("birth and death must not be NaN")
        if self.birth < 0:
            raise ValueError("birth must be non-negative")

    @property
    def essential(self) -> bool:
        return math.isinf(self.death)

    @property
    def persistence(self) -> float:
        return self.death - self.birth


@dataclass(frozen=True)
class PersistenceDiagram:
    dim: int
    pairs: tuple[PersistencePair, ...]

    def __post_init__(self):
        if any(p.dim != self.dim for p in self.pairs):
            raise ValueError("pair dimension mismatch")
        object.__setattr__(self, "pairs", tuple(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def births_deaths(self) -> tuple[np.ndarray, np.ndarray]:
        b = np.array([p.birth for p in self.pairs], dtype=float)
        d = np.array([p.death for p in self.pairs], dtype=float)
        return b, d

    def alive_at(self, tau: float) -> int:
        """Number of classes with birth <= tau < death."""
        return sum(1 for p in self.pairs if p.birth <= tau < p.death)


def diagram_from_arrays(births, deaths, dim: int) -> PersistenceDiagram:
    pairs = tuple(
        PersistencePair(float(b), float(d), dim) for b, d in zip(births, deaths)
    )
    return PersistenceDiagram(dim, pairs)


def _merging_edges(fc: FilteredComplex) -> np.ndarray:
    """Boolean mask over fc's edges: True where the edge merges components."""
    if fc.n_edges == 0:
        return np.zeros(0, dtype=bool)
    return merging_edge_mask(fc.edges, fc.n_vertices)


def persistence_h0(fc: FilteredComplex) -> PersistenceDiagram:
    """Dimension-0 diagram: all classes born at 0, merged by the elder rule.

    Because every vertex is born at the same time, each merging edge kills
    one class at the edge's filtration value; the classes of the final
    components are essential.
    """
    merges = _merging_edges(fc)
    pairs = [
        PersistencePair(0.0, float(v), 0)
        for v in fc.edge_values[merges]
        if v > 0.0
    ]
    n_essential = fc.n_vertices - int(merges.sum())
    pairs.extend(PersistencePair(0.0, INF, 0) for _ in range(n_essential))
    return PersistenceDiagram(0, tuple(pairs))


def persistence_h1(fc: FilteredComplex) -> PersistenceDiagram:
    """Dimension-1 diagram via reduction of the triangle boundary matrix.

    A reduced triangle column with lowest one at edge e yields the pair
    (value(e), value(triangle)); cycle-creating edges left unpaired within
    the threshold are essential.  A complex built with max_dim=1 simply
    reports every cycle as essential.
    """
    positive = ~_merging_edges(fc)

    if fc.n_triangles:
        # Triangle boundary rows, as positions in the sorted edge order.
        n = fc.n_vertices
        edge_pos = np.full((n, n), -1, dtype=np.int64)
        edge_pos[fc.edges[:, 0], fc.edges[:, 1]] = np.arange(fc.n_edges)
        tris = fc.triangles
        rows = np.column_stack(
            [
                edge_pos[tris[:, 0], tris[:, 1]],
                edge_pos[tris[:, 0], tris[:, 2]],
                edge_pos[tris[:, 1], tris[:, 2]],
            ]
        )
        rows = np.sort(rows, axis=1)
        pair_tri = pair_edges_cofacets(rows, fc.n_edges)
    else:
        pair_tri = np.full(fc.n_edges, -1, dtype=np.int64)

    cycle_edges = np.nonzero(positive)[0]
    births = fc.edge_values[cycle_edges]
    tri = pair_tri[cycle_edges]
    deaths = np.full(len(tri), INF)
    paired = tri != -1
    deaths[paired] = fc.tri_values[tri[paired]]
    keep = deaths > births
    pairs = tuple(
        PersistencePair(float(b), float(d), 1)
        for b, d in zip(births[keep], deaths[keep])
    )
    return PersistenceDiagram(1, pairs)


def _gf2_rank(columns: list[int]) -> int:
    """Rank of a GF(2) matrix whose columns are bitmask integers."""
    pivots: dict[int, int] = {}
    rank = 0
    for col in columns:
        while col:
            high = col.bit_length() - 1
            other = pivots.get(high)
            if other is None:
                pivots[high] = col
                rank += 1
                break
            col ^= other
    return rank


def betti_numbers_at(dm: DistanceMatrix, tau: float) -> tuple[int, int]:
    """(beta0, beta1) of the static Rips complex at scale tau, by GF(2) ranks.

    beta0 = n - rank(d1); beta1 = (#edges - rank(d1)) - rank(d2).  Intended
    as an independent oracle for the persistence pipeline on small inputs.
    """
    if tau < 0:
        raise ValueError("tau must be non-negative")
    d = dm.d
    n = dm.n
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if d[i, j] <= tau
    ]
    edge_index = {e: k for k, e in enumerate(edges)}
    d1 = [(1 << i) | (1 << j) for i, j in edges]
    d2 = []
    for i in range(n):
        for j in range(i + 1, n):
            if d[i, j] > tau:
                continue
            for k in range(j + 1, n):
                if d[i, k] <= tau and d[j, k] <= tau:
                    d2.append(
                        (1 << edge_index[(i, j)])
                        | (1 << edge_index[(i, k)])
                        | (1 << edge_index[(j, k)])
                    )
    r1 = _gf2_rank(d1)
    r2 = _gf2_rank(d2)
    return n - r1, len(edges) - r1 - r2


def write_diagram_csv(diagrams: list[PersistenceDiagram], path_or_file) -> None:
    """Write the `dim,birth,death` CSV format; `inf` marks essential deaths."""

    def _write(fh):
        fh.write("dim,birth,death\n")
        for dg in diagrams:
            for p in dg.pairs:
                death = "inf" if p.essential else repr(p.death)
                fh.write(f"{dg.dim},{p.birth!r},{death}\n")

    if hasattr(path_or_file, "write"):
        _write(path_or_file)
    else:
        with open(path_or_file, "w") as fh:
            _write(fh)


def read_diagram_csv(path) -> dict[int, PersistenceDiagram]:
    """Read a diagram CSV back into one diagram per dimension."""
    by_dim: dict[int, list[PersistencePair]] = {}
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "dim,birth,death":
            raise ValueError("not a diagram CSV")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            dim_s, birth_s, death_s = line.split(",")
            dim = int(dim_s)
            pair = PersistencePair(float(birth_s), float(death_s), dim)
            by_dim.setdefault(dim, []).append(pair)
    return {dim: PersistenceDiagram(dim, tuple(ps)) for dim, ps in by_dim.items()}
