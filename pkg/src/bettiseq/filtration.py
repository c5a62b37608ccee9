"""Vietoris-Rips filtered complexes up to dimension 2.

The complex is stored in flat per-dimension arrays (edge and triangle vertex
indices plus filtration values), each sorted by (value, lexicographic
vertices).  The global filtration order is (value, dimension, lexicographic
vertices) ascending, which guarantees every face precedes every coface even
at ties.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._reduction import enumerate_triangles
from .pointcloud import DistanceMatrix


@dataclass(frozen=True)
class Simplex:
    vertices: tuple[int, ...]
    filtration_value: float

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class FilteredComplex:
    n_vertices: int
    threshold: float
    edges: np.ndarray        # (E, 2) int32, each row i < j
    edge_values: np.ndarray  # (E,) float, sorted with edges
    triangles: np.ndarray    # (T, 3) int32, each row i < j < k
    tri_values: np.ndarray   # (T,) float, sorted with triangles

    @property
    def n_edges(self) -> int:
        return self.edges.shape[0]

    @property
    def n_triangles(self) -> int:
        return self.triangles.shape[0]

    @property
    def simplices(self) -> list[Simplex]:
        """All simplices in global filtration order. Intended for small
        complexes and debugging; the arrays are the primary representation."""
        out = [Simplex((v,), 0.0) for v in range(self.n_vertices)]
        items = [
            (self.edge_values[i], 1, tuple(int(v) for v in self.edges[i]))
            for i in range(self.n_edges)
        ] + [
            (self.tri_values[i], 2, tuple(int(v) for v in self.triangles[i]))
            for i in range(self.n_triangles)
        ]
        items.sort()
        out.extend(Simplex(verts, val) for val, _, verts in items)
        return out

    def dump(self, path) -> None:
        """Debug dump: one simplex per line, `value dim v0 v1 v2`."""
        with open(path, "w") as fh:
            for s in self.simplices:
                verts = " ".join(str(v) for v in s.vertices)
                fh.write(f"{s.filtration_value!r} {s.dim} {verts}\n")


def build_rips(dm: DistanceMatrix, threshold: float, max_dim: int = 2) -> FilteredComplex:
    """Rips filtration of a distance matrix, truncated at `threshold`.

    Contains every vertex at value 0, every edge with distance <= threshold,
    and (for max_dim == 2) every triangle whose longest edge is <= threshold,
    with the triangle's value equal to that longest edge.
    """
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    if max_dim not in (1, 2):
        raise ValueError(f"unsupported max_dim {max_dim}; only 1 and 2")

    d = dm.d
    n = dm.n

    iu, ju = np.triu_indices(n, 1)
    vals = d[iu, ju]
    keep = vals <= threshold
    edges = np.column_stack([iu[keep], ju[keep]]).astype(np.int32)
    edge_values = vals[keep]
    # triu_indices is already lexicographic; a stable sort on value gives
    # (value, lex) order.
    order = np.argsort(edge_values, kind="stable")
    edges = edges[order]
    edge_values = edge_values[order]

    if max_dim == 2 and n >= 3:
        tris, tri_values = enumerate_triangles(d, float(threshold))
        if tris.shape[0]:
            # Enumeration is lexicographic; a stable sort on value gives
            # (value, lex) order.
            order = np.argsort(tri_values, kind="stable")
            tris = tris[order]
            tri_values = tri_values[order]
    else:
        tris = np.empty((0, 3), dtype=np.int32)
        tri_values = np.empty(0, dtype=float)

    return FilteredComplex(n, threshold, edges, edge_values, tris, tri_values)
