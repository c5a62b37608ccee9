import math

import numpy as np
import pytest

from bettiseq.filtration import build_rips
from bettiseq.pointcloud import distances_from_points

SQRT2 = math.sqrt(2.0)

SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])


def _square_dm():
    return distances_from_points(SQUARE)


class TestBuildRips:
    def test_square_below_diagonal_threshold(self):
        fc = build_rips(_square_dm(), 1.2)
        assert fc.n_vertices == 4
        assert fc.n_edges == 4
        assert fc.n_triangles == 0
        assert np.all(fc.edge_values == 1.0)

    def test_square_full_threshold(self):
        fc = build_rips(_square_dm(), 2.0)
        assert fc.n_edges == 6
        # every triple of corners spans a triangle once the diagonals appear
        assert fc.n_triangles == 4
        assert np.all(fc.tri_values == SQRT2)

    def test_triangle_value_is_longest_edge(self):
        pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 2.0]])
        fc = build_rips(distances_from_points(pts), 10.0)
        assert fc.n_triangles == 1
        assert fc.tri_values[0] == math.sqrt(5.0)

    def test_edges_sorted_by_value_then_lex(self):
        pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        fc = build_rips(distances_from_points(pts), 2.0)
        keys = [
            (fc.edge_values[i], tuple(fc.edges[i])) for i in range(fc.n_edges)
        ]
        assert keys == sorted(keys)
        keys = [
            (fc.tri_values[i], tuple(fc.triangles[i]))
            for i in range(fc.n_triangles)
        ]
        assert keys == sorted(keys)

    def test_vertex_rows_are_increasing(self, np_rng):
        pts = np_rng.random((12, 2))
        fc = build_rips(distances_from_points(pts), 1.0)
        assert np.all(fc.edges[:, 0] < fc.edges[:, 1])
        assert np.all(fc.triangles[:, 0] < fc.triangles[:, 1])
        assert np.all(fc.triangles[:, 1] < fc.triangles[:, 2])

    def test_triangle_enumeration_matches_bruteforce(self, np_rng):
        for _ in range(10):
            pts = np_rng.random((10, 2))
            dm = distances_from_points(pts)
            thr = float(np_rng.uniform(0.3, 1.0))
            fc = build_rips(dm, thr)
            d = dm.d
            expected = {
                (i, j, k): max(d[i, j], d[i, k], d[j, k])
                for i in range(10)
                for j in range(i + 1, 10)
                for k in range(j + 1, 10)
                if max(d[i, j], d[i, k], d[j, k]) <= thr
            }
            got = {
                tuple(int(v) for v in fc.triangles[t]): fc.tri_values[t]
                for t in range(fc.n_triangles)
            }
            assert got == expected

    def test_max_dim_one_skips_triangles(self):
        fc = build_rips(_square_dm(), 2.0, max_dim=1)
        assert fc.n_edges == 6 and fc.n_triangles == 0

    def test_zero_threshold(self):
        fc = build_rips(_square_dm(), 0.0)
        assert fc.n_edges == 0 and fc.n_triangles == 0

    def test_single_point(self):
        fc = build_rips(distances_from_points(np.array([[0.0, 0.0]])), 1.0)
        assert fc.n_vertices == 1 and fc.n_edges == 0

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            build_rips(_square_dm(), -0.5)
        with pytest.raises(ValueError):
            build_rips(_square_dm(), 1.0, max_dim=3)


class TestSimplexOrder:
    def test_global_order_faces_before_cofaces(self):
        fc = build_rips(_square_dm(), 2.0)
        simplices = fc.simplices
        seen = set()
        for s in simplices:
            if s.dim > 0:
                for i in range(len(s.vertices)):
                    face = s.vertices[:i] + s.vertices[i + 1 :]
                    assert face in seen
            seen.add(s.vertices)

    def test_global_order_is_value_dim_lex(self):
        fc = build_rips(_square_dm(), 2.0)
        keys = [
            (s.filtration_value, s.dim, s.vertices) for s in fc.simplices
        ]
        assert keys == sorted(keys)

    def test_dump_round_readable(self, tmp_path):
        fc = build_rips(_square_dm(), 2.0)
        path = tmp_path / "fc.txt"
        fc.dump(path)
        lines = path.read_text().splitlines()
        assert len(lines) == 4 + 6 + 4
        assert lines[0].split() == ["0.0", "0", "0"]
