import math

import numpy as np
import pytest

from bettiseq.pointcloud import (
    DistanceMatrix,
    Generator,
    PointCloud,
    SIERPINSKI_VERTICES,
    distances_from_points,
    enclosing_radius,
    gen_perturbed_lattice,
    gen_sierpinski,
    gen_uniform,
    gen_uniform_with_hole,
    pairwise_distances,
    read_pointcloud_csv,
    write_pointcloud_csv,
)

SQRT2 = math.sqrt(2.0)


class TestPointCloudValidation:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            PointCloud(np.empty((0, 2)), 0, Generator.UNIFORM)

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            PointCloud(np.zeros((3, 3)), 0, Generator.UNIFORM)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            PointCloud(np.array([[0.0, np.nan]]), 0, Generator.UNIFORM)

    def test_rejects_bad_scale(self):
        with pytest.raises(ValueError):
            PointCloud(np.zeros((1, 2)), 0, Generator.UNIFORM, domain_scale=0.0)


class TestDistanceMatrixValidation:
    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            DistanceMatrix(np.array([[0.0, 1.0], [2.0, 0.0]]))

    def test_rejects_nonzero_diagonal(self):
        with pytest.raises(ValueError):
            DistanceMatrix(np.array([[1.0]]))

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            DistanceMatrix(np.array([[0.0, -1.0], [-1.0, 0.0]]))


class TestLattice:
    def test_unperturbed_spacing(self):
        pc = gen_perturbed_lattice(15, 0.7, 0.0, 0)
        assert pc.n == 225
        d = pairwise_distances(pc).d
        off = d[np.triu_indices(225, 1)]
        assert math.isclose(off.min(), 0.05, rel_tol=0, abs_tol=1e-15)

    def test_degenerate_two_by_two_is_unit_square(self):
        pc = gen_perturbed_lattice(2, 1.0, 0.0, 0)
        expected = {(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)}
        assert {tuple(p) for p in pc.points} == expected

    @pytest.mark.parametrize(
        "epsilon,cmp", [(-1e-8, np.less), (1e-8, np.greater)]
    )
    def test_epsilon_moves_minimum_spacing(self, epsilon, cmp):
        pc = gen_perturbed_lattice(15, 0.7, epsilon, 0)
        d = pairwise_distances(pc).d
        off = d[np.triu_indices(225, 1)]
        assert cmp(off.min(), 0.05)

    def test_perturbation_bounded_and_seeded(self):
        a = gen_perturbed_lattice(5, 1.0, 0.0, 9, perturb=0.05)
        b = gen_perturbed_lattice(5, 1.0, 0.0, 9, perturb=0.05)
        base = gen_perturbed_lattice(5, 1.0, 0.0, 9)
        assert np.array_equal(a.points, b.points)
        assert np.max(np.abs(a.points - base.points)) <= 0.05

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            gen_perturbed_lattice(1, 1.0, 0.0, 0)
        with pytest.raises(ValueError):
            gen_perturbed_lattice(3, -1.0, 0.0, 0)
        with pytest.raises(ValueError):
            gen_perturbed_lattice(3, 1.0, -1.5, 0)
        with pytest.raises(ValueError):
            gen_perturbed_lattice(3, 1.0, 0.0, 0, perturb=-0.1)


class TestUniform:
    def test_shape_and_bounds(self):
        pc = gen_uniform(225, 1.0, 4)
        assert pc.n == 225
        assert np.all(pc.points >= 0.0) and np.all(pc.points <= 1.0)

    def test_single_point_cloud(self):
        pc = gen_uniform(1, 1.0, 0)
        assert pc.n == 1

    def test_determinism(self):
        assert np.array_equal(
            gen_uniform(100, 1.0, 42).points, gen_uniform(100, 1.0, 42).points
        )

    def test_distinct_seeds_differ(self):
        assert not np.array_equal(
            gen_uniform(100, 1.0, 1).points, gen_uniform(100, 1.0, 2).points
        )


class TestSierpinski:
    def test_hull_containment(self):
        pc = gen_sierpinski(500, 8)
        v = np.array(SIERPINSKI_VERTICES)
        # Barycentric coordinates with respect to the triangle must all be
        # within [0, 1] up to rounding.
        mat = np.column_stack([v[1] - v[0], v[2] - v[0]])
        lam = np.linalg.solve(mat, (pc.points - v[0]).T).T
        coords = np.column_stack([1.0 - lam.sum(axis=1), lam])
        assert np.all(coords >= -1e-12) and np.all(coords <= 1.0 + 1e-12)

    def test_central_removed_triangle_is_empty(self):
        pc = gen_sierpinski(3000, 13)
        v = np.array(SIERPINSKI_VERTICES)
        mids = np.array(
            [(v[0] + v[1]) / 2, (v[1] + v[2]) / 2, (v[0] + v[2]) / 2]
        )
        mat = np.column_stack([mids[1] - mids[0], mids[2] - mids[0]])
        lam = np.linalg.solve(mat, (pc.points - mids[0]).T).T
        coords = np.column_stack([1.0 - lam.sum(axis=1), lam])
        strictly_inside = np.all(coords > 1e-9, axis=1)
        assert not strictly_inside.any()

    def test_determinism(self):
        assert np.array_equal(
            gen_sierpinski(50, 3).points, gen_sierpinski(50, 3).points
        )


class TestUniformWithHole:
    def test_no_point_in_open_hole(self):
        pc = gen_uniform_with_hole(225, 0.15, 0.85, 6)
        inside = np.all((pc.points > 0.15) & (pc.points < 0.85), axis=1)
        assert pc.n == 225 and not inside.any()

    def test_degenerate_hole_is_plain_uniform(self):
        pc = gen_uniform_with_hole(50, 0.5, 0.5, 3)
        assert pc.n == 50
        assert np.all(pc.points >= 0.0) and np.all(pc.points <= 1.0)

    def test_rejects_covering_hole(self):
        with pytest.raises(ValueError):
            gen_uniform_with_hole(10, 0.0, 1.0, 0)

    def test_rejects_bad_bounds(self):
        with pytest.raises(ValueError):
            gen_uniform_with_hole(10, 0.9, 0.1, 0)


class TestDistances:
    def test_unit_square_corners(self):
        pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        d = distances_from_points(pts).d
        off = sorted(d[np.triu_indices(4, 1)])
        assert off[:4] == [1.0, 1.0, 1.0, 1.0]
        assert off[4] == off[5] == SQRT2

    def test_single_point(self):
        dm = distances_from_points(np.array([[0.3, 0.7]]))
        assert dm.n == 1 and dm.d[0, 0] == 0.0

    def test_symmetry_is_exact(self, np_rng):
        pts = np_rng.random((40, 2))
        d = distances_from_points(pts).d
        assert np.array_equal(d, d.T)

    def test_enclosing_radius(self):
        pts = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])
        # middle point sees everything within 1
        assert enclosing_radius(distances_from_points(pts)) == 1.0
        assert enclosing_radius(distances_from_points(np.array([[0.0, 0.0]]))) == 0.0


class TestCsv:
    def test_round_trip_is_bit_exact(self, tmp_path):
        pc = gen_uniform(30, 1.0, 5)
        path = tmp_path / "pc.csv"
        write_pointcloud_csv(pc, path)
        back = read_pointcloud_csv(path)
        assert np.array_equal(back, pc.points)

    def test_header_format(self, tmp_path):
        pc = gen_uniform(2, 1.0, 0)
        path = tmp_path / "pc.csv"
        write_pointcloud_csv(pc, path)
        assert path.read_text().splitlines()[0] == "x,y"

    def test_rejects_wrong_column_count(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,y,z\n1,2,3\n")
        with pytest.raises(ValueError):
            read_pointcloud_csv(path)
