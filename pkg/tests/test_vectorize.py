import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bettiseq.diagram import FiltrationGrid, region_contains, to_barcode
from bettiseq.vectorize import (
    BettiVector,
    Variant,
    betti_grid_sample,
    betti_interval,
    betti_new,
    cumulative,
    default_gamma,
    normalize_sup,
    normalized_cumulative,
    stable_betti,
    write_vector_csv,
)

from conftest import make_diagram, random_diagram

GRID4 = FiltrationGrid(1.0, 4)
GRID20 = FiltrationGrid(1.0, 20)


class TestBettiVector:
    def test_length_checked(self):
        with pytest.raises(ValueError):
            BettiVector(np.zeros(3), GRID4, Variant.INTERVAL)


class TestGridSample:
    def test_counts_alive_at_right_endpoints(self):
        dg = make_diagram([(0.0, 0.6), (0.3, 0.9)])
        v = betti_grid_sample(to_barcode(dg), GRID4)
        # sample points 0.25, 0.5, 0.75, 1.0
        assert v.values.tolist() == [1.0, 2.0, 1.0, 0.0]

    def test_misses_bar_inside_one_bin(self):
        """The defining blind spot: a bar strictly between two sample
        points contributes nothing."""
        dg = make_diagram([(0.30, 0.45)])
        v = betti_grid_sample(to_barcode(dg), GRID4)
        assert v.values.tolist() == [0.0, 0.0, 0.0, 0.0]
        assert betti_interval(dg, GRID4).values.tolist() == [0, 1, 0, 0]

    def test_rejects_essential_bars(self):
        dg = make_diagram([(0.1, math.inf)])
        with pytest.raises(ValueError):
            betti_grid_sample(to_barcode(dg), GRID4)


class TestInterval:
    def test_matches_region_predicate(self, np_rng):
        for _ in range(20):
            dg = random_diagram(np_rng, 15)
            v = betti_interval(dg, GRID20)
            expected = [
                sum(
                    region_contains(GRID20, i, p, allow_zero_birth=True)
                    for p in dg.pairs
                )
                for i in range(1, 21)
            ]
            assert v.values.tolist() == expected

    def test_birth_at_zero_counted(self):
        dg = make_diagram([(0.0, 0.1)], dim=0)
        assert betti_interval(dg, GRID4).values.tolist() == [1, 0, 0, 0]

    def test_empty_diagram(self):
        assert betti_interval(make_diagram([]), GRID4).values.tolist() == [0] * 4

    def test_rejects_essential(self):
        with pytest.raises(ValueError):
            betti_interval(make_diagram([(0.1, math.inf)]), GRID4)


class TestStableGaussian:
    def test_single_point_closed_form(self):
        grid = FiltrationGrid(1.0, 2)  # delta_tau = 0.5, centers (0,.5),(.5,1)
        dg = make_diagram([(0.25, 0.5)])
        v = stable_betti(dg, grid)
        norm = 1.0 / (2 * 2 * math.pi * 0.5)
        e1 = math.exp(-((0.25 - 0.0) ** 2 + (0.5 - 0.5) ** 2) / (2 * 0.5))
        e2 = math.exp(-((0.25 - 0.5) ** 2 + (0.5 - 1.0) ** 2) / (2 * 0.5))
        assert abs(v.values[0] - norm * e1) < 1e-15
        assert abs(v.values[1] - norm * e2) < 1e-15

    def test_additivity_over_points(self, np_rng):
        a = random_diagram(np_rng, 6)
        b = random_diagram(np_rng, 6)
        both = make_diagram(
            [(p.birth, p.death) for p in a.pairs + b.pairs]
        )
        va = stable_betti(a, GRID20).values
        vb = stable_betti(b, GRID20).values
        vab = stable_betti(both, GRID20).values
        assert np.allclose(vab, va + vb, rtol=0, atol=1e-13)

    def test_unsquared_variant_differs(self):
        dg = make_diagram([(0.25, 0.5)])
        grid = FiltrationGrid(1.0, 2)
        sq = stable_betti(dg, grid).values
        lin = stable_betti(dg, grid, squared_exponent=False).values
        assert not np.allclose(sq, lin)

    @given(st.floats(1e-4, 1e-3))
    def test_small_shift_moves_vector_continuously(self, delta):
        """Lipschitz behavior on a concrete diagram: the vector moves by
        O(delta), never by a jump."""
        base = make_diagram([(0.3, 0.7)])
        moved = make_diagram([(0.3, 0.7 + delta)])
        g = GRID20
        diff = np.max(
            np.abs(stable_betti(base, g).values - stable_betti(moved, g).values)
        )
        # crude Lipschitz constant for N=20, delta_tau=0.05:
        # sup |grad p_i| / N <= e^{-1/2} / (2 pi N dt^{3/2}) per coordinate
        lip = math.sqrt(2) * math.exp(-0.5) / (2 * math.pi * 20 * 0.05**1.5)
        assert diff <= lip * delta * (1 + 1e-9)


class TestNewExtended:
    def test_gamma_zero_reduces_to_interval(self, np_rng):
        for _ in range(10):
            dg = random_diagram(np_rng, 12)
            assert np.array_equal(
                betti_new(dg, GRID20, gamma=0.0).values,
                betti_interval(dg, GRID20).values,
            )

    def test_default_gamma_schedule(self):
        assert default_gamma(1, 20) == 2.0
        assert default_gamma(20, 20) == 0.1

    def test_extension_catches_nearby_birth(self):
        # bar born just past tau_1 = 0.25: invisible to bin 1's region but
        # inside its gamma-extension (gamma_1 = 0.4, reach 0.1)
        dg = make_diagram([(0.3, 0.9)])
        assert betti_interval(dg, GRID4).values[0] == 0
        assert betti_new(dg, GRID4).values[0] == 1

    def test_extension_catches_nearby_death(self):
        # bar dying just below tau_1 = 0.25 extends into bin 2's lower reach
        dg = make_diagram([(0.05, 0.22)])
        assert betti_interval(dg, GRID4).values[1] == 0
        assert betti_new(dg, GRID4).values[1] == 1

    def test_point_in_region_and_extension_counts_once(self, np_rng):
        for _ in range(10):
            dg = random_diagram(np_rng, 12)
            v = betti_new(dg, GRID20).values
            assert np.all(v <= len(dg.pairs))

    def test_callable_gamma(self):
        dg = make_diagram([(0.3, 0.9)])
        v = betti_new(dg, GRID4, gamma=lambda i, n: 0.0)
        assert np.array_equal(v.values, betti_interval(dg, GRID4).values)

    def test_negative_gamma_rejected(self):
        with pytest.raises(ValueError):
            betti_new(make_diagram([(0.1, 0.2)]), GRID4, gamma=-1.0)


class TestPostTransforms:
    def test_cumulative(self):
        v = BettiVector(np.array([1.0, 2.0, 0.0, 1.0]), GRID4, Variant.INTERVAL)
        assert cumulative(v).values.tolist() == [1.0, 3.0, 3.0, 4.0]

    def test_normalize_sup(self):
        v = BettiVector(np.array([1.0, 4.0, 2.0, 0.0]), GRID4, Variant.INTERVAL)
        assert normalize_sup(v).values.tolist() == [0.25, 1.0, 0.5, 0.0]

    def test_normalize_zero_vector_unchanged(self):
        v = BettiVector(np.zeros(4), GRID4, Variant.INTERVAL)
        assert normalize_sup(v).values.tolist() == [0.0] * 4

    def test_normalized_cumulative_sup_is_one(self, np_rng):
        dg = random_diagram(np_rng, 10)
        if not dg.pairs:
            return
        out = normalized_cumulative(betti_interval(dg, GRID20))
        assert np.max(np.abs(out.values)) in (0.0, 1.0)
        assert out.variant is Variant.NORMALIZED_CUMULATIVE


class TestVectorCsv:
    def test_format_and_values(self, tmp_path):
        dg = make_diagram([(0.0, 0.6)])
        v = betti_interval(dg, GRID4)
        path = tmp_path / "v.csv"
        write_vector_csv([(v, 1, 7)], path)
        lines = path.read_text().splitlines()
        assert lines[0] == "variant,dim,seed,v1,v2,v3,v4"
        fields = lines[1].split(",")
        assert fields[:3] == ["interval", "1", "7"]
        assert [float(x) for x in fields[3:]] == v.values.tolist()
