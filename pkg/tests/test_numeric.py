import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import node_vectors
from sinfrac.errors import IllConditioned, IndexCapExceeded, RegionExhausted
from sinfrac.numeric import (
    FIXED_PROBES,
    SamplePlan,
    band_height,
    condition_estimate,
    fit_series_coefficients,
    rel_error,
    sample_points,
)
from sinfrac.sympoly import braaksma_C

complexes = st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False)


class TestSampling:
    def test_fixed_probes_come_first(self):
        zs = sample_points(SamplePlan(count=10))
        np.testing.assert_array_equal(zs[:4], np.asarray(FIXED_PROBES))
        assert len(zs) == 10

    def test_single_point_without_nodes(self):
        assert sample_points(SamplePlan(count=1)).tolist() == [1 + 0.5j]

    def test_guard_around_a_node_at_zero(self):
        zs = sample_points(SamplePlan(count=200), [0.0])
        assert np.abs(np.sin(zs)).min() >= math.sin(0.2)

    def test_probes_are_clipped_to_the_band(self):
        zs = sample_points(SamplePlan(count=4, half_height=0.5))
        assert np.all(np.abs(zs.imag) <= 0.5)

    @given(node_vectors(1, 5), st.integers(0, 2**31), st.floats(0.1, 3))
    def test_points_respect_guard_and_band(self, b, seed, height):
        plan = SamplePlan(count=40, half_height=height, seed=seed)
        zs = sample_points(plan, b)
        assert len(zs) == 40
        assert np.all(np.abs(zs.imag) <= height + 1e-12)
        gap = np.abs(np.sin(zs[:, None] - np.asarray(b)[None, :]))
        assert gap.min() >= math.sin(plan.pole_guard) - 1e-12

    @given(node_vectors(0, 4), st.integers(0, 2**31))
    def test_determinism(self, b, seed):
        plan = SamplePlan(count=30, seed=seed)
        np.testing.assert_array_equal(sample_points(plan, b), sample_points(plan, b))

    def test_different_seeds_differ(self):
        assert not np.array_equal(sample_points(SamplePlan(seed=1)), sample_points(SamplePlan(seed=2)))

    def test_region_exhausted(self):
        # a real-axis band covered by guards around nodes spaced pi/4 apart
        b = [k * math.pi / 4 for k in range(4)]
        with pytest.raises(RegionExhausted):
            sample_points(SamplePlan(count=20, half_height=0.0, pole_guard=1.2), b)

    def test_plan_validation(self):
        with pytest.raises(ValueError):
            SamplePlan(count=0)
        with pytest.raises(ValueError):
            SamplePlan(half_height=-1)
        assert SamplePlan().with_height(1.5).half_height == 1.5


class TestBandHeight:
    def test_frequency_limit(self):
        assert band_height(3.0, 30) == pytest.approx(1.5)
        assert band_height(3.0, 0) == 3.0

    def test_growth_budget(self):
        assert band_height(3.0, 1, term_growth=5, natural_growth=1) == pytest.approx(math.log(100) / 4)
        assert band_height(3.0, 1, term_growth=1, natural_growth=2) == 3.0


class TestRelError:
    @given(complexes, complexes)
    def test_symmetric_and_nonnegative(self, x, y):
        assert rel_error(x, y) == rel_error(y, x) >= 0

    @given(complexes)
    def test_zero_on_equal(self, x):
        assert rel_error(x, x) == 0

    @given(complexes, complexes)
    def test_bounded_by_absolute_difference(self, x, y):
        assert rel_error(x, y) <= abs(x - y) * (1 + 1e-15)

    @given(complexes, complexes, complexes)
    def test_triangle_style_bound(self, x, y, w):
        assert rel_error(x, w) <= 2 * (rel_error(x, y) + rel_error(y, w)) * (1 + 1e-12) + 1e-300

    def test_values(self):
        assert rel_error(0, 0) == 0
        assert rel_error(2, 1) == pytest.approx(1 / 3)

    def test_vectorised(self):
        out = rel_error(np.array([1, 2]), np.array([1, 3]))
        assert out.shape == (2,)
        assert out[1] == pytest.approx(1 / 4)


class TestConditionEstimate:
    def test_single_node(self):
        c = condition_estimate([0.3])
        assert (c.min_node_separation, c.pole_coeff_magnitude, c.digits_lost) == (1.0, 1.0, 0.0)

    def test_close_nodes_lose_digits(self):
        c = condition_estimate([0.0, 1e-3, 1.5])
        assert c.min_node_separation == pytest.approx(math.sin(1e-3))
        assert c.digits_lost > 2.5


class TestFourierFit:
    def test_constant_ratio(self):
        C = fit_series_coefficients([], [], 1, 3)
        assert C[0] == pytest.approx(1) and abs(C[1]) < 1e-12

    def test_single_node_series(self):
        # for Im z > 0: exp(-iz) / sin(b - z) = 2i exp(-ib) sum_j exp(-2ijb) exp(2ijz)
        b = 0.4
        C = fit_series_coefficients([], [b], 1, 4)
        for j in range(4):
            expected = 2j * np.exp(-1j * b) * np.exp(-2j * j * b)
            assert C[j] == pytest.approx(expected, rel=1e-10)

    def test_one_over_one(self):
        C = fit_series_coefficients([math.pi / 2], [math.pi / 6], 1, 1)
        assert abs(C[0] - np.exp(1j * math.pi / 3)) <= 1e-10

    def test_three_over_one_matches_closed_form(self):
        a, b = [0.4, 1.3, 2.9], [1.0]
        C = fit_series_coefficients(a, b, 1, 6)
        exact = braaksma_C(a, b, 5)
        for j in range(6):
            assert abs(C[j] - exact[j]) <= 1e-8 * (1 + abs(exact[j]))

    def test_cap(self):
        with pytest.raises(IndexCapExceeded):
            fit_series_coefficients([0.1], [0.2], 1, 17)
        with pytest.raises(ValueError):
            fit_series_coefficients([0.1], [0.2], 0, 3)

    def test_low_height_is_ill_conditioned(self):
        with pytest.raises(IllConditioned):
            fit_series_coefficients([0.1, 0.9], [0.2, 1.7], 1, 1, height=0.3)
