import math

import numpy as np
import pytest

from noise_localize import localize as loc
from noise_localize import measures as ms
from noise_localize import optimize as opt
from noise_localize.channels import DecoherenceParams
from noise_localize.states import MeasurementBasis

HALF_PI = math.pi / 2


class TestGoldenSection:
    def test_quadratic(self):
        t, v = opt.golden_section_max(lambda x: -(x - 0.3) ** 2, 0.0, 1.0, 1e-10)
        assert t == pytest.approx(0.3, abs=1e-9) and v <= 0

    def test_endpoint_maximum(self):
        t, _ = opt.golden_section_max(lambda x: x, 0.0, 1.0, 1e-10)
        assert t == pytest.approx(1.0, abs=1e-9)


class TestOptimizeTheta:
    def test_noise_free_all_objectives(self):
        for name in ("n+", "n-", "nave", "f+", "f-", "fave"):
            res = opt.optimize_theta(name, 0.0)
            assert res.best_theta == pytest.approx(HALF_PI, abs=1e-8), name
            assert res.best_value == pytest.approx(1.0, abs=1e-12), name

    def test_shifted_maximum_at_d03(self):
        plus = opt.optimize_theta("n+", 0.3)
        minus = opt.optimize_theta("n-", 0.3)
        # regression pin from this implementation
        assert plus.best_theta == pytest.approx(1.6201236, abs=1e-7)
        assert plus.best_theta > HALF_PI and minus.best_theta < HALF_PI
        assert plus.best_theta + minus.best_theta == pytest.approx(math.pi, abs=1e-8)
        assert opt.optimize_theta("f+", 0.3).best_theta == pytest.approx(plus.best_theta, abs=1e-7)
        assert opt.optimize_theta("nave", 0.3).best_theta == pytest.approx(HALF_PI, abs=1e-8)

    def test_stationarity_of_shifted_maximum(self):
        t = opt.optimize_theta("n+", 0.3).best_theta
        h = 1e-5
        f = lambda x: ms.n_amp(0.3, MeasurementBasis(x), "+")
        assert abs(f(t + h) - f(t - h)) / (2 * h) <= 1e-6

    def test_refined_never_below_grid(self, rng):
        for _ in range(10):
            p = DecoherenceParams(*(0.8 * rng.random(3)))
            for name in ("n+", "f-", "nave", "fave"):
                res = opt.optimize_theta(name, p, resolution=201)
                assert res.best_value >= res.grid_max

    def test_fave_peak_at_half_pi(self):
        for d in np.linspace(0, 0.95, 20):
            res = opt.optimize_theta("fave", d)
            assert res.best_theta == pytest.approx(HALF_PI, abs=1e-8)
            assert all(v <= res.best_value + 1e-15 for _, v in res.grid)

    def test_depolarized_peak_at_half_pi(self):
        for d in (0.05, 0.1, 0.15):
            assert opt.optimize_theta("depol-n", d).best_theta == pytest.approx(HALF_PI, abs=1e-8)

    def test_depolarized_needs_symmetric_noise(self):
        with pytest.raises(ValueError):
            opt.optimize_theta("depol-n", DecoherenceParams(0.1, 0.2, 0.1))

    def test_unknown_objective(self):
        with pytest.raises(ValueError):
            opt.get_objective("nope")

    def test_flat(self):
        res = opt.optimize_theta("nave", 0.64)
        assert res.flat and res.best_value == 0.0

    def test_absent_outcome_never_wins(self):
        res = opt.optimize_theta("n-", DecoherenceParams(0.0, 0.0, 1.0), resolution=101)
        assert res.best_theta > 0
        assert math.isfinite(res.best_value)

    def test_grid_contains_half_pi(self):
        res = opt.optimize_theta("n+", 0.1, resolution=11)
        assert res.grid[5][0] == HALF_PI and len(res.grid) == 11


class TestSuddenDeath:
    def test_golden_ratio(self):
        res = opt.sudden_death_threshold(HALF_PI)
        assert res.found and res.bracket_width <= 1e-9
        assert res.d_star == pytest.approx((math.sqrt(5) - 1) / 2, abs=1e-9)
        assert ms.f_average(res.d_star, MeasurementBasis(HALF_PI)) == pytest.approx(0.5, abs=1e-10)

    def test_invariant_around_threshold(self):
        res = opt.sudden_death_threshold(HALF_PI)
        assert ms.n_amp(res.d_star - 1e-7, MeasurementBasis(HALF_PI)) > 0
        assert ms.n_amp(res.d_star + 1e-7, MeasurementBasis(HALF_PI)) == 0

    def test_depolarized_threshold(self):
        res = opt.sudden_death_threshold(HALF_PI, "depol-n")
        d = res.d_star
        assert 12 * (3 - 2 * d) * d == pytest.approx(abs(3 - 4 * d) ** 3, abs=1e-9)
        assert d == pytest.approx(0.2570264, abs=1e-7)

    def test_not_bracketed(self):
        assert not opt.sudden_death_threshold(0.0).found


class TestNaveSplit:
    def test_single_maximum(self):
        for d in (0.3, 0.58, 0.6):
            assert opt.nave_argmax_split(d) == (HALF_PI,)

    def test_pair(self):
        low, high = opt.nave_argmax_split(0.62)
        assert low < HALF_PI < high
        assert low + high == pytest.approx(math.pi, abs=1e-12)
        # regression pin from this implementation
        assert low == pytest.approx(1.3339417, abs=1e-6)
        f = lambda t: ms.n_average(0.62, MeasurementBasis(t))
        assert f(low) > f(HALF_PI) + 1e-6
        assert f(low) == pytest.approx(f(high), abs=1e-12)

    def test_flat(self):
        assert opt.nave_argmax_split(0.64) == ()

    def test_nave_symmetric_in_theta(self):
        for d in np.linspace(0, 0.7, 8):
            for t in np.linspace(0, math.pi, 9):
                assert ms.n_average(d, MeasurementBasis(t)) == pytest.approx(ms.n_average(d, MeasurementBasis(math.pi - t)), abs=1e-14)

    def test_critical_d(self):
        # regression pin from this implementation
        assert opt.nave_split_critical_d(0.58, 0.62) == pytest.approx(0.6101147, abs=1e-6)

    def test_critical_not_bracketed(self):
        with pytest.raises(ValueError):
            opt.nave_split_critical_d(0.0, 0.3)


class TestUsefulVersusAverage:
    def test_separation_below_quartic_root(self):
        # between (sqrt5-1)/2 and 4^(-1/3) the average is useless but the + outcome is not
        d = 0.62
        assert opt.optimize_theta("fave", d).best_value <= 0.5
        best = opt.optimize_theta("f+", d)
        assert best.best_theta > HALF_PI and best.best_value > 0.5 + 1e-4

    def test_no_separation_past_quartic_root(self):
        d = 0.63
        assert d > 4 ** (-1 / 3)
        assert opt.optimize_theta("f+", d).best_value < 0.5


class TestExtremalPoints:
    def test_equal_pair_noise_shares_maximizer(self, rng):
        for _ in range(10):
            d, d3 = 0.5 * rng.random(2)
            p = DecoherenceParams(d, d, d3)
            n, f = opt.optimize_theta("n+", p), opt.optimize_theta("f+", p)
            assert n.best_value > 0
            assert n.best_theta == pytest.approx(f.best_theta, abs=1e-7)
            assert f.best_value == pytest.approx(0.5 + n.best_value / 2, abs=1e-12)

    def test_unequal_pair_noise_can_split_maximizers(self):
        p = DecoherenceParams(0.1137845383223665, 0.5999227971547251, 0.35199653929309443)
        n, f = opt.optimize_theta("n+", p), opt.optimize_theta("f+", p)
        assert n.best_value > 0 and f.best_value > 0.5
        assert abs(n.best_theta - f.best_theta) > 0.1
