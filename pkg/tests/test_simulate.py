"""Scenario generators: determinism, geometry, and the overlap knob."""

import math

import numpy as np
import pytest

from pptree import (
    FitConfig,
    SimSpec,
    fit,
    load_csv,
    predict_batch,
    save_csv,
    sim_basic,
    sim_mixture,
    sim_outlier,
    simulate,
)
from pptree.simulate import mixture_bayes_error

U = np.array([1.0, 1.0]) / math.sqrt(2)


class TestSimSpecValidation:
    def test_defaults_are_valid(self):
        SimSpec(scenario="basic")

    def test_unknown_scenario(self):
        with pytest.raises(ValueError):
            SimSpec(scenario="moons")

    def test_k_too_small(self):
        with pytest.raises(ValueError):
            SimSpec(scenario="basic", k=1)

    def test_n_below_k(self):
        with pytest.raises(ValueError):
            SimSpec(scenario="basic", n=2, k=3)

    def test_bad_separation(self):
        with pytest.raises(ValueError):
            SimSpec(scenario="basic", separation=0.0)

    def test_bad_elongation(self):
        with pytest.raises(ValueError):
            SimSpec(scenario="basic", elongation=-1.0)

    def test_outlier_fraction_bounds(self):
        for bad in (0.0, 0.5, 0.7):
            with pytest.raises(ValueError):
                SimSpec(scenario="outlier", outlier_fraction=bad)

    def test_overlap_bounds(self):
        with pytest.raises(ValueError):
            SimSpec(scenario="mixture", overlap=1.0)
        with pytest.raises(ValueError):
            SimSpec(scenario="mixture", overlap=-0.2)


class TestDeterminism:
    @pytest.mark.parametrize("scenario", ["basic", "outlier", "mixture"])
    def test_same_seed_same_data(self, scenario):
        spec = SimSpec(scenario=scenario, n=150, k=3, seed=21, overlap=0.3)
        a, b = simulate(spec), simulate(spec)
        assert np.array_equal(a.X, b.X)
        assert np.array_equal(a.y, b.y)

    @pytest.mark.parametrize("scenario", ["basic", "outlier", "mixture"])
    def test_seed_changes_data(self, scenario):
        base = dict(scenario=scenario, n=150, k=3, overlap=0.3)
        a = simulate(SimSpec(seed=1, **base))
        b = simulate(SimSpec(seed=2, **base))
        assert not np.array_equal(a.X, b.X)


class TestBasic:
    def test_sizes_and_labels(self):
        data = sim_basic(SimSpec(scenario="basic", n=301, k=3, seed=5))
        assert data.n == 301
        counts = [int((data.y == g).sum()) for g in (1, 2, 3)]
        assert counts == [101, 100, 100]
        assert list(data.classes) == [1, 2, 3]

    def test_means_on_oblique_chain(self):
        sep = 6.0
        data = sim_basic(SimSpec(scenario="basic", n=900, k=3, seed=8,
                                 separation=sep))
        for g in (1, 2, 3):
            center = (g - 1) * sep * U
            got = data.X[data.y == g].mean(axis=0)
            assert np.allclose(got, center, atol=0.5)

    def test_unit_spread_when_isotropic(self):
        data = sim_basic(SimSpec(scenario="basic", n=1000, k=2, seed=3))
        g1 = data.X[data.y == 1]
        assert 0.85 <= g1[:, 0].std(ddof=1) <= 1.15
        assert 0.85 <= g1[:, 1].std(ddof=1) <= 1.15

    def test_elongation_stretches_across_chain(self):
        data = sim_basic(SimSpec(scenario="basic", n=1000, k=2, seed=3,
                                 elongation=3.0))
        g1 = data.X[data.y == 1]
        v = np.array([1.0, -1.0]) / math.sqrt(2)
        along = (g1 - g1.mean(axis=0)) @ U
        across = (g1 - g1.mean(axis=0)) @ v
        ratio = across.std(ddof=1) / along.std(ddof=1)
        assert 2.0 <= ratio <= 4.0


class TestOutlier:
    def test_far_cluster_size_and_place(self):
        sep = 6.0
        data = sim_outlier(SimSpec(scenario="outlier", n=600, k=2, seed=3,
                                   outlier_fraction=0.15, separation=sep))
        z2 = data.X[data.y == 2] @ U
        far = z2 < -sep / 2
        assert int(far.sum()) == round(0.15 * 300)
        # the far cluster mirrors the donor across class 1's center
        far_mean = data.X[data.y == 2][far].mean(axis=0)
        assert np.allclose(far_mean, -sep * U, atol=0.6)

    def test_sizes_and_labels(self):
        data = sim_outlier(SimSpec(scenario="outlier", n=500, k=3, seed=2))
        assert data.n == 500
        assert list(data.classes) == [1, 2, 3]

    def test_tiny_fraction_closes_the_gap(self):
        # as the flanking cluster vanishes the two fitters agree again
        data = sim_outlier(SimSpec(scenario="outlier", n=600, k=2, seed=3,
                                   outlier_fraction=0.01))
        err_orig = float((predict_batch(fit(data, variant="original"),
                                        data.X) != data.y).mean())
        err_mod2 = float((predict_batch(fit(data, variant="mod2"),
                                        data.X) != data.y).mean())
        assert err_orig - err_mod2 <= 0.02


class TestMixture:
    def test_spread_components_are_learnable(self):
        for seed in range(1, 6):
            data = sim_mixture(SimSpec(scenario="mixture", n=300, k=3,
                                       seed=seed, overlap=0.0))
            best = min(
                float((predict_batch(fit(data, variant=v), data.X) != data.y).mean())
                for v in ("original", "mod2")
            )
            assert best <= 0.05

    def test_overlap_knob_is_monotone_on_average(self):
        lo = np.mean([mixture_bayes_error(SimSpec(scenario="mixture", n=400,
                                                  k=3, seed=s, overlap=0.05))
                      for s in range(20)])
        hi = np.mean([mixture_bayes_error(SimSpec(scenario="mixture", n=400,
                                                  k=3, seed=s, overlap=0.4))
                      for s in range(20)])
        assert hi > lo

    def test_sizes_and_labels(self):
        data = sim_mixture(SimSpec(scenario="mixture", n=250, k=4, seed=9,
                                   overlap=0.2))
        assert data.n == 250
        assert list(data.classes) == [1, 2, 3, 4]
        counts = [int((data.y == g).sum()) for g in (1, 2, 3, 4)]
        assert counts == [63, 63, 62, 62]

    def test_max_overlap_is_inert_but_warned(self):
        spec = SimSpec(scenario="mixture", n=100, k=2, seed=1, overlap=0.1,
                       max_overlap=0.5)
        with pytest.warns(UserWarning, match="max_overlap"):
            a = sim_mixture(spec)
        with pytest.warns(UserWarning):
            b = sim_mixture(spec)
        assert np.array_equal(a.X, b.X)


class TestCsvRoundTrip:
    def test_exact_floats_survive(self, tmp_path):
        data = simulate(SimSpec(scenario="mixture", n=120, k=3, seed=14,
                                overlap=0.3))
        path = tmp_path / "sim.csv"
        save_csv(data, str(path))
        back = load_csv(str(path))
        assert np.array_equal(back.X, data.X)
        assert np.array_equal(back.y, data.y)


class TestDispatcher:
    def test_routes_by_scenario(self):
        spec = SimSpec(scenario="basic", n=90, k=2, seed=4)
        assert np.array_equal(simulate(spec).X, sim_basic(spec).X)

    def test_fit_config_seed_not_required(self):
        # simulators take their seed from the SimSpec, not from FitConfig
        data = simulate(SimSpec(scenario="basic", n=100, k=2, seed=1))
        fit(data, FitConfig(seed=99), variant="mod2")
