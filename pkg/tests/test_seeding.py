import numpy as np
import pytest
from scipy import stats

from gkmpp import (Dataset, DegenerateDistribution, LloydConfig,
                   d2_probabilities, gen_gaussian_blobs, kmeanspp_seed,
                   make_rng, run_lloyd, sample_index, substream, uniform_seed)

TWO_BLOBS = Dataset([[0.0], [0.1], [100.0], [100.1]])


class TestD2Probabilities:
    def test_single_positive_mass(self):
        assert d2_probabilities([0.0, 0.0, 4.0]).tolist() == [0.0, 0.0, 1.0]

    def test_proportional(self):
        assert d2_probabilities([1.0, 1.0, 2.0]).tolist() == [0.25, 0.25, 0.5]

    def test_all_zero_degenerate(self):
        with pytest.raises(DegenerateDistribution):
            d2_probabilities([0.0, 0.0, 0.0])

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            d2_probabilities([1.0, -0.5])

    def test_sums_to_one_and_proportionality(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            d = rng.uniform(0, 10, size=rng.integers(1, 40)) * rng.integers(0, 2, size=1)
            d = np.abs(d) + rng.uniform(0, 1e-3)  # keep at least some mass
            p = d2_probabilities(d)
            assert abs(p.sum() - 1.0) <= 1e-12
            np.testing.assert_allclose(p * d.sum(), d, rtol=1e-12)


class TestSampleIndex:
    def test_point_mass(self):
        rng = make_rng(0)
        assert all(sample_index([0.0, 0.0, 1.0], rng) == 2 for _ in range(100))

    def test_never_returns_zero_mass(self):
        rng = make_rng(1)
        p = [0.0, 0.5, 0.0, 0.5, 0.0]
        draws = {sample_index(p, rng) for _ in range(2000)}
        assert draws == {1, 3}

    def test_fair_coin_frequency(self):
        rng = make_rng(42)
        draws = np.array([sample_index([0.5, 0.5], rng) for _ in range(100_000)])
        freq0 = np.mean(draws == 0)
        assert 0.49 <= freq0 <= 0.51  # 3 sigma of Binomial(1e5, .5) is ~0.0047

    def test_chisquare_goodness_of_fit(self):
        p = np.array([0.25, 0.25, 0.5])
        rng = make_rng(12345)
        draws = np.array([sample_index(p, rng) for _ in range(100_000)])
        counts = np.bincount(draws, minlength=3)
        res = stats.chisquare(counts, f_exp=p * draws.size)
        assert res.pvalue > 0.01


class TestRngPlumbing:
    def test_same_seed_same_stream(self):
        a, b = make_rng(99), make_rng(99)
        assert a.random(8).tolist() == b.random(8).tolist()

    def test_substreams_differ_and_reproduce(self):
        assert substream(1, 2, 3).random() == substream(1, 2, 3).random()
        assert substream(1, 2, 3).random() != substream(1, 2, 4).random()

    def test_generator_passthrough(self):
        g = make_rng(7)
        assert make_rng(g) is g


class TestKmeansppSeed:
    def test_k1_is_a_datapoint(self):
        ds = Dataset([[1.0], [5.0], [9.0]])
        c = kmeanspp_seed(ds, 1, make_rng(0))
        assert c.centers.ravel()[0] in {1.0, 5.0, 9.0}

    def test_k_equals_n_is_permutation(self):
        ds = Dataset([[1.0], [5.0], [9.0], [13.0]])
        c = kmeanspp_seed(ds, 4, make_rng(3))
        assert sorted(c.centers.ravel().tolist()) == [1.0, 5.0, 9.0, 13.0]

    def test_never_selects_a_point_twice(self):
        rng = np.random.default_rng(8)
        pts = rng.normal(size=(30, 2))
        ds = Dataset(pts)
        for seed in range(40):
            c = kmeanspp_seed(ds, 12, make_rng(seed))
            rows = {tuple(r) for r in c.centers}
            assert len(rows) == 12

    def test_second_center_lands_in_opposite_blob(self):
        # exact per-first-center probability exceeds 0.9999 on this instance
        hits = 0
        trials = 3000
        for seed in range(trials):
            c = kmeanspp_seed(TWO_BLOBS, 2, make_rng(seed)).centers.ravel()
            hits += (c[0] < 50) != (c[1] < 50)
        assert hits / trials >= 0.999

    def test_duplicate_points_fall_back_to_uniform(self):
        ds = Dataset([[1.0], [1.0], [1.0]])
        c = kmeanspp_seed(ds, 3, make_rng(0))
        assert c.centers.ravel().tolist() == [1.0, 1.0, 1.0]

    def test_k_out_of_range(self):
        with pytest.raises(ValueError):
            kmeanspp_seed(TWO_BLOBS, 5, make_rng(0))


class TestUniformSeed:
    def test_k_equals_n_is_permutation(self):
        ds = Dataset([[1.0], [2.0], [3.0]])
        c = uniform_seed(ds, 3, make_rng(1))
        assert sorted(c.centers.ravel().tolist()) == [1.0, 2.0, 3.0]

    def test_single_point(self):
        ds = Dataset([[7.0]])
        assert uniform_seed(ds, 1, make_rng(0)).centers.tolist() == [[7.0]]

    def test_deterministic_under_seed(self):
        ds = Dataset(np.random.default_rng(2).normal(size=(50, 3)))
        a = uniform_seed(ds, 10, make_rng(123))
        b = uniform_seed(ds, 10, make_rng(123))
        assert np.array_equal(a.centers, b.centers)

    def test_k_out_of_range(self):
        with pytest.raises(ValueError):
            uniform_seed(Dataset([[1.0]]), 2, make_rng(0))


def test_kmeanspp_beats_uniform_on_average():
    # baseline sanity, not a hard gate: 200 seeded cold starts on 15 blobs
    ds, _ = gen_gaussian_blobs(15, 40, d=2, spread=0.4, box=(0.0, 10.0), seed=77)
    cfg = LloydConfig()
    kpp, uni = [], []
    for seed in range(200):
        kpp.append(run_lloyd(ds, kmeanspp_seed(ds, 15, substream(seed, 0)), cfg).error)
        uni.append(run_lloyd(ds, uniform_seed(ds, 15, substream(seed, 1)), cfg).error)
    assert np.mean(kpp) <= np.mean(uni)
