import pytest

from gkmpp import aggregate_iterations, error_difference, percentage_error


class TestPercentageError:
    def test_identity_is_zero(self):
        assert percentage_error(3.7, 3.7) == 0.0

    def test_ten_percent(self):
        assert percentage_error(1.1, 1.0) == pytest.approx(10.0)

    def test_negative_allowed_when_beating_baseline(self):
        assert percentage_error(0.9, 1.0) == pytest.approx(-10.0)

    def test_nonpositive_baseline_rejected(self):
        with pytest.raises(ValueError):
            percentage_error(1.0, 0.0)
        with pytest.raises(ValueError):
            percentage_error(1.0, -2.0)

    def test_antisymmetric_sign(self):
        assert percentage_error(1.2, 1.0) > 0 > percentage_error(0.8, 1.0)


class TestErrorDifference:
    def test_best_is_zero(self):
        assert error_difference(4.5, 4.5) == 0.0

    def test_simple_gap(self):
        assert error_difference(5.0, 4.5) == pytest.approx(0.5)

    def test_all_equal_all_zero(self):
        assert [error_difference(2.0, 2.0) for _ in range(3)] == [0.0, 0.0, 0.0]

    def test_translation_covariant(self):
        for c in (-3.0, 0.0, 11.5):
            assert error_difference(5.0 + c, 4.5 + c) == pytest.approx(0.5)

    def test_below_best_rejected(self):
        with pytest.raises(ValueError):
            error_difference(4.0, 4.5)


class TestAggregateIterations:
    def test_single_execution(self):
        assert aggregate_iterations([{2: (7,)}]) == {2: 7.0}

    def test_mean_of_two_executions(self):
        assert aggregate_iterations([{3: (4, 6)}]) == {3: 5.0}

    def test_denominator_is_execution_count(self):
        # one k with L=4 candidate executions: mean over 4, not over 1
        assert aggregate_iterations([{5: (2, 4, 6, 8)}]) == {5: 5.0}

    def test_pools_across_runs(self):
        got = aggregate_iterations([{2: (4,)}, {2: (6,), 3: (10,)}])
        assert got == {2: 5.0, 3: 10.0}

    def test_empty_counts_are_omitted(self):
        assert aggregate_iterations([{1: (), 2: (3,)}]) == {2: 3.0}

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            aggregate_iterations([])

    def test_works_on_incremental_run_logs(self):
        from gkmpp import gen_gaussian_blobs, global_kmeanspp
        ds, _ = gen_gaussian_blobs(3, 10, d=2, spread=0.5, seed=61)
        run = global_kmeanspp(ds, 4, L=5, rng=2)
        means = aggregate_iterations([run.iteration_log()])
        assert set(means) == {2, 3, 4}
        for k in (2, 3, 4):
            assert means[k] == sum(run.lloyd_iterations[k - 1]) / 5
