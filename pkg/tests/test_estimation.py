import math

import numpy as np
import pytest

from maxcover import estimation
from maxcover.backends import SortedArraySet
from maxcover.oracle import CostCounters, make_handle


class TestMu:
    def test_frozen_values(self):
        assert estimation.mu(0.0) == 1.0
        assert estimation.mu(1.0) == pytest.approx(0.6065306597126334)
        assert estimation.mu(3.0) == pytest.approx(math.exp(-4.5))

    def test_monotone_decreasing(self):
        xs = np.linspace(0.0, 5.0, 50)
        values = [estimation.mu(x) for x in xs]
        assert all(a > b for a, b in zip(values, values[1:]))


class TestSampleCount:
    def test_frozen_value(self):
        # least w with exp(-w * 0.01 / 2) <= 0.0625
        assert estimation.sample_count(0.3, 0.25) == 555

    def test_minimality_on_random_parameters(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            eps = float(rng.uniform(0.05, 0.95))
            gamma = float(rng.uniform(0.01, 0.95))
            w = estimation.sample_count(eps, gamma)
            log_mu = -((eps / 3.0) ** 2) / 2.0
            assert w * log_mu <= math.log(gamma / 4.0)
            if w > 1:
                assert (w - 1) * log_mu > math.log(gamma / 4.0)

    @pytest.mark.parametrize("eps,gamma", [(0.0, 0.5), (1.0, 0.5),
                                           (0.5, 0.0), (0.5, 1.0)])
    def test_parameter_validation(self, eps, gamma):
        with pytest.raises(ValueError):
            estimation.sample_count(eps, gamma)

    def test_budget_dataclass(self):
        budget = estimation.SampleBudget.derive(0.3, 0.25)
        assert budget.w == 555


class TestSubsetCounts:
    def test_frozen_value(self):
        # subsets of {1..4} of size <= 2: 1 + 4 + 6
        assert estimation.subset_count_h_star(2, 4) == (11, False)

    def test_saturation(self):
        value, saturated = estimation.subset_count_h_star(40, 400)
        assert saturated and value == estimation.H_STAR_CAP

    def test_log_matches_exact_count(self):
        assert estimation.log_subset_count(2, 4) == pytest.approx(math.log(11))
        assert estimation.log_subset_count(40, 400) == pytest.approx(
            math.log(sum(math.comb(400, i) for i in range(41))))

    def test_shared_budget_frozen_value(self):
        assert estimation.shared_sample_budget_g(0.5, 0.25, 2, 4) == 473

    def test_shared_budget_matches_direct_when_unsaturated(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            n = int(rng.integers(1, 25))
            k = int(rng.integers(1, n + 1))
            eps = float(rng.uniform(0.1, 0.9))
            gamma = float(rng.uniform(0.05, 0.9))
            h, saturated = estimation.subset_count_h_star(k, n)
            assert not saturated
            assert estimation.shared_sample_budget_g(eps, gamma, k, n) \
                == estimation.sample_count(eps, gamma / (n * h))


def _handles(*member_lists):
    counters = CostCounters()
    return [make_handle(SortedArraySet(members), set_id=i, counters=counters)
            for i, members in enumerate(member_lists)], counters


class TestRandomTest:
    def test_full_and_empty_extremes(self):
        rng = np.random.default_rng(0)
        (b,), _ = _handles(range(10))
        assert estimation.random_test([], b, 50, rng) == 50
        (cover, b), _ = _handles(range(10), range(10))
        assert estimation.random_test([cover], b, 50, rng) == 0

    def test_short_circuit_query_accounting(self):
        rng = np.random.default_rng(1)
        (cover, unused, b), counters = _handles(range(10), range(10), range(10))
        before = counters.snapshot()
        t = estimation.random_test([cover, unused], b, 40, rng)
        delta = counters.snapshot() - before
        assert t == 0
        # every sample is settled by the first set; the second is never asked
        assert delta.membership_queries == 40
        assert delta.random_draws == 40

    def test_unbiased_on_half_overlap(self):
        rng = np.random.default_rng(2)
        (a, b), _ = _handles(range(50), range(100))
        rates = [estimation.random_test([a], b, 400, rng) / 400
                 for _ in range(100)]
        assert np.mean(rates) == pytest.approx(0.5, abs=0.02)

    def test_rejects_nonpositive_w(self):
        (b,), _ = _handles(range(3))
        with pytest.raises(ValueError):
            estimation.random_test([], b, 0, np.random.default_rng(0))


class TestApproximateDifference:
    def test_scales_by_reported_size(self):
        rng = np.random.default_rng(3)
        (a, b), _ = _handles(range(60), range(100))
        est = estimation.approximate_difference([a], b, b.reported_size,
                                                0.2, 0.2, rng)
        assert est.w == estimation.sample_count(0.2, 0.2)
        assert est.s == est.t / est.w * 100.0
        assert abs(est.s - 40.0) < 0.2 * 100.0
