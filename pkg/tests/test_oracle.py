import numpy as np
import pytest

from maxcover.backends import SortedArraySet
from maxcover.oracle import (
    BiasProfile,
    CostCounters,
    CounterSnapshot,
    CoverageInstance,
    EmptySetError,
    check_size_envelope,
    make_handle,
)


class TestBiasProfile:
    def test_zero_profile_beta_is_one(self):
        assert BiasProfile().beta() == 1.0
        assert BiasProfile().is_zero()

    def test_beta_value(self):
        profile = BiasProfile(0.5, 0.5, 0.5, 0.5)
        assert profile.beta() == pytest.approx((0.5 * 0.5) / (1.5 * 1.5))

    @pytest.mark.parametrize("field", ["alpha_l", "alpha_r", "delta_l", "delta_r"])
    @pytest.mark.parametrize("bad", [-0.1, 1.0, 1.5])
    def test_rejects_out_of_range(self, field, bad):
        with pytest.raises(ValueError):
            BiasProfile(**{field: bad})

    def test_as_tuple_roundtrip(self):
        profile = BiasProfile(0.1, 0.2, 0.3, 0.4)
        assert BiasProfile(*profile.as_tuple()) == profile


class TestCounters:
    def test_draws_and_queries_also_count_steps(self):
        c = CostCounters()
        c.add_draws(5)
        c.add_queries(3)
        c.add_steps(2)
        snap = c.snapshot()
        assert snap == CounterSnapshot(steps=10, random_draws=5,
                                       membership_queries=3)

    def test_snapshot_difference(self):
        a = CounterSnapshot(10, 4, 3)
        b = CounterSnapshot(7, 1, 3)
        assert a - b == CounterSnapshot(3, 3, 0)


class TestSetHandle:
    def test_accesses_are_charged(self):
        handle = make_handle(SortedArraySet([1, 2, 3]))
        rng = np.random.default_rng(0)
        handle.draw_many(10, rng)
        handle.contains_many(np.arange(4, dtype=np.uint64))
        assert handle.member(2)
        snap = handle.counters.snapshot()
        assert snap.random_draws == 10
        assert snap.membership_queries == 5
        assert snap.steps == 15

    def test_draws_come_from_the_set(self):
        handle = make_handle(SortedArraySet([7, 11, 13]))
        draws = handle.draw_many(200, np.random.default_rng(1))
        assert set(int(x) for x in draws) <= {7, 11, 13}

    def test_empty_set_draw_raises(self):
        handle = make_handle(SortedArraySet([]))
        with pytest.raises(EmptySetError):
            handle.random_element(np.random.default_rng(0))

    def test_exact_reported_size_for_zero_bias(self):
        handle = make_handle(SortedArraySet(range(17)))
        assert handle.reported_size == 17.0
        assert handle.exact_size() == 17

    def test_biased_reported_size_stays_in_envelope(self):
        bias = BiasProfile(delta_l=0.3, delta_r=0.5)
        rng = np.random.default_rng(2)
        for _ in range(50):
            handle = make_handle(SortedArraySet(range(100)), bias=bias, rng=rng)
            assert check_size_envelope(handle, bias)
            assert 70.0 <= handle.reported_size <= 150.0

    def test_biased_size_requires_rng(self):
        with pytest.raises(ValueError):
            make_handle(SortedArraySet([1]), bias=BiasProfile(delta_l=0.5))


class TestCoverageInstance:
    def test_from_backends_shares_counters(self):
        inst = CoverageInstance.from_backends(
            [SortedArraySet([1]), SortedArraySet([2])], k=1)
        rng = np.random.default_rng(0)
        inst.handles[0].draw_many(3, rng)
        inst.handles[1].draw_many(4, rng)
        assert inst.counters.snapshot().random_draws == 7

    def test_k_bounds(self):
        backends = [SortedArraySet([1]), SortedArraySet([2])]
        for bad_k in (0, 3):
            with pytest.raises(ValueError):
                CoverageInstance.from_backends(backends, k=bad_k)

    def test_empty_sets_rejected_unless_allowed(self):
        backends = [SortedArraySet([1]), SortedArraySet([])]
        with pytest.raises(ValueError):
            CoverageInstance.from_backends(backends, k=1)
        inst = CoverageInstance.from_backends(backends, k=1, allow_empty=True)
        assert inst.n == 2

    def test_materialize(self):
        inst = CoverageInstance.from_backends(
            [SortedArraySet([3, 1]), SortedArraySet([2])], k=1)
        assert inst.materialize() == [frozenset({1, 3}), frozenset({2})]
