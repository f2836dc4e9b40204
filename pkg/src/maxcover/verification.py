"""Statistical and exact verification suites.

Each suite runs a fixed, seeded experiment and reports pass/fail together
with the measured statistics; the CLI `verify` subcommand and the
acceptance tests both run these.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import chi2

from maxcover import baselines, estimation, generators, instancefile
from maxcover.backends import CountedBTree, SkewedBackend, SortedArraySet
from maxcover.greedy import STRATEGIES, approximate_maximum_cover
from maxcover.oracle import BiasProfile, CostCounters, CoverageInstance, make_handle

DEFAULT_SEED = 20260824


@dataclass
class SuiteReport:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def lines(self):
        status = "PASS" if self.passed else "FAIL"
        info = ", ".join(f"{k}={v}" for k, v in self.details.items())
        return [f"{status} {self.name}: {info}"]


def _child_seeds(seed: int, count: int) -> list[np.random.SeedSequence]:
    return np.random.SeedSequence(seed).spawn(count)


def binomial_slack(gamma: float, trials: int) -> float:
    return gamma + 3.0 * math.sqrt(gamma * (1.0 - gamma) / trials)


# ---------------------------------------------------------------------------
# approximation ratio and estimate sandwich (shared trial runs)
# ---------------------------------------------------------------------------

def ratio_and_sandwich_suite(trials: int = 200, seed: int = DEFAULT_SEED,
                             n: int = 15, m_max: int = 40, k: int = 3,
                             epsilon: float = 0.2, gamma: float = 0.1,
                             strategy: str = "single"):
    """Seeded random instances; checks coverage >= (1-1/e) C* and the
    (1 +- epsilon) sandwich of z around the achieved coverage."""
    ratio_floor = 1.0 - 1.0 / math.e
    ratio_failures = 0
    sandwich_failures = 0
    for child in _child_seeds(seed, trials):
        gen_seed, solve_seed = child.spawn(2)
        instfile = generators.generate_random(
            n=n, m_max=m_max, k=k, seed=int(gen_seed.generate_state(1)[0]))
        instance = instancefile.build_instance(instfile, "sorted")
        rng = np.random.default_rng(solve_seed)
        result = approximate_maximum_cover(instance, xi=epsilon, gamma=gamma,
                                           strategy=strategy, rng=rng)
        sets = instancefile.materialize(instfile)
        coverage = len(frozenset().union(*(sets[i] for i in result.indices)))
        cstar = baselines.brute_force_optimum(sets, k).coverage
        if coverage < ratio_floor * cstar:
            ratio_failures += 1
        if not ((1.0 - epsilon) * coverage <= result.z
                <= (1.0 + epsilon) * coverage):
            sandwich_failures += 1

    threshold = binomial_slack(gamma, trials)
    ratio = SuiteReport(
        "ratio", ratio_failures / trials <= threshold,
        {"failures": ratio_failures, "trials": trials,
         "threshold": round(threshold, 4)})
    sandwich = SuiteReport(
        "sandwich", sandwich_failures / trials <= threshold,
        {"failures": sandwich_failures, "trials": trials,
         "threshold": round(threshold, 4)})
    return ratio, sandwich


# ---------------------------------------------------------------------------
# set-difference estimator envelope
# ---------------------------------------------------------------------------

def diff_estimator_suite(trials: int = 500, seed: int = DEFAULT_SEED,
                         base_size: int = 400, gamma: float = 0.1):
    """Per-configuration failure rate of the difference-envelope guarantee,
    over difference ratios, accuracies, and zero/nonzero bias profiles."""
    ratios = (0.0, 0.1, 0.5, 1.0)
    epsilons = (0.1, 0.3)
    profiles = (BiasProfile(),
                BiasProfile(alpha_l=0.3, alpha_r=0.3, delta_l=0.2, delta_r=0.2))
    threshold = binomial_slack(gamma, trials)

    worst = 0.0
    all_ok = True
    configs = 0
    rng_root = _child_seeds(seed, len(ratios) * len(epsilons) * len(profiles))
    b_elements = np.arange(1, base_size + 1, dtype=np.uint64)

    for ratio in ratios:
        a_size = base_size - round(ratio * base_size)
        a_set = SortedArraySet(b_elements[:a_size]) if a_size else SortedArraySet([])
        true_diff = base_size - a_size
        for eps in epsilons:
            for profile in profiles:
                child = rng_root[configs]
                configs += 1
                rng = np.random.default_rng(child)
                base_backend = SortedArraySet(b_elements)
                if profile.alpha_l or profile.alpha_r:
                    b_backend = SkewedBackend(base_backend, profile.alpha_l,
                                              profile.alpha_r)
                else:
                    b_backend = base_backend
                failures = 0
                for _ in range(trials):
                    counters = CostCounters()
                    b_handle = make_handle(b_backend, bias=profile, rng=rng,
                                           set_id=1, counters=counters)
                    selected = []
                    if a_size:
                        selected = [make_handle(a_set, set_id=0, counters=counters)]
                    est = estimation.approximate_difference(
                        selected, b_handle, b_handle.reported_size, eps, gamma, rng)
                    lo = ((1.0 - profile.alpha_l) * (1.0 - profile.delta_l)
                          * true_diff - eps * base_size)
                    hi = ((1.0 + profile.alpha_r) * (1.0 + profile.delta_r)
                          * true_diff + eps * base_size)
                    if not lo <= est.s <= hi:
                        failures += 1
                rate = failures / trials
                worst = max(worst, rate)
                if rate > threshold:
                    all_ok = False

    return SuiteReport("diff-estimator", all_ok,
                       {"configs": configs, "worst_rate": round(worst, 4),
                        "threshold": round(threshold, 4)})


# ---------------------------------------------------------------------------
# exact counter formulas
# ---------------------------------------------------------------------------

def counters_suite(seed: int = DEFAULT_SEED, n: int = 6, k: int = 2,
                   xi: float = 0.4, gamma: float = 0.2):
    instfile = generators.generate_random(n=n, m_max=20, k=k, seed=seed)
    eps_prime = xi / (4 * k)
    details = {}
    ok = True

    instance = instancefile.build_instance(instfile, "sorted")
    result = approximate_maximum_cover(instance, xi=xi, gamma=gamma,
                                       strategy="single", seed=seed + 1)
    g = estimation.shared_sample_budget_g(eps_prime, gamma, k, n)
    single_ok = (result.counters.random_draws == n * g
                 and result.counters.membership_queries <= k * n * g)
    details["single_draws"] = result.counters.random_draws
    details["single_expected"] = n * g
    ok &= single_ok

    instance = instancefile.build_instance(instfile, "sorted")
    result = approximate_maximum_cover(instance, xi=xi, gamma=gamma,
                                       strategy="multi", seed=seed + 2)
    w = estimation.sample_count(eps_prime, gamma / (4 * k * n))
    multi_ok = (result.counters.random_draws == k * n * w
                and result.counters.membership_queries <= k * k * n * w)
    details["multi_draws"] = result.counters.random_draws
    details["multi_expected"] = k * n * w
    ok &= multi_ok

    return SuiteReport("counters", bool(ok), details)


# ---------------------------------------------------------------------------
# B-tree sampler uniformity
# ---------------------------------------------------------------------------

def uniformity_suite(seed: int = DEFAULT_SEED, members: int = 64,
                     draws: int = 64000):
    tree = CountedBTree(range(1, members + 1))
    rng = np.random.default_rng(seed)
    counts = np.zeros(members, dtype=np.int64)
    for _ in range(draws):
        counts[tree.random_element(rng) - 1] += 1
    expected = draws / members
    statistic = float(((counts - expected) ** 2 / expected).sum())
    cutoff = float(chi2.ppf(0.999, members - 1))

    probs = tree.leaf_probabilities()
    exact_uniform = (len(probs) == members
                     and all(p * members == 1 for p in probs.values()))

    passed = statistic < cutoff and exact_uniform
    return SuiteReport("uniformity", passed,
                       {"chi_square": round(statistic, 2),
                        "cutoff": round(cutoff, 2),
                        "exact_uniform": exact_uniform})


# ---------------------------------------------------------------------------
# equal-size padding reduction
# ---------------------------------------------------------------------------

def reduction_suite(instances: int = 100, seed: int = DEFAULT_SEED):
    failures = 0
    for child in _child_seeds(seed, instances):
        rng = np.random.default_rng(child)
        n = int(rng.integers(2, 9))
        universe = int(rng.integers(2, 9))
        sets = []
        for _ in range(n):
            size = int(rng.integers(1, universe + 1))
            sets.append(frozenset(int(x) + 1 for x in
                                  rng.choice(universe, size=size, replace=False)))
        original = baselines.brute_force_min_cover(sets)
        padded = baselines.equal_size_pad(sets, mode="set-cover")
        after = baselines.brute_force_min_cover(padded)
        if after != original + 1:
            failures += 1
    return SuiteReport("reduction", failures == 0,
                       {"failures": failures, "instances": instances})


# ---------------------------------------------------------------------------
# strategy equivalence
# ---------------------------------------------------------------------------

def strategy_equivalence_suite(instances: int = 50, seed: int = DEFAULT_SEED,
                               n: int = 6, m_max: int = 12, k: int = 2,
                               xi: float = 0.5, gamma: float = 0.2):
    from maxcover.backends import UnsortedArraySet

    mismatches = 0
    for child in _child_seeds(seed, instances):
        gen_seed, shuffle_seed, solve_seed = child.spawn(3)
        instfile = generators.generate_random(
            n=n, m_max=m_max, k=k, seed=int(gen_seed.generate_state(1)[0]))
        shuffler = np.random.default_rng(shuffle_seed)
        member_lists = [shuffler.permutation(np.asarray(spec.elements))
                        for spec in instfile.sets]
        results = []
        for strategy in ("single", "single-sort"):
            backends = [UnsortedArraySet(members) for members in member_lists]
            instance = CoverageInstance.from_backends(backends, instfile.k)
            rng = np.random.default_rng(solve_seed)
            results.append(approximate_maximum_cover(
                instance, xi=xi, gamma=gamma, strategy=strategy, rng=rng))
        a, b = results
        if a.indices != b.indices or a.z != b.z:
            mismatches += 1
    return SuiteReport("strategy-equivalence", mismatches == 0,
                       {"mismatches": mismatches, "instances": instances})


# ---------------------------------------------------------------------------
# adversarial twin construction
# ---------------------------------------------------------------------------

def twin_suite(trials: int = 10, seed: int = DEFAULT_SEED,
               n: int = 8, m: int = 12, d: int = 4, k: int = 4,
               epsilon: float = 0.2, gamma: float = 0.1):
    pair = generators.generate_twin(n=n, m=m, d=d, k=k, seed=seed)
    left_sets = instancefile.materialize(pair.left)
    right_sets = instancefile.materialize(pair.right)
    left_opt = baselines.brute_force_optimum(left_sets, k).coverage
    right_opt = baselines.brute_force_optimum(right_sets, k).coverage
    optima_ok = left_opt == m // d and right_opt == m

    failures = 0
    for child in _child_seeds(seed + 1, trials):
        instance = instancefile.build_instance(pair.right, "sorted")
        rng = np.random.default_rng(child)
        result = approximate_maximum_cover(instance, xi=epsilon, gamma=gamma,
                                           strategy="single", rng=rng)
        coverage = len(frozenset().union(
            *(right_sets[i] for i in result.indices)))
        if coverage != m:
            failures += 1
    threshold = binomial_slack(gamma, trials)
    passed = optima_ok and failures / trials <= threshold
    return SuiteReport("twin", passed,
                       {"left_opt": left_opt, "right_opt": right_opt,
                        "solver_failures": failures, "trials": trials})


# ---------------------------------------------------------------------------
# classical greedy floor
# ---------------------------------------------------------------------------

def greedy_floor_suite(instances: int = 100, seed: int = DEFAULT_SEED):
    failures = 0
    for child in _child_seeds(seed, instances):
        rng = np.random.default_rng(child)
        n = int(rng.integers(3, 11))
        k = int(rng.integers(1, min(4, n) + 1))
        m_max = int(rng.integers(2, 9))
        instfile = generators.generate_random(
            n=n, m_max=m_max, k=k, seed=int(rng.integers(2 ** 31)))
        sets = instancefile.materialize(instfile)
        greedy = baselines.exact_greedy(sets, k)
        cstar = baselines.brute_force_optimum(sets, k).coverage
        floor = (1.0 - (1.0 - 1.0 / k) ** k) * cstar
        if greedy.coverage + 1e-9 < floor:
            failures += 1
    return SuiteReport("greedy-floor", failures == 0,
                       {"failures": failures, "instances": instances})


# ---------------------------------------------------------------------------
# sample-size formulas
# ---------------------------------------------------------------------------

def sample_size_suite(samples: int = 1000, seed: int = DEFAULT_SEED):
    rng = np.random.default_rng(seed)
    minimality_failures = 0
    for _ in range(samples):
        eps = float(rng.uniform(0.02, 0.99))
        gamma = float(rng.uniform(0.001, 0.99))
        w = estimation.sample_count(eps, gamma)
        # independent log-space evaluation of mu(eps/3)^w <= gamma/4
        log_mu = math.log(estimation.mu(eps / 3.0))
        target = math.log(gamma / 4.0)
        if not w * log_mu <= target:
            minimality_failures += 1
        elif w > 1 and (w - 1) * log_mu <= target:
            minimality_failures += 1

    g_mismatches = 0
    for _ in range(200):
        eps = float(rng.uniform(0.05, 0.99))
        gamma = float(rng.uniform(0.01, 0.99))
        n = int(rng.integers(1, 31))
        k = int(rng.integers(1, n + 1))
        h, saturated = estimation.subset_count_h_star(k, n)
        assert not saturated
        direct = estimation.sample_count(eps, gamma / (n * h))
        log_space = estimation.shared_sample_budget_g(eps, gamma, k, n)
        if direct != log_space:
            g_mismatches += 1

    passed = minimality_failures == 0 and g_mismatches == 0
    return SuiteReport("sample-size", passed,
                       {"minimality_failures": minimality_failures,
                        "g_mismatches": g_mismatches, "samples": samples})


# ---------------------------------------------------------------------------
# counter invariance across set size
# ---------------------------------------------------------------------------

def scale_invariance_suite(sizes=(10 ** 3, 10 ** 4, 10 ** 5),
                           seed: int = DEFAULT_SEED, n: int = 6, k: int = 2,
                           xi: float = 0.5, gamma: float = 0.25):
    """Disjoint instances of growing member size: R and Q must not move."""
    rows = []
    for m in sizes:
        instfile = generators.generate_disjoint(n=n, m=m, k=k, seed=seed)
        instance = instancefile.build_instance(instfile, "sorted")
        result = approximate_maximum_cover(instance, xi=xi, gamma=gamma,
                                           strategy="single", seed=seed)
        rows.append((m, result.counters.random_draws,
                     result.counters.membership_queries))
    draws = {r[1] for r in rows}
    queries = {r[2] for r in rows}
    passed = len(draws) == 1 and len(queries) == 1
    return SuiteReport("scale-invariance", passed,
                       {"rows": rows})


SUITES = {
    "ratio": lambda **kw: ratio_and_sandwich_suite(**kw)[0],
    "sandwich": lambda **kw: ratio_and_sandwich_suite(**kw)[1],
    "diff": diff_estimator_suite,
    "counters": counters_suite,
    "uniformity": uniformity_suite,
    "reduction": reduction_suite,
    "equivalence": strategy_equivalence_suite,
    "twin": twin_suite,
    "greedy-floor": greedy_floor_suite,
    "sample-size": sample_size_suite,
    "scale": scale_invariance_suite,
}
