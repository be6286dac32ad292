import numpy as np
import pytest

from noisysubmax.matroids import PartitionMatroid, UniformMatroid
from noisysubmax.noise import BoundedUniform, NoiseSpec, PersistentNoisyOracle
from noisysubmax.oracles import ExactOracle, PerturbedOracle
from noisysubmax.random_instances import (random_coverage, random_cut,
                                          random_submodular)
from noisysubmax.sets import ElementSet, GroundSet
from noisysubmax.setfn import (Modular, brute_force_opt, evaluate,
                               multilinear_exact, multilinear_partial_exact)
from noisysubmax.solvers import (DoubleGreedy, Greedy, MeasuredContinuousGreedy,
                                 RandomSubset, _exact_partials, _oracle_table,
                                 double_greedy, greedy_cardinality,
                                 measured_continuous_greedy, pipage_round,
                                 random_subset, run_solver)


def test_greedy_modular_example():
    spec = Modular(weights=(3.0, 1.0, 2.0))
    m = UniformMatroid(GroundSet(3), 2)
    s = greedy_cardinality(ExactOracle(spec), m, np.random.default_rng(0))
    assert sorted(s) == [0, 2]


def test_greedy_coverage_guarantee():
    rng = np.random.default_rng(1)
    for _ in range(5):
        spec = random_coverage(10, rng)
        m = UniformMatroid(GroundSet(10), 3)
        s = greedy_cardinality(ExactOracle(spec), m, rng)
        _, opt = brute_force_opt(spec, m)
        assert evaluate(spec, s) >= (1 - 1 / np.e) * opt - 1e-9


def test_greedy_zero_noise_matches_exact():
    rng = np.random.default_rng(2)
    spec = random_coverage(9, rng)
    m = UniformMatroid(GroundSet(9), 4)
    noisy = PersistentNoisyOracle(spec, NoiseSpec(BoundedUniform(0.0)), 5)
    a = greedy_cardinality(ExactOracle(spec), m, np.random.default_rng(0))
    b = greedy_cardinality(noisy, m, np.random.default_rng(0))
    assert a.mask == b.mask


def test_double_greedy_modular_deterministic():
    spec = Modular(weights=(4.0, -2.0, 3.0))
    g = GroundSet(3)
    for seed in range(10):
        s = double_greedy(ExactOracle(spec), g, np.random.default_rng(seed))
        assert sorted(s) == [0, 2]


def test_double_greedy_half_guarantee():
    rng = np.random.default_rng(3)
    for _ in range(4):
        spec = random_submodular(10, rng)
        _, opt = brute_force_opt(spec)
        oracle = ExactOracle(spec)
        g = GroundSet(10)
        vals = np.array([
            evaluate(spec, double_greedy(oracle, g, rng)) for _ in range(400)
        ])
        se = vals.std(ddof=1) / np.sqrt(len(vals))
        assert vals.mean() >= 0.5 * opt - 3 * se


def test_double_greedy_matroid_aware_stays_independent():
    rng = np.random.default_rng(4)
    g = GroundSet(10)
    m = UniformMatroid(g, 4)
    for _ in range(30):
        spec = random_submodular(10, rng)
        universe = g.full_set()
        s = double_greedy(ExactOracle(spec), g, rng, universe=universe, matroid=m)
        assert len(s) <= 4


def test_double_greedy_respects_universe():
    rng = np.random.default_rng(5)
    spec = random_submodular(8, rng)
    g = GroundSet(8)
    universe = g.subset([1, 3, 5])
    for _ in range(20):
        s = double_greedy(ExactOracle(spec), g, rng, universe=universe)
        assert s.issubset(universe)


def test_double_greedy_shuffle_order_still_valid():
    rng = np.random.default_rng(6)
    spec = random_submodular(8, rng)
    _, opt = brute_force_opt(spec)
    g = GroundSet(8)
    vals = np.array([
        evaluate(spec, double_greedy(ExactOracle(spec), g, rng, shuffle_order=True))
        for _ in range(300)
    ])
    se = vals.std(ddof=1) / np.sqrt(len(vals))
    assert vals.mean() >= 0.5 * opt - 3 * se


def test_mcg_config_validation():
    with pytest.raises(ValueError):
        MeasuredContinuousGreedy(step=0.3)
    with pytest.raises(ValueError):
        MeasuredContinuousGreedy(step=0.01, partial_samples=0)
    MeasuredContinuousGreedy(step=0.05)


def test_mcg_modular_concentrates_on_top_r():
    # direction weights are (1 - x_i) w_i, so the top-r set stays selected
    # for the whole unit horizon iff min selected w > e * max unselected w
    w = (50.0, 1.0, 40.0, 0.5, 3.0)
    spec = Modular(weights=w)
    m = UniformMatroid(GroundSet(5), 2)
    cfg = MeasuredContinuousGreedy(step=0.01, exact_extension=True)
    x = measured_continuous_greedy(ExactOracle(spec), m, cfg, np.random.default_rng(0))
    target = 1.0 - (1.0 - 0.01) ** 100
    assert x[0] == pytest.approx(target, abs=1e-9)
    assert x[2] == pytest.approx(target, abs=1e-9)
    assert x[1] == x[3] == x[4] == 0.0


def test_mcg_monotone_coverage_guarantee():
    rng = np.random.default_rng(7)
    spec = random_coverage(9, rng)
    m = UniformMatroid(GroundSet(9), 3)
    cfg = MeasuredContinuousGreedy(step=1 / 200, exact_extension=True)
    x = measured_continuous_greedy(ExactOracle(spec), m, cfg, rng)
    _, opt = brute_force_opt(spec, m)
    assert multilinear_exact(spec, x) >= (1 - 1 / np.e - 0.03) * opt
    assert np.all(x >= 0) and np.all(x <= 1)
    assert x.sum() <= 3 + 1e-9


def test_mcg_sampled_mode_runs():
    rng = np.random.default_rng(8)
    spec = random_coverage(8, rng)
    m = UniformMatroid(GroundSet(8), 3)
    cfg = MeasuredContinuousGreedy(step=0.1, partial_samples=8)
    x = measured_continuous_greedy(ExactOracle(spec), m, cfg, rng)
    assert np.all(x >= 0) and np.all(x <= 1)
    assert x.sum() <= 3 + 1e-9


def test_second_partial_four_term_identity():
    rng = np.random.default_rng(9)
    spec = random_submodular(7, rng)
    x = rng.uniform(0.1, 0.9, size=7)
    i, j = 1, 4

    def at(xi, xj):
        y = x.copy()
        y[i], y[j] = xi, xj
        return multilinear_exact(spec, y)

    four_term = at(1, 1) - at(1, 0) - at(0, 1) + at(0, 0)
    eps = 1e-5
    yp = x.copy()
    yp[j] = min(x[j] + eps, 1.0)
    fd = (multilinear_partial_exact(spec, yp, i)
          - multilinear_partial_exact(spec, x, i)) / (yp[j] - x[j])
    assert fd == pytest.approx(four_term, abs=1e-4)


def test_perturbed_partials_within_2eps():
    rng = np.random.default_rng(10)
    spec = random_submodular(7, rng)
    exact = ExactOracle(spec)
    eps = 0.05
    perturbed = PerturbedOracle(exact, eps)
    x = rng.uniform(0.1, 0.9, size=7)
    pa = _exact_partials(_oracle_table(exact), x)
    pb = _exact_partials(_oracle_table(perturbed), x)
    assert np.max(np.abs(pa - pb)) <= 2 * eps + 1e-12


def test_pipage_integral_passthrough():
    g = GroundSet(6)
    m = UniformMatroid(g, 3)
    s = g.subset([0, 2, 5])
    out = pipage_round(m, s.indicator(), np.random.default_rng(0))
    assert out.mask == s.mask


def test_pipage_marginal_preservation_uniform():
    g = GroundSet(4)
    m = UniformMatroid(g, 2)
    x = np.full(4, 0.5)
    rng = np.random.default_rng(11)
    counts = np.zeros(4)
    runs = 10000
    for _ in range(runs):
        s = pipage_round(m, x, rng)
        assert len(s) == 2
        counts[list(s)] += 1
    freq = counts / runs
    sigma = np.sqrt(0.25 / runs)
    assert np.all(np.abs(freq - 0.5) < 4 * sigma)


def test_pipage_partition_matroid():
    g = GroundSet(6)
    m = PartitionMatroid(g, parts=(0b000111, 0b111000), caps=(1, 2))
    rng = np.random.default_rng(12)
    x = np.array([0.3, 0.3, 0.4, 0.6, 0.7, 0.7])
    counts = np.zeros(6)
    runs = 5000
    for _ in range(runs):
        s = pipage_round(m, x, rng)
        counts[list(s)] += 1
    freq = counts / runs
    assert np.all(np.abs(freq - x) < 4 * np.sqrt(0.25 / runs))


def test_pipage_polytope_violation_rejected():
    g = GroundSet(4)
    m = UniformMatroid(g, 2)
    with pytest.raises(ValueError):
        pipage_round(m, np.array([0.9, 0.9, 0.9, 0.9]), np.random.default_rng(0))


def test_pipage_expected_value_dominates_extension():
    rng = np.random.default_rng(13)
    spec = random_coverage(8, rng)
    g = GroundSet(8)
    m = UniformMatroid(g, 3)
    x = np.array([0.5, 0.5, 0.4, 0.3, 0.3, 0.4, 0.3, 0.3])
    vals = np.array([
        evaluate(spec, pipage_round(m, x, rng)) for _ in range(4000)
    ])
    se = vals.std(ddof=1) / np.sqrt(len(vals))
    assert vals.mean() >= multilinear_exact(spec, x) - 3 * se


def test_random_subset():
    g = GroundSet(6)
    rng = np.random.default_rng(14)
    assert len(random_subset(g, 0, rng)) == 0
    assert random_subset(g, 6, rng).mask == g.full_mask
    assert len(random_subset(g, 3, rng)) == 3
    with pytest.raises(ValueError):
        random_subset(g, 7, rng)


def test_run_solver_dispatch():
    rng = np.random.default_rng(15)
    spec = random_coverage(8, rng)
    g = GroundSet(8)
    m = UniformMatroid(g, 3)
    oracle = ExactOracle(spec)
    for cfg in (Greedy(), DoubleGreedy(),
                MeasuredContinuousGreedy(step=0.1, exact_extension=True),
                RandomSubset(size=3)):
        s = run_solver(cfg, oracle, m, rng)
        assert isinstance(s, ElementSet)
        if not isinstance(cfg, DoubleGreedy):
            assert len(s) <= 3
    with pytest.raises(TypeError):
        run_solver(object(), oracle, m, rng)


def test_run_solver_double_greedy_binding_matroid():
    rng = np.random.default_rng(16)
    spec = random_cut(9, rng)
    g = GroundSet(9)
    m = UniformMatroid(g, 4)
    for _ in range(20):
        s = run_solver(DoubleGreedy(), ExactOracle(spec), m, rng)
        assert len(s) <= 4
