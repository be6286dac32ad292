"""Exact-oracle algorithms the meta-algorithm wraps: cardinality/matroid
greedy, double greedy, measured continuous greedy with pipage rounding,
and the random-subset baseline."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .matroids import (Matroid, _indep_mask, free_elements, group_capacities,
                       rank)
from .oracles import ValueOracle
from .sets import ElementSet, GroundSet, random_k_subset_mask
from .setfn import (MULTILINEAR_BUDGET, multilinear_partial_sampled,
                    _check_point)

POLYTOPE_TOL = 1e-9
RATIO_UNDERFLOW = 1e-12


@dataclass(frozen=True)
class Greedy:
    pass


@dataclass(frozen=True)
class DoubleGreedy:
    shuffle_order: bool = False  # optional shuffled element order for variance studies


@dataclass(frozen=True)
class MeasuredContinuousGreedy:
    step: float = 0.01
    partial_samples: int = 32
    exact_extension: bool = False

    def __post_init__(self):
        inv = 1.0 / self.step
        if not 0 < self.step < 1 or abs(inv - round(inv)) > 1e-9:
            raise ValueError(f"step must be in (0,1) with integer 1/step, got {self.step}")
        if self.partial_samples < 1:
            raise ValueError("partial_samples must be >= 1")


@dataclass(frozen=True)
class RandomSubset:
    size: int


SolverConfig = Union[Greedy, DoubleGreedy, MeasuredContinuousGreedy, RandomSubset]


def greedy_cardinality(oracle: ValueOracle, m: Matroid,
                       rng: np.random.Generator | None = None) -> ElementSet:
    """Greedy: add the best feasible positive marginal each round, ties by id."""
    mask = 0
    current = oracle.value_mask(0)
    candidates = free_elements(m)
    for _ in range(rank(m)):
        best_gain, best_elem, best_val = 0.0, None, None
        for i in candidates:
            bit = 1 << i
            if mask & bit or not _indep_mask(m, mask | bit):
                continue
            val = oracle.value_mask(mask | bit)
            gain = val - current
            if gain > best_gain:
                best_gain, best_elem, best_val = gain, i, val
        if best_elem is None:
            break
        mask |= 1 << best_elem
        current = best_val
    return ElementSet(oracle.ground, mask)


def double_greedy(oracle: ValueOracle, ground: GroundSet,
                  rng: np.random.Generator,
                  universe: ElementSet | None = None,
                  matroid: Matroid | None = None,
                  shuffle_order: bool = False) -> ElementSet:
    """Double greedy: one pass over the elements keeping X ⊆ Y, deciding
    each by the randomized comparison of add/remove marginals.

    Elements outside `universe` are never touched.  If a matroid is given,
    an element whose addition would break independence of X is forced out;
    this keeps X independent throughout and reduces to the unconstrained
    algorithm when the matroid is free.
    """
    elements = list(universe) if universe is not None else list(range(ground.n))
    if shuffle_order:
        elements = [elements[int(i)] for i in rng.permutation(len(elements))]
    x_mask = 0
    y_mask = 0
    for i in elements:
        y_mask |= 1 << i
    value = oracle.value_mask
    fx = value(x_mask)
    fy = value(y_mask)
    for u in elements:
        bit = 1 << u
        if matroid is not None and not _indep_mask(matroid, x_mask | bit):
            # cannot add without breaking feasibility: forced removal
            y_mask &= ~bit
            fy = value(y_mask)
            continue
        fx_add = value(x_mask | bit)
        fy_del = value(y_mask & ~bit)
        a_hat = max(fx_add - fx, 0.0)
        b_hat = max(fy_del - fy, 0.0)
        total = a_hat + b_hat
        # both estimates nonpositive (or an underflowing sum) supports
        # neither direction; the symmetric split is the limit of the ratio
        # as both tend to 0+ at equal rates
        p = 0.5 if total < RATIO_UNDERFLOW else a_hat / total
        if p > 0.0 and (p >= 1.0 or rng.random() < p):
            x_mask |= bit
            fx = fx_add
        else:
            y_mask &= ~bit
            fy = fy_del
    assert x_mask == y_mask
    return ElementSet(ground, x_mask)


def _oracle_table(oracle: ValueOracle) -> np.ndarray:
    n = oracle.ground.n
    if n > MULTILINEAR_BUDGET:
        raise ValueError(f"exact extension needs n <= {MULTILINEAR_BUDGET}, got {n}")
    return np.array([oracle.value_mask(mask) for mask in range(1 << n)])


def _exact_partials(table: np.ndarray, x: np.ndarray) -> np.ndarray:
    """All partial derivatives of the multilinear extension of a tabulated
    function, at point x."""
    n = len(x)
    probs = np.ones(1)
    for xi in x:
        probs = np.concatenate([probs * (1.0 - xi), probs * xi])
    masks = np.arange(1 << n, dtype=np.int64)
    out = np.empty(n)
    for i in range(n):
        bit = 1 << i
        out[i] = probs @ (table[masks | bit] - table[masks & ~bit])
    return out


def measured_continuous_greedy(oracle: ValueOracle, m: Matroid,
                               cfg: MeasuredContinuousGreedy,
                               rng: np.random.Generator) -> np.ndarray:
    """Continuous-time greedy with the measured update
    x <- x + step * (1 - x) * direction, keeping x in the matroid polytope.

    Direction weights are expected marginals E[f(R + i) - f(R)] for R ~ x,
    which equal (1 - x_i) times the multilinear partial: computed exactly
    when cfg.exact_extension, else sampled with fresh draws per coordinate.
    """
    from .matroids import max_weight_independent_set

    n = oracle.ground.n
    steps = round(1.0 / cfg.step)
    x = np.zeros(n)
    free = free_elements(m)
    free_set = set(free)
    table = _oracle_table(oracle) if cfg.exact_extension else None
    for _ in range(steps):
        if cfg.exact_extension:
            weights = _exact_partials(table, x) * (1.0 - x)
        else:
            weights = np.zeros(n)
            for i in free:
                weights[i] = _sampled_marginal_weight(oracle, x, i, cfg.partial_samples, rng)
        for i in range(n):
            if i not in free_set:
                weights[i] = -np.inf
        direction = max_weight_independent_set(m, np.where(np.isfinite(weights), weights, 0.0))
        ind = direction.indicator()
        x = x + cfg.step * (1.0 - x) * ind
    return x


def _sampled_marginal_weight(oracle: ValueOracle, x: np.ndarray, i: int,
                             samples: int, rng: np.random.Generator) -> float:
    """Average of sampled marginals f(R + i) - f(R) for R ~ x."""
    n = len(x)
    bit = 1 << i
    value = oracle.value_mask
    total = 0.0
    for _ in range(samples):
        draw = rng.random(n) < x
        mask = 0
        for j in np.flatnonzero(draw):
            mask |= 1 << int(j)
        total += value(mask | bit) - value(mask)
    return total / samples


def pipage_round(m: Matroid, x: np.ndarray, rng: np.random.Generator,
                 oracle: ValueOracle | None = None) -> ElementSet:
    """Oblivious swap rounding of a matroid polytope point to an independent
    set, preserving coordinate marginals in expectation.

    Fractional coordinates are paired within each capacity group and mass
    is transferred randomly until at most one fractional coordinate per
    group remains; leftovers round independently.  The `oracle` parameter
    exists only so tests can assert the expected-value guarantee.
    """
    n = m.ground.n
    x = _check_point(np.asarray(x, dtype=np.float64), n)
    groups = group_capacities(m)
    covered = 0
    for gmask, cap in groups:
        covered |= gmask
        gsum = sum(x[i] for i in range(n) if (gmask >> i) & 1)
        if gsum > cap + POLYTOPE_TOL:
            raise ValueError(f"point outside the matroid polytope: group sum {gsum} > {cap}")
    for i in range(n):
        if not (covered >> i) & 1 and x[i] > POLYTOPE_TOL:
            raise ValueError(f"coordinate {i} outside every capacity group must be 0")

    x = x.copy()
    out_mask = 0
    for gmask, cap in groups:
        idx = [i for i in range(n) if (gmask >> i) & 1]
        frac = [i for i in idx if POLYTOPE_TOL < x[i] < 1.0 - POLYTOPE_TOL]
        while len(frac) >= 2:
            i, j = frac[0], frac[1]
            up_i = min(1.0 - x[i], x[j])
            up_j = min(x[i], 1.0 - x[j])
            if rng.random() < up_j / (up_i + up_j):
                x[i] += up_i
                x[j] -= up_i
            else:
                x[i] -= up_j
                x[j] += up_j
            frac = [k for k in frac if POLYTOPE_TOL < x[k] < 1.0 - POLYTOPE_TOL]
        if frac:
            k = frac[0]
            x[k] = 1.0 if rng.random() < x[k] else 0.0
        for i in idx:
            if x[i] > 0.5:
                out_mask |= 1 << i
    result = ElementSet(m.ground, out_mask)
    assert _indep_mask(m, out_mask)
    return result


def random_subset(ground: GroundSet, k: int, rng: np.random.Generator) -> ElementSet:
    """Uniformly random k-subset of the ground set."""
    if not 0 <= k <= ground.n:
        raise ValueError(f"k={k} outside [0, {ground.n}]")
    return ElementSet(ground, random_k_subset_mask(list(range(ground.n)), k, rng))


def run_solver(cfg: SolverConfig, oracle: ValueOracle, m: Matroid,
               rng: np.random.Generator) -> ElementSet:
    """Dispatch a solver config to a discrete solution."""
    if isinstance(cfg, Greedy):
        return greedy_cardinality(oracle, m, rng)
    if isinstance(cfg, DoubleGreedy):
        universe = ElementSet(oracle.ground, 0)
        for i in free_elements(m):
            universe = universe.add(i)
        effective = None if rank(m) >= len(universe) else m
        return double_greedy(oracle, oracle.ground, rng, universe=universe,
                             matroid=effective, shuffle_order=cfg.shuffle_order)
    if isinstance(cfg, MeasuredContinuousGreedy):
        x = measured_continuous_greedy(oracle, m, cfg, rng)
        return pipage_round(m, x, rng, oracle)
    if isinstance(cfg, RandomSubset):
        members = free_elements(m)
        mask = random_k_subset_mask(members, min(cfg.size, len(members)), rng)
        return ElementSet(oracle.ground, mask)
    raise TypeError(f"unknown solver config: {type(cfg)!r}")
