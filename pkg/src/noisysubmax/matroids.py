"""Independence-oracle matroids: uniform, partition, and contraction.

Everything the meta-algorithm needs from the constraint: independence
queries, rank, an arbitrary basis, contraction by a pinned set, and the
classic greedy for max-weight independent sets.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .sets import ElementSet, GroundSet, mask_members, popcount_array


@dataclass(frozen=True)
class UniformMatroid:
    """Independent iff |S| <= rank."""

    ground: GroundSet
    r: int

    def __post_init__(self):
        if not 0 <= self.r <= self.ground.n:
            raise ValueError(f"rank {self.r} outside [0, {self.ground.n}]")


@dataclass(frozen=True)
class PartitionMatroid:
    """Independent iff |S ∩ part_p| <= cap_p for every part.

    Parts must partition the ground set.
    """

    ground: GroundSet
    parts: tuple[int, ...]  # bitmasks
    caps: tuple[int, ...]

    def __post_init__(self):
        if len(self.parts) != len(self.caps):
            raise ValueError("parts and caps length mismatch")
        union = 0
        for p in self.parts:
            if union & p:
                raise ValueError("parts overlap")
            union |= p
        if union != self.ground.full_mask:
            raise ValueError("parts do not cover the ground set")
        for p, c in zip(self.parts, self.caps):
            if not 0 <= c <= p.bit_count():
                raise ValueError(f"cap {c} invalid for part of size {p.bit_count()}")


@dataclass(frozen=True)
class ContractedMatroid:
    """Contraction by a pinned independent set H:
    S independent iff S ∩ H = ∅ and S ∪ H independent in the base."""

    base: "Matroid"
    pinned: ElementSet

    def __post_init__(self):
        if not _indep_mask(self.base, self.pinned.mask):
            raise ValueError("pinned set must be independent in the base matroid")

    @property
    def ground(self) -> GroundSet:
        return self.base.ground


Matroid = Union[UniformMatroid, PartitionMatroid, ContractedMatroid]


def _indep_mask(m: Matroid, mask: int) -> bool:
    if isinstance(m, UniformMatroid):
        return mask.bit_count() <= m.r
    if isinstance(m, PartitionMatroid):
        return all((mask & p).bit_count() <= c for p, c in zip(m.parts, m.caps))
    if isinstance(m, ContractedMatroid):
        h = m.pinned.mask
        return mask & h == 0 and _indep_mask(m.base, mask | h)
    raise TypeError(f"unknown matroid: {type(m)!r}")


def is_independent(m: Matroid, s: ElementSet) -> bool:
    if s.ground.n != m.ground.n:
        raise ValueError("set and matroid over different ground sets")
    return _indep_mask(m, s.mask)


def independent_mask_array(m: Matroid, masks: np.ndarray) -> np.ndarray:
    """Vectorized independence over an array of masks (n <= 63)."""
    masks = masks.astype(np.uint64)
    if isinstance(m, UniformMatroid):
        return popcount_array(masks) <= m.r
    if isinstance(m, PartitionMatroid):
        ok = np.ones(masks.shape, dtype=bool)
        for p, c in zip(m.parts, m.caps):
            ok &= popcount_array(masks & np.uint64(p)) <= c
        return ok
    if isinstance(m, ContractedMatroid):
        h = np.uint64(m.pinned.mask)
        return ((masks & h) == 0) & independent_mask_array(m.base, masks | h)
    raise TypeError(f"unknown matroid: {type(m)!r}")


def rank(m: Matroid) -> int:
    """Common size of all maximal independent sets."""
    if isinstance(m, UniformMatroid):
        return m.r
    if isinstance(m, PartitionMatroid):
        return sum(m.caps)
    if isinstance(m, ContractedMatroid):
        return rank(m.base) - len(m.pinned)
    raise TypeError(f"unknown matroid: {type(m)!r}")


def arbitrary_basis(m: Matroid) -> ElementSet:
    """Deterministic basis: greedy by ascending element id."""
    mask = 0
    for i in range(m.ground.n):
        cand = mask | (1 << i)
        if _indep_mask(m, cand):
            mask = cand
    return ElementSet(m.ground, mask)


def max_weight_independent_set(m: Matroid, weights) -> ElementSet:
    """Matroid greedy: scan by descending weight (ties by id), add an
    element if it keeps independence and its weight is positive.

    Elements with weight <= 0 are never added; downward closure means
    dropping them cannot hurt the total.
    """
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != (m.ground.n,):
        raise ValueError(f"expected {m.ground.n} weights, got shape {weights.shape}")
    order = sorted(range(m.ground.n), key=lambda i: (-weights[i], i))
    mask = 0
    for i in order:
        if weights[i] <= 0:
            break
        cand = mask | (1 << i)
        if _indep_mask(m, cand):
            mask = cand
    return ElementSet(m.ground, mask)


def contract(m: Matroid, pinned: ElementSet) -> ContractedMatroid:
    return ContractedMatroid(m, pinned)


def group_capacities(m: Matroid) -> list[tuple[int, int]]:
    """Tight constraint families as (group mask, capacity) pairs, restricted
    to the free elements.  Used by polytope membership checks and rounding."""
    if isinstance(m, UniformMatroid):
        return [(m.ground.full_mask, m.r)]
    if isinstance(m, PartitionMatroid):
        return [(p, c) for p, c in zip(m.parts, m.caps)]
    if isinstance(m, ContractedMatroid):
        h = m.pinned.mask
        out = []
        for g, c in group_capacities(m.base):
            out.append((g & ~h, c - (g & h).bit_count()))
        return out
    raise TypeError(f"unknown matroid: {type(m)!r}")


def free_elements(m: Matroid) -> list[int]:
    """Elements that may appear in an independent set."""
    if isinstance(m, ContractedMatroid):
        return mask_members(m.ground.full_mask & ~m.pinned.mask)
    return list(range(m.ground.n))
