"""Sequences with distinct h-fold sums, h >= 3: tapered blocks, greedy
repeated-sum pruning, and a Monte-Carlo survey over random bases.

The window constant c = sqrt((h-1)^2 + 1) - (h-1) satisfies
-1 + 2c(h-1)/(1-c) - c = 0, which balances the two sides of the counting
argument; BhParams verifies the identity at working precision.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import mpmath

from ._precision import check_precision, default_precision
from .auditor import find_collisions
from .basis import Basis, build_basis
from .blocks import BlockParams, const_window, tapered_params
from .encoder import SidonElement
from .errors import ConsistencyError
from .generator import SequencePrefix, generate_blocks


@dataclass(frozen=True)
class BhParams:
    """Order h plus the tapered block law it induces."""

    h: int
    block: BlockParams

    @property
    def scale(self) -> int:
        return self.h * self.h


def bh_params(h: int, precision: int | None = None, log_base: float | None = None) -> BhParams:
    if h < 3:
        raise ValueError(f"this path is for h >= 3, got {h}")
    prec = check_precision(precision or default_precision())
    block = tapered_params(h, precision=prec, log_base=log_base)
    with mpmath.workprec(prec):
        c = block.c.eval(prec)
        residue = -1 + 2 * c * (h - 1) / (1 - c) - c
        if abs(residue) > mpmath.mpf(2) ** (-prec + 32):
            raise ConsistencyError(f"window constant identity off by {residue}")
    return BhParams(h=h, block=block)


def negative_taper_blocks(params: BlockParams, k_max: int) -> list[int]:
    """Indices k_min-1..k_max whose taper factor is negative.

    A negative factor pushes that edge below 1; the formula is still
    evaluated as written and the block simply starts at 2.
    """
    lo = max(params.k_min - 1, 2)
    return [k for k in range(lo, k_max + 1) if params.taper_factor(k) < 0]


def bh_generate(k_max: int, params: BhParams, basis: Basis) -> SequencePrefix:
    return generate_blocks(k_max, params.block, basis, h=params.h)


def prune_repeated_sums(values, h: int) -> tuple[list[int], list[int]]:
    """Greedy core: while some l-fold sum (2 <= l <= h) repeats, drop the
    largest value involved. Returns (survivors ascending, removed in order)."""
    current = sorted(values)
    removed = []
    while True:
        hit = None
        for l in range(2, h + 1):
            reports = find_collisions(current, l)
            if reports:
                hit = reports[0]
                break
        if hit is None:
            return current, removed
        worst = max(hit.left_values() + hit.right_values())
        current.remove(worst)
        removed.append(worst)


@dataclass
class BhPruneResult:
    pruned: SequencePrefix
    removed: list[SidonElement]
    removed_by_block: dict[int, int]


def bh_prune(prefix: SequencePrefix, h: int | None = None) -> BhPruneResult:
    """Drop elements until all l-fold sums, 2 <= l <= h, are distinct."""
    h = h or prefix.h
    survivors, removed_values = prune_repeated_sums(prefix.values(), h)
    removed_set = set(removed_values)
    removed = [e for e in prefix.elements if e.value in removed_set]
    kept = [e for e in prefix.elements if e.value not in removed_set]
    by_block: dict[int, int] = {}
    for e in removed:
        by_block[e.k] = by_block.get(e.k, 0) + 1
    pruned = SequencePrefix(h=prefix.h, k_min=prefix.k_min, k_max=prefix.k_max,
                            elements=kept, excluded=prefix.excluded,
                            block_sizes=prefix.block_sizes, basis=prefix.basis,
                            params=prefix.params)
    return BhPruneResult(pruned=pruned, removed=removed, removed_by_block=by_block)


def montecarlo_bad_ratio(h: int, k_max: int, trials: int, seed: int,
                         precision: int | None = None) -> dict:
    """Removed fraction per block over `trials` random bases.

    Ratios divide removed elements by the block's prime count; empty blocks
    report 0. Identical (h, k_max, trials, seed) reproduce the report
    byte-for-byte once serialized canonically.
    """
    params = bh_params(h, precision=precision)
    master = random.Random(seed)
    trial_seeds = [master.randrange(1 << 63) for _ in range(trials)]
    ks = list(range(params.block.k_min, k_max + 1))
    trial_rows = []
    sums = {k: 0.0 for k in ks}
    maxes = {k: 0.0 for k in ks}
    for t, tseed in enumerate(trial_seeds):
        basis = build_basis("random", params.scale, k_max, seed=tseed)
        prefix = bh_generate(k_max, params, basis)
        result = bh_prune(prefix)
        ratios = []
        for k in ks:
            size = prefix.block_sizes.get(k, 0)
            bad = result.removed_by_block.get(k, 0)
            ratio = bad / size if size else 0.0
            ratios.append({"k": k, "block_size": size, "removed": bad, "ratio": ratio})
            sums[k] += ratio
            maxes[k] = max(maxes[k], ratio)
        trial_rows.append({
            "trial": t,
            "basis_seed": tseed,
            "q": [basis.q(j) for j in range(1, k_max + 1)],
            "ratios": ratios,
        })
    return {
        "h": h,
        "k_max": k_max,
        "trials": trials,
        "seed": seed,
        "negative_taper_blocks": negative_taper_blocks(params.block, k_max),
        "per_trial": trial_rows,
        "per_k": [{"k": k, "mean_ratio": sums[k] / trials if trials else 0.0,
                   "max_ratio": maxes[k]} for k in ks],
    }
