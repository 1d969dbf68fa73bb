"""Partition of the primes into blocks by an exponent law.

Block k holds the primes p with E(k-1) < log2(p) <= E(k), where

    E(k) = c * k^2 * taper(k) + offset

for a constant 0 < c < 1/2. The plain law uses taper(k) = 1 and offset -3;
the tapered law uses taper(k) = 1 - 1/sqrt(log k) (natural log by default,
the base is configurable) and offset 0. All edge decisions go through the
guard-banded comparisons in _precision, so a prime near an edge raises
PrecisionAmbiguity instead of being misassigned.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from ._precision import check_precision, cmp_log2, default_precision, pow2_floor
from .arith import PrimeInterval, primes_in_interval


@dataclass(frozen=True)
class Constant:
    """A named constant in (0, 1/2), evaluated fresh at any precision."""

    name: str
    kind: str
    payload: int | str | None = None

    def eval(self, prec: int):
        with mpmath.workprec(prec):
            if self.kind == "sqrt5":
                value = (3 - mpmath.sqrt(5)) / 2
            elif self.kind == "sqrt2":
                value = mpmath.sqrt(2) - 1
            elif self.kind == "window":
                h = self.payload
                value = mpmath.sqrt((h - 1) ** 2 + 1) - (h - 1)
            elif self.kind == "decimal":
                value = mpmath.mpf(self.payload)
            else:
                raise ValueError(f"unknown constant kind {self.kind!r}")
            if not 0 < value < mpmath.mpf(1) / 2:
                raise ValueError(f"constant {self.name} = {value} outside (0, 1/2)")
            return value


def const_sqrt5() -> Constant:
    """(3 - sqrt 5)/2, the exact-Sidon exponent constant."""
    return Constant("sqrt5", "sqrt5")


def const_sqrt2() -> Constant:
    """sqrt 2 - 1, the densest pruned-Sidon exponent constant."""
    return Constant("sqrt2", "sqrt2")


def const_window(h: int) -> Constant:
    """sqrt((h-1)^2 + 1) - (h - 1), the h-fold-sum exponent constant."""
    if h < 2:
        raise ValueError(f"need h >= 2, got {h}")
    return Constant(f"window{h}", "window", h)


def const_decimal(text: str) -> Constant:
    return Constant(text, "decimal", text)


@dataclass(frozen=True)
class BlockParams:
    """Exponent law: constant, offset, optional taper, first block index."""

    c: Constant
    offset: int = -3
    taper: bool = False
    k_min: int = 2
    log_base: float | None = None  # taper log base; None means natural
    precision: int = field(default_factory=default_precision)

    def __post_init__(self):
        check_precision(self.precision)
        if self.k_min < 2:
            raise ValueError(f"k_min must be >= 2, got {self.k_min}")

    def taper_factor(self, k: int):
        """1 - 1/sqrt(log k); negative when log k < 1."""
        if k < 2:
            raise ValueError(f"taper undefined at k = {k}")
        with mpmath.workprec(self.precision):
            logk = mpmath.log(k)
            if self.log_base is not None:
                logk /= mpmath.log(self.log_base)
            return 1 - 1 / mpmath.sqrt(logk)

    def exponent(self, k: int):
        """E(k), an mpf at this params' working precision."""
        with mpmath.workprec(self.precision):
            e = self.c.eval(self.precision) * k * k
            if self.taper:
                e *= self.taper_factor(k)
            return e + self.offset

    def upper_edge(self, k: int) -> int:
        """floor(2^E(k)): the largest integer allowed into block k."""
        return pow2_floor(self.exponent(k), self.precision)


def sidon_params(c: Constant | None = None, precision: int | None = None,
                 offset: int = -3, k_min: int = 2) -> BlockParams:
    """Plain exponent law E(k) = c k^2 + offset starting at block 2."""
    return BlockParams(c=c or const_sqrt5(), offset=offset, taper=False, k_min=k_min,
                       precision=precision or default_precision())


def tapered_params(h: int, c: Constant | None = None, precision: int | None = None,
                   log_base: float | None = None) -> BlockParams:
    """Tapered law E(k) = c k^2 (1 - 1/sqrt(log k)) starting at block 3."""
    return BlockParams(c=c or const_window(h), offset=0, taper=True, k_min=3,
                       log_base=log_base, precision=precision or default_precision())


def block_of_prime(p: int, params: BlockParams) -> int:
    """The unique k >= k_min with E(k-1) < log2(p) <= E(k)."""
    if p < 2:
        raise ValueError(f"need p >= 2, got {p}")
    if cmp_log2(p, params.exponent(params.k_min - 1), params.precision) <= 0:
        raise ValueError(f"{p} at or below the lower edge of block {params.k_min}")
    k = params.k_min
    while cmp_log2(p, params.exponent(k), params.precision) > 0:
        k += 1
    return k


def primes_in_block(k: int, params: BlockParams) -> list[int]:
    """Primes of block k, ascending. Empty when the edges pinch below 2."""
    if k < params.k_min:
        raise ValueError(f"block index {k} below k_min = {params.k_min}")
    hi = params.upper_edge(k)
    lo = max(params.upper_edge(k - 1), 1)
    if hi <= max(lo, 1):
        return []
    return primes_in_interval(PrimeInterval(lo, hi))
