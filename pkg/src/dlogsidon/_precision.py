"""Guarded high-precision comparisons for block edges and range bounds.

Integer parts are exact; the fractional side of every exponent is carried
with at least 96 bits (default 192 total). Any comparison that falls within
2^-64 of a tie raises PrecisionAmbiguity instead of guessing.
"""

from __future__ import annotations

import os

import mpmath

from .errors import PrecisionAmbiguity

DEFAULT_PRECISION = 192
MIN_PRECISION = 96
GUARD_BITS = 64

PRECISION_ENV = "DLOGSIDON_PRECISION"


def default_precision() -> int:
    """Working precision in bits, overridable via the environment."""
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION
    prec = int(raw)
    if prec < MIN_PRECISION:
        raise ValueError(f"{PRECISION_ENV}={prec} below the minimum of {MIN_PRECISION} bits")
    return prec


def check_precision(prec: int) -> int:
    if prec < MIN_PRECISION:
        raise ValueError(f"precision {prec} below the minimum of {MIN_PRECISION} bits")
    return prec


def _guard():
    return mpmath.mpf(2) ** (-GUARD_BITS)


def cmp_log2(n: int, e, prec: int) -> int:
    """Sign of log2(n) - e for a positive integer n, guard-banded.

    Returns -1 or +1; a difference smaller than 2^-64 raises
    PrecisionAmbiguity.
    """
    if n < 1:
        raise ValueError(f"need a positive integer, got {n}")
    with mpmath.workprec(prec):
        diff = mpmath.log(n, 2) - e
        if abs(diff) < _guard():
            raise PrecisionAmbiguity(f"log2({n}) within 2^-{GUARD_BITS} of exponent {e}")
        return -1 if diff < 0 else 1


def cmp_int(n: int, x, prec: int) -> int:
    """Sign of n - x for an exact integer n against a high-precision value."""
    with mpmath.workprec(prec):
        diff = mpmath.mpf(n) - x
        if abs(diff) < _guard():
            raise PrecisionAmbiguity(f"{n} within 2^-{GUARD_BITS} of {x}")
        return -1 if diff < 0 else 1


def pow2_floor(e, prec: int) -> int:
    """Largest integer n >= 1 with log2(n) <= e, or 0 when e < 0.

    The candidate from rounding is corrected by guarded comparisons, so the
    result is exact or the call raises PrecisionAmbiguity.
    """
    with mpmath.workprec(prec):
        if e < -_guard():
            return 0
        n = int(mpmath.mpf(2) ** e)
        if n < 1:
            n = 1
        while cmp_log2(n + 1, e, prec) <= 0:
            n += 1
        while n >= 1 and cmp_log2(n, e, prec) > 0:
            n -= 1
        return n


def int_floor(e, prec: int) -> int:
    """Largest integer n with n <= e, guard-banded the same way as pow2_floor."""
    with mpmath.workprec(prec):
        n = int(mpmath.floor(e))
        while cmp_int(n + 1, e, prec) <= 0:
            n += 1
        while cmp_int(n, e, prec) > 0:
            n -= 1
        return n


def pow2_ratio_floor(e, divisor: int, prec: int) -> int:
    """floor(2^e / divisor) for a positive integer divisor, guard-banded."""
    if divisor < 1:
        raise ValueError(f"divisor must be positive, got {divisor}")
    with mpmath.workprec(prec):
        return pow2_floor(e - mpmath.log(divisor, 2), prec)
