"""The polynomial analogue over GF(2): carry-less arithmetic on bit patterns,
irreducibles in place of primes, and the same digit construction.

A polynomial is a nonnegative int whose bit i is the coefficient of X^i, so
X^3 + X + 1 is 0b1011. The j-th modulus is the least irreducible of degree
2j - 1, digits live in [2^(2j-1) + 1, 2^(2j) - 1], and the j-th weight is
2^(j^2 - 1), which makes h = 2 digit sums carry-free for the same reason as
on the integer side.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from ._precision import cmp_int, int_floor
from .arith import factorize
from .blocks import BlockParams
from .errors import DegreeTooLarge, DLogUndefined, ExcludedPrime, NotIrreducible
from .generator import ExclusionRecord

Gf2Poly = int  # bit i holds the coefficient of X^i

_MAX_DEGREE = 24


def gf2_deg(a: Gf2Poly) -> int:
    """Degree of a; the zero polynomial gets the sentinel -1."""
    return a.bit_length() - 1


def gf2_mul(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def gf2_divmod(a: Gf2Poly, b: Gf2Poly) -> tuple[Gf2Poly, Gf2Poly]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = gf2_deg(b)
    quo = 0
    while gf2_deg(a) >= db:
        shift = gf2_deg(a) - db
        quo ^= 1 << shift
        a ^= b << shift
    return quo, a


def gf2_mod(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    return gf2_divmod(a, b)[1]


def gf2_gcd(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    while b:
        a, b = b, gf2_mod(a, b)
    return a


def gf2_mulmod(a: Gf2Poly, b: Gf2Poly, m: Gf2Poly) -> Gf2Poly:
    return gf2_mod(gf2_mul(a, b), m)


def gf2_powmod(a: Gf2Poly, e: int, m: Gf2Poly) -> Gf2Poly:
    out = 1
    a = gf2_mod(a, m)
    while e:
        if e & 1:
            out = gf2_mulmod(out, a, m)
        a = gf2_mulmod(a, a, m)
        e >>= 1
    return out


def is_irreducible(f: Gf2Poly) -> bool:
    """Rabin's criterion: X^(2^d) = X mod f and gcd(X^(2^(d/r)) - X, f) = 1
    for every prime r dividing d."""
    d = gf2_deg(f)
    if d < 1:
        return False
    if d == 1:
        return True
    if f & 1 == 0:  # divisible by X
        return False
    x = 2
    for r in factorize(d):
        t = gf2_powmod_tower(x, d // r, f)
        if gf2_gcd(t ^ x, f) != 1:
            return False
    return gf2_powmod_tower(x, d, f) == x


def gf2_powmod_tower(a: Gf2Poly, e: int, m: Gf2Poly) -> Gf2Poly:
    """a^(2^e) mod m by e squarings."""
    for _ in range(e):
        a = gf2_mulmod(a, a, m)
    return a


def _is_irreducible_trial(f: Gf2Poly) -> bool:
    """Trial division by every lower-degree irreducible; oracle route, d <= 12."""
    d = gf2_deg(f)
    if d < 1:
        return False
    for e in range(1, d // 2 + 1):
        for p in irreducibles_of_degree(e):
            if gf2_mod(f, p) == 0:
                return False
    return True


@lru_cache(maxsize=32)
def irreducibles_of_degree(d: int) -> tuple[Gf2Poly, ...]:
    """All monic irreducibles of degree d, ascending by bit pattern."""
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    if d > _MAX_DEGREE:
        raise DegreeTooLarge(f"degree {d} beyond the enumeration bound {_MAX_DEGREE}")
    found = tuple(f for f in range(1 << d, 1 << (d + 1)) if is_irreducible(f))
    if len(found) != irreducible_count(d):
        raise AssertionError(f"irreducible count mismatch at degree {d}")
    return found


def irreducible_count(d: int) -> int:
    """Necklace count (1/d) sum_(e|d) mu(e) 2^(d/e)."""
    def mobius(n):
        fac = factorize(n)
        if any(v > 1 for v in fac.values()):
            return 0
        return -1 if len(fac) % 2 else 1

    total = 0
    for e in range(1, d + 1):
        if d % e == 0:
            total += mobius(e) * (1 << (d // e))
    return total // d


def gf2_generator(q: Gf2Poly) -> Gf2Poly:
    """Least residue (by bit pattern) of full order 2^n - 1 in GF(2)[X]/q."""
    if not is_irreducible(q):
        raise NotIrreducible(f"{q:#x} is not irreducible")
    n = gf2_deg(q)
    order = (1 << n) - 1
    radicals = list(factorize(order)) if order > 1 else []
    for a in range(1, 1 << n):
        if all(gf2_powmod(a, order // r, q) != 1 for r in radicals):
            return a
    raise AssertionError("no generator found; the unit group is always cyclic")


@lru_cache(maxsize=64)
def _gf2_bsgs_table(g: Gf2Poly, q: Gf2Poly):
    order = (1 << gf2_deg(q)) - 1
    m = isqrt(order - 1) + 1 if order > 1 else 1
    baby = {}
    x = 1
    for j in range(m):
        baby.setdefault(x, j)
        x = gf2_mulmod(x, g, q)
    return m, baby, gf2_powmod(x, order - 1, q)


def gf2_discrete_log(g: Gf2Poly, a: Gf2Poly, q: Gf2Poly) -> int:
    """x in [0, 2^n - 2] with g^x = a in GF(2)[X]/q, baby-step giant-step."""
    a = gf2_mod(a, q)
    if a == 0:
        raise DLogUndefined(f"0 has no discrete log mod {q:#x}")
    order = (1 << gf2_deg(q)) - 1
    m, baby, giant = _gf2_bsgs_table(g, q)
    y = a
    for i in range(m):
        j = baby.get(y)
        if j is not None:
            return (i * m + j) % order if order > 1 else 0
        y = gf2_mulmod(y, giant, q)
    raise ValueError(f"no discrete log of {a:#x} base {g:#x} mod {q:#x}")


def gf2_finite_sidon(n: int, q: Gf2Poly | None = None) -> set[int]:
    """{dlog(p) : p irreducible, deg p < n/2} in Z_(2^n - 1).

    Products of two such polynomials stay below degree n, so distinct digit
    pairs give distinct products mod q: a Sidon set in Z_(2^n - 1).
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if q is None:
        q = irreducibles_of_degree(n)[0]
    if gf2_deg(q) != n:
        raise ValueError(f"modulus degree {gf2_deg(q)} does not match n = {n}")
    if not is_irreducible(q):
        raise NotIrreducible(f"{q:#x} is not irreducible")
    g = gf2_generator(q)
    out = set()
    for d in range(1, (n + 1) // 2):
        for p in irreducibles_of_degree(d):
            out.add(gf2_discrete_log(g, p, q))
    return out


class Gf2Basis:
    """q_j = least irreducible of degree 2j - 1, g_j = its least generator."""

    def __init__(self):
        self._entries: list[tuple[Gf2Poly, Gf2Poly]] = []

    def ensure(self, count: int) -> None:
        while len(self._entries) < count:
            j = len(self._entries) + 1
            q = irreducibles_of_degree(2 * j - 1)[0]
            self._entries.append((q, gf2_generator(q)))

    def entry(self, j: int) -> tuple[Gf2Poly, Gf2Poly]:
        if j < 1:
            raise ValueError(f"basis index must be >= 1, got {j}")
        self.ensure(j)
        return self._entries[j - 1]

    def __len__(self) -> int:
        return len(self._entries)


def gf2_weight(j: int) -> int:
    return 1 << (j * j - 1)


@dataclass(frozen=True)
class Gf2Element:
    p: Gf2Poly
    k: int
    digits: tuple[int, ...]
    value: int

    def to_json_obj(self) -> dict:
        return {"p": format(self.p, "x"), "k": self.k,
                "digits": list(self.digits), "a": str(self.value)}


@dataclass
class Gf2Prefix:
    k_min: int
    k_max: int
    elements: list[Gf2Element]
    excluded: list[ExclusionRecord]
    block_sizes: dict[int, int]
    basis: Gf2Basis
    params: BlockParams

    def values(self) -> list[int]:
        return [e.value for e in self.elements]


def block_of_degree(d: int, params: BlockParams) -> int:
    """The unique k >= k_min with E(k-1) < d <= E(k) for an integer degree."""
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    prec = params.precision
    if cmp_int(d, params.exponent(params.k_min - 1), prec) <= 0:
        raise ValueError(f"degree {d} at or below the lower edge of block {params.k_min}")
    k = params.k_min
    while cmp_int(d, params.exponent(k), prec) > 0:
        k += 1
    return k


def degrees_in_block(k: int, params: BlockParams) -> range:
    if k < params.k_min:
        raise ValueError(f"block index {k} below k_min = {params.k_min}")
    prec = params.precision
    lo = int_floor(params.exponent(k - 1), prec)
    hi = int_floor(params.exponent(k), prec)
    return range(max(lo + 1, 1), hi + 1)


def gf2_digits(p: Gf2Poly, k: int, basis: Gf2Basis) -> tuple[int, ...]:
    digits = []
    for j in range(1, k + 1):
        q, g = basis.entry(j)
        r = gf2_mod(p, q)
        if r == 0:
            raise ExcludedPrime(p, k, j)
        d = gf2_discrete_log(g, r, q)
        span = (1 << (2 * j - 1)) - 1
        lo = (1 << (2 * j - 1)) + 1
        digits.append(lo + (d - lo) % span)
    return tuple(digits)


def gf2_generate_blocks(k_max: int, params: BlockParams,
                        basis: Gf2Basis | None = None) -> Gf2Prefix:
    """Elements for every irreducible in blocks k_min..k_max by degree."""
    if k_max < params.k_min:
        raise ValueError(f"k_max = {k_max} below the first block {params.k_min}")
    basis = basis or Gf2Basis()
    elements: list[Gf2Element] = []
    excluded: list[ExclusionRecord] = []
    block_sizes: dict[int, int] = {}
    for k in range(params.k_min, k_max + 1):
        polys = [p for d in degrees_in_block(k, params)
                 for p in irreducibles_of_degree(d)]
        block_sizes[k] = len(polys)
        basis.ensure(k)
        for p in polys:
            try:
                digits = gf2_digits(p, k, basis)
            except ExcludedPrime as e:
                excluded.append(ExclusionRecord(p=e.p, k=e.k, basis_index=e.index))
                continue
            value = sum(x << (j * j - 1) for j, x in enumerate(digits, start=1))
            elements.append(Gf2Element(p=p, k=k, digits=digits, value=value))
    elements.sort(key=lambda e: (e.k, e.value))
    if len({e.value for e in elements}) != len(elements):
        raise ValueError("duplicate element values; the digit map must be injective")
    return Gf2Prefix(k_min=params.k_min, k_max=k_max, elements=elements,
                     excluded=excluded, block_sizes=block_sizes,
                     basis=basis, params=params)
