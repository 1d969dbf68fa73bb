"""Exhaustive collision search, structural decomposition of collisions, and
the growth brackets for counting functions.

Collision search is exact. The fast pair path filters through 61-bit
residues (numpy) and then confirms every candidate group with full big
integers, so no collision is ever reported or missed on account of hashing.
The half-split enumeration and the brute-force enumeration are independent
routes that must agree; tests hold them to that.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations

import mpmath
import numpy as np

from ._precision import cmp_int
from .arith import prime_count
from .basis import Basis
from .blocks import BlockParams
from .encoder import SidonElement
from .errors import ArityOutOfRange, DigitOutOfRange, MissingDigits
from .generator import SequencePrefix, count_upto

# Below this many elements the plain dict-of-sums path is fast enough.
_FILTER_MIN = 2000

_MERSENNE61 = (1 << 61) - 1


def _value_of(e):
    return e.value if hasattr(e, "value") else int(e)


@dataclass
class CollisionReport:
    """Two element-disjoint l-tuples of distinct elements with equal sums."""

    l: int
    total: int
    left: tuple
    right: tuple
    structure: dict | None = None

    def left_values(self) -> tuple[int, ...]:
        return tuple(_value_of(e) for e in self.left)

    def right_values(self) -> tuple[int, ...]:
        return tuple(_value_of(e) for e in self.right)

    def key(self):
        return (self.l, self.total, self.left_values(), self.right_values())

    def to_json_obj(self) -> dict:
        def side(items):
            return [e.to_json_obj() if hasattr(e, "to_json_obj") else str(_value_of(e))
                    for e in items]
        obj = {"l": self.l, "sum": str(self.total),
               "left": side(self.left), "right": side(self.right)}
        if self.structure is not None:
            obj["structure"] = self.structure
        return obj


def _prepare(elements, l):
    if l < 2:
        raise ArityOutOfRange(f"collision arity must be >= 2, got {l}")
    items = list(elements)
    vals = [_value_of(e) for e in items]
    if len(set(vals)) != len(vals):
        raise ValueError("elements must be pairwise distinct")
    return items, vals


def _half_split_groups(vals, l, modulus):
    """Sum -> increasing index tuples, enumerating each l-subset once as a
    size-floor(l/2) head merged with a precomputed tail table."""
    n = len(vals)
    l1 = l // 2
    l2 = l - l1
    tails: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(n)]
    for t in combinations(range(n), l2):
        tails[t[0]].append((sum(vals[i] for i in t), t))
    groups: dict[int, list[tuple[int, ...]]] = defaultdict(list)
    for head in combinations(range(n), l1):
        s1 = sum(vals[i] for i in head)
        start = head[-1] + 1
        for f in range(start, n):
            for s2, tail in tails[f]:
                key = s1 + s2
                if modulus is not None:
                    key %= modulus
                groups[key].append(head + tail)
    return {k: ts for k, ts in groups.items() if len(ts) > 1}


def _brute_groups(vals, l, modulus):
    """Same grouping by direct enumeration and sorting; the slow oracle."""
    entries = []
    for t in combinations(range(len(vals)), l):
        s = sum(vals[i] for i in t)
        if modulus is not None:
            s %= modulus
        entries.append((s, t))
    entries.sort()
    groups = {}
    run_start = 0
    for i in range(1, len(entries) + 1):
        if i == len(entries) or entries[i][0] != entries[run_start][0]:
            if i - run_start > 1:
                groups[entries[run_start][0]] = [t for _, t in entries[run_start:i]]
            run_start = i
    return groups


def _filtered_pair_groups(vals):
    """Pair sums via 61-bit residues, each candidate confirmed exactly.

    Two passes keep memory at one uint64 per pair: the first sorts the
    residue sums in place to find duplicated residues, the second recovers
    the index pairs behind just those residues. Equal exact sums force equal
    residues, so nothing is missed; unequal sums sharing a residue are
    separated by the exact-sum grouping.
    """
    n = len(vals)
    res = np.fromiter((v % _MERSENNE61 for v in vals), dtype=np.uint64, count=n)

    def row_sums(i):
        # Residues are below M, so the sum fits uint64; reducing it keeps
        # equal exact sums on equal residue sums even when one pair wrapped.
        row = res[i + 1:] + res[i]
        row[row >= _MERSENNE61] -= np.uint64(_MERSENNE61)
        return row

    total = n * (n - 1) // 2
    sums = np.empty(total, np.uint64)
    pos = 0
    for i in range(n):
        sums[pos:pos + n - 1 - i] = row_sums(i)
        pos += n - 1 - i
    sums.sort()
    dup_vals = np.unique(sums[1:][sums[1:] == sums[:-1]])
    del sums
    groups: dict[int, list[tuple[int, ...]]] = {}
    if dup_vals.size:
        exact: dict[int, list[tuple[int, ...]]] = defaultdict(list)
        for i in range(n):
            row = row_sums(i)
            slot = np.searchsorted(dup_vals, row)
            slot[slot == dup_vals.size] = 0
            for off in np.flatnonzero(dup_vals[slot] == row):
                j = i + 1 + int(off)
                exact[vals[i] + vals[j]].append((i, j))
        groups = {key: ts for key, ts in exact.items() if len(ts) > 1}
    return groups


def _reports_from_groups(items, vals, groups, l):
    reports = []
    for key, tuples in groups.items():
        for ta, tb in combinations(tuples, 2):
            va = {vals[i] for i in ta}
            vb = {vals[i] for i in tb}
            if va & vb:
                continue
            if max(va) < max(vb):
                ta, tb = tb, ta
            left = tuple(sorted((items[i] for i in ta), key=_value_of, reverse=True))
            right = tuple(sorted((items[i] for i in tb), key=_value_of, reverse=True))
            reports.append(CollisionReport(l=l, total=key, left=left, right=right))
    reports.sort(key=CollisionReport.key)
    return reports


def find_collisions(elements, l: int, modulus: int | None = None,
                    method: str = "auto") -> list[CollisionReport]:
    """All unordered pairs of disjoint size-l subsets with equal sums.

    Each side is l distinct elements and the two sides share none, so
    [0, 1, 2, 3] at l = 2 carries exactly one collision, 0+3 = 1+2.
    With `modulus` the sums are compared mod it.
    """
    items, vals = _prepare(elements, l)
    if method == "auto":
        method = "filtered" if (l == 2 and modulus is None and len(vals) >= _FILTER_MIN) else "halves"
    if method == "halves":
        groups = _half_split_groups(vals, l, modulus)
    elif method == "filtered":
        if l != 2 or modulus is not None:
            raise ValueError("the filtered path only handles plain pair sums")
        groups = _filtered_pair_groups(vals)
    else:
        raise ValueError(f"unknown method {method!r}")
    return _reports_from_groups(items, vals, groups, l)


def find_collisions_bruteforce(elements, l: int, modulus: int | None = None) -> list[CollisionReport]:
    """Reference implementation: direct enumeration, sort, scan."""
    items, vals = _prepare(elements, l)
    return _reports_from_groups(items, vals, _brute_groups(vals, l, modulus), l)


def check_collision_structure(report: CollisionReport, basis: Basis,
                              params: BlockParams, h: int = 2) -> dict:
    """Evaluate the structural facts a construction collision must satisfy.

    Facts are reported, not asserted: a hand-built collision that fails one
    of them comes back with that fact False. Requires elements with digit
    vectors; raw integers raise MissingDigits.
    """
    elems = list(report.left) + list(report.right)
    for e in elems:
        if not isinstance(e, SidonElement):
            raise MissingDigits("structure facts need digit vectors, got raw values")
        if not e.digits.in_windows(basis):
            raise DigitOutOfRange(f"digits of {e.p} violate their windows")
    l = report.l
    left = list(report.left)
    right = list(report.right)
    max_k = max(e.k for e in elems)

    def digit_sums(side):
        return [sum(e.digits.digits[j - 1] for e in side if j <= e.k)
                for j in range(1, max_k + 1)]

    sums_left = digit_sums(left)
    sums_right = digit_sums(right)
    facts = {"digitwise_equal": sums_left == sums_right}

    # Block recovery off the digit sums: k_i is the largest j whose digit sum
    # reaches i window floors.
    recovered = []
    for i in range(1, l + 1):
        k_i = None
        for j in range(1, max_k + 1):
            if sums_left[j - 1] >= i * ((h - 1) * basis.q(j) + 1):
                k_i = j
        recovered.append(k_i)
    ks = [e.k for e in left]
    facts["block_indices"] = (
        recovered == ks
        and ks == [e.k for e in right]
        and all(a >= b for a, b in zip(ks, ks[1:]))
    )

    def partial(side, i):
        out = 1
        for e in side[:i]:
            out *= e.p
        return out

    chain_ok = True
    for i in range(l, 0, -1):
        k_hi = ks[i - 1]
        k_lo = ks[i] if i < l else 0
        modulus = basis.prime_product(k_lo + 1, k_hi)
        if partial(left, i) % modulus != (partial(right, i) % modulus):
            chain_ok = False
    facts["congruence_chain"] = chain_ok

    prec = params.precision
    with mpmath.workprec(prec):
        c = params.c.eval(prec)
        ratio = c / (1 - c)
        k1 = ks[0]
        kl = ks[-1]
        if l == 2:
            upper = cmp_int(kl * kl, ratio * k1 * k1, prec) < 0
            lower = cmp_int(kl * kl, (1 - c) * k1 * k1, prec) > 0
            facts["size_inequality"] = lower and upper
        else:
            bound = ratio * sum(k * k for k in ks[:-1])
            facts["size_inequality"] = cmp_int(kl * kl, bound, prec) < 0

    q_product = basis.prime_product(1, ks[0])
    d = 1
    for i in range(1, l + 1):
        d *= partial(left, i) - partial(right, i)
    facts["product_divisibility"] = d % q_product == 0

    report.structure = facts
    return facts


def growth_bracket_check(prefix: SequencePrefix, basis: Basis | None = None,
                         params: BlockParams | None = None) -> list[dict]:
    """Per-block counting brackets and element rails.

    At x = W_(k+1) the count must sit between pi(edge(k)) minus exclusions
    and pi(edge(k+2)), and every block-k element must lie strictly between
    W_k q_k and W_(k+1). The log2 ratio column is a labeled float diagnostic,
    never asserted.
    """
    basis = basis or prefix.basis
    params = params or prefix.params
    out = []
    for k in range(prefix.k_min, prefix.k_max + 1):
        x = basis.weight(k + 1)
        count = count_upto(x, prefix)
        thr_lo = params.upper_edge(k)
        lower = prime_count(thr_lo) - sum(1 for r in prefix.excluded if r.p <= thr_lo)
        upper = prime_count(params.upper_edge(k + 2))
        elems = prefix.block_elements(k)
        rail_lo = basis.weight(k) * basis.q(k)
        rail_hi = basis.weight(k + 1)
        out.append({
            "k": k,
            "x": str(x),
            "count": count,
            "lower": lower,
            "upper": upper,
            "count_ok": lower <= count <= upper,
            "elements_ok": all(rail_lo < e.value < rail_hi for e in elems),
            "log2_ratio_approx": (math.log2(count) / math.log2(x)) if count > 0 else None,
            "c_target_approx": float(params.c.eval(params.precision)),
        })
    return out
