import pytest

from dlogsidon.arith import smallest_primitive_root
from dlogsidon.basis import build_basis
from dlogsidon.blocks import const_decimal, primes_in_block, sidon_params
from dlogsidon.encoder import element_for_prime
from dlogsidon.errors import PrefixTooShort
from dlogsidon.generator import (
    count_upto,
    expected_finite_size,
    finite_dlog_sidon_set,
    generate_blocks,
)

from oracles import is_sidon_list, power_table, primes_upto_trial


def test_prefix_shape_sqrt5_k7(sqrt5_prefix_k7):
    prefix = sqrt5_prefix_k7
    assert prefix.k_min == 2 and prefix.k_max == 7 and prefix.h == 2
    assert len(prefix.elements) == 5477
    assert len(prefix.excluded) == 7
    assert prefix.block_sizes == {2: 0, 3: 0, 4: 4, 5: 20, 6: 245, 7: 5215}


def test_prefix_shape_sqrt2_k7(sqrt2_prefix_k7):
    prefix = sqrt2_prefix_k7
    assert len(prefix.elements) == 14759
    assert len(prefix.excluded) == 7
    assert prefix.block_sizes == {2: 0, 3: 0, 4: 5, 5: 33, 6: 496, 7: 14232}


def test_excluded_are_exactly_basis_primes_in_range(sqrt5_prefix_k7, default_basis):
    got = {(r.p, r.k, r.basis_index) for r in sqrt5_prefix_k7.excluded}
    # q_j excluded whenever q_j lies in a generated block with index >= j.
    want = set()
    for j in range(1, 8):
        q = default_basis.q(j)
        for k in range(2, 8):
            if q in primes_in_block(k, sqrt5_prefix_k7.params) and j <= k:
                want.add((q, k, j))
    assert got == want
    assert len(got) == 7


def test_elements_sorted_and_blockwise_consistent(sqrt5_prefix_k7, default_basis):
    prefix = sqrt5_prefix_k7
    vals = prefix.values()
    assert vals == sorted(vals)
    for e in prefix.elements[:50] + prefix.elements[-50:]:
        rebuilt = element_for_prime(e.p, default_basis, prefix.params)
        assert rebuilt.value == e.value and rebuilt.k == e.k


def test_element_count_matches_block_sizes(sqrt5_prefix_k7):
    prefix = sqrt5_prefix_k7
    per_block = {k: len(prefix.block_elements(k)) for k in range(2, 8)}
    for k in range(2, 8):
        excl = sum(1 for r in prefix.excluded if r.k == k)
        assert per_block[k] + excl == prefix.block_sizes[k], k


def test_generate_rejects_scale_h_mismatch(default_basis, sqrt5_params):
    with pytest.raises(ValueError):
        generate_blocks(4, sqrt5_params, default_basis, h=3)
    with pytest.raises(ValueError):
        generate_blocks(1, sqrt5_params, default_basis)


def test_count_upto_walks_the_sorted_values(sqrt5_prefix_k7):
    prefix = sqrt5_prefix_k7
    vals = prefix.values()
    assert count_upto(-1, prefix) == 0
    assert count_upto(0, prefix) == 0
    assert count_upto(vals[0], prefix) == 1
    assert count_upto(vals[0] - 1, prefix) == 0
    assert count_upto(vals[-1], prefix) == len(vals)
    assert count_upto(prefix.covered_bound(), prefix) == len(vals)
    with pytest.raises(PrefixTooShort):
        count_upto(prefix.covered_bound() + 1, prefix)


def test_covered_bound_is_next_weight(sqrt5_prefix_k7, default_basis):
    assert sqrt5_prefix_k7.covered_bound() == default_basis.weight(8)


def test_summaries_shape(sqrt5_prefix_k7):
    rows = sqrt5_prefix_k7.summaries()
    assert [r["k"] for r in rows] == [2, 3, 4, 5, 6, 7]
    r4 = rows[2]
    assert r4["block_size"] == 4 and r4["excluded"] == 1
    assert r4["min_value"] is not None


def test_small_prefix_is_sidon(fake_basis):
    # Non-dyadic toy basis; the digit map still yields a Sidon set when the
    # windows stay disjoint enough, checked by the quadratic oracle.
    params = sidon_params(c=const_decimal("0.38"), offset=1, k_min=2)
    prefix = generate_blocks(3, params, fake_basis((5, 7, 11), 4))
    vals = prefix.values()
    assert len(vals) >= 3
    assert is_sidon_list(vals)


def test_finite_set_q101_matches_table():
    # primes <= 10 are 2, 3, 5, 7; dlogs base 2 mod 101.
    table = power_table(101, 2)
    want = {table[p] for p in (2, 3, 5, 7)}
    got = finite_dlog_sidon_set(101)
    assert got == want == {1, 9, 24, 69}
    assert expected_finite_size(101) == 4 == len(got)


def test_finite_set_is_sidon_in_cyclic_group():
    for q in (101, 211, 1009):
        residues = sorted(finite_dlog_sidon_set(q))
        n = q - 1
        sums = {}
        ok = True
        for i in range(len(residues)):
            for j in range(i, len(residues)):
                s = (residues[i] + residues[j]) % n
                pair = {residues[i], residues[j]}
                if s in sums and sums[s] != pair:
                    ok = False
                sums[s] = pair
        assert ok, q
        assert len(residues) == expected_finite_size(q)


def test_finite_set_respects_supplied_generator():
    g = smallest_primitive_root(101)
    assert finite_dlog_sidon_set(101, g) == finite_dlog_sidon_set(101)
