import random

import pytest

from dlogsidon.auditor import (
    CollisionReport,
    check_collision_structure,
    find_collisions,
    find_collisions_bruteforce,
    growth_bracket_check,
)
from dlogsidon.blocks import const_decimal, sidon_params
from dlogsidon.encoder import DigitVector, SidonElement
from dlogsidon.errors import ArityOutOfRange, DigitOutOfRange, MissingDigits
from dlogsidon.generator import generate_blocks

from oracles import disjoint_report_keys

M61 = (1 << 61) - 1


def report_keys(reports):
    return [r.key() for r in reports]


def test_textbook_pair_collisions():
    reports = find_collisions([1, 2, 3, 4], 2)
    assert report_keys(reports) == [(2, 5, (4, 1), (3, 2))]

    reports = find_collisions([0, 1, 2, 3], 2)
    assert report_keys(reports) == [(2, 3, (3, 0), (2, 1))]

    obj = reports[0].to_json_obj()
    assert obj == {"l": 2, "sum": "3", "left": ["3", "0"], "right": ["2", "1"]}


def test_sides_hold_distinct_elements():
    # 0+2 equals 1+1, but a side never repeats an element, so no report.
    assert find_collisions([0, 1, 2], 2) == []
    assert find_collisions_bruteforce([0, 1, 2], 2) == []
    # ... and shared elements between sides are skipped: 1+2 = 0+3 is the
    # only pair here even though 1+3 = 0+4 shares nothing with it.
    reports = find_collisions([0, 1, 2, 3, 4], 2)
    totals = [r.total for r in reports]
    assert totals == sorted(totals)
    assert (2, 4, (4, 0), (3, 1)) in report_keys(reports)


@pytest.mark.parametrize("l,n_lo,n_hi,span", [(2, 25, 80, 3), (3, 18, 36, 25)])
def test_methods_agree_with_oracle(l, n_lo, n_hi, span):
    rng = random.Random(4000 + l)
    for _ in range(5):
        n = rng.randrange(n_lo, n_hi)
        vals = rng.sample(range(span * n), n)
        expected = disjoint_report_keys(vals, l)
        halves = find_collisions(vals, l, method="halves")
        brute = find_collisions_bruteforce(vals, l)
        assert report_keys(halves) == expected
        assert report_keys(brute) == expected
        if l == 2:
            filt = find_collisions(vals, l, method="filtered")
            assert report_keys(filt) == expected


def test_filtered_path_big_values_and_wraparound():
    # Values far above 61 bits; the residue filter must still confirm the
    # one planted collision exactly.
    base = 1 << 200
    vals = [base + 1, base + 4, base + 2, base + 3, base + 9]
    expected = [(2, 2 * base + 5, (base + 4, base + 1), (base + 3, base + 2))]
    assert report_keys(find_collisions(vals, 2, method="filtered")) == expected
    assert report_keys(find_collisions_bruteforce(vals, 2)) == expected

    # Residue sums that wrap past the Mersenne modulus still group correctly.
    vals = [M61 - 1, 3, M61 - 2, 4]
    reports = find_collisions(vals, 2, method="filtered")
    assert report_keys(reports) == [(2, M61 + 2, (M61 - 1, 3), (M61 - 2, 4))]

    # Equal residues with unequal exact sums must not be reported.
    vals = [M61 + 5, 10, 7, 8]
    assert find_collisions(vals, 2, method="filtered") == []
    assert find_collisions_bruteforce(vals, 2) == []


def test_modular_collision_search():
    rng = random.Random(71)
    vals = rng.sample(range(10_000), 60)
    for mod in (97, 1009):
        reports = find_collisions(vals, 2, modulus=mod)
        assert report_keys(reports) == disjoint_report_keys(vals, 2, mod)
        for r in reports:
            assert 0 <= r.total < mod
            assert (sum(r.left_values()) - sum(r.right_values())) % mod == 0
        # modular grouping really differs from exact grouping
        exact_keys = {(lv, rv) for _, _, lv, rv in disjoint_report_keys(vals, 2)}
        assert any((r.left_values(), r.right_values()) not in exact_keys
                   for r in reports)


def test_search_validation():
    with pytest.raises(ArityOutOfRange):
        find_collisions([1, 2, 3], 1)
    with pytest.raises(ArityOutOfRange):
        find_collisions_bruteforce([1, 2, 3], 0)
    with pytest.raises(ValueError):
        find_collisions([1, 2, 2, 3], 2)
    with pytest.raises(ValueError):
        find_collisions([1, 2, 3, 4], 3, method="filtered")
    with pytest.raises(ValueError):
        find_collisions([1, 2, 3, 4], 2, modulus=7, method="filtered")
    with pytest.raises(ValueError):
        find_collisions([1, 2, 3, 4], 2, method="nope")


@pytest.fixture(scope="module")
def dense_fixture(request):
    from dlogsidon.basis import Basis
    entries = [(11, 2), (13, 2), (3, 2), (5, 2)]
    basis = Basis(4, entries, mode="fixed", require_dyadic=False)
    params = sidon_params(c=const_decimal("0.45"), offset=1, k_min=2)
    prefix = generate_blocks(4, params, basis, h=2)
    return basis, params, prefix


def test_structure_facts_on_dense_prefix(dense_fixture):
    basis, params, prefix = dense_fixture
    reports = find_collisions(prefix.elements, 2)
    assert len(prefix.elements) == 59
    assert len(reports) == 179

    by_total = {r.total: r for r in reports}
    good = by_total[187124]
    facts = check_collision_structure(good, basis, params, h=2)
    assert facts == {
        "digitwise_equal": True,
        "block_indices": True,
        "congruence_chain": True,
        "size_inequality": True,
        "product_divisibility": True,
    }
    assert good.structure is facts
    assert good.left_values() == (177032, 10092)
    assert good.right_values() == (176943, 10181)
    assert [e.p for e in good.left] == [89, 31]
    assert [e.p for e in good.right] == [149, 7]

    # Same congruences, but the block sizes sit outside the inequality.
    shallow = by_total[205383]
    facts = check_collision_structure(shallow, basis, params, h=2)
    assert facts["digitwise_equal"] and facts["block_indices"]
    assert facts["congruence_chain"] and facts["product_divisibility"]
    assert facts["size_inequality"] is False

    # Every collision of this prefix satisfies the basis-free facts.
    for r in reports:
        f = check_collision_structure(r, basis, params, h=2)
        assert f["digitwise_equal"] and f["block_indices"] and f["congruence_chain"]


def test_structure_requires_digit_vectors():
    report = find_collisions([0, 1, 2, 3], 2)[0]
    with pytest.raises(MissingDigits):
        check_collision_structure(report, None, None)


def test_structure_rejects_window_violation(dense_fixture):
    basis, params, prefix = dense_fixture
    report = find_collisions(prefix.elements, 2)[0]
    e = report.left[0]
    broken = SidonElement(
        p=e.p, k=e.k,
        digits=DigitVector(e.k, (0,) + e.digits.digits[1:], h=2),
        value=e.value,
    )
    fake = CollisionReport(l=2, total=report.total,
                           left=(broken, report.left[1]), right=report.right)
    with pytest.raises(DigitOutOfRange):
        check_collision_structure(fake, basis, params, h=2)


def test_growth_brackets_default_prefix(sqrt5_params, default_basis):
    prefix = generate_blocks(6, sqrt5_params, default_basis)
    rows = growth_bracket_check(prefix)
    assert [row["k"] for row in rows] == [2, 3, 4, 5, 6]
    table = [(row["k"], row["count"], row["lower"], row["upper"]) for row in rows]
    assert table == [
        (2, 0, 0, 4),
        (3, 0, 0, 24),
        (4, 3, 3, 269),
        (5, 21, 21, 5484),
        (6, 264, 264, 207221),
    ]
    for row in rows:
        assert row["count_ok"] and row["elements_ok"]
        if row["count"] == 0:
            assert row["log2_ratio_approx"] is None  # vacuous block
        else:
            # diagnostic only: converges to c far beyond desk scale
            assert 0.0 < row["log2_ratio_approx"] < 1.0
        assert abs(row["c_target_approx"] - 0.381966) < 1e-5
