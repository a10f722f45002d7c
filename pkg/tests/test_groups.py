from __future__ import annotations

import pytest

from smallsum.groups import (
    abelian_groups,
    all_subgroups,
    make_group,
    parse_group,
    quotient,
    subgroup_generated,
)
from smallsum.setops import SubsetMask

from conftest import subset


def test_trivial_group_has_order_one():
    g = make_group([1])
    assert g.order == 1
    assert [h.bits for h in all_subgroups(g)] == [1]


def test_order_is_product_of_factors():
    assert make_group([2, 2, 3]).order == 12


def test_cyclic_addition_table():
    g = make_group([6])
    assert g.add(5, 3) == 2
    for a in range(6):
        for b in range(6):
            assert g.add(a, b) == (a + b) % 6
            assert g.neg(a) == (-a) % 6


def test_mixed_radix_addition_matches_coordinates():
    g = make_group([2, 4, 3])
    for a in range(g.order):
        for b in range(g.order):
            ca, cb = g.decode(a), g.decode(b)
            want = tuple((x + y) % d for x, y, d in zip(ca, cb, g.factors))
            assert g.decode(g.add(a, b)) == want


def test_first_factor_is_most_significant():
    g = make_group([2, 3])
    assert g.encode((1, 0)) == 3
    assert g.decode(1) == (0, 1)


def test_bad_factors_rejected():
    with pytest.raises(ValueError):
        make_group([0])
    with pytest.raises(ValueError):
        parse_group("2,x")


def test_subgroup_generated_examples():
    g = make_group([6])
    assert sorted(subgroup_generated(g, subset(g, 2).bits)) == [0, 2, 4]
    assert sorted(subgroup_generated(g, 0)) == [0]
    k = make_group([2, 2])
    gen = subgroup_generated(k, subset(k, (1, 0), (0, 1)).bits)
    assert gen.order == 4


def test_subgroups_of_z6():
    g = make_group([6])
    got = sorted(tuple(sorted(h)) for h in all_subgroups(g))
    assert got == [(0,), (0, 1, 2, 3, 4, 5), (0, 2, 4), (0, 3)]


def test_klein_group_lattice():
    subs = all_subgroups(make_group([2, 2]))
    assert sorted(h.order for h in subs) == [1, 2, 2, 2, 4]


@pytest.mark.parametrize("factors", [[12], [2, 6], [2, 2, 2], [3, 3], [2, 4], [16], [4, 4]])
def test_subgroups_are_closed_and_divide_order(factors):
    g = make_group(factors)
    for h in all_subgroups(g):
        assert h.bits & 1
        assert g.sumset(h.bits, h.bits) == h.bits
        assert g.negate(h.bits) == h.bits
        assert g.order % h.order == 0


def test_subgroup_counts_match_known_values():
    # Z_2^3 has 16 subgroups, Z_4 x Z_4 has 15, Z_12 has 6 (divisors)
    assert len(all_subgroups(make_group([2, 2, 2]))) == 16
    assert len(all_subgroups(make_group([4, 4]))) == 15
    assert len(all_subgroups(make_group([12]))) == 6


def test_quotient_by_order_two_in_z6():
    g = make_group([6])
    h = next(h for h in all_subgroups(g) if h.bits == 0b1001)
    phi = quotient(g, h)
    assert phi.target.order == 3
    assert phi(1) == phi(4)
    for a in range(6):
        for b in range(6):
            assert phi(g.add(a, b)) == phi.target.add(phi(a), phi(b))


def test_quotient_extremes():
    g = make_group([2, 3])
    subs = all_subgroups(g)
    triv = next(h for h in subs if h.order == 1)
    whole = next(h for h in subs if h.order == 6)
    assert quotient(g, triv).target.order == 6
    assert len(set(quotient(g, triv).table)) == 6
    assert quotient(g, whole).target.order == 1


def test_abelian_groups_up_to_eight():
    assert abelian_groups(8) == [[2], [3], [4], [2, 2], [5], [6], [7], [8], [2, 4], [2, 2, 2]]


def test_abelian_group_counts():
    counts = {}
    for f in abelian_groups(16):
        n = 1
        for d in f:
            n *= d
        counts[n] = counts.get(n, 0) + 1
    assert counts[16] == 5 and counts[12] == 2 and counts[8] == 3 and counts[9] == 2
    assert all(counts[p] == 1 for p in (2, 3, 5, 7, 11, 13))


def test_subset_mask_rejects_out_of_range_bits():
    g = make_group([4])
    with pytest.raises(ValueError):
        SubsetMask(g, 1 << 4)
