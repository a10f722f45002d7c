from __future__ import annotations

import numpy as np
import pytest

from smallsum.groups import make_group
from smallsum.setops import (
    SubsetMask,
    boundary,
    canonical_bits,
    canonical_masks,
    exterior,
    is_aperiodic,
    is_generating,
    normalize,
    parse_subset,
    period,
    sumset,
)

from conftest import elements, subset, tset, tsumset


def test_sumset_in_z5():
    g = make_group([5])
    assert sorted(sumset(subset(g, 0, 1), subset(g, 0, 2))) == [0, 1, 2, 3]


def test_sumset_identity_and_empty(z6):
    a = subset(z6, 1, 4, 5)
    assert sumset(a, subset(z6, 0)) == a
    assert not sumset(a, SubsetMask.empty(z6))


@pytest.mark.parametrize("factors", [[7], [2, 4], [3, 3], [2, 2, 3]])
def test_sumset_matches_tuple_arithmetic(factors):
    g = make_group(factors)
    elts = elements(g)
    for a_bits in (0b1011, 0b110001, 0b1000000011):
        for b_bits in (0b101, 0b11100, 0b100000001):
            a = SubsetMask(g, a_bits & g.full)
            b = SubsetMask(g, b_bits & g.full)
            assert tset(a + b) == tsumset(g, tset(a), tset(b))
    assert len(elts) == g.order


def test_boundary_and_exterior_examples(z6):
    s = subset(z6, 0, 1)
    assert sorted(boundary(s, subset(z6, 0))) == [1]
    assert not boundary(s, SubsetMask.whole(z6))
    assert not boundary(subset(z6, 0), subset(z6, 2, 5))
    assert sorted(exterior(s, subset(z6, 0, 1))) == [3, 4, 5]
    assert exterior(s, SubsetMask.empty(z6)) == SubsetMask.whole(z6)
    assert not exterior(s, subset(z6, 0, 2, 4))


def test_period_examples():
    g = make_group([4])
    assert sorted(period(subset(g, 0, 2))) == [0, 2]
    assert sorted(period(subset(g, 0, 1))) == [0]
    assert period(SubsetMask.whole(g)).order == 4
    assert is_aperiodic(subset(g, 0, 1))
    assert not is_aperiodic(subset(g, 1, 3))


def test_normalize_examples(z6):
    star, shift = normalize(subset(z6, 2, 3, 5))
    assert sorted(star) == [0, 1, 3] and shift.idx == 2
    star, shift = normalize(subset(z6, 0, 4))
    assert sorted(star) == [0, 4] and shift.idx == 0
    star, shift = normalize(subset(z6, 4))
    assert sorted(star) == [0] and shift.idx == 4


def test_is_generating_examples(z6):
    assert is_generating(subset(z6, 0, 1))
    assert not is_generating(subset(z6, 0, 2))
    assert is_generating(SubsetMask.whole(make_group([1])))


def test_canonical_masks_cover_every_translation_class():
    g = make_group([2, 3])
    reps = set(int(x) for x in canonical_masks(g))
    assert all(r & 1 for r in reps)
    seen = set()
    for m in range(1, 1 << g.order):
        c = canonical_bits(g, m)
        assert c in reps
        assert any(g.shift(m, x) == c for x in range(g.order))
        seen.add(c)
    assert seen == reps


def test_parse_subset_forms(z6):
    assert parse_subset(z6, "[[0]],[[1]]").bits == 0b11
    assert parse_subset(z6, "[[2],[5]]").bits == 0b100100
    assert parse_subset(z6, "[1, 3]").bits == 0b1010
    k = make_group([2, 3])
    assert parse_subset(k, "[[1,2],[0,1]]").bits == (1 << 5) | (1 << 1)


def test_mixing_groups_raises():
    a = subset(make_group([4]), 1)
    b = subset(make_group([2, 2]), 1)
    with pytest.raises(ValueError):
        a | b


def test_vectorised_sumset_matches_scalar():
    g = make_group([2, 6])
    arr = np.arange(1, 1 << g.order, 97, dtype=np.uint32)
    s = 0b100000100011
    got = g.sumset_array(arr, s)
    for m, v in zip(arr, got):
        assert int(v) == g.sumset(int(m), s)
