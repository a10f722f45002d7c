from __future__ import annotations

import pytest

from smallsum.groups import all_subgroups, make_group
from smallsum.oracle import essential_kinds
from smallsum.recheck import _G
from smallsum.setops import SubsetMask
from smallsum.structure import (
    classify_essential_pair,
    detect_progression,
    h_decompose,
    is_h_minus_periodic,
    is_vosper,
    quasi_periodic_partitions,
)

from conftest import cyclic, subset, tset, tsumset


def _subgroup(g, bits):
    return next(h for h in all_subgroups(g) if h.bits == bits)


def test_progression_detection_in_z7():
    g = cyclic(7)
    a = subset(g, 0, 1, 3)
    ws = detect_progression(a, j_max=1)
    assert not any(w.j == 0 for w in ws)
    assert any(w.j == 1 and w.difference in (1, 6) for w in ws)
    for w in ws:
        assert w.members() == a.bits
        assert g.element_order(w.difference) >= a.cardinality + w.j


def test_exact_progression_and_singleton(z6):
    ws = detect_progression(subset(z6, 0, 2, 4), j_max=0)
    assert any(w.difference in (2, 4) and w.j == 0 for w in ws)
    (w,) = detect_progression(subset(z6, 3))
    assert w.wildcard and w.members() == 1 << 3


def test_h_decompose_examples(z6):
    h = _subgroup(z6, 0b1001)
    dec = h_decompose(subset(z6, 0, 1, 4), h)
    assert sorted(dec.masks) == [0b1, 0b10010]
    assert dec.is_progression
    assert h_decompose(SubsetMask(z6, h.bits), h).masks == [h.bits]
    full = h_decompose(subset(z6, 0, 1, 2), h)
    assert full.is_progression and len(full.masks) == 3


def test_h_progression_consecutive_parts_link(z6):
    h = _subgroup(z6, 0b1001)
    dec = h_decompose(subset(z6, 0, 1, 4, 2), h)
    parts = dec.masks
    for a, b in zip(parts, parts[1:]):
        ah, bh = z6.sumset(a, h.bits), z6.sumset(b, h.bits)
        assert any(z6.shift(ah, d) == bh for d in range(6))


def test_essential_pair_kind_i(z6):
    h = _subgroup(z6, 0b1001)
    s = subset(z6, 0, 1, 4, 2)
    assert z6.sumset(s.bits, h.bits).bit_count() - s.cardinality == h.order
    w = classify_essential_pair(s, s, h)
    assert w is not None and w.kind == "i"
    G = _G([6])
    assert "i" in essential_kinds(G, tset(s), tset(s), frozenset({(0,), (3,)}))


def test_essential_pair_klein_kind_iii():
    g = make_group([2, 2, 3])
    h = _subgroup(g, sum(1 << g.encode((a, b, 0)) for a in (0, 1) for b in (0, 1)))
    s = subset(g, (0, 0, 0), (1, 0, 0), (0, 0, 1), (0, 1, 1))
    w = classify_essential_pair(s, s, h)
    assert w is not None and w.kind == "iii"
    assert g.sumset(w.K0, w.K1) == h.bits
    G = _G([2, 2, 3])
    hs = frozenset(tuple(t) for t in SubsetMask(g, h.bits).tuples())
    ts = tset(s)
    assert "iii" in essential_kinds(G, ts, ts, hs)


def test_essential_pair_needs_full_defect(z6):
    h = _subgroup(z6, 0b1001)
    s = subset(z6, 0, 3, 1)
    assert z6.sumset(s.bits, h.bits).bit_count() - s.cardinality != h.order
    assert classify_essential_pair(s, s, h) is None


def _vosper_brute(g, s):
    n = g.order
    ss = tset(s)
    elts = [tuple(t) for t in SubsetMask.whole(g).tuples()]
    for m in range(1 << n):
        x = {elts[i] for i in range(n) if m >> i & 1}
        if len(x) >= 2 and len(tsumset(g, x, ss)) < min(n - 1, len(x) + len(ss)):
            return False
    return True


@pytest.mark.parametrize("n,elems", [(5, (0, 1, 3)), (7, (0, 1, 3)), (8, (0, 4)), (6, (0, 1)), (9, (0, 1, 4))])
def test_vosper_matches_definition(n, elems):
    g = cyclic(n)
    s = subset(g, *elems)
    assert is_vosper(s) == _vosper_brute(g, s)


def test_vosper_edge_cases():
    g = cyclic(8)
    assert is_vosper(SubsetMask.whole(g))
    assert not is_vosper(subset(g, 0, 4))


def test_quasi_periodic_partitions(z6):
    h = _subgroup(z6, 0b10101)
    (p,) = quasi_periodic_partitions(subset(z6, 1, 3, 5), h)
    assert p.A0 == 0 and p.A1 == 0b101010
    parts = quasi_periodic_partitions(subset(z6, 0, 2, 4, 1), h)
    assert [(q.A0, q.A1) for q in parts] == [(0b10101, 0b10)]
    assert quasi_periodic_partitions(subset(z6, 0, 2, 1, 3), h) == []


def test_h_minus_periodic(z6):
    h = _subgroup(z6, 0b1001)
    assert is_h_minus_periodic(z6, 0b1001, h, 0)
    assert is_h_minus_periodic(z6, 0b1, h, 1)
    assert not is_h_minus_periodic(z6, 0b1, h, 0)
    assert is_h_minus_periodic(z6, 0, h, 2)
