from __future__ import annotations

from functools import lru_cache

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from smallsum.checks import FAIL, REGISTRY, SKIP, Context
from smallsum.classifier import PairInstance, check_hypotheses, classify
from smallsum.groups import abelian_groups, all_subgroups, make_group, quotient
from smallsum.isoperimetry import kappa_bits
from smallsum.setops import SubsetMask, canonical_bits, period
from smallsum.verify import InstanceFilter, enumerate_instances

from conftest import tset, tsumset

GROUPS = abelian_groups(12)
SMALL = abelian_groups(10)
PROFILE = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def group_and_sets(draw, groups=GROUPS, count=2):
    g = make_group(draw(st.sampled_from(groups)))
    masks = [draw(st.integers(1, g.full)) for _ in range(count)]
    return g, masks


@PROFILE
@given(group_and_sets(count=3))
def test_sumset_is_commutative_associative_and_correct(data):
    g, (a, b, c) = data
    assert g.sumset(a, b) == g.sumset(b, a)
    assert g.sumset(g.sumset(a, b), c) == g.sumset(a, g.sumset(b, c))
    sa, sb = SubsetMask(g, a), SubsetMask(g, b)
    assert tset(sa + sb) == tsumset(g, tset(sa), tset(sb))


@PROFILE
@given(group_and_sets(count=1))
def test_period_is_a_stabilising_subgroup(data):
    g, (a,) = data
    h = period(SubsetMask(g, a))
    assert g.sumset(h.bits, h.bits) == h.bits
    assert g.sumset(a, h.bits) == a
    for x in range(g.order):
        if g.shift(a, x) == a:
            assert h.bits >> x & 1


@PROFILE
@given(group_and_sets(count=1), st.integers(0, 11))
def test_canonical_mask_is_translation_invariant(data, x):
    g, (a,) = data
    x %= g.order
    assert canonical_bits(g, g.shift(a, x)) == canonical_bits(g, a)


@PROFILE
@given(group_and_sets(count=2))
def test_quotient_is_a_homomorphism(data):
    g, (a, b) = data
    for h in all_subgroups(g):
        phi = quotient(g, h)
        assert phi.target.order * h.order == g.order
        assert phi.image(g.sumset(a, b)) == phi.target.sumset(phi.image(a), phi.image(b))


@PROFILE
@given(group_and_sets(groups=abelian_groups(14), count=1), st.integers(1, 4))
def test_seeded_kappa_agrees_with_full_scan(data, k):
    g, (s,) = data
    s |= 1
    assume(g.order >= 2 * k - 1)
    a = kappa_bits(g, s, k, "exact")
    b = kappa_bits(g, s, k, "seeded")
    assert (a.kappa, a.separable) == (b.kappa, b.separable)
    assert set(b.atom_bits) <= set(a.fragment_bits) or not a.separable


@PROFILE
@given(group_and_sets(groups=SMALL, count=1), st.integers(1, 3))
def test_fragments_meet_the_definition(data, k):
    g, (s,) = data
    s |= 1
    assume(g.order >= 2 * k - 1)
    rep = kappa_bits(g, s, k)
    if not rep.separable:
        assert rep.kappa == g.order - 2 * k + 1 and not rep.fragment_bits
    for x in rep.fragment_bits:
        xs = g.sumset(x, s)
        assert x.bit_count() >= k and g.order - xs.bit_count() >= k
        assert xs.bit_count() - x.bit_count() == rep.kappa



@PROFILE
@given(group_and_sets(groups=SMALL, count=1), st.integers(2, 4))
def test_equal_levels_share_fragments(data, k):
    g, (s,) = data
    s |= 1
    assume(g.order >= 2 * k - 1)
    hi, lo = kappa_bits(g, s, k), kappa_bits(g, s, k - 1)
    assert lo.kappa <= hi.kappa or not hi.separable
    if hi.separable and hi.kappa == lo.kappa:
        assert set(hi.fragment_bits) <= set(lo.fragment_bits)

THEOREM_IDS = ["3x3", "n4", "n3", "kemperman", "grynkiewicz", "twothird", "modular"]


@lru_cache(maxsize=None)
def _pool(theorem: str) -> list[PairInstance]:
    f = InstanceFilter(max_order=10, theorem=theorem)
    return [i for i in enumerate_instances(f) if check_hypotheses(theorem, i) is None]


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(THEOREM_IDS), st.integers(0, 10**6), st.integers(0, 11), st.integers(0, 11))
def test_classifier_verdicts_are_verified_and_translation_invariant(theorem, pick, x, y):
    pool = _pool(theorem)
    inst = pool[pick % len(pool)]
    g = inst.group
    v = classify(theorem, inst)
    assert v.verified, v.failures
    # T moves freely; S keeps 0 only when moved by 0, so shift it and compare hypotheses
    moved = PairInstance.of(g, inst.S.bits, g.shift(inst.T.bits, x % g.order), inst.mu)
    assert check_hypotheses(theorem, moved) is None
    w = classify(theorem, moved)
    assert w.verified, w.failures
    assert set(v.case_labels()) == set(w.case_labels())
    shifted = PairInstance.of(g, g.shift(inst.S.bits, y % g.order), inst.T.bits, inst.mu)
    if theorem in ("3x3", "n3", "kemperman", "grynkiewicz"):
        assert check_hypotheses(theorem, shifted) is None
        assert classify(theorem, shifted).verified


@PROFILE
@given(group_and_sets(groups=SMALL, count=2), st.sampled_from(["kneser", "scherk", "duality", "vominus",
                                                                 "chowla", "strongip", "prehistorical"]))
def test_pair_statements_hold_on_random_instances(data, theorem):
    g, (s, t) = data
    mu = s.bit_count() + t.bit_count() - g.sumset(s, t).bit_count()
    out = REGISTRY[theorem].run(PairInstance.of(g, s, t, mu), Context())
    assert out.status in ("pass", SKIP)
    assert out.status != FAIL
