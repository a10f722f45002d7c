from __future__ import annotations

import pytest

from smallsum.classifier import (
    PairInstance,
    classify,
    classify_3x3,
    classify_modular,
    classify_n_minus_3,
    classify_n_minus_4,
    classify_near_progression,
    classify_two_third,
    grynkiewicz_classify,
    kemperman_partition,
)
from smallsum.errors import HypothesisError
from smallsum.groups import Element, make_group
from smallsum.oracle import n3_cases
from smallsum.recheck import recheck

from conftest import brute_kappa, cyclic, subset, tset, tsumset


def pair(g, s, t, mu=0):
    return PairInstance(g, subset(g, *s), subset(g, *t), mu)


def test_3x3_translate_branch():
    g = cyclic(7)
    inst = pair(g, (0, 1, 3), (0, 1, 3))
    assert len(tsumset(g, tset(inst.S), tset(inst.T))) == 6
    v = classify_3x3(inst)
    assert v.case == "translate" and v.verified
    assert v.cases[0].witness["a"].idx == 0


def test_3x3_progression_branch():
    g = cyclic(7)
    v = classify_3x3(pair(g, (0, 1, 2), (0, 1, 3)))
    assert v.case == "progression" and v.verified


def test_3x3_rejects_periodic_sumset():
    # {0,1,2}+{0,2,4} is all of Z_7, which is periodic
    with pytest.raises(HypothesisError):
        classify_3x3(pair(cyclic(7), (0, 1, 2), (0, 2, 4)))


def test_3x3_rejects_large_sumset():
    with pytest.raises(HypothesisError):
        classify_3x3(pair(cyclic(9), (0, 1, 2), (0, 3, 6)))


def test_two_third_case_i_at_order_twelve():
    g = cyclic(12)
    inst = pair(g, (0, 1, 3, 4), (0, 1, 2, 3))
    assert 4 * brute_kappa(g, tset(inst.T), 2) == 12
    v = classify_two_third(inst)
    assert "i" in v.case_labels() and v.verified


def test_two_third_essential_case():
    g = cyclic(12)
    v = classify_two_third(pair(g, (0, 1, 2, 6), (0, 1, 2, 6)))
    assert v.case == "ii" and v.verified
    assert v.cases[0].witness["kind"] in ("i", "ii", "iii")


def test_two_third_decomposition_case():
    g = cyclic(8)
    v = classify_two_third(pair(g, (0, 1, 4), (0, 1, 4), mu=1))
    assert v.case == "iii" and v.verified


def test_modular_cases():
    g = cyclic(8)
    v = classify_modular(pair(g, (0, 1, 4), (0, 1, 4), mu=1))
    assert v.case == "ii" and v.verified
    v = classify_modular(pair(cyclic(12), (0, 1, 3, 4), (0, 1, 2, 3)))
    assert "i" in v.case_labels()


def test_near_progression_exact():
    v = classify_near_progression(subset(cyclic(11), 0, 1, 2, 3), 1)
    assert v.verified and v.cases[0].witness["r"].idx in (1, 10)
    assert v.cases[0].witness["j"] == 0


def test_near_progression_with_gap():
    g = cyclic(11)
    s = subset(g, 0, 1, 3)
    assert brute_kappa(g, tset(s), 3) <= 3
    assert brute_kappa(g, tset(s), 4) <= 3
    v = classify_near_progression(s, 0)
    assert v.verified and v.cases[0].witness["j"] == 1


def test_near_rejects_degenerate():
    with pytest.raises(HypothesisError):
        classify_near_progression(subset(cyclic(12), 0, 3, 6, 9, 1), 1)


def test_n4_common_progression():
    g = cyclic(13)
    inst = pair(g, (0, 2, 3), (0, 2, 3, 4))
    assert len(tsumset(g, tset(inst.S), tset(inst.T))) == 7
    v = classify_n_minus_4(inst)
    assert v.case == "i" and v.verified


def test_n4_set_in_proper_subgroup():
    g = cyclic(12)
    v = classify_n_minus_4(pair(g, (0, 3, 6), (0, 1, 3, 6)))
    assert v.case == "ii" and v.verified
    assert sorted(x[0] for x in v.to_dict()["cases"][0]["witness"]["H"]) == [0, 3, 6, 9]


def test_n3_complement_branch():
    g = cyclic(9)
    s = {0, 1, 3}
    two_s = {(a + b) % 9 for a in s for b in s}
    t = tuple(sorted(set(range(9)) - {(-x) % 9 for x in two_s}))
    inst = pair(g, tuple(s), t)
    v = classify_n_minus_3(inst)
    assert v.verified
    branches = {b["branch"] for b in v.cases[0].witness["branches"]}
    assert "complement" in branches
    assert set(v.case_labels()) == set(n3_cases(inst))


def test_n3_translate_branch():
    # in Z_7 the sumset is too large for the n-3 bound, so lift to Z_10
    with pytest.raises(HypothesisError):
        classify_n_minus_3(pair(cyclic(7), (0, 1, 3), (0, 1, 3)))
    inst = pair(cyclic(10), (0, 1, 3), (2, 3, 5))
    v = classify_n_minus_3(inst)
    assert v.case == "i" and v.verified
    branch = v.cases[0].witness["branches"][0]
    assert branch["branch"] == "translate" and branch["a"].idx == 2


def test_n3_essential_case():
    g = cyclic(9)
    inst = pair(g, (0, 1, 3), (1, 2, 4))
    v = classify_n_minus_3(inst)
    assert "iii" in v.case_labels() and v.verified
    assert set(v.case_labels()) == set(n3_cases(inst))


def test_kemperman_common_difference():
    g = cyclic(11)
    v = kemperman_partition(subset(g, 0, 1, 2), subset(g, 0, 1))
    assert v.verified
    w = v.cases[0].witness
    assert w["H"].order == 1 and w["A1"].cardinality == 1 and w["B1"].cardinality == 1


def test_kemperman_quasi_periodic_partition():
    g = cyclic(12)
    a = subset(g, 0, 6, 1)
    v = kemperman_partition(a, a)
    assert v.verified
    w = v.cases[0].witness
    assert w["A0"].bits | w["A1"].bits == a.bits


def test_kemperman_rejects_mu_zero():
    g = cyclic(11)
    with pytest.raises(HypothesisError):
        kemperman_partition(subset(g, 0, 1, 3), subset(g, 0, 1, 3))


def test_grynkiewicz_cases():
    g = cyclic(9)
    v = grynkiewicz_classify(subset(g, 0, 1, 2), subset(g, 0, 1, 3))
    assert "2" in v.case_labels() and v.verified
    v = grynkiewicz_classify(subset(g, 0, 1, 3), subset(g, 0, 1, 3))
    assert "1" in v.case_labels() and v.verified


def test_grynkiewicz_klein_pair():
    g = make_group([2, 6])
    s = subset(g, (0, 0), (0, 1), (0, 4), (1, 0))
    v = grynkiewicz_classify(s, s)
    assert "4" in v.case_labels() and v.verified
    assert v.cases[v.case_labels().index("4")].witness["H"].order == 4


def test_verdicts_carry_recheck_results():
    inst = pair(cyclic(10), (0, 1, 3), (2, 3, 5))
    v = classify("n3", inst)
    assert recheck(inst, v) == []
    branch = v.cases[0].witness["branches"][0]
    branch["a"] = Element((branch["a"].idx + 1) % 10, inst.group)
    assert recheck(inst, v)


def test_round_trip_of_instances():
    inst = pair(make_group([2, 6]), ((0, 0), (1, 3)), ((0, 1),), 1)
    assert PairInstance.from_dict(inst.to_dict()) == inst


def test_unknown_theorem():
    with pytest.raises(Exception):
        classify("nope", pair(cyclic(7), (0, 1, 3), (0, 1, 3)))
