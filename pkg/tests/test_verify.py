from __future__ import annotations

import pytest

from smallsum.checks import REGISTRY, Context
from smallsum.classifier import PairInstance
from smallsum.groups import make_group
from smallsum.errors import SmallSumError
from smallsum.mutation import generate_mutants, installed
from smallsum.verify import (
    BudgetExceeded,
    Counterexample,
    InstanceFilter,
    dedupe_minimized,
    enumerate_instances,
    minimize,
    verify_theorem,
)


def _strip_timing(records):
    out = []
    for r in records:
        r = dict(r)
        r.pop("wall_time", None)
        r.pop("workers", None)
        out.append(r)
    return out


def test_group_list_up_to_eight():
    f = InstanceFilter(max_order=8)
    assert f.group_list() == [[2], [3], [4], [2, 2], [5], [6], [7], [8], [2, 4], [2, 2, 2]]


def test_exhaustive_pairs_in_z6_are_fewer_than_raw():
    f = InstanceFilter(groups=[[6]], theorem="kneser")
    insts = list(enumerate_instances(f))
    assert 0 < len(insts) <= 64 * 64
    assert len(insts) < 63 * 63
    assert all(i.S.bits & 1 and i.T.bits & 1 for i in insts)
    for i in insts:
        g = i.group
        assert i.mu == i.S.cardinality + i.T.cardinality - g.sumset(i.S.bits, i.T.bits).bit_count()


def test_random_sampling_is_exact_and_reproducible():
    f = InstanceFilter(max_order=10, theorem="kneser", sampling="random", seed=1, count=1000)
    a = [i.to_dict() for i in enumerate_instances(f)]
    b = [i.to_dict() for i in enumerate_instances(f)]
    assert len(a) == 1000 and a == b
    c = [i.to_dict() for i in enumerate_instances(InstanceFilter(
        max_order=10, theorem="kneser", sampling="random", seed=2, count=1000))]
    assert a != c


def test_budget_refusal_carries_estimate():
    with pytest.raises(BudgetExceeded) as exc:
        verify_theorem("kneser", InstanceFilter(max_order=10, budget=1000))
    assert exc.value.estimate > 1000
    assert "random sampling" in str(exc.value)


def test_unknown_theorem():
    with pytest.raises(SmallSumError):
        verify_theorem("fermat", InstanceFilter(max_order=5))


def test_kneser_small_sweep_passes():
    r = verify_theorem("kneser", InstanceFilter(max_order=8))
    assert r.passed and r.checked > 0 and not r.violations
    assert r.summary()["pass"] is True


def test_report_is_deterministic():
    f = lambda: InstanceFilter(max_order=9, oracle=True)  # noqa: E731
    a = verify_theorem("n3", f()).jsonl_records()
    b = verify_theorem("n3", f()).jsonl_records()
    assert _strip_timing(a) == _strip_timing(b)


def test_one_and_two_workers_agree():
    a = verify_theorem("grynkiewicz", InstanceFilter(max_order=10), workers=1)
    b = verify_theorem("grynkiewicz", InstanceFilter(max_order=10), workers=2)
    assert _strip_timing(a.jsonl_records()) == _strip_timing(b.jsonl_records())


def test_random_mode_report():
    r = verify_theorem("kneser", InstanceFilter(max_order=9, sampling="random", seed=3, count=300))
    assert r.checked + r.skipped == 300 and r.passed


def _mutant(name):
    return next(m for m in generate_mutants() if m.name == name)


def test_minimize_shrinks_injected_violation():
    ctx = Context(oracle=True)
    with installed(_mutant("decomposition_case#0")):
        r = verify_theorem("n3", InstanceFilter(groups=[[10]], oracle=True))
        assert r.violations
        raw = max(r.violations, key=lambda v: len(v.instance["S"]) + len(v.instance["T"]))
        small = minimize(raw, ctx)
        assert small.minimized and small.clause == raw.clause
        size = lambda c: len(c.instance["S"]) + len(c.instance["T"])  # noqa: E731
        assert size(small) <= size(raw)
        again = minimize(small, ctx)
        assert again.instance == small.instance and again.clause == small.clause
        assert len(dedupe_minimized([small, again])) == 1


def test_minimize_refuses_non_failing_instance():
    c = Counterexample({"group": [7], "S": [[0], [1], [3]], "T": [[0], [1], [3]], "mu": 0}, "kneser", "x")
    with pytest.raises(SmallSumError):
        minimize(c)


def test_restrict_and_project_reencode_groups():
    from smallsum.classifier import PairInstance
    from smallsum.groups import all_subgroups, make_group
    from smallsum.verify import _project, _restrict, find_isomorphism

    g = make_group([12])
    inst = PairInstance.of(g, 0b101, 0b10001, 0)
    k = next(h for h in all_subgroups(g) if h.order == 6)
    small = _restrict(inst, k)
    assert small.group.factors == (6,) and small.S.cardinality == 2
    h = next(h for h in all_subgroups(g) if h.order == 2)
    assert _project(inst, h).group.order == 6
    g2 = make_group([2, 6])
    klein = next(h for h in all_subgroups(g2) if h.order == 4)
    spec, m = find_isomorphism(g2, list(klein), g2.add)
    assert spec.factors == (2, 2) and sorted(m.values()) == [0, 1, 2, 3]


def test_minimize_shrinks_the_group(monkeypatch):
    from smallsum.checks import REGISTRY, Check, fail, ok

    def has_involution(inst, ctx):
        g = inst.group
        if any(x and g.add(x, x) == 0 for x in inst.S):
            return fail("involution")
        return ok()

    monkeypatch.setitem(REGISTRY, "fake", Check("fake", "pair", has_involution))
    c = Counterexample({"group": [2, 6], "S": [[0, 0], [0, 1], [1, 3], [1, 4]], "T": [[0, 0], [0, 2]], "mu": 0},
                       "fake", "involution")
    small = minimize(c)
    assert small.instance["group"] == [2]
    assert small.clause == "involution"


@pytest.mark.parametrize("theorem", sorted(REGISTRY))
def test_every_check_passes_at_small_order(theorem):
    report = verify_theorem(theorem, InstanceFilter(max_order=8))
    assert report.passed, [v.to_dict() for v in report.violations[:3]]


def test_matching_target_is_capped_by_index_range():
    from smallsum.isoperimetry import matching_bits, subgroup_two_fragments

    g = make_group([8])
    s, t = 0b10111, 0b1  # S = {0,1,2,4}, T = {0}
    h = next(h for h in subgroup_two_fragments(g, s) if h.order == 2)
    m = matching_bits(g, t, s, h)
    assert (m.u, m.t, m.size) == (2, 0, 1)
    out = REGISTRY["strongip"].run(PairInstance.of(g, s, t, 0), Context())
    assert out.status == "pass" and "capped at t+1" in out.cases


def test_monotone_ignores_non_separable_levels():
    from smallsum.isoperimetry import kappa_bits

    g = make_group([3])
    assert kappa_bits(g, 0b011, 1).kappa == 1
    assert kappa_bits(g, 0b011, 2).kappa == 0  # conventional value for a non-separable level
    out = REGISTRY["monotone"].run(PairInstance.of(g, 0b011, 0, 0), Context())
    assert out.status == "pass"
