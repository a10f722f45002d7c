"""Total classifiers for the small-sumset structure theorems.

Each theorem has a hypothesis checker returning the first failed clause (or
None) and a classifier returning a :class:`StructureVerdict` listing every
case that holds, principal case first in statement order. Verdicts are
re-verified by :mod:`smallsum.recheck`, which shares no code with the search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from smallsum.errors import HypothesisError, NotSeparable, TheoremViolation
from smallsum.groups import AbelianGroup, Element, GroupSpec, Subgroup, all_subgroups, iter_bits, quotient
from smallsum.isoperimetry import (
    degenerate_bits,
    hyper_atom_candidates,
    hyper_atoms,
    kappa_bits,
    kappa_star,
)
from smallsum.setops import (
    SubsetMask,
    generated_bits,
    is_aperiodic_bits,
    is_periodic_by,
    normalize_bits,
)
from smallsum.structure import (
    detect_progression_bits,
    essential_pair_witnesses,
    h_progressions,
    is_h_minus_periodic,
    progression_differences,
    progression_orderings,
    quasi_periodic_partitions_bits,
    same_difference,
)

THEOREMS = ("3x3", "twothird", "modular", "near", "n4", "n3", "kemperman", "grynkiewicz")


@dataclass(frozen=True)
class PairInstance:
    group: AbelianGroup
    S: SubsetMask
    T: SubsetMask
    mu: int = 0

    @classmethod
    def of(cls, group: AbelianGroup, s_bits: int, t_bits: int = 0, mu: int = 0) -> PairInstance:
        return cls(group, SubsetMask(group, s_bits), SubsetMask(group, t_bits), mu)

    def to_dict(self) -> dict:
        g = self.group
        return {
            "group": list(g.factors) if isinstance(g, GroupSpec) else [g.order],
            "S": self.S.tuples(),
            "T": self.T.tuples(),
            "mu": self.mu,
        }

    @classmethod
    def from_dict(cls, data: dict) -> PairInstance:
        from smallsum.groups import make_group
        from smallsum.setops import parse_subset

        g = make_group(data["group"])
        return cls(g, parse_subset(g, data["S"]), parse_subset(g, data.get("T", [])), int(data.get("mu", 0)))


@dataclass
class CaseResult:
    case: str
    witness: dict


@dataclass
class StructureVerdict:
    theorem: str
    case: str | None
    cases: list[CaseResult] = field(default_factory=list)
    verified: bool = False
    failures: list[str] = field(default_factory=list)

    def case_labels(self) -> list[str]:
        return [c.case for c in self.cases]

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "case": self.case,
            "cases": [{"case": c.case, "witness": jsonify(c.witness)} for c in self.cases],
            "verified": self.verified,
            "failures": list(self.failures),
        }


def jsonify(obj):
    if isinstance(obj, SubsetMask):
        return obj.tuples()
    if isinstance(obj, Subgroup):
        return SubsetMask(obj.group, obj.bits).tuples()
    if isinstance(obj, Element):
        return list(obj.coords())
    if isinstance(obj, dict):
        return {k: jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonify(v) for v in obj]
    return obj


# -- shared quantities ---------------------------------------------------------------------


def _size(x: int) -> int:
    return x.bit_count()


def star_union_generates(g: AbelianGroup, s: int, t: int) -> bool:
    s0, _ = normalize_bits(g, s)
    t0, _ = normalize_bits(g, t)
    return generated_bits(g, s0 | t0) == g.full


def phi_size(g: AbelianGroup, bits: int, h: Subgroup) -> int:
    return g.sumset(bits, h.bits).bit_count() // h.order


@lru_cache(maxsize=65536)
def super_atom_masks(g: AbelianGroup, bits: int) -> frozenset[int]:
    """Masks of every super-atom of the set (hyper-atoms counted up to inclusion)."""
    star, _ = normalize_bits(g, bits)
    gen = generated_bits(g, star)
    if gen != g.full:
        return frozenset({gen})
    try:
        return frozenset(h.bits for h in hyper_atoms(g, star))
    except NotSeparable:
        return frozenset()


def super_atom_roles(g: AbelianGroup, h: Subgroup, s: int, t: int) -> list[str]:
    roles = []
    if h.bits in super_atom_masks(g, s):
        roles.append("S")
    ext = g.full & ~g.sumset(s, t)
    if ext and h.bits in super_atom_masks(g, ext):
        roles.append("T^S")
    return roles


def _proper_subgroups(g: AbelianGroup) -> list[Subgroup]:
    return [h for h in all_subgroups(g) if h.bits != g.full]


def _mask(g: AbelianGroup, bits: int) -> SubsetMask:
    return SubsetMask(g, bits)


# -- hypothesis checkers -----------------------------------------------------------------------


def _common_pair_clauses(g, s, t, mu) -> str | None:
    if mu not in (0, 1):
        return "mu in {0,1}"
    if not s or not t:
        return "S, T nonempty"
    st = g.sumset(s, t)
    if not is_aperiodic_bits(g, st):
        return "S+T aperiodic"
    if _size(st) != _size(s) + _size(t) - mu:
        return "|S+T| = |S|+|T|-mu"
    return None


def _size_ladder(s: int, t: int, mu: int) -> str | None:
    if _size(s) < 3 - mu:
        return "3-mu <= |S|"
    if max(4 - 2 * mu, _size(s)) > _size(t):
        return "max(4-2mu,|S|) <= |T|"
    return None


def hyp_3x3(inst: PairInstance) -> str | None:
    g, s, t, mu = inst.group, inst.S.bits, inst.T.bits, inst.mu
    if _size(s) != 3 or _size(t) != 3:
        return "|S| = |T| = 3"
    return _common_pair_clauses(g, s, t, mu)


def hyp_twothird(inst: PairInstance) -> str | None:
    g, s, t, mu = inst.group, inst.S.bits, inst.T.bits, inst.mu
    if mu not in (0, 1):
        return "mu in {0,1}"
    if not s & 1:
        return "0 in S"
    if generated_bits(g, s) != g.full:
        return "S generates G"
    bad = _size_ladder(s, t, mu)
    if bad:
        return bad
    bad = _common_pair_clauses(g, s, t, mu)
    if bad:
        return bad
    if 3 * _size(g.sumset(s, t)) > 2 * g.order + 2 * mu:
        return "|S+T| <= (2|G|+2mu)/3"
    if not degenerate_bits(g, s):
        return "S degenerate"
    return None


def hyp_near(inst: PairInstance) -> str | None:
    g, s, mu = inst.group, inst.S.bits, inst.mu
    n = g.order
    if mu not in (0, 1):
        return "mu in {0,1}"
    if not s & 1:
        return "0 in S"
    if generated_bits(g, s) != g.full:
        return "S generates G"
    if _size(s) < 3:
        return "3 <= |S|"
    if 2 * _size(s) > n + 5 * mu - 4:
        return "|S| <= (|G|+5mu-4)/2"
    k = 3 - mu
    if n < 2 * k - 1 or kappa_bits(g, s, k).kappa > _size(s) - mu:
        return "kappa_{3-mu}(S) <= |S|-mu"
    if _size(s) == 3 and mu == 0:
        if n < 7 or kappa_bits(g, s, 4).kappa > _size(s):
            return "kappa_4(S) <= |S| when |S| = 3"
    if degenerate_bits(g, s):
        return "S non-degenerate"
    return None


def hyp_n4(inst: PairInstance) -> str | None:
    g, s, t, mu = inst.group, inst.S.bits, inst.T.bits, inst.mu
    if mu not in (0, 1):
        return "mu in {0,1}"
    if not s or not t:
        return "S, T nonempty"
    if not star_union_generates(g, s, t):
        return "G = <S* u T*>"
    bad = _size_ladder(s, t, mu) or _common_pair_clauses(g, s, t, mu)
    if bad:
        return bad
    if _size(g.sumset(s, t)) > g.order - 4 + 2 * mu:
        return "|S+T| <= |G|-4+2mu"
    return None


def hyp_n3(inst: PairInstance) -> str | None:
    g, s, t, mu = inst.group, inst.S.bits, inst.T.bits, inst.mu
    if mu not in (0, 1):
        return "mu in {0,1}"
    if not s or not t:
        return "S, T nonempty"
    if not star_union_generates(g, s, t):
        return "G = <S* u T*>"
    if _size(s) < 3 - mu:
        return "3-mu <= |S|"
    if _size(s) > _size(t):
        return "|S| <= |T|"
    bad = _common_pair_clauses(g, s, t, mu)
    if bad:
        return bad
    if _size(g.sumset(s, t)) > g.order - 3 - mu:
        return "|S+T| <= |G|-3-mu"
    return None


def hyp_kemperman(inst: PairInstance) -> str | None:
    g, a, b = inst.group, inst.S.bits, inst.T.bits
    if not a or not b:
        return "A, B nonempty"
    ab = g.sumset(a, b)
    if _size(ab) != _size(a) + _size(b) - 1:
        return "|A+B| = |A|+|B|-1"
    if _size(ab) > g.order - 2:
        return "|A+B| <= |G|-2"
    if not is_aperiodic_bits(g, ab):
        return "A+B aperiodic"
    return None


def hyp_grynkiewicz(inst: PairInstance) -> str | None:
    g, a, b = inst.group, inst.S.bits, inst.T.bits
    if not a or not b:
        return "A, B nonempty"
    if not 3 <= _size(a) <= _size(b):
        return "3 <= |A| <= |B|"
    ab = g.sumset(a, b)
    if _size(ab) != _size(a) + _size(b):
        return "|A+B| = |A|+|B|"
    if _size(ab) > g.order - 3:
        return "|A+B| <= |G|-3"
    if not is_aperiodic_bits(g, ab):
        return "A+B aperiodic"
    return None


HYPOTHESES: dict[str, Callable[[PairInstance], str | None]] = {
    "3x3": hyp_3x3,
    "twothird": hyp_twothird,
    "modular": hyp_twothird,
    "near": hyp_near,
    "n4": hyp_n4,
    "n3": hyp_n3,
    "kemperman": hyp_kemperman,
    "grynkiewicz": hyp_grynkiewicz,
}


def check_hypotheses(theorem: str, inst: PairInstance) -> str | None:
    return HYPOTHESES[theorem](inst)


# -- case searches -------------------------------------------------------------------------------


def _progression_witness(g, bits, r, j) -> dict | None:
    for w in detect_progression_bits(g, bits, j):
        if w.wildcard:
            return {"start": Element(w.start, g), "length": 1, "deleted": []}
        if w.j == j and w.difference in (r, g.neg(r)):
            # reorient so the witness uses r itself
            if w.difference != r:
                last = g.add(w.start, g.mul(w.length - 1, w.difference))
                return {"start": Element(last, g), "length": w.length,
                        "deleted": [Element(d, g) for d in w.deleted]}
            return {"start": Element(w.start, g), "length": w.length,
                    "deleted": [Element(d, g) for d in w.deleted]}
    return None


def common_progression_case(g, s, t, j) -> dict | None:
    """Both sets are (r,-j)-progressions for one r."""
    ds = progression_differences(g, s, j)
    dt = progression_differences(g, t, j)
    if ds is None and dt is None:
        cands = list(range(1, g.order))
    elif ds is None:
        cands = sorted(dt)
    elif dt is None:
        cands = sorted(ds)
    else:
        cands = sorted(ds & dt)
    for r in cands:
        ws = _progression_witness(g, s, r, j)
        wt = _progression_witness(g, t, r, j)
        if ws and wt:
            return {"r": Element(r, g), "j": j, "S": ws, "T": wt}
    return None


def three_term_case(g, s, t) -> list[CaseResult]:
    out = []
    for which, bits in (("S", s), ("T", t)):
        diffs = progression_differences(g, bits, 0)
        if diffs:
            out.append(CaseResult("progression", {"which": which, "r": Element(min(diffs), g)}))
    return out


def translate_witness(g, s, t) -> int | None:
    s0 = (s & -s).bit_length() - 1
    for x in iter_bits(t):
        a = g.sub(x, s0)
        if g.shift(s, a) == t:
            return a
    return None


def complement_witness(g, s, t) -> int | None:
    """An a with T = G \\ (-a - 2S)."""
    two_s = g.sumset(s, s)
    target = g.full & ~t
    neg2s = g.negate(two_s)
    for a in range(g.order):
        if g.shift(neg2s, g.neg(a)) == target:
            return a
    return None


def small_set_case(g, s, t, mu) -> dict | None:
    """|S| = 3, mu = 0 and T = a+S or T = G\\(-a-2S); every branch that holds is listed."""
    if mu != 0 or _size(s) != 3:
        return None
    branches = []
    a = translate_witness(g, s, t)
    if a is not None:
        branches.append({"branch": "translate", "a": Element(a, g)})
    a = complement_witness(g, s, t)
    if a is not None:
        branches.append({"branch": "complement", "a": Element(a, g)})
    return {"branches": branches} if branches else None


def essential_case(g, s, t, h: Subgroup) -> dict | None:
    found = essential_pair_witnesses(g, s, t, h)
    if not found:
        return None
    w = min(found, key=lambda w: ("i", "ii", "iii").index(w.kind))
    return essential_witness_dict(g, w)


def essential_witness_dict(g, w) -> dict:
    phi = quotient(g, w.H)
    out = {
        "H": w.H,
        "kind": w.kind,
        "s_parts": [_mask(g, p) for p in w.s_parts],
        "t_parts": [_mask(g, p) for p in w.t_parts],
        "difference": None if w.difference is None else Element(phi.target.reps[w.difference], g),
    }
    if w.K0 is not None:
        out["K0"] = _mask(g, w.K0)
        out["K1"] = _mask(g, w.K1)
    return out


def _last_part_orderings(g, bits, h):
    """Every ordering class that matters when only the last part is constrained."""
    from smallsum.structure import coset_parts

    parts = list(coset_parts(g, bits, h).values())
    for i, p in enumerate(parts):
        yield None, parts[:i] + parts[i + 1:] + [p]


def decomposition_case(g, s, t, mu, h: Subgroup, need_prog: bool) -> dict | None:
    """H-decompositions with one of S\\S_u, T\\T_t H-periodic, the other (H,-nu)-periodic,
    and ``|T_t+S_u| = |T_t|+|S_u|-nu-mu``."""
    if need_prog:
        s_ords = h_progressions(g, s, h)
        t_ords = h_progressions(g, t, h)
    else:
        s_ords = list(_last_part_orderings(g, s, h))
        t_ords = list(_last_part_orderings(g, t, h))
    phi = quotient(g, h)
    for ds, sp in s_ords:
        for dt, tp in t_ords:
            if need_prog and not same_difference(ds, dt):
                continue
            su, tt = sp[-1], tp[-1]
            nu = _size(tt) + _size(su) - mu - _size(g.sumset(tt, su))
            if not 0 <= nu <= 1 - mu:
                continue
            x, y = s & ~su, t & ~tt
            if is_periodic_by(g, x, h) and is_h_minus_periodic(g, y, h, nu):
                side = "S"
            elif is_periodic_by(g, y, h) and is_h_minus_periodic(g, x, h, nu):
                side = "T"
            else:
                continue
            d = ds if ds is not None else dt
            return {
                "H": h,
                "s_parts": [_mask(g, p) for p in sp],
                "t_parts": [_mask(g, p) for p in tp],
                "progression": need_prog,
                "difference": None if d is None else Element(phi.target.reps[d], g),
                "nu": nu,
                "periodic_side": side,
            }
    return None


def quotient_progression_case(g, s, t, h: Subgroup, need_prog: bool) -> dict | None:
    """``|phi(S+T)| = |phi(S)|+|phi(T)|-1``, images progressions of one difference if required."""
    phi = quotient(g, h)
    ps, pt = phi.image(s), phi.image(t)
    pst = phi.target.sumset(ps, pt)
    if _size(pst) != _size(ps) + _size(pt) - 1:
        return None
    out = {"H": h, "phi_sizes": [_size(ps), _size(pt), _size(pst)], "progression": need_prog}
    if not need_prog:
        return out
    reps = phi.target.reps
    for ds, os_ in progression_orderings(phi.target, ps):
        for dt, ot in progression_orderings(phi.target, pt):
            if same_difference(ds, dt):
                d = ds if ds is not None else dt
                out["difference"] = None if d is None else Element(reps[d], g)
                out["phi_S"] = [Element(reps[c], g) for c in os_]
                out["phi_T"] = [Element(reps[c], g) for c in ot]
                return out
    return None


def _needs_progression(g, s, t, h) -> bool:
    phi = quotient(g, h)
    ps, pt = phi.image(s), phi.image(t)
    pst = phi.target.sumset(ps, pt)
    return min(_size(ps), _size(pt), phi.target.order - _size(pst)) >= 2


def kemperman_case(g, a, b, *, first_only: bool = True) -> dict | None:
    ab = g.sumset(a, b)
    for h in _proper_subgroups(g):
        phi = quotient(g, h)
        pa, pb = phi.image(a), phi.image(b)
        if _size(phi.target.sumset(pa, pb)) != _size(pa) + _size(pb) - 1:
            continue
        for qa in quasi_periodic_partitions_bits(g, a, h):
            for qb in quasi_periodic_partitions_bits(g, b, h):
                a1, b1 = qa.A1, qb.A1
                if _size(g.sumset(b1, a1)) != _size(a1) + _size(b1) - 1:
                    continue
                mid = g.sumset(g.sumset(a1, b1), g.negate(a))
                if _size(phi.image(mid) & pb) != 1:
                    continue
                return {
                    "H": h,
                    "A0": _mask(g, qa.A0),
                    "A1": _mask(g, a1),
                    "B0": _mask(g, qb.A0),
                    "B1": _mask(g, b1),
                }
    return None


def augmentation_case(g, a, b) -> dict | None:
    target = _size(a) + _size(b) + 1
    for x in range(g.order):
        if a >> x & 1:
            continue
        ax = a | (1 << x)
        for y in range(g.order):
            if b >> y & 1:
                continue
            if _size(g.sumset(ax, b | (1 << y))) == target:
                return {"a": Element(x, g), "b": Element(y, g)}
    return None


# -- classifiers ---------------------------------------------------------------------------------------


def _require(theorem: str, inst: PairInstance) -> None:
    bad = HYPOTHESES[theorem](inst)
    if bad:
        raise HypothesisError(bad)


def _finish(theorem: str, inst: PairInstance, cases: list[CaseResult]) -> StructureVerdict:
    from smallsum.recheck import recheck

    if not cases:
        raise TheoremViolation("no case holds", {"theorem": theorem, "instance": inst.to_dict()})
    verdict = StructureVerdict(theorem, cases[0].case, cases)
    verdict.failures = recheck(inst, verdict)
    verdict.verified = not verdict.failures
    return verdict


def classify_3x3(inst: PairInstance) -> StructureVerdict:
    _require("3x3", inst)
    g, s, t = inst.group, inst.S.bits, inst.T.bits
    cases = three_term_case(g, s, t)
    a = translate_witness(g, s, t)
    if a is not None:
        cases.append(CaseResult("translate", {"a": Element(a, g)}))
    return _finish("3x3", inst, cases)


def _case_i_12(g, s, t, mu) -> dict | None:
    if mu != 0 or g.order != 12 or _size(s) != 4 or _size(t) != 4:
        return None
    k2 = kappa_star(g, t, 2)
    if 4 * k2 != 12:
        return None
    return {"kappa2_T": k2}


def classify_two_third(inst: PairInstance, h: Subgroup | None = None) -> StructureVerdict:
    _require("twothird", inst)
    g, s, t, mu = inst.group, inst.S.bits, inst.T.bits, inst.mu
    h = h or hyper_atom_candidates(g, s)[0]
    cases = []
    w = _case_i_12(g, s, t, mu)
    if w:
        cases.append(CaseResult("i", w))
    if mu == 0:
        w = essential_case(g, s, t, h)
        if w:
            cases.append(CaseResult("ii", w))
    w = decomposition_case(g, s, t, mu, h, need_prog=True)
    if w and _size(g.sumset(t, h.bits)) - _size(t) <= h.order - mu:
        cases.append(CaseResult("iii", w))
    return _finish("twothird", inst, cases)


def classify_modular(inst: PairInstance, h: Subgroup | None = None) -> StructureVerdict:
    _require("modular", inst)
    g, s, t, mu = inst.group, inst.S.bits, inst.T.bits, inst.mu
    h = h or hyper_atom_candidates(g, s)[0]
    cases = []
    w = _case_i_12(g, s, t, mu)
    if w:
        cases.append(CaseResult("i", w))
    w = quotient_progression_case(g, s, t, h, need_prog=True)
    if w:
        cases.append(CaseResult("ii", w))
    return _finish("modular", inst, cases)


def classify_near_progression(s: SubsetMask, mu: int) -> StructureVerdict:
    inst = PairInstance(s.group, s, SubsetMask(s.group, 0), mu)
    _require("near", inst)
    g = s.group
    j = 1 - mu
    cases = []
    diffs = progression_differences(g, s.bits, j)
    if diffs:
        r = min(diffs)
        cases.append(CaseResult("progression", {"r": Element(r, g), "j": j,
                                                "S": _progression_witness(g, s.bits, r, j)}))
    return _finish("near", inst, cases)


def classify_n_minus_4(inst: PairInstance) -> StructureVerdict:
    _require("n4", inst)
    g, s, t, mu = inst.group, inst.S.bits, inst.T.bits, inst.mu
    cases = []
    w = common_progression_case(g, s, t, 1 - mu)
    if w:
        cases.append(CaseResult("i", w))
    for h in _proper_subgroups(g):
        roles = super_atom_roles(g, h, s, t)
        if g.order != 12 and not roles:
            continue
        w = quotient_progression_case(g, s, t, h, _needs_progression(g, s, t, h))
        if w:
            w["super_atom_of"] = roles
            cases.append(CaseResult("ii", w))
            break
    return _finish("n4", inst, cases)


def classify_n_minus_3(inst: PairInstance) -> StructureVerdict:
    _require("n3", inst)
    g, s, t, mu = inst.group, inst.S.bits, inst.T.bits, inst.mu
    cases = []
    w = small_set_case(g, s, t, mu)
    if w:
        cases.append(CaseResult("i", w))
    w = common_progression_case(g, s, t, 1 - mu)
    if w:
        cases.append(CaseResult("ii", w))
    if mu == 0:
        for h in _proper_subgroups(g):
            if h.order < 2:
                continue
            roles = super_atom_roles(g, h, s, t)
            if g.order != 12 and not roles:
                continue
            w = essential_case(g, s, t, h)
            if w:
                w["super_atom_of"] = roles
                cases.append(CaseResult("iii", w))
                break
    for h in _proper_subgroups(g):
        roles = super_atom_roles(g, h, s, t)
        if g.order != 12 and not roles:
            continue
        if quotient_progression_case(g, s, t, h, need_prog=False) is None:
            continue
        w = decomposition_case(g, s, t, mu, h, _needs_progression(g, s, t, h))
        if w:
            w["super_atom_of"] = roles
            cases.append(CaseResult("iv", w))
            break
    return _finish("n3", inst, cases)


def kemperman_partition(a: SubsetMask, b: SubsetMask) -> StructureVerdict:
    inst = PairInstance(a.group, a, b, 1)
    _require("kemperman", inst)
    w = kemperman_case(a.group, a.bits, b.bits)
    return _finish("kemperman", inst, [CaseResult("partition", w)] if w else [])


def grynkiewicz_classify(a: SubsetMask, b: SubsetMask) -> StructureVerdict:
    inst = PairInstance(a.group, a, b, 0)
    _require("grynkiewicz", inst)
    g, x, y = a.group, a.bits, b.bits
    cases = []
    w = small_set_case(g, x, y, 0)
    if w:
        cases.append(CaseResult("1", w))
    w = augmentation_case(g, x, y)
    if w:
        cases.append(CaseResult("2", w))
    w = kemperman_case(g, x, y)
    if w:
        cases.append(CaseResult("3", w))
    for h in _proper_subgroups(g):
        if h.order != 4:
            continue
        w = essential_case(g, x, y, h)
        if w and w["kind"] == "iii":
            cases.append(CaseResult("4", w))
            break
    return _finish("grynkiewicz", inst, cases)


def classify(theorem: str, inst: PairInstance) -> StructureVerdict:
    if theorem == "3x3":
        return classify_3x3(inst)
    if theorem == "twothird":
        return classify_two_third(inst)
    if theorem == "modular":
        return classify_modular(inst)
    if theorem == "near":
        return classify_near_progression(inst.S, inst.mu)
    if theorem == "n4":
        return classify_n_minus_4(inst)
    if theorem == "n3":
        return classify_n_minus_3(inst)
    if theorem == "kemperman":
        return kemperman_partition(inst.S, inst.T)
    if theorem == "grynkiewicz":
        return grynkiewicz_classify(inst.S, inst.T)
    raise ValueError(f"unknown theorem {theorem!r}")
