"""Independent re-verification of classifier verdicts.

Everything here works on Python sets of coordinate tuples with its own
mixed-radix decoding and componentwise arithmetic, so it shares no code with
the bitmask search it audits. The only borrowed routine is the pruned
connectivity search, used where a case needs ``kappa_2``; the search modules
default to the full scan at these orders, so the two paths still differ.
"""

from __future__ import annotations

from itertools import product

from smallsum.groups import GroupSpec


class _G:
    def __init__(self, factors: tuple[int, ...]):
        self.factors = tuple(factors)
        self.elements = list(product(*(range(d) for d in factors)))
        self.zero = tuple(0 for _ in factors)
        self.order = len(self.elements)

    def decode(self, idx: int) -> tuple:
        out = []
        for d in reversed(self.factors):
            out.append(idx % d)
            idx //= d
        return tuple(reversed(out))

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.factors))

    def neg(self, x):
        return tuple((-a) % d for a, d in zip(x, self.factors))

    def sumset(self, a, b):
        return {self.add(x, y) for x in a for y in b}

    def translate(self, a, g):
        return {self.add(x, g) for x in a}

    def order_of(self, x):
        k, y = 1, x
        while y != self.zero:
            y = self.add(y, x)
            k += 1
        return k

    def closure(self, seeds):
        out = {self.zero}
        frontier = [self.zero]
        gens = list(seeds)
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.add(x, s)
                    if y not in out:
                        out.add(y)
                        nxt.append(y)
            frontier = nxt
        return out

    def is_subgroup(self, h):
        return self.zero in h and all(self.add(x, self.neg(y)) in h for x in h for y in h)

    def periodic(self, a, h):
        return all(self.translate(a, x) == a for x in h)

    def aperiodic(self, a):
        return bool(a) and all(self.translate(a, x) != a for x in self.elements if x != self.zero)

    def star(self, a):
        m = min(a)
        return self.translate(a, self.neg(m))

    def coset_key(self, x, h):
        return frozenset(self.translate(h, x))


class RecheckError(Exception):
    pass


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise RecheckError(msg)


def _factors(group) -> tuple[int, ...]:
    if isinstance(group, GroupSpec):
        return tuple(group.factors)
    return (group.order,)


def _set(G: _G, mask) -> set:
    bits = mask.bits if hasattr(mask, "bits") else int(mask)
    return {G.decode(i) for i in range(G.order) if bits >> i & 1}


def _elt(G: _G, e) -> tuple:
    return G.decode(e.idx if hasattr(e, "idx") else int(e))


def _progression(G: _G, start, r, length) -> list:
    out, x = [], start
    for _ in range(length):
        out.append(x)
        x = G.add(x, r)
    return out


# -- reusable checks -----------------------------------------------------------------------


def check_progression_witness(G: _G, target: set, r, w: dict, j: int) -> None:
    start = _elt(G, w["start"])
    if w["length"] == 1 and not w["deleted"]:
        _need(target == {start}, "wildcard witness is not the singleton")
        return
    terms = _progression(G, start, r, w["length"])
    _need(len(set(terms)) == len(terms), "progression wraps onto itself")
    deleted = {_elt(G, d) for d in w["deleted"]}
    _need(len(deleted) == j and deleted <= set(terms), f"expected {j} deleted terms")
    _need(set(terms) - deleted == target, "progression witness does not rebuild the set")


def _is_exact_progression(G: _G, a: set, r) -> bool:
    if len(a) == 1:
        return True
    if G.order_of(r) < len(a):
        return False
    return any(set(_progression(G, x, r, len(a))) == a for x in a)


def check_parts(G: _G, whole: set, parts: list[set], h: set) -> None:
    _need(all(parts), "empty part")
    _need(set().union(*parts) == whole, "parts do not cover the set")
    keys = [G.coset_key(min(p), h) for p in parts]
    _need(len(set(keys)) == len(keys), "two parts share a coset")
    for p, k in zip(parts, keys):
        _need(all(G.coset_key(x, h) == k for x in p), "part leaves its coset")


def check_h_progression(G: _G, parts: list[set], h: set, d) -> None:
    for p, q in zip(parts, parts[1:]):
        _need(d is not None, "several parts but no difference")
        _need(G.sumset(q, h) == G.translate(G.sumset(p, h), d), "parts not in progression")


def _phi(G: _G, a: set, h: set) -> set:
    return {G.coset_key(x, h) for x in a}


def _phi_progression(G: _G, cosets: set, h: set, d) -> bool:
    """Whether a set of H-cosets lists as a progression with difference d + H."""
    if len(cosets) == 1:
        return True
    if d is None:
        return False
    for c in cosets:
        seen, cur = [], c
        for _ in range(len(cosets)):
            if cur not in cosets or cur in seen:
                break
            seen.append(cur)
            cur = frozenset(G.translate(set(cur), d))
        if len(seen) == len(cosets):
            return True
    return False


def h_minus_periodic(G: _G, a: set, h: set, nu: int) -> bool:
    filled = G.sumset(a, h) if a else set()
    missing = len(filled) - len(a)
    extra = nu - missing
    return extra >= 0 and extra % len(h) == 0 and extra <= G.order - len(filled)


def _two_fragment_subgroups_containing(G: _G, s: set, h: set) -> list[set]:
    """Subgroups K containing H, found by repeated closure."""
    seen = {frozenset(h)}
    frontier = [frozenset(h)]
    while frontier:
        nxt = []
        for k in frontier:
            for x in G.elements:
                if x in k:
                    continue
                big = frozenset(G.closure(set(k) | {x}))
                if big not in seen:
                    seen.add(big)
                    nxt.append(big)
        frontier = nxt
    return [set(k) for k in seen]


def _kappa2(G: _G, group, s_star: set) -> tuple[int, bool]:
    from smallsum.isoperimetry import kappa_bits

    bits = 0
    for i in range(G.order):
        if G.decode(i) in s_star:
            bits |= 1 << i
    rep = kappa_bits(group, bits, 2, mode="seeded")
    return rep.kappa, rep.separable


def is_hyper_atom(G: _G, group, s: set, h: set) -> bool:
    """H is an inclusion-maximal subgroup 2-fragment of S*."""
    star = G.star(s)
    kap, separable = _kappa2(G, group, star)
    if not separable:
        return False

    def frag(k):
        total = len(G.sumset(k, star))
        return len(k) >= 2 and G.order - total >= 2 and total - len(k) == kap

    if not frag(h):
        return False
    return not any(len(k) > len(h) and frag(k) for k in _two_fragment_subgroups_containing(G, star, h))


def is_super_atom(G: _G, group, a: set, h: set) -> bool:
    gen = G.closure(G.star(a))
    if len(gen) < G.order:
        return gen == h
    return is_hyper_atom(G, group, a, h)


# -- per-case re-checks ----------------------------------------------------------------------


def _check_small_set(G, s, t, w):
    _need(len(s) == 3, "|S| != 3")
    _need(bool(w["branches"]), "no branch given")
    for b in w["branches"]:
        a = _elt(G, b["a"])
        if b["branch"] == "translate":
            _need(G.translate(s, a) == t, "T != a+S")
        else:
            rhs = set(G.elements) - G.translate({G.neg(x) for x in G.sumset(s, s)}, G.neg(a))
            _need(t == rhs, "T != G minus (-a-2S)")


def _check_common_progression(G, s, t, w):
    r = _elt(G, w["r"])
    check_progression_witness(G, s, r, w["S"], w["j"])
    check_progression_witness(G, t, r, w["T"], w["j"])


def _check_essential(G, s, t, w):
    h = _set(G, w["H"])
    _need(G.is_subgroup(h) and 2 <= len(h) < G.order, "H is not a proper nontrivial subgroup")
    sp = [_set(G, p) for p in w["s_parts"]]
    tp = [_set(G, p) for p in w["t_parts"]]
    check_parts(G, s, sp, h)
    check_parts(G, t, tp, h)
    d = None if w["difference"] is None else _elt(G, w["difference"])
    check_h_progression(G, sp, h, d)
    check_h_progression(G, tp, h, d)
    _need(len(G.sumset(s, h)) - len(s) == len(h), "|S+H|-|S| != |H|")
    _need(len(G.sumset(t, h)) - len(t) == len(h), "|T+H|-|T| != |H|")
    kind = w["kind"]
    if kind == "i":
        _need(len(h) == 2, "kind i needs |H| = 2")
        _need(all(len(p) == 1 for p in (sp[0], sp[-1], tp[0], tp[-1])), "kind i end parts")
    elif kind == "ii":
        _need(len(sp) >= 2 and len(tp) >= 2, "kind ii needs two parts")
        _need(len(sp[-1]) == 1 and len(tp[-1]) == 1, "kind ii last parts")
        _need(len(sp[-2]) == len(h) - 1 == len(tp[-2]), "kind ii penultimate parts")
        _need(G.sumset(tp[-2], sp[-1]) == G.sumset(tp[-1], sp[-2]), "kind ii cross identity")
    elif kind == "iii":
        k0, k1 = _set(G, w["K0"]), _set(G, w["K1"])
        _need(len(h) == 4 and len(k0) == 2 == len(k1), "kind iii orders")
        _need(G.is_subgroup(k0) and G.is_subgroup(k1) and k0 != k1, "kind iii subgroups")
        _need(G.sumset(k0, k1) == h, "H != K0 + K1")
        _need(G.star(sp[0]) == k0 == G.star(tp[0]), "kind iii first parts")
        _need(G.star(sp[-1]) == k1 == G.star(tp[-1]), "kind iii last parts")
    else:
        raise RecheckError(f"unknown kind {kind!r}")
    return h


def _progression_required(G, s, t, h) -> bool:
    ps, pt = _phi(G, s, h), _phi(G, t, h)
    pst = _phi(G, G.sumset(s, t), h)
    return min(len(ps), len(pt), G.order // len(h) - len(pst)) >= 2


def _check_decomposition(G, s, t, mu, w, *, always_prog: bool):
    h = _set(G, w["H"])
    _need(G.is_subgroup(h) and len(h) < G.order, "H is not a proper subgroup")
    sp = [_set(G, p) for p in w["s_parts"]]
    tp = [_set(G, p) for p in w["t_parts"]]
    check_parts(G, s, sp, h)
    check_parts(G, t, tp, h)
    if always_prog or _progression_required(G, s, t, h):
        d = None if w["difference"] is None else _elt(G, w["difference"])
        check_h_progression(G, sp, h, d)
        check_h_progression(G, tp, h, d)
    su, tt = sp[-1], tp[-1]
    nu = w["nu"]
    _need(0 <= nu <= 1 - mu, "nu out of range")
    _need(len(G.sumset(tt, su)) == len(tt) + len(su) - nu - mu, "|T_t+S_u| equality")
    x, y = s - su, t - tt
    if w["periodic_side"] == "S":
        _need(G.periodic(x, h) and h_minus_periodic(G, y, h, nu), "periodicity of the rests")
    else:
        _need(G.periodic(y, h) and h_minus_periodic(G, x, h, nu), "periodicity of the rests")
    return h


def _check_phi_equality(G, s, t, h):
    ps, pt = _phi(G, s, h), _phi(G, t, h)
    pst = _phi(G, G.sumset(s, t), h)
    _need(len(pst) == len(ps) + len(pt) - 1, "|phi(S+T)| equality")


def _check_quotient_progression(G, s, t, w, *, always_prog: bool):
    h = _set(G, w["H"])
    _need(G.is_subgroup(h) and len(h) < G.order, "H is not a proper subgroup")
    _check_phi_equality(G, s, t, h)
    if always_prog or _progression_required(G, s, t, h):
        d = None if w.get("difference") is None else _elt(G, w["difference"])
        _need(_phi_progression(G, _phi(G, s, h), h, d), "phi(S) not a progression")
        _need(_phi_progression(G, _phi(G, t, h), h, d), "phi(T) not a progression")
    return h


def _check_super_atom(G, group, s, t, h, w):
    if G.order == 12:
        return
    ext = set(G.elements) - G.sumset(s, t)
    ok = is_super_atom(G, group, s, h) or (ext and is_super_atom(G, group, ext, h))
    _need(bool(ok), "H is not a super-atom of S or of the exterior")


def _check_kemperman(G, a, b, w):
    h = _set(G, w["H"])
    _need(G.is_subgroup(h) and len(h) < G.order, "H is not a proper subgroup")
    a0, a1, b0, b1 = (_set(G, w[k]) for k in ("A0", "A1", "B0", "B1"))
    for whole, p0, p1 in ((a, a0, a1), (b, b0, b1)):
        _need(p0 | p1 == whole and not p0 & p1 and p1, "not a partition")
        _need(G.periodic(p0, h), "periodic part is not H-periodic")
        _need(len(_phi(G, p1, h)) == 1, "A1 spans two cosets")
    _need(len(G.sumset(b1, a1)) == len(a1) + len(b1) - 1, "|B1+A1| equality")
    _check_phi_equality(G, a, b, h)
    mid = G.sumset(G.sumset(a1, b1), {G.neg(x) for x in a})
    _need(len(_phi(G, mid, h) & _phi(G, b, h)) == 1, "|phi(A1+B1-A) n phi(B)| != 1")


def _check_case_i_12(G, group, s, t, mu):
    _need(mu == 0 and G.order == 12 and len(s) == 4 == len(t), "case i sizes")
    kap, _ = _kappa2(G, group, G.star(t))
    _need(4 * kap == 12, "4 kappa_2(T*) != 12")


def recheck(inst, verdict) -> list[str]:
    """Re-verify every reported case; returns the list of failures (empty when sound)."""
    group = inst.group
    G = _G(_factors(group))
    s, t, mu = _set(G, inst.S), _set(G, inst.T), inst.mu
    thm = verdict.theorem
    failures = []
    if thm != "near":
        st = G.sumset(s, t)
        if not G.aperiodic(st):
            failures.append("S+T is periodic")
    for c in verdict.cases:
        try:
            _recheck_case(G, group, thm, c.case, c.witness, s, t, mu)
        except RecheckError as exc:
            failures.append(f"{thm}({c.case}): {exc}")
    return failures


def _recheck_case(G, group, thm, case, w, s, t, mu):
    if thm == "3x3":
        if case == "progression":
            target = s if w["which"] == "S" else t
            _need(_is_exact_progression(G, target, _elt(G, w["r"])), "not a progression")
        else:
            _need(G.translate(s, _elt(G, w["a"])) == t, "T != a+S")
    elif thm == "near":
        check_progression_witness(G, s, _elt(G, w["r"]), w["S"], w["j"])
        _need(w["j"] == 1 - mu, "wrong number of deletions")
    elif thm in ("twothird", "modular"):
        if case == "i":
            _check_case_i_12(G, group, s, t, mu)
            return
        if case == "ii" and thm == "twothird":
            _need(mu == 0, "essential pair needs mu = 0")
            h = _check_essential(G, s, t, w)
        elif case == "ii":
            h = _check_quotient_progression(G, s, t, w, always_prog=True)
        else:
            h = _check_decomposition(G, s, t, mu, w, always_prog=True)
            _need(len(G.sumset(t, h)) - len(t) <= len(h) - mu, "|T+H|-|T| bound")
        _need(is_hyper_atom(G, group, s, h), "H is not a hyper-atom of S")
    elif thm == "n4":
        if case == "i":
            _check_common_progression(G, s, t, w)
            _need(w["j"] == 1 - mu, "wrong number of deletions")
        else:
            h = _check_quotient_progression(G, s, t, w, always_prog=False)
            _check_super_atom(G, group, s, t, h, w)
    elif thm == "n3":
        if case == "i":
            _need(mu == 0, "case i needs mu = 0")
            _check_small_set(G, s, t, w)
        elif case == "ii":
            _check_common_progression(G, s, t, w)
            _need(w["j"] == 1 - mu, "wrong number of deletions")
        elif case == "iii":
            _need(mu == 0, "essential pair needs mu = 0")
            h = _check_essential(G, s, t, w)
            _check_super_atom(G, group, s, t, h, w)
        else:
            h = _check_decomposition(G, s, t, mu, w, always_prog=False)
            _check_phi_equality(G, s, t, h)
            _check_super_atom(G, group, s, t, h, w)
    elif thm == "kemperman":
        _check_kemperman(G, s, t, w)
    elif thm == "grynkiewicz":
        if case == "1":
            _check_small_set(G, s, t, w)
        elif case == "2":
            x, y = _elt(G, w["a"]), _elt(G, w["b"])
            _need(x not in s and y not in t, "augmenting elements already present")
            a2, b2 = s | {x}, t | {y}
            _need(len(G.sumset(a2, b2)) == len(a2) + len(b2) - 1, "augmented equality")
        elif case == "3":
            _check_kemperman(G, s, t, w)
        else:
            _check_essential(G, s, t, w)
            _need(w["kind"] == "iii", "not a Klein pair")
    else:
        raise RecheckError(f"unknown theorem {thm!r}")
