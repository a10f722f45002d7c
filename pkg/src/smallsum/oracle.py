"""Brute-force deciders built straight from the definitions.

They answer "which cases hold" for an instance without any of the search
shortcuts used by the classifier, so a sweep can compare the two. Costs grow
quickly with the group order; they are meant for orders up to about 12.
"""

from __future__ import annotations

from itertools import product

from smallsum.recheck import _G, _factors, _set, h_minus_periodic, is_super_atom


def subgroups(G: _G) -> list[frozenset]:
    seen = {frozenset({G.zero})}
    frontier = list(seen)
    while frontier:
        nxt = []
        for h in frontier:
            for x in G.elements:
                if x not in h:
                    k = frozenset(G.closure(set(h) | {x}))
                    if k not in seen:
                        seen.add(k)
                        nxt.append(k)
        frontier = nxt
    return sorted(seen, key=lambda h: (len(h), sorted(h)))


def is_near_progression(G: _G, a: set, r, j: int) -> bool:
    """``a`` is ``{x + i r : i < |a|+j}`` with exactly j of those terms removed."""
    if len(a) == 1:
        return True
    length = len(a) + j
    for x in G.elements:
        terms, y = [], x
        for _ in range(length):
            terms.append(y)
            y = G.add(y, r)
        if len(set(terms)) == length and a <= set(terms):
            return True
    return False


def progression_orders(G: _G, a: set, h: frozenset) -> list[tuple[frozenset | None, list[set]]]:
    """Every listing of the H-parts of ``a`` as an H-progression, with its difference coset."""
    parts: dict[frozenset, set] = {}
    for x in a:
        parts.setdefault(G.coset_key(x, h), set()).add(x)
    if len(parts) == 1:
        return [(None, list(parts.values()))]
    out, seen = [], set()
    for d in G.elements:
        dc = G.coset_key(d, h)
        for first in parts:
            key = (dc, first)
            if key in seen:
                continue
            seen.add(key)
            order, cur = [], first
            while cur in parts and len(order) < len(parts):
                if any(cur == c for c in order):
                    break
                order.append(cur)
                cur = frozenset(G.translate(set(cur), d))
            if len(order) == len(parts):
                out.append((dc, [parts[c] for c in order]))
    return out


def _same(d1, d2) -> bool:
    return d1 is None or d2 is None or d1 == d2


def essential_kinds(G: _G, s: set, t: set, h: frozenset) -> set[str]:
    hs = set(h)
    if len(G.sumset(s, hs)) - len(s) != len(h) or len(G.sumset(t, hs)) - len(t) != len(h):
        return set()
    kinds = set()
    for ds, sp in progression_orders(G, s, h):
        for dt, tp in progression_orders(G, t, h):
            if not _same(ds, dt):
                continue
            if len(h) - 1 == 1 and len(sp[0]) == len(sp[-1]) == len(tp[0]) == len(tp[-1]) == 1:
                kinds.add("i")
            if (
                len(sp) >= 2 and len(tp) >= 2
                and len(sp[-1]) == len(tp[-1]) == 1
                and len(sp[-2]) == len(tp[-2]) == len(h) - 1
                and G.sumset(tp[-2], sp[-1]) == G.sumset(tp[-1], sp[-2])
            ):
                kinds.add("ii")
            if len(h) == 4 and all(len(p) == 2 for p in (sp[0], sp[-1], tp[0], tp[-1])):
                k0, k1 = G.star(sp[0]), G.star(sp[-1])
                if (
                    k0 != k1 and G.star(tp[0]) == k0 and G.star(tp[-1]) == k1
                    and G.sumset(k0, k1) == hs
                ):
                    kinds.add("iii")
    return kinds


def _phi(G, a, h):
    return {G.coset_key(x, h) for x in a}


def _decomposition_holds(G, s, t, mu, h, need_prog) -> bool:
    hs = set(h)
    if need_prog:
        s_orders = progression_orders(G, s, h)
        t_orders = progression_orders(G, t, h)
    else:
        def lasts(a):
            parts: dict = {}
            for x in a:
                parts.setdefault(G.coset_key(x, h), set()).add(x)
            return [(None, [p]) for p in parts.values()]

        s_orders, t_orders = lasts(s), lasts(t)
    for (ds, sp), (dt, tp) in product(s_orders, t_orders):
        if need_prog and not _same(ds, dt):
            continue
        su, tt = sp[-1], tp[-1]
        for nu in range(0, 2 - mu):
            if len(G.sumset(tt, su)) != len(tt) + len(su) - nu - mu:
                continue
            x, y = s - su, t - tt
            if G.periodic(x, hs) and h_minus_periodic(G, y, hs, nu):
                return True
            if G.periodic(y, hs) and h_minus_periodic(G, x, hs, nu):
                return True
    return False


def n3_cases(inst) -> list[str]:
    """Cases of the (n-3) structure theorem that hold, decided by exhaustion."""
    group = inst.group
    G = _G(_factors(group))
    s, t, mu = _set(G, inst.S), _set(G, inst.T), inst.mu
    n = G.order
    out = []
    if mu == 0 and len(s) == 3:
        two_s = G.sumset(s, s)
        for a in G.elements:
            if G.translate(s, a) == t:
                out.append("i")
                break
            comp = set(G.elements) - {G.add(G.neg(a), G.neg(x)) for x in two_s}
            if comp == t:
                out.append("i")
                break
    j = 1 - mu
    if any(is_near_progression(G, s, r, j) and is_near_progression(G, t, r, j)
           for r in G.elements if r != G.zero):
        out.append("ii")
    ext = set(G.elements) - G.sumset(s, t)

    def allowed(h):
        if n == 12:
            return True
        hs = set(h)
        return is_super_atom(G, group, s, hs) or bool(ext and is_super_atom(G, group, ext, hs))

    proper = [h for h in subgroups(G) if len(h) < n]
    if mu == 0 and any(len(h) >= 2 and allowed(h) and essential_kinds(G, s, t, h) for h in proper):
        out.append("iii")
    for h in proper:
        ps, pt = _phi(G, s, h), _phi(G, t, h)
        pst = _phi(G, G.sumset(s, t), h)
        if len(pst) != len(ps) + len(pt) - 1 or not allowed(h):
            continue
        need = min(len(ps), len(pt), n // len(h) - len(pst)) >= 2
        if _decomposition_holds(G, s, t, mu, h, need):
            out.append("iv")
            break
    return out


ORACLES = {"n3": n3_cases}
