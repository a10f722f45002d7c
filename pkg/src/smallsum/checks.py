"""Registry of verifiable statements.

Each entry knows how to check one instance (used by random sampling and by
counterexample minimisation) and, for exhaustive sweeps, how to scan every
partner of a fixed set ``S`` at once with numpy.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from smallsum.classifier import (
    HYPOTHESES,
    PairInstance,
    check_hypotheses,
    classify,
)
from smallsum.errors import HypothesisError, TheoremViolation
from smallsum.groups import AbelianGroup, GroupSpec, all_subgroups, is_subgroup_mask, iter_bits, quotient
from smallsum.isoperimetry import (
    degenerate_bits,
    hyper_atoms,
    kappa_bits,
    matching_bits,
    scan_arrays,
    subgroup_two_fragments,
)
from smallsum.errors import NotSeparable
from smallsum.setops import (
    aperiodic_array,
    canonical_masks,
    generated_bits,
    is_aperiodic_bits,
    normalize_bits,
    popcount,
)
from smallsum.structure import is_progression_bits, is_vosper_bits, progression_differences

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class Outcome:
    status: str
    cases: tuple[str, ...] = ()
    clause: str | None = None
    detail: str = ""


def ok(*cases: str) -> Outcome:
    return Outcome(PASS, tuple(cases) or ("holds",))


def fail(clause: str, detail: str = "") -> Outcome:
    return Outcome(FAIL, (), clause, detail)


SKIPPED = Outcome(SKIP)


@dataclass
class Context:
    """Sweep options shared by every check."""

    oracle: bool = False
    s_sizes: tuple[int, int] | None = None
    t_sizes: tuple[int, int] | None = None
    mus: tuple[int, ...] = (0, 1)

    def size_ok(self, size: int, which: str = "S") -> bool:
        lim = self.s_sizes if which == "S" else self.t_sizes
        return lim is None or lim[0] <= size <= lim[1]


@dataclass
class ScanResult:
    checked: int = 0
    skipped: int = 0
    tally: Counter = field(default_factory=Counter)
    hits: Counter = field(default_factory=Counter)
    violations: list[tuple[dict, str, str]] = field(default_factory=list)
    examples: dict[str, dict] = field(default_factory=dict)

    def record(self, inst: PairInstance, out: Outcome) -> None:
        if out.status == SKIP:
            self.skipped += 1
            return
        self.checked += 1
        if out.status == FAIL:
            self.violations.append((inst.to_dict(), out.clause, out.detail))
            return
        self.tally[out.cases[0]] += 1
        for c in out.cases:
            self.hits[c] += 1
            if c not in self.examples:
                self.examples[c] = inst.to_dict()

    def bulk(self, passed: int, skipped: int, label: str = "holds") -> None:
        self.checked += passed
        self.skipped += skipped
        if passed:
            self.tally[label] += passed
            self.hits[label] += passed

    def merge(self, other: ScanResult) -> None:
        self.checked += other.checked
        self.skipped += other.skipped
        self.tally.update(other.tally)
        self.hits.update(other.hits)
        self.violations.extend(other.violations)
        for k, v in other.examples.items():
            self.examples.setdefault(k, v)


@dataclass(frozen=True)
class Check:
    id: str
    kind: str  # "pair" or "single"
    run: Callable[[PairInstance, Context], Outcome]
    scan: Callable[..., None] | None = None
    max_order: int = 10
    summary: str = ""
    uses_mu: bool = False


REGISTRY: dict[str, Check] = {}


def register(id: str, kind: str, max_order: int, summary: str, scan=None):
    def wrap(fn):
        REGISTRY[id] = Check(id, kind, fn, scan, max_order, summary)
        return fn

    return wrap


# -- shared helpers ---------------------------------------------------------------------------


@lru_cache(maxsize=64)
def canonical_array(g: AbelianGroup) -> np.ndarray:
    return canonical_masks(g)


def _pop(x: int) -> int:
    return x.bit_count()


def _generating(g: AbelianGroup, s: int) -> bool:
    return generated_bits(g, s) == g.full


def _star(inst: PairInstance) -> int:
    return normalize_bits(inst.group, inst.S.bits)[0]


def _observed_mu(g, s, t) -> int:
    return _pop(s) + _pop(t) - _pop(g.sumset(s, t))


def fragments(g: AbelianGroup, s: int, k: int) -> tuple[int, np.ndarray, bool]:
    """kappa_k and every k-fragment (as a mask array), from the full scan."""
    n = g.order
    pop_x, pop_sum = scan_arrays(g, s)
    valid = (pop_x >= k) & (n - pop_sum >= k)
    if not valid.any():
        return n - 2 * k + 1, np.zeros(0, dtype=np.uint32), False
    bnd = pop_sum - pop_x
    kap = int(bnd[valid].min())
    return kap, np.flatnonzero(valid & (bnd == kap)).astype(np.uint32), True


def is_fragment_array(g: AbelianGroup, s: int, k: int, kap: int, arr: np.ndarray) -> np.ndarray:
    pop_x, pop_sum = scan_arrays(g, s)
    idx = arr.astype(np.int64)
    px, ps = pop_x[idx], pop_sum[idx]
    return (px >= k) & (g.order - ps >= k) & (ps - px == kap)


def _periodic_array(g: AbelianGroup, arr: np.ndarray, h_gens) -> np.ndarray:
    ok_ = np.ones(arr.shape, dtype=bool)
    for x in h_gens:
        ok_ &= g.shift_array(arr, x) == arr
    return ok_


def _prime_order_elements(g: AbelianGroup) -> list[int]:
    out = []
    for x in range(1, g.order):
        m = g.element_order(x)
        if all(m % p for p in range(2, int(m ** 0.5) + 1)):
            out.append(x)
    return out


# -- pair scanning ---------------------------------------------------------------------------


def _t_candidates(g: AbelianGroup, ctx: Context) -> np.ndarray:
    arr = canonical_array(g)
    if ctx.t_sizes is None:
        return arr
    pop = popcount(arr)
    return arr[(pop >= ctx.t_sizes[0]) & (pop <= ctx.t_sizes[1])]


def pair_scan(prefilter, *, per_s=None):
    """Build a scan: vectorised prefilter over every partner T, then the exact check."""

    def scan(g: GroupSpec, s: int, ctx: Context, res: ScanResult, check: Check) -> None:
        t_arr = _t_candidates(g, ctx)
        if not ctx.size_ok(_pop(s)) or (per_s is not None and not per_s(g, s)):
            res.skipped += len(t_arr)
            return
        sums = g.sumset_array(t_arr, s)
        pt, pst = popcount(t_arr), popcount(sums)
        ps = _pop(s)
        mu = ps + pt - pst
        keep = prefilter(g.order, ps, pt, pst, mu) & np.isin(mu, ctx.mus)
        idx = np.flatnonzero(keep)
        if len(idx):
            ap = aperiodic_array(g, sums[idx])
            idx = idx[ap]
        res.skipped += len(t_arr) - len(idx)
        for i in idx:
            inst = PairInstance.of(g, s, int(t_arr[i]), int(mu[i]))
            res.record(inst, check.run(inst, ctx))

    return scan


# -- sumset basics -------------------------------------------------------------------------------


def _kneser_scan(g, s, ctx, res, check):
    t_arr = _t_candidates(g, ctx)
    sums = g.sumset_array(t_arr, s)
    ap = aperiodic_array(g, sums)
    bad = ap & (popcount(sums) < _pop(s) + popcount(t_arr) - 1)
    for i in np.flatnonzero(bad):
        inst = PairInstance.of(g, s, int(t_arr[i]), 0)
        res.record(inst, check.run(inst, ctx))
    res.bulk(int(ap.sum() - bad.sum()), int((~ap).sum()))


@register("kneser", "pair", 10, "aperiodic A+B has |A+B| >= |A|+|B|-1", scan=_kneser_scan)
def kneser(inst: PairInstance, ctx: Context) -> Outcome:
    g, a, b = inst.group, inst.S.bits, inst.T.bits
    ab = g.sumset(a, b)
    if not is_aperiodic_bits(g, ab):
        return SKIPPED
    if _pop(ab) < _pop(a) + _pop(b) - 1:
        return fail("|A+B| >= |A|+|B|-1")
    return ok()


def _prehistorical_scan(g, s, ctx, res, check):
    t_arr = _t_candidates(g, ctx)
    big = _pop(s) + popcount(t_arr) >= g.order + 1
    sums = g.sumset_array(t_arr[big], s)
    bad = sums != g.full
    for t in t_arr[big][bad]:
        inst = PairInstance.of(g, s, int(t), 0)
        res.record(inst, check.run(inst, ctx))
    res.bulk(int(big.sum() - bad.sum()), int((~big).sum()))


@register("prehistorical", "pair", 12, "|A|+|B| > |G| forces A+B = G", scan=_prehistorical_scan)
def prehistorical(inst: PairInstance, ctx: Context) -> Outcome:
    g, a, b = inst.group, inst.S.bits, inst.T.bits
    if _pop(a) + _pop(b) < g.order + 1:
        return SKIPPED
    return ok() if g.sumset(a, b) == g.full else fail("A+B = G")


def _unique_sums_array(g, s, t_arr):
    once = np.zeros_like(t_arr)
    twice = np.zeros_like(t_arr)
    for a in iter_bits(s):
        sh = g.shift_array(t_arr, a)
        twice |= once & sh
        once = (once | sh) & ~twice
    return once


def _scherk_scan(g, s, ctx, res, check):
    t_arr = _t_candidates(g, ctx)
    has = _unique_sums_array(g, s, t_arr) != 0
    sums = g.sumset_array(t_arr, s)
    bad = has & (popcount(sums) < _pop(s) + popcount(t_arr) - 1)
    for t in t_arr[bad]:
        inst = PairInstance.of(g, s, int(t), 0)
        res.record(inst, check.run(inst, ctx))
    res.bulk(int(has.sum() - bad.sum()), int((~has).sum()))


@register("scherk", "pair", 10, "a uniquely represented sum forces |A+B| >= |A|+|B|-1", scan=_scherk_scan)
def scherk(inst: PairInstance, ctx: Context) -> Outcome:
    g, a, b = inst.group, inst.S.bits, inst.T.bits
    counts = Counter(g.add(x, y) for x in iter_bits(a) for y in iter_bits(b))
    if 1 not in counts.values():
        return SKIPPED
    return ok() if _pop(g.sumset(a, b)) >= _pop(a) + _pop(b) - 1 else fail("|A+B| >= |A|+|B|-1")


def _duality_arrays(g, s, x_arr):
    full = np.uint32(g.full)
    neg_s = g.negate(s)
    xs = g.sumset_array(x_arr, s)
    ext = full & ~xs
    dual = full & ~g.sumset_array(ext, neg_s)
    return xs, ext, dual


def _duality_scan(g, s, ctx, res, check):
    if not s & 1:
        res.skipped += 1
        return
    x_arr = _t_candidates(g, ctx)
    xs, ext, dual = _duality_arrays(g, s, x_arr)
    bad = (x_arr & ~dual != 0) | (g.sumset_array(dual, s) != xs)
    px, pxs = popcount(x_arr), popcount(xs)
    mu = px + _pop(s) - pxs
    ap = aperiodic_array(g, xs)
    quant = ap & (mu >= 0)
    idx = np.flatnonzero(quant)
    ext_q = ext[idx]
    back = g.sumset_array(ext_q, g.negate(s))
    zeta = popcount(ext_q) + _pop(s) - popcount(back)
    qbad = (~aperiodic_array(g, back)) | (zeta < 0) | (zeta > 1) | (
        popcount(dual[idx]) != px[idx] + zeta - mu[idx]
    )
    bad[idx[qbad]] = True
    for x in x_arr[bad]:
        inst = PairInstance.of(g, s, int(x), 0)
        res.record(inst, check.run(inst, ctx))
    good = ~bad
    res.checked += int(good.sum())
    res.tally["containment"] += int((good & ~quant).sum())
    res.tally["quantified"] += int((good & quant).sum())
    res.hits["containment"] += int(good.sum())
    res.hits["quantified"] += int((good & quant).sum())


@register("duality", "pair", 10, "X inside (X^S)^{-S}, equal sumsets, and the quantified identity",
          scan=_duality_scan)
def duality(inst: PairInstance, ctx: Context) -> Outcome:
    g, s, x = inst.group, inst.S.bits, inst.T.bits
    if not s & 1:
        return SKIPPED
    xs = g.sumset(x, s)
    ext = g.full & ~xs
    back = g.sumset(ext, g.negate(s))
    dual = g.full & ~back
    if x & ~dual:
        return fail("X inside (X^S)^{-S}")
    if g.sumset(dual, s) != xs:
        return fail("(X^S)^{-S}+S = X+S")
    mu = _pop(x) + _pop(s) - _pop(xs)
    if not x or not is_aperiodic_bits(g, xs) or mu < 0:
        return ok("containment")
    if not is_aperiodic_bits(g, back):
        return fail("X^S-S aperiodic")
    zeta = _pop(ext) + _pop(s) - _pop(back)
    if not 0 <= zeta <= 1:
        return fail("0 <= zeta <= 1")
    if _pop(dual) != _pop(x) + zeta - mu:
        return fail("|(X^S)^{-S}| = |X|+zeta-mu")
    return ok("quantified", "containment")


# -- connectivity statements ---------------------------------------------------------------------


@register("cay", "single", 16, "1-atoms are subgroups, fragments are unions of their cosets, kappa_1 >= |S|/2")
def cay(inst: PairInstance, ctx: Context) -> Outcome:
    g = inst.group
    s = _star(inst)
    if not _generating(g, s):
        return SKIPPED
    kap, frags, separable = fragments(g, s, 1)
    if 2 * kap < _pop(s):
        return fail("kappa_1 >= |S|/2")
    if not separable:
        return ok("non-separable")
    size = int(popcount(frags).min())
    atoms0 = [int(f) for f in frags if int(f) & 1 and _pop(int(f)) == size]
    for a in atoms0:
        if not is_subgroup_mask(g, a):
            return fail("1-atom through 0 is a subgroup")
        h = next(x for x in all_subgroups(g) if x.bits == a)
        if not _periodic_array(g, frags, h.generators).all():
            return fail("F+H = F for every 1-fragment F")
    return ok("separable")


def _atoms_through_zero(frags: np.ndarray) -> list[int]:
    if not len(frags):
        return []
    size = int(popcount(frags).min())
    return [int(f) for f in frags if int(f) & 1 and _pop(int(f)) == size]


@register("k=d", "single", 16, "a 2-atom through 0 is a subgroup or has two elements")
def k_equals_d(inst: PairInstance, ctx: Context) -> Outcome:
    g = inst.group
    s = _star(inst)
    n = g.order
    if n < 3 or not _generating(g, s):
        return SKIPPED
    kap, frags, separable = fragments(g, s, 2)
    if kap > _pop(s) or (kap == _pop(s) and _pop(s) == n - 6) or not separable:
        return SKIPPED
    for a in _atoms_through_zero(frags):
        if not (is_subgroup_mask(g, a) or _pop(a) == 2):
            return fail("2-atom is a subgroup or has size 2")
    return ok("subgroup" if all(is_subgroup_mask(g, a) for a in _atoms_through_zero(frags)) else "pair")


def _ks(n: int, top: int = 3) -> list[int]:
    return [k for k in range(1, top + 1) if n >= 2 * k - 1]


@register("interfrag", "single", 12, "intersection and union of overlapping fragments are fragments")
def interfrag(inst: PairInstance, ctx: Context) -> Outcome:
    g = inst.group
    s = _star(inst)
    n = g.order
    if not _generating(g, s):
        return SKIPPED
    pairs = 0
    for k in _ks(n):
        kap, frags, separable = fragments(g, s, k)
        if not separable:
            continue
        for x in frags:
            inter = frags & x
            union = frags | x
            cond = (popcount(inter) >= k) & (popcount(g.sumset_array(union, s)) <= n - k)
            if not cond.any():
                continue
            pairs += int(cond.sum())
            good = is_fragment_array(g, s, k, kap, inter[cond]) & is_fragment_array(g, s, k, kap, union[cond])
            if not good.all():
                return fail(f"X n Y and X u Y are {k}-fragments")
    return ok("overlapping pairs" if pairs else "no overlapping pair")


@register("interatoms", "single", 12, "a k-atom meeting a k-fragment in k points lies inside it")
def interatoms(inst: PairInstance, ctx: Context) -> Outcome:
    g = inst.group
    s = _star(inst)
    if not _generating(g, s):
        return SKIPPED
    for k in _ks(g.order):
        kap, frags, separable = fragments(g, s, k)
        if not separable:
            continue
        size = int(popcount(frags).min())
        for a in frags[popcount(frags) == size]:
            cond = popcount(frags & a) >= k
            if ((a & ~frags[cond]) != 0).any():
                return fail(f"{k}-atom inside every {k}-fragment it meets in {k} points")
    return ok()


@register("negative", "single", 12, "-X and X^S are negative fragments; |X^S| >= atom size")
def negative(inst: PairInstance, ctx: Context) -> Outcome:
    g = inst.group
    s = _star(inst)
    if not _generating(g, s):
        return SKIPPED
    neg_s = g.negate(s)
    for k in _ks(g.order):
        kap, frags, separable = fragments(g, s, k)
        if not separable:
            continue
        size = int(popcount(frags).min())
        negs = np.array([g.negate(int(x)) for x in frags], dtype=np.uint32)
        if not is_fragment_array(g, neg_s, k, kap, negs).all():
            return fail(f"-X is a negative {k}-fragment")
        ext = np.uint32(g.full) & ~g.sumset_array(frags, s)
        if not is_fragment_array(g, neg_s, k, kap, ext).all():
            return fail(f"X^S is a negative {k}-fragment")
        if (popcount(ext) < size).any():
            return fail("|X^S| >= |A|")
    return ok()


@register("monotone", "single", 14, "kappa_1 <= kappa_2 <= ... over the levels where a generating S is separable")
def monotone(inst: PairInstance, ctx: Context) -> Outcome:
    g = inst.group
    s = _star(inst)
    if not _generating(g, s):
        return SKIPPED
    # the conventional value |G|-2k+1 for non-separable k decreases, so compare separable k only
    vals = []
    for k in range(1, (g.order + 1) // 2 + 1):
        kap, _, separable = fragments(g, s, k)
        if not separable:
            break
        vals.append(kap)
    if any(a > b for a, b in zip(vals, vals[1:])):
        return fail("kappa_k nondecreasing in k")
    return ok()


def _contains_coset(g, arr: np.ndarray, primes: list[int]) -> np.ndarray:
    out = np.zeros(arr.shape, dtype=bool)
    for y in primes:
        acc = arr.copy()
        step = y
        while step != 0:
            acc &= g.shift_array(arr, g.neg(step))
            step = g.add(step, y)
        out |= acc != 0
    return out


@register("coset-free", "single", 12, "fragments of a non-degenerate S with kappa_2 = |S| avoid cosets")
def coset_free(inst: PairInstance, ctx: Context) -> Outcome:
    g = inst.group
    s = _star(inst)
    n = g.order
    if not _generating(g, s) or n < 5:
        return SKIPPED
    kap, frags, separable = fragments(g, s, 2)
    if kap != _pop(s) or 2 * _pop(s) > n - 4 or degenerate_bits(g, s):
        return SKIPPED
    ext_size = n - popcount(g.sumset_array(frags, s))
    proper = frags[popcount(frags) <= ext_size]
    if _contains_coset(g, proper, _prime_order_elements(g)).any():
        return fail("proper 2-fragment contains no nonzero coset")
    for f, e in zip(frags, ext_size):
        f = int(f)
        if not f & 1 or _pop(f) < 3 or e < 4:
            continue
        if not is_aperiodic_bits(g, g.sumset(f, s)) or not _generating(g, f):
            return fail("F+S aperiodic and F generating")
        if _pop(f) <= 4 and _pop(f) + _pop(s) > 6 and degenerate_bits(g, f):
            return fail("small 2-fragment is non-degenerate")
    kap3, frags3, sep3 = fragments(g, s, 3)
    if sep3:
        for a in _atoms_through_zero(frags3):
            if _pop(a) >= 4 and (_pop(a) != 4 or kappa_bits(g, a, 2).kappa != 4):
                return fail("3-atom of size >= 4 has size 4 and kappa_2 = 4")
    return ok()


@register("arc-count", "single", 12, "atoms of size > k receive two arcs at every point; arc count bound")
def arc_count(inst: PairInstance, ctx: Context) -> Outcome:
    g = inst.group
    s = _star(inst)
    n = g.order
    if n < 5 or fragments(g, s, 3)[0] != _pop(s):
        return SKIPPED
    neg_s = g.negate(s)
    s_star = s & ~1
    seen = False
    for k in _ks(n):
        kap, frags, separable = fragments(g, s, k)
        if not separable:
            continue
        for a in _atoms_through_zero(frags):
            if _pop(a) < k + 1:
                continue
            seen = True
            for x in iter_bits(g.sumset(a, s)):
                if _pop(g.shift(neg_s, x) & a) < 2:
                    return fail("|(x-S) n A| >= 2 on A+S")
            arcs = sum(_pop(g.shift(g.negate(s_star), x) & a) for x in iter_bits(a))
            if not _pop(a) <= arcs <= (_pop(s) - 1) * _pop(a) - 2 * kap:
                return fail("|A| <= |E| <= (|S|-1)|A| - 2 kappa_k")
    return ok("large atom" if seen else "no large atom")


@register("four-atoms", "single", 16, "4-atoms of a non-degenerate 3-set with kappa_4 = kappa_2 = 3")
def four_atoms(inst: PairInstance, ctx: Context) -> Outcome:
    g = inst.group
    s = _star(inst)
    if _pop(s) != 3 or g.order < 7 or not _generating(g, s):
        return SKIPPED
    k2, _, _ = fragments(g, s, 2)
    k4, frags4, sep4 = fragments(g, s, 4)
    if not (k2 == k4 == 3) or degenerate_bits(g, s) or not sep4:
        return SKIPPED
    for a in _atoms_through_zero(frags4):
        if _pop(a) != 4:
            return fail("4-atom has size 4")
        if degenerate_bits(g, a):
            return fail("4-atom is non-degenerate")
    return ok()


@register("ejcf", "single", 14, "small kappa_2 and not a progression forces degeneracy")
def ejcf(inst: PairInstance, ctx: Context) -> Outcome:
    g = inst.group
    s = _star(inst)
    n = g.order
    if n < 3 or not _generating(g, s) or 2 * _pop(s) > n + 1:
        return SKIPPED
    if fragments(g, s, 2)[0] > _pop(s) - 1 or is_progression_bits(g, s, 0):
        return SKIPPED
    return ok() if degenerate_bits(g, s) else fail("S degenerate")


@register("haapv", "single", 16, "a degenerate S maps to a progression or a Vosper set modulo its hyper-atom")
def haapv(inst: PairInstance, ctx: Context) -> Outcome:
    g = inst.group
    s = _star(inst)
    n = g.order
    if n < 3 or not _generating(g, s) or not 2 * _pop(s) < n:
        return SKIPPED
    if fragments(g, s, 2)[0] > _pop(s) or not degenerate_bits(g, s):
        return SKIPPED
    labels = []
    for h in hyper_atoms(g, s):
        phi = quotient(g, h)
        img = phi.image(s)
        if is_progression_bits(phi.target, img, 0):
            labels.append("progression")
        elif is_vosper_bits(phi.target, img):
            labels.append("vosper")
        else:
            return fail("phi(S) a progression or Vosper")
    return ok(*labels)


def _vominus_scan(g, s, ctx, res, check):
    if not s & 1 or not _generating(g, s) or not (is_vosper_bits(g, s) or is_progression_bits(g, s, 0)):
        res.skipped += 1
        return
    x_arr = _t_candidates(g, ctx)
    px = popcount(x_arr)
    cond = (popcount(g.sumset_array(x_arr, s)) == px + _pop(s) - 1) & (px >= _pop(s))
    xs = x_arr[cond]
    bad = np.zeros(len(xs), dtype=bool)
    for y in iter_bits(s):
        bad |= popcount(g.sumset_array(xs, s & ~(1 << y))) < popcount(xs) + _pop(s) - 2
    for x in xs[bad]:
        inst = PairInstance.of(g, s, int(x), 1)
        res.record(inst, check.run(inst, ctx))
    res.bulk(int(len(xs) - bad.sum()), int((~cond).sum()))


@register("vominus", "pair", 10, "removing one element of a Vosper set or progression costs at most one",
          scan=_vominus_scan)
def vominus(inst: PairInstance, ctx: Context) -> Outcome:
    g, s, x = inst.group, inst.S.bits, inst.T.bits
    if not s & 1 or not _generating(g, s) or not (is_vosper_bits(g, s) or is_progression_bits(g, s, 0)):
        return SKIPPED
    if _pop(g.sumset(x, s)) != _pop(x) + _pop(s) - 1 or _pop(x) < _pop(s):
        return SKIPPED
    for y in iter_bits(s):
        if _pop(g.sumset(x, s & ~(1 << y))) < _pop(x) + _pop(s) - 2:
            return fail("|X+(S minus y)| >= |X|+|S|-2")
    return ok()


def _chowla_ok_a(g, a) -> bool:
    return bool(a & 1 and _pop(a) >= 3 and _generating(g, a) and progression_differences(g, a, 1))


def _chowla_pre(n, ps, pt, pst, mu):
    return (pt >= 3) & (pst <= ps + pt) & (ps + pt <= n - 4)


@register("chowla", "pair", 14, "B sharing a near-progression's small sumset is a near-progression",
          scan=pair_scan(_chowla_pre, per_s=_chowla_ok_a))
def chowla(inst: PairInstance, ctx: Context) -> Outcome:
    g, a, b = inst.group, inst.S.bits, inst.T.bits
    if not _chowla_ok_a(g, a):
        return SKIPPED
    ab = g.sumset(a, b)
    if _pop(b) < 3 or not (_pop(ab) <= _pop(a) + _pop(b) <= g.order - 4) or not is_aperiodic_bits(g, ab):
        return SKIPPED
    da = progression_differences(g, a, 1)
    db = progression_differences(g, b, 1)
    if db is None or not da <= db:
        return fail("B is an (r,-1)-progression")
    return ok()


@register("strongip", "pair", 10, "a subgroup 2-fragment admits a (T,S,H)-matching of size min(u, t+1)")
def strongip(inst: PairInstance, ctx: Context) -> Outcome:
    g, s, t = inst.group, inst.S.bits, inst.T.bits
    if not s & 1 or not t or g.order < 3:
        return SKIPPED
    try:
        hs = subgroup_two_fragments(g, s)
    except NotSeparable:
        return SKIPPED
    # indices run over [0, t], so a matching has at most t+1 edges; when t+1 < u the target is t+1
    cases = []
    for h in hs:
        m = matching_bits(g, t, s, h)
        if not m.guaranteed:
            continue
        if m.size < min(m.u, m.t + 1):
            return fail("matching of size min(u, t+1)", f"size {m.size}, u {m.u}, t {m.t}")
        cases.append("size u" if m.size >= m.u else "capped at t+1")
    return ok(*sorted(set(cases))) if cases else SKIPPED


def _strongip_scan(g, s, ctx, res, check):
    t_arr = _t_candidates(g, ctx)
    try:
        hs = subgroup_two_fragments(g, s) if s & 1 and g.order >= 3 else []
    except NotSeparable:
        hs = []
    if not hs:
        res.skipped += len(t_arr)
        return
    for t in t_arr:
        inst = PairInstance.of(g, s, int(t), 0)
        res.record(inst, check.run(inst, ctx))


REGISTRY["strongip"] = Check("strongip", "pair", strongip, _strongip_scan, 10, REGISTRY["strongip"].summary)


@register("kappa-oracle", "single", 14, "pruned search agrees with the full scan")
def kappa_oracle(inst: PairInstance, ctx: Context) -> Outcome:
    g = inst.group
    s = _star(inst)
    for k in range(1, 5):
        if g.order < 2 * k - 1:
            break
        full = kappa_bits(g, s, k, mode="exact")
        seeded = kappa_bits(g, s, k, mode="seeded")
        if not seeded.exact:
            return fail("pruned search completed", f"k={k}")
        if full.kappa != seeded.kappa or full.separable != seeded.separable:
            return fail("kappa agrees", f"k={k}")
        if full.atom_bits != seeded.atom_bits:
            return fail("atoms agree", f"k={k}")
        through0 = sorted(f for f in full.fragment_bits if f & 1)
        if full.all_fragments and through0 != sorted(seeded.fragment_bits):
            return fail("fragments through 0 agree", f"k={k}")
    return ok()


# -- structure theorems -------------------------------------------------------------------------------


def classifier_check(theorem: str):
    from smallsum.oracle import ORACLES

    def run(inst: PairInstance, ctx: Context) -> Outcome:
        if check_hypotheses(theorem, inst):
            return SKIPPED
        try:
            verdict = classify(theorem, inst)
        except TheoremViolation as exc:
            return fail("no-case", exc.clause)
        except HypothesisError as exc:
            return fail("hypothesis-disagreement", exc.clause)
        if not verdict.verified:
            return fail("recheck", "; ".join(verdict.failures))
        labels = tuple(verdict.case_labels())
        oracle = ORACLES.get(theorem)
        if ctx.oracle and oracle is not None:
            expected = oracle(inst)
            if set(expected) != set(labels):
                return fail("oracle-mismatch", f"classifier {sorted(labels)} oracle {sorted(expected)}")
        return ok(*labels)

    return run


def _pre_3x3(n, ps, pt, pst, mu):
    return (pt == 3) & (ps == 3)


def _pre_twothird(n, ps, pt, pst, mu):
    return (ps >= 3 - mu) & (pt >= np.maximum(4 - 2 * mu, ps)) & (3 * pst <= 2 * n + 2 * mu)


def _twothird_per_s(g, s):
    return bool(s & 1) and _generating(g, s) and degenerate_bits(g, s)


def _pre_n4(n, ps, pt, pst, mu):
    return (ps >= 3 - mu) & (pt >= np.maximum(4 - 2 * mu, ps)) & (pst <= n - 4 + 2 * mu)


def _pre_n3(n, ps, pt, pst, mu):
    return (ps >= 3 - mu) & (pt >= ps) & (pst <= n - 3 - mu)


def _pre_kemperman(n, ps, pt, pst, mu):
    return (mu == 1) & (pst <= n - 2)


def _pre_grynkiewicz(n, ps, pt, pst, mu):
    return (mu == 0) & (ps >= 3) & (pt >= ps) & (pst <= n - 3)


_PAIR_THEOREMS = {
    "3x3": (_pre_3x3, None, 16),
    "twothird": (_pre_twothird, _twothird_per_s, 12),
    "modular": (_pre_twothird, _twothird_per_s, 12),
    "n4": (_pre_n4, None, 12),
    "n3": (_pre_n3, None, 12),
    "kemperman": (_pre_kemperman, None, 12),
    "grynkiewicz": (_pre_grynkiewicz, None, 12),
}

for _id, (_pre, _per_s, _top) in _PAIR_THEOREMS.items():
    REGISTRY[_id] = Check(_id, "pair", classifier_check(_id), pair_scan(_pre, per_s=_per_s), _top,
                          f"classifier returns a verified case ({_id})")


def _near_run(inst: PairInstance, ctx: Context) -> Outcome:
    return classifier_check("near")(inst, ctx)


REGISTRY["near"] = Check("near", "single", _near_run, None, 14, "non-degenerate S is a near-progression",
                         uses_mu=True)

__all__ = ["Check", "Context", "Outcome", "REGISTRY", "ScanResult", "HYPOTHESES"]
