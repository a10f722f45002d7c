"""Instance enumeration, verification sweeps and counterexample minimisation."""

from __future__ import annotations

import logging
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from smallsum.checks import FAIL, REGISTRY, Check, Context, ScanResult, canonical_array
from smallsum.classifier import PairInstance
from smallsum.errors import SmallSumError
from smallsum.groups import (
    AbelianGroup,
    GroupSpec,
    Subgroup,
    abelian_groups,
    abelian_groups_of_order,
    all_subgroups,
    iter_bits,
    make_group,
    quotient,
)
from smallsum.setops import SubsetMask, canonical_bits, popcount

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**10
WORKERS_ENV = "SMALLSUM_WORKERS"


class BudgetExceeded(SmallSumError):
    def __init__(self, estimate: float, budget: float):
        super().__init__(
            f"estimated {estimate:.3g} sumset evaluations exceeds the budget {budget:.3g}; "
            "use random sampling or raise --budget"
        )
        self.estimate = estimate
        self.budget = budget


@dataclass
class InstanceFilter:
    groups: list[list[int]] | None = None
    max_order: int | None = None
    min_order: int = 2
    s_sizes: tuple[int, int] | None = None
    t_sizes: tuple[int, int] | None = None
    mus: tuple[int, ...] = (0, 1)
    theorem: str | None = None
    sampling: str = "exhaustive"
    seed: int = 0
    count: int = 1000
    budget: float = DEFAULT_BUDGET
    oracle: bool = False

    def group_list(self) -> list[list[int]]:
        if self.groups is not None:
            return [list(f) for f in self.groups]
        top = self.max_order
        if top is None:
            top = REGISTRY[self.theorem].max_order if self.theorem else 8
        return abelian_groups(top, self.min_order)

    def context(self) -> Context:
        return Context(oracle=self.oracle, s_sizes=self.s_sizes, t_sizes=self.t_sizes, mus=self.mus)


@dataclass
class Counterexample:
    instance: dict
    theorem: str
    clause: str
    detail: str = ""
    minimized: bool = False

    def pair(self) -> PairInstance:
        return PairInstance.from_dict(self.instance)

    def to_dict(self) -> dict:
        return {
            "type": "violation",
            "theorem": self.theorem,
            "clause": self.clause,
            "detail": self.detail,
            "minimized": self.minimized,
            "instance": self.instance,
        }


@dataclass
class VerificationReport:
    theorem: str
    mode: str
    checked: int
    skipped: int
    violations: list[Counterexample]
    tally: dict[str, int]
    hits: dict[str, int]
    examples: dict[str, dict]
    groups: list[list[int]]
    wall_time: float = 0.0
    workers: int = 1

    @property
    def passed(self) -> bool:
        return not self.violations

    def summary(self) -> dict:
        return {
            "type": "summary",
            "theorem": self.theorem,
            "mode": self.mode,
            "pass": self.passed,
            "checked": self.checked,
            "skipped": self.skipped,
            "violations": len(self.violations),
            "tally": dict(sorted(self.tally.items())),
            "hits": dict(sorted(self.hits.items())),
            "examples": dict(sorted(self.examples.items())),
            "groups": self.groups,
            "workers": self.workers,
            "wall_time": round(self.wall_time, 3),
        }

    def jsonl_records(self) -> list[dict]:
        return [v.to_dict() for v in self.violations] + [self.summary()]


# -- enumeration ------------------------------------------------------------------------------


def _size_count(n: int, lim: tuple[int, int] | None) -> float:
    """Approximate number of translation classes of subsets with sizes in ``lim``."""
    lo, hi = lim if lim is not None else (1, n)
    total = sum(math.comb(n, k) for k in range(max(lo, 1), min(hi, n) + 1))
    return max(total / n, 1.0)


def estimate_cost(check: Check, f: InstanceFilter) -> float:
    """Estimated sumset evaluations for an exhaustive sweep."""
    cost = 0.0
    for factors in f.group_list():
        n = math.prod(factors)
        s_count = _size_count(n, f.s_sizes)
        if check.kind == "pair":
            cost += s_count * _size_count(n, f.t_sizes)
        else:
            cost += s_count * (1 << n) * len(f.mus if check.uses_mu else (0,))
    return cost


def _s_candidates(g: GroupSpec, f: InstanceFilter) -> list[int]:
    arr = canonical_array(g)
    if f.s_sizes is not None:
        pop = popcount(arr)
        arr = arr[(pop >= f.s_sizes[0]) & (pop <= f.s_sizes[1])]
    return [int(x) for x in arr]


def _random_subset(rng: random.Random, n: int, lim: tuple[int, int] | None) -> int:
    lo, hi = lim if lim is not None else (1, n)
    size = rng.randint(max(lo, 1), min(hi, n))
    bits = 0
    for x in rng.sample(range(n), size):
        bits |= 1 << x
    return bits


def enumerate_instances(f: InstanceFilter) -> Iterator[PairInstance]:
    """Deterministic stream of instances on canonical translation representatives.

    Pair instances carry ``mu = |S|+|T|-|S+T|`` and are kept when it lies in
    ``f.mus``; single-set instances are emitted once per requested ``mu``.
    """
    check = REGISTRY.get(f.theorem) if f.theorem else None
    pair = check is None or check.kind == "pair"
    mus = f.mus if (check is None or pair or check.uses_mu) else (0,)
    if f.sampling == "random":
        rng = random.Random(f.seed)
        groups = [make_group(x) for x in f.group_list()]
        produced = 0
        while produced < f.count:
            g = rng.choice(groups)
            s = canonical_bits(g, _random_subset(rng, g.order, f.s_sizes))
            if pair:
                t = canonical_bits(g, _random_subset(rng, g.order, f.t_sizes))
                mu = s.bit_count() + t.bit_count() - g.sumset(s, t).bit_count()
                yield PairInstance.of(g, s, t, mu)
            else:
                yield PairInstance.of(g, s, 0, rng.choice(list(mus)))
            produced += 1
        return
    if check is not None:
        est = estimate_cost(check, f)
        if est > f.budget:
            raise BudgetExceeded(est, f.budget)
    for factors in f.group_list():
        g = make_group(factors)
        for s in _s_candidates(g, f):
            if not pair:
                for mu in mus:
                    yield PairInstance.of(g, s, 0, mu)
                continue
            for t in _s_candidates(g, InstanceFilter(s_sizes=f.t_sizes)):
                mu = s.bit_count() + t.bit_count() - g.sumset(s, t).bit_count()
                if mu in f.mus:
                    yield PairInstance.of(g, s, t, mu)


# -- sweeps ---------------------------------------------------------------------------------------


def _worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise SmallSumError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def _run_task(task) -> ScanResult:
    theorem, factors, s_list, ctx = task
    check = REGISTRY[theorem]
    g = make_group(factors)
    res = ScanResult()
    for s in s_list:
        if check.kind == "pair" and check.scan is not None:
            check.scan(g, s, ctx, res, check)
            continue
        mus = ctx.mus if check.uses_mu else (0,)
        for mu in mus:
            inst = PairInstance.of(g, s, 0, mu)
            res.record(inst, check.run(inst, ctx))
    return res


def _run_sample(task) -> ScanResult:
    theorem, items, ctx = task
    check = REGISTRY[theorem]
    res = ScanResult()
    for data in items:
        inst = PairInstance.from_dict(data)
        res.record(inst, check.run(inst, ctx))
    return res


def _chunks(seq: list, size: int) -> list[list]:
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def _execute(fn, tasks: list, workers: int) -> list[ScanResult]:
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map keeps task order, so the merge is independent of scheduling
        return list(pool.map(fn, tasks, chunksize=1))


def verify_theorem(theorem: str, f: InstanceFilter | None = None, *, workers: int | None = None) -> VerificationReport:
    if theorem not in REGISTRY:
        raise SmallSumError(f"unknown theorem id {theorem!r}; known: {', '.join(sorted(REGISTRY))}")
    f = f or InstanceFilter()
    f.theorem = theorem
    check = REGISTRY[theorem]
    ctx = f.context()
    workers = workers or _worker_count()
    start = time.perf_counter()
    groups = f.group_list()
    if f.sampling == "random":
        items = [inst.to_dict() for inst in enumerate_instances(f)]
        tasks = [(theorem, chunk, ctx) for chunk in _chunks(items, 200)]
        results = _execute(_run_sample, tasks, workers)
    elif f.sampling == "exhaustive":
        est = estimate_cost(check, f)
        if est > f.budget:
            raise BudgetExceeded(est, f.budget)
        tasks = []
        for factors in groups:
            g = make_group(factors)
            s_list = _s_candidates(g, f)
            for chunk in _chunks(s_list, max(1, len(s_list) // (8 * workers) or 1)):
                tasks.append((theorem, factors, chunk, ctx))
        log.info("%s: %d tasks over %d groups, %d workers", theorem, len(tasks), len(groups), workers)
        results = _execute(_run_task, tasks, workers)
    else:
        raise SmallSumError(f"unknown sampling mode {f.sampling!r}")
    total = ScanResult()
    for r in results:
        total.merge(r)
    violations = [Counterexample(inst, theorem, clause, detail) for inst, clause, detail in total.violations]
    return VerificationReport(
        theorem=theorem,
        mode=f.sampling,
        checked=total.checked,
        skipped=total.skipped,
        violations=violations,
        tally=dict(total.tally),
        hits=dict(total.hits),
        examples=dict(total.examples),
        groups=groups,
        wall_time=time.perf_counter() - start,
        workers=workers,
    )


# -- minimisation ---------------------------------------------------------------------------------


def _failure(theorem: str, inst: PairInstance, ctx: Context) -> str | None:
    out = REGISTRY[theorem].run(inst, ctx)
    return out.clause if out.status == FAIL else None


def find_isomorphism(g: AbelianGroup, elements: list[int], add) -> tuple[GroupSpec, dict[int, int]] | None:
    """Re-encode a finite abelian group given by ``elements`` and ``add`` as a GroupSpec.

    Returns the GroupSpec and a map from the given elements to its indices.
    """
    n = len(elements)
    zero = next(x for x in elements if add(x, x) == x)

    def order(x):
        k, y = 1, x
        while y != zero:
            y = add(y, x)
            k += 1
        return k

    orders = {x: order(x) for x in elements}
    for factors in abelian_groups_of_order(n) if n > 1 else [[1]]:
        spec = make_group(factors)
        chosen: list[int] = []

        def span(gens):
            out = {zero: ()}
            for gen, d in zip(gens, factors):
                nxt = {}
                for x, coords in out.items():
                    y = x
                    for c in range(d):
                        nxt[y] = coords + (c,)
                        y = add(y, gen)
                out = nxt
            return out

        def search(i):
            if i == len(factors):
                return span(chosen) if len(span(chosen)) == n else None
            for x in elements:
                if orders[x] != factors[i]:
                    continue
                chosen.append(x)
                if len(span(chosen)) == math.prod(factors[: i + 1]):
                    found = search(i + 1)
                    if found:
                        return found
                chosen.pop()
            return None

        found = search(0)
        if found:
            return spec, {x: spec.encode(c) for x, c in found.items()}
    return None


def _restrict(inst: PairInstance, k: Subgroup) -> PairInstance | None:
    """Move S and T into the subgroup K when both lie in it."""
    g = inst.group
    if inst.S.bits & ~k.bits or inst.T.bits & ~k.bits:
        return None
    found = find_isomorphism(g, list(k), g.add)
    if found is None:
        return None
    spec, m = found
    s = sum(1 << m[x] for x in iter_bits(inst.S.bits))
    t = sum(1 << m[x] for x in iter_bits(inst.T.bits))
    return PairInstance.of(spec, s, t, inst.mu)


def _project(inst: PairInstance, h: Subgroup) -> PairInstance | None:
    """Push S and T to G/H."""
    g = inst.group
    phi = quotient(g, h)
    q = phi.target
    found = find_isomorphism(q, list(range(q.order)), q.add)
    if found is None:
        return None
    spec, m = found
    s = sum(1 << m[c] for c in iter_bits(phi.image(inst.S.bits)))
    t = sum(1 << m[c] for c in iter_bits(phi.image(inst.T.bits)))
    return PairInstance.of(spec, s, t, inst.mu)


def _normalise(inst: PairInstance) -> PairInstance:
    g = inst.group
    s = canonical_bits(g, inst.S.bits) if inst.S.bits else 0
    t = canonical_bits(g, inst.T.bits) if inst.T.bits else 0
    return PairInstance.of(g, s, t, inst.mu)


def _variants(inst: PairInstance, theorem: str) -> list[PairInstance]:
    """Candidate instances with the same mu and, for pair statements, the observed mu."""
    out = [inst]
    if REGISTRY[theorem].kind == "pair" and inst.T.bits:
        g = inst.group
        mu = inst.S.cardinality + inst.T.cardinality - g.sumset(inst.S.bits, inst.T.bits).bit_count()
        if mu != inst.mu:
            out.append(PairInstance(g, inst.S, inst.T, mu))
    return out


def minimize(c: Counterexample, ctx: Context | None = None) -> Counterexample:
    """Greedy shrink: smaller groups first, then elements of S, then of T."""
    ctx = ctx or Context()
    theorem = c.theorem
    inst = c.pair()
    clause = _failure(theorem, inst, ctx)
    if clause is None:
        raise SmallSumError("counterexample does not reproduce")
    if clause != c.clause:
        raise SmallSumError(f"counterexample reproduces clause {clause!r}, not {c.clause!r}")

    def still_fails(cand: PairInstance | None) -> PairInstance | None:
        if cand is None:
            return None
        for v in _variants(cand, theorem):
            if _failure(theorem, v, ctx) == clause:
                return v
        return None

    changed = True
    while changed:
        changed = False
        g = inst.group
        for k in sorted(all_subgroups(g), key=lambda h: h.order):
            if k.order == g.order:
                continue
            cand = still_fails(_restrict(_normalise(inst), k)) or (
                still_fails(_project(inst, k)) if k.order > 1 else None
            )
            if cand is not None:
                inst, changed = cand, True
                break
        if changed:
            continue
        for which in ("S", "T"):
            mask = inst.S.bits if which == "S" else inst.T.bits
            for x in iter_bits(mask):
                smaller = mask & ~(1 << x)
                if not smaller:
                    continue
                s, t = (smaller, inst.T.bits) if which == "S" else (inst.S.bits, smaller)
                cand = still_fails(PairInstance.of(inst.group, s, t, inst.mu))
                if cand is not None:
                    inst, changed = cand, True
                    break
            if changed:
                break
    inst = _normalise(inst)
    out = REGISTRY[theorem].run(inst, ctx)
    return Counterexample(inst.to_dict(), theorem, clause, out.detail, minimized=True)


def dedupe_minimized(items: list[Counterexample]) -> list[Counterexample]:
    seen, out = set(), []
    for c in items:
        inst = c.pair()
        g = inst.group
        key = (
            tuple(c.instance["group"]),
            canonical_bits(g, inst.S.bits) if inst.S.bits else 0,
            canonical_bits(g, inst.T.bits) if inst.T.bits else 0,
            inst.mu,
            c.clause,
        )
        if key not in seen:
            seen.add(key)
            out.append(c)
    return out
