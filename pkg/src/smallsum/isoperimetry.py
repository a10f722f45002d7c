"""Connectivities, fragments, atoms, hyper-atoms and coset matchings.

Throughout, ``S`` contains 0. For a set ``X`` the boundary is ``(X+S)\\X``
and the exterior ``G\\(X+S)``. ``kappa_k(S)`` is the least boundary size over
``X`` with ``|X| >= k`` and ``|exterior| >= k``, or ``n - 2k + 1`` when no
such ``X`` exists.
"""

from __future__ import annotations

from collections import OrderedDict, deque
from dataclasses import dataclass, field

import numpy as np

from smallsum.errors import NoSuperAtom, NotDegenerate, NotSeparable, SmallSumError
from smallsum.groups import AbelianGroup, Subgroup, all_subgroups, iter_bits, quotient
from smallsum.setops import SubsetMask, canonical_bits, generated_bits, normalize_bits

FULL_SCAN_LIMIT = 24
AUTO_FULL_SCAN = 20
NODE_LIMIT = 5_000_000
ALL_FRAGMENTS_LIMIT = 16


@dataclass(frozen=True)
class ConnectivityReport:
    group: AbelianGroup = field(repr=False)
    s_bits: int
    k: int
    kappa: int
    separable: bool
    fragment_bits: tuple[int, ...] = field(repr=False)
    atom_bits: tuple[int, ...] = field(repr=False)
    atom_size: int
    mode: str
    exact: bool = True
    all_fragments: bool = True

    @property
    def fragments(self) -> list[SubsetMask]:
        return [SubsetMask(self.group, b) for b in self.fragment_bits]

    @property
    def atoms(self) -> list[SubsetMask]:
        return [SubsetMask(self.group, b) for b in self.atom_bits]

    def atoms_through_zero(self) -> list[int]:
        """Every atom containing 0, as masks (not only canonical ones)."""
        out = set()
        g = self.group
        for a in self.atom_bits:
            for x in iter_bits(a):
                out.add(g.shift(a, g.neg(x)))
        return sorted(out)

    def to_dict(self) -> dict:
        g = self.group
        return {
            "k": self.k,
            "kappa": self.kappa,
            "separable": self.separable,
            "mode": self.mode,
            "exact": self.exact,
            "all_fragments": self.all_fragments,
            "atom_size": self.atom_size,
            "atoms": [SubsetMask(g, b).tuples() for b in self.atom_bits],
            "fragments": [SubsetMask(g, b).tuples() for b in self.fragment_bits],
        }


# -- full scan ------------------------------------------------------------------

_SCAN_CACHE: OrderedDict = OrderedDict()


def scan_arrays(g: AbelianGroup, s_bits: int) -> tuple[np.ndarray, np.ndarray]:
    """Popcounts of every ``X`` and of ``X+S``, indexed by the mask ``X``."""
    key = (g, s_bits)
    hit = _SCAN_CACHE.get(key)
    if hit is not None:
        _SCAN_CACHE.move_to_end(key)
        return hit
    sums = g.all_sumsets(s_bits)
    pop_sum = np.bitwise_count(sums).astype(np.int16)
    pop_x = np.bitwise_count(np.arange(1 << g.order, dtype=sums.dtype)).astype(np.int16)
    _SCAN_CACHE[key] = (pop_x, pop_sum)
    if len(_SCAN_CACHE) > 4:
        _SCAN_CACHE.popitem(last=False)
    return pop_x, pop_sum


def _atoms_from(g: AbelianGroup, frags: list[int]) -> tuple[tuple[int, ...], int]:
    if not frags:
        return (), 0
    size = min(f.bit_count() for f in frags)
    canon = sorted({canonical_bits(g, f) for f in frags if f.bit_count() == size})
    return tuple(canon), size


def _full_scan(g: AbelianGroup, s_bits: int, k: int) -> ConnectivityReport:
    n = g.order
    pop_x, pop_sum = scan_arrays(g, s_bits)
    valid = (pop_x >= k) & (n - pop_sum >= k)
    if not valid.any():
        return ConnectivityReport(g, s_bits, k, n - 2 * k + 1, False, (), (), 0, "exact")
    bnd = pop_sum - pop_x
    kap = int(bnd[valid].min())
    frags = [int(x) for x in np.flatnonzero(valid & (bnd == kap))]
    atoms, size = _atoms_from(g, frags)
    keep = frags if n <= ALL_FRAGMENTS_LIMIT else [f for f in frags if f & 1]
    return ConnectivityReport(
        g, s_bits, k, kap, True, tuple(keep), atoms, size, "exact",
        all_fragments=n <= ALL_FRAGMENTS_LIMIT,
    )


# -- branch and bound -------------------------------------------------------------


def _cayley_order(g: AbelianGroup, s_bits: int) -> list[int]:
    seen, order, queue = {0}, [0], deque([0])
    steps = [x for x in iter_bits(s_bits) if x] + [g.neg(x) for x in iter_bits(s_bits) if x]
    while queue:
        v = queue.popleft()
        for s in steps:
            w = g.add(v, s)
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    order.extend(x for x in range(g.order) if x not in seen)
    return order


def _seed_bound(g: AbelianGroup, s_bits: int, k: int, rows: list[int]) -> int:
    """Best boundary over cheap candidates: subgroups and S-progressions."""
    n = g.order
    best = n - 2 * k + 1
    cands = [h.bits for h in all_subgroups(g)] if n <= 4096 else []
    for s in iter_bits(s_bits):
        x, cur = 0, 0
        for _ in range(n):
            cur |= 1 << x
            cands.append(cur)
            x = g.add(x, s)
    for c in cands:
        size = c.bit_count()
        if size < k:
            continue
        total = 0
        for x in iter_bits(c):
            total |= rows[x]
        if n - total.bit_count() >= k:
            best = min(best, total.bit_count() - size)
    return best


def _branch_and_bound(
    g: AbelianGroup, s_bits: int, k: int, node_limit: int
) -> tuple[int, list[int], bool]:
    """Exact kappa_k and every fragment through 0, by pruned enumeration.

    Returns ``(kappa, fragments_through_zero, complete)``; ``complete`` is
    False when the node budget ran out (kappa is then only an upper bound).
    """
    n = g.order
    rows = g.element_sums(s_bits)
    order = _cayley_order(g, s_bits)
    prefix = [0] * n
    acc = 0
    for p, x in enumerate(order):
        acc |= 1 << x
        prefix[p] = acc
    nodes = 0
    complete = True

    def search(bound: int, collect: bool) -> tuple[int, list[int]]:
        nonlocal nodes, complete
        best = bound
        found: list[int] = []
        # stack of (included mask, its sumset, last position used)
        stack = [(1, rows[0], 0)]
        while stack:
            inc, sums, p = stack.pop()
            nodes += 1
            if nodes > node_limit:
                complete = False
                break
            size = inc.bit_count()
            total = sums.bit_count()
            if n - total < k:
                continue
            if size >= k:
                b = total - size
                if b < best or (collect and b == best):
                    if b < best and not collect:
                        best = b
                    if collect:
                        found.append(inc)
            if size + (n - 1 - p) < k:
                continue
            lower = (sums & prefix[p] & ~inc).bit_count()
            if lower > best or (lower == best and not collect):
                continue
            for q in range(n - 1, p, -1):
                x = order[q]
                stack.append((inc | (1 << x), sums | rows[x], q))
        return best, found

    seed = _seed_bound(g, s_bits, k, rows)
    kap, _ = search(seed + 1, collect=False)
    # no set beat n-2k+1, so S is not k-separable
    if kap > n - 2 * k:
        return n - 2 * k + 1, [], complete
    _, frags = search(kap, collect=True)
    return kap, frags, complete


def _seeded(g: AbelianGroup, s_bits: int, k: int, node_limit: int) -> ConnectivityReport:
    kap, frags, complete = _branch_and_bound(g, s_bits, k, node_limit)
    if not frags:
        return ConnectivityReport(
            g, s_bits, k, kap, False, (), (), 0, "seeded", exact=complete, all_fragments=False
        )
    atoms, size = _atoms_from(g, frags)
    return ConnectivityReport(
        g, s_bits, k, kap, True, tuple(sorted(frags)), atoms, size, "seeded",
        exact=complete, all_fragments=False,
    )


# -- public API ----------------------------------------------------------------------

_KAPPA_CACHE: OrderedDict = OrderedDict()


def kappa_bits(g: AbelianGroup, s_bits: int, k: int, mode: str = "auto",
               node_limit: int = NODE_LIMIT) -> ConnectivityReport:
    if not s_bits & 1:
        raise SmallSumError("kappa needs 0 in S (normalise S first)")
    if k < 1:
        raise SmallSumError("k must be >= 1")
    if g.order < 2 * k - 1:
        raise SmallSumError(f"kappa_{k} undefined for a group of order {g.order} < {2 * k - 1}")
    if mode == "auto":
        mode = "exact" if g.order <= AUTO_FULL_SCAN else "seeded"
    key = (g, s_bits, k, mode)
    hit = _KAPPA_CACHE.get(key)
    if hit is not None:
        return hit
    if mode == "exact":
        if g.order > FULL_SCAN_LIMIT:
            raise SmallSumError(f"full scan refused for order {g.order} > {FULL_SCAN_LIMIT}")
        rep = _full_scan(g, s_bits, k)
    elif mode == "seeded":
        rep = _seeded(g, s_bits, k, node_limit)
    else:
        raise SmallSumError(f"unknown kappa mode {mode!r}")
    _KAPPA_CACHE[key] = rep
    if len(_KAPPA_CACHE) > 4096:
        _KAPPA_CACHE.popitem(last=False)
    return rep


def kappa(s: SubsetMask, k: int, mode: str = "auto") -> ConnectivityReport:
    """kappa_k of S, computed on the translate of S through 0 when 0 is missing."""
    if not s.bits:
        raise SmallSumError("kappa of the empty set")
    bits = s.bits if s.bits & 1 else normalize_bits(s.group, s.bits)[0]
    return kappa_bits(s.group, bits, k, mode)


def kappa_star(g: AbelianGroup, bits: int, k: int) -> int:
    """kappa_k of a translate of the set through 0 (independent of the translate)."""
    star, _ = normalize_bits(g, bits)
    return kappa_bits(g, star, k).kappa


def negative_fragments(s: SubsetMask, k: int) -> list[SubsetMask]:
    return kappa(s.neg(), k).fragments


# -- degenerate sets ----------------------------------------------------------------


def subgroup_two_fragments(g: AbelianGroup, s_bits: int) -> list[Subgroup]:
    """Subgroups that are 2-fragments of S; raises NotSeparable when kappa_2 has none."""
    rep = kappa_bits(g, s_bits, 2)
    if not rep.separable:
        raise NotSeparable("S is not 2-separable")
    n = g.order
    out = []
    for h in all_subgroups(g):
        if h.order < 2:
            continue
        total = g.sumset(h.bits, s_bits).bit_count()
        if n - total >= 2 and total - h.order == rep.kappa:
            out.append(h)
    return out


def is_degenerate(s: SubsetMask) -> Subgroup | None:
    frags = subgroup_two_fragments(s.group, s.bits)
    return frags[0] if frags else None


def degenerate_bits(g: AbelianGroup, s_bits: int) -> bool:
    """Degeneracy with non-separable sets counted as non-degenerate."""
    if g.order < 3:
        return False
    try:
        return bool(subgroup_two_fragments(g, s_bits))
    except NotSeparable:
        return False


def hyper_atoms(g: AbelianGroup, s_bits: int) -> list[Subgroup]:
    """Inclusion-maximal subgroups among the 2-fragments of S."""
    frags = subgroup_two_fragments(g, s_bits)
    return [h for h in frags if not any(o.bits != h.bits and h.bits & ~o.bits == 0 for o in frags)]


def hyper_atom_candidates(g: AbelianGroup, s_bits: int) -> list[Subgroup]:
    frags = subgroup_two_fragments(g, s_bits)
    if not frags:
        raise NotDegenerate("S has no subgroup 2-fragment")
    top = max(h.order for h in frags)
    return [h for h in frags if h.order == top]


def hyper_atom(s: SubsetMask) -> Subgroup:
    """Largest subgroup 2-fragment; ties go to the lexicographically smallest."""
    return hyper_atom_candidates(s.group, s.bits)[0]


def super_atom_bits(g: AbelianGroup, bits: int) -> Subgroup:
    star, _ = normalize_bits(g, bits)
    gen = generated_bits(g, star)
    if gen != g.full:
        return next(h for h in all_subgroups(g) if h.bits == gen)
    try:
        return hyper_atom_candidates(g, star)[0]
    except (NotDegenerate, NotSeparable):
        raise NoSuperAtom("S generates G and is non-degenerate") from None


def super_atom(s: SubsetMask) -> Subgroup:
    if not s.bits:
        raise SmallSumError("super-atom of the empty set")
    return super_atom_bits(s.group, s.bits)


def is_super_atom(g: AbelianGroup, h: Subgroup, bits: int) -> bool:
    """Whether H is a super-atom of the set: ``<A*>`` when proper, else a hyper-atom."""
    star, _ = normalize_bits(g, bits)
    gen = generated_bits(g, star)
    if gen != g.full:
        return h.bits == gen
    try:
        return any(c.bits == h.bits for c in hyper_atoms(g, star))
    except NotSeparable:
        return False


# -- (T,S,H)-matchings ------------------------------------------------------------------


@dataclass(frozen=True)
class MatchingAssignment:
    H: Subgroup
    J: tuple[int, ...]
    assignment: dict
    size: int
    u: int
    t: int
    guaranteed: bool
    s_parts: tuple[int, ...] = field(repr=False)
    t_parts: tuple[int, ...] = field(repr=False)


def decomposition_parts(g: AbelianGroup, bits: int, h: Subgroup, first: int | None = None) -> list[int]:
    """Nonempty coset intersections, the part containing ``first`` leading, then by coset number."""
    phi = quotient(g, h)
    by_coset: dict[int, int] = {}
    for x in iter_bits(bits):
        c = phi(x)
        by_coset[c] = by_coset.get(c, 0) | (1 << x)
    keys = sorted(by_coset)
    if first is not None:
        c0 = phi(first)
        keys.remove(c0)
        keys.insert(0, c0)
    return [by_coset[c] for c in keys]


def max_bipartite_matching(adj: list[list[int]]) -> dict[int, int]:
    """Kuhn's augmenting paths; returns left -> right."""
    match_r: dict[int, int] = {}

    def augment(i: int, seen: set) -> bool:
        for r in adj[i]:
            if r in seen:
                continue
            seen.add(r)
            if r not in match_r or augment(match_r[r], seen):
                match_r[r] = i
                return True
        return False

    for i in range(len(adj)):
        augment(i, set())
    return {i: r for r, i in match_r.items()}


def find_matching(t: SubsetMask, s: SubsetMask, h: Subgroup) -> MatchingAssignment:
    """Maximum (T,S,H)-matching; H must be a subgroup 2-fragment of S (0 in S)."""
    g = s.group
    if not s.bits & 1:
        raise SmallSumError("S must contain 0")
    if not t.bits:
        raise SmallSumError("T must be nonempty")
    if not any(f.bits == h.bits for f in subgroup_two_fragments(g, s.bits)):
        raise SmallSumError("H is not a subgroup 2-fragment of S")
    return matching_bits(g, t.bits, s.bits, h)


def matching_bits(g: AbelianGroup, t_bits: int, s_bits: int, h: Subgroup) -> MatchingAssignment:
    """The matching search itself, without validating H."""
    phi = quotient(g, h)
    s_parts = decomposition_parts(g, s_bits, h, first=0)
    t_parts = decomposition_parts(g, t_bits, h)
    u, tt = len(s_parts) - 1, len(t_parts) - 1
    occupied = {phi(next(iter_bits(p))) for p in t_parts}
    s_cos = [phi(next(iter_bits(p))) for p in s_parts]
    q = phi.target
    adj, how = [], []
    for tp in t_parts:
        c = phi(next(iter_bits(tp)))
        row, via = [], {}
        for j in range(1, u + 1):
            d = q.add(c, s_cos[j])
            if d not in occupied and d not in via:
                via[d] = j
                row.append(d)
        adj.append(row)
        how.append(via)
    match = max_bipartite_matching(adj)
    assignment = {i: how[i][r] for i, r in sorted(match.items())}
    guaranteed = g.order >= (tt + u + 1) * h.order
    return MatchingAssignment(
        h, tuple(sorted(assignment)), assignment, len(assignment), u, tt, guaranteed,
        tuple(s_parts), tuple(t_parts),
    )


def check_matching(m: MatchingAssignment, g: AbelianGroup) -> bool:
    """Re-verify a matching from its parts: distinct cosets outside T+H."""
    t_plus_h = 0
    for p in m.t_parts:
        t_plus_h |= g.sumset(p, m.H.bits)
    used = 0
    for i, j in m.assignment.items():
        block = g.sumset(g.sumset(m.t_parts[i], m.s_parts[j]), m.H.bits)
        if block.bit_count() != m.H.order or block & (t_plus_h | used):
            return False
        used |= block
    return True
