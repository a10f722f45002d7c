"""Recognisers for the structured sets that appear in small-sumset theorems."""

from __future__ import annotations

from dataclasses import dataclass, field

from smallsum.groups import AbelianGroup, Subgroup, all_subgroups, iter_bits, quotient
from smallsum.isoperimetry import scan_arrays
from smallsum.setops import SubsetMask, is_periodic_by


# -- progressions -------------------------------------------------------------------


@dataclass(frozen=True)
class ProgressionWitness:
    """``{start + i*r : 0 <= i < length}`` minus ``deleted``.

    A wildcard witness stands for a singleton, which is a progression of
    every difference.
    """

    group: AbelianGroup = field(repr=False)
    difference: int | None
    start: int
    length: int
    deleted: tuple[int, ...] = ()
    wildcard: bool = False

    @property
    def j(self) -> int:
        return len(self.deleted)

    def members(self) -> int:
        if self.wildcard:
            return 1 << self.start
        g, x, out = self.group, self.start, 0
        for _ in range(self.length):
            out |= 1 << x
            x = g.add(x, self.difference)
        for d in self.deleted:
            out &= ~(1 << d)
        return out

    def to_dict(self) -> dict:
        return {
            "difference": self.difference,
            "start": self.start,
            "length": self.length,
            "deleted": list(self.deleted),
            "wildcard": self.wildcard,
        }


def _positions(g: AbelianGroup, bits: int, r: int) -> tuple[int, list[int], list[int]] | None:
    """Walk the <r>-coset through the smallest member; None if the set leaves it."""
    a0 = (bits & -bits).bit_length() - 1
    walk, pos = [], []
    x = a0
    while True:
        walk.append(x)
        if bits >> x & 1:
            pos.append(len(walk) - 1)
        x = g.add(x, r)
        if x == a0:
            break
    if len(pos) != bits.bit_count():
        return None
    return len(walk), walk, pos


def _cover(m: int, pos: list[int]) -> tuple[int, int]:
    """Shortest circular arc covering ``pos`` on Z_m: (start position, length)."""
    best_gap, start = pos[0] + m - pos[-1], pos[0]
    for a, b in zip(pos, pos[1:]):
        if b - a > best_gap:
            best_gap, start = b - a, b
    return start, m - best_gap + 1


def detect_progression_bits(g: AbelianGroup, bits: int, j_max: int = 1) -> list[ProgressionWitness]:
    if not bits:
        return []
    size = bits.bit_count()
    if size == 1:
        x = bits.bit_length() - 1
        return [ProgressionWitness(g, None, x, 1, (), wildcard=True)]
    out = []
    for r in range(1, g.order):
        if g.neg(r) < r:
            continue
        found = _positions(g, bits, r)
        if found is None:
            continue
        m, walk, pos = found
        start, length = _cover(m, pos)
        for j in range(length - size, j_max + 1):
            # the order condition: the progression must not wrap onto itself
            if size + j > m:
                break
            span = [walk[(start + i) % m] for i in range(size + j)]
            deleted = tuple(x for x in span if not bits >> x & 1)
            out.append(ProgressionWitness(g, r, span[0], size + j, deleted))
    return out


def detect_progression(a: SubsetMask, j_max: int = 1) -> list[ProgressionWitness]:
    return detect_progression_bits(a.group, a.bits, j_max)


def progression_differences(g: AbelianGroup, bits: int, j: int) -> set[int] | None:
    """Differences r (both signs) making the set an (r,-j)-progression.

    ``None`` means every difference (singletons).
    """
    out: set[int] = set()
    for w in detect_progression_bits(g, bits, j):
        if w.wildcard:
            return None
        if w.j == j:
            out.add(w.difference)
            out.add(g.neg(w.difference))
    return out


def is_progression_bits(g: AbelianGroup, bits: int, j: int = 0) -> bool:
    diffs = progression_differences(g, bits, j)
    return diffs is None or bool(diffs)


def common_progression(g: AbelianGroup, a: int, b: int, j: int) -> int | None:
    """A difference r such that both sets are (r,-j)-progressions, or None."""
    da = progression_differences(g, a, j)
    db = progression_differences(g, b, j)
    if da is None and db is None:
        return 1 % g.order
    if da is None:
        return min(db) if db else None
    if db is None:
        return min(da) if da else None
    both = da & db
    return min(both) if both else None


def progression_orderings(q: AbelianGroup, bits: int) -> list[tuple[int | None, tuple[int, ...]]]:
    """Every way to list the set as an arithmetic progression of distinct terms.

    Each entry is ``(difference, terms in order)``; a singleton yields a single
    entry with difference None.
    """
    size = bits.bit_count()
    if size == 1:
        return [(None, (bits.bit_length() - 1,))]
    out = []
    for d in range(1, q.order):
        found = _positions(q, bits, d)
        if found is None:
            continue
        m, walk, pos = found
        start, length = _cover(m, pos)
        if length != size:
            continue
        starts = pos if size == m else [start]
        for s0 in starts:
            out.append((d, tuple(walk[(s0 + i) % m] for i in range(size))))
    return out


# -- H-decompositions -----------------------------------------------------------------


@dataclass(frozen=True)
class HDecomposition:
    H: Subgroup
    parts: tuple[tuple[int, int], ...]  # (coset number, part mask)
    is_progression: bool
    difference: int | None = None

    @property
    def masks(self) -> list[int]:
        return [p for _, p in self.parts]

    def to_dict(self) -> dict:
        g = self.H.group
        return {
            "H": SubsetMask(g, self.H.bits).tuples(),
            "parts": [SubsetMask(g, p).tuples() for _, p in self.parts],
            "is_progression": self.is_progression,
            "difference_coset": self.difference,
        }


def coset_parts(g: AbelianGroup, bits: int, h: Subgroup) -> dict[int, int]:
    phi = quotient(g, h)
    parts: dict[int, int] = {}
    for x in iter_bits(bits):
        c = phi(x)
        parts[c] = parts.get(c, 0) | (1 << x)
    return parts


def h_progressions(g: AbelianGroup, bits: int, h: Subgroup) -> list[tuple[int | None, list[int]]]:
    """All orderings of the H-decomposition that make it an H-progression."""
    phi = quotient(g, h)
    parts = coset_parts(g, bits, h)
    image = sum(1 << c for c in parts)
    return [(d, [parts[c] for c in order]) for d, order in progression_orderings(phi.target, image)]


def h_decompose(a: SubsetMask, h: Subgroup) -> HDecomposition:
    if not a.bits:
        raise ValueError("cannot decompose the empty set")
    g = a.group
    parts = coset_parts(g, a.bits, h)
    phi = quotient(g, h)
    image = sum(1 << c for c in parts)
    orders = progression_orderings(phi.target, image)
    if orders:
        d, order = orders[0]
        return HDecomposition(h, tuple((c, parts[c]) for c in order), True, d)
    return HDecomposition(h, tuple(sorted(parts.items())), False, None)


def same_difference(da: int | None, db: int | None) -> bool:
    return da is None or db is None or da == db


def is_h_minus_periodic(g: AbelianGroup, bits: int, h: Subgroup, nu: int) -> bool:
    """The set arises from an H-periodic set by deleting exactly ``nu`` elements."""
    missing = g.sumset(bits, h.bits).bit_count() - bits.bit_count() if bits else 0
    extra = nu - missing
    if extra < 0 or extra % h.order:
        return False
    room = g.order - (bits.bit_count() + missing)
    return extra <= room


# -- essential pairs -----------------------------------------------------------------------


@dataclass(frozen=True)
class EssentialPairWitness:
    H: Subgroup
    kind: str
    s_parts: tuple[int, ...]
    t_parts: tuple[int, ...]
    difference: int | None
    K0: int | None = None
    K1: int | None = None

    def to_dict(self) -> dict:
        g = self.H.group
        out = {
            "H": SubsetMask(g, self.H.bits).tuples(),
            "kind": self.kind,
            "s_parts": [SubsetMask(g, p).tuples() for p in self.s_parts],
            "t_parts": [SubsetMask(g, p).tuples() for p in self.t_parts],
            "difference_coset": self.difference,
        }
        if self.K0 is not None:
            out["K0"] = SubsetMask(g, self.K0).tuples()
            out["K1"] = SubsetMask(g, self.K1).tuples()
        return out


def _order_two_coset(g: AbelianGroup, part: int) -> int | None:
    """If the part is a coset of a subgroup of order 2, that subgroup's mask."""
    if part.bit_count() != 2:
        return None
    a = (part & -part).bit_length() - 1
    b = (part ^ (1 << a)).bit_length() - 1
    d = g.sub(b, a)
    if g.add(d, d) != 0:
        return None
    return 1 | (1 << d)


def _kind_i(g, h, sp, tp) -> bool:
    return (
        h.order - 1 == 1
        and sp[0].bit_count() == 1
        and sp[-1].bit_count() == 1
        and tp[0].bit_count() == 1
        and tp[-1].bit_count() == 1
    )


def _kind_ii(g, h, sp, tp) -> bool:
    if len(sp) < 2 or len(tp) < 2:
        return False
    if sp[-1].bit_count() != 1 or tp[-1].bit_count() != 1:
        return False
    if sp[-2].bit_count() != h.order - 1 or tp[-2].bit_count() != h.order - 1:
        return False
    return g.sumset(tp[-2], sp[-1]) == g.sumset(tp[-1], sp[-2])


def _kind_iii(g, h, sp, tp) -> tuple[int, int] | None:
    if h.order != 4:
        return None
    k0 = _order_two_coset(g, sp[0])
    k1 = _order_two_coset(g, sp[-1])
    if k0 is None or k1 is None or k0 == k1:
        return None
    if _order_two_coset(g, tp[0]) != k0 or _order_two_coset(g, tp[-1]) != k1:
        return None
    if g.sumset(k0, k1) != h.bits:
        return None
    return k0, k1


def _defect_is_h(g, h, bits) -> bool:
    return g.sumset(bits, h.bits).bit_count() - bits.bit_count() == h.order


def essential_pair_witnesses(
    g: AbelianGroup, s_bits: int, t_bits: int, h: Subgroup
) -> list[EssentialPairWitness]:
    """Every (kind, orientation) in which {S,T} is an H-essential pair."""
    if not s_bits or not t_bits:
        return []
    if not (_defect_is_h(g, h, s_bits) and _defect_is_h(g, h, t_bits)):
        return []
    out = []
    for ds, sp in h_progressions(g, s_bits, h):
        for dt, tp in h_progressions(g, t_bits, h):
            if not same_difference(ds, dt):
                continue
            d = ds if ds is not None else dt
            if _kind_i(g, h, sp, tp):
                out.append(EssentialPairWitness(h, "i", tuple(sp), tuple(tp), d))
            if _kind_ii(g, h, sp, tp):
                out.append(EssentialPairWitness(h, "ii", tuple(sp), tuple(tp), d))
            ks = _kind_iii(g, h, sp, tp)
            if ks is not None:
                out.append(EssentialPairWitness(h, "iii", tuple(sp), tuple(tp), d, *ks))
    return out


_KIND_RANK = {"i": 0, "ii": 1, "iii": 2}


def classify_essential_pair_bits(
    g: AbelianGroup, s_bits: int, t_bits: int, h: Subgroup
) -> EssentialPairWitness | None:
    found = essential_pair_witnesses(g, s_bits, t_bits, h)
    if not found:
        return None
    return min(found, key=lambda w: _KIND_RANK[w.kind])


def classify_essential_pair(s: SubsetMask, t: SubsetMask, h: Subgroup) -> EssentialPairWitness | None:
    return classify_essential_pair_bits(s.group, s.bits, t.bits, h)


def find_essential_pair(
    g: AbelianGroup, s_bits: int, t_bits: int, kinds: tuple[str, ...] = ("i", "ii", "iii")
) -> EssentialPairWitness | None:
    """Search every subgroup H for an essential pair of one of ``kinds``."""
    for h in all_subgroups(g):
        if h.order < 2 or h.bits == g.full:
            continue
        for w in essential_pair_witnesses(g, s_bits, t_bits, h):
            if w.kind in kinds:
                return w
    return None


# -- Vosper sets ------------------------------------------------------------------------------


def is_vosper_bits(g: AbelianGroup, s_bits: int) -> bool:
    n = g.order
    if n < 2:
        return True
    pop_x, pop_sum = scan_arrays(g, s_bits)
    need = (pop_x + s_bits.bit_count()).clip(max=n - 1)
    bad = (pop_x >= 2) & (pop_sum < need)
    return not bad.any()


def is_vosper(s: SubsetMask) -> bool:
    if not s.bits & 1:
        raise ValueError("a Vosper subset must contain 0")
    return is_vosper_bits(s.group, s.bits)


# -- quasi-periodic partitions -----------------------------------------------------------------


@dataclass(frozen=True)
class QuasiPeriodicPartition:
    H: Subgroup
    A0: int
    A1: int

    def to_dict(self) -> dict:
        g = self.H.group
        return {
            "H": SubsetMask(g, self.H.bits).tuples(),
            "A0": SubsetMask(g, self.A0).tuples(),
            "A1": SubsetMask(g, self.A1).tuples(),
        }


def quasi_periodic_partitions_bits(g: AbelianGroup, bits: int, h: Subgroup) -> list[QuasiPeriodicPartition]:
    out = []
    for c, part in sorted(coset_parts(g, bits, h).items()):
        rest = bits & ~part
        if is_periodic_by(g, rest, h):
            out.append(QuasiPeriodicPartition(h, rest, part))
    return out


def quasi_periodic_partitions(a: SubsetMask, h: Subgroup) -> list[QuasiPeriodicPartition]:
    if not a.bits:
        raise ValueError("cannot partition the empty set")
    return quasi_periodic_partitions_bits(a.group, a.bits, h)
