"""Finite abelian groups, subgroups and quotient morphisms.

Elements are plain integers in ``range(order)``. For a :class:`GroupSpec`
the integer is the mixed-radix encoding of the residue tuple with the first
factor most significant; for a :class:`QuotientGroup` it is the coset
number, cosets being numbered by their smallest member.

Subsets are integer bitmasks: bit ``i`` set means element ``i`` is present.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_ORDER = 1 << 20

# groups above this size translate masks bit by bit instead of by byte tables
_TABLE_LIMIT = 256


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


class AbelianGroup:
    """Common machinery for a finite abelian group on ``range(order)``.

    Subclasses provide ``order``, ``_add`` and ``_neg``. Everything else
    (translation tables, mask shifts, vectorised shifts) is derived here.
    """

    order: int

    def _add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def _neg(self, a: int) -> int:
        raise NotImplementedError

    # -- element arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self.translation(b)[a]

    def neg(self, a: int) -> int:
        return self.negation[a]

    def sub(self, a: int, b: int) -> int:
        return self.translation(self.negation[b])[a]

    def mul(self, k: int, a: int) -> int:
        """``k`` copies of ``a`` added together (``k`` may be negative)."""
        if k < 0:
            k, a = -k, self.negation[a]
        acc, base = 0, a
        while k:
            if k & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            k >>= 1
        return acc

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.add(x, a)
            k += 1
        return k

    @cached_property
    def full(self) -> int:
        return (1 << self.order) - 1

    @cached_property
    def negation(self) -> tuple[int, ...]:
        return tuple(self._neg(a) for a in range(self.order))

    @cached_property
    def _translations(self) -> dict[int, tuple[int, ...]]:
        return {}

    def translation(self, g: int) -> tuple[int, ...]:
        """The permutation ``x -> x + g`` as a tuple."""
        perm = self._translations.get(g)
        if perm is None:
            perm = tuple(self._add(x, g) for x in range(self.order))
            self._translations[g] = perm
        return perm

    # -- mask translation ---------------------------------------------------

    @cached_property
    def _shift_tables(self) -> dict[int, list[list[int]]]:
        return {}

    def _table(self, g: int) -> list[list[int]]:
        tab = self._shift_tables.get(g)
        if tab is None:
            perm = self.translation(g)
            tab = []
            for c in range(0, self.order, 8):
                row = [0] * 256
                for b in range(1, 256):
                    low = (b & -b).bit_length() - 1
                    i = c + low
                    row[b] = row[b & (b - 1)] | ((1 << perm[i]) if i < self.order else 0)
                tab.append(row)
            self._shift_tables[g] = tab
        return tab

    def shift(self, mask: int, g: int) -> int:
        """The translate ``mask + g``."""
        if g == 0 or mask == 0:
            return mask
        if self.order > _TABLE_LIMIT:
            perm = self.translation(g)
            return bits_of(perm[i] for i in iter_bits(mask))
        out = 0
        for row in self._table(g):
            if not mask:
                break
            out |= row[mask & 255]
            mask >>= 8
        return out

    def negate(self, mask: int) -> int:
        neg = self.negation
        return bits_of(neg[i] for i in iter_bits(mask))

    def sumset(self, a: int, b: int) -> int:
        if a.bit_count() > b.bit_count():
            a, b = b, a
        out = 0
        for x in iter_bits(a):
            out |= self.shift(b, x)
        return out

    def element_sums(self, s: int) -> list[int]:
        """``[x + s for x in range(order)]`` as masks; row ``x`` is the mask of ``x + S``."""
        return [self.shift(s, x) for x in range(self.order)]

    # -- vectorised helpers -------------------------------------------------

    @cached_property
    def _np_tables(self) -> dict[int, np.ndarray]:
        return {}

    def shift_array(self, arr: np.ndarray, g: int) -> np.ndarray:
        """Translate every mask in ``arr`` by ``g`` (order must be < 64)."""
        if self.order >= 64:
            raise ValueError("vectorised shifts need order < 64")
        if g == 0:
            return arr.copy()
        tab = self._np_tables.get(g)
        if tab is None:
            tab = np.array(self._table(g), dtype=np.uint64)
            self._np_tables[g] = tab
        work = arr.astype(np.uint64, copy=False)
        out = np.zeros(arr.shape, dtype=np.uint64)
        for c in range(tab.shape[0]):
            out |= tab[c][(work >> np.uint64(8 * c)) & np.uint64(255)]
        return out.astype(arr.dtype, copy=False)

    def sumset_array(self, arr: np.ndarray, s: int) -> np.ndarray:
        """``X + S`` for every mask ``X`` in ``arr``."""
        out = np.zeros_like(arr)
        for x in iter_bits(s):
            out |= self.shift_array(arr, x)
        return out

    def all_sumsets(self, s: int) -> np.ndarray:
        """``X + S`` for every ``X`` in ``range(2**order)``, indexed by ``X``."""
        n = self.order
        if n > 26:
            raise ValueError(f"full subset scan refused for order {n}")
        dtype = np.uint32 if n <= 32 else np.uint64
        sums = np.zeros(1 << n, dtype=dtype)
        for b in range(n):
            lo = 1 << b
            sums[lo : lo << 1] = sums[:lo] | dtype(self.shift(s, b))
        return sums

    # -- misc ---------------------------------------------------------------

    def elements(self) -> range:
        return range(self.order)

    def is_cyclic(self) -> bool:
        return any(self.element_order(a) == self.order for a in range(self.order))


class GroupSpec(AbelianGroup):
    """Z_{d_1} x ... x Z_{d_m} with mixed-radix element indexing."""

    def __init__(self, factors: Sequence[int]):
        self.factors = tuple(int(d) for d in factors)
        self.order = math.prod(self.factors)
        # weight of each coordinate in the index
        w, weights = 1, []
        for d in reversed(self.factors):
            weights.append(w)
            w *= d
        self.weights = tuple(reversed(weights))

    def __repr__(self) -> str:
        return f"GroupSpec({list(self.factors)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupSpec) and other.factors == self.factors

    def __hash__(self) -> int:
        return hash(("GroupSpec", self.factors))

    def label(self) -> str:
        return "x".join(f"Z{d}" for d in self.factors) or "Z1"

    def encode(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} coordinates, got {len(coords)}")
        return sum((c % d) * w for c, d, w in zip(coords, self.factors, self.weights))

    def decode(self, idx: int) -> tuple[int, ...]:
        out = []
        for d in reversed(self.factors):
            idx, r = divmod(idx, d)
            out.append(r)
        return tuple(reversed(out))

    def _add(self, a: int, b: int) -> int:
        if len(self.factors) == 1:
            return (a + b) % self.order
        return self.encode([x + y for x, y in zip(self.decode(a), self.decode(b))])

    def _neg(self, a: int) -> int:
        if len(self.factors) == 1:
            return -a % self.order
        return self.encode([-x for x in self.decode(a)])

    def shift(self, mask: int, g: int) -> int:
        if len(self.factors) == 1 and mask and g:
            n = self.order
            return ((mask << g) | (mask >> (n - g))) & self.full
        return super().shift(mask, g)


@dataclass(frozen=True)
class Element:
    idx: int
    group: AbelianGroup = field(repr=False, compare=False)

    def __post_init__(self):
        if not 0 <= self.idx < self.group.order:
            raise ValueError(f"element index {self.idx} outside group of order {self.group.order}")

    def coords(self) -> tuple[int, ...]:
        if isinstance(self.group, GroupSpec):
            return self.group.decode(self.idx)
        return (self.idx,)

    def __add__(self, other: Element) -> Element:
        return Element(self.group.add(self.idx, other.idx), self.group)

    def __neg__(self) -> Element:
        return Element(self.group.neg(self.idx), self.group)

    def __sub__(self, other: Element) -> Element:
        return Element(self.group.sub(self.idx, other.idx), self.group)


@dataclass(frozen=True)
class Subgroup:
    group: AbelianGroup = field(repr=False)
    bits: int
    generators: tuple[int, ...] = field(default=(), compare=False)

    @property
    def order(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> x & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    @property
    def members(self):
        from smallsum.setops import SubsetMask

        return SubsetMask(self.group, self.bits)

    def is_trivial(self) -> bool:
        return self.bits == 1

    def is_whole(self) -> bool:
        return self.bits == self.group.full

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, members={sorted(self)})"


class QuotientGroup(AbelianGroup):
    """G/H with cosets numbered by their smallest member."""

    def __init__(self, parent: AbelianGroup, kernel: Subgroup):
        self.parent = parent
        self.kernel = kernel
        table = [-1] * parent.order
        reps: list[int] = []
        for x in range(parent.order):
            if table[x] >= 0:
                continue
            c = len(reps)
            reps.append(x)
            for h in kernel:
                table[parent.add(x, h)] = c
        self.table = tuple(table)
        self.reps = tuple(reps)
        self.order = len(reps)

    def __repr__(self) -> str:
        return f"QuotientGroup({self.parent!r} / order {self.kernel.order})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, QuotientGroup)
            and other.parent == self.parent
            and other.kernel.bits == self.kernel.bits
        )

    def __hash__(self) -> int:
        return hash(("QuotientGroup", self.parent, self.kernel.bits))

    def label(self) -> str:
        return f"({self.parent.label()})/<order {self.kernel.order}>"

    def _add(self, a: int, b: int) -> int:
        return self.table[self.parent.add(self.reps[a], self.reps[b])]

    def _neg(self, a: int) -> int:
        return self.table[self.parent.neg(self.reps[a])]


@dataclass(frozen=True)
class Morphism:
    source: AbelianGroup
    kernel: Subgroup
    target: QuotientGroup
    table: tuple[int, ...] = field(repr=False)

    def __call__(self, x: int) -> int:
        return self.table[x]

    def image(self, mask: int) -> int:
        t = self.table
        return bits_of(t[x] for x in iter_bits(mask))

    def preimage(self, qmask: int) -> int:
        t = self.table
        return bits_of(x for x in range(self.source.order) if qmask >> t[x] & 1)

    def coset(self, c: int) -> int:
        """Mask of the coset numbered ``c``."""
        return self.source.shift(self.kernel.bits, self.target.reps[c])


# -- constructors -------------------------------------------------------------


def make_group(factors: Sequence[int], cap: int = MAX_ORDER) -> GroupSpec:
    factors = list(factors)
    if not factors:
        raise ValueError("a group needs at least one cyclic factor")
    if any(int(d) < 1 for d in factors):
        raise ValueError(f"cyclic factors must be >= 1, got {factors}")
    n = math.prod(factors)
    if n > cap:
        raise ValueError(f"group order {n} exceeds cap {cap}")
    return GroupSpec(factors)


def parse_group(literal: str) -> GroupSpec:
    """Parse ``"2,2,3"`` into a group."""
    try:
        factors = [int(tok) for tok in literal.replace(" ", "").split(",") if tok]
    except ValueError:
        raise ValueError(f"bad group literal {literal!r}") from None
    return make_group(factors)


def _closure(g: AbelianGroup, start: int, x: int) -> int:
    h = start
    while True:
        nxt = h | g.shift(h, x)
        if nxt == h:
            return h
        h = nxt


def subgroup_generated(g: AbelianGroup, seeds: int) -> Subgroup:
    if hasattr(seeds, "bits"):
        seeds = seeds.bits
    h, gens = 1, []
    for x in iter_bits(seeds):
        if not h >> x & 1:
            gens.append(x)
            h = _closure(g, h, x)
    return Subgroup(g, h, tuple(gens))


def subgroup_from_bits(g: AbelianGroup, bits: int) -> Subgroup:
    """Wrap a mask already known to be a subgroup."""
    sub = subgroup_generated(g, bits)
    if sub.bits != bits:
        raise ValueError("mask is not closed under addition")
    return sub


def is_subgroup_mask(g: AbelianGroup, bits: int) -> bool:
    if not bits & 1:
        return False
    return all(g.shift(bits, x) == bits for x in iter_bits(bits))


def all_subgroups(g: AbelianGroup) -> list[Subgroup]:
    cache = g.__dict__.setdefault("_subgroups", None)
    if cache is not None:
        return cache
    seen = {1: Subgroup(g, 1, ())}
    frontier = [seen[1]]
    while frontier:
        nxt = []
        for h in frontier:
            for x in range(g.order):
                if h.bits >> x & 1:
                    continue
                bits = _closure(g, h.bits, x)
                if bits not in seen:
                    seen[bits] = Subgroup(g, bits, h.generators + (x,))
                    nxt.append(seen[bits])
        frontier = nxt
    out = sorted(seen.values(), key=lambda h: (h.order, _lex_key(h.bits)))
    g.__dict__["_subgroups"] = out
    return out


def _lex_key(bits: int) -> tuple[int, ...]:
    # lexicographic order on the sorted member list
    return tuple(iter_bits(bits))


def quotient(g: AbelianGroup, h: Subgroup) -> Morphism:
    if not is_subgroup_mask(g, h.bits):
        raise ValueError("kernel is not a subgroup")
    cache = g.__dict__.setdefault("_quotients", {})
    m = cache.get(h.bits)
    if m is None:
        target = QuotientGroup(g, h)
        m = Morphism(g, h, target, target.table)
        cache[h.bits] = m
    return m


# -- abelian groups up to isomorphism ------------------------------------------


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions(k: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def abelian_groups_of_order(n: int) -> list[list[int]]:
    """Invariant-factor lists ``d_1 | d_2 | ...`` of every abelian group of order n."""
    if n == 1:
        return [[1]]
    primes = sorted(_factorize(n).items())
    out = []
    for choice in product(*[list(_partitions(e)) for _, e in primes]):
        width = max(len(part) for part in choice)
        invariants = [1] * width
        for (p, _), part in zip(primes, choice):
            # largest prime powers go to the last invariant factor
            for i, e in enumerate(part):
                invariants[width - 1 - i] *= p**e
        out.append(invariants)
    return sorted(out, key=lambda f: (len(f), f))


def abelian_groups(max_order: int, min_order: int = 2) -> list[list[int]]:
    out = []
    for n in range(min_order, max_order + 1):
        out.extend(abelian_groups_of_order(n))
    return out

