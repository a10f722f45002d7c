"""Subset algebra on a finite abelian group: sumsets, boundaries, exteriors, periods."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from smallsum.groups import (
    AbelianGroup,
    Element,
    GroupSpec,
    Subgroup,
    bits_of,
    iter_bits,
    subgroup_generated,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubsetMask:
    group: AbelianGroup = field(repr=False)
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.group.order:
            raise ValueError("mask has bits outside the group")

    @classmethod
    def from_indices(cls, group: AbelianGroup, indices: Iterable[int]) -> SubsetMask:
        return cls(group, bits_of(indices))

    @classmethod
    def from_tuples(cls, group: GroupSpec, tuples: Iterable[Sequence[int]]) -> SubsetMask:
        return cls(group, bits_of(group.encode(t) for t in tuples))

    @classmethod
    def empty(cls, group: AbelianGroup) -> SubsetMask:
        return cls(group, 0)

    @classmethod
    def whole(cls, group: AbelianGroup) -> SubsetMask:
        return cls(group, group.full)

    @property
    def cardinality(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> x & 1)

    def __repr__(self) -> str:
        return f"SubsetMask({sorted(self)})"

    def _check(self, other: SubsetMask) -> None:
        if other.group != self.group:
            raise ValueError("subsets live in different groups")

    def __or__(self, other: SubsetMask) -> SubsetMask:
        self._check(other)
        return SubsetMask(self.group, self.bits | other.bits)

    def __and__(self, other: SubsetMask) -> SubsetMask:
        self._check(other)
        return SubsetMask(self.group, self.bits & other.bits)

    def __sub__(self, other: SubsetMask) -> SubsetMask:
        """Set difference (not the difference set; see :meth:`minus`)."""
        self._check(other)
        return SubsetMask(self.group, self.bits & ~other.bits)

    def complement(self) -> SubsetMask:
        return SubsetMask(self.group, self.group.full & ~self.bits)

    def issubset(self, other: SubsetMask) -> bool:
        return self.bits & ~other.bits == 0

    def translate(self, g: int) -> SubsetMask:
        return SubsetMask(self.group, self.group.shift(self.bits, g))

    def neg(self) -> SubsetMask:
        return SubsetMask(self.group, self.group.negate(self.bits))

    def __add__(self, other: SubsetMask) -> SubsetMask:
        return sumset(self, other)

    def minus(self, other: SubsetMask) -> SubsetMask:
        """The difference set ``A - B``."""
        return sumset(self, other.neg())

    def min_element(self) -> int:
        if not self.bits:
            raise ValueError("empty set has no minimum")
        return (self.bits & -self.bits).bit_length() - 1

    def tuples(self) -> list[list[int]]:
        g = self.group
        if isinstance(g, GroupSpec):
            return [list(g.decode(x)) for x in self]
        return [[x] for x in self]

    def hex(self) -> str:
        return f"{self.bits:#x}"


# -- core operations ----------------------------------------------------------


def sumset(a: SubsetMask, b: SubsetMask) -> SubsetMask:
    a._check(b)
    return SubsetMask(a.group, a.group.sumset(a.bits, b.bits))


def boundary(s: SubsetMask, x: SubsetMask) -> SubsetMask:
    if not s.bits & 1:
        log.warning("boundary taken with 0 not in S")
    return SubsetMask(s.group, s.group.sumset(x.bits, s.bits) & ~x.bits)


def exterior(s: SubsetMask, x: SubsetMask) -> SubsetMask:
    x._check(s)
    g = s.group
    return SubsetMask(g, g.full & ~g.sumset(x.bits, s.bits))


def period_bits(g: AbelianGroup, bits: int) -> int:
    """Mask of the stabiliser ``{h : A + h = A}``."""
    if not bits:
        raise ValueError("the period of the empty set is undefined")
    a0 = (bits & -bits).bit_length() - 1
    out = 0
    for x in iter_bits(bits):
        h = g.sub(x, a0)
        if g.shift(bits, h) == bits:
            out |= 1 << h
    return out


def period(a: SubsetMask) -> Subgroup:
    return subgroup_generated(a.group, period_bits(a.group, a.bits))


def is_aperiodic_bits(g: AbelianGroup, bits: int) -> bool:
    if not bits:
        return False
    a0 = (bits & -bits).bit_length() - 1
    for x in iter_bits(bits & ~(1 << a0)):
        if g.shift(bits, g.sub(x, a0)) == bits:
            return False
    return True


def is_aperiodic(a: SubsetMask) -> bool:
    return is_aperiodic_bits(a.group, a.bits)


def is_periodic_by(g: AbelianGroup, bits: int, h: Subgroup) -> bool:
    """``A + H = A``."""
    return all(g.shift(bits, x) == bits for x in h.generators)


def normalize_bits(g: AbelianGroup, bits: int) -> tuple[int, int]:
    if not bits:
        raise ValueError("cannot normalise the empty set")
    m = (bits & -bits).bit_length() - 1
    return g.shift(bits, g.neg(m)), m


def normalize(x: SubsetMask) -> tuple[SubsetMask, Element]:
    bits, m = normalize_bits(x.group, x.bits)
    return SubsetMask(x.group, bits), Element(m, x.group)


def canonical_bits(g: AbelianGroup, bits: int) -> int:
    """Smallest mask among the translates ``A - a``, ``a`` in ``A``."""
    best = None
    for a in iter_bits(bits):
        t = g.shift(bits, g.neg(a))
        if best is None or t < best:
            best = t
    if best is None:
        raise ValueError("cannot canonicalise the empty set")
    return best


def generated_bits(g: AbelianGroup, bits: int) -> int:
    """Mask of ``<A*>``, the subgroup generated by a translate of A through 0."""
    star, _ = normalize_bits(g, bits)
    return subgroup_generated(g, star).bits


def is_generating(s: SubsetMask) -> bool:
    if not s.bits:
        return s.group.order == 1
    return generated_bits(s.group, s.bits) == s.group.full


# -- vectorised kernels ---------------------------------------------------------


def popcount(arr: np.ndarray) -> np.ndarray:
    return np.bitwise_count(arr).astype(np.int64)


def aperiodic_array(g: AbelianGroup, arr: np.ndarray) -> np.ndarray:
    """Boolean array: mask is nonempty and has trivial period."""
    ok = arr != 0
    for x in range(1, g.order):
        ok &= g.shift_array(arr, x) != arr
    return ok


def canonical_masks(g: AbelianGroup, *, containing_zero: bool = True) -> np.ndarray:
    """One representative per translation class of nonempty subsets.

    The representative is the smallest mask among the translates through 0.
    """
    n = g.order
    if n > 24:
        raise ValueError(f"canonical enumeration refused for order {n}")
    masks = np.arange(1, 1 << n, 2, dtype=np.uint32)  # every mask containing 0
    canon = masks.copy()
    for a in range(1, n):
        has = (masks >> np.uint32(a)) & np.uint32(1) == 1
        if not has.any():
            continue
        moved = g.shift_array(masks, g.neg(a))
        canon = np.where(has & (moved < canon), moved, canon)
    return masks[canon == masks]


# -- literals -------------------------------------------------------------------


def parse_subset(group: AbelianGroup, literal: str | list) -> SubsetMask:
    """Parse a JSON array of element tuples, ``[[0,1],[1,2]]``.

    Bare integers are accepted as element indices and the CLI form
    ``'[[0]],[[1]]'`` (a comma-joined list of arrays) is flattened.
    """
    if isinstance(literal, str):
        text = literal.strip()
        if text.startswith("0x"):
            return SubsetMask(group, int(text, 16))
        try:
            data = json.loads(text)
        except json.JSONDecodeError:
            data = json.loads(f"[{text}]")
    else:
        data = literal
    idx = []
    for item in _flatten_elements(data):
        if isinstance(item, int):
            idx.append(item % group.order)
        elif isinstance(group, GroupSpec):
            idx.append(group.encode(item))
        else:
            idx.append(item[0] % group.order)
    return SubsetMask.from_indices(group, idx)


def _flatten_elements(data) -> Iterator:
    for item in data:
        if isinstance(item, int):
            yield item
        elif item and all(isinstance(v, int) for v in item):
            yield list(item)
        else:
            yield from _flatten_elements(item)
