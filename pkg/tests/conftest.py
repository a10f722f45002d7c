from __future__ import annotations

from itertools import product

import pytest

from smallsum.groups import make_group
from smallsum.setops import SubsetMask

ACCEPTANCE_LINES: list[str] = []


def cyclic(n: int):
    return make_group([n])


def subset(g, *elems) -> SubsetMask:
    """Subset from integers (cyclic) or coordinate tuples."""
    idx = [g.encode(e) if isinstance(e, tuple) else e % g.order for e in elems]
    return SubsetMask.from_indices(g, idx)


def elements(g) -> list[tuple[int, ...]]:
    return list(product(*(range(d) for d in g.factors)))


def tadd(g, x, y):
    return tuple((a + b) % d for a, b, d in zip(x, y, g.factors))


def tsumset(g, a, b) -> set:
    return {tadd(g, x, y) for x in a for y in b}


def tset(s: SubsetMask) -> set:
    return {tuple(t) for t in s.tuples()}


def brute_kappa(g, s: set, k: int) -> int:
    """kappa_k by listing every subset of G."""
    elts = elements(g)
    n = len(elts)
    best = None
    for m in range(1, 1 << n):
        x = {elts[i] for i in range(n) if m >> i & 1}
        xs = tsumset(g, x, s)
        if len(x) >= k and n - len(xs) >= k:
            b = len(xs) - len(x)
            best = b if best is None else min(best, b)
    return n - 2 * k + 1 if best is None else best


@pytest.fixture
def z6():
    return cyclic(6)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
