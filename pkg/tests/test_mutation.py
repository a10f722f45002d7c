from __future__ import annotations

from smallsum import structure
from smallsum.mutation import generate_mutants, installed, run_mutant


def test_enough_defining_mutants():
    ms = generate_mutants()
    assert len([m for m in ms if not m.guard]) >= 10
    assert len({m.name for m in ms}) == len(ms)


def test_mutant_is_installed_and_removed():
    m = next(m for m in generate_mutants() if m.function == "_kind_ii")
    original = structure._kind_ii
    with installed(m):
        assert structure._kind_ii is not original
    assert structure._kind_ii is original


def test_a_defining_mutant_is_killed_quickly():
    m = next(m for m in generate_mutants() if m.name == "_kind_ii#6")
    r = run_mutant(m, max_order=9)
    assert r.killed and r.clause in ("oracle-mismatch", "recheck", "no-case")
