"""Mutation harness: corrupt one comparison at a time and confirm a sweep notices."""

from __future__ import annotations

import ast
import inspect
import textwrap
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from types import ModuleType

from smallsum import classifier, structure
from smallsum.checks import REGISTRY, Context, ScanResult
from smallsum.classifier import PairInstance
from smallsum.groups import abelian_groups, make_group
from smallsum.verify import _s_candidates, InstanceFilter

TARGETS: list[tuple[ModuleType, str]] = [
    (structure, "_kind_i"),
    (structure, "_kind_ii"),
    (structure, "_kind_iii"),
    (structure, "_defect_is_h"),
    (classifier, "small_set_case"),
    (classifier, "common_progression_case"),
    (classifier, "decomposition_case"),
    (classifier, "essential_case"),
    (classifier, "classify_n_minus_3"),
]

_FLIP = {
    ast.Eq: ast.NotEq,
    ast.NotEq: ast.Eq,
    ast.Lt: ast.GtE,
    ast.GtE: ast.Lt,
    ast.LtE: ast.Gt,
    ast.Gt: ast.LtE,
    ast.Is: ast.IsNot,
    ast.IsNot: ast.Is,
}


def _is_guard(node: ast.Compare) -> bool:
    """None-sentinel tests and group-order scope tests steer the search; they do not define a case."""
    sides = [node.left, *node.comparators]
    if any(isinstance(x, ast.Constant) and x.value is None for x in sides):
        return True
    return any(isinstance(x, ast.Attribute) and x.attr == "order" and isinstance(x.value, ast.Name)
               and x.value.id == "g" for x in sides)


@dataclass
class Mutant:
    module: ModuleType
    function: str
    index: int
    line: int
    original: str
    mutated: str
    guard: bool = False

    @property
    def name(self) -> str:
        return f"{self.function}#{self.index}"

    def compile(self):
        src = textwrap.dedent(inspect.getsource(getattr(self.module, self.function)))
        tree = ast.parse(src)
        node = _compares(tree)[self.index]
        node.ops[0] = _FLIP[type(node.ops[0])]()
        ast.fix_missing_locations(tree)
        ns: dict = {}
        exec(compile(tree, f"<mutant {self.name}>", "exec"), self.module.__dict__, ns)
        return ns[self.function]


@dataclass
class MutantResult:
    mutant: Mutant
    killed: bool
    clause: str | None = None
    instance: dict | None = None
    checked: int = 0
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {
            "mutant": self.mutant.name,
            "line": self.mutant.line,
            "original": self.mutant.original,
            "mutated": self.mutant.mutated,
            "guard": self.mutant.guard,
            "killed": self.killed,
            "clause": self.clause,
            "instance": self.instance,
            "checked": self.checked,
            "seconds": round(self.seconds, 3),
        }


def _compares(tree: ast.AST) -> list[ast.Compare]:
    nodes = [n for n in ast.walk(tree) if isinstance(n, ast.Compare) and type(n.ops[0]) in _FLIP]
    return sorted(nodes, key=lambda n: (n.lineno, n.col_offset))


def generate_mutants(targets: list[tuple[ModuleType, str]] | None = None) -> list[Mutant]:
    out = []
    for module, name in targets or TARGETS:
        fn = getattr(module, name)
        src = textwrap.dedent(inspect.getsource(fn))
        first = fn.__code__.co_firstlineno
        for i, node in enumerate(_compares(ast.parse(src))):
            before = ast.unparse(node)
            node.ops[0] = _FLIP[type(node.ops[0])]()
            out.append(Mutant(module, name, i, first + node.lineno - 1, before, ast.unparse(node),
                              _is_guard(node)))
    return out


@contextmanager
def installed(mutant: Mutant):
    original = getattr(mutant.module, mutant.function)
    setattr(mutant.module, mutant.function, mutant.compile())
    try:
        yield
    finally:
        setattr(mutant.module, mutant.function, original)


class _Killed(Exception):
    def __init__(self, inst: dict, clause: str):
        self.inst = inst
        self.clause = clause


class _StopOnFailure(ScanResult):
    def record(self, inst: PairInstance, out) -> None:
        super().record(inst, out)
        if self.violations:
            data, clause, _ = self.violations[0]
            raise _Killed(data, clause)


def run_mutant(mutant: Mutant, theorem: str = "n3", max_order: int = 12) -> MutantResult:
    """Sweep with the oracle on; stop at the first failing instance."""
    check = REGISTRY[theorem]
    ctx = Context(oracle=True)
    res = _StopOnFailure()
    start = time.perf_counter()
    with installed(mutant):
        try:
            for factors in abelian_groups(max_order):
                g = make_group(factors)
                for s in _s_candidates(g, InstanceFilter()):
                    check.scan(g, s, ctx, res, check)
        except _Killed as exc:
            return MutantResult(mutant, True, exc.clause, exc.inst, res.checked, time.perf_counter() - start)
        except Exception as exc:  # a crash inside the sweep is also a detection
            return MutantResult(mutant, True, f"crash: {type(exc).__name__}", None, res.checked,
                                time.perf_counter() - start)
    return MutantResult(mutant, False, None, None, res.checked, time.perf_counter() - start)


@dataclass
class MutationReport:
    results: list[MutantResult] = field(default_factory=list)

    @property
    def killed(self) -> int:
        return sum(r.killed for r in self.results)

    @property
    def defining(self) -> list[MutantResult]:
        return [r for r in self.results if not r.mutant.guard]

    @property
    def survivors(self) -> list[MutantResult]:
        return [r for r in self.results if not r.killed]

    @property
    def passed(self) -> bool:
        defining = self.defining
        return len(defining) >= 10 and all(r.killed for r in defining)

    def summary(self) -> dict:
        return {
            "type": "summary",
            "mutants": len(self.results),
            "defining": len(self.defining),
            "killed": self.killed,
            "defining_killed": sum(r.killed for r in self.defining),
            "survived": [r.mutant.name for r in self.survivors],
            "pass": self.passed,
        }


def run_all(theorem: str = "n3", max_order: int = 12, limit: int | None = None) -> MutationReport:
    mutants = generate_mutants()
    if limit is not None:
        mutants = mutants[:limit]
    return MutationReport([run_mutant(m, theorem, max_order) for m in mutants])
