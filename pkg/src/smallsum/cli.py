"""Command-line interface: JSON on stdout, logs on stderr."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from smallsum.checks import FAIL, REGISTRY, Context
from smallsum.classifier import THEOREMS, PairInstance, classify
from smallsum.errors import HypothesisError, SmallSumError, TheoremViolation
from smallsum.groups import all_subgroups, parse_group
from smallsum.isoperimetry import hyper_atoms, kappa, super_atom_bits
from smallsum.setops import SubsetMask, parse_subset

log = logging.getLogger("smallsum")

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def _emit(obj: dict, out=None) -> None:
    print(json.dumps(obj, sort_keys=True), file=out or sys.stdout)


def _sizes(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    lo, _, hi = text.partition(":")
    return int(lo), int(hi or lo)


def _mus(text: str | None) -> tuple[int, ...]:
    if text is None:
        return (0, 1)
    return tuple(int(x) for x in text.split(","))


def _groups(text: str | None) -> list[list[int]] | None:
    if text is None:
        return None
    return [[int(d) for d in part.split(",") if d] for part in text.split(";") if part]


def _instance(args) -> PairInstance:
    if args.instance:
        return PairInstance.from_dict(json.loads(Path(args.instance).read_text()))
    if not args.group or args.S is None:
        raise SmallSumError("give --instance FILE or --group with --S (and --T)")
    g = parse_group(args.group)
    s = parse_subset(g, args.S).bits
    t = parse_subset(g, args.T).bits if args.T else 0
    return PairInstance.of(g, s, t, args.mu if args.mu is not None else 0)


# -- subcommands ---------------------------------------------------------------------------------


def cmd_kappa(args) -> int:
    g = parse_group(args.group)
    s = parse_subset(g, args.set)
    rep = kappa(s, args.k, args.mode)
    _emit({"group": g.factors, "S": s.tuples(), **rep.to_dict()})
    return EXIT_OK


def cmd_atoms(args) -> int:
    g = parse_group(args.group)
    s = parse_subset(g, args.set)
    rep = kappa(s, args.k, args.mode)
    out = {
        "group": g.factors,
        "S": s.tuples(),
        "k": args.k,
        "kappa": rep.kappa,
        "separable": rep.separable,
        "atoms": [SubsetMask(g, b).tuples() for b in rep.atom_bits],
        "atoms_through_zero": [SubsetMask(g, b).tuples() for b in rep.atoms_through_zero()],
    }
    if args.k == 2 and rep.separable:
        star = rep.s_bits
        out["hyper_atoms"] = [SubsetMask(g, h.bits).tuples() for h in hyper_atoms(g, star)]
        try:
            out["super_atom"] = SubsetMask(g, super_atom_bits(g, star).bits).tuples()
        except SmallSumError as exc:
            out["super_atom"] = None
            out["super_atom_error"] = str(exc)
    _emit(out)
    return EXIT_OK


def cmd_classify(args) -> int:
    inst = _instance(args)
    try:
        verdict = classify(args.theorem, inst)
    except TheoremViolation as exc:
        _emit({"theorem": args.theorem, "instance": inst.to_dict(), "violation": exc.clause})
        return EXIT_VIOLATION
    _emit({"instance": inst.to_dict(), **verdict.to_dict()})
    return EXIT_OK if verdict.verified else EXIT_VIOLATION


def _filter(args):
    from smallsum.verify import InstanceFilter

    return InstanceFilter(
        groups=_groups(args.groups),
        max_order=args.max_order,
        min_order=args.min_order,
        s_sizes=_sizes(args.s_size),
        t_sizes=_sizes(args.t_size),
        mus=_mus(args.mus),
        sampling=args.sampling,
        seed=args.seed,
        count=args.count,
        budget=args.budget,
        oracle=args.oracle,
    )


def cmd_verify(args) -> int:
    from smallsum.report import plot_report, write_jsonl
    from smallsum.verify import dedupe_minimized, minimize, verify_theorem

    f = _filter(args)
    report = verify_theorem(args.theorem, f)
    records = report.jsonl_records()
    if args.minimize and report.violations:
        ctx = f.context()
        small = dedupe_minimized([minimize(v, ctx) for v in report.violations])
        records = records[:-1] + [c.to_dict() for c in small] + records[-1:]
    for r in records:
        _emit(r)
    if args.out:
        write_jsonl(records, args.out)
    if args.plot_dir:
        for p in plot_report(report, args.plot_dir):
            log.info("wrote %s", p)
    log.info("%s: %d checked, %d violations in %.1fs", report.theorem, report.checked,
             len(report.violations), report.wall_time)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_minimize(args) -> int:
    from smallsum.verify import Counterexample, minimize

    if args.theorem not in REGISTRY:
        raise SmallSumError(f"unknown theorem id {args.theorem!r}")
    inst = _instance(args)
    ctx = Context(oracle=args.oracle)
    out = REGISTRY[args.theorem].run(inst, ctx)
    if out.status != FAIL:
        raise SmallSumError(f"instance does not fail {args.theorem} (status {out.status})")
    c = minimize(Counterexample(inst.to_dict(), args.theorem, out.clause, out.detail), ctx)
    _emit(c.to_dict())
    return EXIT_VIOLATION


def cmd_subgroups(args) -> int:
    g = parse_group(args.group)
    subs = all_subgroups(g)
    _emit({
        "group": g.factors,
        "count": len(subs),
        "subgroups": [{"order": h.order, "members": SubsetMask(g, h.bits).tuples()} for h in subs],
    })
    return EXIT_OK


def cmd_mutants(args) -> int:
    from smallsum.mutation import generate_mutants, run_mutant, MutationReport

    report = MutationReport()
    for m in generate_mutants():
        r = run_mutant(m, max_order=args.max_order)
        report.results.append(r)
        _emit({"type": "mutant", **r.to_dict()})
    _emit(report.summary())
    return EXIT_OK if report.passed else EXIT_VIOLATION


# -- parser ----------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="smallsum", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def group_set(sp):
        sp.add_argument("--group", required=True, help='cyclic factors, e.g. "2,4"')
        sp.add_argument("--set", required=True, help="JSON list of element tuples")
        sp.add_argument("--k", type=int, default=1)
        sp.add_argument("--mode", choices=["auto", "exact", "seeded"], default="auto")

    group_set(sub.add_parser("kappa", help="isoperimetric number kappa_k"))
    group_set(sub.add_parser("atoms", help="atoms, hyper-atoms and the super-atom"))

    def instance_args(sp):
        sp.add_argument("--instance", help="JSON instance file")
        sp.add_argument("--group")
        sp.add_argument("--S")
        sp.add_argument("--T")
        sp.add_argument("--mu", type=int)

    sp = sub.add_parser("classify", help="structure verdict with witness")
    sp.add_argument("--theorem", required=True, choices=THEOREMS)
    instance_args(sp)

    sp = sub.add_parser("verify", help="exhaustive or sampled sweep; JSONL report")
    sp.add_argument("--theorem", required=True, choices=sorted(REGISTRY))
    sp.add_argument("--max-order", type=int)
    sp.add_argument("--min-order", type=int, default=2)
    sp.add_argument("--groups", help='factor lists separated by ";", e.g. "12;2,6"')
    sp.add_argument("--s-size", help="LO:HI bounds on |S|")
    sp.add_argument("--t-size", help="LO:HI bounds on |T|")
    sp.add_argument("--mus", help="comma-separated mu values (default 0,1)")
    sp.add_argument("--sampling", choices=["exhaustive", "random"], default="exhaustive")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=1000)
    sp.add_argument("--budget", type=float, default=1e10)
    sp.add_argument("--oracle", action="store_true", help="cross-check classifier cases by exhaustion")
    sp.add_argument("--minimize", action="store_true", help="append minimised violations")
    sp.add_argument("--out", help="also write the JSONL report here")
    sp.add_argument("--plot-dir", help="write case-tally figures here")

    sp = sub.add_parser("minimize", help="shrink a failing instance")
    sp.add_argument("--theorem", required=True)
    sp.add_argument("--oracle", action="store_true")
    instance_args(sp)

    sp = sub.add_parser("subgroups", help="subgroup lattice")
    sp.add_argument("--group", required=True)

    sp = sub.add_parser("mutants", help="mutation sensitivity of the (n-3) classifier")
    sp.add_argument("--max-order", type=int, default=12)
    return p


COMMANDS = {
    "kappa": cmd_kappa,
    "atoms": cmd_atoms,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "minimize": cmd_minimize,
    "subgroups": cmd_subgroups,
    "mutants": cmd_mutants,
}


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("matplotlib").setLevel(logging.WARNING)
    try:
        return COMMANDS[args.command](args)
    except HypothesisError as exc:
        _emit({"error": "hypothesis", "clause": exc.clause})
        return EXIT_USAGE
    except (SmallSumError, ValueError, OSError, json.JSONDecodeError) as exc:
        log.error("%s", exc)
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())
