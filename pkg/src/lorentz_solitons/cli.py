"""Command-line front end: ``lorentz-solitons <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .certify import prove_infeasible
from .harness import budget_from_env, emit_report, load_proof_file, run
from .lie import BUILTIN_GROUPS, get_presentation
from .reference import check_system, compare_table
from .registry import load_registry
from .soliton import PAIR_LABELS, tensors, tensors_for

KIND_CHOICES = ("C0", "C1", "C2", "C3")


def _tensors(group: str, kind: str):
    if not group.endswith(".liealg"):
        return tensors(group, kind)
    return tensors_for(get_presentation(Path(group)), kind)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def cmd_list(args) -> int:
    print("groups:", " ".join(BUILTIN_GROUPS))
    print("kinds: ", " ".join(KIND_CHOICES))
    print()
    for t in load_registry():
        extra = t.proof if t.verdict == "infeasible" else " ".join(f.label for f in t.families)
        print(f"{t.id:5} {t.group} {t.kind}  {t.verdict:10} {extra}")
    return 0


def cmd_tensors(args) -> int:
    t = _tensors(args.group, args.kind)
    if args.json:
        print(_dump({
            "group": t.presentation.name, "kind": args.kind,
            "connection": t.connection.to_json(),
            "ricci": [[str(c) for c in row] for row in t.rho],
            "rho_tilde": t.rho_tilde.to_json(),
            "lie_derivative": t.lie_derivative.to_json(),
        }))
        return 0
    print(f"# {t.presentation.name} {args.kind}")
    print("connection (nabla_ei ej = ...):")
    for i in range(3):
        for j in range(3):
            terms = [f"({c})*e{k + 1}" for k, c in enumerate(t.connection.gamma[i][j]) if not c.is_zero()]
            print(f"  nabla_e{i + 1} e{j + 1} = {' + '.join(terms) or '0'}")
    for name, table in (("symmetrized Ricci", t.rho_tilde), ("L_V g", t.lie_derivative)):
        print(f"{name}:")
        for lbl, p in zip(PAIR_LABELS, table.upper()):
            print(f"  ({lbl[0]},{lbl[1]}) = {p}")
    return 0


def cmd_system(args) -> int:
    t = _tensors(args.group, args.kind)
    system = t.system
    if not args.reference_check:
        print(_dump(system.to_json()) if args.json else system.to_text())
        return 0
    if args.group not in BUILTIN_GROUPS:
        print("reference check needs one of G1..G7", file=sys.stderr)
        return 2
    check = check_system(args.group, args.kind)
    tables = [compare_table(args.group, args.kind, w) for w in ("ricci", "lie_derivative")]
    disc = [d for tr in tables for d in tr.discrepancies] + check.discrepancies
    ok = check.ok and all(tr.ok for tr in tables)
    if args.json:
        print(_dump({"match": check.match.to_json(), "ok": ok,
                     "discrepancies": [d.to_json() for d in disc]}))
    else:
        print(system.to_text())
        print()
        for m in check.match.matches:
            ref = "-" if m.reference_index is None else f"line {m.reference_index + 1}"
            scalar = "" if m.scalar is None else f" scalar {m.scalar}"
            print(f"({m.label}) {m.status:9} {ref}{scalar}")
        for i in check.match.unmatched_reference:
            print(f"reference line {i + 1} unmatched")
        for d in disc:
            flag = "whitelisted" if d.whitelisted else "UNEXPECTED"
            print(f"discrepancy {d.where}: printed {d.printed}, computed {d.computed} [{flag}]")
        print("strict bijection" if check.match.strict else
              ("matched (relaxed)" if check.match.ok else "MISMATCH"))
    return 0 if ok else 1


def cmd_verify(args) -> int:
    if args.all:
        ids = None
    else:
        ids = [args.theorem]
        if args.theorem not in {t.id for t in load_registry()}:
            print(f"unknown theorem {args.theorem!r}", file=sys.stderr)
            return 2
    overrides = {}
    if args.proof:
        if args.all:
            print("--proof needs --theorem", file=sys.stderr)
            return 2
        overrides[args.theorem] = load_proof_file(args.proof)
    report = run(ids, seed=args.seed, proof_overrides=overrides, budget=budget_from_env())
    if args.format:
        sys.stdout.write(emit_report(report, args.format))
    else:
        for r in report.results:
            print(f"{r.id:5} {r.group} {r.kind} {r.status}" + (f"  ({r.detail})" if r.detail else ""))
        bad = [d for d in report.discrepancies if not d.whitelisted]
        for d in bad:
            print(f"unexpected discrepancy {d.group} {d.kind} {d.where}")
    return report.exit_code


def cmd_prove(args) -> int:
    system = _tensors(args.group, args.kind).system
    tid = next((t.id for t in load_registry()
                if (t.group, t.kind) == (args.group, args.kind)), None)
    proof = prove_infeasible(system, budget_from_env(), theorem=tid)
    if proof is None:
        print(f"no proof found for {args.group} {args.kind} within budget", file=sys.stderr)
        return 1
    text = proof.dumps()
    if args.emit:
        Path(args.emit).write_text(text)
        print(f"wrote {args.emit}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_sample(args) -> int:
    from .numeric import sample_numeric_check
    rep = sample_numeric_check(args.group, args.kind, args.points, args.seed)
    if args.json:
        print(_dump(rep.to_json()))
    else:
        if not rep.families:
            print(f"{args.group} {args.kind}: no registered families to sample")
        for f in rep.families:
            eta = "" if f.eta is None else f" eta={f.eta}"
            print(f"{f.theorem} {f.label}{eta}: {f.points} points, max |residual| {f.max_residual:.3g}"
                  + (f", {f.failed} sampling failures" if f.failed else ""))
        print(f"max |residual| {rep.max_residual:.3g} over {rep.points} points")
    return 0 if rep.ok else 1


def cmd_report(args) -> int:
    report = run(seed=args.seed, budget=budget_from_env())
    text = emit_report(report, args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lorentz-solitons",
                                description="Affine Ricci solitons on 3D Lorentzian Lie groups.")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list groups and registered theorems").set_defaults(fn=cmd_list)

    def group_kind(sp):
        sp.add_argument("--group", required=True, help="G1..G7 or a .liealg file")
        sp.add_argument("--kind", required=True, choices=KIND_CHOICES)

    sp = sub.add_parser("tensors", help="connection, Ricci and Lie-derivative tables")
    group_kind(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_tensors)

    sp = sub.add_parser("system", help="assembled soliton system")
    group_kind(sp)
    sp.add_argument("--reference-check", "--paper-check", dest="reference_check",
                    action="store_true", help="match against the bundled reference tables")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_system)

    sp = sub.add_parser("verify", help="verify registered theorems")
    which = sp.add_mutually_exclusive_group(required=True)
    which.add_argument("--theorem")
    which.add_argument("--all", action="store_true")
    sp.add_argument("--proof", help="replay this proof file instead of the bundled one")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("json", "markdown"))
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("prove-infeasible", help="search for an infeasibility proof")
    group_kind(sp)
    sp.add_argument("--emit", help="write the proof to this file")
    sp.set_defaults(fn=cmd_prove)

    sp = sub.add_parser("sample", help="floating-point cross-check of the families")
    group_kind(sp)
    sp.add_argument("--points", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_sample)

    sp = sub.add_parser("report", help="full verification report")
    sp.add_argument("--format", choices=("json", "markdown"), default="json")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--output", "-o")
    sp.set_defaults(fn=cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "points", 1) < 1:
        print("--points must be at least 1", file=sys.stderr)
        return 2
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
