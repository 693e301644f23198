"""Command-line front end.

Exit codes: 0 when everything checked holds, 1 when some property fails,
2 when synthesis produces a type containing ``deadlock``, 3 on input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path
from typing import Optional

from .fairness import (ALL_FAIRNESS, Fairness, Lasso, RecurringSet, ReachedState, StuckState, Verdict,
                       classify, lasso_of)
from .semantics import Lts, StateCapExceeded
from .synthesis import synthesize
from .syntax import Document, GlobalType, Network, ParseError, parse_document, pretty_print
from .types import DeadlockInType, project, typecheck

OK, FAIL, DEADLOCK, INPUT_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(path: str) -> Document:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            return parse_document(text)
        except ParseError as exc:
            raise InputError(f"{path}: {exc}") from exc


def _pick(items: dict, name: Optional[str], what: str):
    if name is not None:
        if name not in items:
            raise InputError(f"no {what} named {name!r} (available: {', '.join(sorted(items)) or 'none'})")
        return items[name]
    if len(items) != 1:
        raise InputError(f"expected exactly one {what}, found {len(items)}; select one by name")
    return next(iter(items.values()))


def _network(doc: Document, name: Optional[str]) -> Network:
    return _pick(doc.networks, name, "network")


def _global(doc: Document, name: Optional[str]) -> GlobalType:
    return _pick(doc.globals, name, "global type")


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


# --------------------------------------------------------------------------
# witnesses
# --------------------------------------------------------------------------

def _actions(lts: Lts, path) -> list[str]:
    return [str(lts.edges[i].action) for i in path]


def witness_json(lts: Lts, v: Verdict) -> Optional[dict]:
    w = v.witness
    if w is None:
        return None
    out = w.to_json()
    match w:
        case RecurringSet():
            lasso = lasso_of(lts, w)
            out["lasso"] = {"prefix": _actions(lts, lasso.prefix), "cycle": _actions(lts, lasso.cycle)}
        case Lasso():
            out["actions"] = {"prefix": _actions(lts, w.prefix), "cycle": _actions(lts, w.cycle)}
        case StuckState() | ReachedState():
            out["actions"] = _actions(lts, w.path)
            out["threads"] = lts.states[w.state].render()
    return out


def _witness_text(lts: Lts, v: Verdict) -> str:
    w = v.witness
    match w:
        case RecurringSet():
            lasso = lasso_of(lts, w)
            pre = " ".join(_actions(lts, lasso.prefix)) or "(empty)"
            return f"lasso: {pre} ; ({' '.join(_actions(lts, lasso.cycle))})^omega"
        case StuckState():
            return f"stuck after: {' '.join(_actions(lts, w.path)) or '(empty)'}"
        case ReachedState():
            return f"reached after: {' '.join(_actions(lts, w.path)) or '(empty)'}"
    return ""


def _verdict_json(lts: Lts, v: Verdict) -> dict:
    out = v.to_json()
    out["witness"] = witness_json(lts, v)
    return out


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_classify(args) -> int:
    doc = _load(args.file)
    net = _network(doc, args.net)
    semantics = ["default", "reactive"] if args.semantics == "both" else [args.semantics]
    try:
        fairness = [Fairness.parse(f) for f in args.fairness.split(",")] if args.fairness else ALL_FAIRNESS
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    cache: dict[str, Lts] = {}
    report = classify(net, fairness, semantics, lts_cache=cache)
    lts_of = {k: cache["default" if k in ("DF", "RF", "SRF", "LF") or k.startswith("L(") else "reactive"]
              for k in report.verdicts if k != "SRF"}
    if args.dot:
        Path(args.dot).write_text(cache[semantics[0]].to_dot())
    failed = not all(v.holds for v in report.verdicts.values())
    if args.json:
        _emit({
            "command": "classify",
            "network": net.name,
            "states": {sem: len(lts.states) for sem, lts in sorted(cache.items())},
            "verdicts": [_verdict_json(lts_of[k], v) if k in lts_of else v.to_json()
                         for k, v in report.verdicts.items()],
            "exit_code": FAIL if failed else OK,
        })
    else:
        for k, v in report.verdicts.items():
            line = f"{k}={'yes' if v.holds else 'no'}"
            if not v.holds and k in lts_of and v.witness is not None:
                line += f"  {_witness_text(lts_of[k], v)}"
            print(line)
    return FAIL if failed else OK


def cmd_synth(args) -> int:
    doc = _load(args.file)
    net = _network(doc, args.net)
    result = synthesize(net, simplify=args.simplify)
    text = pretty_print(result.type)
    code = DEADLOCK if result.deadlocked else OK
    if args.json:
        _emit({"command": "synth", "network": net.name, "type": text,
               "deadlocked": result.deadlocked, "exit_code": code})
    else:
        print(text)
    return code


def cmd_project(args) -> int:
    doc = _load(args.file)
    g = _global(doc, args.type)
    try:
        proj = project(g, args.loc)
    except DeadlockInType as exc:
        raise InputError(str(exc)) from exc
    text = pretty_print(proj)
    if args.json:
        _emit({"command": "project", "location": args.loc, "projection": text, "exit_code": OK})
    else:
        print(text)
    return OK


def typecheck_message(report, guarded: bool) -> str:
    msg = f"well-typed: {'yes' if report.well_typed else 'no'}"
    if guarded:
        msg += f"; guarded: {'yes' if report.guarded else 'no'}"
        if report.unguarded:
            names = ", ".join(report.unguarded)
            noun = "projection" if len(report.unguarded) == 1 else "projections"
            msg += f" ({names} {noun} unguarded)"
    return msg


def cmd_typecheck(args) -> int:
    doc = _load(args.file)
    net = _network(doc, args.net)
    g = _global(doc, args.type)
    try:
        report = typecheck(net, g)
    except DeadlockInType as exc:
        raise InputError(str(exc)) from exc
    ok = report.guardedly_well_typed if args.guarded else report.well_typed
    code = OK if ok else FAIL
    if args.json:
        _emit({"command": "typecheck", "network": net.name, **report.to_json(), "exit_code": code})
    else:
        print(typecheck_message(report, args.guarded))
        for r in report.reasons:
            print(f"  {r}")
    return code


def cmd_corpus(args) -> int:
    from .corpus import run_corpus
    outcomes = run_corpus(args.entry or None)
    hard = [o for o in outcomes if not o.ok and not o.draft]
    code = FAIL if hard else OK
    payload = {"command": "corpus", "outcomes": [o.to_json() for o in outcomes],
               "mismatches": len(hard),
               "draft_mismatches": sum(1 for o in outcomes if not o.ok and o.draft),
               "exit_code": code}
    if args.report:
        Path(args.report).write_text(json.dumps(payload, indent=2) + "\n")
    if args.json:
        _emit(payload)
    else:
        for o in outcomes:
            status = "ok" if o.ok else ("DRAFT-MISMATCH" if o.draft else "MISMATCH")
            print(f"{o.entry:<18} {o.property:<18} expected={_short(o.expected):<8} "
                  f"actual={_short(o.actual):<8} {status}  [{o.claim}]")
        print(f"{len(outcomes)} checks, {payload['mismatches']} mismatches, "
              f"{payload['draft_mismatches']} draft mismatches")
    return code


def _short(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, str) and len(value) > 8:
        return "<type>"
    if isinstance(value, list):
        return "<list>"
    return str(value)


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(INPUT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="justcheck", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="structural and liveness verdicts for a network")
    c.add_argument("file")
    c.add_argument("--net", help="network name when the file declares several")
    c.add_argument("--semantics", choices=["default", "reactive", "both"], default="default")
    c.add_argument("--fairness", help="comma-separated list, e.g. P,J,SC (default: all)")
    c.add_argument("--dot", help="write the transition system of the first semantics as DOT")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("synth", help="synthesize a global type")
    s.add_argument("file")
    s.add_argument("--net")
    s.add_argument("--simplify", action="store_true", help="drop unused recursion binders")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_synth)

    pr = sub.add_parser("project", help="project a global type onto a location")
    pr.add_argument("file")
    pr.add_argument("--type", help="global type name")
    pr.add_argument("--loc", required=True)
    pr.add_argument("--json", action="store_true")
    pr.set_defaults(func=cmd_project)

    t = sub.add_parser("typecheck", help="check a network against a global type")
    t.add_argument("file")
    t.add_argument("--net")
    t.add_argument("--type", help="global type name")
    t.add_argument("--guarded", action="store_true", help="also require guarded projections")
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_typecheck)

    k = sub.add_parser("corpus", help="check the bundled examples against their expected verdicts")
    k.add_argument("--run", action="store_true", help="run the checks (the default action)")
    k.add_argument("--report", help="write the JSON report to this path")
    k.add_argument("--entry", action="append", help="restrict to an entry (repeatable)")
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_corpus)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except StateCapExceeded as exc:
        print(f"error: {exc} (raise JUSTCHECK_STATE_CAP to explore further)", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
