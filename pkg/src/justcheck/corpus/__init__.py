"""The bundled example corpus and its expected verdicts.

Each entry pairs a ``.jc`` file with a list of expectations.  A property is one of

* ``DF``, ``RF``, ``SRF``, ``LF``: structural checks in the default semantics;
* ``L(F)`` / ``R(F)``: liveness in the default / reactive semantics, optionally
  restricted to one location as ``L(F)@loc``;
* ``T(F)`` / ``RT(F)``: every fair path is finite, and ``TS(F)`` / ``RTS(F)``:
  every fair path ends with all threads ``end``;
* ``WT`` / ``GWT``: (guarded) typing against the entry's global type, or the
  synthesized one when the file declares none;
* ``SYNTH``: the synthesized type, compared up to renaming of bound variables;
* ``TRACE``: a sequence of communications leading to a stuck state;
* ``QUOTIENT``: state/transition counts of the default system up to unfolding.

Draft expectations are reported but never count as failures.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Optional

from ..fairness import Fairness, check_liveness, check_terminates, deadlock_free, find_violating_recurring_set
from ..fairness import padovani_lockfree, race_free, syntactic_race_free, terminal_failures
from ..semantics import Lts, build_lts, quotient_by_unfolding, replay
from ..synthesis import synthesize
from ..syntax import GlobalType, Network, parse_document, parse_global_type, pretty_print, rename_bound
from ..types import DeadlockInType, TypeReport, typecheck


@dataclass
class Expectation:
    property: str
    expected: Any
    claim: str
    draft: bool = False


@dataclass
class CorpusEntry:
    name: str
    file: str
    source: str
    network: Network
    global_name: Optional[str]
    global_type: Optional[GlobalType]
    claim: str
    draft: bool
    expectations: list[Expectation] = field(default_factory=list)


@dataclass
class Outcome:
    entry: str
    property: str
    expected: Any
    actual: Any
    claim: str
    draft: bool

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def to_json(self) -> dict:
        return {"entry": self.entry, "property": self.property, "expected": self.expected,
                "actual": self.actual, "ok": self.ok, "draft": self.draft, "claim": self.claim}


def _read(name: str) -> str:
    return resources.files(__package__).joinpath(name).read_text()


def load_corpus() -> dict[str, CorpusEntry]:
    manifest = json.loads(_read("expectations.json"))
    out = {}
    for name in sorted(manifest):
        item = manifest[name]
        source = _read(item["file"])
        doc = parse_document(source)
        (net,) = doc.networks.values()
        gname = item.get("global")
        out[name] = CorpusEntry(
            name=name, file=item["file"], source=source, network=net, global_name=gname,
            global_type=doc.globals[gname] if gname else None, claim=item.get("claim", "example"),
            draft=item.get("draft", False),
            expectations=[Expectation(e["property"], e["expected"], e["claim"], e.get("draft", False))
                          for e in item["expect"]])
    return out


def same_type(a: GlobalType, b: GlobalType) -> bool:
    """Equality up to renaming of recursion binders."""
    return rename_bound(a) == rename_bound(b)


_LIVE = re.compile(r"^(L|R|TS|T|RTS|RT)\(([A-Za-z]+)\)(?:@(\w+))?$")


class Evaluator:
    """Computes property values for one entry, sharing transition systems between queries."""

    def __init__(self, entry: CorpusEntry):
        self.entry = entry
        self._lts: dict[str, Lts] = {}
        self._typing = None
        self._synth = None

    def lts(self, semantics: str) -> Lts:
        if semantics not in self._lts:
            self._lts[semantics] = build_lts(self.entry.network, semantics)
        return self._lts[semantics]

    def synthesized(self):
        if self._synth is None:
            self._synth = synthesize(self.entry.network)
        return self._synth

    def global_type(self) -> GlobalType:
        if self.entry.global_type is not None:
            return self.entry.global_type
        return self.synthesized().type

    def typing(self):
        if self._typing is None:
            try:
                self._typing = typecheck(self.entry.network, self.global_type())
            except DeadlockInType:
                self._typing = TypeReport(False, False, ["synthesized type contains deadlock"])
        return self._typing

    def value(self, prop: str) -> Any:
        match prop:
            case "DF":
                return deadlock_free(self.lts("default")).holds
            case "RF":
                return race_free(self.lts("default")).holds
            case "SRF":
                return syntactic_race_free(self.entry.network)
            case "LF":
                return padovani_lockfree(self.lts("default")).holds
            case "WT":
                return self.typing().well_typed
            case "GWT":
                return self.typing().guardedly_well_typed
            case "SYNTH":
                return pretty_print(self.synthesized().type)
            case "QUOTIENT":
                return list(quotient_by_unfolding(self.lts("default")))
        m = _LIVE.match(prop)
        if not m:
            raise ValueError(f"unknown property {prop!r}")
        which, fname, loc = m.groups()
        f = Fairness.parse(fname)
        lts = self.lts("default" if which in ("L", "T", "TS") else "reactive")
        if which in ("T", "RT", "TS", "RTS"):
            return check_terminates(lts, f, successful=which.endswith("S")).holds
        if loc is None:
            return check_liveness(lts, f).holds
        if any(loc in pending for pending in terminal_failures(lts).values()):
            return False
        return find_violating_recurring_set(lts, f, loc) is None

    def outcome(self, exp: Expectation) -> Outcome:
        e = self.entry
        if exp.property == "SYNTH":
            actual_type = self.synthesized().type
            ok = same_type(actual_type, parse_global_type(exp.expected))
            actual = exp.expected if ok else pretty_print(actual_type)
        elif exp.property == "TRACE":
            lts = self.lts("default")
            reached = replay(lts, exp.expected)
            stuck = terminal_failures(lts)
            actual = exp.expected if any(s in stuck for s in reached) else None
        else:
            actual = self.value(exp.property)
        return Outcome(e.name, exp.property, exp.expected, actual, exp.claim, exp.draft or e.draft)


def evaluate(entry: CorpusEntry) -> list[Outcome]:
    ev = Evaluator(entry)
    return [ev.outcome(x) for x in entry.expectations]


def run_corpus(names: Optional[list[str]] = None) -> list[Outcome]:
    corpus = load_corpus()
    out = []
    for name in sorted(names or corpus):
        out.extend(evaluate(corpus[name]))
    return out
