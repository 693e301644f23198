"""Synthesis of a global type from a network.

Starting from the initial network, the algorithm repeatedly lets a ready
location lead a choice.  A history of (network, sender, receiver) triples
records which locations have already led in each visited network; once every
ready location has led in a network that recurs, a recursion variable closes
the loop.  Networks where nothing is ready yield the ``deadlock`` constant.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .semantics import NetState, initial_state, reactive_successors, ready_locations, unfold_network
from .syntax import (Deadlock, GBranch, GChoice, GEnd, GlobalType, GRec, GVar, IChoice,
                     LocationName, Network, contains_deadlock, free_vars, unfold_top)

History = tuple[tuple[NetState, LocationName, LocationName], ...]

# binder names in order of first use; the second binder is Z, the customary anchor name
_NAMES = ["X", "Z", "Y", "W", "V", "U", "T", "S", "R", "Q"]


def restrict(h: History, m: NetState) -> History:
    return tuple(entry for entry in h if entry[0] == m)


def occurs(m: NetState, h: History) -> bool:
    return any(entry[0] == m for entry in h)


def complete(h: History, m: NetState) -> bool:
    """Every location ready in ``m`` has led a choice in ``h``."""
    leaders = {p for _, p, _ in h}
    return all(p in leaders for p, _ in ready_locations(m))


def eligible(p: LocationName, m: NetState, h: History) -> bool:
    ready = {loc for loc, _ in ready_locations(m)}
    return p in ready and all(sender != p for _, sender, _ in restrict(h, m))


def ch(h: History, m: NetState) -> Optional[LocationName]:
    """The oldest eligible location; age is the lexicographic order of names."""
    for p in sorted(loc for loc, _ in ready_locations(m)):
        if eligible(p, m, h):
            return p
    return None


@dataclass
class SynthesisContext:
    names: dict[NetState, str] = field(default_factory=dict)

    def var(self, m: NetState) -> str:
        if m not in self.names:
            i = len(self.names)
            base = _NAMES[i % len(_NAMES)]
            self.names[m] = base if i < len(_NAMES) else f"{base}{i // len(_NAMES)}"
        return self.names[m]


def successor(m: NetState, p: LocationName, branch: int) -> NetState:
    """Network after ``p`` fires its ``branch``-th send, using the receiver's first matching branch."""
    return reactive_successors(m, p)[branch][0].dst


def gt(h: History, m: NetState, ctx: SynthesisContext) -> GlobalType:
    m = unfold_network(m)
    if m.all_end():
        return GEnd()
    if not ready_locations(m):
        return Deadlock()
    if occurs(m, h):
        if complete(restrict(h, m), m):
            return GVar(ctx.var(m))
        return _choice(h, m, ch(restrict(h, m), m), ctx)
    name = ctx.var(m)
    return GRec(name, _choice(h, m, ch((), m), ctx))


def _choice(h: History, m: NetState, p: LocationName, ctx: SynthesisContext) -> GChoice:
    sender = unfold_top(m[p])
    assert isinstance(sender, IChoice)
    branches = []
    for i, b in enumerate(sender.branches):
        h_i = h + ((m, p, b.target),)
        branches.append(GBranch(b.label, b.target, gt(h_i, successor(m, p, i), ctx)))
    return GChoice(p, tuple(branches))


def strip_unused_binders(g: GlobalType) -> GlobalType:
    match g:
        case GRec(name, body):
            body = strip_unused_binders(body)
            return GRec(name, body) if name in free_vars(body) else body
        case GChoice(leader, bs):
            return GChoice(leader, tuple(GBranch(b.label, b.receiver, strip_unused_binders(b.cont))
                                         for b in bs))
    return g


@dataclass
class SynthesisResult:
    type: GlobalType
    deadlocked: bool


def synthesize(net: Network, simplify: bool = False) -> SynthesisResult:
    g = gt((), initial_state(net), SynthesisContext())
    if simplify:
        g = strip_unused_binders(g)
    return SynthesisResult(g, contains_deadlock(g))
