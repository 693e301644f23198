"""Explicit labelled transition systems for networks.

Two semantics are supported.  The default one makes internal choice and
recursion unfolding visible as tau steps; a chosen send is recorded by the
:class:`~justcheck.syntax.Committed` marker.  The reactive one has no tau steps:
recursion is unfolded on the fly and a communication fires directly from an
internal choice branch.
"""
from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal, Optional, Union

from .syntax import (Committed, EChoice, End, IChoice, LocationName, Network, Rec,
                     Term, children, erase_origins, host_location, number_origins, pretty_print,
                     unfold, unfold_top)

Semantics = Literal["default", "reactive"]
DEFAULT_STATE_CAP = 100_000


class StateCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Tau:
    def __str__(self) -> str:
        return "tau"


@dataclass(frozen=True)
class Comm:
    sender: LocationName
    label: str
    receiver: LocationName

    def __str__(self) -> str:
        return f"{self.sender}-{self.label}->{self.receiver}"


Action = Union[Tau, Comm]


@dataclass(frozen=True)
class NetState:
    """Canonical network state: threads sorted by location name."""
    threads: tuple[tuple[LocationName, Term], ...]

    @staticmethod
    def of(bindings: Iterable[tuple[LocationName, Term]]) -> "NetState":
        return NetState(tuple(sorted(bindings, key=lambda b: b[0])))

    def __getitem__(self, loc: LocationName) -> Term:
        for name, term in self.threads:
            if name == loc:
                return term
        raise KeyError(loc)

    @property
    def locations(self) -> list[LocationName]:
        return [loc for loc, _ in self.threads]

    def updated(self, updates: dict[LocationName, Term]) -> "NetState":
        return NetState(tuple((loc, updates.get(loc, t)) for loc, t in self.threads))

    def all_end(self) -> bool:
        return all(isinstance(t, End) for _, t in self.threads)

    def render(self) -> dict[str, str]:
        return {loc: pretty_print(t) for loc, t in self.threads}


def initial_state(net: Network) -> NetState:
    """Canonical state of a network; ids are assigned if the network was built without them."""
    if any(True for _, t in net.bindings for _ in _missing(t)):
        net = number_origins(net)
    return NetState.of(net.bindings)


def _missing(t) -> Iterator[None]:
    stack = [t]
    while stack:
        s = stack.pop()
        match s:
            case Rec(origin=None) | Committed(origin=None):
                yield None
            case IChoice(branches=bs) | EChoice(branches=bs):
                if any(b.origin is None for b in bs):
                    yield None
        stack.extend(children(s))


@dataclass(frozen=True)
class Transition:
    src: NetState
    action: Action
    dst: NetState
    comp: frozenset[LocationName]
    instr: frozenset[str]


# --------------------------------------------------------------------------
# one-step relations
# --------------------------------------------------------------------------

def _default_steps(state: NetState) -> list[Transition]:
    out = []
    for p, t in state.threads:
        match t:
            case IChoice(bs):
                for b in bs:
                    dst = state.updated({p: Committed(b.target, b.label, b.cont, b.origin)})
                    out.append(Transition(state, Tau(), dst, frozenset({p}), frozenset({b.origin})))
            case Rec(origin=o):
                dst = state.updated({p: unfold(t)})
                out.append(Transition(state, Tau(), dst, frozenset({p}), frozenset({o})))
            case Committed(q, lab, cont, o):
                if q == p or q not in state.locations:
                    continue
                recv = state[q]
                if isinstance(recv, EChoice):
                    for rb in recv.branches:
                        if rb.source == p and rb.label == lab:
                            dst = state.updated({p: cont, q: rb.cont})
                            out.append(Transition(state, Comm(p, lab, q), dst,
                                                  frozenset({p, q}), frozenset({o, rb.origin})))
    return out


def reactive_steps(state: NetState) -> list[Transition]:
    out = []
    for p, t in state.threads:
        sender = unfold_top(t)
        if not isinstance(sender, IChoice):
            continue
        for sb in sender.branches:
            q = sb.target
            if q == p or q not in state.locations:
                continue
            recv = unfold_top(state[q])
            if not isinstance(recv, EChoice):
                continue
            for rb in recv.branches:
                if rb.source == p and rb.label == sb.label:
                    dst = state.updated({p: sb.cont, q: rb.cont})
                    out.append(Transition(state, Comm(p, sb.label, q), dst,
                                          frozenset({p, q}), frozenset({sb.origin, rb.origin})))
    return out


def enabled_transitions(state: NetState, semantics: Semantics = "default") -> list[Transition]:
    """All transitions leaving ``state``; parallel edges with equal (action, target) are merged."""
    raw = _default_steps(state) if semantics == "default" else reactive_steps(state)
    seen = set()
    out = []
    for tr in raw:
        key = (tr.action, tr.dst)
        if key not in seen:
            seen.add(key)
            out.append(tr)
    return out


# --------------------------------------------------------------------------
# transition systems
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Edge:
    """A transition of a built Lts, identified by its index ``id``."""
    id: int
    src: int
    dst: int
    action: Action
    comp: frozenset[LocationName]
    instr: frozenset[str]


@dataclass
class Lts:
    states: list[NetState]
    edges: list[Edge]
    semantics: Semantics
    initial: int = 0
    out: list[list[int]] = field(default_factory=list)
    index: dict[NetState, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.out:
            self.out = [[] for _ in self.states]
            for e in self.edges:
                self.out[e.src].append(e.id)
        if not self.index:
            self.index = {s: i for i, s in enumerate(self.states)}

    @property
    def locations(self) -> list[LocationName]:
        return self.states[self.initial].locations

    def successors(self, s: int) -> list[Edge]:
        return [self.edges[i] for i in self.out[s]]

    def terminal(self, s: int) -> bool:
        return not self.out[s]

    def to_json(self) -> dict:
        return {
            "semantics": self.semantics,
            "initial": self.initial,
            "states": [{"id": i, "threads": s.render()} for i, s in enumerate(self.states)],
            "transitions": [
                {"id": e.id, "src": e.src, "dst": e.dst, "action": str(e.action),
                 "comp": sorted(e.comp), "instr": sorted(e.instr)}
                for e in self.edges
            ],
        }

    def to_dot(self) -> str:
        lines = ["digraph lts {", "  node [shape=box, fontname=monospace];"]
        for i, s in enumerate(self.states):
            label = "\\n".join(f"{loc}: {txt}" for loc, txt in s.render().items())
            label = label.replace('"', '\\"')
            shape = ", peripheries=2" if i == self.initial else ""
            lines.append(f'  s{i} [label="{label}"{shape}];')
        for e in self.edges:
            lines.append(f'  s{e.src} -> s{e.dst} [label="{e.action}"];')
        lines.append("}")
        return "\n".join(lines)


def state_cap() -> int:
    raw = os.environ.get("JUSTCHECK_STATE_CAP")
    return int(raw) if raw else DEFAULT_STATE_CAP


def build_lts(net: Union[Network, NetState], semantics: Semantics = "default",
              cap: Optional[int] = None) -> Lts:
    """Breadth-first closure of the one-step relation from the initial state."""
    cap = state_cap() if cap is None else cap
    start = net if isinstance(net, NetState) else initial_state(net)
    states = [start]
    index = {start: 0}
    edges: list[Edge] = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for tr in enabled_transitions(states[i], semantics):
            j = index.get(tr.dst)
            if j is None:
                if len(states) >= cap:
                    raise StateCapExceeded(f"more than {cap} reachable states")
                j = len(states)
                index[tr.dst] = j
                states.append(tr.dst)
                queue.append(j)
            edges.append(Edge(len(edges), i, j, tr.action, tr.comp, tr.instr))
    return Lts(states, edges, semantics, 0, index=index)


# --------------------------------------------------------------------------
# unfolding and readiness
# --------------------------------------------------------------------------

def is_unfolded(state: NetState) -> bool:
    return not any(isinstance(t, Rec) for _, t in state.threads)


def unfold_network(state: NetState) -> NetState:
    """Apply recursion-unfolding tau steps until none is possible."""
    return state.updated({loc: unfold_top(t) for loc, t in state.threads if isinstance(t, Rec)})


def reactive_successors(state: NetState, p: LocationName) -> list[list[Transition]]:
    """Per internal-choice branch of ``p``, the reactive transitions that fire it."""
    sender = unfold_top(state[p])
    if not isinstance(sender, IChoice):
        return []
    steps = [t for t in reactive_steps(state) if t.action.sender == p]
    out = []
    for sb in sender.branches:
        out.append([t for t in steps if sb.origin in t.instr and t.action.label == sb.label
                    and t.action.receiver == sb.target])
    return out


def ready_locations(state: NetState) -> list[tuple[LocationName, int]]:
    """Locations whose (unfolded) thread is an internal choice with every branch able to fire."""
    out = []
    for p, _ in state.threads:
        per_branch = reactive_successors(state, p)
        if per_branch and all(per_branch):
            out.append((p, len(per_branch)))
    return out


def erase_state(state: NetState) -> NetState:
    return NetState(tuple((loc, erase_origins(t)) for loc, t in state.threads))


def check_comp_instr(lts: Lts) -> bool:
    return all(e.comp == frozenset(host_location(i) for i in e.instr) for e in lts.edges)


def lts_json(lts: Lts) -> str:
    return json.dumps(lts.to_json(), indent=2)


def quotient_by_unfolding(lts: Lts) -> tuple[int, int]:
    """State and transition counts once states equal up to recursion unfolding are identified.

    Unfolding tau steps become self-loops in the quotient and are dropped.
    """
    cls = {i: erase_state(unfold_network(s)) for i, s in enumerate(lts.states)}
    unfold_edges = {e.id for e in lts.edges
                    if isinstance(e.action, Tau) and cls[e.src] == cls[e.dst]
                    and any(isinstance(lts.states[e.src][loc], Rec) for loc in e.comp)}
    edges = {(cls[e.src], e.action, cls[e.dst]) for e in lts.edges if e.id not in unfold_edges}
    return len(set(cls.values())), len(edges)


def replay(lts: Lts, actions: Iterable[str]) -> set[int]:
    """States reachable by performing the given communications in order, tau steps interleaved freely."""
    def tau_closure(states: set[int]) -> set[int]:
        todo = list(states)
        seen = set(states)
        while todo:
            s = todo.pop()
            for e in lts.successors(s):
                if isinstance(e.action, Tau) and e.dst not in seen:
                    seen.add(e.dst)
                    todo.append(e.dst)
        return seen

    current = tau_closure({lts.initial})
    for a in actions:
        current = tau_closure({e.dst for s in current for e in lts.successors(s) if str(e.action) == a})
    return current
