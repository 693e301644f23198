"""Liveness, termination and race checks under fairness assumptions.

A liveness violation for location ``p`` under fairness ``F`` is an F-fair path
on which ``p`` neither terminates nor acts infinitely often.  On a finite
system such a path can be taken ultimately periodic, so it is described by the
set ``S`` of states and the set ``T`` of transitions it visits infinitely
often.  The engine searches for such recurring sets directly on the strongly
connected components of the transition graph; the oracle enumerates concrete
lassos and checks the fairness definitions position by position.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Optional, Sequence, Union

import networkx as nx

from .semantics import Edge, Lts, NetState, Semantics, Tau, build_lts, erase_state
from .syntax import (Committed, EChoice, End, IChoice, LocationName, Network, Rec,
                     children, unfold_top)

# --------------------------------------------------------------------------
# fairness assumptions
# --------------------------------------------------------------------------

TASK_KINDS = {"C": "components", "G": "groups", "I": "instructions",
              "Z": "synchronisations", "A": "actions", "T": "transitions"}


@dataclass(frozen=True)
class Fairness:
    """``mode`` is one of P (progress), J (justness), SWI, S (strong), W (weak).

    ``kind`` names the task type for strong and weak fairness.
    """
    mode: str
    kind: Optional[str] = None

    def __post_init__(self):
        if self.mode in ("S", "W"):
            if self.kind not in TASK_KINDS:
                raise ValueError(f"unknown task kind {self.kind!r}")
        elif self.mode not in ("P", "J", "SWI") or self.kind is not None:
            raise ValueError(f"unknown fairness {self.mode!r}{self.kind or ''}")

    @property
    def name(self) -> str:
        return self.mode + (self.kind or "")

    def __str__(self) -> str:
        return self.name

    @staticmethod
    def parse(text: str) -> "Fairness":
        t = text.strip().upper()
        if t == "JA":  # weak and just fairness of actions coincide
            t = "WA"
        if t in ("P", "J", "SWI"):
            return Fairness(t)
        if len(t) == 2 and t[0] in "SW":
            return Fairness(t[0], t[1])
        raise ValueError(f"unknown fairness assumption {text!r}")


PROGRESS = Fairness("P")
JUSTNESS = Fairness("J")
SWI = Fairness("SWI")
ALL_FAIRNESS = [PROGRESS, JUSTNESS, SWI] + [Fairness(m, k) for m in "SW" for k in TASK_KINDS]


# --------------------------------------------------------------------------
# tasks
# --------------------------------------------------------------------------

def edge_tasks(edge: Edge, kind: str) -> set[Hashable]:
    """Tasks of the given kind engaged in by ``edge``."""
    match kind:
        case "C":
            return set(edge.comp)
        case "G":
            return {edge.comp}
        case "I":
            return set(edge.instr)
        case "Z":
            return {edge.instr}
        case "A":
            return {edge.action}
        case "T":
            return {edge.id}
    raise ValueError(kind)


def enabled_tasks(lts: Lts, s: int, kind: str) -> set[Hashable]:
    out: set[Hashable] = set()
    for e in lts.successors(s):
        out |= edge_tasks(e, kind)
    return out


def task_enabled(lts: Lts, s: int, task: Hashable, kind: str) -> bool:
    return task in enabled_tasks(lts, s, kind)


def task_engaged(edge: Edge, task: Hashable, kind: str) -> bool:
    return task in edge_tasks(edge, kind)


def requested_instructions(state: NetState, semantics: Semantics) -> set[str]:
    """Instructions a thread could perform given a partner."""
    out: set[str] = set()
    for _, t in state.threads:
        if semantics == "reactive":
            t = unfold_top(t)
        match t:
            case Rec(origin=o) | Committed(origin=o):
                out.add(o)
            case IChoice(branches=bs) | EChoice(branches=bs):
                out.update(b.origin for b in bs)
    return out


# --------------------------------------------------------------------------
# witnesses and verdicts
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RecurringSet:
    states: frozenset[int]
    transitions: frozenset[int]

    def to_json(self) -> dict:
        return {"kind": "recurring_set", "states": sorted(self.states),
                "transitions": sorted(self.transitions)}


@dataclass(frozen=True)
class Lasso:
    prefix: tuple[int, ...]     # edge ids from the initial state
    cycle: tuple[int, ...]      # edge ids of a closed walk

    def to_json(self) -> dict:
        return {"kind": "lasso", "prefix": list(self.prefix), "cycle": list(self.cycle)}


@dataclass(frozen=True)
class StuckState:
    state: int
    path: tuple[int, ...]       # edge ids from the initial state

    def to_json(self) -> dict:
        return {"kind": "stuck", "state": self.state, "path": list(self.path)}


@dataclass(frozen=True)
class ReachedState:
    """A reachable state exhibiting the failure (a race, or a location that can no longer act)."""
    state: int
    path: tuple[int, ...]

    def to_json(self) -> dict:
        return {"kind": "state", "state": self.state, "path": list(self.path)}


Witness = Union[RecurringSet, Lasso, StuckState, ReachedState]


@dataclass
class Verdict:
    property: str
    holds: bool
    witness: Optional[Witness] = None
    per_location: dict[str, bool] = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"property": self.property, "holds": self.holds,
               "witness": self.witness.to_json() if self.witness else None}
        if self.per_location:
            out["per_location"] = dict(sorted(self.per_location.items()))
        return out


# --------------------------------------------------------------------------
# recurring-set engine
# --------------------------------------------------------------------------

class _Condition:
    """Fairness side condition on a candidate (S, T).

    ``check`` returns None when (S, T) is fair, ``FAIL`` when no subset of S
    can be fair, or a nonempty set of states that no fair subset may contain.
    """
    FAIL = "fail"

    def __init__(self, lts: Lts, fairness: Fairness):
        self.lts = lts
        self.f = fairness
        self._enabled: dict[tuple[int, str], set] = {}
        self._requested: dict[int, set[str]] = {}

    def enabled(self, s: int, kind: str) -> set:
        key = (s, kind)
        if key not in self._enabled:
            self._enabled[key] = enabled_tasks(self.lts, s, kind)
        return self._enabled[key]

    def requested(self, s: int) -> set[str]:
        if s not in self._requested:
            self._requested[s] = requested_instructions(self.lts.states[s], self.lts.semantics)
        return self._requested[s]

    def check(self, S: frozenset[int], T: frozenset[int]):
        lts, f = self.lts, self.f
        edges = [lts.edges[i] for i in T]
        if f.mode == "P":
            return None
        if f.mode == "J":
            touched = set().union(*(e.comp for e in edges))
            bad = {s for s in S if any(not (e.comp & touched) for e in lts.successors(s))}
            return bad or None
        if f.mode == "SWI":
            engaged = set().union(*(e.instr for e in edges))
            req = set.intersection(*(self.requested(s) for s in S))
            en = set().union(*(self.enabled(s, "I") for s in S))
            missing = (req & en) - engaged
            if not missing:
                return None
            return {s for s in S if self.enabled(s, "I") & missing}
        engaged = set().union(*(edge_tasks(e, f.kind) for e in edges))
        if f.mode == "S":
            missing = set().union(*(self.enabled(s, f.kind) for s in S)) - engaged
            if not missing:
                return None
            return {s for s in S if self.enabled(s, f.kind) & missing}
        perpetual = set.intersection(*(self.enabled(s, f.kind) for s in S))
        return None if perpetual <= engaged else self.FAIL


def _candidate_graph(lts: Lts, avoid: Optional[LocationName]) -> tuple[set[int], list[Edge]]:
    """States and transitions a violating cycle may use."""
    if avoid is None:
        return set(range(len(lts.states))), list(lts.edges)
    nodes = {i for i, s in enumerate(lts.states) if not isinstance(s[avoid], End)}
    edges = [e for e in lts.edges if avoid not in e.comp and e.src in nodes and e.dst in nodes]
    return nodes, edges


def _sccs(nodes: Iterable[int], edges: Sequence[Edge]) -> list[tuple[frozenset[int], frozenset[int]]]:
    g = nx.DiGraph()
    g.add_nodes_from(nodes)
    g.add_edges_from((e.src, e.dst) for e in edges)
    out = []
    for comp in nx.strongly_connected_components(g):
        comp = frozenset(comp)
        internal = frozenset(e.id for e in edges if e.src in comp and e.dst in comp)
        if internal:
            out.append((comp, internal))
    out.sort(key=lambda c: min(c[0]))
    return out


def find_violating_recurring_set(lts: Lts, fairness: Fairness,
                                 avoid: Optional[LocationName]) -> Optional[RecurringSet]:
    """A fair recurring set without transitions of ``avoid`` (where ``avoid`` has not terminated).

    With ``avoid=None`` any fair recurring set qualifies, i.e. an infinite fair path exists.
    """
    cond = _Condition(lts, fairness)
    nodes, edges = _candidate_graph(lts, avoid)
    work = [(nodes, edges)]
    while work:
        ns, es = work.pop()
        for S, T in _sccs(ns, es):
            res = cond.check(S, T)
            if res is None:
                return RecurringSet(S, T)
            if res == _Condition.FAIL:
                continue
            keep = S - res
            work.append((keep, [e for e in es if e.src in keep and e.dst in keep]))
    return None


def satisfies_condition(lts: Lts, witness: RecurringSet, fairness: Fairness,
                        avoid: Optional[LocationName]) -> bool:
    """Re-check a recurring set from the definitions, independently of how it was found."""
    S, T = witness.states, witness.transitions
    if not T:
        return False
    edges = [lts.edges[i] for i in T]
    if any(e.src not in S or e.dst not in S for e in edges):
        return False
    g = nx.DiGraph()
    g.add_nodes_from(S)
    g.add_edges_from((e.src, e.dst) for e in edges)
    if not nx.is_strongly_connected(g):
        return False
    if {e.src for e in edges} != set(S):
        return False
    if avoid is not None:
        if any(avoid in e.comp for e in edges):
            return False
        if any(isinstance(lts.states[s][avoid], End) for s in S):
            return False
    f = fairness
    if f.mode == "P":
        return True
    if f.mode == "J":
        return all(any(e.comp & u.comp for u in edges) for s in S for e in lts.successors(s))
    if f.mode == "SWI":
        engaged = {i for u in edges for i in u.instr}
        for s in S:
            for e in lts.successors(s):
                for instr in e.instr:
                    perpetual = all(instr in requested_instructions(lts.states[x], lts.semantics) for x in S)
                    if perpetual and instr not in engaged:
                        return False
        return True
    engaged = set().union(*(edge_tasks(u, f.kind) for u in edges))
    if f.mode == "S":
        return all(enabled_tasks(lts, s, f.kind) <= engaged for s in S)
    perpetual = set.intersection(*(enabled_tasks(lts, s, f.kind) for s in S))
    return perpetual <= engaged


def _walk(lts: Lts, edge_ids: frozenset[int], src: int, goal) -> list[int]:
    """Shortest edge path from ``src`` to the first state satisfying ``goal``, using only ``edge_ids``."""
    parent: dict[int, Optional[Edge]] = {src: None}
    queue = deque([src])
    found = src if goal(src) else None
    while queue and found is None:
        s = queue.popleft()
        for e in lts.successors(s):
            if e.id in edge_ids and e.dst not in parent:
                parent[e.dst] = e
                if goal(e.dst):
                    found = e.dst
                    break
                queue.append(e.dst)
    path = []
    s = found
    while parent[s] is not None:
        path.append(parent[s].id)
        s = parent[s].src
    return path[::-1]


def lasso_of(lts: Lts, rs: RecurringSet) -> Lasso:
    """A concrete lasso whose cycle traverses every transition of the recurring set.

    The cycle greedily walks to the nearest transition not yet taken.
    """
    start = min(rs.states)
    todo = set(rs.transitions)
    cycle: list[int] = []
    cur = start
    while todo:
        path = _walk(lts, rs.transitions, cur, lambda s: any(i in todo for i in lts.out[s]))
        cycle += path
        here = lts.edges[path[-1]].dst if path else cur
        e = min(i for i in lts.out[here] if i in todo)
        cycle.append(e)
        todo -= set(cycle)
        cur = lts.edges[e].dst
    cycle += _walk(lts, rs.transitions, cur, lambda s: s == start)
    return Lasso(shortest_path(lts, start), tuple(cycle))


# --------------------------------------------------------------------------
# verdicts
# --------------------------------------------------------------------------

def shortest_path(lts: Lts, target: int, within: Optional[set[int]] = None) -> Optional[tuple[int, ...]]:
    """Edge ids of a shortest path from the initial state to ``target``."""
    parent: dict[int, Optional[Edge]] = {lts.initial: None}
    queue = deque([lts.initial])
    while queue:
        s = queue.popleft()
        if s == target:
            path = []
            while parent[s] is not None:
                path.append(parent[s].id)
                s = parent[s].src
            return tuple(reversed(path))
        for e in lts.successors(s):
            if e.dst not in parent and (within is None or e.dst in within):
                parent[e.dst] = e
                queue.append(e.dst)
    return None


def terminal_failures(lts: Lts) -> dict[int, list[LocationName]]:
    """Reachable stuck states, with the locations that have not terminated there."""
    out = {}
    for i, s in enumerate(lts.states):
        if lts.terminal(i):
            pending = [loc for loc, t in s.threads if not isinstance(t, End)]
            if pending:
                out[i] = pending
    return out


def check_liveness(lts: Lts, fairness: Fairness) -> Verdict:
    """Every location terminates or acts infinitely often on every fair path."""
    name = ("L" if lts.semantics == "default" else "R") + f"({fairness.name})"
    stuck = terminal_failures(lts)
    per_loc: dict[str, bool] = {}
    witness: Optional[Witness] = None
    for loc in lts.locations:
        bad_stuck = [s for s, locs in stuck.items() if loc in locs]
        if bad_stuck:
            per_loc[loc] = False
            if witness is None:
                witness = StuckState(bad_stuck[0], shortest_path(lts, bad_stuck[0]))
            continue
        rs = find_violating_recurring_set(lts, fairness, loc)
        per_loc[loc] = rs is None
        if rs is not None and witness is None:
            witness = rs
    return Verdict(name, all(per_loc.values()), witness, per_loc)


def check_terminates(lts: Lts, fairness: Fairness, successful: bool = False) -> Verdict:
    """Every fair path is finite; with ``successful``, it moreover ends with every thread ``end``.

    Plain termination accepts paths that stop in a stuck state.
    """
    prefix = "T" if lts.semantics == "default" else "RT"
    name = prefix + ("S" if successful else "") + f"({fairness.name})"
    if successful:
        stuck = terminal_failures(lts)
        if stuck:
            s = min(stuck)
            return Verdict(name, False, StuckState(s, shortest_path(lts, s)))
    rs = find_violating_recurring_set(lts, fairness, None)
    return Verdict(name, rs is None, rs)


def deadlock_free(lts: Lts) -> Verdict:
    stuck = terminal_failures(lts)
    if not stuck:
        return Verdict("DF", True)
    s = min(stuck, key=lambda i: (len(shortest_path(lts, i)), i))
    return Verdict("DF", False, StuckState(s, shortest_path(lts, s)))


def padovani_lockfree(lts: Lts) -> Verdict:
    """From every reachable state, every pending location can still act on some path."""
    g = nx.DiGraph()
    g.add_nodes_from(range(len(lts.states)))
    g.add_edges_from((e.src, e.dst) for e in lts.edges)
    per_loc = {}
    witness = None
    for loc in lts.locations:
        sources = {e.src for e in lts.edges if loc in e.comp}
        can_act = set(sources)
        for s in sources:
            can_act |= nx.ancestors(g, s)
        bad = [i for i, st in enumerate(lts.states)
               if not isinstance(st[loc], End) and i not in can_act]
        per_loc[loc] = not bad
        if bad and witness is None:
            witness = ReachedState(bad[0], shortest_path(lts, bad[0]))
    return Verdict("LF", all(per_loc.values()), witness, per_loc)


def race_states(lts: Lts) -> list[int]:
    """States with two communications into one receiver from distinct senders or to distinct states."""
    out = []
    for i in range(len(lts.states)):
        by_receiver: dict[str, list[Edge]] = {}
        for e in lts.successors(i):
            if not isinstance(e.action, Tau):
                by_receiver.setdefault(e.action.receiver, []).append(e)
        for es in by_receiver.values():
            senders = {e.action.sender for e in es}
            targets = {erase_state(lts.states[e.dst]) for e in es}
            if len(senders) > 1 or len(targets) > 1:
                out.append(i)
                break
    return out


def race_free(lts: Lts) -> Verdict:
    races = race_states(lts)
    if not races:
        return Verdict("RF", True)
    return Verdict("RF", False, ReachedState(races[0], shortest_path(lts, races[0])))


def syntactic_race_free(net: Network) -> bool:
    """Every external choice listens to one location, with pairwise distinct labels."""
    stack = [t for _, t in net.bindings]
    while stack:
        t = stack.pop()
        if isinstance(t, EChoice):
            if len({b.source for b in t.branches}) > 1:
                return False
            labels = [b.label for b in t.branches]
            if len(set(labels)) != len(labels):
                return False
        stack.extend(children(t))
    return True


# --------------------------------------------------------------------------
# lasso oracle
# --------------------------------------------------------------------------

class LassoOracle:
    """Brute-force search for fair lassos with bounded prefix and cycle length.

    Candidate cycles are closed walks (not necessarily simple) of length at
    most ``cycle_bound``, enumerated once per ``avoid`` and reused for every
    fairness assumption.  Each lasso is checked against the path-based
    definitions: every suffix of prefix.cycle^omega is examined.
    """

    def __init__(self, lts: Lts, prefix_bound: int = 8, cycle_bound: int = 12,
                 max_prefixes: int = 16):
        self.lts = lts
        self.prefix_bound = prefix_bound
        self.cycle_bound = cycle_bound
        self.max_prefixes = max_prefixes
        self._cycles: dict[Optional[str], list[tuple[int, ...]]] = {}
        self._prefixes: dict[int, list[tuple[int, ...]]] = {}
        self._en: dict[tuple[int, str], set] = {}
        self._req: dict[int, set[str]] = {}

    # enumeration ------------------------------------------------------
    def cycles(self, avoid: Optional[LocationName]) -> list[tuple[int, ...]]:
        if avoid in self._cycles:
            return self._cycles[avoid]
        lts = self.lts
        allowed = [e for e in lts.edges
                   if avoid is None or (avoid not in e.comp
                                        and not isinstance(lts.states[e.src][avoid], End))]
        out_edges: dict[int, list[Edge]] = {}
        for e in allowed:
            out_edges.setdefault(e.src, []).append(e)
        found: dict[frozenset[int], tuple[int, ...]] = {}
        for start in sorted(out_edges):
            # breadth-first over (position, edge set used so far)
            seen = {(start, frozenset())}
            layer = [(start, frozenset(), ())]
            for _ in range(self.cycle_bound):
                nxt = []
                for cur, used, walk in layer:
                    for e in out_edges.get(cur, ()):
                        u2 = used | {e.id}
                        w2 = walk + (e.id,)
                        if e.dst == start and u2 not in found:
                            found[u2] = w2
                        key = (e.dst, u2)
                        if key not in seen:
                            seen.add(key)
                            nxt.append((e.dst, u2, w2))
                layer = nxt
                if not layer:
                    break
        cycles = sorted(found.values(), key=lambda w: (len(w), w))
        self._cycles[avoid] = cycles
        return cycles

    def prefixes(self, target: int) -> list[tuple[int, ...]]:
        """Simple paths from the initial state to ``target``, shortest first, within the bound."""
        if target in self._prefixes:
            return self._prefixes[target]
        lts = self.lts
        out: list[tuple[int, ...]] = []
        queue = deque([(lts.initial, (), frozenset({lts.initial}))])
        while queue and len(out) < self.max_prefixes:
            s, path, visited = queue.popleft()
            if s == target:
                out.append(path)
                continue
            if len(path) >= self.prefix_bound:
                continue
            for e in lts.successors(s):
                if e.dst not in visited:
                    queue.append((e.dst, path + (e.id,), visited | {e.dst}))
        self._prefixes[target] = out
        return out

    # literal fairness check ------------------------------------------
    def _enabled(self, s: int, kind: str) -> set:
        key = (s, kind)
        if key not in self._en:
            self._en[key] = enabled_tasks(self.lts, s, kind)
        return self._en[key]

    def _requested(self, s: int) -> set[str]:
        if s not in self._req:
            self._req[s] = requested_instructions(self.lts.states[s], self.lts.semantics)
        return self._req[s]

    def is_fair(self, prefix: Sequence[int], cycle: Sequence[int], f: Fairness) -> bool:
        """Check every suffix of prefix.cycle^omega against the definition of ``f``."""
        lts = self.lts
        n, L = len(prefix), len(cycle)
        path = [lts.edges[i] for i in list(prefix) + list(cycle)]

        def wrap(k: int) -> int:
            return k if k < n + L else n + (k - n) % L

        def edge_at(k: int) -> Edge:
            return path[wrap(k)]

        def state_at(k: int) -> int:
            return lts.initial if k == 0 else edge_at(k - 1).dst

        def horizon(i: int) -> int:
            # positions i .. horizon(i)-1 cover every state and edge of the suffix from i
            return max(i, n) + L

        if f.mode == "P":
            return True
        kind = "I" if f.mode == "SWI" else f.kind
        # every window [j, max(j, n) + L) spans the whole cycle, so a task is enabled in all of
        # them exactly when some cycle position enables it
        on_cycle = set() if f.mode == "J" else \
            set().union(*(self._enabled(state_at(k), kind) for k in range(n, n + L)))
        for i in range(n + L):
            h = horizon(i)
            states = [state_at(k) for k in range(i, h)]
            later = [edge_at(k) for k in range(i, h)]
            if f.mode == "J":
                for e in lts.successors(states[0]):
                    if not any(e.comp & u.comp for u in later):
                        return False
                continue
            engaged = set().union(*(edge_tasks(u, kind) for u in later))
            enabled_at = [self._enabled(s, kind) for s in states]
            for task in set().union(*enabled_at) - engaged:
                if f.mode == "W":
                    if all(task in en for en in enabled_at):
                        return False
                    continue
                if task not in on_cycle:
                    continue
                if f.mode == "SWI" and not all(task in self._requested(s) for s in states):
                    continue
                return False
        return True

    def find(self, fairness: Fairness, avoid: Optional[LocationName]) -> Optional[Lasso]:
        lts = self.lts
        for cycle in self.cycles(avoid):
            rotations = []
            seen_starts = set()
            for r in range(len(cycle)):
                rotated = cycle[r:] + cycle[:r]
                start = lts.edges[rotated[0]].src
                if start not in seen_starts:
                    seen_starts.add(start)
                    rotations.append((rotated, self.prefixes(start)))
            # the shortest prefix to each entry point first, then the alternatives
            for depth in range(self.max_prefixes):
                for rotated, prefixes in rotations:
                    if depth < len(prefixes) and self.is_fair(prefixes[depth], rotated, fairness):
                        return Lasso(prefixes[depth], rotated)
                if depth == 0 and fairness.mode != "J":
                    # only justness carries obligations that start in the prefix
                    break
        return None


def oracle_enumerate_lassos(lts: Lts, fairness: Fairness, avoid: Optional[LocationName],
                            prefix_bound: int = 8, cycle_bound: int = 12) -> Optional[Lasso]:
    return LassoOracle(lts, prefix_bound, cycle_bound).find(fairness, avoid)


# --------------------------------------------------------------------------
# classification
# --------------------------------------------------------------------------

@dataclass
class ClassificationReport:
    name: str
    verdicts: dict[str, Verdict] = field(default_factory=dict)
    extras: dict[str, object] = field(default_factory=dict)

    def holds(self, prop: str) -> bool:
        return self.verdicts[prop].holds

    def to_json(self) -> dict:
        return {"name": self.name,
                "verdicts": {k: v.to_json() for k, v in self.verdicts.items()},
                **self.extras}


STRUCTURAL_PROPERTIES = ("DF", "RF", "SRF", "LF")


def classify(net: Network, fairness: Iterable[Union[str, Fairness]] = (),
             semantics: Iterable[str] = ("default",), properties: Iterable[str] = STRUCTURAL_PROPERTIES,
             lts_cache: Optional[dict] = None) -> ClassificationReport:
    """Verdict matrix: structural properties plus liveness for each fairness and semantics.

    Structural properties (deadlock-freedom, race-freedom, Padovani
    lock-freedom) always refer to the default semantics.
    """
    report = ClassificationReport(net.name)
    cache = {} if lts_cache is None else lts_cache

    def lts_for(sem):
        if sem not in cache:
            cache[sem] = build_lts(net, sem)
        return cache[sem]

    for prop in properties:
        match prop:
            case "DF":
                report.verdicts["DF"] = deadlock_free(lts_for("default"))
            case "RF":
                report.verdicts["RF"] = race_free(lts_for("default"))
            case "SRF":
                report.verdicts["SRF"] = Verdict("SRF", syntactic_race_free(net))
            case "LF":
                report.verdicts["LF"] = padovani_lockfree(lts_for("default"))
            case _:
                raise ValueError(f"unknown property {prop!r}")
    for sem in semantics:
        for f in fairness:
            f = f if isinstance(f, Fairness) else Fairness.parse(f)
            v = check_liveness(lts_for(sem), f)
            report.verdicts[v.property] = v
    return report

