"""Global types: projection, the typing judgement, and global-type transitions."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Optional

from .semantics import Comm, NetState, Tau, build_lts
from .syntax import (Committed, Deadlock, EChoice, End, GBranch, GChoice, GEnd, GlobalType,
                     GRec, GVar, IChoice, LocationName, Merge, Network, Rec, Recv, Send, Term,
                     Var, contains_deadlock, free_vars, is_closed, pretty_print,
                     unfold)


class DeadlockInType(ValueError):
    """A global type still contains the ``deadlock`` constant emitted by synthesis."""


# --------------------------------------------------------------------------
# participants and projection
# --------------------------------------------------------------------------

def participants(g: GlobalType) -> set[LocationName]:
    match g:
        case GEnd() | GVar():
            return set()
        case Deadlock():
            raise DeadlockInType("participants are undefined for a type containing deadlock")
        case GRec(body=body):
            return participants(body)
        case GChoice(leader, branches):
            out = {leader}
            for b in branches:
                out.add(b.receiver)
                out |= participants(b.cont)
            return out
    raise TypeError(f"not a global type: {g!r}")


def project(g: GlobalType, p: LocationName, require_closed: bool = True) -> Term:
    """Projection of ``g`` onto ``p``; merges of non-leader choices are kept as :class:`Merge`.

    With ``require_closed=False`` a binder is dropped whenever ``p`` does not
    participate, even if the binder is not closed.
    """
    match g:
        case GEnd():
            return End()
        case GVar(name):
            return Var(name)
        case Deadlock():
            raise DeadlockInType("cannot project a type containing deadlock")
        case GRec(name, body):
            if p not in participants(body) and (is_closed(g) or not require_closed):
                return End()
            return Rec(name, project(body, p, require_closed))
        case GChoice(leader, branches):
            parts = [_project_comm(leader, b, p, require_closed) for b in branches]
            if len(parts) == 1:
                return parts[0]
            if leader == p:
                return IChoice(tuple(s for part in parts for s in part.branches))
            return Merge(tuple(parts))
    raise TypeError(f"not a global type: {g!r}")


def _project_comm(leader: LocationName, b: GBranch, p: LocationName, require_closed: bool) -> Term:
    cont = project(b.cont, p, require_closed)
    if p == leader:
        return IChoice((Send(b.receiver, b.label, cont),))
    if p == b.receiver:
        return EChoice((Recv(leader, b.label, cont),))
    return cont


def projection_guarded(q: Term) -> bool:
    """Every recursion variable occurs under a send or receive prefix within its binder."""
    def go(t, unguarded: frozenset) -> bool:
        match t:
            case Var(n):
                return n not in unguarded
            case Rec(n, body, _):
                return go(body, unguarded | {n})
            case Merge(ops):
                return all(go(o, unguarded) for o in ops)
            case IChoice(bs) | EChoice(bs):
                return all(go(b.cont, frozenset()) for b in bs)
            case Committed(cont=c):
                return go(c, frozenset())
        return True
    return go(q, frozenset())


# --------------------------------------------------------------------------
# typing judgement
# --------------------------------------------------------------------------
#
# Each pair (thread, type) gets a formula: a disjunction over applicable
# rules, each rule a conjunction of premises, each premise a disjunction of
# candidate pairs (the existential choice of a matching branch).  The
# judgement is the greatest set of pairs closed under these formulas.

Pair = tuple[Term, Term]


def _rules(t: Term, q: Term) -> list[tuple[str, list[list[Pair]]]]:
    rules: list[tuple[str, list[list[Pair]]]] = []
    if isinstance(t, Rec):
        rules.append(("rec-left", [[(unfold(t), q)]]))
    if isinstance(q, Rec):
        rules.append(("rec-right", [[(t, unfold(q))]]))
    if isinstance(q, Merge):
        rules.append(("merge", [[(t, o)] for o in q.operands]))
    match t, q:
        case End(), End():
            rules.append(("end", []))
        case EChoice(bs), EChoice((qb,)):
            matches = [(b.cont, qb.cont) for b in bs if (b.source, b.label) == (qb.source, qb.label)]
            if matches:
                rules.append(("input", [matches]))
        case IChoice(bs), IChoice(qbs):
            premises = []
            for b in bs:
                premises.append([(b.cont, qb.cont) for qb in qbs
                                 if (b.target, b.label) == (qb.target, qb.label)])
            if all(premises):
                rules.append(("output", premises))
        case Committed(tg, lb, cont, _), IChoice(qbs):
            matches = [(cont, qb.cont) for qb in qbs if (tg, lb) == (qb.target, qb.label)]
            if matches:
                rules.append(("chosen", [matches]))
    return rules


@dataclass
class Judgement:
    """The solved judgement for every pair reachable from a root pair."""
    root: Pair
    rules: dict[Pair, list[tuple[str, list[list[Pair]]]]] = field(default_factory=dict)
    valid: set[Pair] = field(default_factory=set)

    @property
    def holds(self) -> bool:
        return self.root in self.valid

    def _applicable(self, pair: Pair):
        for name, premises in self.rules[pair]:
            if all(any(c in self.valid for c in alts) for alts in premises):
                return name, [next(c for c in alts if c in self.valid) for alts in premises]
        return None

    def proof(self) -> dict:
        """Proof tree as JSON; revisiting a pair already on the tree yields a back-edge."""
        ids: dict[Pair, int] = {}

        def node(pair: Pair) -> dict:
            if pair in ids:
                return {"backref": ids[pair]}
            ids[pair] = len(ids)
            entry = {"id": ids[pair], "thread": pretty_print(pair[0]), "type": pretty_print(pair[1])}
            app = self._applicable(pair)
            if app is None:
                entry["rule"] = None
                return entry
            entry["rule"] = app[0]
            entry["premises"] = [node(c) for c in app[1]]
            return entry

        return node(self.root)


def solve_judgement(t: Term, q: Term, max_pairs: int = 200_000) -> Judgement:
    root = (t, q)
    j = Judgement(root)
    queue = deque([root])
    j.rules[root] = _rules(*root)
    while queue:
        pair = queue.popleft()
        for _, premises in j.rules[pair]:
            for alts in premises:
                for c in alts:
                    if c not in j.rules:
                        if len(j.rules) >= max_pairs:
                            raise RuntimeError("typing judgement explored too many pairs")
                        j.rules[c] = _rules(*c)
                        queue.append(c)
    valid = set(j.rules)
    changed = True
    while changed:
        changed = False
        for pair in list(valid):
            ok = any(all(any(c in valid for c in alts) for alts in premises)
                     for _, premises in j.rules[pair])
            if not ok:
                valid.discard(pair)
                changed = True
    j.valid = valid
    return j


def judge(t: Term, q: Term) -> bool:
    """Whether thread (state) ``t`` is typed by projection type ``q``."""
    return solve_judgement(t, q).holds


# --------------------------------------------------------------------------
# well-typedness
# --------------------------------------------------------------------------

@dataclass
class TypeReport:
    well_typed: bool
    guarded: bool
    reasons: list[str] = field(default_factory=list)
    projections: dict[str, str] = field(default_factory=dict)
    unguarded: list[str] = field(default_factory=list)

    @property
    def guardedly_well_typed(self) -> bool:
        return self.well_typed and self.guarded

    def to_json(self) -> dict:
        return {"well_typed": self.well_typed, "guardedly_well_typed": self.guardedly_well_typed,
                "unguarded_projections": self.unguarded, "reasons": self.reasons,
                "projections": self.projections}


def _threads(net) -> list[tuple[LocationName, Term]]:
    if isinstance(net, NetState):
        return list(net.threads)
    return list(net.bindings)


def typecheck(net, g: GlobalType, require_closed: bool = True) -> TypeReport:
    """Check a network (or network state) against ``g`` location by location."""
    if contains_deadlock(g):
        raise DeadlockInType("a type containing deadlock cannot type a network")
    reasons = []
    threads = _threads(net)
    locs = {loc for loc, _ in threads}
    if free_vars(g):
        reasons.append(f"global type is not closed (free {sorted(free_vars(g))})")
    extra = participants(g) - locs
    if extra:
        reasons.append(f"participants {sorted(extra)} are not locations of the network")
    projections = {}
    unguarded = []
    for loc, thread in threads:
        proj = project(g, loc, require_closed)
        projections[loc] = pretty_print(proj)
        if not projection_guarded(proj):
            unguarded.append(loc)
        if not reasons and not judge(thread, proj):
            reasons.append(f"{loc}: thread is not typed by its projection")
    return TypeReport(not reasons, not unguarded, reasons, projections, unguarded)


def well_typed(net, g: GlobalType) -> bool:
    return typecheck(net, g).well_typed


def guardedly_well_typed(net, g: GlobalType) -> bool:
    return typecheck(net, g).guardedly_well_typed


# --------------------------------------------------------------------------
# global-type transitions
# --------------------------------------------------------------------------

def gtype_step(g: GlobalType, action: Comm, narrowing: bool = True) -> list[GlobalType]:
    """All ``g'`` with ``g`` stepping to ``g'`` on the communication ``action``."""
    p, lab, q = action.sender, action.label, action.receiver

    def step(g, active: frozenset) -> list[GlobalType]:
        if g in active:
            return []
        active = active | {g}
        match g:
            case GRec():
                return step(unfold(g), active)
            case GChoice(r, bs):
                out: list[GlobalType] = []
                if r == p:
                    out.extend(b.cont for b in bs if b.receiver == q and b.label == lab)
                if narrowing and r not in (p, q):
                    eligible = [i for i, b in enumerate(bs) if b.receiver not in (p, q)]
                    succ = {i: step(bs[i].cont, active) for i in eligible}
                    eligible = [i for i in eligible if succ[i]]
                    for size in range(len(eligible), 0, -1):
                        for idx in combinations(eligible, size):
                            for conts in product(*(succ[i] for i in idx)):
                                out.append(GChoice(r, tuple(GBranch(bs[i].label, bs[i].receiver, c)
                                                            for i, c in zip(idx, conts))))
                return _dedupe(out)
        return []

    return step(g, frozenset())


def _dedupe(items: list) -> list:
    seen = set()
    out = []
    for x in items:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


# --------------------------------------------------------------------------
# session fidelity
# --------------------------------------------------------------------------

@dataclass
class FidelityReport:
    ok: bool
    pairs_checked: int
    states_covered: int = 0
    states_total: int = 0
    failure: Optional[dict] = None

    def to_json(self) -> dict:
        return {"ok": self.ok, "pairs_checked": self.pairs_checked,
                "states_covered": self.states_covered, "states_total": self.states_total,
                "failure": self.failure}


def state_typed(state: NetState, g: GlobalType) -> bool:
    return typecheck(state, g).guardedly_well_typed


def session_fidelity_check(net: Network, g: GlobalType, types_per_state: int = 3) -> FidelityReport:
    """Every default transition of a typed state leads to a state typed by a successor type.

    Tau steps must preserve the current type; a communication must be matched
    by a global-type step.  Successor types need not form a finite set (a
    choice left open by one pair can be narrowed again and again by an
    independent pair), so the search keeps the smallest matching types, at most
    ``types_per_state`` per network state.  The check passes when every
    explored pair satisfies the step condition and every reachable state has
    been covered.
    """
    lts = build_lts(net, "default")
    start = (lts.initial, g)
    if not state_typed(lts.states[lts.initial], g):
        return FidelityReport(False, 0, 0, len(lts.states),
                              {"reason": "initial state is not guardedly well-typed"})
    seen = {start}
    per_state = {lts.initial: 1}
    queue = deque([start])
    typed_cache: dict[tuple[int, GlobalType], bool] = {}

    def typed(s: int, gt: GlobalType) -> bool:
        key = (s, gt)
        if key not in typed_cache:
            typed_cache[key] = state_typed(lts.states[s], gt)
        return typed_cache[key]

    while queue:
        s, gt = queue.popleft()
        for e in lts.successors(s):
            if isinstance(e.action, Tau):
                nexts = [gt] if typed(e.dst, gt) else []
            else:
                nexts = [g2 for g2 in gtype_step(gt, e.action) if typed(e.dst, g2)]
            if not nexts:
                return FidelityReport(False, len(seen), len(per_state), len(lts.states), {
                    "state": s, "transition": e.id, "action": str(e.action),
                    "type": pretty_print(gt)})
            for g2 in sorted(nexts, key=lambda t: len(pretty_print(t))):
                if (e.dst, g2) in seen or per_state.get(e.dst, 0) >= types_per_state:
                    continue
                seen.add((e.dst, g2))
                per_state[e.dst] = per_state.get(e.dst, 0) + 1
                queue.append((e.dst, g2))
    covered = len(per_state)
    return FidelityReport(covered == len(lts.states), len(seen), covered, len(lts.states))
