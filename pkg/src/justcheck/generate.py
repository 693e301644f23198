"""Seeded generators of small guarded networks, for property tests and experiments."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .fairness import RecurringSet, _candidate_graph, _sccs, lasso_of
from .semantics import Lts, StateCapExceeded, build_lts
from .syntax import (EChoice, End, GBranch, GChoice, GEnd, GlobalType, GRec, GVar, IChoice, Merge, Network,
                     Recv, Rec, Send, Var, children, number_origins)
from .types import project, projection_guarded


@dataclass
class GenConfig:
    max_locations: int = 4
    max_branches: int = 3
    max_depth: int = 4
    labels: tuple[str, ...] = ("a", "b")
    max_states: int = 40
    top_recursion: float = 0.6   # chance that a thread or global type starts with a binder


def _locations(rng: random.Random, cfg: GenConfig) -> list[str]:
    n = rng.randint(2, cfg.max_locations)
    return [f"p{i}" for i in range(n)]


def random_thread(rng: random.Random, me: str, others: list[str], cfg: GenConfig,
                  depth: Optional[int] = None, bound: tuple[str, ...] = (),
                  guarded: bool = False):
    """A thread in which every recursion variable occurs under a prefix."""
    top = depth is None
    depth = cfg.max_depth if depth is None else depth
    roll = rng.random()
    if top and roll < cfg.top_recursion:
        return Rec("X0", _choice(rng, me, others, cfg, depth, ("X0",)))
    if depth == 0 or roll < 0.15:
        if guarded and bound and rng.random() < 0.7:
            return Var(rng.choice(bound))
        return End()
    if roll < 0.3 and len(bound) < 2:
        name = f"X{len(bound)}"
        body = _choice(rng, me, others, cfg, depth, bound + (name,))
        return Rec(name, body)
    if guarded and bound and roll < 0.45:
        return Var(rng.choice(bound))
    return _choice(rng, me, others, cfg, depth, bound)


def _choice(rng, me, others, cfg, depth, bound):
    k = rng.randint(1, cfg.max_branches)
    send = rng.random() < 0.5
    branches = []
    seen = set()
    for _ in range(k):
        peer = rng.choice(others)
        label = rng.choice(cfg.labels)
        if (peer, label) in seen:
            continue
        seen.add((peer, label))
        cont = random_thread(rng, me, others, cfg, depth - 1, bound, guarded=True)
        branches.append(Send(peer, label, cont) if send else Recv(peer, label, cont))
    return IChoice(tuple(branches)) if send else EChoice(tuple(branches))


def random_network(rng: random.Random, cfg: GenConfig = GenConfig()) -> Network:
    """Independent random threads; most such networks deadlock or race somewhere."""
    locs = _locations(rng, cfg)
    bindings = []
    for p in locs:
        others = [q for q in locs if q != p]
        bindings.append((p, random_thread(rng, p, others, cfg)))
    return number_origins(Network(tuple(bindings)))


def random_global(rng: random.Random, locs: list[str], cfg: GenConfig, depth: Optional[int] = None,
                  bound: tuple[str, ...] = ()) -> GlobalType:
    top = depth is None
    depth = cfg.max_depth if depth is None else depth
    roll = rng.random()
    if top and roll < cfg.top_recursion:
        return GRec("X0", _gchoice(rng, locs, cfg, depth, ("X0",)))
    if depth == 0 or roll < 0.15:
        return GVar(rng.choice(bound)) if bound and rng.random() < 0.7 else GEnd()
    if roll < 0.3 and len(bound) < 2:
        name = f"X{len(bound)}"
        return GRec(name, _gchoice(rng, locs, cfg, depth, bound + (name,)))
    return _gchoice(rng, locs, cfg, depth, bound)


def _gchoice(rng, locs, cfg, depth, bound):
    leader = rng.choice(locs)
    k = rng.randint(1, cfg.max_branches)
    branches = []
    seen = set()
    for _ in range(k):
        receiver = rng.choice([q for q in locs if q != leader])
        label = rng.choice(cfg.labels)
        if (receiver, label) in seen:
            continue
        seen.add((receiver, label))
        branches.append(GBranch(label, receiver, random_global(rng, locs, cfg, depth - 1, bound)))
    return GChoice(leader, tuple(branches))


def projected_network(rng: random.Random, cfg: GenConfig = GenConfig()) -> Optional[Network]:
    """The projections of a random global type, or None when some projection is undefined."""
    locs = _locations(rng, cfg)
    g = random_global(rng, locs, cfg)
    try:
        bindings = tuple((p, project(g, p)) for p in locs)
    except ValueError:
        return None
    if any(_has_merge(t) or _stacked_binder(t) or not projection_guarded(t) for _, t in bindings):
        return None
    return number_origins(Network(bindings))


def mutated_network(rng: random.Random, cfg: GenConfig = GenConfig()) -> Optional[Network]:
    """A projected network with one thread replaced by a fresh random one."""
    net = projected_network(rng, cfg)
    if net is None:
        return None
    locs = net.locations
    victim = rng.choice(locs)
    others = [q for q in locs if q != victim]
    bindings = tuple((p, random_thread(rng, p, others, cfg) if p == victim else t)
                     for p, t in net.bindings)
    return number_origins(Network(bindings))


def hub_network(rng: random.Random, cfg: GenConfig = GenConfig()) -> Network:
    """A recursive receiver shared by several clients, optionally forwarding to a waiting location.

    Contention for the hub is where the fairness assumptions differ.
    """
    n_clients = rng.randint(1, max(1, cfg.max_locations - 2))
    clients = [f"p{i + 1}" for i in range(n_clients)]
    waiter = f"p{n_clients + 1}" if rng.random() < 0.5 else None
    bindings = []
    hub_branches = []
    for c in clients:
        labels = rng.sample(cfg.labels, rng.randint(1, len(cfg.labels)))
        mode = rng.choice(["loop", "once", "choose"])
        if mode == "loop":
            thread = Rec("Y", IChoice(tuple(Send("p0", lab, Var("Y")) for lab in labels)))
        elif mode == "once":
            thread = IChoice(tuple(Send("p0", lab, End()) for lab in labels))
        else:
            stop = rng.choice(cfg.labels)
            thread = Rec("Y", IChoice((Send("p0", labels[0], Var("Y")),)
                                      + ((Send("p0", stop, End()),) if stop != labels[0] else ())))
            labels = sorted(set(labels[:1]) | {stop})
        bindings.append((c, thread))
        for lab in labels:
            r = rng.random()
            if waiter and r < 0.3:
                cont = IChoice((Send(waiter, "c", Var("X") if rng.random() < 0.5 else End()),))
            elif r < 0.8:
                cont = Var("X")
            else:
                cont = End()
            hub_branches.append(Recv(c, lab, cont))
    bindings.insert(0, ("p0", Rec("X", EChoice(tuple(hub_branches)))))
    if waiter:
        bindings.append((waiter, Rec("Z", EChoice((Recv("p0", "c", Var("Z")),)))
                         if rng.random() < 0.5 else EChoice((Recv("p0", "c", End()),))))
    return number_origins(Network(tuple(bindings)))


def _stacked_binder(t) -> bool:
    """A binder directly on a variable or binder, which the surface syntax rejects."""
    if isinstance(t, Rec) and isinstance(t.body, (Rec, Var)):
        return True
    return any(_stacked_binder(c) for c in children(t))


def _has_merge(t) -> bool:
    if isinstance(t, Merge):
        return True
    return any(_has_merge(c) for c in children(t))


def sample_networks(seed: int, count: int, cfg: GenConfig = GenConfig()) -> list[Network]:
    """``count`` networks with at least one transition and at most ``cfg.max_states`` states.

    The families rotate: random threads, projections of random global types,
    projections with one thread replaced, and hub networks.
    """
    rng = random.Random(seed)
    out: list[Network] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 200 * count:
            raise RuntimeError("generator could not produce enough small networks")
        make = (random_network, projected_network, mutated_network, hub_network)[len(out) % 4]
        net = make(rng, cfg)
        if net is None:
            continue
        try:
            lts = build_lts(net, "default", cap=cfg.max_states + 1)
        except StateCapExceeded:
            continue
        if lts.edges and len(lts.states) <= cfg.max_states:
            out.append(net)
    return out


def within_oracle_bounds(lts: Lts, prefix_bound: int = 8, cycle_bound: int = 12) -> bool:
    """Every state lies within ``prefix_bound`` steps, and every strongly connected part of each
    per-location candidate graph is covered by a closed walk of at most ``cycle_bound`` steps.

    On such systems the bounded lasso search is not cut short by its bounds.
    """
    depth = {lts.initial: 0}
    frontier = [lts.initial]
    while frontier:
        nxt = []
        for s in frontier:
            for e in lts.successors(s):
                if e.dst not in depth:
                    depth[e.dst] = depth[s] + 1
                    nxt.append(e.dst)
        frontier = nxt
    if max(depth.values()) > prefix_bound:
        return False
    for avoid in [None, *lts.locations]:
        nodes, edges = _candidate_graph(lts, avoid)
        for S, T in _sccs(nodes, edges):
            if len(lasso_of(lts, RecurringSet(S, T)).cycle) > cycle_bound:
                return False
    return True
