"""One test per acceptance criterion; each records a PASS/FAIL line printed at the end of the run."""
import random
import re

from conftest import ACCEPTANCE
from justcheck.corpus import Expectation
from justcheck.fairness import (ALL_FAIRNESS, Fairness, LassoOracle, check_liveness, deadlock_free,
                                find_violating_recurring_set, lasso_of, padovani_lockfree, race_free,
                                satisfies_condition)
from justcheck.generate import GenConfig, sample_networks, within_oracle_bounds
from justcheck.semantics import build_lts
from justcheck.synthesis import synthesize
from justcheck.syntax import EChoice, Network, children, parse_document, pretty_print, unfold
from justcheck.types import judge, project, projection_guarded, session_fidelity_check, typecheck

F = Fairness.parse
LIVE_ALL = {f"L({f.name})": False for f in ALL_FAIRNESS}

# entry -> property -> expected verdict (default semantics unless the property says otherwise)
MATRIX = {
    "binaryext": {"DF": True, "L(ST)": True, "L(SC)": False, "RF": True, "WT": True, "GWT": False},
    "sc_j_early": {"T(SC)": True, "L(ST)": False},
    "p_jt": {"L(J)": True, "L(P)": False, "RF": True, "GWT": True},
    "livelock": {"DF": True, "L(ST)": False, "RF": True},
    "fu": {"L(ST)": True, "L(SC)": False},
    "sc_j_2": {"L(SC)": True, "L(J)": False, "GWT": True},
    "r_vs_l": {"DF": False, **{f"R({f.name})": True for f in ALL_FAIRNESS}},
    "reactive_early": {"RTS(WC)": True, "RTS(J)": False},
    "unsound": {"WT": True, "DF": True, **LIVE_ALL},
    "not_well_typed": {"L(SC)": True, "L(J)": False},
    "guarded_positive": {"GWT": True},
    "mini": {"GWT": True, "RF": False, "DF": False},
    "not_deadlock_free": {"GWT": True, "DF": False},
    "obs_guarded": {"RF": True},
    "syntax_rf": {"RF": True, "SRF": False, "GWT": True, "L(J)": True},
}

TRACES = {
    "not_deadlock_free": ["p-b->s", "s-c->r", "p-b->t", "t-e->r"],
    "obs_guarded": ["p-a->q", "r-b->q"],
}

SYNTHESIS = {
    "binaryext": "rec X . (buyer->seller:talk; X [+] buyer->seller:buy; rec Z . seller->shipper:order; end)",
    "sc_j_early": "rec X . buyer1->seller:order1; buyer2->seller:order2; deadlock",
    "p_jt": "rec X . buyer1->seller1:order; buyer2->seller2:order; X",
    "livelock": "rec X . buyer->seller:buy; X",
    "sc_j_2": "rec X . buyer1->seller:order1; buyer2->seller:order2; X",
    "r_vs_l": "deadlock",
    "reactive_early": "rec X . (buyer->seller1:nego; X [+] buyer->seller2:order; rec Z . buyer->seller1:done; end)",
}

# pairs of fairness notions whose violating recurring sets coincide, per location and overall
COLLAPSES = [("WC", "J"), ("SG", "SC"), ("SZ", "SI"), ("SWI", "SC"), ("WI", "J"), ("WT", "P"), ("WA", "JA")]
# F below G: every F-fair path is G-fair, so liveness under F implies liveness under G
ORDERINGS = [("P", g.name) for g in ALL_FAIRNESS] + [("J", "WC"), ("WT", "ST"), ("SC", "ST")]

ORACLE_FAIRNESS = [F(x) for x in ("P", "J", "WC", "SC", "ST", "WT", "SA", "WA")]
ORACLE_SAMPLE = 240
ORACLE_MINIMUM = 200


def record(n: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[n] = (ok, detail)
    assert ok, detail


def test_criterion_1_verdict_matrix(evaluators):
    wrong = []
    total = 0
    for name, row in MATRIX.items():
        for prop, expected in row.items():
            total += 1
            actual = evaluators[name].value(prop)
            if actual != expected:
                wrong.append(f"{name} {prop} expected={expected} actual={actual}")
    for name, trace in TRACES.items():
        total += 1
        if not evaluators[name].outcome(Expectation("TRACE", trace, "example", False)).ok:
            wrong.append(f"{name} deadlocking trace not reproduced")
    record(1, not wrong, f"{total - len(wrong)}/{total} verdicts match" + (": " + "; ".join(wrong) if wrong else ""))


def test_criterion_2_synthesis(corpus):
    wrong = []
    for name, expected in SYNTHESIS.items():
        actual = pretty_print(synthesize(corpus[name].network).type)
        if re.sub(r"\s", "", actual) != re.sub(r"\s", "", expected):
            wrong.append(f"{name}: {actual}")
    record(2, not wrong, f"{len(SYNTHESIS) - len(wrong)}/{len(SYNTHESIS)} outputs identical modulo whitespace"
           + (": " + "; ".join(wrong) if wrong else ""))


def _violates(lts, f, avoid):
    return find_violating_recurring_set(lts, F(f), avoid) is not None


def test_criterion_3_collapses_and_monotonicity(corpus, lts_of):
    wrong = []
    checks = 0
    for name in corpus:
        lts = lts_of(name)
        live = {f.name: check_liveness(lts, f).holds for f in ALL_FAIRNESS}
        checks += 1
        if padovani_lockfree(lts).holds != live["ST"]:
            wrong.append(f"{name}: LF vs L(ST)")
        if race_free(lts).holds:
            checks += 1
            if live["J"] != live["SC"]:
                wrong.append(f"{name}: race-free but L(J) != L(SC)")
        for a, b in COLLAPSES:
            for avoid in [None, *lts.locations]:
                checks += 1
                if _violates(lts, a, avoid) != _violates(lts, b, avoid):
                    wrong.append(f"{name}: {a} vs {b} avoiding {avoid}")
        for a, b in (("SA", "P"), ("SI", "ST")):
            checks += 1
            if live[a] != live[b]:
                wrong.append(f"{name}: L({a}) vs L({b})")
        for sem in ("default", "reactive"):
            s_lts = lts_of(name, sem)
            s_live = {f.name: check_liveness(s_lts, f).holds for f in ALL_FAIRNESS}
            for a, b in ORDERINGS:
                checks += 1
                if s_live[a] and not s_live[b]:
                    wrong.append(f"{name} ({sem}): {a} live but {b} not")
        checks += 1
        if live["ST"] and not deadlock_free(lts).holds:
            wrong.append(f"{name}: L(ST) without deadlock freedom")
    record(3, not wrong, f"{checks} checks on {len(corpus)} systems, {len(wrong)} mismatches"
           + (": " + "; ".join(wrong[:5]) if wrong else ""))


def test_criterion_4_round_trips(corpus, evaluators):
    wrong = []
    live_j = [n for n, ev in evaluators.items() if check_liveness(ev.lts("default"), F("J")).holds]
    for name in live_j:
        net = corpus[name].network
        result = synthesize(net)
        if result.deadlocked:
            wrong.append(f"{name}: synthesis deadlocked")
            continue
        if not all(projection_guarded(project(result.type, loc)) for loc in net.locations):
            wrong.append(f"{name}: unguarded projection")
        if not typecheck(net, result.type).guardedly_well_typed:
            wrong.append(f"{name}: not guardedly well-typed by the synthesized type")
    typed_rf = [n for n, ev in evaluators.items() if ev.value("GWT") and ev.value("RF")]
    for name in typed_rf:
        ev = evaluators[name]
        if not ev.value("L(J)"):
            wrong.append(f"{name}: GWT and RF but not L(J)")
        report = session_fidelity_check(ev.entry.network, ev.global_type())
        if not report.ok:
            wrong.append(f"{name}: session fidelity {report.failure}")
    record(4, not wrong, f"{len(live_j)} live-under-J systems, {len(typed_rf)} typed race-free systems"
           + (": " + "; ".join(wrong) if wrong else ""))


def _oracle_disagreements(lts, avoids) -> list[str]:
    out = []
    oracle = LassoOracle(lts, 8, 12)
    for f in ORACLE_FAIRNESS:
        for avoid in avoids:
            rs = find_violating_recurring_set(lts, f, avoid)
            found = oracle.find(f, avoid)
            if (rs is None) != (found is None):
                out.append(f"{f.name} avoiding {avoid}: engine={rs is not None} oracle={found is not None}")
            elif rs is not None:
                lasso = lasso_of(lts, rs)
                if not (satisfies_condition(lts, rs, f, avoid) and oracle.is_fair(lasso.prefix, lasso.cycle, f)):
                    out.append(f"{f.name} avoiding {avoid}: engine witness is not fair")
    return out


def test_criterion_5_oracle_equivalence(corpus):
    wrong = []
    for name, entry in corpus.items():
        for sem in ("default", "reactive"):
            lts = build_lts(entry.network, sem)
            wrong += [f"{name} ({sem}) {d}" for d in _oracle_disagreements(lts, lts.locations)]
    checked = 0
    violations = 0
    for i, net in enumerate(sample_networks(20240611, ORACLE_SAMPLE, GenConfig())):
        used = False
        for sem in ("default", "reactive"):
            lts = build_lts(net, sem)
            if not within_oracle_bounds(lts, 8, 12):
                continue
            used = True
            violations += find_violating_recurring_set(lts, F("J"), None) is not None
            wrong += [f"random #{i} ({sem}) {d}" for d in _oracle_disagreements(lts, [None, *lts.locations])]
        checked += used
    ok = not wrong and checked >= ORACLE_MINIMUM
    record(5, ok, f"corpus + {checked} random networks, {violations} with J-fair infinite paths, "
           f"{len(wrong)} disagreements" + (": " + "; ".join(wrong[:5]) if wrong else ""))


def _permute(net: Network, rng: random.Random) -> Network:
    bindings = list(net.bindings)
    rng.shuffle(bindings)
    return Network(tuple(bindings), net.name)


def test_criterion_6_structural(corpus):
    wrong = []
    rng = random.Random(7)
    for name, entry in corpus.items():
        doc = parse_document(entry.source)
        printed = [pretty_print(n) for n in doc.networks.values()]
        printed += [f"global {g} = {pretty_print(t)}" for g, t in doc.globals.items()]
        again = parse_document("\n".join(printed))
        if again.networks != doc.networks or again.globals != doc.globals:
            wrong.append(f"{name}: print/parse round-trip")
        net = entry.network
        for sem in ("default", "reactive"):
            a, b = build_lts(net, sem), build_lts(_permute(net, rng), sem)
            if a.states != b.states or [(e.src, e.dst, e.action) for e in a.edges] != \
                    [(e.src, e.dst, e.action) for e in b.edges]:
                wrong.append(f"{name} ({sem}): permutation changes the transition system")
        g = entry.global_type
        if g is not None:
            for loc in net.locations:
                try:
                    q = project(g, loc)
                except ValueError:
                    continue
                t = net.thread(loc)
                base = judge(t, q)
                if judge(unfold(t), q) != base or judge(t, unfold(q)) != base:
                    wrong.append(f"{name}@{loc}: judgement not stable under unfolding")
        for loc in net.locations:
            t = net.thread(loc)
            if _unary_inputs(t) and not judge(t, t):
                wrong.append(f"{name}@{loc}: identity judgement fails")
    record(6, not wrong, f"{len(corpus)} corpus files" + (": " + "; ".join(wrong) if wrong else ""))


def _unary_inputs(t) -> bool:
    if isinstance(t, EChoice) and len(t.branches) != 1:
        return False
    return all(_unary_inputs(c) for c in children(t))
