import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from justcheck.generate import GenConfig, random_thread
from justcheck.semantics import Comm
from justcheck.syntax import (EChoice, IChoice, Rec, Recv, Send, children, is_closed, parse_global_type, parse_projection,
                              parse_thread, pretty_print, unfold)
from justcheck.types import (DeadlockInType, gtype_step, judge, participants, project, projection_guarded,
                             session_fidelity_check, solve_judgement, typecheck)


def test_projection_of_binaryext(corpus):
    g = corpus["binaryext"].global_type
    assert pretty_print(project(g, "shipper")) == "rec X . (X (&) seller?order; end)"
    assert pretty_print(project(g, "buyer")) == "rec X . (seller!talk; X (+) seller!buy; end)"
    assert pretty_print(project(g, "seller")) == "rec X . (buyer?talk; X (&) buyer?buy; shipper!order; end)"
    assert participants(g) == {"buyer", "seller", "shipper"}


def test_projection_guardedness(corpus):
    g = corpus["binaryext"].global_type
    assert not projection_guarded(project(g, "shipper"))
    assert projection_guarded(project(g, "seller"))
    assert projection_guarded(parse_projection("rec X . q?a; X"))
    assert not projection_guarded(parse_projection("rec X . (X (&) q?a; X)"))


def test_binder_dropped_only_when_closed(corpus):
    g = corpus["obs_guarded"].global_type
    strict = project(g, "p", require_closed=True)
    loose = project(g, "p", require_closed=False)
    assert strict != loose
    assert not typecheck(corpus["obs_guarded"].network, g).well_typed
    assert typecheck(corpus["obs_guarded"].network, g, require_closed=False).well_typed


def test_deadlock_cannot_be_projected():
    with pytest.raises(DeadlockInType):
        project(parse_global_type("p->q:a; deadlock"), "p")


@pytest.mark.parametrize("name, wt, gwt", [
    ("binaryext", True, False),
    ("guarded_positive", True, True),
    ("mini", True, True),
    ("not_deadlock_free", True, True),
    ("obs_fidelity", True, True),
    ("p_jt", True, True),
    ("reactive", True, True),
    ("sc_j_2", True, True),
    ("reactive_early", True, False),
    ("unsound", True, False),
])
def test_typing_verdicts(corpus, name, wt, gwt):
    report = typecheck(corpus[name].network, corpus[name].global_type)
    assert (report.well_typed, report.guardedly_well_typed) == (wt, gwt)


def test_unguarded_location_is_named(corpus):
    report = typecheck(corpus["binaryext"].network, corpus["binaryext"].global_type)
    assert report.unguarded == ["shipper"]


def test_judgement_rules():
    assert judge(parse_thread("p?a; end + p?b; end"), parse_projection("p?a; end"))
    assert not judge(parse_thread("p?a; end"), parse_projection("p?b; end"))
    assert judge(parse_thread("q!a; end"), parse_projection("q!a; end (+) q!b; end"))
    assert not judge(parse_thread("q!a; end (+) q!c; end"), parse_projection("q!a; end (+) q!b; end"))
    assert judge(parse_thread("seller?order; end"), parse_projection("rec X . (X (&) seller?order; end)"))
    assert judge(parse_thread("rec X . q!a; X"), parse_projection("q!a; rec Y . q!a; Y"))


def test_judgement_proof_tree():
    j = solve_judgement(parse_thread("rec X . q!a; X"), parse_projection("rec Y . q!a; Y"))
    assert j.holds
    proof = j.proof()
    assert proof["rule"] == "rec-left"

    def has_backref(node):
        return "backref" in node or any(has_backref(p) for p in node.get("premises", []))
    assert has_backref(proof)


def test_global_type_steps(corpus):
    g = corpus["obs_fidelity"].global_type
    narrowed = gtype_step(g, Comm("p", "a", "q"))
    assert narrowed
    assert gtype_step(g, Comm("p", "a", "q"), narrowing=False) == []
    g2 = parse_global_type("rec X . (p->q:a; X [+] p->q:b; end)")
    assert [pretty_print(x) for x in gtype_step(g2, Comm("p", "b", "q"))] == ["end"]
    assert gtype_step(g2, Comm("q", "b", "p")) == []


@pytest.mark.parametrize("name", ["guarded_positive", "jt_j", "obs_fidelity", "p_jt", "p_jt_audit", "reactive"])
def test_session_fidelity(evaluators, name):
    ev = evaluators[name]
    report = session_fidelity_check(ev.entry.network, ev.global_type())
    assert report.ok and report.states_covered == report.states_total


def test_session_fidelity_fails_for_untyped_start(corpus):
    report = session_fidelity_check(corpus["binaryext"].network, corpus["binaryext"].global_type)
    assert not report.ok and report.failure


def _unary_inputs(t) -> bool:
    if isinstance(t, EChoice) and len(t.branches) != 1:
        return False
    return all(_unary_inputs(c) for c in children(t))


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_identity_judgement_on_unary_input_threads(seed):
    rng = random.Random(seed)
    t = random_thread(rng, "p", ["q", "r"], GenConfig(max_depth=4))
    if not _unary_inputs(t):
        t = _make_unary(t)
    assert is_closed(t)
    assert judge(t, t)


def _make_unary(t):
    match t:
        case EChoice(bs):
            b = bs[0]
            return EChoice((Recv(b.source, b.label, _make_unary(b.cont)),))
        case IChoice(bs):
            return IChoice(tuple(Send(b.target, b.label, _make_unary(b.cont)) for b in bs))
        case Rec(n, body, o):
            return Rec(n, _make_unary(body), o)
    return t


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1), st.integers(min_value=0, max_value=2**32 - 1))
def test_judgement_stable_under_unfolding(seed_t, seed_q):
    t = random_thread(random.Random(seed_t), "p", ["q"], GenConfig(max_depth=3, max_branches=2))
    q = _make_unary(random_thread(random.Random(seed_q), "p", ["q"], GenConfig(max_depth=3, max_branches=2)))
    base = judge(t, q)
    assert judge(unfold(t), q) == base
    assert judge(t, unfold(q)) == base
