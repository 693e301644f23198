import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from justcheck.fairness import (ALL_FAIRNESS, Fairness, LassoOracle, RecurringSet, StuckState,
                                check_liveness, check_terminates, classify, deadlock_free,
                                find_violating_recurring_set, lasso_of, oracle_enumerate_lassos,
                                padovani_lockfree, race_free, race_states, requested_instructions,
                                satisfies_condition, syntactic_race_free)
from justcheck.generate import GenConfig, hub_network, within_oracle_bounds
from justcheck.semantics import build_lts, initial_state
from justcheck.syntax import parse_network

F = Fairness.parse


def test_fairness_names_and_parsing():
    assert [f.name for f in ALL_FAIRNESS] == ["P", "J", "SWI", "SC", "SG", "SI", "SZ", "SA", "ST",
                                             "WC", "WG", "WI", "WZ", "WA", "WT"]
    assert F("ja") == F("WA")
    assert F(" sc ") == Fairness("S", "C")
    for bad in ("SX", "Q", "JC", ""):
        with pytest.raises(ValueError):
            F(bad)


@pytest.mark.parametrize("name, fairness, holds", [
    ("binaryext", "ST", True), ("binaryext", "SC", False),
    ("sc_j_2", "SC", True), ("sc_j_2", "J", False), ("sc_j_2", "SWI", True),
    ("p_jt", "J", True), ("p_jt", "P", False), ("p_jt", "WC", True),
    ("fu", "ST", True), ("fu", "SC", False),
    ("livelock", "ST", False),
    ("not_well_typed", "SC", True), ("not_well_typed", "J", False),
])
def test_liveness_verdicts(lts_of, name, fairness, holds):
    assert check_liveness(lts_of(name), F(fairness)).holds is holds


def test_binaryext_instruction_fairness(lts_of):
    lts = lts_of("binaryext")
    assert check_liveness(lts, F("SI")).holds
    assert check_liveness(lts, F("SZ")).holds


def test_per_location_verdicts(lts_of):
    v = check_liveness(lts_of("binaryext"), F("SC"))
    assert v.per_location == {"buyer": True, "seller": True, "shipper": False}
    assert isinstance(v.witness, RecurringSet)


def test_stuck_location_is_a_liveness_failure(lts_of):
    v = check_liveness(lts_of("r_vs_l"), F("ST"))
    assert not v.holds and isinstance(v.witness, StuckState)
    assert all(check_liveness(lts_of("r_vs_l", "reactive"), f).holds for f in ALL_FAIRNESS)


def test_termination_versus_successful_termination(lts_of):
    lts = lts_of("sc_j_early")
    assert check_terminates(lts, F("SC")).holds
    assert not check_terminates(lts, F("SC"), successful=True).holds
    assert not check_terminates(lts, F("J")).holds
    assert not check_terminates(lts, F("WC")).holds
    assert check_terminates(lts_of("binaryext"), F("ST"), successful=True).holds
    assert not check_terminates(lts_of("binaryext"), F("SC"), successful=True).holds
    r = lts_of("reactive_early", "reactive")
    assert check_terminates(r, F("WC"), successful=True).holds
    assert not check_terminates(r, F("J"), successful=True).holds


def test_structural_checks(lts_of, corpus):
    assert deadlock_free(lts_of("binaryext")).holds
    assert not deadlock_free(lts_of("mini")).holds
    assert not race_free(lts_of("mini")).holds and race_states(lts_of("mini"))
    assert race_free(lts_of("p_jt")).holds
    assert not padovani_lockfree(lts_of("livelock")).holds
    assert padovani_lockfree(lts_of("binaryext")).holds
    assert not syntactic_race_free(corpus["syntax_rf"].network)
    assert syntactic_race_free(corpus["p_jt"].network)


def test_race_between_different_results_from_one_sender():
    n = parse_network("net n { loc p = q!a; end\n loc q = p?a; end + p?a; r!c; end\n loc r = q?c; end }")
    assert not race_free(build_lts(n)).holds


def test_requested_instructions_unfold_in_reactive_mode():
    s = initial_state(parse_network("net n { loc p = rec X . q!a; X\n loc q = rec Y . p?a; Y }"))
    assert requested_instructions(s, "default") == {"p:0", "q:0"}
    assert requested_instructions(s, "reactive") == {"p:1", "q:1"}


def test_engine_witnesses_satisfy_their_condition(corpus, lts_of):
    checked = 0
    for name in corpus:
        for sem in ("default", "reactive"):
            lts = lts_of(name, sem)
            oracle = LassoOracle(lts)
            for f in ALL_FAIRNESS:
                for loc in lts.locations:
                    rs = find_violating_recurring_set(lts, f, loc)
                    if rs is None:
                        continue
                    checked += 1
                    assert satisfies_condition(lts, rs, f, loc), (name, sem, f, loc)
                    lasso = lasso_of(lts, rs)
                    assert oracle.is_fair(lasso.prefix, lasso.cycle, f), (name, sem, f, loc)
                    assert all(loc not in lts.edges[i].comp for i in lasso.cycle)
    assert checked > 100


@pytest.mark.parametrize("name", ["binaryext", "sc_j_early", "livelock", "reactive_early", "unsound",
                                  "sc_j_2", "p_jt_audit"])
def test_engine_agrees_with_oracle_for_all_notions(lts_of, name):
    for sem in ("default", "reactive"):
        lts = lts_of(name, sem)
        oracle = LassoOracle(lts)
        for f in ALL_FAIRNESS:
            for loc in lts.locations:
                engine = find_violating_recurring_set(lts, f, loc) is not None
                assert engine == (oracle.find(f, loc) is not None), (name, sem, f, loc)


def test_oracle_lasso_is_genuine(lts_of):
    lts = lts_of("binaryext")
    lasso = oracle_enumerate_lassos(lts, F("SC"), "shipper")
    assert lasso is not None
    edges = [lts.edges[i] for i in lasso.prefix + lasso.cycle]
    assert edges[0].src == lts.initial
    assert all(a.dst == b.src for a, b in zip(edges, edges[1:]))
    assert lts.edges[lasso.cycle[-1]].dst == lts.edges[lasso.cycle[0]].src
    assert oracle_enumerate_lassos(lts, F("ST"), "shipper") is None


def test_classify_report(corpus):
    report = classify(corpus["sc_j_2"].network, ["SC", "J"], ["default", "reactive"])
    assert report.holds("L(SC)") and not report.holds("L(J)")
    assert set(report.verdicts) == {"DF", "RF", "SRF", "LF", "L(SC)", "L(J)", "R(SC)", "R(J)"}
    assert report.to_json()["name"] == "sc_j_2"


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_hub_networks_engine_matches_oracle(seed):
    n = hub_network(random.Random(seed), GenConfig())
    for sem in ("default", "reactive"):
        lts = build_lts(n, sem)
        if not within_oracle_bounds(lts):
            continue
        oracle = LassoOracle(lts)
        for f in ("P", "J", "SC", "ST", "WA"):
            for loc in lts.locations:
                engine = find_violating_recurring_set(lts, F(f), loc) is not None
                assert engine == (oracle.find(F(f), loc) is not None)
