"""Fairness-aware lock-freedom checking and global type synthesis for located networks."""
from .fairness import (ALL_FAIRNESS, Fairness, LassoOracle, Verdict, check_liveness, check_terminates,
                       classify, deadlock_free, find_violating_recurring_set, oracle_enumerate_lassos,
                       padovani_lockfree, race_free, syntactic_race_free)
from .semantics import Lts, NetState, build_lts, enabled_transitions, initial_state
from .synthesis import synthesize
from .syntax import (Network, ParseError, parse_document, parse_global_type, parse_network,
                     parse_thread, pretty_print)
from .types import guardedly_well_typed, judge, project, session_fidelity_check, typecheck, well_typed

__all__ = [
    "ALL_FAIRNESS", "Fairness", "LassoOracle", "Lts", "NetState", "Network", "ParseError", "Verdict",
    "build_lts", "check_liveness", "check_terminates", "classify", "deadlock_free", "enabled_transitions",
    "find_violating_recurring_set", "guardedly_well_typed", "initial_state", "judge",
    "oracle_enumerate_lassos", "padovani_lockfree", "parse_document", "parse_global_type",
    "parse_network", "parse_thread", "pretty_print", "project", "race_free", "session_fidelity_check",
    "synthesize", "syntactic_race_free", "typecheck", "well_typed",
]
