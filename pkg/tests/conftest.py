import pytest

from justcheck.corpus import Evaluator, load_corpus
from justcheck.semantics import build_lts

# criterion number -> (passed, detail), filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def evaluators(corpus):
    return {name: Evaluator(e) for name, e in corpus.items()}


@pytest.fixture(scope="session")
def lts_of(corpus):
    cache = {}

    def get(name, semantics="default"):
        key = (name, semantics)
        if key not in cache:
            cache[key] = build_lts(corpus[name].network, semantics)
        return cache[key]
    return get


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
