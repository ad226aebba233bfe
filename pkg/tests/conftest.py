import time

import pytest

from blocklab.constructors import named
from blocklab.corpus import DEFAULT_CORPUS
from blocklab.harness import analyze

ACCEPTANCE_LINES: dict[int, str] = {}


def record_acceptance(n: int, ok: bool, note: str = ""):
    ACCEPTANCE_LINES[n] = f"ACCEPTANCE {n:2d}: {'PASS' if ok else 'FAIL'}  {note}"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])


_ANALYSES: dict = {}


def get_analysis(name: str, p: int, seed: int = 0):
    key = (name, p, seed)
    if key not in _ANALYSES:
        _ANALYSES[key] = analyze(named(name), p, seed)
    return _ANALYSES[key]


@pytest.fixture(scope="session")
def corpus_run():
    """Fresh analyses of every default-corpus (G, p); returns (analyses, wall seconds)."""
    t = time.perf_counter()
    out = {}
    for e in DEFAULT_CORPUS:
        G = e.build()
        for p in e.resolved_primes(G):
            an = analyze(G, p, 0)
            _ANALYSES.setdefault((e.source, p, 0), an)
            out[(e.source, p)] = an
    return out, time.perf_counter() - t


@pytest.fixture
def analysis():
    return get_analysis
