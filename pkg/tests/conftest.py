import pytest

from spined.corpus import builtin_corpus
from spined.search import search_transversals

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def corpus():
    return builtin_corpus()


@pytest.fixture(scope="session")
def corpus_transversals(corpus):
    """(entry, found) for every transversal found by search, plus designated ones."""
    from spined.search import Found
    from spined.transversal import analyze_transversal

    out = []
    for entry in corpus:
        found = search_transversals(entry.semigroup)
        subsets = {f.subset for f in found}
        if entry.transversal is not None and entry.transversal not in subsets:
            found.append(Found(entry.transversal, analyze_transversal(entry.semigroup, entry.transversal)))
        out += [(entry, f) for f in found]
    return out


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
