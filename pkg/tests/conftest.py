import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pastelab.corpus import generate_corpus  # noqa: E402

CORPUS_SEED = 20240611
CORPUS_SIZE = 220
CORPUS_MAX_FACES = 7

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def corpus():
    return [e.scheme for e in generate_corpus(CORPUS_SEED, CORPUS_SIZE, CORPUS_MAX_FACES)]


@pytest.fixture(scope="session")
def small_corpus(corpus):
    return [ps for ps in corpus if ps.num_faces <= 4]


@pytest.fixture
def record():
    """Append one acceptance-criterion result line to the terminal summary."""
    def _record(number, ok, detail):
        ACCEPTANCE_LINES.append((number, f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"))
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
