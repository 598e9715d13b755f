import itertools
import sys
import math

import pytest
from hypothesis import strategies as st

from credit_index.axioms import author_labels
from credit_index.model import CreditFunction, Dataset, PaperRecord

AUTHORS = author_labels(6)


@st.composite
def credit_functions(draw, min_authors=1, max_authors=6, max_value=1e4):
    n = draw(st.integers(min_authors, max_authors))
    authors = AUTHORS[:n]
    coalitions = [
        combo for size in range(1, n + 1) for combo in itertools.combinations(authors, size)
    ]
    support = draw(st.lists(st.sampled_from(coalitions), unique=True, max_size=12))
    values = draw(
        st.lists(
            st.floats(0, max_value, allow_nan=False, allow_infinity=False),
            min_size=len(support),
            max_size=len(support),
        )
    )
    return CreditFunction(authors, dict(zip(support, values)))


@st.composite
def bijections(draw, universe):
    authors = sorted(universe)
    return dict(zip(authors, draw(st.permutations(authors))))


@st.composite
def datasets(draw, max_authors=6, max_papers=15, worths=None):
    n = draw(st.integers(1, max_authors))
    authors = AUTHORS[:n]
    if worths is None:
        worths = st.floats(0, 1e4, allow_nan=False, allow_infinity=False)
    count = draw(st.integers(0, max_papers))
    papers = []
    for k in range(count):
        members = draw(st.lists(st.sampled_from(authors), min_size=1, max_size=n, unique=True))
        papers.append(PaperRecord(f"p{k}", members, draw(worths)))
    return Dataset(papers)


# Worths on a 1/8 grid below 2**20: every partial sum is exact in binary floating point.
dyadic_worths = st.integers(0, 2**23).map(lambda k: k / 8)


def rel_close(a, b, rel=1e-9):
    return math.isclose(a, b, rel_tol=rel, abs_tol=1e-12)


def dense_e_index(c):
    """Definition-level oracle: enumerate every subset of the universe containing i."""
    authors = c.authors
    scores = {}
    for i in authors:
        total = 0.0
        for size in range(1, len(authors) + 1):
            for S in itertools.combinations(authors, size):
                if i in S:
                    total += c(S) / len(S)
        scores[i] = total
    return scores


def brute_h_index(worths):
    worths = list(worths)
    return max(x for x in range(len(worths) + 1) if sum(w >= x for w in worths) >= x)


@pytest.fixture
def intro_dataset():
    from credit_index.demo import solo_vs_joint_dataset

    return solo_vs_joint_dataset()


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.RESULTS:
        terminalreporter.write_line(line)
