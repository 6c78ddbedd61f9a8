import itertools
import random

import pytest
from hypothesis import strategies as st

from gqu.relation import Relation, Universe


# ---- set-based oracles, deliberately independent of the bitset code


def pairs_of(r):
    return set(r.pairs)


def compose_sets(r, s):
    return {(x, z) for (x, y) in r for (y2, z) in s if y == y2}


def all_subsets(n):
    return [frozenset(c) for k in range(n + 1) for c in itertools.combinations(range(n), k)]


def induced_opens_sets(n, base):
    """Sets G such that every x in G has some element image inside G."""
    out = set()
    for g in all_subsets(n):
        if all(any({y for (a, y) in e if a == x} <= g for e in base) for x in g):
            out.add(g)
    return out


def union_closed_families(n):
    """Brute force over every family of subsets: union-closed ones containing the empty set."""
    subsets = [s for s in all_subsets(n) if s]
    out = []
    for k in range(len(subsets) + 1):
        for fam in itertools.combinations(subsets, k):
            f = set(fam) | {frozenset()}
            if all(a | b in f for a in f for b in f):
                out.append(frozenset(f))
    return out


def window_terms(s, count):
    return [s[i] for i in range(count)]


# ---- hypothesis strategies


@st.composite
def relations(draw, n=None, max_n=5):
    if n is None:
        n = draw(st.integers(1, max_n))
    mask = draw(st.integers(0, (1 << (n * n)) - 1))
    return Relation(Universe(n), mask)


@st.composite
def relation_triples(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    return tuple(draw(relations(n=n)) for _ in range(3))


@pytest.fixture
def rng():
    return random.Random(12345)


# ---- acceptance summary lines, printed at the end of the run

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
