import random

import pytest
from hypothesis import given, settings, strategies as st

from gqu.errors import PointOutOfRange
from gqu.gentop import limit_and_cluster_points_ep
from gqu.quniform import classify_ep_sequence, induced_supratopology
from gqu.census import CensusConfig, enumerate_bases
from gqu.relation import Universe
from gqu.seqlab import (EPSeq, all_ep_sequences, ep_normalize, ep_term, ep_values,
                        random_ep_sequence)


@st.composite
def ep_sequences(draw, max_n=4, max_len=5):
    n = draw(st.integers(1, max_n))
    pre = draw(st.lists(st.integers(0, n - 1), max_size=max_len))
    cyc = draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=max_len))
    return EPSeq(Universe(n), tuple(pre), tuple(cyc))


class TestTerm:
    def test_constant(self):
        assert ep_term(EPSeq(Universe(8), (), (7,)), 100) == 7

    def test_preamble(self):
        assert ep_term(EPSeq(Universe(3), (0,), (1, 2)), 0) == 0

    def test_cycle_offset(self):
        assert ep_term(EPSeq(Universe(3), (0,), (1, 2)), 4) == 2

    def test_negative_index(self):
        with pytest.raises(IndexError):
            ep_term(EPSeq(Universe(2), (), (1,)), -1)

    def test_bad_points(self):
        with pytest.raises(PointOutOfRange):
            EPSeq(Universe(2), (), (2,))
        with pytest.raises(ValueError):
            EPSeq(Universe(2), (0,), ())


class TestNormalize:
    def test_repeated_cycle(self):
        assert ep_normalize(EPSeq(Universe(2), (), (1, 1))).cycle == (1,)

    def test_absorbs_preamble_with_aligned_rotation(self):
        got = ep_normalize(EPSeq(Universe(3), (2,), (1, 2)))
        assert (got.preamble, got.cycle) == ((), (2, 1))

    def test_tail_absorption(self):
        got = ep_normalize(EPSeq(Universe(2), (0, 1), (1,)))
        assert (got.preamble, got.cycle) == ((0,), (1,))

    @settings(max_examples=1000)
    @given(ep_sequences())
    def test_preserves_terms_and_is_idempotent(self, s):
        t = ep_normalize(s)
        window = 2 * (len(s.preamble) + len(s.cycle))
        assert [s[i] for i in range(window + 1)] == [t[i] for i in range(window + 1)]
        assert ep_normalize(t) == t
        assert len(t.cycle) <= len(s.cycle) and len(t.preamble) <= len(s.preamble)

    def test_equal_functions_have_equal_normal_forms(self):
        u = Universe(2)
        seqs = list(all_ep_sequences(u, 3, 3))
        by_terms = {}
        for s in seqs:
            key = tuple(s[i] for i in range(3 + 2 * 6))
            by_terms.setdefault(key, set()).add(ep_normalize(s))
        assert all(len(forms) == 1 for forms in by_terms.values())

    def test_invariance_of_derived_data(self):
        rng = random.Random(2)
        for n in (2, 3):
            u = Universe(n)
            bases = list(enumerate_bases(CensusConfig(n=n, mode="exhaustive" if n == 2 else "bounded")))
            for _ in range(300):
                b = rng.choice(bases)
                s = random_ep_sequence(u, rng, 4, 4)
                t = ep_normalize(s)
                mu = induced_supratopology(b)
                assert classify_ep_sequence(b, s) == classify_ep_sequence(b, t)
                assert limit_and_cluster_points_ep(mu, s) == limit_and_cluster_points_ep(mu, t)


class TestValues:
    def test_constant(self):
        pre, cyc = ep_values(EPSeq(Universe(4), (), (3,)))
        assert pre.members == () and cyc.members == (3,)

    def test_disjoint(self):
        pre, cyc = ep_values(EPSeq(Universe(3), (0, 1), (2,)))
        assert pre.members == (0, 1) and cyc.members == (2,)

    def test_overlap(self):
        pre, cyc = ep_values(EPSeq(Universe(2), (0,), (0, 1)))
        assert pre.members == (0,) and cyc.members == (0, 1)


def test_enumeration_counts():
    u = Universe(2)
    # sum over preamble lengths 0..2 of 2^p, times sum over cycle lengths 1..3 of 2^c
    assert len(list(all_ep_sequences(u, 2, 3))) == (1 + 2 + 4) * (2 + 4 + 8)


def test_serialization():
    s = EPSeq(Universe(3), (2,), (0, 1))
    assert s.to_dict() == {"preamble": [2], "cycle": [0, 1]}
