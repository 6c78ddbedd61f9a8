import pytest
from hypothesis import given, settings, strategies as st

from gqu.errors import PointOutOfRange, UniverseMismatch
from gqu.relation import (MapPair, PointSet, Relation, Universe, compose, diagonal, full_relation,
                          image, pullback)

from conftest import compose_sets, pairs_of, relation_triples, relations


def rel(n, pairs):
    return Relation.of(Universe(n), pairs)


class TestDiagonal:
    def test_size_one(self):
        assert pairs_of(diagonal(Universe(1))) == {(0, 0)}

    def test_size_two(self):
        assert pairs_of(diagonal(Universe(2))) == {(0, 0), (1, 1)}

    def test_size_three_is_reflexive(self):
        d = diagonal(Universe(3))
        assert len(d) == 3 and all(x == y for x, y in d)


class TestCompose:
    def test_diagonal_on_the_left(self):
        r = rel(3, [(0, 1), (2, 2), (1, 0)])
        assert compose(diagonal(Universe(3)), r) == r

    def test_transitive_relation_squares_to_itself(self):
        r = rel(2, [(0, 0), (0, 1), (1, 1)])
        assert pairs_of(compose(r, r)) == {(0, 0), (0, 1), (1, 1)}

    def test_swap_squares_to_diagonal(self):
        r = rel(2, [(0, 1), (1, 0)])
        assert pairs_of(compose(r, r)) == {(0, 0), (1, 1)}

    def test_convention_is_left_then_right(self):
        r = rel(3, [(0, 1)])
        s = rel(3, [(1, 2)])
        assert pairs_of(compose(r, s)) == {(0, 2)}
        assert pairs_of(compose(s, r)) == set()

    def test_universe_mismatch(self):
        with pytest.raises(UniverseMismatch):
            compose(rel(2, []), rel(3, []))

    @given(relations(), relations())
    def test_matches_set_oracle(self, r, s):
        if r.universe != s.universe:
            return
        assert pairs_of(compose(r, s)) == compose_sets(pairs_of(r), pairs_of(s))

    @settings(max_examples=200)
    @given(relation_triples())
    def test_associative(self, triple):
        r, s, t = triple
        assert compose(compose(r, s), t) == compose(r, compose(s, t))

    @given(relations())
    def test_diagonal_is_two_sided_identity(self, r):
        d = diagonal(r.universe)
        assert compose(d, r) == r == compose(r, d)

    @given(relation_triples())
    def test_monotone_in_the_left_argument(self, triple):
        r, s, extra = triple
        bigger = r | extra
        assert compose(r, s) <= compose(bigger, s)


class TestImage:
    def test_diagonal(self):
        u = Universe(4)
        assert all(image(diagonal(u), x).members == (x,) for x in u.points())

    def test_read_off(self):
        assert image(rel(2, [(0, 0), (1, 0), (1, 1)]), 1).members == (0, 1)

    def test_full_relation(self):
        u = Universe(3)
        assert image(full_relation(u), 2) == PointSet.full(u)

    def test_out_of_range(self):
        with pytest.raises(PointOutOfRange):
            image(diagonal(Universe(2)), 2)


class TestPullback:
    def test_identity(self):
        r = rel(3, [(0, 2), (1, 1)])
        assert pullback(MapPair.identity(r.universe), r) == r

    def test_constant_map_pulls_diagonal_back_to_everything(self):
        dom, cod = Universe(3), Universe(2)
        f = MapPair.constant(dom, cod, 1)
        assert pullback(f, diagonal(cod)) == full_relation(dom)

    def test_swap(self):
        u = Universe(2)
        f = MapPair(u, u, (1, 0))
        r = rel(2, [(0, 0), (0, 1), (1, 1)])
        assert pairs_of(pullback(f, r)) == {(1, 1), (1, 0), (0, 0)}

    def test_mismatch(self):
        f = MapPair.identity(Universe(2))
        with pytest.raises(UniverseMismatch):
            pullback(f, rel(3, []))

    @given(st.data())
    def test_matches_definition_and_keeps_diagonal(self, data):
        n = data.draw(st.integers(1, 4))
        m = data.draw(st.integers(1, 4))
        values = tuple(data.draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n)))
        f = MapPair(Universe(n), Universe(m), values)
        r = data.draw(relations(n=m))
        extra = data.draw(relations(n=m))
        got = pairs_of(pullback(f, r))
        assert got == {(x, y) for x in range(n) for y in range(n) if (values[x], values[y]) in pairs_of(r)}
        assert got <= pairs_of(pullback(f, r | extra))
        rd = r | diagonal(r.universe)
        assert diagonal(f.domain) <= pullback(f, rd)


class TestValues:
    def test_point_set_algebra(self):
        u = Universe(4)
        a, b = PointSet.of(u, [0, 1]), PointSet.of(u, [1, 3])
        assert (a | b).members == (0, 1, 3)
        assert (a & b).members == (1,)
        assert (a - b).members == (0,)
        assert a.complement().members == (2, 3)
        assert 1 in a and 3 not in a and 7 not in a

    def test_labels_do_not_affect_identity(self):
        assert Universe(2, ("a", "b")) == Universe(2)
        assert Universe(2, ("a", "b")).label(1) == "b"

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            Universe(0)
        with pytest.raises(ValueError):
            Universe(2, ("a",))
        with pytest.raises(PointOutOfRange):
            PointSet.of(Universe(2), [2])
        with pytest.raises(PointOutOfRange):
            Relation(Universe(2), 1 << 4)

    def test_rows_round_trip(self):
        r = rel(3, [(0, 1), (2, 0), (2, 2)])
        assert Relation.from_rows(r.universe, r.rows()) == r
        assert r.row(2) == 0b101

    def test_map_composition(self):
        u = Universe(3)
        f = MapPair(u, u, (1, 2, 0))
        g = MapPair(u, u, (0, 0, 2))
        assert f.then(g).values == (0, 2, 0)
