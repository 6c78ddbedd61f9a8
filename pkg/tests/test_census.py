import itertools
import json

import pytest

from gqu import census
from gqu.census import (CensusConfig, VerificationReport, enumerate_bases, enumerate_gentopologies,
                        replay_failure, verify_continuity_lift, verify_finite_collapse,
                        verify_pervin_roundtrip, verify_product_lemmas)
from gqu.errors import CeilingExceeded
from gqu.quniform import validate_base
from gqu.relation import Relation, Universe, diagonal, full_relation

from conftest import compose_sets


def brute_normalized_bases(n):
    """Every antichain of reflexive relations that satisfies the base axioms, via plain sets."""
    pts = range(n)
    off = [(x, y) for x in pts for y in pts if x != y]
    diag = {(x, x) for x in pts}
    rels = [frozenset(diag | set(c)) for k in range(len(off) + 1) for c in itertools.combinations(off, k)]
    out = set()
    for k in range(1, len(rels) + 1):
        for combo in itertools.combinations(rels, k):
            if any(a < b for a in combo for b in combo):
                continue
            if all(any(compose_sets(v, v) <= b for v in combo) for b in combo):
                out.add(frozenset(combo))
    return out


class TestEnumeration:
    def test_topologies_deterministic_and_distinct(self):
        a = [mu.masks for mu in enumerate_gentopologies(3)]
        b = [mu.masks for mu in enumerate_gentopologies(3)]
        assert a == b and len(set(a)) == len(a)

    def test_topology_ceiling(self):
        with pytest.raises(CeilingExceeded):
            list(enumerate_gentopologies(5))

    def test_exhaustive_bases_n2(self):
        got = {frozenset(frozenset(e.pairs) for e in b.elements) for b in enumerate_bases(CensusConfig(n=2))}
        assert got == brute_normalized_bases(2)

    def test_singleton_bases_are_transitive_reflexive_relations(self):
        u = Universe(2)
        singles = {b.elements[0].mask for b in enumerate_bases(CensusConfig(n=2)) if len(b) == 1}
        want = set()
        for mask in range(16):
            r = Relation(u, mask)
            if diagonal(u) <= r and compose_sets(set(r.pairs), set(r.pairs)) <= set(r.pairs):
                want.add(mask)
        assert singles == want

    @pytest.mark.parametrize("mode", ["exhaustive", "bounded", "random"])
    def test_extremes_present(self, mode):
        n = 2
        u = Universe(n)
        masks = {tuple(e.mask for e in b.elements) for b in enumerate_bases(CensusConfig(n=n, mode=mode, samples=500))}
        assert (diagonal(u).mask,) in masks
        assert (full_relation(u).mask,) in masks

    def test_bounded_n3_count_and_validity(self):
        bases = list(enumerate_bases(CensusConfig(n=3, mode="bounded")))
        assert len(bases) == 272
        keys = [tuple(e.mask for e in b.elements) for b in bases]
        assert len(set(keys)) == len(keys)
        for b in bases:
            validate_base(b.universe, list(b.elements))
            assert not any(a.mask != c.mask and a <= c for a in b.elements for c in b.elements)

    def test_random_mode_is_seeded(self):
        cfg = CensusConfig(n=3, mode="random", samples=300, seed=9)
        a = [tuple(e.mask for e in b.elements) for b in enumerate_bases(cfg)]
        b = [tuple(e.mask for e in b.elements) for b in enumerate_bases(cfg)]
        other = [tuple(e.mask for e in b.elements) for b in enumerate_bases(CensusConfig(n=3, mode="random", samples=300, seed=10))]
        assert a == b and a != other

    def test_config_validation(self):
        with pytest.raises(ValueError):
            CensusConfig(n=0)
        with pytest.raises(ValueError):
            CensusConfig(mode="sideways")

    def test_config_json_round_trip(self):
        cfg = CensusConfig(n=3, mode="random", seed=4)
        assert CensusConfig(**json.loads(json.dumps(cfg.to_dict()))) == cfg


class TestVerifications:
    def test_pervin_small(self):
        rep = verify_pervin_roundtrip(1)
        assert rep.ok and rep.counts["roundtrip"]["checked"] == 1
        rep = verify_pervin_roundtrip(2)
        assert rep.ok and rep.counts["roundtrip"] == {"checked": 4, "failed": 0}

    def test_pervin_three(self):
        rep = verify_pervin_roundtrip(3)
        assert rep.ok and rep.counts["roundtrip"]["checked"] == 45

    def test_lift_n2(self):
        rep = verify_continuity_lift(2, trials=200)
        assert rep.ok
        assert rep.counts["a_topological_to_uniform"]["checked"] == 4 * 4 * 4
        assert rep.counts["b_uniform_to_topological"]["checked"] == 5 * 5 * 4

    def test_product_lemmas_single_factor(self):
        rep = verify_product_lemmas(CensusConfig(factors=1, factor_size=3, trials=50))
        assert rep.ok

    def test_collapse_n2(self):
        rep = verify_finite_collapse(CensusConfig(n=2, max_preamble=3, max_cycle=3))
        assert rep.ok and rep.info["bases"] == 5

    def test_collapse_diagonal_and_full(self):
        u = Universe(2)
        for b in (validate_base(u, [diagonal(u)]), validate_base(u, [full_relation(u)])):
            rep = verify_finite_collapse(CensusConfig(n=2, max_preamble=2, max_cycle=3), bases=[b])
            assert rep.ok

    def test_report_json_is_deterministic(self):
        a = json.dumps(verify_continuity_lift(2, trials=20, seed=3).to_dict(), sort_keys=True)
        b = json.dumps(verify_continuity_lift(2, trials=20, seed=3).to_dict(), sort_keys=True)
        assert a == b

    def test_census_summary(self):
        out = census.run_census(CensusConfig(n=2))
        assert out["generalized_topologies"] == 7 and out["strong_topologies"] == 4
        assert out["bases"] == 5


class TestReplay:
    def test_crafted_invalid_base_replays(self):
        assert replay_failure({"kind": "base_axioms", "n": 2, "base": [[[0, 0]]]})
        assert not replay_failure({"kind": "base_axioms", "n": 2, "base": [[[0, 0], [1, 1]]]})

    def test_crafted_non_strong_pervin_replays(self):
        assert replay_failure({"kind": "pervin_roundtrip", "n": 2, "topology": [[], [0]]})

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            replay_failure({"kind": "mystery"})

    def test_injected_fault_is_recorded_and_replayable(self, monkeypatch):
        real = census.induced_supratopology

        def broken(b):
            mu = real(b)
            return type(mu)(mu.universe, frozenset(m for m in mu.masks if m != 1))

        monkeypatch.setattr(census, "induced_supratopology", broken)
        rep = verify_pervin_roundtrip(2)
        assert not rep.ok and rep.failures
        for payload in rep.failures:
            assert payload["kind"] in ("pervin_roundtrip", "pervin_base_axioms")
            assert replay_failure(payload)
        monkeypatch.undo()
        assert not any(replay_failure(p) for p in rep.failures if p["kind"] == "pervin_roundtrip")

    def test_injected_collapse_fault(self, monkeypatch):
        def wrong(mu, s):
            from gqu.relation import PointSet
            return PointSet(mu.universe, 0), PointSet(mu.universe, 0)

        monkeypatch.setattr(census, "limit_and_cluster_points_ep", wrong)
        rep = verify_finite_collapse(CensusConfig(n=2, max_preamble=1, max_cycle=2))
        assert not rep.ok
        assert all(replay_failure(p) for p in rep.failures)

    def test_report_bookkeeping(self):
        rep = VerificationReport("x")
        rep.record("c", True)
        rep.record("c", False, lambda: {"kind": "base_axioms"})
        rep.tally("c", 3)
        assert rep.counts["c"] == {"checked": 5, "failed": 1}
        assert rep.failed == 1 and not rep.ok
        assert "elapsed_seconds" not in rep.to_dict() and "elapsed_seconds" in rep.to_dict(timing=True)
