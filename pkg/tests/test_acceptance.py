"""One test per acceptance criterion.  Each prints a single PASS/FAIL line,
and the lines are repeated in the terminal summary."""
import json
import os
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import pytest

from gqu import streamlab as sl
from gqu.census import (CensusConfig, verify_continuity_lift, verify_finite_collapse,
                        verify_pervin_roundtrip, verify_product_lemmas, verify_random_product_bases)
from gqu.cli import example_candidates

from conftest import ACCEPTANCE_LINES

# pinned limits
PERVIN_SECONDS = 60.0
NOTE_SECONDS = 10.0
EXAMPLE_SECONDS = 30.0
EXTRACT_SECONDS = 30.0

EXAMPLE_TERMS = [
    ["0", "0", "0", "0"],
    ["1", "0", "0", "0"],
    ["2", "0", "0", "0"],
    ["2", "1/2", "0", "0"],
    ["3", "0", "0", "0"],
    ["3", "0", "1/3", "0"],
    ["4", "0", "0", "0"],
    ["4", "0", "0", "1/4"],
]


@contextmanager
def criterion(number, title):
    detail = {}
    t0 = time.perf_counter()
    passed = False
    try:
        yield detail
        passed = True
    finally:
        elapsed = time.perf_counter() - t0
        extra = ", ".join(f"{k}={v}" for k, v in detail.items())
        line = f"criterion {number} {'PASS' if passed else 'FAIL'}: {title} ({elapsed:.1f} s{', ' + extra if extra else ''})"
        ACCEPTANCE_LINES.append(line)
        print(line)


def _zero_failures(rep):
    assert rep.ok, rep.failures[:3]
    assert all(c["checked"] > 0 for c in rep.counts.values())


def test_criterion_1_pervin_round_trip():
    with criterion(1, "Pervin round trip, exhaustive n<=3 and 500 random n=4") as d:
        t0 = time.perf_counter()
        reps = [verify_pervin_roundtrip(n) for n in (1, 2, 3)]
        reps.append(verify_pervin_roundtrip(4, random_trials=500, seed=0, exhaustive=False))
        elapsed = time.perf_counter() - t0
        for rep in reps:
            _zero_failures(rep)
        counts = [rep.counts["roundtrip"]["checked"] for rep in reps]
        d["checked"] = counts
        assert counts == [1, 4, 45, 500]
        assert elapsed < PERVIN_SECONDS


def test_criterion_2_base_axioms():
    with criterion(2, "Pervin and product bases satisfy the base axioms") as d:
        reps = [verify_pervin_roundtrip(n) for n in (1, 2, 3)]
        reps.append(verify_pervin_roundtrip(4, random_trials=500, seed=0, exhaustive=False))
        pervin_checked = sum(rep.counts["base_axioms"]["checked"] for rep in reps)
        for rep in reps:
            assert rep.counts["base_axioms"]["failed"] == 0
        prod = verify_random_product_bases(500, seed=0)
        _zero_failures(prod)
        d["pervin_bases"] = pervin_checked
        d["product_bases"] = prod.counts["product_base_axioms"]["checked"]
        assert pervin_checked == 550 and d["product_bases"] == 500


def test_criterion_3_projection_lemmas():
    with criterion(3, "projection lemmas on products") as d:
        cfg = CensusConfig(factors=2, factor_size=2, max_preamble=3, max_cycle=3, trials=1000, seed=0)
        rep = verify_product_lemmas(cfg, random_factors=3)
        _zero_failures(rep)
        d["grid_instances"] = rep.info["grid_instances"]
        d["random_instances"] = rep.info["random_instances"]
        # 5 bases per factor, 25 pairs; sequences over 4 points with preamble <= 3, cycle <= 3
        seqs = (1 + 4 + 16 + 64) * (4 + 16 + 64)
        assert rep.info["grid_instances"] == 25 * seqs
        assert rep.info["random_instances"] == 1000


def test_criterion_4_continuity_lifting():
    with criterion(4, "continuity lifting in both directions") as d:
        two = verify_continuity_lift(2, trials=200, seed=0)
        three = verify_continuity_lift(3, trials=200, seed=0)
        _zero_failures(two)
        _zero_failures(three)
        assert two.counts["a_topological_to_uniform"]["checked"] == 4 * 4 * 4
        assert three.counts["a_topological_to_uniform"]["checked"] == 200 * 27
        assert three.counts["b_uniform_to_topological"]["checked"] == 200 * 27
        d["premises_n2"] = [two.info["premise_held_a"], two.info["premise_held_b"]]
        d["premises_n3"] = [three.info["premise_held_a"], three.info["premise_held_b"]]
        assert min(d["premises_n3"]) > 0


def test_criterion_5_note_replication():
    with criterion(5, "integer sequence 1,1,2,2,... is pseudo-Cauchy without cluster points") as d:
        t0 = time.perf_counter()
        space, s = sl.make_discrete_int_space(), sl.note_sequence()
        status = sl.witness_pseudo_cauchy(space, s, depth=500, horizon=1204)
        refutations = [sl.refute_cluster(space, s, c, 1204) for c in range(-200, 201)]
        elapsed = time.perf_counter() - t0
        assert isinstance(status, sl.WitnessedAtDepth)
        assert status.verify(space, s)
        assert all(isinstance(r, sl.RefutedByCertificate) for r in refutations)
        d["witness_rows"] = len(status.witnesses)
        d["refuted"] = len(refutations)
        assert elapsed < NOTE_SECONDS


def test_criterion_6_example_replication():
    with criterion(6, "product example: listed terms, pseudo-Cauchy, no cluster point") as d:
        t0 = time.perf_counter()
        K = 4
        space, s = sl.make_example_product(K), sl.example_sequence(K)
        assert [space.format_point(x) for x in s.terms(8)] == EXAMPLE_TERMS
        levels = [space.level_index((i, k)) for i in range(1, K + 1) for k in range(1, 2 * K + 1)]
        status = sl.witness_pseudo_cauchy(space, s, depth=100, horizon=300, levels=levels, max_p=100)
        assert isinstance(status, sl.WitnessedAtDepth) and status.verify(space, s)
        assert {w.level for w in status.witnesses} == set(levels)
        candidates = example_candidates(space, 6)
        # naturals 1..6 plus the special point is the 7^4 reading; 0..6 adds the 8^4 superset
        strict = {c for c in candidates
                  if all(code == 0 or code >= sl.natural_code(1) for code in c)}
        assert len(strict) == 2401 and len(candidates) == 4096
        refuted = 0
        for c in candidates:
            r = sl.refute_cluster(space, s, c, 300)
            assert isinstance(r, sl.RefutedByCertificate), c
            assert r.trace["observable"] == "coord1" and r.trace["level"][0] == 1
            refuted += 1
        elapsed = time.perf_counter() - t0
        d["levels"] = len(levels)
        d["refuted"] = refuted
        assert elapsed < EXAMPLE_SECONDS


def test_criterion_7_extraction():
    with criterion(7, "pseudo-Cauchy subsequence extraction from the harmonic walk") as d:
        t0 = time.perf_counter()
        space, s = sl.make_rational_line(32), sl.harmonic_walk()
        idx = sl.extract_pseudo_cauchy_subsequence(space, s, stages=16, cap=10 ** 6)
        assert all(a < b for a, b in zip(idx, idx[1:]))
        values = [s[r] for r in idx]
        assert len(set(values)) == len(values)
        for t, (i, j) in enumerate(sl.triangular_schedule(16)):
            a, b = values[2 * t], values[2 * t + 1]
            assert abs(a - b) < Fraction(1, j)
        sub = sl.subsequence(s, idx)
        status = sl.witness_pseudo_cauchy(space, sub, depth=16, horizon=len(idx) - 1)
        assert isinstance(status, sl.WitnessedAtDepth) and status.verify(space, sub)
        elapsed = time.perf_counter() - t0
        d["indices"] = len(idx)
        assert elapsed < EXTRACT_SECONDS


def test_criterion_8_finite_collapse():
    with criterion(8, "finite collapse certificates and brute-force oracle agreement") as d:
        two = verify_finite_collapse(CensusConfig(n=2, max_preamble=4, max_cycle=4))
        three = verify_finite_collapse(CensusConfig(n=3, max_preamble=4, max_cycle=4))
        for rep in (two, three):
            _zero_failures(rep)
            for check in ("certificates_validate", "classification_agrees", "limit_sets_agree",
                          "cluster_point_exists", "no_distinct_terms", "g_cauchy_converges",
                          "cauchy_converges"):
                assert rep.counts[check]["failed"] == 0 and rep.counts[check]["checked"] > 0
        assert three.info["bases"] >= 200
        d["bases"] = [two.info["bases"], three.info["bases"]]
        d["sequences"] = [two.info["sequences"], three.info["sequences"]]


DETERMINISM_COMMANDS = [
    ["validate", "--file", "{space}"],
    ["induce", "--file", "{space}"],
    ["pervin", "--file", "{space}"],
    ["product", "--file", "{product}"],
    ["classify", "--file", "{space}"],
    ["decide", "--file", "{space}"],
    ["replicate", "note"],
    ["replicate", "example"],
    ["extract"],
    ["census", "--n", "3", "--seed", "5"],
    ["census", "--n", "3", "--mode", "random", "--samples", "500", "--seed", "5"],
    ["verify", "pervin", "--n", "4", "--trials", "50", "--seed", "5"],
    ["verify", "lift", "--n", "3", "--seed", "5"],
    ["verify", "product-lemmas", "--seed", "5"],
    ["verify", "collapse", "--n", "2", "--seed", "5"],
]


def test_criterion_9_determinism(tmp_path):
    space = tmp_path / "space.json"
    space.write_text(json.dumps({
        "universe": {"size": 3}, "topology": [[], [0], [0, 1], [0, 1, 2]],
        "base": [[[0, 0], [1, 0], [1, 1], [2, 0], [2, 1], [2, 2]]],
        "sequences": [{"preamble": [2], "cycle": [0, 1]}, {"preamble": [], "cycle": [1]}]}))
    product = tmp_path / "product.json"
    product.write_text(json.dumps({"format": "gqu-product", "factors": [
        {"universe": {"size": 2}, "topology": [[], [0], [0, 1]], "base": [[[0, 0], [1, 0], [1, 1]]]},
        {"universe": {"size": 2}, "base": [[[0, 0], [1, 1]]]}]}))
    with criterion(9, "byte-identical --json output on repeated runs") as d:
        env = dict(os.environ)
        identical = 0
        for template in DETERMINISM_COMMANDS:
            argv = [a.format(space=space, product=product) for a in template] + ["--json"]
            outs = []
            for hash_seed in ("1", "2"):
                env["PYTHONHASHSEED"] = hash_seed
                proc = subprocess.run([sys.executable, "-m", "gqu.cli", *argv],
                                      capture_output=True, env=env)
                assert proc.returncode == 0, (argv, proc.stdout[:500], proc.stderr[-500:])
                outs.append(proc.stdout)
            assert outs[0] == outs[1], argv
            assert outs[0]
            identical += 1
        d["commands"] = identical
