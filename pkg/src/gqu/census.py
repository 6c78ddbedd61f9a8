"""Exhaustive enumeration of small structures and property checks over them.

Each ``verify_*`` function returns a :class:`VerificationReport` with one
pass/fail tally per named check.  Failing instances are stored as JSON-able
payloads that :func:`replay_failure` can re-run from scratch.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import CeilingExceeded, GquError
from .gentop import (
    GenTopology,
    canonical_mask_order,
    generate_from_base,
    is_generalized_continuous,
    limit_and_cluster_points_ep,
)
from .product import product_base, product_universe, project_ep, projection
from .quniform import (
    UniformBase,
    classify_ep_sequence,
    decide_space_properties,
    induced_supratopology,
    is_gqu_continuous,
    limit_points_of_recurrent_set,
    pervin_base,
    validate_base,
)
from .relation import MapPair, PointSet, Relation, Universe, compose, diagonal
from .seqlab import EPSeq, all_ep_sequences, random_ep_sequence

TOPOLOGY_CEILING = 4
EXHAUSTIVE_BASE_CEILING = 2
BOUNDED_BASE_CEILING = 4
MODES = ("exhaustive", "bounded", "random")


@dataclass
class CensusConfig:
    n: int = 2
    strong_only: bool = False
    mode: str = "exhaustive"
    max_elements: int = 2
    samples: int = 10_000
    seed: int = 0
    max_preamble: int = 3
    max_cycle: int = 3
    trials: int = 1000
    factors: int = 2
    factor_size: int = 2
    max_bases: Optional[int] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if min(self.max_elements, self.max_cycle, self.factors, self.factor_size) < 1:
            raise ValueError("bounds must be at least 1")
        if self.max_preamble < 0 or self.trials < 0 or self.samples < 0:
            raise ValueError("counts must be nonnegative")

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class VerificationReport:
    name: str
    counts: Dict[str, Dict[str, int]] = field(default_factory=dict)
    failures: List[dict] = field(default_factory=list)
    info: Dict[str, object] = field(default_factory=dict)
    elapsed: float = 0.0

    # failure payloads kept per report; counts stay exact beyond this
    max_failures = 50

    def record(self, check: str, ok: bool, payload=None):
        c = self.counts.setdefault(check, {"checked": 0, "failed": 0})
        c["checked"] += 1
        if not ok:
            c["failed"] += 1
            if len(self.failures) < self.max_failures:
                item = {"check": check}
                item.update(payload() if callable(payload) else (payload or {}))
                self.failures.append(item)

    def tally(self, check: str, passed: int):
        """Add ``passed`` successful checks without recording them one by one."""
        c = self.counts.setdefault(check, {"checked": 0, "failed": 0})
        c["checked"] += passed

    def merge(self, other: "VerificationReport"):
        for check, c in other.counts.items():
            mine = self.counts.setdefault(check, {"checked": 0, "failed": 0})
            mine["checked"] += c["checked"]
            mine["failed"] += c["failed"]
        room = self.max_failures - len(self.failures)
        self.failures.extend(other.failures[:max(room, 0)])

    @property
    def ok(self) -> bool:
        return all(c["failed"] == 0 for c in self.counts.values())

    @property
    def failed(self) -> int:
        return sum(c["failed"] for c in self.counts.values())

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "name": self.name,
            "ok": self.ok,
            "counts": {k: dict(v) for k, v in sorted(self.counts.items())},
            "failures": self.failures,
            "info": self.info,
        }
        if timing:
            out["elapsed_seconds"] = round(self.elapsed, 3)
        return out


# ---------------------------------------------------------------- enumeration


def enumerate_gentopologies(n: int, strong_only: bool = False,
                            ceiling: int = TOPOLOGY_CEILING) -> Iterator[GenTopology]:
    """Every union-closed family of subsets of ``{0..n-1}`` containing the empty set.

    Subsets are decided largest first.  A union of two decided sets is at
    least as large as either, so when a set is considered every union it
    forms with an already included set has been decided; including it is
    allowed exactly when all those unions are in.  Each family is therefore
    reached by exactly one include/exclude path.
    """
    if n > ceiling:
        raise CeilingExceeded(f"topology enumeration is limited to n <= {ceiling}")
    u = Universe(n)
    full = u.full_mask
    order = sorted(range(1, full + 1), key=lambda m: (-bin(m).count("1"), m))

    def walk(pos: int, chosen: frozenset):
        if pos == len(order):
            yield GenTopology(u, chosen | {0})
            return
        s = order[pos]
        if s == full and strong_only:
            yield from walk(pos + 1, chosen | {s})
            return
        if all(s | t in chosen for t in chosen):
            yield from walk(pos + 1, chosen | {s})
        yield from walk(pos + 1, chosen)

    yield from walk(0, frozenset())


def random_strong_topology(n: int, rng: random.Random) -> GenTopology:
    u = Universe(n)
    k = rng.randint(0, 2 ** n)
    base = [PointSet(u, rng.randrange(1, u.full_mask + 1)) for _ in range(k)]
    return generate_from_base(u, base + [PointSet.full(u)])


def reflexive_relations(n: int) -> List[Relation]:
    u = Universe(n)
    d = diagonal(u).mask
    off = [b for b in range(n * n) if b % (n + 1)]
    out = []
    for s in range(1 << len(off)):
        m = d
        for i, b in enumerate(off):
            if s >> i & 1:
                m |= 1 << b
        out.append(Relation(u, m))
    out.sort(key=lambda r: (len(r), r.mask))
    return out


def normalize_elements(rels: Sequence[Relation]) -> List[Relation]:
    """Drop duplicates and every element strictly containing another one."""
    uniq = {r.mask: r for r in rels}
    keep = [r for r in uniq.values() if not any(o.mask != r.mask and o <= r for o in uniq.values())]
    keep.sort(key=lambda r: (len(r), r.mask))
    return keep


def _try_base(u: Universe, rels: Sequence[Relation]) -> Optional[UniformBase]:
    try:
        return validate_base(u, list(rels))
    except GquError:
        return None


def _antichains(rels: List[Relation], limit: Optional[int]):
    def grow(start: int, chosen: List[Relation]):
        if chosen:
            yield chosen
        if limit is not None and len(chosen) >= limit:
            return
        for k in range(start, len(rels)):
            r = rels[k]
            if all(not (r <= c or c <= r) for c in chosen):
                yield from grow(k + 1, chosen + [r])

    yield from grow(0, [])


def random_base(u: Universe, rng: random.Random, max_elements: int) -> UniformBase:
    """A random normalized valid base (rejection sampling over reflexive relations)."""
    n = u.size
    d = diagonal(u).mask
    off = [b for b in range(n * n) if b % (n + 1)]
    while True:
        k = rng.randint(1, max_elements)
        rels = []
        for _ in range(k):
            m = d
            for b in off:
                if rng.random() < 0.5:
                    m |= 1 << b
            rels.append(Relation(u, m))
        b = _try_base(u, normalize_elements(rels))
        if b is not None:
            return b


def enumerate_bases(cfg: CensusConfig) -> Iterator[UniformBase]:
    """Valid normalized bases: no element strictly contains another.

    ``exhaustive`` emits all of them (``n <= 2``), ``bounded`` those with at
    most ``max_elements`` elements, ``random`` up to ``samples`` seeded draws
    with duplicates removed.  ``max_bases`` keeps a seeded sample of that size.
    """
    n = cfg.n
    u = Universe(n)
    if cfg.mode == "exhaustive":
        if n > EXHAUSTIVE_BASE_CEILING:
            raise CeilingExceeded(f"exhaustive base enumeration is limited to n <= {EXHAUSTIVE_BASE_CEILING}")
        stream = (_try_base(u, c) for c in _antichains(reflexive_relations(n), None))
        found = [b for b in stream if b is not None]
    elif cfg.mode == "bounded":
        if n > BOUNDED_BASE_CEILING:
            raise CeilingExceeded(f"bounded base enumeration is limited to n <= {BOUNDED_BASE_CEILING}")
        stream = (_try_base(u, c) for c in _antichains(reflexive_relations(n), cfg.max_elements))
        found = [b for b in stream if b is not None]
    else:
        rng = random.Random(cfg.seed)
        seen = set()
        found = []
        for _ in range(cfg.samples):
            b = random_base(u, rng, cfg.max_elements)
            key = tuple(e.mask for e in b.elements)
            if key not in seen:
                seen.add(key)
                found.append(b)
    if cfg.max_bases is not None and len(found) > cfg.max_bases:
        picks = sorted(random.Random(cfg.seed).sample(range(len(found)), cfg.max_bases))
        found = [found[i] for i in picks]
    yield from found


# ---------------------------------------------------------------- serialization helpers


def _top_payload(mu: GenTopology) -> list:
    return mu.to_list()


def _base_payload(b: UniformBase) -> list:
    return b.to_list()


def _top_from(n: int, opens) -> GenTopology:
    u = Universe(n)
    return GenTopology(u, frozenset(PointSet.of(u, o).mask for o in opens))


def _base_from(n: int, elements) -> UniformBase:
    u = Universe(n)
    return UniformBase(u, tuple(Relation.of(u, e) for e in elements))


# ---------------------------------------------------------------- checks


def _pervin_roundtrip_holds(mu: GenTopology) -> bool:
    return induced_supratopology(pervin_base(mu)).masks == mu.masks


def verify_pervin_roundtrip(n: int, random_trials: int = 0, seed: int = 0,
                            exhaustive: bool = True) -> VerificationReport:
    """Inducing a topology from the Pervin base of a strong topology gives it back."""
    t0 = time.perf_counter()
    rep = VerificationReport(f"pervin-roundtrip n={n}")
    tops = list(enumerate_gentopologies(n, strong_only=True)) if exhaustive else []
    rng = random.Random(seed)
    tops += [random_strong_topology(n, rng) for _ in range(random_trials)]
    for mu in tops:
        try:
            b = pervin_base(mu)
            axioms_ok = _try_base(mu.universe, list(b.elements)) is not None
            same = induced_supratopology(b).masks == mu.masks
        except GquError:
            axioms_ok = same = False
        payload = lambda: {"kind": "pervin_roundtrip", "n": n, "topology": _top_payload(mu)}
        rep.record("base_axioms", axioms_ok,
                   lambda: {"kind": "pervin_base_axioms", "n": n, "topology": _top_payload(mu)})
        rep.record("roundtrip", same, payload)
    rep.info = {"exhaustive_topologies": len(tops) - random_trials, "random_topologies": random_trials}
    rep.elapsed = time.perf_counter() - t0
    return rep


def all_maps(dom: Universe, cod: Universe) -> Iterator[MapPair]:
    for values in itertools.product(cod.points(), repeat=dom.size):
        yield MapPair(dom, cod, values)


def _pairs(items: list, trials: int, rng: random.Random, exhaustive: bool):
    if exhaustive:
        return [(a, b) for a in items for b in items]
    return [(rng.choice(items), rng.choice(items)) for _ in range(trials)]


def verify_continuity_lift(n: int, trials: int = 200, seed: int = 0) -> VerificationReport:
    """(a) generalized continuity lifts to Pervin bases; (b) g-quasi uniform
    continuity descends to induced topologies.  All ``n**n`` maps are tried
    for every structure pair; pairs are exhaustive for ``n <= 2`` and
    ``trials`` seeded samples otherwise."""
    if n > 3:
        raise CeilingExceeded("continuity lifting is checked for n <= 3")
    t0 = time.perf_counter()
    rep = VerificationReport(f"continuity-lift n={n}")
    rng = random.Random(seed)
    u = Universe(n)
    maps = list(all_maps(u, u))
    exhaustive = n <= 2

    tops = list(enumerate_gentopologies(n, strong_only=True))
    pervin = {mu: pervin_base(mu) for mu in tops}
    premise_a = 0
    for mu, mu2 in _pairs(tops, trials, rng, exhaustive):
        for f in maps:
            if is_generalized_continuous(f, mu, mu2):
                premise_a += 1
                ok = is_gqu_continuous(f, pervin[mu], pervin[mu2])
            else:
                ok = True
            rep.record("a_topological_to_uniform", ok, lambda: {
                "kind": "continuity_a", "n": n, "mu": _top_payload(mu),
                "mu2": _top_payload(mu2), "map": list(f.values)})

    mode = "exhaustive" if exhaustive else "bounded"
    bases = list(enumerate_bases(CensusConfig(n=n, mode=mode, max_elements=2)))
    induced = {b: induced_supratopology(b) for b in bases}
    premise_b = 0
    for b1, b2 in _pairs(bases, trials, rng, exhaustive):
        for f in maps:
            if is_gqu_continuous(f, b1, b2):
                premise_b += 1
                ok = is_generalized_continuous(f, induced[b1], induced[b2])
            else:
                ok = True
            rep.record("b_uniform_to_topological", ok, lambda: {
                "kind": "continuity_b", "n": n, "base": _base_payload(b1),
                "base2": _base_payload(b2), "map": list(f.values)})
    rep.info = {"maps": len(maps), "topologies": len(tops), "bases": len(bases),
                "premise_held_a": premise_a, "premise_held_b": premise_b}
    rep.elapsed = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------- EP oracle


class EPOracle:
    """Brute-force evaluation of the index-quantified definitions.

    Terms are read off a window of ``preamble + 3 cycles``.  For every start
    index ``m`` below ``len(preamble) + len(cycle)`` (one representative of
    every distinct tail) the oracle records, by scanning index pairs:

    * the values taken at indices ``>= m`` (convergence, clustering),
    * the pairs ``(x_p, x_q)`` for ``p, q >= m`` (Cauchy),
    * the pairs ``(x_j, x_{j+1})`` for ``j >= m`` (G-Cauchy),
    * the pairs ``(x_a, x_b)`` for distinct ``a, b > m`` (pseudo-Cauchy).

    A quantifier over start indices then becomes a quantifier over the
    recorded sets; equal sets give equal answers, which is what the
    memo tables key on.
    """

    def __init__(self, s: EPSeq):
        n = s.universe.size
        w = s.preamble + s.cycle * 3
        starts = len(s.preamble) + len(s.cycle)
        size = len(w)
        suffix, tails, steps, pseudo = set(), set(), set(), set()
        for m in range(starts):
            vals = 0
            for t in w[m:]:
                vals |= 1 << t
            suffix.add(vals)
            pairs = 0
            for p in range(m, size):
                for q in range(m, size):
                    pairs |= 1 << (w[p] * n + w[q])
            tails.add(pairs)
            st = 0
            for j in range(m, size - 1):
                st |= 1 << (w[j] * n + w[j + 1])
            steps.add(st)
            ps = 0
            for a in range(m + 1, size):
                for b in range(m + 1, size):
                    if a != b:
                        ps |= 1 << (w[a] * n + w[b])
            pseudo.add(ps)
        self.suffix = frozenset(suffix)
        self.class_key = (frozenset(tails), frozenset(steps), frozenset(pseudo))
        self.distinct_terms = len(set(w)) == size

    @staticmethod
    def classify(key, elements: Sequence[int]) -> Tuple[bool, bool, bool]:
        tails, steps, pseudo = key
        cauchy = all(any(t & ~e == 0 for t in tails) for e in elements)
        g_cauchy = all(any(t & ~e == 0 for t in steps) for e in elements)
        pseudo_cauchy = all(all(t & e for t in pseudo) for e in elements)
        return cauchy, g_cauchy, pseudo_cauchy

    @staticmethod
    def limits_and_clusters(suffix, n: int, opens, neighbourhoods: bool = False) -> Tuple[int, int]:
        """Direct definition; with ``neighbourhoods`` every superset of an open
        set around ``c`` is tested instead of the open sets alone."""
        full = (1 << n) - 1
        limits = clusters = 0
        for c in range(n):
            around = [g for g in opens if g >> c & 1]
            if neighbourhoods:
                around = [h for h in range(full + 1) if any(g & ~h == 0 for g in around)]
            if all(any(v & ~g == 0 for v in suffix) for g in around):
                limits |= 1 << c
            if all(all(v & g for v in suffix) for g in around):
                clusters |= 1 << c
        return limits, clusters


def direct_limits_and_clusters(mu: GenTopology, s: EPSeq, neighbourhoods: bool = False) -> Tuple[PointSet, PointSet]:
    lim, clu = EPOracle.limits_and_clusters(EPOracle(s).suffix, mu.universe.size, mu.masks, neighbourhoods)
    return PointSet(mu.universe, lim), PointSet(mu.universe, clu)


def direct_classify(b: UniformBase, s: EPSeq) -> Tuple[bool, bool, bool]:
    """``(cauchy, g_cauchy, pseudo_cauchy)`` straight from the definitions."""
    return EPOracle.classify(EPOracle(s).class_key, [e.mask for e in b.elements])


def _collapse_one(b: UniformBase, seqs: List[EPSeq], oracles: List[EPOracle],
                  rep: VerificationReport):
    n = b.universe.size
    problems = decide_space_properties(b).problems()
    rep.record("certificates_validate", not problems,
               lambda: {"kind": "collapse_certificates", "n": n, "base": _base_payload(b),
                        "problems": problems})
    mu = induced_supratopology(b)
    elements = [e.mask for e in b.elements]
    cls_memo: Dict[tuple, tuple] = {}
    lim_memo: Dict[frozenset, tuple] = {}
    rec_memo: Dict[int, int] = {}
    checked = dict.fromkeys(_COLLAPSE_CHECKS, 0)
    for s, o in zip(seqs, oracles):
        got = classify_ep_sequence(b, s)
        try:
            want = cls_memo[o.class_key]
        except KeyError:
            want = cls_memo[o.class_key] = EPOracle.classify(o.class_key, elements)
        try:
            d_lim, d_clu = lim_memo[o.suffix]
        except KeyError:
            d_lim, d_clu = lim_memo[o.suffix] = EPOracle.limits_and_clusters(o.suffix, n, mu.masks)
        c_lim, c_clu = limit_and_cluster_points_ep(mu, s)
        results = [
            ("classification_agrees",
             (got.cauchy, got.g_cauchy, got.pseudo_cauchy, got.distinct_terms) == want + (o.distinct_terms,)),
            ("limit_sets_agree", c_lim.mask == d_lim and c_clu.mask == d_clu),
            ("cluster_point_exists", d_clu != 0),
            ("no_distinct_terms", not o.distinct_terms),
        ]
        if want[1]:
            cm = s.cycle_mask
            if cm not in rec_memo:
                rec_memo[cm] = limit_points_of_recurrent_set(b, PointSet(b.universe, cm)).mask
            results.append(("g_cauchy_converges", d_lim != 0 and d_lim == rec_memo[cm]))
        if want[0]:
            results.append(("cauchy_converges", d_lim != 0))
        for check, ok in results:
            if ok:
                checked[check] += 1
            else:
                rep.record(check, False, {"kind": "collapse", "property": check, "n": n,
                                          "base": _base_payload(b), "sequence": s.to_dict()})
    for check, count in checked.items():
        rep.tally(check, count)


_COLLAPSE_CHECKS = ("classification_agrees", "limit_sets_agree", "cluster_point_exists",
                    "no_distinct_terms", "g_cauchy_converges", "cauchy_converges")


def collapse_bases(n: int, seed: int = 0) -> List[UniformBase]:
    """All normalized bases for ``n <= 2``; the bounded (at most two element) ones above."""
    mode = "exhaustive" if n <= EXHAUSTIVE_BASE_CEILING else "bounded"
    return list(enumerate_bases(CensusConfig(n=n, mode=mode, max_elements=2, seed=seed)))


def verify_finite_collapse(cfg: CensusConfig, bases: Optional[List[UniformBase]] = None) -> VerificationReport:
    """Every base's space report checks out, and the brute-force oracle agrees
    with the closed forms on every EP sequence within the bounds."""
    if cfg.n > 3:
        raise CeilingExceeded("finite-collapse verification is limited to n <= 3")
    t0 = time.perf_counter()
    rep = VerificationReport(f"finite-collapse n={cfg.n}")
    if bases is None:
        bases = collapse_bases(cfg.n, cfg.seed) if cfg.max_bases is None else list(enumerate_bases(cfg))
    u = Universe(cfg.n)
    seqs = list(all_ep_sequences(u, cfg.max_preamble, cfg.max_cycle))
    oracles = [EPOracle(s) for s in seqs]
    for b in bases:
        _collapse_one(b, seqs, oracles, rep)
    rep.info = {"bases": len(bases), "sequences": len(seqs),
                "max_preamble": cfg.max_preamble, "max_cycle": cfg.max_cycle}
    rep.elapsed = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------- products


def _product_instance(bases: Sequence[UniformBase], seq: EPSeq, rep: VerificationReport,
                      p=None, pb=None, oracle: bool = False):
    if p is None:
        p = product_universe([b.universe for b in bases])
    if pb is None:
        pb = product_base(list(bases), p)
    whole = classify_ep_sequence(pb, seq)
    parts = [classify_ep_sequence(b, project_ep(p, seq, i)) for i, b in enumerate(bases)]

    def payload(prop):
        return lambda: {"kind": "product_lemma", "property": prop,
                        "factor_sizes": [b.universe.size for b in bases],
                        "bases": [_base_payload(b) for b in bases], "sequence": seq.to_dict()}

    rep.record("cauchy_iff_projections", whole.cauchy == all(c.cauchy for c in parts), payload("cauchy"))
    rep.record("g_cauchy_iff_projections", whole.g_cauchy == all(c.g_cauchy for c in parts), payload("g_cauchy"))
    rep.record("pseudo_cauchy_iff_projections",
               whole.pseudo_cauchy == all(c.pseudo_cauchy for c in parts), payload("pseudo_cauchy"))
    if oracle:
        w = direct_classify(pb, seq)
        ws = [direct_classify(b, project_ep(p, seq, i)) for i, b in enumerate(bases)]
        rep.record("oracle_iff_projections",
                   all(w[k] == all(x[k] for x in ws) for k in range(3)), payload("oracle"))


def _product_structure(bases, rep, p=None):
    p = p or product_universe([b.universe for b in bases])
    try:
        pb = product_base(list(bases), p)
        ok = True
    except GquError:
        pb, ok = None, False
    rep.record("product_base_axioms", ok, lambda: {
        "kind": "product_base_axioms", "factor_sizes": [b.universe.size for b in bases],
        "bases": [_base_payload(b) for b in bases]})
    if pb is not None:
        for i, b in enumerate(bases):
            rep.record("projection_uniformly_continuous", is_gqu_continuous(projection(p, i), pb, b),
                       lambda: {"kind": "projection_continuity", "factor": i,
                                "factor_sizes": [b.universe.size for b in bases],
                                "bases": [_base_payload(x) for x in bases]})
    return p, pb


def verify_product_lemmas(cfg: CensusConfig, random_factors: int = 3) -> VerificationReport:
    """Cauchy / G-Cauchy / pseudo-Cauchy in the product iff in every projection.

    Grid: ``cfg.factors`` factors of size ``cfg.factor_size`` with every
    normalized base, and every EP sequence within the bounds.  Then
    ``cfg.trials`` random instances with ``random_factors`` factors of size
    1..3, also cross-checked against the brute-force oracle.
    """
    if cfg.factors > 3 or cfg.factor_size > 3:
        raise CeilingExceeded("product lemmas are checked for <= 3 factors of size <= 3")
    t0 = time.perf_counter()
    rep = VerificationReport(f"product-lemmas {cfg.factors}x{cfg.factor_size}")
    mode = "exhaustive" if cfg.factor_size <= EXHAUSTIVE_BASE_CEILING else "bounded"
    factor_bases = list(enumerate_bases(CensusConfig(n=cfg.factor_size, mode=mode, max_elements=2)))
    grid = 0
    seqs = None
    for combo in itertools.product(factor_bases, repeat=cfg.factors):
        p, pb = _product_structure(combo, rep)
        if pb is None:
            continue
        if seqs is None:
            seqs = list(all_ep_sequences(p.universe, cfg.max_preamble, cfg.max_cycle))
        for s in seqs:
            _product_instance(combo, s, rep, p, pb)
            grid += 1
    rng = random.Random(cfg.seed)
    for _ in range(cfg.trials):
        bases = [random_base(Universe(rng.randint(1, 3)), rng, 3) for _ in range(random_factors)]
        p, pb = _product_structure(bases, rep)
        if pb is None:
            continue
        s = random_ep_sequence(p.universe, rng, cfg.max_preamble, cfg.max_cycle)
        _product_instance(bases, s, rep, p, pb, oracle=True)
    rep.info = {"factor_bases": len(factor_bases), "grid_instances": grid,
                "random_instances": cfg.trials}
    rep.elapsed = time.perf_counter() - t0
    return rep


def verify_random_product_bases(trials: int, seed: int = 0) -> VerificationReport:
    """Product bases of random factors (at most 3 factors of size at most 3) satisfy the base axioms."""
    t0 = time.perf_counter()
    rep = VerificationReport("product-base-axioms")
    rng = random.Random(seed)
    for _ in range(trials):
        bases = [random_base(Universe(rng.randint(1, 3)), rng, 3) for _ in range(rng.randint(1, 3))]
        _product_structure(bases, rep)
    rep.elapsed = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------- census summary


def run_census(cfg: CensusConfig) -> dict:
    """Counts of the enumerated structures for ``cfg.n``."""
    out = {"n": cfg.n}
    if cfg.n <= TOPOLOGY_CEILING:
        tops = list(enumerate_gentopologies(cfg.n))
        out["generalized_topologies"] = len(tops)
        out["strong_topologies"] = sum(t.strong for t in tops)
    bases = list(enumerate_bases(cfg))
    out["bases"] = len(bases)
    out["base_mode"] = cfg.mode
    out["single_element_bases"] = sum(len(b) == 1 for b in bases)
    sizes: Dict[int, int] = {}
    for b in bases:
        sizes[len(b)] = sizes.get(len(b), 0) + 1
    out["bases_by_element_count"] = {str(k): v for k, v in sorted(sizes.items())}
    return out


# ---------------------------------------------------------------- replay


def _replay_holds(p: dict) -> bool:
    kind = p["kind"]
    if kind in ("pervin_roundtrip", "pervin_base_axioms"):
        mu = _top_from(p["n"], p["topology"])
        try:
            b = pervin_base(mu)
        except GquError:
            return False
        if kind == "pervin_base_axioms":
            return _try_base(mu.universe, list(b.elements)) is not None
        return induced_supratopology(b).masks == mu.masks
    if kind == "continuity_a":
        u = Universe(p["n"])
        mu, mu2 = _top_from(p["n"], p["mu"]), _top_from(p["n"], p["mu2"])
        f = MapPair(u, u, tuple(p["map"]))
        return not is_generalized_continuous(f, mu, mu2) or is_gqu_continuous(f, pervin_base(mu), pervin_base(mu2))
    if kind == "continuity_b":
        u = Universe(p["n"])
        b1, b2 = _base_from(p["n"], p["base"]), _base_from(p["n"], p["base2"])
        f = MapPair(u, u, tuple(p["map"]))
        return not is_gqu_continuous(f, b1, b2) or is_generalized_continuous(
            f, induced_supratopology(b1), induced_supratopology(b2))
    if kind == "base_axioms":
        return _try_base(Universe(p["n"]), list(_base_from(p["n"], p["base"]).elements)) is not None
    if kind in ("product_lemma", "product_base_axioms", "projection_continuity"):
        bases = [_base_from(n, e) for n, e in zip(p["factor_sizes"], p["bases"])]
        rep = VerificationReport("replay")
        if kind == "product_lemma":
            q = product_universe([b.universe for b in bases])
            s = EPSeq(q.universe, tuple(p["sequence"]["preamble"]), tuple(p["sequence"]["cycle"]))
            _product_instance(bases, s, rep, q, oracle=p["property"] == "oracle")
        else:
            _product_structure(bases, rep)
        return rep.ok
    if kind in ("collapse", "collapse_certificates"):
        b = _base_from(p["n"], p["base"])
        rep = VerificationReport("replay")
        if kind == "collapse":
            s = EPSeq(b.universe, tuple(p["sequence"]["preamble"]), tuple(p["sequence"]["cycle"]))
            _collapse_one(b, [s], [EPOracle(s)], rep)
        else:
            _collapse_one(b, [], [], rep)
        return rep.ok
    raise ValueError(f"unknown failure kind {kind!r}")


def replay_failure(payload: dict) -> bool:
    """True when the recorded failure reproduces."""
    return not _replay_holds(payload)
