"""Bases of g-quasi uniformities and what they induce.

A base is a finite nonempty list of reflexive relations in which every
element contains the square ``V o V`` of some element ``V``.  The
uniformity it generates is the up-closure of the list, so every check in
this module that quantifies over the uniformity only looks at base
elements: an up-closed family contains a member inside ``U`` exactly when
it contains a base element inside ``U``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, List, Sequence, Tuple

from .errors import (
    CeilingExceeded,
    EmptyBase,
    MissingDiagonal,
    NoSquareRefinement,
    NotStrong,
    PreconditionViolated,
    UniverseMismatch,
)
from .gentop import GenTopology
from .relation import (
    MapPair,
    PointSet,
    Relation,
    Universe,
    compose,
    diagonal,
    mask_members,
    pullback,
    same_universe,
)
from .seqlab import EPSeq

# largest universe for which open sets are enumerated subset by subset
TOPOLOGY_CEILING = 16


@dataclass(frozen=True)
class UniformBase:
    universe: Universe
    elements: Tuple[Relation, ...]

    @cached_property
    def core_mask(self) -> int:
        out = self.elements[0].mask
        for r in self.elements[1:]:
            out &= r.mask
        return out

    def to_list(self) -> List[List[List[int]]]:
        return [[list(p) for p in r.pairs] for r in self.elements]

    def __len__(self):
        return len(self.elements)


def validate_base(u: Universe, rels: Sequence[Relation]) -> UniformBase:
    if not rels:
        raise EmptyBase("a base needs at least one relation")
    for r in rels:
        same_universe(u, r.universe)
    delta = diagonal(u)
    for i, r in enumerate(rels):
        missing = delta.mask & ~r.mask
        if missing:
            x = mask_members(missing)[0] // (u.size + 1)
            raise MissingDiagonal(i, x)
    squares = [compose(v, v).mask for v in rels]
    for i, r in enumerate(rels):
        if not any(sq & ~r.mask == 0 for sq in squares):
            raise NoSquareRefinement(i)
    return UniformBase(u, tuple(rels))


def contains_entourage(b: UniformBase, r: Relation) -> bool:
    same_universe(b.universe, r.universe)
    return any(e <= r for e in b.elements)


def core_entourage(b: UniformBase) -> Relation:
    """Intersection of all base elements, i.e. of the whole uniformity."""
    return Relation(b.universe, b.core_mask)


def _minimal_images(b: UniformBase) -> List[Tuple[int, ...]]:
    out = []
    for x in b.universe.points():
        imgs = {e.row(x) for e in b.elements}
        out.append(tuple(m for m in imgs if not any(o != m and o & ~m == 0 for o in imgs)))
    return out


@lru_cache(maxsize=4096)
def induced_supratopology(b: UniformBase) -> GenTopology:
    """Sets ``G`` such that every ``x`` in ``G`` has some ``B(x)`` inside ``G``."""
    n = b.universe.size
    if n > TOPOLOGY_CEILING:
        raise CeilingExceeded(f"open-set enumeration is limited to {TOPOLOGY_CEILING} points")
    images = _minimal_images(b)
    opens = []
    for g in range(1 << n):
        rest = g
        x = 0
        ok = True
        while rest:
            if rest & 1 and not any(m & ~g == 0 for m in images[x]):
                ok = False
                break
            rest >>= 1
            x += 1
        if ok:
            opens.append(g)
    return GenTopology(b.universe, frozenset(opens))


def pervin_entourage(u: Universe, g: int) -> Relation:
    """``(G x G) | ((X - G) x X)`` for the open set with bitmask ``g``."""
    full = u.full_mask
    return Relation.from_rows(u, [g if g >> x & 1 else full for x in u.points()])


def pervin_base(mu: GenTopology) -> UniformBase:
    """One entourage per open set; repeated relations (from the empty set and
    the whole universe, which both give ``X x X``) are kept once."""
    if not mu.strong:
        raise NotStrong("the Pervin construction needs a strong generalized topology")
    seen = {}
    for o in mu.opens:
        r = pervin_entourage(mu.universe, o.mask)
        seen.setdefault(r.mask, r)
    return validate_base(mu.universe, list(seen.values()))


def is_gqu_continuous(f: MapPair, bdom: UniformBase, bcod: UniformBase) -> bool:
    if f.domain != bdom.universe or f.codomain != bcod.universe:
        raise UniverseMismatch("map does not run between the two base universes")
    for target in bcod.elements:
        pb = pullback(f, target).mask
        if not any(e.mask & ~pb == 0 for e in bdom.elements):
            return False
    return True


@dataclass(frozen=True)
class SequenceClass:
    cauchy: bool
    g_cauchy: bool
    pseudo_cauchy: bool
    distinct_terms: bool

    def to_dict(self) -> Dict[str, bool]:
        return {
            "cauchy": self.cauchy,
            "g_cauchy": self.g_cauchy,
            "pseudo_cauchy": self.pseudo_cauchy,
            "distinct_terms": self.distinct_terms,
        }


def _square_inside(n: int, mask: int, rel: int) -> bool:
    """Is ``S x S`` inside the relation ``rel`` for the point set ``mask``?"""
    low = (1 << n) - 1
    x = 0
    rest = mask
    while rest:
        if rest & 1 and mask & ~((rel >> (x * n)) & low):
            return False
        rest >>= 1
        x += 1
    return True


def classify_ep_sequence(b: UniformBase, s: EPSeq) -> SequenceClass:
    """Tail behaviour of an eventually periodic sequence.

    Its tail visits exactly the cycle values, so it is Cauchy iff every pair
    of cycle values lies in the core entourage, and G-Cauchy iff every
    cyclically consecutive pair does.  A recurring value gives two distinct
    indices with equal terms beyond any bound, hence pseudo-Cauchy always,
    and the terms are never pairwise distinct.
    """
    same_universe(b.universe, s.universe)
    core = b.core_mask
    return SequenceClass(
        cauchy=_square_inside(b.universe.size, s.cycle_mask, core),
        g_cauchy=s.cycle_step_mask & ~core == 0,
        pseudo_cauchy=True,
        distinct_terms=False,
    )


def reachable_within(rel_mask: int, n: int, start: int, within: int) -> int:
    low = (1 << n) - 1
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        rest = frontier
        x = 0
        while rest:
            if rest & 1:
                nxt |= (rel_mask >> (x * n)) & low
            rest >>= 1
            x += 1
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def is_strongly_connected(rel_mask: int, n: int, w: int) -> bool:
    return bool(w) and all(reachable_within(rel_mask, n, x, w) == w for x in mask_members(w))


def limit_points_of_recurrent_set(b: UniformBase, w: PointSet) -> PointSet:
    """Limit set of a G-Cauchy sequence that visits exactly ``w`` infinitely often.

    Requires ``w`` to be strongly connected under the core entourage, as
    the infinitely visited set of any G-Cauchy tail is.
    """
    u = same_universe(b.universe, w.universe)
    if not w.mask:
        raise PreconditionViolated("recurrent set must be nonempty")
    if not is_strongly_connected(b.core_mask, u.size, w.mask):
        raise PreconditionViolated(f"{w!r} is not strongly connected under the core entourage")
    mu = induced_supratopology(b)
    limits = 0
    for c in u.points():
        if all(w.mask & ~g == 0 for g in mu.masks if g >> c & 1):
            limits |= 1 << c
    return PointSet(u, limits)


PROPERTY_NAMES = (
    "sequentially_complete",
    "g_complete",
    "weak_g_complete",
    "strongly_lebesgue",
    "sequentially_lebesgue",
    "compact",
)

_DERIVATIONS = {
    "sequentially_complete": "Cauchy tail values C have C x C inside the core, so C is a "
    "strongly connected recurrent set and converges to every point of its certificate",
    "g_complete": "a G-Cauchy tail is a walk in the core; its infinitely visited set W is "
    "strongly connected and every open set meeting W contains W (certificates)",
    "weak_g_complete": "implied by g_complete",
    "strongly_lebesgue": "finite universe: some value recurs infinitely often and is a cluster point",
    "sequentially_lebesgue": "vacuous: no sequence in a finite universe has pairwise distinct terms",
    "compact": "finite universe: finitely many open sets",
}


@dataclass(frozen=True)
class Verdict:
    holds: bool
    derivation: str


@dataclass(frozen=True)
class RecurrentCertificate:
    recurrent: PointSet
    limits: PointSet


@dataclass(frozen=True)
class SpaceReport:
    base: UniformBase
    verdicts: Dict[str, Verdict] = field(hash=False)
    certificates: Tuple[RecurrentCertificate, ...]

    def problems(self) -> List[str]:
        """Re-derive every certificate; an empty list means the report checks out."""
        out = []
        b = self.base
        n = b.universe.size
        expected = [w for w in range(1, 1 << n) if is_strongly_connected(b.core_mask, n, w)]
        got = [c.recurrent.mask for c in self.certificates]
        if sorted(got) != sorted(expected):
            out.append("certificate list does not cover exactly the strongly connected recurrent sets")
        for cert in self.certificates:
            w, lim = cert.recurrent, cert.limits
            if not lim:
                out.append(f"empty limit set for {w!r}")
            if not w <= lim:
                out.append(f"recurrent set {w!r} not inside its limit set {lim!r}")
            if limit_points_of_recurrent_set(b, w) != lim:
                out.append(f"limit set for {w!r} does not re-derive")
        for name in PROPERTY_NAMES:
            if name not in self.verdicts:
                out.append(f"missing verdict {name}")
        if self.verdicts["g_complete"].holds and not self.verdicts["weak_g_complete"].holds:
            out.append("g_complete holds but weak_g_complete does not")
        return out

    def to_dict(self) -> dict:
        return {
            "universe_size": self.base.universe.size,
            "properties": {
                name: {"holds": v.holds, "derivation": v.derivation}
                for name, v in self.verdicts.items()
            },
            "recurrent_sets": [
                {"recurrent": list(c.recurrent.members), "limits": list(c.limits.members)}
                for c in self.certificates
            ],
        }


def decide_space_properties(b: UniformBase) -> SpaceReport:
    """Every sequence-level completeness and Lebesgue property holds on a
    finite universe; the report carries one limit-set certificate per
    strongly connected recurrent set of the core entourage."""
    n = b.universe.size
    if n > TOPOLOGY_CEILING:
        raise CeilingExceeded(f"space decisions are limited to {TOPOLOGY_CEILING} points")
    certs = []
    for w in range(1, 1 << n):
        if is_strongly_connected(b.core_mask, n, w):
            ws = PointSet(b.universe, w)
            certs.append(RecurrentCertificate(ws, limit_points_of_recurrent_set(b, ws)))
    certs.sort(key=lambda c: c.recurrent.sort_key())
    certified = all(c.recurrent <= c.limits for c in certs)
    verdicts = {name: Verdict(True, _DERIVATIONS[name]) for name in PROPERTY_NAMES}
    for name in ("sequentially_complete", "g_complete", "weak_g_complete"):
        verdicts[name] = Verdict(certified, _DERIVATIONS[name])
    return SpaceReport(b, verdicts, tuple(certs))
