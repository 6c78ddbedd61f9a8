"""Generalized topologies (union-closed families containing the empty set)."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Sequence, Tuple

from .errors import NotStrong, NotUnionClosed, UniverseMismatch
from .relation import MapPair, PointSet, Universe, mask_members, same_universe
from .seqlab import EPSeq

log = logging.getLogger(__name__)

__all__ = [
    "GenTopology",
    "MapPair",
    "validate_family",
    "generate_from_base",
    "is_generalized_continuous",
    "product_topology_base",
    "limit_and_cluster_points_ep",
]


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def canonical_mask_order(masks: Iterable[int]) -> List[int]:
    return sorted(masks, key=lambda m: (_popcount(m), mask_members(m)))


@dataclass(frozen=True)
class GenTopology:
    """A family of open sets, stored as bitmasks.

    Build instances through :func:`validate_family` or
    :func:`generate_from_base`; the constructor trusts its input.
    """

    universe: Universe
    masks: FrozenSet[int]

    @property
    def strong(self) -> bool:
        return self.universe.full_mask in self.masks

    @property
    def opens(self) -> List[PointSet]:
        return [PointSet(self.universe, m) for m in canonical_mask_order(self.masks)]

    def is_open(self, s: PointSet) -> bool:
        same_universe(self.universe, s.universe)
        return s.mask in self.masks

    def opens_containing(self, x: int) -> List[int]:
        return [m for m in self.masks if m >> x & 1]

    def __len__(self):
        return len(self.masks)

    def to_list(self) -> List[List[int]]:
        return [list(mask_members(m)) for m in canonical_mask_order(self.masks)]


def validate_family(u: Universe, family: Sequence[PointSet], require_strong: bool = False) -> GenTopology:
    masks = set()
    for s in family:
        same_universe(u, s.universe)
        masks.add(s.mask)
    if 0 not in masks:
        log.warning("empty set missing from family; inserted")
        masks.add(0)
    ordered = canonical_mask_order(masks)
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            if a | b not in masks:
                raise NotUnionClosed(PointSet(u, a), PointSet(u, b))
    top = GenTopology(u, frozenset(masks))
    if require_strong and not top.strong:
        raise NotStrong()
    return top


def generate_from_base(u: Universe, base: Sequence[PointSet]) -> GenTopology:
    """Smallest union-closed family containing ``base`` and the empty set."""
    masks = {0}
    for s in base:
        same_universe(u, s.universe)
        masks |= {m | s.mask for m in masks}
    return GenTopology(u, frozenset(masks))


def is_generalized_continuous(f: MapPair, mu: GenTopology, mu2: GenTopology) -> bool:
    if f.domain != mu.universe or f.codomain != mu2.universe:
        raise UniverseMismatch("map does not run between the two topologies")
    return all(f.preimage_mask(g) in mu.masks for g in mu2.masks)


def product_topology_base(factors: Sequence[GenTopology]) -> List[PointSet]:
    """Cylinders ``pi_i^{-1}(V)`` for every factor ``i`` and open ``V`` of it.

    Close the result with :func:`generate_from_base` to get the product.
    """
    from .product import product_universe, projection

    if not factors:
        raise ValueError("product of an empty family of topologies")
    pu = product_universe([t.universe for t in factors])
    masks = set()
    for i, top in enumerate(factors):
        pi = projection(pu, i)
        for v in top.masks:
            masks.add(pi.preimage_mask(v))
    return [PointSet(pu.universe, m) for m in canonical_mask_order(masks)]


@lru_cache(maxsize=65536)
def _limit_cluster_masks(n: int, masks: FrozenSet[int], cycle_mask: int) -> Tuple[int, int]:
    limits = clusters = 0
    for c in range(n):
        around = [g for g in masks if g >> c & 1]
        if all(cycle_mask & ~g == 0 for g in around):
            limits |= 1 << c
        if all(cycle_mask & g for g in around):
            clusters |= 1 << c
    return limits, clusters


def limit_and_cluster_points_ep(mu: GenTopology, s: EPSeq) -> Tuple[PointSet, PointSet]:
    """Limits and cluster points of ``s`` from the values its cycle repeats.

    A limit's every open neighbourhood holds all cycle values; a cluster
    point's every open neighbourhood meets them.
    """
    u = same_universe(mu.universe, s.universe)
    limits, clusters = _limit_cluster_masks(u.size, mu.masks, s.cycle_mask)
    return PointSet(u, limits), PointSet(u, clusters)
