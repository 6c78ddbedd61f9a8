"""Finite products of finite g-quasi uniform spaces.

Tuples are coded mixed-radix with factor 0 most significant, so for factor
sizes ``(2, 3)`` the tuple ``(1, 2)`` has code ``1 * 3 + 2 = 5``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, Tuple

from .errors import UniverseMismatch
from .quniform import UniformBase, validate_base
from .relation import MapPair, Universe, pullback
from .seqlab import EPSeq

CODING = "mixed-radix, factor 0 most significant"


@dataclass(frozen=True)
class ProductUniverse:
    factors: Tuple[Universe, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("a product needs at least one factor")

    @cached_property
    def universe(self) -> Universe:
        size = 1
        for f in self.factors:
            size *= f.size
        return Universe(size)

    @cached_property
    def _weights(self) -> Tuple[int, ...]:
        weights = []
        w = 1
        for f in reversed(self.factors):
            weights.append(w)
            w *= f.size
        return tuple(reversed(weights))

    @cached_property
    def _table(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(itertools.product(*(f.points() for f in self.factors)))

    def encode(self, t: Sequence[int]) -> int:
        if len(t) != len(self.factors):
            raise ValueError(f"expected a {len(self.factors)}-tuple, got {tuple(t)}")
        return sum(f.check_point(x) * w for f, x, w in zip(self.factors, t, self._weights))

    def decode(self, code: int) -> Tuple[int, ...]:
        return self._table[self.universe.check_point(code)]


def product_universe(factors: Sequence[Universe]) -> ProductUniverse:
    return ProductUniverse(tuple(factors))


def projection(p: ProductUniverse, i: int) -> MapPair:
    if not 0 <= i < len(p.factors):
        raise IndexError(f"factor index {i} out of range for {len(p.factors)} factors")
    return MapPair(p.universe, p.factors[i], tuple(t[i] for t in p._table))


def product_base(bases: Sequence[UniformBase], p: Optional[ProductUniverse] = None) -> UniformBase:
    """Single-coordinate cylinders ``(pi_i x pi_i)^{-1}(B)``, factor by factor.

    Intersections of cylinders are not added: the result is a base of the
    product uniformity without being closed under meets.
    """
    if not bases:
        raise ValueError("a product needs at least one factor")
    if p is None:
        p = product_universe([b.universe for b in bases])
    elif len(p.factors) != len(bases) or any(f != b.universe for f, b in zip(p.factors, bases)):
        raise UniverseMismatch("bases do not line up with the product's factors")
    elements = []
    seen = set()
    for i, b in enumerate(bases):
        pi = projection(p, i)
        for e in b.elements:
            cyl = pullback(pi, e)
            if cyl.mask not in seen:
                seen.add(cyl.mask)
                elements.append(cyl)
    return validate_base(p.universe, elements)


def _fill(p: ProductUniverse, i: int, fixed: Sequence[Optional[int]]) -> list:
    k = len(p.factors)
    if len(fixed) == k - 1:
        return list(fixed[:i]) + [None] + list(fixed[i:])
    if len(fixed) == k and fixed[i] is None:
        return list(fixed)
    raise ValueError(f"need one fixed point for each of the other {k - 1} factors")


def section_sequence(p: ProductUniverse, s: EPSeq, i: int, fixed: Sequence[Optional[int]]) -> EPSeq:
    """Lift ``s`` from factor ``i`` into the product, freezing the other coordinates.

    ``fixed`` lists the frozen points of the other factors in order, or is a
    full tuple with ``None`` in slot ``i``.
    """
    if not 0 <= i < len(p.factors):
        raise IndexError(f"factor index {i} out of range")
    if s.universe != p.factors[i]:
        raise UniverseMismatch("sequence does not live on the chosen factor")
    slots = _fill(p, i, fixed)

    def lift(x):
        slots[i] = x
        return p.encode(slots)

    return EPSeq(p.universe, tuple(map(lift, s.preamble)), tuple(map(lift, s.cycle)))


def project_ep(p: ProductUniverse, s: EPSeq, i: int) -> EPSeq:
    """Coordinate ``i`` of ``s``; representation lengths are kept as they are."""
    pi = projection(p, i)
    if s.universe != p.universe:
        raise UniverseMismatch("sequence does not live on the product")
    return EPSeq(p.factors[i], tuple(map(pi, s.preamble)), tuple(map(pi, s.cycle)))
