"""Finite universes, point sets and binary relations.

Points are dense integer codes ``0..n-1``.  Point sets and relations are
stored as Python integers used as bitsets: point ``x`` is bit ``x`` of a
point set, and the pair ``(x, y)`` is bit ``x * n + y`` of a relation, so
row ``x`` of a relation is the ``n``-bit slice holding the image of ``x``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence, Tuple

from .errors import PointOutOfRange, UniverseMismatch


@dataclass(frozen=True)
class Universe:
    size: int
    # presentation only: two universes of equal size are the same universe
    labels: Optional[Tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise ValueError(f"universe size must be a positive integer, got {self.size!r}")
        if self.labels is not None:
            labels = tuple(str(label) for label in self.labels)
            if len(labels) != self.size:
                raise ValueError("one label per point is required")
            object.__setattr__(self, "labels", labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def points(self) -> range:
        return range(self.size)

    def check_point(self, x: int) -> int:
        if not isinstance(x, int) or not 0 <= x < self.size:
            raise PointOutOfRange(f"point {x!r} outside universe of size {self.size}")
        return x

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)


def same_universe(*universes: Universe) -> Universe:
    first = universes[0]
    for other in universes[1:]:
        if other is not first and other.size != first.size:
            raise UniverseMismatch(f"universe sizes differ: {first.size} vs {other.size}")
    return first


def mask_members(mask: int) -> Tuple[int, ...]:
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)


@dataclass(frozen=True)
class PointSet:
    universe: Universe
    mask: int = 0

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.universe.size:
            raise PointOutOfRange(f"point set mask {self.mask:#x} exceeds universe size {self.universe.size}")

    @classmethod
    def of(cls, universe: Universe, members: Iterable[int] = ()) -> "PointSet":
        mask = 0
        for x in members:
            mask |= 1 << universe.check_point(x)
        return cls(universe, mask)

    @classmethod
    def full(cls, universe: Universe) -> "PointSet":
        return cls(universe, universe.full_mask)

    @property
    def members(self) -> Tuple[int, ...]:
        return mask_members(self.mask)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.universe.size and bool(self.mask >> x & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def _other(self, other: "PointSet") -> int:
        same_universe(self.universe, other.universe)
        return other.mask

    def __le__(self, other: "PointSet") -> bool:
        return self.mask & ~self._other(other) == 0

    def __or__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.universe, self.mask | self._other(other))

    def __and__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.universe, self.mask & self._other(other))

    def __sub__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.universe, self.mask & ~self._other(other))

    def complement(self) -> "PointSet":
        return PointSet(self.universe, self.universe.full_mask & ~self.mask)

    def sort_key(self):
        return (len(self), self.members)

    def __repr__(self):
        return "{" + ", ".join(map(str, self.members)) + "}"


@dataclass(frozen=True)
class Relation:
    universe: Universe
    mask: int = 0

    def __post_init__(self):
        n = self.universe.size
        if self.mask < 0 or self.mask >> (n * n):
            raise PointOutOfRange(f"relation mask exceeds universe size {n}")

    @classmethod
    def of(cls, universe: Universe, pairs: Iterable[Sequence[int]] = ()) -> "Relation":
        n = universe.size
        mask = 0
        for x, y in pairs:
            mask |= 1 << (universe.check_point(x) * n + universe.check_point(y))
        return cls(universe, mask)

    @classmethod
    def from_rows(cls, universe: Universe, rows: Sequence[int]) -> "Relation":
        n = universe.size
        mask = 0
        for x, row in enumerate(rows):
            mask |= row << (x * n)
        return cls(universe, mask)

    def row(self, x: int) -> int:
        """Bitmask of the image of ``x``."""
        n = self.universe.size
        return (self.mask >> (x * n)) & ((1 << n) - 1)

    def rows(self) -> Tuple[int, ...]:
        n = self.universe.size
        low = (1 << n) - 1
        return tuple((self.mask >> (x * n)) & low for x in range(n))

    @property
    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        n = self.universe.size
        return tuple(divmod(bit, n) for bit in mask_members(self.mask))

    def __contains__(self, pair) -> bool:
        x, y = pair
        n = self.universe.size
        if not (0 <= x < n and 0 <= y < n):
            return False
        return bool(self.mask >> (x * n + y) & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __iter__(self):
        return iter(self.pairs)

    def _other(self, other: "Relation") -> int:
        same_universe(self.universe, other.universe)
        return other.mask

    def __le__(self, other: "Relation") -> bool:
        return self.mask & ~self._other(other) == 0

    def __lt__(self, other: "Relation") -> bool:
        return self <= other and self.mask != other.mask

    def __or__(self, other: "Relation") -> "Relation":
        return Relation(self.universe, self.mask | self._other(other))

    def __and__(self, other: "Relation") -> "Relation":
        return Relation(self.universe, self.mask & self._other(other))

    def restrict(self, points: PointSet) -> "Relation":
        """Pairs with both components in ``points``."""
        keep = points.mask
        return Relation.from_rows(
            self.universe,
            [row & keep if keep >> x & 1 else 0 for x, row in enumerate(self.rows())],
        )

    def __repr__(self):
        return "Relation(" + repr(list(self.pairs)) + ")"


@dataclass(frozen=True)
class MapPair:
    """A total map between two finite universes."""

    domain: Universe
    codomain: Universe
    values: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.values)
        if len(values) != self.domain.size:
            raise ValueError(f"map needs {self.domain.size} values, got {len(values)}")
        for v in values:
            self.codomain.check_point(v)
        object.__setattr__(self, "values", values)

    def __call__(self, x: int) -> int:
        return self.values[x]

    @classmethod
    def identity(cls, universe: Universe) -> "MapPair":
        return cls(universe, universe, tuple(universe.points()))

    @classmethod
    def constant(cls, domain: Universe, codomain: Universe, value: int) -> "MapPair":
        return cls(domain, codomain, (value,) * domain.size)

    def preimage_mask(self, mask: int) -> int:
        out = 0
        for x, v in enumerate(self.values):
            if mask >> v & 1:
                out |= 1 << x
        return out

    def then(self, other: "MapPair") -> "MapPair":
        """``other`` applied after ``self``."""
        same_universe(self.codomain, other.domain)
        return MapPair(self.domain, other.codomain, tuple(other(v) for v in self.values))


def diagonal(universe: Universe) -> Relation:
    return Relation.from_rows(universe, [1 << x for x in universe.points()])


def full_relation(universe: Universe) -> Relation:
    return Relation(universe, (1 << (universe.size * universe.size)) - 1)


def compose(r: Relation, s: Relation) -> Relation:
    """``(x, z)`` is in the result iff ``(x, y) in r`` and ``(y, z) in s`` for some ``y``."""
    u = same_universe(r.universe, s.universe)
    s_rows = s.rows()
    rows = []
    for row in r.rows():
        out = 0
        y = 0
        while row:
            if row & 1:
                out |= s_rows[y]
            row >>= 1
            y += 1
        rows.append(out)
    return Relation.from_rows(u, rows)


def image(r: Relation, x: int) -> PointSet:
    r.universe.check_point(x)
    return PointSet(r.universe, r.row(x))


def pullback(f: MapPair, r: Relation) -> Relation:
    """``{(x, y) : (f(x), f(y)) in r}`` over the domain of ``f``."""
    same_universe(f.codomain, r.universe)
    pre = [0] * f.codomain.size
    for x, v in enumerate(f.values):
        pre[v] |= 1 << x
    rows = []
    for v in f.values:
        row = r.row(v)
        out = 0
        q = 0
        while row:
            if row & 1:
                out |= pre[q]
            row >>= 1
            q += 1
        rows.append(out)
    return Relation.from_rows(f.domain, rows)
