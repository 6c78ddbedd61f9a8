"""Eventually periodic sequences over a finite universe."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence, Tuple

from .relation import PointSet, Relation, Universe


@dataclass(frozen=True)
class EPSeq:
    """``preamble[0], ..., preamble[-1], cycle[0], ..., cycle[-1], cycle[0], ...``"""

    universe: Universe
    preamble: Tuple[int, ...]
    cycle: Tuple[int, ...]

    def __post_init__(self):
        preamble = tuple(self.preamble)
        cycle = tuple(self.cycle)
        if not cycle:
            raise ValueError("cycle must be nonempty")
        for x in preamble + cycle:
            self.universe.check_point(x)
        object.__setattr__(self, "preamble", preamble)
        object.__setattr__(self, "cycle", cycle)

    def __getitem__(self, n: int) -> int:
        return ep_term(self, n)

    def window(self) -> Tuple[int, ...]:
        """Terms ``0 .. len(preamble) + 2 * len(cycle) - 1``; enough to see every
        index-quantified property of the sequence."""
        return self.preamble + self.cycle + self.cycle

    @cached_property
    def cycle_mask(self) -> int:
        mask = 0
        for x in self.cycle:
            mask |= 1 << x
        return mask

    @cached_property
    def cycle_step_mask(self) -> int:
        """Relation bitmask of the cyclically consecutive pairs of the cycle."""
        n = self.universe.size
        c = self.cycle
        mask = 0
        for k, x in enumerate(c):
            mask |= 1 << (x * n + c[(k + 1) % len(c)])
        return mask

    def to_dict(self) -> dict:
        return {"preamble": list(self.preamble), "cycle": list(self.cycle)}


def ep_term(s: EPSeq, n: int) -> int:
    if n < 0:
        raise IndexError("sequence index must be nonnegative")
    if n < len(s.preamble):
        return s.preamble[n]
    return s.cycle[(n - len(s.preamble)) % len(s.cycle)]


def _primitive_period(cycle: Sequence[int]) -> int:
    size = len(cycle)
    for d in range(1, size + 1):
        if size % d == 0 and all(cycle[k] == cycle[k % d] for k in range(size)):
            return d
    return size


def ep_normalize(s: EPSeq) -> EPSeq:
    """Shortest cycle, then shortest preamble.

    The cycle is never rotated freely: absorbing the last preamble term
    rotates the cycle right by one so that every term keeps its value.
    """
    cycle = list(s.cycle[: _primitive_period(s.cycle)])
    preamble = list(s.preamble)
    while preamble and preamble[-1] == cycle[-1]:
        preamble.pop()
        cycle.insert(0, cycle.pop())
    return EPSeq(s.universe, tuple(preamble), tuple(cycle))


def ep_values(s: EPSeq) -> Tuple[PointSet, PointSet]:
    return PointSet.of(s.universe, s.preamble), PointSet.of(s.universe, s.cycle)


def ep_cycle_steps(s: EPSeq) -> Relation:
    return Relation(s.universe, s.cycle_step_mask)


def all_ep_sequences(universe: Universe, max_preamble: int, max_cycle: int) -> Iterator[EPSeq]:
    """Every (preamble, cycle) pair within the bounds, representations not deduplicated."""
    pts = universe.points()
    for p in range(max_preamble + 1):
        for preamble in itertools.product(pts, repeat=p):
            for c in range(1, max_cycle + 1):
                for cycle in itertools.product(pts, repeat=c):
                    yield EPSeq(universe, preamble, cycle)


def random_ep_sequence(universe: Universe, rng, max_preamble: int, max_cycle: int) -> EPSeq:
    n = universe.size
    preamble = tuple(rng.randrange(n) for _ in range(rng.randint(0, max_preamble)))
    cycle = tuple(rng.randrange(n) for _ in range(rng.randint(1, max_cycle)))
    return EPSeq(universe, preamble, cycle)
