"""Countable catalog spaces and sequences given by term functions.

Every space here has a countable base listed level by level, and each
level has a decidable, exact membership predicate (rationals are
:class:`fractions.Fraction`, never floats).  Sequence properties that
quantify over all indices can only be witnessed up to a horizon, so the
checks return one of three statuses:

* :class:`WitnessedAtDepth` - the finite witness table re-verifies;
* :class:`NoWitnessWithinHorizon` - inconclusive, never a refutation;
* :class:`RefutedByCertificate` - sound refutation of a cluster point,
  backed by an escape certificate attached to the sequence.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import CapExceeded, CertificateError, PointOutOfRange, PreconditionViolated

log = logging.getLogger(__name__)

# how many levels refute_cluster scans for one that bounds the certified observable
CERTIFICATE_LEVEL_SCAN = 64


def fmt_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


# ---------------------------------------------------------------- spaces


class StreamedSpace:
    """A countable space with base levels ``U_1, U_2, ...`` (1-based)."""

    catalog_id = ""
    level_count: Optional[int] = None
    # U_{k+1} <= U_k; product cylinder families are not nested
    descending = True

    def __init__(self, **params):
        self.params = params

    @property
    def spec(self) -> str:
        if not self.params:
            return self.catalog_id
        return self.catalog_id + ":" + ",".join(f"{k}={v}" for k, v in self.params.items())

    def is_point(self, p) -> bool:
        raise NotImplementedError

    def check_point(self, p):
        if not self.is_point(p):
            raise PointOutOfRange(f"{p!r} is not a point of {self.spec}")
        return p

    def in_level(self, idx: int, x, y) -> bool:
        raise NotImplementedError

    def level_label(self, idx: int):
        return idx

    def level_index(self, label) -> int:
        return label

    def check_level(self, idx: int) -> int:
        if idx < 1 or (self.level_count is not None and idx > self.level_count):
            raise ValueError(f"{self.spec} has no level {idx}")
        return idx

    def observable_radius(self, idx: int, observable: str) -> Optional[Fraction]:
        """A ``rho`` with ``obs(y) <= obs(x) + rho`` whenever ``(x, y)`` is in level ``idx``."""
        return None

    def format_point(self, p):
        return p


class DiscreteIntSpace(StreamedSpace):
    """The integers under the discrete metric: every level is the diagonal."""

    catalog_id = "discrete-int"

    def is_point(self, p):
        return _is_int(p)

    def in_level(self, idx, x, y):
        return x == y

    def observable_radius(self, idx, observable):
        return Fraction(0) if observable == "value" else None


class FullSpace(StreamedSpace):
    """The integers with every level equal to the full relation."""

    catalog_id = "full"

    def is_point(self, p):
        return _is_int(p)

    def in_level(self, idx, x, y):
        return True


class RationalLine(StreamedSpace):
    """Rationals with ``U_k = {(x, y) : |x - y| < 1/k}``."""

    catalog_id = "rational-line"

    def __init__(self, levels: Optional[int] = None):
        super().__init__(**({} if levels is None else {"levels": levels}))
        if levels is not None and levels < 1:
            raise ValueError("levels must be positive")
        self.level_count = levels

    def is_point(self, p):
        return isinstance(p, (int, Fraction)) and not isinstance(p, bool)

    def in_level(self, idx, x, y):
        self.check_level(idx)
        return abs(Fraction(x) - Fraction(y)) < Fraction(1, idx)

    def observable_radius(self, idx, observable):
        return Fraction(1, idx) if observable == "value" else None

    def format_point(self, p):
        return fmt_rational(p)


class ExampleFactor(StreamedSpace):
    """``N u {1/i}`` under the usual metric.

    Code 0 is the point ``1/i``; code ``c >= 1`` is the natural number
    ``c - 1``.  For ``i = 1`` codes 0 and 2 both carry the value 1.
    """

    catalog_id = "example-factor"

    def __init__(self, i: int):
        if not _is_int(i) or i < 1:
            raise ValueError("factor index must be a positive integer")
        super().__init__(i=i)
        self.i = i
        self.special = Fraction(1, i)

    def value(self, code: int) -> Fraction:
        return self.special if code == 0 else Fraction(code - 1)

    def is_point(self, p):
        return _is_int(p) and p >= 0

    def in_level(self, idx, x, y):
        return abs(self.value(x) - self.value(y)) < Fraction(1, idx)

    def observable_radius(self, idx, observable):
        return Fraction(1, idx) if observable == "value" else None

    def format_point(self, p):
        return fmt_rational(self.value(p))


def natural_code(v: int) -> int:
    """Factor code of the natural number ``v``."""
    return v + 1


class ExampleProduct(StreamedSpace):
    """Product of ``ExampleFactor(1..K)`` with the single-cylinder base.

    Levels are labelled ``(i, k)`` (the cylinder of factor ``i``'s level
    ``k``) and enumerated by increasing ``i + k``, then increasing ``i``.
    """

    catalog_id = "example-product"
    descending = False

    def __init__(self, K: int):
        if not _is_int(K) or K < 1:
            raise ValueError("K must be a positive integer")
        super().__init__(K=K)
        self.K = K
        self.factors = tuple(ExampleFactor(i) for i in range(1, K + 1))

    def is_point(self, p):
        return (
            isinstance(p, tuple)
            and len(p) == self.K
            and all(f.is_point(c) for f, c in zip(self.factors, p))
        )

    @lru_cache(maxsize=None)
    def level_label(self, idx: int) -> Tuple[int, int]:
        if idx < 1:
            raise ValueError("levels are 1-based")
        rest = idx
        s = 2
        while True:
            count = min(self.K, s - 1)
            if rest <= count:
                return rest, s - rest
            rest -= count
            s += 1

    def level_index(self, label) -> int:
        i, k = label
        if not (1 <= i <= self.K and k >= 1):
            raise ValueError(f"no cylinder level {label}")
        s = i + k
        return sum(min(self.K, t - 1) for t in range(2, s)) + i

    def in_level(self, idx, x, y):
        i, k = self.level_label(idx)
        return self.factors[i - 1].in_level(k, x[i - 1], y[i - 1])

    def observable_radius(self, idx, observable):
        i, k = self.level_label(idx)
        return Fraction(1, k) if observable == "coord1" and i == 1 else None

    def coord1(self, p) -> Fraction:
        return self.factors[0].value(p[0])

    def format_point(self, p):
        return [f.format_point(c) for f, c in zip(self.factors, p)]


def make_discrete_int_space() -> DiscreteIntSpace:
    return DiscreteIntSpace()


def make_full_space() -> FullSpace:
    return FullSpace()


def make_rational_line(levels: Optional[int] = None) -> RationalLine:
    return RationalLine(levels)


def make_example_factor(i: int) -> ExampleFactor:
    return ExampleFactor(i)


def make_example_product(K: int) -> ExampleProduct:
    return ExampleProduct(K)


# ---------------------------------------------------------------- sequences


@dataclass(frozen=True)
class EscapeCertificate:
    """``observable(term n) > r`` for every ``n >= escape_index(r)``, and the
    observable is nondecreasing from index ``start`` on."""

    observable_name: str
    observable: Callable[[Any], Fraction]
    escape_index: Callable[[Fraction], int]
    start: int = 0
    description: str = ""


class StreamedSeq:
    """A sequence given by a pure term function, with memoized terms."""

    def __init__(self, catalog_id: str, term: Callable[[int], Any], params=None,
                 certificate: Optional[EscapeCertificate] = None, length: Optional[int] = None):
        self.catalog_id = catalog_id
        self.params = dict(params or {})
        self._term = term
        self.certificate = certificate
        self.length = length
        self._cache: Dict[int, Any] = {}

    @property
    def spec(self) -> str:
        if not self.params:
            return self.catalog_id
        return self.catalog_id + ":" + ",".join(f"{k}={v}" for k, v in self.params.items())

    def __getitem__(self, n: int):
        if n < 0 or (self.length is not None and n >= self.length):
            raise IndexError(f"index {n} outside {self.spec}")
        try:
            return self._cache[n]
        except KeyError:
            value = self._cache[n] = self._term(n)
            return value

    def terms(self, stop: int) -> list:
        return [self[n] for n in range(stop)]


def note_sequence() -> StreamedSeq:
    """``1, 1, 2, 2, 3, 3, ...`` in the integers."""
    cert = EscapeCertificate(
        "value",
        Fraction,
        lambda r: max(0, 2 * math.ceil(r) + 2),
        0,
        "term value is nondecreasing; value(term n) > r for n >= 2*ceil(r)+2",
    )
    return StreamedSeq("note-seq", lambda n: n // 2 + 1, certificate=cert)


def _example_coord1(n: int) -> int:
    return 0 if n == 0 else (n + 2) // 2


def example_sequence(K: int) -> StreamedSeq:
    """The product sequence, 0-indexed (term ``n`` is the ``(n+1)``-th listed).

    Terms 1 and 2 are ``(0, 0, ...)`` and ``(1, 0, ...)``; for ``m >= 2`` the
    pair ``2m-1, 2m`` is ``(m, 0, ...)`` followed by the same tuple with
    ``1/m`` in coordinate ``m`` (only while ``m <= K``).
    """
    if not _is_int(K) or K < 2:
        raise ValueError("example_sequence needs K >= 2")
    zero = natural_code(0)

    def term(n):
        j = n + 1
        t = [zero] * K
        m = _example_coord1(n)
        t[0] = natural_code(m)
        if j >= 4 and j % 2 == 0 and m <= K:
            t[m - 1] = 0
        return tuple(t)

    factor1 = ExampleFactor(1)
    cert = EscapeCertificate(
        "coord1",
        lambda p: factor1.value(p[0]),
        lambda r: 0 if r < 0 else max(1, 2 * math.floor(r)),
        0,
        "coordinate-1 value is nondecreasing; it exceeds r from index max(1, 2*floor(r)) on",
    )
    return StreamedSeq("example-seq", term, {"K": K}, certificate=cert)


def harmonic_walk() -> StreamedSeq:
    """``H_n = 1 + 1/2 + ... + 1/n`` (``H_0 = 0``), exactly."""
    partial = [Fraction(0)]

    def term(n):
        while len(partial) <= n:
            partial.append(partial[-1] + Fraction(1, len(partial)))
        return partial[n]

    return StreamedSeq("harmonic", term)


def constant_sequence(point) -> StreamedSeq:
    return StreamedSeq("constant", lambda n: point, {"x": point})


def subsequence(s: StreamedSeq, indices: Sequence[int]) -> StreamedSeq:
    idx = list(indices)
    return StreamedSeq("subsequence", lambda n: s[idx[n]], {"of": s.spec, "length": len(idx)},
                       length=len(idx))


SPACE_CATALOG = {
    "discrete-int": lambda: make_discrete_int_space(),
    "full": lambda: make_full_space(),
    "rational-line": lambda levels=None: make_rational_line(levels),
    "example-factor": lambda i: make_example_factor(i),
    "example-product": lambda K: make_example_product(K),
}

SEQUENCE_CATALOG = {
    "note-seq": lambda: note_sequence(),
    "example-seq": lambda K: example_sequence(K),
    "harmonic": lambda: harmonic_walk(),
    "constant": lambda x: constant_sequence(x),
}


def _parse_catalog(text: str, catalog: dict, kind: str):
    name, _, rest = text.partition(":")
    if name not in catalog:
        raise ValueError(f"unknown {kind} {name!r}; known: {', '.join(sorted(catalog))}")
    params = {}
    if rest:
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise ValueError(f"malformed parameter {item!r} in {text!r}")
            params[key.strip()] = int(value)
    try:
        return catalog[name](**params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name}: {exc}") from None


def parse_space(text: str) -> StreamedSpace:
    """``"example-product:K=4"`` -> the catalog space."""
    return _parse_catalog(text, SPACE_CATALOG, "space")


def parse_sequence(text: str) -> StreamedSeq:
    return _parse_catalog(text, SEQUENCE_CATALOG, "sequence")


# ---------------------------------------------------------------- statuses


@dataclass(frozen=True)
class PseudoCauchyWitness:
    """``(term m, term n)`` lies in the level, with ``m != n`` both beyond
    every ``p`` in ``p_from..p_to``."""

    level: int
    p_from: int
    p_to: int
    m: int
    n: int

    def verify(self, space: StreamedSpace, s: StreamedSeq) -> bool:
        return (
            self.m != self.n
            and min(self.m, self.n) > self.p_to >= self.p_from
            and space.in_level(self.level, s[self.m], s[self.n])
        )

    def to_dict(self, space):
        return {"level": _label_json(space, self.level), "p_from": self.p_from,
                "p_to": self.p_to, "m": self.m, "n": self.n}


@dataclass(frozen=True)
class GCauchyWitness:
    """Every consecutive pair ``(term j, term j+1)`` with ``k <= j < horizon`` lies in the level."""

    level: int
    k: int
    horizon: int

    def verify(self, space: StreamedSpace, s: StreamedSeq) -> bool:
        return all(space.in_level(self.level, s[j], s[j + 1]) for j in range(self.k, self.horizon))

    def to_dict(self, space):
        return {"level": _label_json(space, self.level), "k": self.k, "horizon": self.horizon}


def _label_json(space, idx):
    label = space.level_label(idx)
    return list(label) if isinstance(label, tuple) else label


@dataclass(frozen=True)
class WitnessedAtDepth:
    property: str
    witnesses: Tuple[Any, ...]

    def verify(self, space, s) -> bool:
        return all(w.verify(space, s) for w in self.witnesses)

    def to_dict(self, space):
        return {"status": "witnessed_at_depth", "property": self.property,
                "witnesses": [w.to_dict(space) for w in self.witnesses]}


@dataclass(frozen=True)
class NoWitnessWithinHorizon:
    property: str
    detail: Dict[str, Any] = field(default_factory=dict, hash=False)

    def to_dict(self, space=None):
        return {"status": "no_witness_within_horizon", "property": self.property,
                "detail": self.detail}


@dataclass(frozen=True)
class RefutedByCertificate:
    property: str
    trace: Dict[str, Any] = field(hash=False)

    def to_dict(self, space=None):
        return {"status": "refuted_by_certificate", "property": self.property, "trace": self.trace}


def _bounds(depth: int, horizon: int):
    if not _is_int(depth) or depth < 1:
        raise ValueError("depth must be a positive integer")
    if not _is_int(horizon) or horizon < depth:
        raise ValueError("horizon must be at least depth")


def _levels(space, depth, levels):
    if levels is None:
        if space.level_count is not None:
            depth = min(depth, space.level_count)
        levels = range(1, depth + 1)
    return [space.check_level(i) for i in levels]


def witness_pseudo_cauchy(space: StreamedSpace, s: StreamedSeq, depth: int, horizon: int,
                          levels: Optional[Iterable[int]] = None,
                          max_p: Optional[int] = None) -> Any:
    """For each level and every ``p <= max_p`` find ``m != n`` in ``(p, horizon]``
    with ``(term m, term n)`` in the level.

    By default the levels are the first ``depth`` ones and ``max_p = depth``.
    """
    _bounds(depth, horizon)
    max_p = depth if max_p is None else max_p
    if max_p + 2 > horizon:
        raise ValueError("horizon leaves no room for two indices beyond max_p")
    terms = s.terms(horizon + 1)
    table = []
    for idx in _levels(space, depth, levels):
        p = 0
        while p <= max_p:
            hit = None
            for m in range(p + 2, horizon + 1):
                for n in range(p + 1, m):
                    if space.in_level(idx, terms[m], terms[n]):
                        hit = (m, n)
                    elif space.in_level(idx, terms[n], terms[m]):
                        hit = (n, m)
                    if hit:
                        break
                if hit:
                    break
            if hit is None:
                return NoWitnessWithinHorizon(
                    "pseudo_cauchy",
                    {"level": _label_json(space, idx), "p": p, "horizon": horizon},
                )
            low = min(hit)
            table.append(PseudoCauchyWitness(idx, p, min(low - 1, max_p), hit[0], hit[1]))
            p = low
    return WitnessedAtDepth("pseudo_cauchy", tuple(table))


def witness_g_cauchy(space: StreamedSpace, s: StreamedSeq, depth: int, horizon: int,
                     levels: Optional[Iterable[int]] = None) -> Any:
    """For each level find the least ``k`` such that every consecutive pair from
    ``k`` up to ``horizon`` lies in it; accept it only if ``k <= horizon - depth``,
    i.e. at least ``depth`` consecutive pairs back the claim."""
    _bounds(depth, horizon)
    terms = s.terms(horizon + 1)
    table = []
    for idx in _levels(space, depth, levels):
        j = horizon - 1
        while j >= 0 and space.in_level(idx, terms[j], terms[j + 1]):
            j -= 1
        k = j + 1
        if k > horizon - depth:
            return NoWitnessWithinHorizon(
                "g_cauchy",
                {"level": _label_json(space, idx), "failing_pair": [j, j + 1], "horizon": horizon},
            )
        table.append(GCauchyWitness(idx, k, horizon))
    return WitnessedAtDepth("g_cauchy", tuple(table))


def refute_cluster(space: StreamedSpace, s: StreamedSeq, candidate, horizon: int) -> Any:
    """Show ``candidate`` is not a cluster point of ``s``, or report inconclusive.

    With an escape certificate: take the first level that bounds the
    certified observable by some radius ``rho`` around the candidate.  Every
    point of the candidate's neighbourhood in that level has observable at
    most ``obs(candidate) + rho``, and from index ``N = escape_index(that
    bound)`` on the sequence stays strictly above it, so no tail enters the
    neighbourhood.  The certificate's claims are spot-checked through
    ``horizon``; a failed spot check raises :class:`CertificateError`.
    """
    space.check_point(candidate)
    cert = s.certificate
    if cert is None:
        idx = space.check_level(1)
        hits = [n for n in range(horizon + 1) if space.in_level(idx, candidate, s[n])]
        return NoWitnessWithinHorizon(
            "cluster_point",
            {"reason": "no escape certificate", "level": _label_json(space, idx),
             "neighbourhood_visits": len(hits), "last_visit": hits[-1] if hits else None},
        )
    scan = CERTIFICATE_LEVEL_SCAN
    if space.level_count is not None:
        scan = min(scan, space.level_count)
    for idx in range(1, scan + 1):
        rho = space.observable_radius(idx, cert.observable_name)
        if rho is not None:
            break
    else:
        raise CertificateError(
            f"no level of {space.spec} bounds the observable {cert.observable_name!r}"
        )
    bound = cert.observable(candidate) + rho
    escape = cert.escape_index(bound)
    if not cert.observable(s[escape]) > bound:
        raise CertificateError(f"certificate claims term {escape} exceeds {bound}, it does not")
    obs = [cert.observable(s[n]) for n in range(cert.start, horizon + 1)]
    for j in range(len(obs) - 1):
        if obs[j] > obs[j + 1]:
            raise CertificateError(f"observable decreases at index {cert.start + j}")
    for n in range(escape, horizon + 1):
        if space.in_level(idx, candidate, s[n]):
            raise CertificateError(f"term {n} re-enters the neighbourhood of {candidate!r}")
    return RefutedByCertificate(
        "cluster_point",
        {
            "candidate": space.format_point(candidate),
            "level": _label_json(space, idx),
            "observable": cert.observable_name,
            "radius": fmt_rational(rho),
            "bound": fmt_rational(bound),
            "escape_index": escape,
            "spot_checked_through": horizon,
        },
    )


# ---------------------------------------------------------------- extraction


def triangular_schedule(stages: int) -> List[Tuple[int, int]]:
    """``(1,1), (2,1), (2,2), (3,1), ...``: row ``i`` of the lower-triangular
    matrix whose ``(i, j)`` entry is base level ``j``."""
    return [(i, j) for i in range(1, stages + 1) for j in range(1, i + 1)]


def extract_pseudo_cauchy_subsequence(space: StreamedSpace, s: StreamedSeq, stages: int,
                                      cap: int) -> List[int]:
    """Indices of a pseudo-Cauchy subsequence with pairwise distinct terms.

    The matrix entries are read as pairs of consecutive terms: stage
    ``(i, j)`` picks the first index ``r`` past everything chosen so far
    with ``(term r, term r+1)`` in level ``j``, ``term r != term r+1`` and both
    values new, and emits ``r, r+1``.  The input should be G-Cauchy with no
    constant subsequence; a stage that finds nothing within ``cap`` indices
    raises :class:`CapExceeded`.
    """
    if not _is_int(stages) or stages < 1 or not _is_int(cap) or cap < 1:
        raise ValueError("stages and cap must be positive integers")
    if space.level_count is not None and stages > space.level_count:
        raise ValueError(f"{space.spec} has only {space.level_count} levels")
    spot = witness_g_cauchy(space, s, depth=stages, horizon=4 * stages)
    if not isinstance(spot, WitnessedAtDepth):
        log.warning("input does not look G-Cauchy at depth %d: %s", stages, spot.detail)
    chosen: List[int] = []
    used = set()
    r = 0
    for i, j in triangular_schedule(stages):
        start = r
        while True:
            if r - start >= cap:
                raise CapExceeded(i, j, cap)
            a, b = s[r], s[r + 1]
            if a != b and a not in used and b not in used and space.in_level(j, a, b):
                break
            r += 1
        chosen += [r, r + 1]
        used.update((a, b))
        r += 2
    return chosen
