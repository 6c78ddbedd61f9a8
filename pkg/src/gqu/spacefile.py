"""JSON space files.

A space file looks like::

    {
      "format": "gqu-space",
      "version": 1,
      "universe": {"size": 2, "labels": ["a", "b"]},
      "topology": [[], [0], [0, 1]],
      "base": [[[0, 0], [1, 0], [1, 1]]],
      "sequences": [{"preamble": [], "cycle": [0, 1]}]
    }

``labels``, ``topology``, ``base`` and ``sequences`` are optional.  A
product space also carries ``"product": {"factors": [2, 3], "coding":
"mixed-radix-msb"}``.  Product *inputs* use ``"format": "gqu-product"``
with a ``"factors"`` list of space objects.

Parsing never reorders anything; :func:`dump_space` writes open sets in
canonical order and pairs sorted, so canonical files round-trip byte for
byte.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .gentop import GenTopology, canonical_mask_order
from .quniform import UniformBase
from .relation import PointSet, Relation, Universe, mask_members
from .seqlab import EPSeq

FORMAT = "gqu-space"
PRODUCT_FORMAT = "gqu-product"
VERSION = 1
CODING_ID = "mixed-radix-msb"


class SpaceFileError(ValueError):
    def __init__(self, location: str, message: str):
        self.location = location
        self.detail = message
        super().__init__(f"{location}: {message}")


@dataclass
class SpaceFile:
    universe: Universe
    topology: Optional[List[PointSet]] = None
    base: Optional[List[Relation]] = None
    sequences: List[EPSeq] = field(default_factory=list)
    product_factors: Optional[Tuple[int, ...]] = None


def _require(cond, location, message):
    if not cond:
        raise SpaceFileError(location, message)


def _int(value, location):
    _require(isinstance(value, int) and not isinstance(value, bool), location, f"expected an integer, got {value!r}")
    return value


def _point(u: Universe, value, location):
    _int(value, location)
    _require(0 <= value < u.size, location, f"point {value} outside universe of size {u.size}")
    return value


def _list(value, location):
    _require(isinstance(value, list), location, f"expected an array, got {type(value).__name__}")
    return value


def parse_space(obj, location: str = "$") -> SpaceFile:
    _require(isinstance(obj, dict), location, "expected an object")
    fmt = obj.get("format", FORMAT)
    _require(fmt == FORMAT, f"{location}.format", f"expected {FORMAT!r}, got {fmt!r}")
    version = obj.get("version", VERSION)
    _require(version == VERSION, f"{location}.version", f"unsupported version {version!r}")
    known = {"format", "version", "universe", "topology", "base", "sequences", "product"}
    extra = sorted(set(obj) - known)
    _require(not extra, location, f"unknown keys {extra}")

    uo = obj.get("universe")
    _require(isinstance(uo, dict), f"{location}.universe", "missing universe object")
    size = _int(uo.get("size"), f"{location}.universe.size")
    _require(size >= 1, f"{location}.universe.size", "size must be at least 1")
    labels = uo.get("labels")
    if labels is not None:
        _list(labels, f"{location}.universe.labels")
        _require(len(labels) == size, f"{location}.universe.labels", "one label per point is required")
        _require(all(isinstance(x, str) for x in labels), f"{location}.universe.labels", "labels must be strings")
        labels = tuple(labels)
    u = Universe(size, labels)

    sf = SpaceFile(u)
    if "topology" in obj:
        sf.topology = []
        for i, o in enumerate(_list(obj["topology"], f"{location}.topology")):
            loc = f"{location}.topology[{i}]"
            sf.topology.append(PointSet.of(u, [_point(u, x, f"{loc}[{k}]") for k, x in enumerate(_list(o, loc))]))
    if "base" in obj:
        sf.base = []
        for i, r in enumerate(_list(obj["base"], f"{location}.base")):
            loc = f"{location}.base[{i}]"
            pairs = []
            for k, pair in enumerate(_list(r, loc)):
                ploc = f"{loc}[{k}]"
                _require(isinstance(pair, list) and len(pair) == 2, ploc, "a pair must be a 2-element array")
                pairs.append((_point(u, pair[0], f"{ploc}[0]"), _point(u, pair[1], f"{ploc}[1]")))
            sf.base.append(Relation.of(u, pairs))
    for i, so in enumerate(_list(obj.get("sequences", []), f"{location}.sequences")):
        loc = f"{location}.sequences[{i}]"
        _require(isinstance(so, dict), loc, "expected an object with preamble and cycle")
        pre = [_point(u, x, f"{loc}.preamble[{k}]") for k, x in enumerate(_list(so.get("preamble", []), f"{loc}.preamble"))]
        cyc = [_point(u, x, f"{loc}.cycle[{k}]") for k, x in enumerate(_list(so.get("cycle"), f"{loc}.cycle"))]
        _require(cyc, f"{loc}.cycle", "cycle must be nonempty")
        sf.sequences.append(EPSeq(u, tuple(pre), tuple(cyc)))
    if "product" in obj:
        po = obj["product"]
        _require(isinstance(po, dict), f"{location}.product", "expected an object")
        factors = [_int(x, f"{location}.product.factors[{k}]") for k, x in enumerate(_list(po.get("factors"), f"{location}.product.factors"))]
        _require(po.get("coding") == CODING_ID, f"{location}.product.coding", f"expected {CODING_ID!r}")
        total = 1
        for f in factors:
            total *= f
        _require(factors and total == size, f"{location}.product.factors", "factor sizes must multiply to the universe size")
        sf.product_factors = tuple(factors)
    return sf


def parse_product(obj) -> List[SpaceFile]:
    _require(isinstance(obj, dict), "$", "expected an object")
    _require(obj.get("format") == PRODUCT_FORMAT, "$.format", f"expected {PRODUCT_FORMAT!r}")
    _require(obj.get("version", VERSION) == VERSION, "$.version", "unsupported version")
    factors = _list(obj.get("factors"), "$.factors")
    _require(factors, "$.factors", "a product needs at least one factor")
    return [parse_space(f, f"$.factors[{i}]") for i, f in enumerate(factors)]


def space_to_dict(sf: SpaceFile) -> dict:
    u = sf.universe
    out = {"format": FORMAT, "version": VERSION, "universe": {"size": u.size}}
    if u.labels:
        out["universe"]["labels"] = list(u.labels)
    if sf.product_factors is not None:
        out["product"] = {"factors": list(sf.product_factors), "coding": CODING_ID}
    if sf.topology is not None:
        masks = canonical_mask_order({s.mask for s in sf.topology})
        out["topology"] = [list(mask_members(m)) for m in masks]
    if sf.base is not None:
        out["base"] = [[list(p) for p in r.pairs] for r in sf.base]
    if sf.sequences:
        out["sequences"] = [s.to_dict() for s in sf.sequences]
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def dump_space(sf: SpaceFile) -> str:
    return dumps(space_to_dict(sf))


def load_file(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SpaceFileError(path, f"cannot read file: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SpaceFileError(f"{path}:{exc.lineno}:{exc.colno}", f"malformed JSON: {exc.msg}") from None


def from_topology(mu: GenTopology, **extra) -> SpaceFile:
    return SpaceFile(mu.universe, topology=mu.opens, **extra)


def from_base(b: UniformBase, **extra) -> SpaceFile:
    return SpaceFile(b.universe, base=list(b.elements), **extra)
