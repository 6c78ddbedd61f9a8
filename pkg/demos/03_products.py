"""
Products and the projection lemmas
==================================

The product base is made of single-coordinate cylinders.  A sequence in
the product is Cauchy (or G-Cauchy) exactly when each coordinate is.
"""

from gqu import (EPSeq, Relation, Universe, classify_ep_sequence, diagonal, product_base,
                 product_universe, project_ep, validate_base)
from gqu.census import CensusConfig, verify_product_lemmas

a, c = Universe(2), Universe(3)
ba = validate_base(a, [diagonal(a) | Relation.of(a, [(1, 0)])])
bc = validate_base(c, [diagonal(c)])
p = product_universe([a, c])
pb = product_base([ba, bc], p)
print("codes:", {p.decode(k): k for k in p.universe.points()})

s = EPSeq(p.universe, (), (p.encode((1, 2)), p.encode((0, 2))))
print("product:", classify_ep_sequence(pb, s).to_dict())
for i, b in enumerate((ba, bc)):
    print(f"coordinate {i}:", classify_ep_sequence(b, project_ep(p, s, i)).to_dict())

rep = verify_product_lemmas(CensusConfig(factors=2, factor_size=2, trials=200, seed=3))
print(rep.name, "ok" if rep.ok else "FAILED", rep.info)
