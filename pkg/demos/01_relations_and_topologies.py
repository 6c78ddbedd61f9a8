"""
Relations, supratopologies and bases
====================================

Points are integers, relations are bitsets.  A base of entourages needs
the diagonal in every element and a "square root" for every element.
"""

from gqu import (PointSet, Relation, Universe, compose, diagonal, full_relation,
                 induced_supratopology, validate_base, validate_family)

u = Universe(3)

# a relation and its square; (x, z) is in R o S when x R y S z for some y
r = diagonal(u) | Relation.of(u, [(0, 1), (1, 2)])
print("R     =", sorted(r.pairs))
print("R o R =", sorted(compose(r, r).pairs))

# R o R contains (0, 2), which R lacks, so {R} alone is not a base
try:
    validate_base(u, [r])
except Exception as exc:
    print("rejected:", exc)

# adding the transitive closure fixes it: the closure squares into itself
closure = compose(r, r) | r
b = validate_base(u, [closure])
mu = induced_supratopology(b)
print("open sets:", mu.to_list())

# unions are closed, intersections need not be
nu = validate_family(u, [PointSet.of(u, s) for s in ([], [0, 1], [1, 2], [0, 1, 2])])
print("strong:", nu.strong, "| {1} open:", nu.is_open(PointSet.of(u, [1])))

# the full relation gives the indiscrete topology
print(induced_supratopology(validate_base(u, [full_relation(u)])).to_list())
