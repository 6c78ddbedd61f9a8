"""
From a supratopology to a base and back
=======================================

Every strong generalized topology comes from a g-quasi uniformity: one
entourage (G x G) u ((X - G) x X) per open set G.
"""

from gqu import induced_supratopology, pervin_base
from gqu.census import enumerate_gentopologies, verify_pervin_roundtrip

tops = list(enumerate_gentopologies(3, strong_only=True))
print(len(tops), "strong topologies on 3 points")

mu = tops[10]
b = pervin_base(mu)
print("topology:", mu.to_list())
for e in b.elements:
    print("  entourage", sorted(e.pairs))
print("recovered:", induced_supratopology(b).masks == mu.masks)

# the same check for every strong topology up to 3 points, and 500 random ones on 4
for n in (1, 2, 3):
    print(n, verify_pervin_roundtrip(n).counts)
print(4, verify_pervin_roundtrip(4, random_trials=500, seed=1, exhaustive=False).counts)
