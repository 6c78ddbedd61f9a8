"""
A pseudo-Cauchy product sequence with distinct terms and no cluster point
=========================================================================

Factors N u {1/i}; the first coordinate climbs without bound, which
rules out every candidate point through the first cylinder alone.
"""

from gqu import streamlab as sl
from gqu.cli import example_candidates

K = 4
space = sl.make_example_product(K)
s = sl.example_sequence(K)
for n, x in enumerate(s.terms(2 * K), start=1):
    print(f"x_{n} =", space.format_point(x))

levels = [space.level_index((i, k)) for i in range(1, K + 1) for k in range(1, 2 * K + 1)]
status = sl.witness_pseudo_cauchy(space, s, depth=40, horizon=200, levels=levels, max_p=40)
print(type(status).__name__, len(status.witnesses), "rows")

candidates = example_candidates(space, 3)
statuses = [sl.refute_cluster(space, s, y, 200) for y in candidates]
print(sum(isinstance(t, sl.RefutedByCertificate) for t in statuses), "of", len(candidates), "refuted")
print(statuses[-1].to_dict())
