"""
1, 1, 2, 2, 3, 3, ... in the discrete integers
==============================================

Pseudo-Cauchy (equal neighbours keep turning up) but no point is a
cluster point: the values leave every bounded set for good.
"""

from gqu import streamlab as sl

space = sl.make_discrete_int_space()
s = sl.note_sequence()
print(s.terms(10))

status = sl.witness_pseudo_cauchy(space, s, depth=20, horizon=80)
print(type(status).__name__, "with", len(status.witnesses), "witness rows")
for w in status.witnesses[:4]:
    print("  ", w.to_dict(space))

# consecutive terms 2m+1, 2m+2 differ, so it is not G-Cauchy here
print(sl.witness_g_cauchy(space, s, 5, 80).to_dict(space))

for c in (-3, 0, 7, 50):
    print(c, sl.refute_cluster(space, s, c, horizon=200).to_dict(space)["trace"])

# a constant sequence is never refuted
print(sl.refute_cluster(space, sl.constant_sequence(7), 7, horizon=50).to_dict())
