"""
Pulling a pseudo-Cauchy subsequence out of a G-Cauchy sequence
==============================================================

The harmonic partial sums take steps 1/n, so they are G-Cauchy on the
rational line, yet they never settle.  Stage (i, j) picks two consecutive
fresh terms whose distance is below 1/j.
"""

from gqu import streamlab as sl

space = sl.make_rational_line(32)
s = sl.harmonic_walk()
print(sl.witness_g_cauchy(space, s, depth=8, horizon=2000).to_dict(space)["witnesses"][:3])

idx = sl.extract_pseudo_cauchy_subsequence(space, s, stages=6, cap=10 ** 5)
for t, (i, j) in enumerate(sl.triangular_schedule(6)):
    r = idx[2 * t]
    print(f"stage ({i},{j}): indices {r},{r + 1}  values {sl.fmt_rational(s[r])}, {sl.fmt_rational(s[r + 1])}")

sub = sl.subsequence(s, idx)
print(type(sl.witness_pseudo_cauchy(space, sub, depth=6, horizon=len(idx) - 1)).__name__)
