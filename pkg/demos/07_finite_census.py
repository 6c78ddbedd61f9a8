"""
Everything collapses on finite spaces
=====================================

Some value recurs forever, so every sequence clusters and nothing has
distinct terms; G-Cauchy tails walk inside the core entourage and
converge.  The census re-derives this against a brute-force oracle.
"""

from gqu import decide_space_properties
from gqu.census import CensusConfig, collapse_bases, run_census, verify_finite_collapse

print(run_census(CensusConfig(n=3, mode="bounded")))

b = collapse_bases(3)[100]
report = decide_space_properties(b)
for c in report.certificates:
    print("recurrent", c.recurrent.members, "-> limits", c.limits.members)
print("problems:", report.problems())

rep = verify_finite_collapse(CensusConfig(n=2, max_preamble=3, max_cycle=3))
print(rep.name, rep.counts)
