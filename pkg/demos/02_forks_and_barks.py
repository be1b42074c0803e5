"""
Forks of a given determinant and their barks
============================================

A contractible fork is a (-h)-curve with three twigs whose determinants form
a platonic triple. Its bark Bk(E) is the rational divisor supported on E
with (K + E - Bk(E)).C = 0 for every component C.
"""

from dualgraph.forks import enumerate_forks, feasible_a, fork_candidates
from dualgraph.peeling import bark_fork

for a in (5, 6, 10, 12, 18):
    print(a, sorted(feasible_a(a)) or "no fork")

# a = 10: a single octahedral fork
(rec,) = enumerate_forks(10)
print(rec.type, "h =", rec.h, [t.weights for t in rec.fork.twigs])
bark = bark_fork(rec.fork)
for v, x in bark.coefficients.items():
    print("  curve", v, "coefficient", x)
print("  Bk(E)^2 =", bark.square, "closed form", rec.bark_square)

# a = 12: one sporadic fork and two dihedral families
cands = fork_candidates(12)
for r in cands.sporadic:
    print("sporadic h =", r.h, [t.weights for t in r.fork.twigs], r.bark_square)
for fam in cands.families:
    print("family [-2]*k +", fam.base.weights, "from k =", fam.k_min, "Bk(E)^2 =", fam.bark_square)
