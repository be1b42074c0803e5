"""
One boundary, one fork, all the numbers
=======================================

The boundary D has a (-1)-center and twigs [-2], [-3], [-3, -3]. Its
determinant is -10, so the fork E must have determinant 10.
"""

from dualgraph.casegen import ConstraintSet, case_verdict
from dualgraph.forks import enumerate_forks
from dualgraph.io import emit, parse_graph
from dualgraph.numerology import assemble
from dualgraph.peeling import peeling_profile

D = parse_graph("star b=1 twig 2 twig 3 twig 3 3")
print(emit(D), end="")

prof = peeling_profile(D)
print("a =", prof.a, " beta =", prof.beta, " P^2 =", prof.p_squared)

(E,) = enumerate_forks(prof.a)
n = assemble(D, E)
print("b2 =", n.b2, " K^2 =", n.K2, " K.D =", n.KD, " K.E =", n.KE)
print("(K+D+E)^2 =", n.KDE2)
print("P^2 + Bk(D)^2 + Bk(E)^2 =", n.P2 + n.bkD2 + n.bkE2)
# the two sides differ, so this surface cannot exist
print("residual", n.residual, "->", case_verdict(n, ConstraintSet()))
