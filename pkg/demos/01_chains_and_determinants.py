"""
Chains, continued fractions and determinants
============================================

A chain of rational curves with self-intersections -w1, ..., -wk contracts to
a cyclic quotient singularity. Its determinant and the determinant of the
chain without its first curve give the pair (n, q).
"""

from dualgraph.det import det, det_oracle
from dualgraph.graph import Chain, Fork
from dualgraph.hj import chain_from_pair, enumerate_chains, pair_from_chain

# five (-2)-curves followed by a (-3)-curve
c = Chain([-2, -2, -2, -2, -2, -3])
print("chain", c.weights, "has determinant", det(c))
print("and pair", pair_from_chain(c))

# going back: 13/11 = 2 - 1/(2 - 1/(2 - ...))
print(chain_from_pair((13, 11)).weights)

# every chain of determinant 7, one per residue prime to 7
for chain in enumerate_chains(7):
    print(" ", pair_from_chain(chain), chain.weights)

# on a fork the leaf-elimination determinant agrees with fraction-free elimination
f = Fork(2, (Chain([-2]), Chain([-3]), Chain([-2, -2, -2])))
print("fork determinant", det(f), "(Bareiss:", det_oracle(f), ")")
