"""
Numerical invariants of Theta
=============================

Euler characteristic, Betti numbers and the size of the primitive part for
a smooth theta divisor, for a few dimensions and polarization degrees.
"""

from mforge import hodge_profile

for g in range(2, 7):
    p = hodge_profile(g)
    print(g, p.euler, p.betti, "k =", p.k_dim, "level <=", p.level_bound)

# a non-principal polarization changes the middle Betti number and h^{g-1,0}
p = hodge_profile(4, 2)
print(p.betti, p.geom_genus, p.level_bound)
