"""
The cohomology model
====================

H*(A) is an exterior algebra on 2g classes, L is wedge with theta and
H*(Theta) adds a k-dimensional summand in the middle degree that the
pushforward kills.
"""

from mforge import complementary_projectors, realize, theta_model, theta_projector
from mforge.realization import GradedMap

g = 3
m = theta_model(g)
print("H*(A) dims    ", list(m.space_a.dims))
print("H*(Theta) dims", list(m.space_theta.dims), "k =", m.k)

# L on H^2 for g = 2, small enough to read
m2 = theta_model(2)
print(m2.L.block(2))

# each theta projector realizes as the degree projector
T = m.space_theta
for j in range(2 * g - 1):
    print(j, realize(theta_projector(j, g), m) == GradedMap.projector(T, j))

# p cuts out the part of the middle cohomology not coming from A
piP, p = complementary_projectors(g)
print("rank p =", realize(p, m).rank())
