"""
Normal forms of correspondences
===============================

Words in the generators are rewritten to a normal form. Two expressions
whose normal forms agree are equal modulo the axioms.
"""

from mforge import Gens, normalize, parse, standard_rules
from mforge.dsl import format

g = 4
R = standard_rules(g)
s = Gens(g)

# pushforward after pullback is intersection with Theta
print(format(normalize(s.G @ s.tG, R)))

# L and Lam move past the degree projectors, shifting the degree by 2
e = parse("Lam . L^2 . pi(1,A)", g)
print(format(e), "->", format(normalize(e, R)))

# multiplication by n acts on H^j by n^j
print(format(normalize(parse("mul(-2) . pi(3,A)", g), R)))

# the theta projectors are long expressions; their product collapses
P3 = parse("piT(3)", g)
print(len(P3), "terms in piT(3)")
print(normalize(P3 @ P3, R) == normalize(P3, R))
