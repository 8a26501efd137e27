"""
Cycles, constructible functions and weighted Euler characteristics
==================================================================

A nodal plane curve stratified as {node} and the rest.  The Euler
obstruction matrix turns cycles into constructible functions; the inverse
transform goes back, and lagrangian cycles meet the zero section in the
weighted Euler characteristic.
"""

from localeu.behrend import intersection_with_zero_section, lagrangify, project
from localeu.constructible import (
    ConstructibleFunction,
    Cycle,
    EuMatrix,
    StratifiedSpace,
    Stratum,
    eu_transform,
    inverse_transform,
    weighted_chi,
)
from localeu.poly import Polynomial, Ring

# a rational curve with one node: the smooth part is P^1 minus two points
X = StratifiedSpace([Stratum("node", 0, 1), Stratum("C", 1, -1, covers=("node",))])

# the entry eu_C(node) comes straight from the local equation x*y
M = EuMatrix(X).with_computed("node", "C", Polynomial.parse("x*y", Ring(("x", "y"))), [0, 0])
print("eu_C(node) =", M["node", "C"], "provenance:", M.provenance[("node", "C")])

c = Cycle({"C": 1})
m = eu_transform(c, M)
print("Eu(C) =", m.values)
print("back again:", inverse_transform(m, M))

# the constant function 1 is not an obstruction of a single cycle
one = ConstructibleFunction.constant(X, 1)
print("Eu^-1(1) =", inverse_transform(one, M))
print("chi(X) =", weighted_chi(X, one))

# the same number arrives through the conormal side
V = lagrangify(c, X)
print("lagrangian cycle:", V, "projects to", project(V, X))
print("V . zero section =", intersection_with_zero_section(V, M), "=", weighted_chi(X, m))
