"""
The conifold
============

Euler obstruction of ``yu = xv`` at the origin, computed from the Nash blow-up.
"""

from localeu.euler import eu_at_point
from localeu.nash import blowup_exceptional_ideal, gauss_graph, segre_fiber
from localeu.poly import Polynomial

# variables are sorted naturally: u, v, x, y
f = Polynomial.parse("y*u - x*v")
G = gauss_graph(f)
print("graph ideal generators:", len(G.graph_ideal.generators))

# the exceptional divisor over the origin lives in P^3 x P^3 (Gauss block y, direction block z)
D = blowup_exceptional_ideal(G, [0, 0, 0, 0])
print("exceptional divisor ring:", D.ring.names)

# each seed cuts D with its own hyperplanes; the three tables must agree
s = segre_fiber(G, [0, 0, 0, 0])
for seed, table in s.tables.items():
    print("seed", seed, sorted(table.entries.items()))

# s[j] is the coefficient of the j-plane class; eu is the alternating sum
print("segre vector:", s.entries)
print("eu:", s.alternating_sum())
assert eu_at_point(f, [0, 0, 0, 0]) == 2

# away from the origin the conifold is smooth
print("eu at (1, 2, 3, 6):", eu_at_point(f, [1, 2, 3, 6]))
