"""
Cones and plane curves
======================

Two families with known answers: plane curve germs, where eu is the
multiplicity, and cones over smooth plane curves of degree d, where eu is
2d - d^2.  Negative values are genuine and not clamped.
"""

from localeu.euler import eu_at_point, multiplicity_at, property_harness
from localeu.poly import Polynomial, Ring

XY = Ring(("x", "y"))
XYZ = Ring(("x", "y", "z"))

for text in ["y^2 - x^3", "x*y", "y^3 - x^4", "x*y*(x - y)"]:
    f = Polynomial.parse(text, XY)
    print(f"{text:14s} mult={multiplicity_at(f, [0, 0])} eu={eu_at_point(f, [0, 0])}")

for d in (2, 3):
    f = Polynomial.parse(f"x^{d} + y^{d} + z^{d}", XYZ)
    print(f"cone of degree {d}: eu={eu_at_point(f, [0, 0, 0])}  (2d - d^2 = {2 * d - d * d})")

# the harness runs every applicable consistency check alongside the computation
g, h = Polynomial.parse("x^2 + y^2 - z^2", XYZ), Polynomial.parse("z - 2*x", XYZ)
report = property_harness(g * h, [0, 0, 0], [g, h])
for check in report.checks:
    print(" ", check.name, check.expected, check.got, "ok" if check.passed else "FAILED")
print("eu of the quadric cone plus a plane:", report.eu)
