"""
Behrend functions and torus localization
========================================

The weighted Euler characteristic of the Behrend function, and its
localization to the fixed locus of a C* action.
"""

from localeu.behrend import (
    BehrendData,
    ConeComponent,
    dt_invariant,
    isolated_fixed_point_sign,
    kiem_li_localized,
    smooth_germ,
    split_cone,
)
from localeu.constructible import StratifiedSpace, Stratum

# A^1 with the scaling action: the origin is fixed, C* is a free orbit
A1 = StratifiedSpace([Stratum("0", 0, 1, True), Stratum("C*", 1, 0, False, ("0",))])
bd = BehrendData(A1, [ConeComponent("C*", 1, 1)])
print("canonical cycle:", bd.cycle)
print("nu:", bd.nu.values)
print("weighted chi:", dt_invariant(bd))

# split the cone into the part over the fixed locus and the rest
c1, c2 = split_cone(bd)
print("over F:", c1, " elsewhere:", c2)
r = kiem_li_localized(bd)
print(f"chi(nu1|F)={r.chi_nu1_F} chi(nu2|F)={r.chi_nu2_F} total={r.localized}")

# an isolated fixed point of a smooth t-dimensional germ contributes (-1)^t
for t in range(4):
    print(f"t={t}: sign {isolated_fixed_point_sign(smooth_germ(t), 'P')}")
