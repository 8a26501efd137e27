"""Quick end-to-end self-check of every module, used by ``localeu selftest``."""

from __future__ import annotations

import itertools
import random

from .behrend import (
    BehrendData,
    ConeComponent,
    dt_invariant,
    intersection_with_zero_section,
    isolated_fixed_point_sign,
    kiem_li_localized,
    lagrangify,
    project,
    smooth_germ,
)
from .constructible import (
    ConstructibleFunction,
    Cycle,
    EuMatrix,
    StratifiedSpace,
    Stratum,
    eu_transform,
    inverse_transform,
    weighted_chi,
    weighted_chi_levels,
    weighted_chi_strata,
)
from .euler import eu_at_point, multiplicity_at, property_harness
from .poly import Ideal, Polynomial, Ring, is_groebner, saturate


def _poly_checks():
    R = Ring(("x", "y", "z"))
    P = lambda s: Polynomial.parse(s, R)  # noqa: E731
    I = Ideal([P("y - x^2"), P("z - x^3")], R)
    yield "groebner certificate", True, is_groebner(I.groebner_basis())
    sat = saturate(Ideal([P("x^2*y")], R), Ideal([P("x")], R))
    yield "saturation x^2*y by x", True, sat == Ideal([P("y")], R)


def _eu_checks():
    yield "conifold eu", 2, eu_at_point(Polynomial.parse("y*u - x*v"), [0, 0, 0, 0])
    for d, expected in ((2, 0), (3, -3)):
        yield f"cone degree {d}", expected, eu_at_point(Polynomial.parse(f"x^{d} + y^{d} + z^{d}"), [0, 0, 0])
    for s in ("y^2 - x^3", "x*y", "y^3 - x^4", "x^2*y - y^3", "y^2 - x^5"):
        f = Polynomial.parse(s, Ring(("x", "y")))
        yield f"curve {s}", multiplicity_at(f, [0, 0]), eu_at_point(f, [0, 0])
    cusp_line = Polynomial.parse("y^2 - x^3", Ring(("x", "y", "z")))
    yield "cusp times line", 2, eu_at_point(cusp_line, [0, 0, 7])
    R = Ring(("x", "y"))
    report = property_harness(Polynomial.parse("x*y", R), [0, 0],
                              [Polynomial.parse("x", R), Polynomial.parse("y", R)])
    yield "node harness", True, report.ok


def _random_space(rng: random.Random, k: int) -> StratifiedSpace:
    strata = []
    for i in range(k):
        dim = rng.randint(0, 3)
        below = [s.name for s in strata if s.dim < dim and rng.random() < 0.5]
        fixed = rng.random() < 0.5
        chi = rng.randint(-3, 3) if fixed else 0
        strata.append(Stratum(f"S{i}", dim, chi, fixed, tuple(below)))
    return StratifiedSpace(strata)


def _random_eu(rng: random.Random, X: StratifiedSpace) -> EuMatrix:
    entries = {(S, Z): rng.randint(-3, 3) for Z in X.names for S in X.closure(Z) if S != Z}
    return EuMatrix(X, entries)


def _constructible_checks():
    rng = random.Random("localeu:selftest")
    ok_round = ok_chi = ok_diagram = ok_kl = True
    for _ in range(50):
        X = _random_space(rng, rng.randint(1, 5))
        M = _random_eu(rng, X)
        c = Cycle({n: rng.randint(-3, 3) for n in X.names})
        m = eu_transform(c, M)
        ok_round &= inverse_transform(m, M) == c
        ok_chi &= weighted_chi_strata(X, m) == weighted_chi_levels(X, m)
        V = lagrangify(c, X)
        ok_diagram &= project(V, X) == c
        ok_diagram &= intersection_with_zero_section(V, M) == weighted_chi(X, m)
        comps = [ConeComponent(n, X[n].dim, rng.randint(1, 3)) for n in X.names if rng.random() < 0.6]
        ok_kl &= kiem_li_localized(BehrendData(X, comps, M)).ok
    yield "round trip", True, ok_round
    yield "weighted chi formulas", True, ok_chi
    yield "key diagram", True, ok_diagram
    yield "localized bookkeeping", True, ok_kl
    P1 = StratifiedSpace([Stratum("pt", 0, 1), Stratum("A1", 1, 1, covers=("pt",))])
    yield "chi(P1)", 2, weighted_chi(P1, ConstructibleFunction.constant(P1, 1))
    A1 = StratifiedSpace([Stratum("0", 0, 1, True), Stratum("C*", 1, 0, False, ("0",))])
    bd = BehrendData(A1, [ConeComponent("C*", 1, 1)])
    yield "A1 invariant", -1, dt_invariant(bd)
    yield "A1 localized", -1, kiem_li_localized(bd).localized
    for t in range(4):
        yield f"isolated fixed point t={t}", (-1) ** t, isolated_fixed_point_sign(smooth_germ(t), "P")


def run_selftest():
    """Yield ``(name, expected, got)`` triples."""
    yield from itertools.chain(_poly_checks(), _eu_checks(), _constructible_checks())
