import random

import pytest
from hypothesis import given, strategies as st

from localeu.behrend import (
    BehrendData,
    ConeComponent,
    LagrangianCycle,
    canonical_cycle,
    dt_invariant,
    intersection_with_zero_section,
    isolated_fixed_point_sign,
    kiem_li_localized,
    lagrangify,
    project,
    smooth_germ,
    split_cone,
)
from localeu.constructible import (
    ConstructibleFunction,
    Cycle,
    EuMatrix,
    StratifiedSpace,
    Stratum,
    eu_transform,
    weighted_chi,
)
from localeu.errors import ValidationError

from strategies import random_cycle, random_eu, random_space

A1 = StratifiedSpace([Stratum("0", 0, 1, True), Stratum("C*", 1, 0, False, ("0",))])
POINT = StratifiedSpace([Stratum("pt", 0, 1, True)])


def smooth_space(n, chi):
    return StratifiedSpace([Stratum("X", n, chi, True)])


@pytest.mark.parametrize("n", range(4))
def test_canonical_cycle_smooth(n):
    X = smooth_space(n, 2)
    bd = BehrendData(X, [ConeComponent("X", n, 1)])
    assert bd.cycle == Cycle({"X": (-1) ** n})
    assert bd.nu == ConstructibleFunction.constant(X, (-1) ** n)
    assert dt_invariant(bd) == (-1) ** n * 2


def test_canonical_cycle_point_and_merging():
    bd = BehrendData(POINT, [ConeComponent("pt", 0, 1)])
    assert bd.nu["pt"] == 1 and dt_invariant(bd) == 1
    X = smooth_space(1, 0)
    assert canonical_cycle(X, [ConeComponent("X", 1, 1), ConeComponent("X", 1, 2)]) == Cycle({"X": -3})


def test_cone_component_validation():
    with pytest.raises(ValidationError):
        canonical_cycle(POINT, [ConeComponent("nowhere", 0, 1)])
    with pytest.raises(ValidationError):
        canonical_cycle(POINT, [ConeComponent("pt", 1, 1)])
    with pytest.raises(ValidationError):
        canonical_cycle(POINT, [ConeComponent("pt", 0, 0)])


def test_a1_example():
    bd = BehrendData(A1, [ConeComponent("C*", 1, 1)])
    assert dt_invariant(bd) == -1
    c1, c2 = split_cone(bd)
    assert c1 == Cycle() and c2 == Cycle({"C*": -1})
    r = kiem_li_localized(bd, ["0"])
    assert r.chi_nu2_F == -1 and r.chi_nu1_F == 0
    assert r.localized == r.chi_nu_X == r.chi_nu_F == -1


def test_all_fixed_gives_empty_second_part():
    X = StratifiedSpace([Stratum("p", 0, 1, True), Stratum("c", 1, 2, True, ("p",))])
    bd = BehrendData(X, [ConeComponent("c", 1, 2), ConeComponent("p", 0, 1)])
    c1, c2 = split_cone(bd)
    assert c2 == Cycle() and c1 == bd.cycle
    assert kiem_li_localized(bd).localized == dt_invariant(bd)


def test_free_stratum_with_nonzero_chi_rejected():
    X = StratifiedSpace([Stratum("p", 0, 1, True), Stratum("c", 1, 2, False, ("p",))])
    bd = BehrendData(X, [ConeComponent("c", 1, 1)])
    with pytest.raises(ValidationError):
        kiem_li_localized(bd)


@pytest.mark.parametrize("t", range(5))
def test_isolated_fixed_point_rule(t):
    bd = smooth_germ(t)
    assert isolated_fixed_point_sign(bd, "P") == (-1) ** t
    assert kiem_li_localized(bd).localized == (-1) ** t


def test_isolated_fixed_point_requires_point():
    with pytest.raises(ValidationError):
        isolated_fixed_point_sign(smooth_germ(2), "U")


def test_lagrangian_signs():
    X = StratifiedSpace([Stratum("p", 0, 1), Stratum("Z", 1, 0, covers=("p",))])
    V = lagrangify(Cycle.prime("Z"), X)
    assert V == LagrangianCycle({"Z": -1})
    assert project(V, X) == Cycle.prime("Z")
    assert lagrangify(Cycle(), X) == LagrangianCycle()
    n = 3
    Xn = smooth_space(n, 1)
    bd = BehrendData(Xn, [ConeComponent("X", n, 1)])
    assert lagrangify(bd.cycle, Xn) == LagrangianCycle({"X": 1})


def test_intersection_examples():
    bd = BehrendData(POINT, [ConeComponent("pt", 0, 1)])
    assert intersection_with_zero_section(LagrangianCycle({"pt": 1}), bd) == 1
    assert intersection_with_zero_section(LagrangianCycle(), bd) == 0
    bd = BehrendData(A1, [ConeComponent("C*", 1, 1)])
    assert intersection_with_zero_section(lagrangify(bd.cycle, A1), bd) == dt_invariant(bd)


@given(st.integers(0, 100_000))
def test_key_diagram_commutes(seed):
    rng = random.Random(seed)
    X = random_space(rng, rng.randint(1, 6))
    M = random_eu(rng, X)
    c = random_cycle(rng, X)
    V = lagrangify(c, X)
    assert project(V, X) == c
    assert intersection_with_zero_section(V, M) == weighted_chi(X, eu_transform(c, M))


@given(st.integers(0, 100_000))
def test_split_is_a_partition(seed):
    rng = random.Random(seed)
    X = random_space(rng, rng.randint(1, 6), free_chi_zero=True)
    comps = [ConeComponent(n, X[n].dim, rng.randint(1, 3)) for n in X.names if rng.random() < 0.6]
    bd = BehrendData(X, comps, random_eu(rng, X))
    c1, c2 = split_cone(bd)
    assert c1 + c2 == bd.cycle
    F = X.fixed()
    for label in c1.support():
        assert X.closure(label) <= F
    r = kiem_li_localized(bd)
    assert r.chi_nu1_F + r.chi_nu2_F == r.chi_nu_F == r.chi_nu_X
