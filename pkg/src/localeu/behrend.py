"""Behrend functions from declared cone data, conormal cycles, and C*-localization.

Normal-cone components are supplied by the caller as ``(support, dim, mult)``
triples; nothing here computes a normal cone from equations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .constructible import (
    ConstructibleFunction,
    Cycle,
    EuMatrix,
    StratifiedSpace,
    Stratum,
    eu_transform,
    weighted_chi,
)
from .errors import ValidationError


@dataclass(frozen=True)
class ConeComponent:
    support: str
    dim_support: int
    mult: int = 1

    @classmethod
    def from_json(cls, doc: Mapping) -> "ConeComponent":
        return cls(str(doc["support"]), int(doc["dim"]), int(doc.get("mult", 1)))

    def as_json(self) -> dict:
        return {"support": self.support, "dim": self.dim_support, "mult": self.mult}


def _validate_components(space: StratifiedSpace, components: Sequence[ConeComponent]):
    for c in components:
        if c.support not in space:
            raise ValidationError(f"unknown support label {c.support!r}")
        if c.mult <= 0:
            raise ValidationError(f"multiplicity of {c.support} must be positive")
        if space[c.support].dim != c.dim_support:
            raise ValidationError(
                f"declared dim {c.dim_support} of {c.support} differs from stratum dim "
                f"{space[c.support].dim}"
            )


def canonical_cycle(space: StratifiedSpace, components: Sequence[ConeComponent]) -> Cycle:
    """``sum (-1)^dim * mult * [support]`` over the cone components."""
    _validate_components(space, components)
    c = Cycle()
    for comp in components:
        c = c + Cycle({comp.support: (-1) ** comp.dim_support * comp.mult})
    return c


@dataclass(frozen=True)
class BehrendData:
    space: StratifiedSpace
    components: tuple[ConeComponent, ...]
    eu: EuMatrix = None

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if self.eu is None:
            object.__setattr__(self, "eu", EuMatrix(self.space))
        elif self.eu.space != self.space:
            raise ValidationError("Euler obstruction matrix belongs to a different space")
        _validate_components(self.space, self.components)

    @cached_property
    def cycle(self) -> Cycle:
        return canonical_cycle(self.space, self.components)

    @cached_property
    def nu(self) -> ConstructibleFunction:
        """The Behrend function."""
        return eu_transform(self.cycle, self.eu)


def dt_invariant(bd: BehrendData) -> int:
    """``chi(X, nu_X)``."""
    return weighted_chi(bd.space, bd.nu)


class LagrangianCycle:
    """Integer combination of conormal symbols ``N*_Z``, keyed by stratum label."""

    def __init__(self, terms: Mapping[str, int] | None = None):
        self.terms = {k: v for k, v in dict(terms or {}).items() if v}

    def __add__(self, other: "LagrangianCycle") -> "LagrangianCycle":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LagrangianCycle(out)

    def __eq__(self, other):
        return isinstance(other, LagrangianCycle) and self.terms == other.terms

    def as_json(self) -> dict:
        return dict(sorted(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "LagrangianCycle(0)"
        return "LagrangianCycle(" + " + ".join(f"{v}*N*[{k}]" for k, v in sorted(self.terms.items())) + ")"


def lagrangify(c: Cycle, space: StratifiedSpace) -> LagrangianCycle:
    """``[Z] -> (-1)^dim Z * N*_Z``."""
    return LagrangianCycle({Z: (-1) ** space[Z].dim * a for Z, a in c.coefficients.items()})


def project(V: LagrangianCycle, space: StratifiedSpace) -> Cycle:
    """``N*_Z -> (-1)^dim Z * [Z]``."""
    return Cycle({Z: (-1) ** space[Z].dim * b for Z, b in V.terms.items()})


def intersection_with_zero_section(V: LagrangianCycle, bd: BehrendData | EuMatrix) -> int:
    """Intersection number of ``V`` with the zero section.

    ``N*_Z`` meets the zero section in ``(-1)^dim Z`` times the degree of the
    Chern-Mather class of ``Z``, which is ``chi(X, eu([Z]))``.
    """
    M = bd.eu if isinstance(bd, BehrendData) else bd
    total = 0
    for Z, b in V.terms.items():
        total += b * (-1) ** M.space[Z].dim * weighted_chi(M.space, M.column(Z))
    return total


@dataclass
class KiemLiReport:
    fixed: tuple[str, ...]
    c1: Cycle
    c2: Cycle
    nu1: ConstructibleFunction
    nu2: ConstructibleFunction
    chi_nu1_F: int
    chi_nu2_F: int
    chi_nu_F: int
    chi_nu_X: int

    @property
    def localized(self) -> int:
        return self.chi_nu1_F + self.chi_nu2_F

    @property
    def ok(self) -> bool:
        return self.localized == self.chi_nu_X == self.chi_nu_F

    def as_json(self) -> dict:
        return {
            "fixed": list(self.fixed),
            "c1": self.c1.as_json(),
            "c2": self.c2.as_json(),
            "nu1": self.nu1.as_json(),
            "nu2": self.nu2.as_json(),
            "chi_F_nu1": self.chi_nu1_F,
            "chi_F_nu2": self.chi_nu2_F,
            "localized": self.localized,
            "chi_F_nu": self.chi_nu_F,
            "chi_X_nu": self.chi_nu_X,
            "ok": self.ok,
        }


def _fixed_set(bd: BehrendData, F: Iterable[str] | None) -> frozenset[str]:
    if F is None:
        F = bd.space.fixed()
    F = frozenset(F)
    for name in F:
        bd.space[name]
    for name in bd.space.names:
        if name not in F and bd.space[name].chi != 0:
            raise ValidationError(
                f"free stratum {name} has chi = {bd.space[name].chi}; a C*-space without "
                "fixed points must have chi = 0"
            )
    return F


def split_cone(bd: BehrendData, F: Iterable[str] | None = None) -> tuple[Cycle, Cycle]:
    """Split ``c_X`` into the part supported in ``F`` and the closure of the rest."""
    F = _fixed_set(bd, F)
    c2 = Cycle()
    for comp in bd.components:
        if not bd.space.closure(comp.support) <= F:
            c2 = c2 + Cycle({comp.support: (-1) ** comp.dim_support * comp.mult})
    return bd.cycle - c2, c2


def kiem_li_localized(bd: BehrendData, F: Iterable[str] | None = None) -> KiemLiReport:
    """chi-level bookkeeping of the localized invariant on the fixed locus ``F``."""
    F = _fixed_set(bd, F)
    c1, c2 = split_cone(bd, F)
    nu1, nu2 = eu_transform(c1, bd.eu), eu_transform(c2, bd.eu)
    order = tuple(n for n in bd.space.order if n in F)
    report = KiemLiReport(
        fixed=order, c1=c1, c2=c2, nu1=nu1, nu2=nu2,
        chi_nu1_F=weighted_chi(bd.space, nu1, order),
        chi_nu2_F=weighted_chi(bd.space, nu2, order),
        chi_nu_F=weighted_chi(bd.space, bd.nu, order),
        chi_nu_X=dt_invariant(bd),
    )
    if not report.ok:
        raise AssertionError(f"localized invariants disagree: {report.as_json()}")
    return report


def smooth_germ(tangent_dim: int) -> BehrendData:
    """Smooth ``t``-dimensional germ with an isolated fixed point ``P``.

    Modelled as ``A^t`` split into the fixed origin and its free complement.
    """
    strata = [Stratum("P", 0, 1, fixed=True)]
    if tangent_dim > 0:
        strata.append(Stratum("U", tangent_dim, 0, fixed=False, covers=("P",)))
        top = "U"
    else:
        top = "P"
    space = StratifiedSpace(strata)
    return BehrendData(space, (ConeComponent(top, tangent_dim, 1),))


def isolated_fixed_point_sign(bd: BehrendData, point: str) -> int:
    """Behrend function at an isolated fixed point."""
    s = bd.space[point]
    if not s.fixed or s.dim != 0:
        raise ValidationError(f"{point} is not an isolated fixed point")
    return bd.nu[point]
