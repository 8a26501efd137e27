"""Local Euler obstructions of hypersurfaces and the cross-checks they must satisfy."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import NotOnHypersurfaceError
from .nash import DEFAULT_SEEDS, SegreVector, gauss_graph, linear_substitution, segre_fiber
from .poly import Ideal, Polynomial, Ring, dimension_and_degree
from .poly.polynomial import to_qq


@dataclass(frozen=True)
class Check:
    name: str
    expected: int
    got: int

    @property
    def passed(self) -> bool:
        return self.expected == self.got


@dataclass
class EuReport:
    f: Polynomial
    point: tuple
    segre: SegreVector
    eu: int
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_json(self) -> dict:
        return {
            "f": str(self.f),
            "point": [str(p) for p in self.point],
            "segre": list(self.segre.entries),
            "eu": self.eu,
            "checks": [
                {"name": c.name, "expected": c.expected, "got": c.got, "pass": c.passed}
                for c in self.checks
            ],
            "ok": self.ok,
        }


def eu_from_segre(s: Sequence[int]) -> int:
    """``int c(TZ) cap s`` with ``c(TZ) = (1+h)^-1``."""
    return sum((-1) ** m * v for m, v in enumerate(s))


def segre_at_point(f: Polynomial, P: Sequence, seeds: Sequence[int] = DEFAULT_SEEDS) -> SegreVector:
    return segre_fiber(gauss_graph(f), P, seeds)


def eu_at_point(f: Polynomial, P: Sequence, seeds: Sequence[int] = DEFAULT_SEEDS) -> int:
    """Local Euler obstruction of ``V(f)`` at ``P``."""
    return eu_from_segre(segre_at_point(f, P, seeds).entries)


def multiplicity_at(f: Polynomial, P: Sequence) -> int:
    """Lowest total degree of ``f`` expanded around ``P``."""
    P = [to_qq(p) for p in P]
    if f.evaluate(P) != 0:
        raise NotOnHypersurfaceError("f does not vanish at the point")
    n = f.ring.nvars
    identity = [[int(i == j) for j in range(n)] for i in range(n)]
    return linear_substitution(f, identity, P).lowest_degree()


def _is_smooth_at(f: Polynomial, P) -> bool:
    return any(g.evaluate(P) != 0 for g in f.gradient())


def _is_smooth_plane_curve_cone(f: Polynomial, P) -> int | None:
    """Degree ``d`` if ``V(f)`` is a cone over a smooth plane curve with vertex ``P = 0``."""
    if f.ring.nvars != 3 or any(to_qq(p) != 0 for p in P):
        return None
    comps = f.homogeneous_components()
    if len(comps) != 1:
        return None
    (d,) = comps
    if d < 2:
        return None
    dim, _ = dimension_and_degree(Ideal(f.gradient(), f.ring))
    return d if dim == 0 else None


def _drop_variable(f: Polynomial, k: int) -> Polynomial:
    names = [v for i, v in enumerate(f.ring.names) if i != k]
    ring = Ring(tuple(names))
    terms = {e[:k] + e[k + 1:]: c for e, c in f.terms.items()}
    return Polynomial._raw(ring, terms)


def property_harness(f: Polynomial, P: Sequence,
                     declared_components: Sequence[Polynomial] | None = None,
                     seeds: Sequence[int] = DEFAULT_SEEDS) -> EuReport:
    """Compute eu and cross-check it against every closed form that applies."""
    P = tuple(to_qq(p) for p in P)
    segre = segre_at_point(f, P, seeds)
    eu = eu_from_segre(segre.entries)
    report = EuReport(f, P, segre, eu)
    checks = report.checks
    n = f.ring.nvars

    if _is_smooth_at(f, P):
        checks.append(Check("smooth point", 1, eu))
    if n == 2:
        checks.append(Check("plane curve multiplicity", multiplicity_at(f, P), eu))
    d = _is_smooth_plane_curve_cone(f, P)
    if d is not None:
        checks.append(Check(f"cone over smooth degree-{d} curve", 2 * d - d * d, eu))
    if n >= 3:
        for k in range(n):
            if f.degree_in([k]) == 0:
                g = _drop_variable(f, k)
                Q = P[:k] + P[k + 1:]
                checks.append(Check(f"cylinder along {f.ring.names[k]}", eu_at_point(g, Q, seeds), eu))
                break
    if declared_components:
        product = Polynomial.constant(f.ring, 1)
        for g in declared_components:
            product = product * g
        ratio = f.leading_term()[1] / product.leading_term()[1]
        checks.append(Check("factors multiply to f", 1, int(product * ratio == f)))
        total = sum(eu_at_point(g, P, seeds) for g in declared_components if g.evaluate(P) == 0)
        checks.append(Check("additivity over components", total, eu))
    return report
