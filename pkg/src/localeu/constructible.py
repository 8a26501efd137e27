"""Constructible functions on finite stratified spaces.

A stratified space is a finite poset of strata.  Each stratum carries a
dimension, an Euler characteristic and a flag saying whether it is fixed by
the ambient C*-action.  ``S <= T`` means ``S`` lies in the closure of ``T``,
and the closure of ``T`` (a prime cycle) is labelled by the name of ``T``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

from .errors import ValidationError

Number = Union[int, Fraction]


@dataclass(frozen=True)
class Stratum:
    name: str
    dim: int
    chi: int
    fixed: bool = False
    covers: tuple[str, ...] = ()

    def as_json(self) -> dict:
        return {"name": self.name, "dim": self.dim, "chi": self.chi,
                "fixed": self.fixed, "covers": list(self.covers)}


class StratifiedSpace:
    """A finite stratified space given by strata and their covering relations.

    ``covers`` of a stratum lists strata lying in its closure; the closure order
    is the reflexive-transitive closure of these relations.
    """

    def __init__(self, strata: Iterable[Stratum]):
        self.strata: tuple[Stratum, ...] = tuple(strata)
        self._by_name = {s.name: s for s in self.strata}
        if len(self._by_name) != len(self.strata):
            raise ValidationError("duplicate stratum names")
        for s in self.strata:
            if s.dim < 0:
                raise ValidationError(f"stratum {s.name} has negative dimension")
            for c in s.covers:
                if c not in self._by_name:
                    raise ValidationError(f"stratum {s.name} covers unknown stratum {c}")
                if self._by_name[c].dim >= s.dim:
                    raise ValidationError(
                        f"dimension must increase along the closure order ({c} < {s.name})"
                    )
        # dims strictly increase along covers, so the relation is acyclic
        self._order = self._topological()

    @classmethod
    def from_json(cls, doc: Sequence[Mapping]) -> "StratifiedSpace":
        strata = []
        for entry in doc:
            strata.append(Stratum(
                name=str(entry["name"]), dim=int(entry["dim"]), chi=int(entry["chi"]),
                fixed=bool(entry.get("fixed", False)), covers=tuple(entry.get("covers", ())),
            ))
        return cls(strata)

    def as_json(self) -> list:
        return [s.as_json() for s in self.strata]

    def _topological(self) -> tuple[str, ...]:
        return tuple(s.name for s in sorted(self.strata, key=lambda s: (s.dim, self.strata.index(s))))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.strata)

    @property
    def order(self) -> tuple[str, ...]:
        """Stratum names sorted so that smaller strata come first."""
        return self._order

    def __getitem__(self, name: str) -> Stratum:
        try:
            return self._by_name[name]
        except KeyError:
            raise ValidationError(f"unknown stratum {name!r}") from None

    def __contains__(self, name) -> bool:
        return name in self._by_name

    def __iter__(self):
        return iter(self.strata)

    def __len__(self):
        return len(self.strata)

    @cached_property
    def _closures(self) -> dict[str, frozenset[str]]:
        out: dict[str, frozenset[str]] = {}
        for name in self._order:
            acc = {name}
            for c in self[name].covers:
                acc |= out[c]
            out[name] = frozenset(acc)
        return out

    def closure(self, name: str) -> frozenset[str]:
        """Strata contained in the closure of ``name`` (including itself)."""
        self[name]
        return self._closures[name]

    def leq(self, a: str, b: str) -> bool:
        return a in self.closure(b)

    def maximal(self) -> list[str]:
        covered = {c for s in self.strata for c in self.closure(s.name) if c != s.name}
        return [s.name for s in self.strata if s.name not in covered]

    def fixed(self) -> frozenset[str]:
        return frozenset(s.name for s in self.strata if s.fixed)

    def free(self) -> frozenset[str]:
        return frozenset(s.name for s in self.strata if not s.fixed)

    def chi(self, names: Iterable[str] | None = None) -> int:
        names = self.names if names is None else names
        return sum(self[n].chi for n in names)

    def __eq__(self, other):
        return isinstance(other, StratifiedSpace) and self.strata == other.strata

    def __hash__(self):
        return hash(self.strata)

    def __repr__(self):
        return f"StratifiedSpace({', '.join(self.order)})"


class ConstructibleFunction:
    """Integer (or rational) values on every stratum."""

    def __init__(self, space: StratifiedSpace, values: Mapping[str, Number] | None = None):
        values = dict(values or {})
        for k in values:
            space[k]
        self.space = space
        self.values = {n: values.get(n, 0) for n in space.order}

    @classmethod
    def constant(cls, space: StratifiedSpace, c: Number) -> "ConstructibleFunction":
        return cls(space, {n: c for n in space.names})

    @classmethod
    def indicator(cls, space: StratifiedSpace, names: Iterable[str]) -> "ConstructibleFunction":
        return cls(space, {n: 1 for n in names})

    def __getitem__(self, name: str) -> Number:
        return self.values[name]

    def restrict(self, names: Iterable[str]) -> "ConstructibleFunction":
        """Zero outside ``names``."""
        keep = set(names)
        return ConstructibleFunction(self.space, {n: v for n, v in self.values.items() if n in keep})

    def __add__(self, other: "ConstructibleFunction") -> "ConstructibleFunction":
        return ConstructibleFunction(self.space, {n: v + other[n] for n, v in self.values.items()})

    def __sub__(self, other: "ConstructibleFunction") -> "ConstructibleFunction":
        return ConstructibleFunction(self.space, {n: v - other[n] for n, v in self.values.items()})

    def __neg__(self):
        return ConstructibleFunction(self.space, {n: -v for n, v in self.values.items()})

    def __mul__(self, k: Number) -> "ConstructibleFunction":
        return ConstructibleFunction(self.space, {n: k * v for n, v in self.values.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, ConstructibleFunction) and self.space == other.space
                and self.values == other.values)

    def as_json(self) -> dict:
        return {n: _jsonable(v) for n, v in self.values.items()}

    def __repr__(self):
        return f"ConstructibleFunction({self.values})"


class Cycle:
    """Formal combination of closures of strata, keyed by the top stratum's name."""

    def __init__(self, coefficients: Mapping[str, Number] | None = None):
        self.coefficients = {k: v for k, v in dict(coefficients or {}).items() if v}

    @classmethod
    def prime(cls, label: str) -> "Cycle":
        return cls({label: 1})

    def __getitem__(self, label: str) -> Number:
        return self.coefficients.get(label, 0)

    def support(self) -> list[str]:
        return list(self.coefficients)

    def __add__(self, other: "Cycle") -> "Cycle":
        out = dict(self.coefficients)
        for k, v in other.coefficients.items():
            out[k] = out.get(k, 0) + v
        return Cycle(out)

    def __neg__(self):
        return Cycle({k: -v for k, v in self.coefficients.items()})

    def __sub__(self, other: "Cycle") -> "Cycle":
        return self + (-other)

    def __mul__(self, k: Number) -> "Cycle":
        return Cycle({n: k * v for n, v in self.coefficients.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Cycle) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(frozenset(self.coefficients.items()))

    def as_json(self) -> dict:
        return {k: _jsonable(v) for k, v in sorted(self.coefficients.items())}

    def __repr__(self):
        if not self.coefficients:
            return "Cycle(0)"
        return "Cycle(" + " + ".join(f"{v}*[{k}]" for k, v in sorted(self.coefficients.items())) + ")"


DECLARED = "declared"
COMPUTED = "computed"
DEFAULT = "default"


@dataclass
class EuMatrix:
    """Values ``e[S, Z]`` of the Euler obstruction of the closure of ``Z`` on ``S``.

    Entries not listed are 0 off the closure, 1 on the diagonal, and 1 (with
    provenance ``default``) below the diagonal.
    """

    space: StratifiedSpace
    entries: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        declared = dict(self.entries)
        prov = dict(self.provenance)
        self.entries, self.provenance = {}, {}
        for (S, Z), v in declared.items():
            self.space[S], self.space[Z]
            if not self.space.leq(S, Z):
                if v:
                    raise ValidationError(f"eu([{Z}]) must vanish on {S}, outside its closure")
                continue
            self.entries[(S, Z)] = v
            self.provenance[(S, Z)] = prov.get((S, Z), DECLARED)
        for Z in self.space.names:
            for S in self.space.closure(Z):
                if (S, Z) not in self.entries:
                    self.entries[(S, Z)] = 1
                    self.provenance[(S, Z)] = DECLARED if S == Z else DEFAULT
            if self.entries[(Z, Z)] != 1:
                raise ValidationError(f"eu([{Z}]) must be 1 on its open stratum {Z}")

    def __getitem__(self, key: tuple[str, str]) -> int:
        S, Z = key
        return self.entries.get((S, Z), 0)

    def column(self, Z: str) -> ConstructibleFunction:
        """``eu`` of the closure of ``Z`` as a constructible function."""
        return ConstructibleFunction(self.space, {S: self[S, Z] for S in self.space.closure(Z)})

    def with_entry(self, S: str, Z: str, value: int, provenance: str = DECLARED) -> "EuMatrix":
        entries = dict(self.entries)
        prov = dict(self.provenance)
        entries[(S, Z)] = value
        prov[(S, Z)] = provenance
        return EuMatrix(self.space, entries, prov)

    def with_computed(self, S: str, Z: str, f, P) -> "EuMatrix":
        """Fill ``e[S, Z]`` with the Euler obstruction of ``V(f)`` at ``P``."""
        from .euler import eu_at_point

        return self.with_entry(S, Z, eu_at_point(f, P), COMPUTED)

    @classmethod
    def from_json(cls, space: StratifiedSpace, doc: Sequence[Mapping]) -> "EuMatrix":
        entries, prov = {}, {}
        for e in doc:
            key = (str(e["stratum"]), str(e["cycle"]))
            entries[key] = int(e["value"])
            prov[key] = str(e.get("provenance", DECLARED))
        return cls(space, entries, prov)

    def as_json(self) -> list:
        return [
            {"stratum": S, "cycle": Z, "value": v, "provenance": self.provenance[(S, Z)]}
            for (S, Z), v in sorted(self.entries.items())
        ]


def eu_transform(c: Cycle, M: EuMatrix) -> ConstructibleFunction:
    """Send ``sum a_Z [Z]`` to ``sum a_Z eu([Z])``."""
    out = ConstructibleFunction(M.space)
    for Z, a in c.coefficients.items():
        out = out + M.column(Z) * a
    return out


def inverse_transform(m: ConstructibleFunction, M: EuMatrix) -> Cycle:
    """The unique cycle whose transform is ``m``, by back-substitution from the top strata down."""
    space = M.space
    residual = dict(m.values)
    coeffs: dict[str, Number] = {}
    for Z in reversed(space.order):
        a = residual[Z]
        if a:
            coeffs[Z] = a
            for S in space.closure(Z):
                residual[S] -= a * M[S, Z]
    return Cycle(coeffs)


def weighted_chi_strata(X: StratifiedSpace, m: ConstructibleFunction,
                        over: Iterable[str] | None = None) -> Number:
    names = X.names if over is None else over
    return sum(X[S].chi * m[S] for S in names)


def weighted_chi_levels(X: StratifiedSpace, m: ConstructibleFunction,
                        over: Iterable[str] | None = None) -> Number:
    """``sum_n n * chi(m^-1(n))``."""
    names = X.names if over is None else over
    levels: dict = defaultdict(int)
    for S in names:
        levels[m[S]] += X[S].chi
    return sum(n * chi for n, chi in levels.items())


def weighted_chi(X: StratifiedSpace, m: ConstructibleFunction,
                 over: Iterable[str] | None = None) -> Number:
    """Weighted Euler characteristic of ``m``, optionally restricted to the strata ``over``."""
    over = None if over is None else tuple(over)
    a = weighted_chi_strata(X, m, over)
    b = weighted_chi_levels(X, m, over)
    if a != b:
        raise AssertionError(f"weighted Euler characteristic formulas disagree: {a} != {b}")
    return a


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    return v
