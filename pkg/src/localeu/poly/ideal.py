"""Ideals with cached Groebner bases, and the operations built on them."""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Sequence

from ..errors import EmptySchemeError
from .groebner import groebner_dicts, is_groebner_dicts, reduce_dict, _Elem, _make_monic
from .polynomial import Polynomial, QQ
from .ring import GREVLEX, MonomialOrder, Ring


class Ideal:
    """An ideal given by generators, with reduced Groebner bases cached per order."""

    __slots__ = ("ring", "generators", "_bases")

    def __init__(self, generators: Iterable[Polynomial], ring: Ring | None = None, *,
                 basis: tuple[MonomialOrder, Sequence[Polynomial]] | None = None):
        gens = tuple(g for g in generators if not g.is_zero())
        if ring is None:
            if not gens:
                raise ValueError("cannot infer the ring of an ideal without generators")
            ring = gens[0].ring
        if any(g.ring != ring for g in gens):
            raise ValueError("generators live in different rings")
        self.ring = ring
        self.generators = gens
        self._bases: dict[MonomialOrder, tuple[Polynomial, ...]] = {}
        if basis is not None:
            self._bases[basis[0]] = tuple(basis[1])

    @property
    def cached_basis(self):
        """``(order, basis)`` for some cached reduced basis, or ``None``."""
        for order, gb in self._bases.items():
            return order, gb
        return None

    def groebner_basis(self, order: MonomialOrder = GREVLEX,
                       budget: int | None = None) -> tuple[Polynomial, ...]:
        gb = self._bases.get(order)
        if gb is None:
            dicts = groebner_dicts([g.terms for g in self.generators], order, budget)
            gb = tuple(Polynomial._raw(self.ring, d) for d in dicts)
            self._bases[order] = gb
        return gb

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.generators

    def reduce(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        return normal_form(f, self.groebner_basis(order), order)

    def __contains__(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(g in self for g in other.generators)

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Ideal):
            return Ideal(self.generators + other.generators, self.ring)
        return Ideal(self.generators + tuple(other), self.ring)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal((a * b for a in self.generators for b in other.generators), self.ring)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring != other.ring:
            return False
        return self.groebner_basis() == other.groebner_basis()

    def __hash__(self):
        return hash((self.ring, self.groebner_basis()))

    def map(self, fn) -> "Ideal":
        gens = [fn(g) for g in self.generators]
        return Ideal(gens, gens[0].ring if gens else None)

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.generators) + ")"


def reduced_groebner(I: Ideal, order: MonomialOrder = GREVLEX,
                     budget: int | None = None) -> Ideal:
    """Return ``I`` with its reduced Groebner basis for ``order`` cached."""
    if not I.generators:
        raise ValueError("reduced_groebner needs nonzero generators")
    gb = I.groebner_basis(order, budget)
    return Ideal(I.generators, I.ring, basis=(order, gb))


def normal_form(f: Polynomial, basis: Sequence[Polynomial],
                order: MonomialOrder = GREVLEX) -> Polynomial:
    elems = []
    for g in basis:
        lm, p = _make_monic(dict(g.terms), order)
        elems.append(_Elem(lm, p, 0))
    return Polynomial._raw(f.ring, reduce_dict(dict(f.terms), elems, order))


def is_groebner(basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> bool:
    return is_groebner_dicts([g.terms for g in basis if g], order)


def is_reduced(basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> bool:
    """No term of any element is divisible by another element's leading monomial."""
    lms = [g.leading_term(order)[0] for g in basis]
    for i, g in enumerate(basis):
        if g.leading_term(order)[1] != 1:
            return False
        for e in g.terms:
            for j, lm in enumerate(lms):
                if j != i and all(a <= b for a, b in zip(lm, e)):
                    return False
    return True


# -- extra variables ----------------------------------------------------------

def _fresh_name(ring: Ring, base: str) -> str:
    name, k = base, 0
    while name in ring.names:
        k += 1
        name = f"{base}{k}"
    return name


def _lift(ring2: Ring, polys: Iterable[Polynomial]) -> list[Polynomial]:
    # move into ring2 = ring extended by one variable in front
    return [Polynomial._raw(ring2, {(0,) + e: c for e, c in p.terms.items()}) for p in polys]


def _drop_first(ring: Ring, polys: Iterable[Polynomial]) -> list[Polynomial]:
    return [Polynomial._raw(ring, {e[1:]: c for e, c in p.terms.items()})
            for p in polys if all(e[0] == 0 for e in p.terms)]


def _eliminate_first(ring: Ring, ring2: Ring, gens: list[Polynomial],
                     budget: int | None) -> Ideal:
    order = MonomialOrder("block", [[0], list(range(1, ring2.nvars))])
    gb = Ideal(gens, ring2).groebner_basis(order, budget)
    kept = _drop_first(ring, gb)
    return Ideal(kept, ring, basis=(GREVLEX, kept))


def saturate_by(I: Ideal, g: Polynomial, budget: int | None = None) -> Ideal:
    """``I : g^oo`` via an auxiliary variable ``t`` and the relation ``1 - t*g``."""
    ring = I.ring
    if g.is_zero():
        raise ValueError("cannot saturate by zero")
    if g.is_constant():
        return I
    t = _fresh_name(ring, "_t")
    ring2 = ring.extend([t], "_sat", front=True)
    gens = _lift(ring2, I.generators)
    tg = _lift(ring2, [g])[0] * Polynomial.var(ring2, t)
    gens.append(1 - tg)
    return _eliminate_first(ring, ring2, gens, budget)


def saturate(I: Ideal, J: Ideal, budget: int | None = None) -> Ideal:
    """``I : J^oo``, computed as the intersection of ``I : g^oo`` over generators ``g`` of ``J``."""
    if J.is_zero():
        raise ValueError("saturate needs a nonzero ideal J")
    parts = [saturate_by(I, g, budget) for g in J.generators]
    result = parts[0]
    for p in parts[1:]:
        result = intersect(result, p, budget)
    return result


def intersect(I: Ideal, J: Ideal, budget: int | None = None) -> Ideal:
    ring = I.ring
    t = _fresh_name(ring, "_t")
    ring2 = ring.extend([t], "_int", front=True)
    T = Polynomial.var(ring2, t)
    gens = [T * p for p in _lift(ring2, I.generators)]
    gens += [(1 - T) * p for p in _lift(ring2, J.generators)]
    return _eliminate_first(ring, ring2, gens, budget)


def quotient(I: Ideal, J: Ideal, budget: int | None = None) -> Ideal:
    """Ideal quotient ``I : J``."""
    result = None
    for g in J.generators:
        inter = intersect(I, Ideal([g]), budget)
        q = Ideal([p / g for p in inter.groebner_basis()], I.ring)
        result = q if result is None else intersect(result, q, budget)
    if result is None:
        raise ValueError("quotient by the zero ideal")
    return result


def polynomial_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd, through the lcm generating ``(a) cap (b)``."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return Polynomial.constant(a.ring, 1)
    inter = intersect(Ideal([a]), Ideal([b])).groebner_basis()
    assert len(inter) == 1, "intersection of principal ideals is principal"
    return ((a * b) / inter[0]).monic()


def is_squarefree(f: Polynomial) -> bool:
    g = f
    for d in f.gradient():
        g = polynomial_gcd(g, d)
        if g.is_constant():
            return True
    return g.is_constant()


# -- dimension and degree -------------------------------------------------------

def _minimalize(monos):
    monos = sorted(set(monos), key=sum)
    out = []
    for m in monos:
        if not any(all(a <= b for a, b in zip(o, m)) for o in out):
            out.append(m)
    return out


def hilbert_numerator(monos: Sequence[tuple[int, ...]], n: int) -> list[int]:
    """Numerator ``N(t)`` of the Hilbert series ``N(t)/(1-t)^n`` of ``k[x]/(monos)``."""
    gens = _minimalize(monos)
    if not gens:
        return [1]
    if not any(gens[0]):
        return [0]
    mixed = [m for m in gens if sum(1 for k in m if k) > 1]
    if not mixed:
        num = [1]
        for m in gens:
            d = sum(m)
            factor = [0] * (d + 1)
            factor[0], factor[d] = 1, -1
            num = _polymul(num, factor)
        return num
    counts = [sum(1 for m in mixed if m[i]) for i in range(n)]
    i = max(range(n), key=lambda j: counts[j])
    x = tuple(1 if j == i else 0 for j in range(n))
    plus = [m for m in gens if not m[i]] + [x]
    colon = [m[:i] + (max(m[i] - 1, 0),) + m[i + 1:] for m in gens]
    a = hilbert_numerator(plus, n)
    b = [0] + hilbert_numerator(colon, n)
    return _polyadd(a, b)


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _polyadd(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _divide_one_minus_t(num):
    # num(1) == 0; synthetic division by (1 - t)
    q = []
    acc = 0
    for c in num[:-1]:
        acc += c
        q.append(acc)
    return q or [0]


def independent_set_dimension(leading: Sequence[tuple[int, ...]], n: int) -> int:
    """Largest set of variables containing the support of no leading monomial."""
    supports = [frozenset(i for i, k in enumerate(m) if k) for m in leading]
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            s = frozenset(S)
            if not any(sup <= s for sup in supports):
                return size
    return -1


def dimension_and_degree(I: Ideal, budget: int | None = None) -> tuple[int, int]:
    """Krull dimension and degree of ``k[x]/I``.

    For a zero-dimensional ideal the degree is the vector-space dimension of
    the quotient ring; in general it is read off the Hilbert series of the
    leading-term ideal for grevlex.
    """
    gb = I.groebner_basis(GREVLEX, budget) if I.generators else ()
    n = I.ring.nvars
    if any(g.is_constant() for g in gb):
        raise EmptySchemeError("the unit ideal defines the empty scheme")
    lms = [g.leading_term(GREVLEX)[0] for g in gb]
    dim = independent_set_dimension(lms, n)
    num = hilbert_numerator(lms, n)
    k = 0
    while sum(num) == 0:
        num = _divide_one_minus_t(num)
        k += 1
    if n - k != dim:
        raise AssertionError(f"Hilbert dimension {n - k} != independent-set dimension {dim}")
    return dim, sum(num)


def zero_dim_length(I: Ideal, budget: int | None = None) -> int:
    """Vector-space dimension of ``k[x]/I``; 0 for the unit ideal."""
    try:
        dim, deg = dimension_and_degree(I, budget)
    except EmptySchemeError:
        return 0
    if dim != 0:
        raise ValueError(f"ideal is not zero-dimensional (dimension {dim})")
    return deg


# -- generic forms ----------------------------------------------------------------

COEFFICIENTS = tuple(c for c in range(-32, 33) if c)


def generic_coefficients(k: int, seed: int, tag: str, draw: int = 0) -> list[int]:
    rng = random.Random(f"localeu:{seed}:{tag}:{draw}")
    return [rng.choice(COEFFICIENTS) for _ in range(k)]


def generic_linear_form(ring: Ring, block: str, seed: int, draw: int = 0,
                        affine: bool = False) -> Polynomial:
    """Seeded degree-one form in the variables of ``block``.

    The same ``(ring, block, seed, draw)`` always gives the same form.  With
    ``affine=True`` a seeded constant term is added.
    """
    idx = ring.block(block)
    if not idx:
        raise ValueError(f"block {block!r} is empty")
    coeffs = generic_coefficients(len(idx) + 1, seed, f"{block}:{len(idx)}", draw)
    terms = {}
    for i, c in zip(idx, coeffs):
        e = [0] * ring.nvars
        e[i] = 1
        terms[tuple(e)] = c
    if affine:
        terms[(0,) * ring.nvars] = coeffs[-1]
    return Polynomial(ring, terms)
