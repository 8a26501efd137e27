"""Nash blow-ups of hypersurfaces and Segre classes of their fibres.

For ``Z = V(f)`` in affine n-space the Nash blow-up is the closure of the
graph of the Gauss map ``x -> [df/dx_1 : ... : df/dx_n]``.  The Segre class of
the fibre over a point ``P`` is obtained by blowing the graph up along that
fibre (adding a projective block proportional to ``x - P``) and reading the
bidegrees of the exceptional divisor ``D``.  Because ``O(D)`` restricts to
``O(-1)`` of the new block on ``D``, the pushforward of
``[D] - D.[D] + D^2.[D] - ...`` has j-plane coefficient
``int_D h^j * zeta^(dim D - j)``, with ``h`` and ``zeta`` the hyperplane
classes of the Gauss and exceptional blocks.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import (
    NotOnHypersurfaceError,
    NotSquarefreeError,
    SeedInstabilityError,
)
from .poly import (
    Ideal,
    Polynomial,
    Ring,
    dimension_and_degree,
    generic_linear_form,
    is_squarefree,
    saturate,
    saturate_by,
    zero_dim_length,
)
from .poly.ideal import generic_coefficients
from .poly.polynomial import to_qq

DEFAULT_SEEDS = (0, 1, 2)
# entries of the chart route's random coordinate change lie in [-COORD_RANGE, COORD_RANGE] \ {0}
COORD_RANGE = 9


@dataclass(frozen=True)
class SegreVector:
    """Coefficients ``s[j]`` of the j-plane class in the Gauss projective space."""

    entries: tuple[int, ...]
    tables: dict = field(default_factory=dict, compare=False, repr=False)

    def __getitem__(self, j):
        return self.entries[j]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def alternating_sum(self) -> int:
        return sum((-1) ** m * s for m, s in enumerate(self.entries))


@dataclass(frozen=True)
class MultidegreeTable:
    """Degrees of a multiprojective scheme cut by generic hyperplanes.

    ``entries[(a, b, ...)]`` is the number of points (with multiplicity) left
    after cutting with ``a`` generic hyperplanes from the first block, ``b``
    from the second, and so on, where the counts sum to ``dimension``.
    """

    blocks: tuple[str, ...]
    dimension: int
    entries: dict

    def __getitem__(self, key):
        return self.entries[tuple(key)]

    def as_json(self) -> dict:
        return {
            "blocks": list(self.blocks),
            "dimension": self.dimension,
            "entries": [[list(k), v] for k, v in sorted(self.entries.items())],
        }


class GaussGraph:
    """The Nash blow-up of ``V(f)``, presented as the closure of the Gauss graph.

    The ring has an affine block ``x`` holding the variables of ``f`` and a
    projective block ``y`` of gradient coordinates named ``g_<var>``.
    """

    def __init__(self, f: Polynomial):
        self.f = f
        self.n = f.ring.nvars
        self.d = self.n - 1
        xnames = list(f.ring.names)
        self.ring = Ring.from_blocks(x=xnames, y=[f"g_{v}" for v in xnames], projective=["y"])
        self._fx = f.rename(self.ring, list(range(self.n)))

    @property
    def x(self) -> list[Polynomial]:
        return [Polynomial.var(self.ring, self.ring.names[i]) for i in self.ring.block("x")]

    @property
    def y(self) -> list[Polynomial]:
        return [Polynomial.var(self.ring, self.ring.names[i]) for i in self.ring.block("y")]

    def partials(self) -> list[Polynomial]:
        return [self._fx.diff(i) for i in range(self.n)]

    def minors(self) -> list[Polynomial]:
        y, df = self.y, self.partials()
        return [y[i] * df[j] - y[j] * df[i] for i, j in itertools.combinations(range(self.n), 2)]

    @cached_property
    def graph_ideal(self) -> Ideal:
        base = Ideal([self._fx] + self.minors(), self.ring)
        return saturate(base, Ideal(self.partials(), self.ring))

    def __repr__(self):
        return f"GaussGraph(f={self.f}, n={self.n})"


def gauss_graph(f: Polynomial) -> GaussGraph:
    """Validate ``f`` and return its Gauss graph (the ideal is built lazily)."""
    if f.ring.nvars < 2:
        raise ValueError("need at least two variables")
    if f.is_constant():
        raise ValueError("f must be nonconstant")
    if not is_squarefree(f):
        raise NotSquarefreeError(f"{f} is not squarefree")
    return GaussGraph(f)


def _check_point(f: Polynomial, P: Sequence) -> tuple:
    P = tuple(to_qq(p) for p in P)
    if len(P) != f.ring.nvars:
        raise ValueError(f"point has {len(P)} coordinates, expected {f.ring.nvars}")
    if f.evaluate(P) != 0:
        raise NotOnHypersurfaceError(f"f does not vanish at {tuple(map(str, P))}")
    return P


def fiber_ideal(G: GaussGraph, P: Sequence) -> Ideal:
    """Scheme-theoretic fibre of the Nash blow-up over ``P``."""
    P = _check_point(G.f, P)
    shifts = [xi - p for xi, p in zip(G.x, P)]
    return G.graph_ideal + shifts


# -- multidegrees -------------------------------------------------------------------

def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _slice(I: Ideal, counts: dict[str, int], seed: int) -> Ideal:
    """Cut ``I`` by seeded generic hyperplanes, eliminating one variable per form.

    Projective blocks also get a generic chart ``l = 1``.
    """
    ring = I.ring
    forms: list[tuple[str, Polynomial]] = []
    for block in ring.block_names():
        k = counts.get(block, 0)
        kind = ring.kind(block)
        for draw in range(k):
            forms.append((block, generic_linear_form(ring, block, seed, draw, affine=kind != "projective")))
        if kind == "projective":
            forms.append((block, generic_linear_form(ring, block, seed, k) - 1))
    # solve each form for the last still-free variable of its block
    images: list[Polynomial | None] = [Polynomial.var(ring, v) for v in ring.names]
    solved: set[int] = set()
    for block, form in forms:
        # express the form in the remaining variables first
        form = form.compose(images)
        free = [i for i in ring.block(block) if i not in solved and form.coefficient(_unit(ring, i))]
        if not free:
            if form.is_constant() and form:
                return Ideal([Polynomial.constant(ring, 1)], ring)
            raise SeedInstabilityError("degenerate generic hyperplane")
        v = free[-1]
        c = form.coefficient(_unit(ring, v))
        expr = (Polynomial.var(ring, ring.names[v]) * c - form) * (1 / c)
        images = [img.compose(_substitution(ring, v, expr)) for img in images]
        solved.add(v)
    keep = [i for i in range(ring.nvars) if i not in solved]
    blocks = []
    for b, idx in ring.blocks:
        new = tuple(keep.index(i) for i in idx if i in keep)
        blocks.append((b, new))
    small = Ring(tuple(ring.names[i] for i in keep), tuple(blocks))
    imgs_small = [_to_small(img, small, keep) for img in images]
    gens = [g.compose(imgs_small) for g in I.generators]
    return Ideal(gens, small)


def _unit(ring: Ring, i: int) -> tuple[int, ...]:
    e = [0] * ring.nvars
    e[i] = 1
    return tuple(e)


def _substitution(ring: Ring, v: int, expr: Polynomial) -> list[Polynomial]:
    return [expr if i == v else Polynomial.var(ring, ring.names[i]) for i in range(ring.nvars)]


def _to_small(p: Polynomial, small: Ring, keep: list[int]) -> Polynomial:
    t = {}
    for e, c in p.terms.items():
        t[tuple(e[i] for i in keep)] = c
    return Polynomial._raw(small, t)


def scheme_dimension(I: Ideal) -> int:
    """Dimension of the multiprojective scheme cut out by ``I``."""
    dim, _ = dimension_and_degree(I)
    return dim - sum(1 for b in I.ring.block_names() if I.ring.kind(b) == "projective")


def multidegree_table(I: Ideal, dimension: int | None = None, seed: int = 0) -> MultidegreeTable:
    """Multidegrees of ``I`` for a single seed."""
    if dimension is None:
        dimension = scheme_dimension(I)
    blocks = tuple(I.ring.block_names())
    entries = {}
    for counts in _compositions(dimension, len(blocks)):
        sliced = _slice(I, dict(zip(blocks, counts)), seed)
        try:
            entries[counts] = zero_dim_length(sliced)
        except ValueError as exc:
            raise SeedInstabilityError(
                f"slice {counts} is not zero-dimensional for seed {seed}; "
                "dimension mismatch or non-generic hyperplanes"
            ) from exc
    return MultidegreeTable(blocks, dimension, entries)


def multidegrees(I: Ideal, dimension: int | None = None,
                 seeds: Sequence[int] = DEFAULT_SEEDS) -> MultidegreeTable:
    """Multidegree table of ``I``, checked for agreement across ``seeds``."""
    if dimension is None:
        dimension = scheme_dimension(I)
    tables = [multidegree_table(I, dimension, s) for s in seeds]
    _require_stable(tables, seeds)
    return tables[0]


def _require_stable(tables, seeds):
    first = tables[0].entries
    for t, s in zip(tables[1:], seeds[1:]):
        if t.entries != first:
            raise SeedInstabilityError(
                f"multidegrees differ between seeds {seeds[0]} and {s}: {first} vs {t.entries}"
            )


# -- the exceptional divisor ------------------------------------------------------

def random_coordinates(n: int, seed: int) -> list[list[int]]:
    """Seeded integer matrix with small entries and no vanishing square minor.

    Nonzero minors keep every coordinate subspace (and so every special
    direction spanned by coordinate vectors) out of the chosen charts.
    """
    rng = random.Random(f"localeu:coords:{n}:{seed}")
    entries = [c for c in range(-COORD_RANGE, COORD_RANGE + 1) if c]
    while True:
        A = [[rng.choice(entries) for _ in range(n)] for _ in range(n)]
        if _minors_nonzero(A):
            return A


def _minors_nonzero(A) -> bool:
    n = len(A)
    for k in range(1, n + 1):
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(n), k):
                if _det([[A[i][j] for j in cols] for i in rows]) == 0:
                    return False
    return True


def _det(A) -> Fraction:
    M = [[Fraction(v) for v in row] for row in A]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            k = M[r][c] / M[c][c]
            for j in range(c, n):
                M[r][j] -= k * M[c][j]
    return det


def linear_substitution(f: Polynomial, A: Sequence[Sequence[int]], P: Sequence = None) -> Polynomial:
    """``f(P + A x)`` in the ring of ``f``."""
    ring = f.ring
    n = ring.nvars
    X = [Polynomial.var(ring, v) for v in ring.names]
    P = [0] * n if P is None else P
    images = [sum((X[j] * A[i][j] for j in range(n)), Polynomial.constant(ring, P[i]))
              for i in range(n)]
    return f.compose(images)


def exceptional_chart(f: Polynomial, P: Sequence, seed: int) -> Ideal:
    """Ideal of the exceptional divisor in one affine chart, in generic coordinates.

    Coordinates are moved so that ``P`` is the origin and then changed by a
    seeded random matrix; the blow-up chart ``x = s*(1, e_2, ..., e_n)`` and
    the Gauss chart ``y_1 = 1`` are used.  On this chart the graph closure
    is exactly the saturation by ``s * df/dx_1``.  The result lives in a ring
    with chart blocks ``y`` (``g_2..g_n``) and ``z`` (``e_2..e_n``).
    """
    n = f.ring.nvars
    F = linear_substitution(f, random_coordinates(n, seed), P)
    comps = F.homogeneous_components()
    if 0 in comps:
        raise NotOnHypersurfaceError("f does not vanish at the point")
    m = min(comps)
    ring = Ring.from_blocks(
        s=["s"], y=[f"g{i}" for i in range(2, n + 1)], z=[f"e{i}" for i in range(2, n + 1)],
        charts=["y", "z"],
    )
    s = Polynomial.var(ring, "s")
    u = [Polynomial.constant(ring, 1)] + [Polynomial.var(ring, f"e{i}") for i in range(2, n + 1)]
    g = Polynomial.constant(ring, 0)
    grads = [Polynomial.constant(ring, 0) for _ in range(n)]
    for k, Fk in comps.items():
        sk = s ** (k - m)
        g = g + Fk.compose(u) * sk
        for j in range(n):
            grads[j] = grads[j] + Fk.diff(j).compose(u) * sk
    ys = [Polynomial.constant(ring, 1)] + [Polynomial.var(ring, f"g{i}") for i in range(2, n + 1)]
    gens = [g] + [ys[j] * grads[0] - grads[j] for j in range(1, n)]
    B = saturate_by(saturate_by(Ideal(gens, ring), s), grads[0])
    dring = Ring.from_blocks(
        y=[f"g{i}" for i in range(2, n + 1)], z=[f"e{i}" for i in range(2, n + 1)],
        charts=["y", "z"],
    )
    D = [Polynomial._raw(dring, {e[1:]: c for e, c in p.terms.items() if e[0] == 0})
         for p in B.generators]
    return Ideal(D, dring)


def exceptional_table(f: Polynomial, P: Sequence, seed: int) -> MultidegreeTable:
    D = exceptional_chart(f, P, seed)
    return multidegree_table(D, f.ring.nvars - 2, seed)


def assemble_segre(table: MultidegreeTable, n: int) -> tuple[int, ...]:
    """Pushforward of the fibre's Segre class from the exceptional divisor's bidegrees."""
    top = n - 2
    s = [table[(j, top - j)] for j in range(top + 1)]
    return tuple(s) + (0,) * (n - len(s))


def segre_fiber(G: GaussGraph, P: Sequence, seeds: Sequence[int] = DEFAULT_SEEDS,
                method: str = "blowup") -> SegreVector:
    """Pushforward to the Gauss projective space of the Segre class of the fibre over ``P``.

    ``method="blowup"`` builds the exceptional divisor from the graph ideal with
    exact saturations; only the hyperplane sections depend on the seed.
    ``method="chart"`` works in one affine chart after a seeded random change
    of coordinates (see :func:`exceptional_chart`).  The multidegree tables of
    all seeds must agree or :class:`SeedInstabilityError` is raised.
    """
    P = _check_point(G.f, P)
    if method == "blowup":
        D = blowup_exceptional_ideal(G, P)
        tables = {s: multidegree_table(D, G.n - 2, s) for s in seeds}
    elif method == "chart":
        tables = {s: exceptional_table(G.f, P, s) for s in seeds}
    else:
        raise ValueError(f"unknown method {method!r}")
    _require_stable(list(tables.values()), list(seeds))
    return SegreVector(assemble_segre(tables[seeds[0]], G.n), tables)


# -- global construction ------------------------------------------------------------

def blowup_exceptional_ideal(G: GaussGraph, P: Sequence) -> Ideal:
    """Bihomogeneous ideal of the exceptional divisor, built from the global graph ideal.

    The blow-up of the graph along the fibre is the closure of the graph with a
    projective block ``z`` proportional to ``x - P`` adjoined, obtained by
    saturating with respect to ``(x - P)``; restricting to ``x = P`` gives ``D``.
    """
    P = _check_point(G.f, P)
    n = G.n
    ring = G.ring.extend([f"e_{v}" for v in G.f.ring.names], "z", projective=True)
    lift = [G.ring.names.index(v) for v in G.ring.names]
    graph = [g.rename(ring, lift) for g in G.graph_ideal.generators]
    xs = [Polynomial.var(ring, ring.names[i]) - p for i, p in zip(range(n), P)]
    zs = [Polynomial.var(ring, ring.names[i]) for i in ring.block("z")]
    minors = [zs[i] * xs[j] - zs[j] * xs[i] for i, j in itertools.combinations(range(n), 2)]
    B = saturate(Ideal(graph + minors, ring), Ideal(xs, ring))
    dring = Ring.from_blocks(y=[ring.names[i] for i in ring.block("y")],
                             z=[ring.names[i] for i in ring.block("z")], projective=["y", "z"])
    point = {i: p for i, p in zip(range(n), P)}
    D = []
    for g in B.generators:
        t: dict = {}
        for e, c in g.terms.items():
            v = c
            for i in range(n):
                if e[i]:
                    v = v * point[i] ** e[i]
            if v:
                key = e[n:]
                t[key] = t.get(key, 0) + v
        D.append(Polynomial(dring, t))
    return Ideal(D, dring)
