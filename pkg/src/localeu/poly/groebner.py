"""Buchberger's algorithm on raw ``{exponent: coefficient}`` dictionaries.

The engine uses the sugar selection strategy and the Gebauer-Moeller
criteria.  Every reduction step is charged against a step budget; running
out raises :class:`~localeu.errors.ResourceLimitError`.
"""

from __future__ import annotations

import contextlib
import contextvars
from heapq import heapify, heappop, heappush

from ..errors import ResourceLimitError
from .polynomial import QQ
from .ring import MonomialOrder

# Sized for up to four variables per block and input degree four.
DEFAULT_BUDGET = 20_000_000

_budget = contextvars.ContextVar("localeu_budget", default=DEFAULT_BUDGET)


@contextlib.contextmanager
def step_budget(steps: int):
    """Temporarily set the default budget (term operations per basis)."""
    token = _budget.set(int(steps))
    try:
        yield
    finally:
        _budget.reset(token)


def current_budget() -> int:
    return _budget.get()


class _Counter:
    __slots__ = ("left", "total")

    def __init__(self, budget):
        self.left = budget
        self.total = budget

    def charge(self, k):
        self.left -= k
        if self.left < 0:
            raise ResourceLimitError(
                f"Groebner step budget of {self.total} term operations exhausted"
            )


class _Elem:
    __slots__ = ("lm", "tail", "poly", "sugar", "mask", "deg")

    def __init__(self, lm, poly, sugar):
        self.lm = lm
        self.poly = poly
        self.tail = [(m, c) for m, c in poly.items() if m != lm]
        self.sugar = sugar
        self.mask = _mask(lm)
        self.deg = sum(lm)


def _mask(m):
    r = 0
    for i, k in enumerate(m):
        if k:
            r |= 1 << i
    return r


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _make_monic(p, order):
    lm = max(p, key=order.key)
    c = p[lm]
    if c != 1:
        inv = 1 / c
        p = {m: v * inv for m, v in p.items()}
    return lm, p


def reduce_dict(p, reducers, order, counter=None, full=True):
    """Normal form of ``p`` (consumed) modulo monic ``reducers`` (list of _Elem)."""
    if counter is None:
        counter = _Counter(_budget.get())
    nkey = order.nkey
    heap = [(nkey(m), m) for m in p]
    heapify(heap)
    out = {}
    red = [(r.mask, r.lm, r.tail) for r in reducers]
    while heap:
        m = heappop(heap)[1]
        c = p.pop(m, None)
        if c is None:
            continue
        mm_mask = 0
        for i, k in enumerate(m):
            if k:
                mm_mask |= 1 << i
        hit = None
        for rmask, lm, tail in red:
            if rmask & ~mm_mask == 0 and _divides(lm, m):
                hit = (lm, tail)
                break
        if hit is None:
            out[m] = c
            if not full:
                out.update(p)
                return out
            continue
        lm, tail = hit
        q = tuple(x - y for x, y in zip(m, lm))
        for mg, cg in tail:
            mm = tuple(x + y for x, y in zip(q, mg))
            v = p.get(mm)
            if v is None:
                p[mm] = -c * cg
                heappush(heap, (nkey(mm), mm))
            else:
                v = v - c * cg
                if v:
                    p[mm] = v
                else:
                    del p[mm]
        counter.charge(len(tail) + 1)
    return out


def _spoly(a: _Elem, b: _Elem, lcm):
    qa = tuple(x - y for x, y in zip(lcm, a.lm))
    qb = tuple(x - y for x, y in zip(lcm, b.lm))
    p = {}
    for m, c in a.tail:
        p[tuple(x + y for x, y in zip(qa, m))] = c
    for m, c in b.tail:
        mm = tuple(x + y for x, y in zip(qb, m))
        v = p.get(mm)
        if v is None:
            p[mm] = -c
        else:
            v = v - c
            if v:
                p[mm] = v
            else:
                del p[mm]
    return p


def groebner_dicts(polys, order: MonomialOrder, budget: int | None = None):
    """Reduced Groebner basis of the ideal spanned by ``polys``.

    ``polys`` is an iterable of nonzero dicts; the result is a list of monic
    dicts sorted by decreasing leading monomial.
    """
    counter = _Counter(_budget.get() if budget is None else budget)
    key = order.key
    elems: list[_Elem] = []
    active: list[int] = []
    pairs: list[tuple] = []  # (sugar, key(lcm), lcm, i, j)

    def update(h: int):
        eh = elems[h]
        lh = eh.lm
        cand = [(g, _lcm(lh, elems[g].lm)) for g in active]
        kept = []
        for idx, (g, l) in enumerate(cand):
            if _coprime(lh, elems[g].lm):
                kept.append((g, l))
                continue
            dominated = False
            for g2, l2 in cand[idx + 1:]:
                if _divides(l2, l):
                    dominated = True
                    break
            if not dominated:
                for g2, l2 in kept:
                    if _divides(l2, l):
                        dominated = True
                        break
            if not dominated:
                kept.append((g, l))
        new_pairs = []
        for g, l in kept:
            if _coprime(lh, elems[g].lm):
                continue
            eg = elems[g]
            dl = sum(l)
            s = max(eh.sugar + dl - eh.deg, eg.sugar + dl - eg.deg)
            new_pairs.append((s, key(l), l, g, h))
        survivors = []
        for pr in pairs:
            l = pr[2]
            if _divides(lh, l):
                l1 = _lcm(elems[pr[3]].lm, lh)
                l2 = _lcm(elems[pr[4]].lm, lh)
                if l1 != l and l2 != l:
                    continue
            survivors.append(pr)
        pairs[:] = survivors + new_pairs
        active[:] = [g for g in active if not _divides(lh, elems[g].lm)] + [h]

    def add(p, sugar):
        lm, p = _make_monic(p, order)
        elems.append(_Elem(lm, p, sugar))
        update(len(elems) - 1)
        return not any(lm)

    gens = [dict(p) for p in polys if p]
    gens.sort(key=lambda p: key(max(p, key=key)))
    for p in gens:
        sugar = max(sum(m) for m in p)
        p = reduce_dict(p, [elems[g] for g in active], order, counter)
        if p:
            if add(p, sugar):
                return [{(0,) * len(next(iter(p))): QQ(1)}]

    while pairs:
        best = min(range(len(pairs)), key=lambda i: (pairs[i][0], pairs[i][1]))
        s, _, l, i, j = pairs.pop(best)
        sp = _spoly(elems[i], elems[j], l)
        if not sp:
            continue
        h = reduce_dict(sp, [elems[g] for g in active], order, counter)
        if h:
            if add(h, s):
                one = {(0,) * len(l): QQ(1)}
                return [one]

    basis = [elems[g] for g in active]
    out = []
    for k, e in enumerate(basis):
        others = basis[:k] + basis[k + 1:]
        tail = reduce_dict(dict(e.tail), others, order, counter)
        tail[e.lm] = QQ(1)
        out.append(tail)
    out.sort(key=lambda p: key(max(p, key=key)), reverse=True)
    return out


def is_groebner_dicts(basis, order: MonomialOrder) -> bool:
    """Buchberger certificate: every S-polynomial reduces to zero."""
    elems = []
    for p in basis:
        lm, q = _make_monic(dict(p), order)
        elems.append(_Elem(lm, q, 0))
    for a in range(len(elems)):
        for b in range(a + 1, len(elems)):
            l = _lcm(elems[a].lm, elems[b].lm)
            sp = _spoly(elems[a], elems[b], l)
            if sp and reduce_dict(sp, elems, order, _Counter(10**12)):
                return False
    return True
