"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    QQ = Fraction

from .ring import GREVLEX, MonomialOrder, Ring

Exp = tuple[int, ...]
Scalar = Union[int, Fraction, "QQ"]


def to_qq(c) -> "QQ":
    if isinstance(c, str):
        return QQ(Fraction(c))
    if isinstance(c, Fraction):
        return QQ(c.numerator, c.denominator)
    return QQ(c)


class Polynomial:
    """Immutable polynomial over Q in the variables of ``ring``.

    ``terms`` maps exponent tuples to nonzero rationals.  Do not mutate it.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Exp, Scalar] | None = None):
        self.ring = ring
        clean = {}
        n = ring.nvars
        for e, c in (terms or {}).items():
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match {n} variables")
            c = to_qq(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> "Polynomial":
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # -- constructors --------------------------------------------------

    @classmethod
    def constant(cls, ring: Ring, c: Scalar) -> "Polynomial":
        return cls(ring, {(0,) * ring.nvars: c})

    @classmethod
    def var(cls, ring: Ring, name: str) -> "Polynomial":
        e = [0] * ring.nvars
        e[ring.index(name)] = 1
        return cls._raw(ring, {tuple(e): QQ(1)})

    @classmethod
    def parse(cls, text: str, ring: Ring | None = None) -> "Polynomial":
        """Parse ``text`` such as ``"y*u - x*v"`` or ``"3/2*x^2 + (x-1)^3"``.

        Without ``ring`` the variables are taken in natural sort order.
        """
        return _Parser(text, ring).parse()

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def lowest_degree(self) -> int:
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def degree_in(self, indices: Iterable[int]) -> int:
        idx = tuple(indices)
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def is_homogeneous_in(self, indices: Iterable[int]) -> bool:
        idx = tuple(indices)
        return len({sum(e[i] for i in idx) for e in self.terms}) <= 1

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def leading_term(self, order: MonomialOrder = GREVLEX) -> tuple[Exp, "QQ"]:
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self * (1 / c)

    def coefficient(self, e: Exp):
        return self.terms.get(tuple(e), QQ(0))

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        return Polynomial.constant(self.ring, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = v + c
                if v:
                    t[e] = v
                else:
                    del t[e]
        return Polynomial._raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = to_qq(other)
            if not c:
                return Polynomial._raw(self.ring, {})
            return Polynomial._raw(self.ring, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e)
                t[e] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial._raw(self.ring, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            return divide_exact(self, other)
        return self * (1 / to_qq(other))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)) or type(other) is QQ:
            return self.terms == Polynomial.constant(self.ring, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution -------------------------------------

    def diff(self, var: int | str) -> "Polynomial":
        i = self.ring.index(var) if isinstance(var, str) else var
        t = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1:]
                t[e2] = c * k
        return Polynomial._raw(self.ring, t)

    def gradient(self, indices: Sequence[int] | None = None) -> list["Polynomial"]:
        idx = range(self.ring.nvars) if indices is None else indices
        return [self.diff(i) for i in idx]

    def evaluate(self, point: Sequence[Scalar]):
        pt = [to_qq(v) for v in point]
        total = QQ(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def compose(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute ``images[i]`` for variable ``i``; images share one ring."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = images[0].ring
        powers: list[dict[int, Polynomial]] = [{} for _ in images]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = images[i] ** k
            return cache[k]

        result = Polynomial._raw(target, {})
        for e, c in self.terms.items():
            term = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            result = result + term
        return result

    def rename(self, ring: Ring, mapping: Sequence[int] | None = None) -> "Polynomial":
        """Move into ``ring``; variable ``i`` goes to index ``mapping[i]``."""
        if mapping is None:
            mapping = [ring.index(n) for n in self.ring.names]
        n = ring.nvars
        t = {}
        for e, c in self.terms.items():
            e2 = [0] * n
            for i, k in enumerate(e):
                if k:
                    e2[mapping[i]] = k
            t[tuple(e2)] = c
        return Polynomial._raw(ring, t)

    def homogeneous_components(self, indices: Sequence[int] | None = None) -> dict[int, "Polynomial"]:
        idx = tuple(range(self.ring.nvars) if indices is None else indices)
        comps: dict[int, dict] = {}
        for e, c in self.terms.items():
            comps.setdefault(sum(e[i] for i in idx), {})[e] = c
        return {k: Polynomial._raw(self.ring, t) for k, t in sorted(comps.items())}

    # -- printing ----------------------------------------------------------

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[Exp, "QQ"]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, e) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = _fmt(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt(a)}*{mono}"
            out.append((sign, body))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def _fmt(c) -> str:
    f = Fraction(int(c.numerator), int(c.denominator))
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def divide_exact(a: Polynomial, b: Polynomial) -> Polynomial:
    """Return ``a / b``; raise ``ValueError`` if ``b`` does not divide ``a``."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    order = GREVLEX
    lb, cb = b.leading_term(order)
    btail = [(e, c) for e, c in b.terms.items() if e != lb]
    rem = dict(a.terms)
    quo: dict = {}
    while rem:
        m = max(rem, key=order.key)
        c = rem[m]
        q = tuple(x - y for x, y in zip(m, lb))
        if min(q) < 0:
            raise ValueError(f"{b} does not divide {a}")
        qc = c / cb
        quo[q] = qc
        del rem[m]
        for e, cc in btail:
            mm = tuple(x + y for x, y in zip(q, e))
            v = rem.get(mm, 0) - qc * cc
            if v:
                rem[mm] = v
            else:
                rem.pop(mm, None)
    return Polynomial._raw(a.ring, quo)


# -- parser ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def natural_key(name: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


class _Parser:
    def __init__(self, text: str, ring: Ring | None):
        self.tokens = self._tokenize(text)
        self.pos = 0
        if ring is None:
            names = sorted({v for kind, v in self.tokens if kind == "name"}, key=natural_key)
            ring = Ring(tuple(names))
        self.ring = ring

    @staticmethod
    def _tokenize(text: str):
        out = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
            num, name, op = m.groups()
            if num is not None:
                out.append(("num", num))
            elif name is not None:
                out.append(("name", name))
            else:
                out.append(("op", "^" if op == "**" else op))
            pos = m.end()
        return out

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ValueError(f"expected {value!r}, got {tok[1]!r}")
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ValueError("empty polynomial")
        p = self.expr()
        if self.pos != len(self.tokens):
            raise ValueError(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self):
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        p = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    def term(self):
        p = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            q = self.power()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise ValueError("division only by nonzero constants")
                p = p * (1 / q.coefficient((0,) * self.ring.nvars))
        return p

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            return base ** int(val)
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return Polynomial.constant(self.ring, int(val))
        if kind == "name":
            self.take()
            if val not in self.ring.names:
                raise ValueError(f"unknown variable {val!r}")
            return Polynomial.var(self.ring, val)
        if val == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        if val == "-":
            self.take()
            return -self.power()
        raise ValueError(f"unexpected token {val!r}")
