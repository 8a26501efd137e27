"""Variable contexts and monomial orders."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Ring:
    """An ordered list of variable names split into named blocks.

    ``blocks`` maps a block name to the indices of its variables.  When no
    blocks are given all variables live in a single block called ``"main"``.
    Blocks marked projective carry homogeneous coordinates; blocks marked
    as charts hold the affine chart ``v0 = 1`` of a projective space (the
    first homogeneous coordinate is dropped); the rest are affine.

    >>> R = Ring.from_blocks(x=["a", "b"], y=["p", "q"], projective=["y"])
    >>> R.block("y")
    (2, 3)
    """

    names: tuple[str, ...]
    blocks: tuple[tuple[str, tuple[int, ...]], ...] = ()
    projective: frozenset[str] = field(default_factory=frozenset)
    charts: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        if not self.blocks:
            object.__setattr__(self, "blocks", (("main", tuple(range(len(self.names)))),))
        seen = sorted(i for _, idx in self.blocks for i in idx)
        if seen != list(range(len(self.names))):
            raise ValueError("blocks must partition the variables")
        unknown = (set(self.projective) | set(self.charts)) - {b for b, _ in self.blocks}
        if unknown:
            raise ValueError(f"unknown blocks {sorted(unknown)}")
        if self.projective & self.charts:
            raise ValueError("a block cannot be both projective and a chart")

    @classmethod
    def from_blocks(cls, projective: Iterable[str] = (), charts: Iterable[str] = (),
                    **blocks: Sequence[str]) -> "Ring":
        names: list[str] = []
        spec = []
        for bname, vars_ in blocks.items():
            idx = tuple(range(len(names), len(names) + len(vars_)))
            names.extend(vars_)
            spec.append((bname, idx))
        return cls(tuple(names), tuple(spec), frozenset(projective), frozenset(charts))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def block(self, name: str) -> tuple[int, ...]:
        for bname, idx in self.blocks:
            if bname == name:
                return idx
        raise KeyError(name)

    def block_names(self) -> list[str]:
        return [b for b, _ in self.blocks]

    def is_projective(self, block: str) -> bool:
        return block in self.projective

    def kind(self, block: str) -> str:
        if block in self.projective:
            return "projective"
        if block in self.charts:
            return "chart"
        return "affine"

    def extend(self, names: Sequence[str], block: str, *, front: bool = False,
               projective: bool = False) -> "Ring":
        """Return a ring with a new block of variables added."""
        k = len(names)
        if front:
            shifted = tuple((b, tuple(i + k for i in idx)) for b, idx in self.blocks)
            blocks = ((block, tuple(range(k))),) + shifted
            allnames = tuple(names) + self.names
        else:
            n = self.nvars
            blocks = self.blocks + ((block, tuple(range(n, n + k))),)
            allnames = self.names + tuple(names)
        proj = self.projective | {block} if projective else self.projective
        return Ring(allnames, blocks, frozenset(proj), self.charts)

    def __repr__(self):
        parts = []
        for b, idx in self.blocks:
            tag = {"projective": "P", "chart": "C", "affine": "A"}[self.kind(b)]
            parts.append(f"{b}[{tag}]:" + ",".join(self.names[i] for i in idx))
        return f"Ring({'; '.join(parts)})"


class MonomialOrder:
    """A monomial order on exponent tuples.

    ``key(e)`` returns a tuple that compares like the monomial, so
    ``max(terms, key=order.key)`` is the leading monomial.  Supported kinds
    are ``grevlex``, ``lex`` and ``block`` (a sequence of index groups, each
    ordered by grevlex, earlier groups dominating).  Block orders eliminate
    the variables of the leading groups.
    """

    __slots__ = ("kind", "groups", "_cache", "_ncache")

    def __init__(self, kind: str = "grevlex", groups: Sequence[Sequence[int]] = ()):
        if kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "block" and not groups:
            raise ValueError("block order needs at least one group")
        self.kind = kind
        self.groups = tuple(tuple(g) for g in groups) if kind == "block" else ()
        self._cache: dict = {}
        self._ncache: dict = {}

    @classmethod
    def elimination(cls, ring: Ring, eliminate: Sequence[str]) -> "MonomialOrder":
        """Block order eliminating ``eliminate``.

        Items are variable names, or block names when no variable has that name.
        """
        first: list[int] = []
        for item in eliminate:
            if item in ring.names:
                first.append(ring.index(item))
            else:
                first.extend(ring.block(item))
        rest = [i for i in range(ring.nvars) if i not in first]
        groups = [sorted(first)] + ([rest] if rest else [])
        return cls("block", groups)

    def key(self, e: tuple[int, ...]) -> tuple[int, ...]:
        k = self._cache.get(e)
        if k is None:
            if self.kind == "grevlex":
                k = (sum(e),) + tuple(-x for x in reversed(e))
            elif self.kind == "lex":
                k = e
            else:
                k = ()
                for g in self.groups:
                    k += (sum(e[i] for i in g),) + tuple(-e[i] for i in reversed(g))
            self._cache[e] = k
        return k

    def nkey(self, e: tuple[int, ...]) -> tuple[int, ...]:
        """Negated key, for use with min-heaps."""
        k = self._ncache.get(e)
        if k is None:
            k = tuple(-x for x in self.key(e))
            self._ncache[e] = k
        return k

    def _ident(self):
        return (self.kind, self.groups)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder(block, {list(map(list, self.groups))})"
        return f"MonomialOrder({self.kind})"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")
