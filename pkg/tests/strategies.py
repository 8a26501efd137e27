"""Random stratified spaces, Euler obstruction matrices and cycles for property tests."""

import itertools
import random

from localeu.constructible import Cycle, EuMatrix, StratifiedSpace, Stratum


def random_space(rng: random.Random, k: int, free_chi_zero: bool = False) -> StratifiedSpace:
    strata = []
    for i in range(k):
        dim = rng.randint(0, 3)
        below = tuple(s.name for s in strata if s.dim < dim and rng.random() < 0.5)
        fixed = rng.random() < 0.5
        chi = 0 if (free_chi_zero and not fixed) else rng.randint(-3, 3)
        strata.append(Stratum(f"S{i}", dim, chi, fixed, below))
    return StratifiedSpace(strata)


def random_eu(rng: random.Random, X: StratifiedSpace) -> EuMatrix:
    entries = {(S, Z): rng.randint(-3, 3) for Z in X.names for S in X.closure(Z) if S != Z}
    return EuMatrix(X, entries)


def random_cycle(rng: random.Random, X: StratifiedSpace) -> Cycle:
    return Cycle({n: rng.randint(-3, 3) for n in X.names})


def posets(k: int):
    """Every closure order on ``k`` labelled strata, realised with dims 0..k-1.

    Strata are listed by increasing dimension, so any set of "S_j covers S_i"
    relations with ``i < j`` is admissible; together these cover all poset
    shapes on ``k`` elements.
    """
    pairs = [(i, j) for j in range(k) for i in range(j)]
    for mask in range(1 << len(pairs)):
        covers = [[] for _ in range(k)]
        for b, (i, j) in enumerate(pairs):
            if mask >> b & 1:
                covers[j].append(f"S{i}")
        yield StratifiedSpace(
            Stratum(f"S{j}", j, 1 - j % 2, bool(j % 2 == 0), tuple(covers[j])) for j in range(k)
        )


def all_cycles(X: StratifiedSpace, lo: int = -3, hi: int = 3):
    for coeffs in itertools.product(range(lo, hi + 1), repeat=len(X)):
        yield Cycle(dict(zip(X.names, coeffs)))
