"""Seeded generators for spaces, points, measures and mixing weights.

Exact mode draws small rationals so every law can be checked with zero
tolerance; float mode draws uniforms from the unit box.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .measure import DiscreteMeasure
from .metric import Euclidean, MatrixSpace, MetricSpace, RealLine

SPACE_KINDS = ("line", "plane", "matrix")
R_GRID = (Fraction(0), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(1))


def random_matrix_space(rng: random.Random, n: int | None = None, *, exact: bool = True) -> MatrixSpace:
    """Shortest-path closure of a random complete graph with weights in 1..9."""
    n = rng.randint(2, 6) if n is None else n
    d = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d[i][j] = d[j][i] = rng.randint(1, 9)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    if not exact:
        d = [[float(v) for v in row] for row in d]
    return MatrixSpace(d)


def random_space(rng: random.Random, kind: str | None = None, *, exact: bool = True) -> MetricSpace:
    kind = rng.choice(SPACE_KINDS) if kind is None else kind
    if kind == "line":
        return RealLine()
    if kind == "plane":
        return Euclidean(2)
    if kind == "matrix":
        return random_matrix_space(rng, exact=exact)
    raise ValueError(f"unknown space kind {kind!r}")


def _coord(rng: random.Random, exact: bool, scale: int):
    if exact:
        return Fraction(rng.randint(-scale * 4, scale * 4), 4)
    return rng.uniform(-scale, scale)


def random_point(rng: random.Random, space: MetricSpace, *, exact: bool = True, scale: int = 3):
    if isinstance(space, RealLine):
        return _coord(rng, exact, scale)
    if isinstance(space, Euclidean):
        return tuple(_coord(rng, exact, scale) for _ in range(space.dim))
    if isinstance(space, MatrixSpace):
        return rng.randrange(space.n)
    raise TypeError(f"no point generator for {space!r}")


def random_weights(rng: random.Random, k: int, *, exact: bool = True) -> list:
    """Normalized positive weights (a crude symmetric Dirichlet)."""
    if exact:
        raw = [rng.randint(1, 12) for _ in range(k)]
        total = sum(raw)
        return [Fraction(w, total) for w in raw]
    raw = [rng.random() + 1e-3 for _ in range(k)]
    total = sum(raw)
    return [w / total for w in raw]


def random_measure(
    rng: random.Random, space: MetricSpace, *, max_atoms: int = 3, exact: bool = True, scale: int = 3
) -> DiscreteMeasure:
    k = rng.randint(1, max_atoms)
    atoms = [random_point(rng, space, exact=exact, scale=scale) for _ in range(k)]
    return DiscreteMeasure(space, atoms, random_weights(rng, k, exact=exact), exact=exact)


def random_r(rng: random.Random, *, exact: bool = True, interior: bool = False):
    """A mixing weight in [0, 1]: half the time from a grid containing the
    endpoints, otherwise uniform."""
    if rng.random() < 0.5:
        grid = [r for r in R_GRID if not interior or 0 < r < 1]
        r = rng.choice(grid)
        return r if exact else float(r)
    if exact:
        den = rng.randint(2, 12)
        lo, hi = (1, den - 1) if interior else (0, den)
        return Fraction(rng.randint(lo, hi), den)
    r = rng.random()
    if interior:
        r = min(max(r, 1e-6), 1 - 1e-6)
    return r
