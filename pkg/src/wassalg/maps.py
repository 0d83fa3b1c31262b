"""Nonexpansive maps that are nonexpansive by construction.

Translations, contractions towards a centre and clamps onto a box (the
metric projection onto a convex set) are each nonexpansive on the line and
in Euclidean space, hence so are their composites. Maps on a finite matrix
space are index tables accepted only after an exhaustive pairwise check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .measure import DiscreteMeasure, convex_sum, dirac
from .metric import Euclidean, MatrixSpace, MetricSpace, RealLine


def _coords(space, x):
    return (x,) if isinstance(space, RealLine) else x


def _point(space, cs):
    return cs[0] if isinstance(space, RealLine) else tuple(cs)


@dataclass(frozen=True)
class Translate:
    shift: tuple

    def __call__(self, space, x):
        return _point(space, [a + t for a, t in zip(_coords(space, x), self.shift)])


@dataclass(frozen=True)
class Contract:
    centre: tuple
    factor: Any  # in [0, 1]

    def __call__(self, space, x):
        lam = self.factor
        return _point(space, [c + lam * (a - c) for a, c in zip(_coords(space, x), self.centre)])


@dataclass(frozen=True)
class Clamp:
    lo: tuple
    hi: tuple

    def __call__(self, space, x):
        return _point(space, [min(max(a, l), h) for a, l, h in zip(_coords(space, x), self.lo, self.hi)])


@dataclass(frozen=True)
class IndexTable:
    table: tuple

    def __call__(self, space, x):
        return self.table[x]


@dataclass(frozen=True)
class NonexpansiveMap:
    """A composite of certified steps, applied left to right."""

    space: MetricSpace
    steps: tuple = field(default_factory=tuple)

    def __call__(self, x):
        for step in self.steps:
            x = step(self.space, x)
        return x


def certify_index_table(space: MatrixSpace, table) -> bool:
    n = space.n
    return all(
        space.distance(table[i], table[j]) <= space.distance(i, j) for i in range(n) for j in range(i + 1, n)
    )


def _rand_num(rng, exact, lo, hi):
    if exact:
        return Fraction(rng.randint(int(lo * 4), int(hi * 4)), 4)
    return rng.uniform(lo, hi)


def random_nonexpansive(rng: random.Random, space: MetricSpace, *, exact: bool = True, depth: int = 3) -> NonexpansiveMap:
    if isinstance(space, MatrixSpace):
        n = space.n
        for _ in range(20):
            table = tuple(rng.randrange(n) for _ in range(n))
            if certify_index_table(space, table):
                return NonexpansiveMap(space, (IndexTable(table),))
        # Constant maps are always nonexpansive.
        c = rng.randrange(n)
        return NonexpansiveMap(space, (IndexTable((c,) * n),))
    if isinstance(space, RealLine):
        dim = 1
    elif isinstance(space, Euclidean):
        dim = space.dim
    else:
        raise TypeError(f"no nonexpansive generator for {space!r}")
    steps = []
    for _ in range(rng.randint(1, depth)):
        kind = rng.choice(("translate", "contract", "clamp"))
        if kind == "translate":
            steps.append(Translate(tuple(_rand_num(rng, exact, -2, 2) for _ in range(dim))))
        elif kind == "contract":
            factor = Fraction(rng.randint(0, 4), 4) if exact else rng.random()
            steps.append(Contract(tuple(_rand_num(rng, exact, -2, 2) for _ in range(dim)), factor))
        else:
            lo = [_rand_num(rng, exact, -3, 0) for _ in range(dim)]
            hi = [l + _rand_num(rng, exact, 0, 3) for l in lo]
            steps.append(Clamp(tuple(lo), tuple(hi)))
    return NonexpansiveMap(space, tuple(steps))


def dirac_valued(g: Callable, space: MetricSpace) -> Callable[[Any], DiscreteMeasure]:
    """``x -> delta(g x)``: nonexpansive into measures when ``g`` is, because
    ``W_p`` restricted to Dirac measures is the original metric."""
    return lambda x: dirac(space, g(x))


def mixture_valued(g: Callable, h: Callable, lam, space: MetricSpace) -> Callable[[Any], DiscreteMeasure]:
    """``x -> delta(g x) +_lam delta(h x)``; nonexpansive by the Wasserstein
    condition when ``g`` and ``h`` are."""
    return lambda x: convex_sum(dirac(space, g(x)), dirac(space, h(x)), lam)


def distance_to(space: MetricSpace, anchor, scale=1) -> Callable[[Any], tuple]:
    """``x -> (scale * d(x, anchor),)``; 1-Lipschitz into R^1 for ``scale <= 1``."""
    return lambda x: (scale * space.distance(x, anchor),)
