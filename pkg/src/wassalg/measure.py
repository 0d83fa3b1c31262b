"""Finitely supported probability measures and their convex structure."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from .metric import MetricError, MetricSpace
from .numeric import MASS_TOL, is_exact_number, to_fraction


class MeasureError(ValueError):
    """Invalid measure data: bad weights, foreign points, mismatched spaces."""


def _is_exact_weight(w) -> bool:
    return is_exact_number(w)


class DiscreteMeasure:
    """A probability measure with finite support on ``space``.

    Atoms are coalesced by exact point equality, zero weights are dropped and
    atoms are kept in the space's sort order, so two measures are equal
    exactly when their atom and weight tuples are.

    In exact mode all weights are Fractions summing to exactly 1. In float
    mode a total within ``MASS_TOL`` of 1 is accepted and renormalized.
    """

    __slots__ = ("space", "atoms", "weights", "exact", "_hash")

    def __init__(self, space: MetricSpace, atoms: Sequence, weights: Sequence, *, exact: bool | None = None):
        atoms = list(atoms)
        weights = list(weights)
        if len(atoms) != len(weights):
            raise MeasureError(f"{len(atoms)} atoms but {len(weights)} weights")
        if not atoms:
            raise MeasureError("a probability measure needs at least one atom")
        if exact is None:
            exact = all(_is_exact_weight(w) for w in weights)
        mass: dict = {}
        for x, w in zip(atoms, weights):
            try:
                space.validate_point(x)
            except MetricError as exc:
                raise MeasureError(str(exc)) from exc
            if isinstance(w, bool):
                raise MeasureError(f"weight {w!r} is not a number")
            try:
                w = to_fraction(w) if exact else float(w)
            except (TypeError, ValueError) as exc:
                raise MeasureError(f"bad weight {w!r}") from exc
            if not (w >= 0) or (not exact and not math.isfinite(w)):
                raise MeasureError(f"weights must be nonnegative and finite, got {w!r}")
            mass[x] = mass.get(x, 0) + w
        self._init(space, mass, exact, strict=True)

    def _init(self, space, mass: dict, exact: bool, *, strict: bool) -> None:
        if exact:
            total = sum(mass.values(), Fraction(0))
            if total != 1:
                raise MeasureError(f"weights sum to {total}, not 1")
        else:
            total = math.fsum(mass.values())
            if strict and abs(total - 1.0) > MASS_TOL:
                raise MeasureError(f"weights sum to {total!r}, not 1 (tolerance {MASS_TOL})")
            if total <= 0:
                raise MeasureError("total mass is zero")
            if total != 1.0:
                mass = {x: w / total for x, w in mass.items()}
        items = sorted(((x, w) for x, w in mass.items() if w > 0), key=lambda xw: space.sort_key(xw[0]))
        self.space = space
        self.atoms = tuple(x for x, _ in items)
        self.weights = tuple(w for _, w in items)
        self.exact = exact
        self._hash = None

    @classmethod
    def _from_mass(cls, space, mass: dict, exact: bool) -> "DiscreteMeasure":
        # Trusted constructor: atoms already validated, weights of the right type.
        self = cls.__new__(cls)
        self._init(space, mass, exact, strict=False)
        return self

    def __len__(self) -> int:
        return len(self.atoms)

    def items(self):
        return zip(self.atoms, self.weights)

    def as_dict(self) -> dict:
        return dict(zip(self.atoms, self.weights))

    def weight(self, x):
        for a, w in zip(self.atoms, self.weights):
            if a == x:
                return w
        return Fraction(0) if self.exact else 0.0

    def __eq__(self, other):
        if not isinstance(other, DiscreteMeasure):
            return NotImplemented
        return self.space == other.space and self.atoms == other.atoms and self.weights == other.weights

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.atoms, self.weights))
        return self._hash

    def max_weight_difference(self, other: "DiscreteMeasure"):
        a, b = self.as_dict(), other.as_dict()
        return max(abs(a.get(x, 0) - b.get(x, 0)) for x in set(a) | set(b))

    def approx_equal(self, other: "DiscreteMeasure", tol: float = MASS_TOL) -> bool:
        if self.space != other.space:
            return False
        return self.max_weight_difference(other) <= tol

    def to_float(self) -> "DiscreteMeasure":
        if not self.exact:
            return self
        return DiscreteMeasure._from_mass(self.space, {x: float(w) for x, w in self.items()}, False)

    def __repr__(self):
        body = ", ".join(f"{x!r}: {w}" for x, w in self.items())
        return f"DiscreteMeasure({{{body}}})"


@dataclass(frozen=True)
class MomentValue:
    p: Any
    basepoint: Any
    value: Any


def _check_same_space(mu: DiscreteMeasure, nu: DiscreteMeasure) -> None:
    if mu.space != nu.space:
        raise MeasureError(f"measures live on different spaces: {mu.space!r} vs {nu.space!r}")


def _check_unit(r, what: str = "r"):
    if isinstance(r, bool) or not (0 <= r <= 1):
        raise MeasureError(f"{what} must lie in [0, 1], got {r!r}")


def dirac(space: MetricSpace, x) -> DiscreteMeasure:
    return DiscreteMeasure(space, [x], [Fraction(1)])


def convex_sum(mu: DiscreteMeasure, nu: DiscreteMeasure, r) -> DiscreteMeasure:
    """``mu +_r nu``: atom ``a`` gets weight ``r mu(a) + (1 - r) nu(a)``."""
    _check_same_space(mu, nu)
    _check_unit(r)
    if r == 1:
        return mu
    if r == 0:
        return nu
    exact = mu.exact and nu.exact and is_exact_number(r)
    if not exact:
        r = float(r)
    s = 1 - r
    mass: dict = {}
    for x, w in mu.items():
        mass[x] = r * w
    for x, w in nu.items():
        mass[x] = mass.get(x, 0) + s * w
    return DiscreteMeasure._from_mass(mu.space, mass, exact)


def _check_terms(terms) -> tuple[list, bool]:
    terms = list(terms)
    if not terms:
        raise MeasureError("a convex sum needs at least one term")
    weights = [r for r, _ in terms]
    if not all(is_exact_number(r) for r in weights):
        # Float weights computed as products/sums may overshoot [0, 1] by rounding.
        weights = [min(max(float(r), 0.0), 1.0) if -MASS_TOL <= r <= 1 + MASS_TOL else r for r in weights]
        terms = [(r, x) for r, (_, x) in zip(weights, terms)]
    for r in weights:
        _check_unit(r, "convex-sum weight")
    if all(is_exact_number(r) for r in weights):
        total = sum(weights, Fraction(0))
        ok = total == 1
    else:
        total = math.fsum(float(r) for r in weights)
        ok = abs(total - 1) <= MASS_TOL
    if not ok:
        raise MeasureError(f"convex-sum weights sum to {total}, not 1")
    return terms, all(is_exact_number(r) for r in weights)


def finite_convex_sum(terms: Iterable[tuple[Any, DiscreteMeasure]]) -> DiscreteMeasure:
    """The mixture ``sum_i r_i mu_i`` computed atom-wise."""
    terms, exact_r = _check_terms(terms)
    space = terms[0][1].space
    for _, m in terms:
        _check_same_space(terms[0][1], m)
    exact = exact_r and all(m.exact for _, m in terms)
    mass: dict = {}
    for r, m in terms:
        if r == 0:
            continue
        if not exact:
            r = float(r)
        for x, w in m.items():
            mass[x] = mass.get(x, 0) + r * w
    return DiscreteMeasure._from_mass(space, mass, exact)


def convex_fold(terms: Sequence[tuple[Any, Any]], combine: Callable[[Any, Any, Any], Any]):
    """Evaluate ``sum_i r_i x_i`` by the inductive right fold
    ``x_1 +_{r_1} sum_{i>=2} (r_i / (1 - r_1)) x_i`` using only the binary
    operation ``combine(x, y, r)``. Works for any barycentric algebra.
    """
    terms = list(terms)
    if not terms:
        raise MeasureError("a convex sum needs at least one term")
    (r1, x1), rest = terms[0], terms[1:]
    if not rest or r1 == 1:
        return x1
    if len(rest) == 1:
        return combine(x1, rest[0][1], r1)
    scale = 1 - r1
    tail = convex_fold([(r / scale, x) for r, x in rest], combine)
    return combine(x1, tail, r1)


def pushforward(mu: DiscreteMeasure, f: Callable, target: MetricSpace | None = None) -> DiscreteMeasure:
    """Image measure ``f_* mu`` on ``target`` (default: ``mu``'s own space)."""
    target = mu.space if target is None else target
    mass: dict = {}
    for x, w in mu.items():
        y = f(x)
        try:
            target.validate_point(y)
        except MetricError as exc:
            raise MeasureError(f"image of {x!r} is outside the target space: {exc}") from exc
        mass[y] = mass.get(y, 0) + w
    return DiscreteMeasure._from_mass(target, mass, mu.exact)


def p_moment(mu: DiscreteMeasure, x0, p) -> MomentValue:
    """``sum_a mu(a) d(x0, a)^p``."""
    if isinstance(p, bool) or not p >= 1:
        raise MeasureError(f"moment order must be >= 1, got {p!r}")
    try:
        mu.space.validate_point(x0)
    except MetricError as exc:
        raise MeasureError(str(exc)) from exc
    terms = [w * mu.space.distance_pow(x0, a, p) for a, w in mu.items()]
    if all(is_exact_number(t) for t in terms):
        value = sum(terms, Fraction(0))
    else:
        value = math.fsum(float(t) for t in terms)
    return MomentValue(p, x0, value)


def support(mu: DiscreteMeasure) -> frozenset:
    return frozenset(mu.atoms)


__all__ = [
    "DiscreteMeasure",
    "MeasureError",
    "MomentValue",
    "convex_fold",
    "convex_sum",
    "dirac",
    "finite_convex_sum",
    "p_moment",
    "pushforward",
    "support",
]
