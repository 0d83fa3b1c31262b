"""Couplings and exact Wasserstein distances between discrete measures."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .measure import DiscreteMeasure, MeasureError, convex_sum
from .metric import ProductSpace
from .network_simplex import solve_transport
from .numeric import check_order, integer_order, is_exact_number, root

FLOAT_MAX_ATOMS = 10_000
EXACT_MAX_ATOMS = 1_000
MARGINAL_TOL = 1e-10


class Coupling:
    """A joint weight matrix over ``support(mu) x support(nu)``.

    Rows follow ``row_measure.atoms`` and columns ``col_measure.atoms``.
    """

    __slots__ = ("row_measure", "col_measure", "matrix", "exact")

    def __init__(self, row_measure: DiscreteMeasure, col_measure: DiscreteMeasure, matrix, *, check: bool = True):
        self.row_measure = row_measure
        self.col_measure = col_measure
        self.matrix = [list(row) for row in matrix]
        self.exact = all(is_exact_number(x) for row in self.matrix for x in row)
        if check:
            self.validate()

    def validate(self, tol: float = MARGINAL_TOL) -> None:
        m, n = len(self.row_measure), len(self.col_measure)
        if len(self.matrix) != m or any(len(row) != n for row in self.matrix):
            raise MeasureError(f"coupling matrix must be {m}x{n}")
        for row in self.matrix:
            for x in row:
                if x < 0:
                    raise MeasureError(f"negative coupling entry {x!r}")
        tol = 0 if self.exact and self.row_measure.exact and self.col_measure.exact else tol
        for i, w in enumerate(self.row_measure.weights):
            if abs(self._sum(self.matrix[i]) - w) > tol:
                raise MeasureError(f"row {i} sums to {self._sum(self.matrix[i])}, expected {w}")
        for j, w in enumerate(self.col_measure.weights):
            col = self._sum(row[j] for row in self.matrix)
            if abs(col - w) > tol:
                raise MeasureError(f"column {j} sums to {col}, expected {w}")

    def _sum(self, xs):
        return sum(xs, Fraction(0)) if self.exact else math.fsum(xs)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_measure), len(self.col_measure)

    def entries(self):
        """Yield ``(row_atom, col_atom, weight)`` for positive entries."""
        for x, row in zip(self.row_measure.atoms, self.matrix):
            for y, w in zip(self.col_measure.atoms, row):
                if w > 0:
                    yield x, y, w

    def support(self) -> frozenset:
        return frozenset((x, y) for x, y, _ in self.entries())

    def as_measure(self) -> DiscreteMeasure:
        """The coupling as a measure on the product space."""
        space = ProductSpace(self.row_measure.space, self.col_measure.space)
        mass = {(x, y): w for x, y, w in self.entries()}
        return DiscreteMeasure._from_mass(space, mass, self.exact)

    def cost(self, p):
        """``sum gamma_st d(s, t)^p`` recomputed from the matrix."""
        space = self.row_measure.space
        terms = [w * space.distance_pow(x, y, p) for x, y, w in self.entries()]
        if all(is_exact_number(t) for t in terms):
            return sum(terms, Fraction(0))
        return math.fsum(float(t) for t in terms)

    def __eq__(self, other):
        if not isinstance(other, Coupling):
            return NotImplemented
        return (
            self.row_measure == other.row_measure
            and self.col_measure == other.col_measure
            and self.matrix == other.matrix
        )

    def __repr__(self):
        return f"Coupling({self.shape[0]}x{self.shape[1]})"


@dataclass(frozen=True)
class TransportResult:
    coupling: Coupling
    cost_p: Any
    wp: Any
    p: Any
    iterations: int = 0

    @property
    def exact(self) -> bool:
        return is_exact_number(self.cost_p)


def _check_pair(mu: DiscreteMeasure, nu: DiscreteMeasure, p) -> bool:
    if mu.space != nu.space:
        raise MeasureError(f"measures live on different spaces: {mu.space!r} vs {nu.space!r}")
    check_order(p)
    exact = mu.exact and nu.exact and integer_order(p) is not None
    limit = EXACT_MAX_ATOMS if exact else FLOAT_MAX_ATOMS
    if max(len(mu), len(nu)) > limit:
        raise MeasureError(f"support too large: {len(mu)}x{len(nu)} (limit {limit} atoms per side)")
    return exact


def _orientation_key(mu: DiscreteMeasure):
    return (len(mu), [mu.space.sort_key(x) for x in mu.atoms], [float(w) for w in mu.weights], list(mu.weights))


def cost_matrix(mu: DiscreteMeasure, nu: DiscreteMeasure, p):
    space = mu.space
    return [[space.distance_pow(x, y, p) for y in nu.atoms] for x in mu.atoms]


def independent_coupling(mu: DiscreteMeasure, nu: DiscreteMeasure) -> Coupling:
    return Coupling(mu, nu, [[a * b for b in nu.weights] for a in mu.weights])


def diagonal_coupling(mu: DiscreteMeasure) -> Coupling:
    """The pushforward of ``mu`` along ``x -> (x, x)``."""
    zero = Fraction(0) if mu.exact else 0.0
    n = len(mu)
    return Coupling(mu, mu, [[w if i == j else zero for j in range(n)] for i, w in enumerate(mu.weights)])


def coupling_from_measure(joint: DiscreteMeasure, mu: DiscreteMeasure, nu: DiscreteMeasure) -> Coupling:
    """Lay out a product-space measure as a coupling matrix between ``mu`` and ``nu``."""
    zero = Fraction(0) if joint.exact else 0.0
    row = {x: i for i, x in enumerate(mu.atoms)}
    col = {y: j for j, y in enumerate(nu.atoms)}
    matrix = [[zero] * len(nu) for _ in range(len(mu))]
    for (x, y), w in joint.items():
        if x not in row or y not in col:
            raise MeasureError(f"joint atom {(x, y)!r} lies outside support(mu) x support(nu)")
        matrix[row[x]][col[y]] += w
    return Coupling(mu, nu, matrix)


def optimal_coupling(
    mu: DiscreteMeasure, nu: DiscreteMeasure, p, *, pivot: str = "dantzig", start: str = "mincost"
) -> TransportResult:
    """Minimize ``sum gamma_st d(s,t)^p`` over all couplings of ``mu`` and ``nu``.

    Solved exactly by the transportation simplex. In exact mode (rational
    weights, integer ``p``, rational costs) every quantity is a Fraction and
    ``wp`` is a Fraction whenever ``cost_p`` is a perfect ``p``-th power.
    ``pivot`` and ``start`` select the entering-arc rule and initial basis;
    the optimal cost does not depend on them.
    """
    exact = _check_pair(mu, nu, p)
    if _orientation_key(nu) < _orientation_key(mu):
        # Solve in a canonical orientation so W_p(mu, nu) and W_p(nu, mu)
        # come out bit-identical in float mode too.
        res = optimal_coupling(nu, mu, p, pivot=pivot, start=start)
        c = res.coupling
        transposed = Coupling(c.col_measure, c.row_measure, [list(col) for col in zip(*c.matrix)])
        return TransportResult(transposed, res.cost_p, res.wp, p, res.iterations)
    costs = cost_matrix(mu, nu, p)
    if exact and not all(is_exact_number(c) for row in costs for c in row):
        exact = False
    if exact:
        supplies, demands = mu.weights, nu.weights
    else:
        supplies = [float(w) for w in mu.weights]
        demands = [float(w) for w in nu.weights]
        # Supplies and demands must balance exactly for the simplex; both
        # totals are within MASS_TOL of 1, shift the rounding onto the
        # largest demand.
        gap = math.fsum(supplies) - math.fsum(demands)
        if gap:
            k = max(range(len(demands)), key=demands.__getitem__)
            demands[k] += gap
    plan, total, iterations = solve_transport(supplies, demands, costs, exact=exact, pivot=pivot, start=start)
    zero = Fraction(0) if exact else 0.0
    matrix = [[zero] * len(nu) for _ in range(len(mu))]
    for (i, j), x in plan.items():
        matrix[i][j] = x
    row_m = mu if exact else mu.to_float()
    col_m = nu if exact else nu.to_float()
    coupling = Coupling(row_m, col_m, matrix)
    if len(mu) == 1 and len(nu) == 1:
        # Only one coupling exists; d(x, y) itself avoids a lossy p-th root.
        wp = mu.space.distance(mu.atoms[0], nu.atoms[0])
        return TransportResult(coupling, total, wp if exact or not is_exact_number(wp) else float(wp), p, iterations)
    return TransportResult(coupling, total, root(total, p), p, iterations)


def wasserstein(mu: DiscreteMeasure, nu: DiscreteMeasure, p, **kwargs):
    return optimal_coupling(mu, nu, p, **kwargs).wp


def wasserstein_cost(mu: DiscreteMeasure, nu: DiscreteMeasure, p, **kwargs):
    """``W_p(mu, nu) ** p``; exact in rational mode."""
    return optimal_coupling(mu, nu, p, **kwargs).cost_p


def marginals(coupling: Coupling) -> tuple[DiscreteMeasure, DiscreteMeasure]:
    """Row and column sums reassembled as measures."""
    exact = coupling.exact
    zero = Fraction(0) if exact else 0.0
    left = {}
    right = {}
    for x, row in zip(coupling.row_measure.atoms, coupling.matrix):
        left[x] = sum(row, zero) if exact else math.fsum(row)
    for j, y in enumerate(coupling.col_measure.atoms):
        col = [row[j] for row in coupling.matrix]
        right[y] = sum(col, zero) if exact else math.fsum(col)
    return (
        DiscreteMeasure._from_mass(coupling.row_measure.space, left, exact),
        DiscreteMeasure._from_mass(coupling.col_measure.space, right, exact),
    )


def coupling_convex_sum(alpha: Coupling, beta: Coupling, r) -> Coupling:
    """``alpha +_r beta`` as a coupling between the mixed marginals."""
    if alpha.row_measure.space != beta.row_measure.space or alpha.col_measure.space != beta.col_measure.space:
        raise MeasureError("couplings live on different spaces")
    if r == 1:
        return alpha
    if r == 0:
        return beta
    mu = convex_sum(alpha.row_measure, beta.row_measure, r)
    nu = convex_sum(alpha.col_measure, beta.col_measure, r)
    joint = convex_sum(alpha.as_measure(), beta.as_measure(), r)
    return coupling_from_measure(joint, mu, nu)


__all__ = [
    "Coupling",
    "TransportResult",
    "cost_matrix",
    "coupling_convex_sum",
    "coupling_from_measure",
    "diagonal_coupling",
    "independent_coupling",
    "marginals",
    "optimal_coupling",
    "wasserstein",
    "wasserstein_cost",
]
