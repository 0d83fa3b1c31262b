"""Independent routes to W_p used to cross-check the simplex solver:
quantile matching on the line and vertex enumeration for tiny instances."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

from .measure import DiscreteMeasure, MeasureError
from .metric import RealLine
from .numeric import check_order, integer_order, integerize, is_exact_number, power, root
from .transport import Coupling, TransportResult, cost_matrix

ORACLE_MAX_CELLS = 16


def _cumulative(weights, exact, one):
    ws = list(weights) if exact else [float(w) for w in weights]
    cum = list(itertools.accumulate(ws))
    # Both staircases must end at exactly 1 so the merge terminates together.
    cum[-1] = one
    return cum


def wasserstein_1d_cost(mu: DiscreteMeasure, nu: DiscreteMeasure, p):
    """``W_p^p`` on the real line via the quantile functions.

    Both quantile functions are step functions on (0, 1]; between
    consecutive breakpoints of the merged cumulative weights they are
    constant, so the integral of ``|F_mu^-1 - F_nu^-1|^p`` is a finite sum.
    """
    if not isinstance(mu.space, RealLine) or mu.space != nu.space:
        raise MeasureError("wasserstein_1d needs two measures on the real line")
    check_order(p)
    exact = mu.exact and nu.exact and integer_order(p) is not None
    one = Fraction(1) if exact else 1.0
    cx = _cumulative(mu.weights, exact, one)
    cy = _cumulative(nu.weights, exact, one)
    xs, ys = mu.atoms, nu.atoms
    i = j = 0
    prev = 0
    terms = []
    while i < len(xs) and j < len(ys):
        t = min(cx[i], cy[j])
        if t > prev:
            terms.append((t - prev) * power(abs(xs[i] - ys[j]), p))
            prev = t
        if cx[i] == t:
            i += 1
        if cy[j] == t:
            j += 1
    if exact and all(is_exact_number(t) for t in terms):
        return sum(terms, Fraction(0))
    return math.fsum(float(t) for t in terms)


def wasserstein_1d(mu: DiscreteMeasure, nu: DiscreteMeasure, p):
    return root(wasserstein_1d_cost(mu, nu, p), p)


@lru_cache(maxsize=None)
def _spanning_trees(m: int, n: int) -> tuple:
    """All spanning trees of K_{m,n}, each as a leaf-elimination schedule.

    A schedule is a tuple of ``(cell, leaf_node, other_node)``; processing
    them in order fixes each cell's flow as the residual at its leaf.
    """
    cells = [(i, j) for i in range(m) for j in range(n)]
    trees = []
    for subset in itertools.combinations(cells, m + n - 1):
        parent = list(range(m + n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        acyclic = True
        for i, j in subset:
            ra, rb = find(i), find(m + j)
            if ra == rb:
                acyclic = False
                break
            parent[ra] = rb
        if not acyclic:
            continue
        degree = [0] * (m + n)
        incident = [set() for _ in range(m + n)]
        for i, j in subset:
            degree[i] += 1
            degree[m + j] += 1
            incident[i].add((i, j))
            incident[m + j].add((i, j))
        remaining = set(subset)
        schedule = []
        while remaining:
            leaf = next(v for v in range(m + n) if degree[v] == 1)
            (cell,) = incident[leaf]
            i, j = cell
            other = m + j if leaf == i else i
            schedule.append((cell, leaf, other))
            remaining.discard(cell)
            for v in (i, m + j):
                degree[v] -= 1
                incident[v].discard(cell)
        trees.append(tuple(schedule))
    return tuple(trees)


def brute_force_oracle(mu: DiscreteMeasure, nu: DiscreteMeasure, p) -> TransportResult:
    """Exact optimum by enumerating every basic feasible solution.

    The vertices of the transportation polytope are the nonnegative flows
    supported on spanning trees of the bipartite support graph; the minimum
    of a linear cost is attained at one of them.
    """
    if mu.space != nu.space:
        raise MeasureError("measures live on different spaces")
    check_order(p)
    m, n = len(mu), len(nu)
    if m * n > ORACLE_MAX_CELLS:
        raise MeasureError(f"instance too large for the oracle: {m}x{n} > {ORACLE_MAX_CELLS} cells")
    costs = cost_matrix(mu, nu, p)
    exact = (
        mu.exact and nu.exact and integer_order(p) is not None
        and all(is_exact_number(c) for row in costs for c in row)
    )
    if exact:
        # Integer arithmetic on a common denominator; converted back below.
        residual0, wden = integerize(list(mu.weights) + list(nu.weights))
        flat, cden = integerize([c for row in costs for c in row])
        costs = [flat[i * n:(i + 1) * n] for i in range(m)]
        zero = 0
        neg_tol = 0
    else:
        residual0 = [float(w) for w in mu.weights] + [float(w) for w in nu.weights]
        costs = [[float(c) for c in row] for row in costs]
        zero = 0.0
        neg_tol = 1e-12
    best = None
    best_cost = None
    for schedule in _spanning_trees(m, n):
        res = list(residual0)
        flows = []
        ok = True
        for cell, leaf, other in schedule:
            x = res[leaf]
            if x < -neg_tol:
                ok = False
                break
            res[leaf] = zero
            res[other] -= x
            flows.append((cell, x))
        if not ok:
            continue
        total = sum((costs[i][j] * x for (i, j), x in flows), zero)
        if best_cost is None or total < best_cost:
            best_cost, best = total, flows
    if exact:
        best = [(cell, Fraction(x, wden)) for cell, x in best]
        best_cost = Fraction(best_cost, wden * cden)
        zero = Fraction(0)
    matrix = [[zero] * n for _ in range(m)]
    for (i, j), x in best:
        matrix[i][j] = max(x, zero)
    row_m = mu if exact else mu.to_float()
    col_m = nu if exact else nu.to_float()
    coupling = Coupling(row_m, col_m, matrix)
    return TransportResult(coupling, best_cost, root(best_cost, p), p, len(_spanning_trees(m, n)))
