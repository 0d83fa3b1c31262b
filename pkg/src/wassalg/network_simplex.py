"""Transportation simplex (network simplex on the complete bipartite graph).

Degeneracy is removed by a symbolic lexicographic perturbation: supply ``i``
becomes ``a_i + eps`` and the last demand ``b_{n-1} + m*eps``. Flows are
carried as ``(value, eps_coefficient)`` pairs compared lexicographically, so
every basis is nondegenerate and the simplex cannot cycle. The perturbation
is dropped before flows are reported.

Works on Fractions (exact) or floats. Float pricing switches to numpy once
the cost matrix is large.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .numeric import integerize

PIVOT_RULES = ("bland", "dantzig")
_NUMPY_THRESHOLD = 400


class SimplexError(RuntimeError):
    pass


def _northwest_corner(a, b):
    m, n = len(a), len(b)
    flows = {}
    i = j = 0
    s = (a[0], 1)
    d = (b[0], m if n == 1 else 0)
    while True:
        if i == m - 1 and j == n - 1:
            flows[i, j] = s
            break
        # Each step adds one cell and advances one index: m + n - 1 cells.
        if j == n - 1 or (i < m - 1 and s < d):
            flows[i, j] = s
            d = (d[0] - s[0], d[1] - s[1])
            i += 1
            s = (a[i], 1)
        else:
            flows[i, j] = d
            s = (s[0] - d[0], s[1] - d[1])
            j += 1
            d = (b[j], m if j == n - 1 else 0)
    return flows


def _min_cost_start(a, b, c, use_numpy):
    """Greedy least-cost initial basis. Every placed cell retires exactly one
    row or column, which keeps the m + n - 1 cells a spanning tree."""
    m, n = len(a), len(b)
    if use_numpy:
        order = np.argsort(np.asarray(c, dtype=float), axis=None, kind="stable")
        cells = (divmod(int(k), n) for k in order)
    else:
        cells = iter(sorted(((i, j) for i in range(m) for j in range(n)), key=lambda ij: (c[ij[0]][ij[1]], ij)))
    s = [(x, 1) for x in a]
    d = [(x, 0) for x in b]
    d[-1] = (b[-1], m)
    row_live = [True] * m
    col_live = [True] * n
    rows_left, cols_left = m, n
    flows = {}
    for i, j in cells:
        if not (row_live[i] and col_live[j]):
            continue
        if rows_left == 1 and cols_left == 1:
            flows[i, j] = s[i]
            break
        if cols_left == 1 or (rows_left > 1 and s[i] < d[j]):
            flows[i, j] = s[i]
            d[j] = (d[j][0] - s[i][0], d[j][1] - s[i][1])
            row_live[i] = False
            rows_left -= 1
        else:
            flows[i, j] = d[j]
            s[i] = (s[i][0] - d[j][0], s[i][1] - d[j][1])
            col_live[j] = False
            cols_left -= 1
    return flows


class _Tree:
    """Spanning tree over row nodes ``0..m-1`` and column nodes ``m..m+n-1``."""

    def __init__(self, m, n, cells):
        self.m, self.n = m, n
        self.adj = [set() for _ in range(m + n)]
        for i, j in cells:
            self.adj[i].add(m + j)
            self.adj[m + j].add(i)

    def swap(self, add, remove):
        m = self.m
        self.adj[add[0]].add(m + add[1])
        self.adj[m + add[1]].add(add[0])
        self.adj[remove[0]].discard(m + remove[1])
        self.adj[m + remove[1]].discard(remove[0])

    def potentials(self, cost, zero):
        """Solve ``u_i + v_j = c_ij`` on tree cells with ``u_0 = 0``; also
        return parent pointers and depths for path queries."""
        m, n = self.m, self.n
        pot = [None] * (m + n)
        parent = [-1] * (m + n)
        depth = [0] * (m + n)
        pot[0] = zero
        stack = [0]
        while stack:
            node = stack.pop()
            for nb in self.adj[node]:
                if pot[nb] is None:
                    if node < m:
                        pot[nb] = cost[node][nb - m] - pot[node]
                    else:
                        pot[nb] = cost[nb][node - m] - pot[node]
                    parent[nb] = node
                    depth[nb] = depth[node] + 1
                    stack.append(nb)
        if any(p is None for p in pot):
            raise SimplexError("basis does not span all nodes")
        return pot[:m], pot[m:], parent, depth

    def path(self, u, v, parent, depth):
        """Node path from ``u`` to ``v`` in the tree."""
        left, right = [u], [v]
        while depth[u] > depth[v]:
            u = parent[u]
            left.append(u)
        while depth[v] > depth[u]:
            v = parent[v]
            right.append(v)
        while u != v:
            u = parent[u]
            v = parent[v]
            left.append(u)
            right.append(v)
        right.pop()
        return left + right[::-1]


def _price_python(cost, u, v, basis, rule, tol):
    best = None
    best_val = -tol
    for i, row in enumerate(cost):
        ui = u[i]
        for j, c in enumerate(row):
            rc = c - ui - v[j]
            if rc < best_val and (i, j) not in basis:
                if rule == "bland":
                    return i, j
                best, best_val = (i, j), rc
    return best


def _price_numpy(cost_arr, u, v, basis_mask, rule, tol):
    rc = cost_arr - np.asarray(u, dtype=float)[:, None] - np.asarray(v, dtype=float)[None, :]
    rc[basis_mask] = 0.0
    neg = rc < -tol
    if not neg.any():
        return None
    if rule == "bland":
        flat = int(np.argmax(neg.ravel()))
    else:
        flat = int(np.argmin(rc.ravel()))
    return divmod(flat, rc.shape[1])


def solve_transport(
    supplies: Sequence,
    demands: Sequence,
    cost: Sequence[Sequence],
    *,
    exact: bool,
    pivot: str = "dantzig",
    start: str = "mincost",
    max_iter: int | None = None,
):
    """Minimize ``sum c_ij x_ij`` over the transportation polytope.

    Returns ``(flows, total_cost, iterations)`` where ``flows`` maps basic
    cells ``(i, j)`` to their (unperturbed) flow. ``supplies`` and ``demands``
    must have equal totals.
    """
    if pivot not in PIVOT_RULES:
        raise ValueError(f"unknown pivot rule {pivot!r}; choose from {PIVOT_RULES}")
    m, n = len(supplies), len(demands)
    if m == 0 or n == 0:
        raise ValueError("empty supply or demand")
    zero = 0 if exact else 0.0
    if exact:
        # Run on integers over common denominators; rescaled on the way out.
        ab, wden = integerize(list(supplies) + list(demands))
        a, b = ab[:m], ab[m:]
        flat, cden = integerize([x for row in cost for x in row])
        c = [flat[i * n:(i + 1) * n] for i in range(m)]
        tol = 0
    else:
        a = [float(x) for x in supplies]
        b = [float(x) for x in demands]
        c = [[float(x) for x in row] for row in cost]
        cmax = max((abs(x) for row in c for x in row), default=0.0)
        tol = 1e-13 * max(1.0, cmax)

    use_numpy = not exact and m * n >= _NUMPY_THRESHOLD
    if start == "mincost":
        flows = _min_cost_start(a, b, c, use_numpy)
    elif start == "northwest":
        flows = _northwest_corner(a, b)
    else:
        raise ValueError(f"unknown start rule {start!r}")
    if len(flows) != m + n - 1:
        raise SimplexError("initial basis is not a spanning tree")
    tree = _Tree(m, n, flows)
    if use_numpy:
        cost_arr = np.asarray(c, dtype=float)
        mask = np.zeros((m, n), dtype=bool)
        for cell in flows:
            mask[cell] = True
    if max_iter is None:
        max_iter = 50 * (m + n) * max(m, n) + 1000

    iterations = 0
    while True:
        u, v, parent, depth = tree.potentials(c, zero)
        if use_numpy:
            entering = _price_numpy(cost_arr, u, v, mask, pivot, tol)
        else:
            entering = _price_python(c, u, v, flows, pivot, tol)
        if entering is None:
            break
        iterations += 1
        if iterations > max_iter:
            raise SimplexError(f"no convergence after {max_iter} pivots")
        i, j = entering
        nodes = tree.path(i, m + j, parent, depth)
        cells = []
        for k in range(len(nodes) - 1):
            x, y = nodes[k], nodes[k + 1]
            cells.append((x, y - m) if x < m else (y, x - m))
        # Cells at odd positions along the row-i -> column-j path lose flow.
        minus = cells[0::2]
        plus = cells[1::2]
        leaving = min(minus, key=lambda cell: (flows[cell], cell))
        theta = flows[leaving]
        for cell in minus:
            f = flows[cell]
            flows[cell] = (f[0] - theta[0], f[1] - theta[1])
        for cell in plus:
            f = flows[cell]
            flows[cell] = (f[0] + theta[0], f[1] + theta[1])
        del flows[leaving]
        flows[entering] = theta
        tree.swap(entering, leaving)
        if use_numpy:
            mask[leaving] = False
            mask[entering] = True

    plan = {cell: f[0] if f[0] > 0 else zero for cell, f in flows.items()}
    if exact:
        total = Fraction(sum(c[i][j] * x for (i, j), x in plan.items()), wden * cden)
        plan = {cell: Fraction(x, wden) for cell, x in plan.items()}
    else:
        total = math.fsum(c[i][j] * x for (i, j), x in plan.items())
    return plan, total, iterations
