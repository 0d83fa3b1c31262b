"""Randomized batches of law checks with deterministic seeding.

Each (law, p) cell gets its own generator seeded from the string
``"{seed}:{law}:{p}"``, so results do not depend on which laws run or in
which order.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable, Iterable

from . import laws as L
from .maps import distance_to, dirac_valued, mixture_valued, random_nonexpansive
from .measure import DiscreteMeasure
from .metric import Euclidean, MatrixSpace, RealLine
from .numeric import FLOAT_TOL, is_exact_number, power
from .random_instances import (
    SPACE_KINDS,
    random_matrix_space,
    random_measure,
    random_point,
    random_r,
    random_space,
    random_weights,
)
from .report import LawReport, merge_reports
from .transport import wasserstein, wasserstein_cost

BARYCENTRIC_LAWS = (
    "B1", "B2", "SC", "SA", "projection", "barycentre", "fold",
    "midpoint-C", "midpoint-I", "midpoint-M", "dyadic",
)
WASSERSTEIN_LAWS = (
    "wasserstein-condition", "nonexpansive", "lipschitz", "holder",
    "generalized-condition", "quantitative-inference",
)
FREE_EXTENSION_LAWS = ("free-extension-unit", "free-extension-affinity", "free-extension-nonexpansive")
METRIC_LAWS = ("wp-symmetry", "wp-zero", "wp-triangle", "wp-indiscernibles")
LAW_SETS = {
    "barycentric": BARYCENTRIC_LAWS,
    "wasserstein": WASSERSTEIN_LAWS,
    "free-extension": FREE_EXTENSION_LAWS,
    "metric": METRIC_LAWS,
    "monotonicity": ("wp-monotone",),
}
P_INDEPENDENT = set(BARYCENTRIC_LAWS) | {"wp-monotone"}


def _rng(seed, law, p) -> random.Random:
    return random.Random(f"{seed}:{law}:{p}")


def _space(rng, exact, kinds):
    return random_space(rng, rng.choice(kinds), exact=exact)


def _measures(rng, space, k, exact, max_atoms=3, scale=3):
    return [random_measure(rng, space, max_atoms=max_atoms, exact=exact, scale=scale) for _ in range(k)]


# --- barycentric trials -------------------------------------------------------

def _barycentric_trial(law, rng, exact, kinds):
    space = _space(rng, exact, kinds)
    if law == "B1":
        x, y = _measures(rng, space, 2, exact)
        return L.check_b1(x, y)
    if law == "B2":
        (x,) = _measures(rng, space, 1, exact)
        return L.check_b2(x, random_r(rng, exact=exact))
    if law == "SC":
        x, y = _measures(rng, space, 2, exact)
        return L.check_sc(x, y, random_r(rng, exact=exact))
    if law == "SA":
        x, y, z = _measures(rng, space, 3, exact)
        p_hat = random_r(rng, exact=exact)
        r = random_r(rng, exact=exact)
        # The law is stated for p, r < 1.
        if p_hat == 1:
            p_hat = Fraction(1, 2) if exact else 0.5
        if r == 1:
            r = Fraction(1, 3) if exact else 1 / 3
        return L.check_sa(x, y, z, p_hat, r)
    if law == "projection":
        n = rng.randint(1, 4)
        xs = _measures(rng, space, n, exact)
        return L.check_projection(xs, rng.randrange(n))
    if law == "barycentre":
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        xs = _measures(rng, space, m, exact)
        rs = random_weights(rng, n, exact=exact)
        s_rows = [random_weights(rng, m, exact=exact) for _ in range(n)]
        return L.check_barycentre(rs, s_rows, xs)
    if law == "fold":
        n = rng.randint(1, 5)
        xs = _measures(rng, space, n, exact)
        ws = random_weights(rng, n, exact=exact)
        if rng.random() < 0.2:
            # Put all mass on the first term to exercise the r_1 = 1 case.
            one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
            ws = [one] + [zero] * (n - 1)
        return L.check_fold_agreement(list(zip(ws, xs)))
    if law == "midpoint-C":
        x, y = _measures(rng, space, 2, exact)
        return L.check_midpoint_c(x, y)
    if law == "midpoint-I":
        (x,) = _measures(rng, space, 1, exact)
        return L.check_midpoint_i(x)
    if law == "midpoint-M":
        x, u, v, z = _measures(rng, space, 4, exact)
        return L.check_midpoint_m(x, u, v, z)
    if law == "dyadic":
        x, y = _measures(rng, space, 2, exact)
        k = rng.randint(0, 6)
        return L.check_dyadic(x, y, rng.randint(0, 2**k), 2**k)
    raise KeyError(law)


# --- Wasserstein-condition trials -------------------------------------------------

def _unit_scale_space(rng, exact, kinds):
    """A space whose random points sit at mutual distance <= 1."""
    kind = rng.choice(kinds)
    if kind == "matrix":
        base = random_matrix_space(rng, exact=True)
        d = [[Fraction(v, 10) if exact else v / 10 for v in row] for row in base.entries]
        return MatrixSpace(d), kind
    return random_space(rng, kind, exact=exact), kind


def _unit_point(rng, space, exact):
    if isinstance(space, MatrixSpace):
        return rng.randrange(space.n)
    dim = 1 if isinstance(space, RealLine) else space.dim
    cs = [Fraction(rng.randint(0, 8), 16) if exact else rng.uniform(0, 0.5) for _ in range(dim)]
    return cs[0] if isinstance(space, RealLine) else tuple(cs)


def _unit_measure(rng, space, exact, max_atoms=3):
    k = rng.randint(1, max_atoms)
    return DiscreteMeasure(space, [_unit_point(rng, space, exact) for _ in range(k)], random_weights(rng, k, exact=exact), exact=exact)


def _rational_upper_root(value, p, rng):
    """A rational ``q`` in [0, 1] with ``q^p >= value``, sometimes loosened."""
    grid = 4096
    q = Fraction(math.ceil(float(value) ** (1.0 / float(p)) * grid), grid)
    while power(q, p) < value:
        q += Fraction(1, grid)
    if rng.random() < 0.3:
        q += Fraction(rng.randint(0, 64), grid)
    return min(q, Fraction(1))


def _wasserstein_trial(law, p, rng, exact, kinds):
    space = _space(rng, exact, kinds)
    if law == "wasserstein-condition":
        x, x2, y, y2 = _measures(rng, space, 4, exact)
        return L.check_wasserstein_condition(x, x2, y, y2, random_r(rng, exact=exact), p)
    if law == "nonexpansive":
        x, x2, y, y2 = _measures(rng, space, 4, exact)
        return L.check_nonexpansive(x, x2, y, y2, random_r(rng, exact=exact), p)
    if law == "lipschitz":
        x, x2, y = _measures(rng, space, 3, exact)
        return L.check_lipschitz_in_args(x, x2, y, random_r(rng, exact=exact), p)
    if law == "holder":
        x, y = _measures(rng, space, 2, exact)
        return L.check_holder_in_r(x, y, random_r(rng, exact=exact), random_r(rng, exact=exact), p)
    if law == "generalized-condition":
        n = rng.randint(1, 4)
        xs = _measures(rng, space, n, exact, max_atoms=2)
        xs2 = _measures(rng, space, n, exact, max_atoms=2)
        rs = random_weights(rng, n, exact=exact)
        return L.check_generalized_condition(list(zip(rs, xs, xs2)), p)
    if law == "quantitative-inference":
        space, _ = _unit_scale_space(rng, exact, kinds)
        x, y, x2, y2 = (_unit_measure(rng, space, exact) for _ in range(4))
        r = random_r(rng, exact=exact)
        d1, d2 = wasserstein_cost(x, y, p), wasserstein_cost(x2, y2, p)
        q1 = _rational_upper_root(d1, p, rng)
        q2 = _rational_upper_root(d2, p, rng)
        if rng.random() < 0.1:
            # Deliberately too-tight premise: the trial is vacuous.
            q1 = Fraction(0)
        target = r * power(q1, p) + (1 - r) * power(q2, p)
        e = _rational_upper_root(target, p, rng)
        return L.check_quantitative_inference(x, y, x2, y2, r, q1, q2, e, p)
    raise KeyError(law)


# --- free extension trials ------------------------------------------------------

def _free_extension_setup(rng, p, exact, kinds):
    """A random space, a certified nonexpansive ``f`` and its codomain carrier."""
    space = _space(rng, exact, kinds)
    g = random_nonexpansive(rng, space, exact=exact)
    choice = rng.choice(("dirac", "mixture", "vector"))
    if choice == "dirac":
        return space, dirac_valued(g, space), L.MeasureCarrier(p)
    if choice == "mixture":
        h = random_nonexpansive(rng, space, exact=exact)
        lam = random_r(rng, exact=exact)
        return space, mixture_valued(g, h, lam, space), L.MeasureCarrier(p)
    if isinstance(space, Euclidean):
        return space, g, L.VectorCarrier(space.dim, p)
    if isinstance(space, RealLine):
        return space, (lambda x: (g(x),)), L.VectorCarrier(1, p)
    anchor = rng.randrange(space.n)
    scale = Fraction(rng.randint(0, 4), 4) if exact else rng.random()
    f = distance_to(space, anchor, scale)
    return space, (lambda x: f(g(x))), L.VectorCarrier(1, p)


def free_extension_trial(rng, p, exact=True, kinds=SPACE_KINDS) -> L.FreeExtensionReport:
    space, f, carrier = _free_extension_setup(rng, p, exact, kinds)
    mu, nu = _measures(rng, space, 2, exact)
    points = [random_point(rng, space, exact=exact) for _ in range(3)]
    return L.check_free_extension(f, mu, nu, random_r(rng, exact=exact), p, carrier, points)


# --- W_p metric trials -----------------------------------------------------------

def _reshuffled_copy(rng, mu: DiscreteMeasure) -> DiscreteMeasure:
    """The same measure rebuilt from split, reordered atoms."""
    atoms, weights = [], []
    for x, w in mu.items():
        if rng.random() < 0.5:
            atoms += [x, x]
            weights += [w / 2, w / 2]
        else:
            atoms.append(x)
            weights.append(w)
    order = list(range(len(atoms)))
    rng.shuffle(order)
    return DiscreteMeasure(mu.space, [atoms[i] for i in order], [weights[i] for i in order], exact=mu.exact)


def _close(a, b):
    return a == b if is_exact_number(a) and is_exact_number(b) else abs(a - b) <= FLOAT_TOL


def _metric_trial(law, p, rng, exact, kinds):
    space = _space(rng, exact, kinds)
    report = LawReport(law)
    if law == "wp-symmetry":
        mu, nu = _measures(rng, space, 2, exact)
        a, b = wasserstein_cost(mu, nu, p), wasserstein_cost(nu, mu, p)
        report.record_equality(_close(a, b), a - b, (mu, nu))
    elif law == "wp-zero":
        (mu,) = _measures(rng, space, 1, exact)
        c = wasserstein_cost(mu, _reshuffled_copy(rng, mu), p)
        report.record_equality(_close(c, 0), c, (mu,))
    elif law == "wp-triangle":
        mu, nu, om = _measures(rng, space, 3, exact)
        lhs = wasserstein(mu, om, p)
        rhs = wasserstein(mu, nu, p) + wasserstein(nu, om, p)
        report.record(float(rhs) - float(lhs), (mu, nu, om), tolerance=FLOAT_TOL)
    elif law == "wp-indiscernibles":
        mu = _measures(rng, space, 1, exact)[0]
        nu = _reshuffled_copy(rng, mu) if rng.random() < 0.5 else _measures(rng, space, 1, exact)[0]
        c = wasserstein_cost(mu, nu, p)
        # W_p = 0 must force equality; W_p > 0 must rule it out.
        ok = (c == 0) == (mu == nu) if exact else ((abs(c) <= FLOAT_TOL) == mu.approx_equal(nu))
        report.record_equality(ok, 0, (mu, nu, c))
    else:
        raise KeyError(law)
    return report


MONOTONE_ORDERS = (1, 1.5, 2, 3)


def _monotone_trial(rng, exact, kinds, orders=MONOTONE_ORDERS):
    space = _space(rng, exact, kinds)
    mu, nu = _measures(rng, space, 2, exact)
    values = [float(wasserstein(mu, nu, q)) for q in orders]
    report = LawReport("wp-monotone")
    slack = min(b - a for a, b in zip(values, values[1:]))
    report.record(slack, (mu, nu, values), tolerance=FLOAT_TOL)
    return report


# --- drivers --------------------------------------------------------------------

def run_law(law: str, p=2, trials: int = 1000, seed=0, *, exact: bool = True, kinds=SPACE_KINDS) -> LawReport:
    """Run ``trials`` random instances of one law and merge the outcomes."""
    rng = _rng(seed, law, "-" if law in P_INDEPENDENT else p)
    reports = []
    for _ in range(trials):
        if law in BARYCENTRIC_LAWS:
            reports.append(_barycentric_trial(law, rng, exact, kinds))
        elif law in WASSERSTEIN_LAWS:
            reports.append(_wasserstein_trial(law, p, rng, exact, kinds))
        elif law in FREE_EXTENSION_LAWS:
            trial = free_extension_trial(rng, p, exact, kinds)
            reports.append(next(r for r in trial.reports() if r.law == law))
        elif law in METRIC_LAWS:
            reports.append(_metric_trial(law, p, rng, exact, kinds))
        elif law == "wp-monotone":
            reports.append(_monotone_trial(rng, exact, kinds))
        else:
            raise KeyError(f"unknown law {law!r}")
    report = merge_reports(reports)
    if law not in P_INDEPENDENT:
        report.law = f"{law}[p={p}]"
    return report


def run_free_extension(p=2, trials: int = 100, seed=0, *, exact: bool = True, kinds=SPACE_KINDS) -> list[LawReport]:
    """All three free-extension laws on the same ``trials`` random maps."""
    rng = _rng(seed, "free-extension", p)
    rows = [free_extension_trial(rng, p, exact, kinds).reports() for _ in range(trials)]
    out = [merge_reports(col) for col in zip(*rows)]
    for r in out:
        r.law = f"{r.law}[p={p}]"
    return out


def run_law_set(name: str, p_values: Iterable = (2,), trials: int = 1000, seed=0, *, exact: bool = True,
                kinds=SPACE_KINDS, progress: Callable[[LawReport], None] | None = None) -> list[LawReport]:
    if name == "all":
        names = list(LAW_SETS)
    elif name in LAW_SETS:
        names = [name]
    else:
        raise KeyError(f"unknown law set {name!r}; choose from {sorted(LAW_SETS)} or 'all'")
    out = []
    for set_name in names:
        for law in LAW_SETS[set_name]:
            ps = ["-"] if law in P_INDEPENDENT else list(p_values)
            for p in ps:
                report = run_law(law, 2 if p == "-" else p, trials, seed, exact=exact, kinds=kinds)
                out.append(report)
                if progress is not None:
                    progress(report)
    return out

