"""Barycentric and Wasserstein algebra laws as executable checks.

A *carrier* bundles a set with its convex operations ``+_r`` and a
``p``-th-power distance. Two carriers ship here: finitely supported
measures under ``W_p`` and Euclidean vectors under the norm distance. Both
are Wasserstein algebras of every order ``p >= 1``.

Every ``check_*`` function evaluates one instance and returns a one-trial
:class:`LawReport`; batches merge them. Inequalities are compared on
``p``-th powers, so with rational data and integer ``p`` the comparison is
exact and the tolerance is zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from .measure import DiscreteMeasure, convex_fold, convex_sum, finite_convex_sum
from .metric import Euclidean
from .numeric import FLOAT_TOL, MASS_TOL, is_exact_number, power, to_fraction
from .report import LawReport
from .transport import wasserstein_cost

HALF = Fraction(1, 2)


class IllFormedAxiom(ValueError):
    """A quantitative-inference instance whose side condition fails."""


class MeasureCarrier:
    """Finitely supported measures with ``+_r`` and ``W_p``."""

    def __init__(self, p):
        self.p = p

    def combine(self, x: DiscreteMeasure, y: DiscreteMeasure, r) -> DiscreteMeasure:
        return convex_sum(x, y, r)

    def finite_sum(self, terms) -> DiscreteMeasure:
        return finite_convex_sum(terms)

    def distance_pow(self, x: DiscreteMeasure, y: DiscreteMeasure):
        return wasserstein_cost(x, y, self.p)

    def equal(self, x: DiscreteMeasure, y: DiscreteMeasure) -> bool:
        if x.exact and y.exact:
            return x == y
        return x.approx_equal(y, MASS_TOL)

    def discrepancy(self, x, y):
        return x.max_weight_difference(y)

    def is_exact(self, *xs) -> bool:
        return all(x.exact for x in xs)

    def __repr__(self):
        return f"MeasureCarrier(p={self.p})"


class VectorCarrier:
    """R^n as a convex set: ``x +_r y = r x + (1 - r) y`` with the Euclidean norm."""

    def __init__(self, dim: int, p):
        self.space = Euclidean(dim)
        self.p = p

    def combine(self, x, y, r):
        if r == 1:
            return x
        if r == 0:
            return y
        return tuple(r * a + (1 - r) * b for a, b in zip(x, y))

    def finite_sum(self, terms):
        terms = list(terms)
        dim = self.space.dim
        exact = all(is_exact_number(r) and all(is_exact_number(c) for c in x) for r, x in terms)
        out = []
        for k in range(dim):
            vals = [r * x[k] for r, x in terms]
            out.append(sum(vals, Fraction(0)) if exact else math.fsum(float(v) for v in vals))
        return tuple(out)

    def distance_pow(self, x, y):
        return self.space.distance_pow(x, y, self.p)

    def equal(self, x, y) -> bool:
        if self.is_exact(x, y):
            return x == y
        return max(abs(a - b) for a, b in zip(x, y)) <= MASS_TOL

    def discrepancy(self, x, y):
        return max(abs(a - b) for a, b in zip(x, y))

    def is_exact(self, *xs) -> bool:
        return all(is_exact_number(c) for x in xs for c in x)

    def __repr__(self):
        return f"VectorCarrier(dim={self.space.dim}, p={self.p})"


def _carrier_for(x, p, carrier):
    if carrier is not None:
        return carrier
    if isinstance(x, DiscreteMeasure):
        return MeasureCarrier(p)
    if isinstance(x, tuple):
        return VectorCarrier(len(x), p)
    raise TypeError(f"no default carrier for {type(x).__name__}")


def _tol(*values) -> float:
    return 0 if all(is_exact_number(v) for v in values) else FLOAT_TOL


def _inequality(law: str, lhs, rhs, witness) -> LawReport:
    report = LawReport(law)
    slack = rhs - lhs
    report.record(slack, witness, tolerance=_tol(lhs, rhs))
    return report


def _equality(law: str, carrier, a, b, witness) -> LawReport:
    report = LawReport(law, tolerance=0 if carrier.is_exact(a, b) else MASS_TOL)
    equal = carrier.equal(a, b)
    report.record_equality(equal, 0 if equal else carrier.discrepancy(a, b), witness)
    return report


# --- barycentric / convex-space axioms -------------------------------------

def skew_assoc_weight(p_hat, r):
    """Inner weight ``(r - p r) / (1 - p r)`` of skew associativity.

    Singular at ``p r = 1``; near there the limiting cases ``r = 1`` (weight
    1) and ``p = 1`` (weight 0) are returned.
    """
    denom = 1 - p_hat * r
    if not (is_exact_number(p_hat) and is_exact_number(r)) and abs(denom) < 1e-15:
        return 1.0 if abs(1 - r) <= abs(1 - p_hat) else 0.0
    if denom == 0:
        raise ValueError("skew associativity is undefined at p = r = 1")
    return (r - p_hat * r) / denom


def check_b1(x, y, carrier=None) -> LawReport:
    c = _carrier_for(x, None, carrier)
    return _equality("B1", c, c.combine(x, y, 1), x, (x, y))


def check_b2(x, r, carrier=None) -> LawReport:
    c = _carrier_for(x, None, carrier)
    return _equality("B2", c, c.combine(x, x, r), x, (x, r))


def check_sc(x, y, r, carrier=None) -> LawReport:
    c = _carrier_for(x, None, carrier)
    return _equality("SC", c, c.combine(x, y, r), c.combine(y, x, 1 - r), (x, y, r))


def check_sa(x, y, z, p_hat, r, carrier=None) -> LawReport:
    """``(x +_p y) +_r z = x +_{pr} (y +_{(r - pr)/(1 - pr)} z)`` for ``r, p < 1``."""
    if not (p_hat < 1 and r < 1):
        raise ValueError("skew associativity needs p < 1 and r < 1")
    c = _carrier_for(x, None, carrier)
    left = c.combine(c.combine(x, y, p_hat), z, r)
    right = c.combine(x, c.combine(y, z, skew_assoc_weight(p_hat, r)), p_hat * r)
    return _equality("SA", c, left, right, (x, y, z, p_hat, r))


def check_projection(xs: Sequence, k: int, carrier=None) -> LawReport:
    """``sum_i delta_ik x_i = x_k``."""
    c = _carrier_for(xs[0], None, carrier)
    terms = [(Fraction(int(i == k)), x) for i, x in enumerate(xs)]
    return _equality("projection", c, c.finite_sum(terms), xs[k], (xs, k))


def check_barycentre(rs: Sequence, s_rows: Sequence[Sequence], xs: Sequence, carrier=None) -> LawReport:
    """``sum_i r_i (sum_k s_ik x_k) = sum_k (sum_i r_i s_ik) x_k``."""
    c = _carrier_for(xs[0], None, carrier)
    inner = [c.finite_sum(list(zip(row, xs))) for row in s_rows]
    left = c.finite_sum(list(zip(rs, inner)))
    weights = [sum((r * row[k] for r, row in zip(rs, s_rows)), Fraction(0)) for k in range(len(xs))]
    if not all(is_exact_number(w) for w in weights):
        weights = [float(w) for w in weights]
    right = c.finite_sum(list(zip(weights, xs)))
    return _equality("barycentre", c, left, right, (rs, s_rows, xs))


def check_fold_agreement(terms: Sequence, carrier=None) -> LawReport:
    """The n-ary sum agrees with the right fold of binary ``+_r``."""
    c = _carrier_for(terms[0][1], None, carrier)
    return _equality("fold", c, c.finite_sum(terms), convex_fold(terms, c.combine), terms)


# --- midpoint algebra -------------------------------------------------------

def midpoint(x, y, carrier=None):
    c = _carrier_for(x, None, carrier)
    exact = c.is_exact(x, y)
    return c.combine(x, y, HALF if exact else 0.5)


def check_midpoint_c(x, y, carrier=None) -> LawReport:
    c = _carrier_for(x, None, carrier)
    return _equality("midpoint-C", c, midpoint(x, y, c), midpoint(y, x, c), (x, y))


def check_midpoint_i(x, carrier=None) -> LawReport:
    c = _carrier_for(x, None, carrier)
    return _equality("midpoint-I", c, midpoint(x, x, c), x, (x,))


def check_midpoint_m(x, u, v, z, carrier=None) -> LawReport:
    """Mediality ``(x + u) + (v + z) = (x + v) + (u + z)`` for the midpoint."""
    c = _carrier_for(x, None, carrier)
    left = midpoint(midpoint(x, u, c), midpoint(v, z, c), c)
    right = midpoint(midpoint(x, v, c), midpoint(u, z, c), c)
    return _equality("midpoint-M", c, left, right, (x, u, v, z))


def dyadic_combination(x, y, num: int, den: int, carrier=None):
    """``x +_{num/den} y`` built only from midpoints; ``den`` a power of two.

    For ``r >= 1/2``: ``x +_r y = x + (x +_{2r-1} y)``; otherwise
    ``x +_r y = y + (x +_{2r} y)``, each step halving the denominator.
    """
    if isinstance(den, bool) or not isinstance(den, int) or den < 1 or den & (den - 1):
        raise ValueError(f"denominator must be a power of two, got {den!r}")
    if not 0 <= num <= den:
        raise ValueError(f"need 0 <= num <= den, got {num}/{den}")
    c = _carrier_for(x, None, carrier)
    while den > 1 and num % 2 == 0:
        num //= 2
        den //= 2
    if num == den:
        return x
    if num == 0:
        return y
    half = den // 2
    if 2 * num >= den:
        return midpoint(x, dyadic_combination(x, y, num - half, half, c), c)
    return midpoint(y, dyadic_combination(x, y, num, half, c), c)


def check_dyadic(x, y, num: int, den: int, carrier=None) -> LawReport:
    c = _carrier_for(x, None, carrier)
    r = Fraction(num, den) if c.is_exact(x, y) else num / den
    return _equality("dyadic", c, dyadic_combination(x, y, num, den, c), c.combine(x, y, r), (x, y, num, den))


# --- Wasserstein condition and its consequences ------------------------------

def check_wasserstein_condition(x, x2, y, y2, r, p, carrier=None) -> LawReport:
    """``d(x +_r y, x' +_r y')^p <= r d(x,x')^p + (1-r) d(y,y')^p``; slack = RHS - LHS."""
    c = _carrier_for(x, p, carrier)
    lhs = c.distance_pow(c.combine(x, y, r), c.combine(x2, y2, r))
    rhs = r * c.distance_pow(x, x2) + (1 - r) * c.distance_pow(y, y2)
    return _inequality("wasserstein-condition", lhs, rhs, (x, x2, y, y2, r, p))


def check_nonexpansive(x, x2, y, y2, r, p, carrier=None) -> LawReport:
    """``d(x +_r y, x' +_r y') <= max(d(x,x'), d(y,y'))`` (implied by the condition)."""
    c = _carrier_for(x, p, carrier)
    lhs = c.distance_pow(c.combine(x, y, r), c.combine(x2, y2, r))
    rhs = max(c.distance_pow(x, x2), c.distance_pow(y, y2))
    return _inequality("nonexpansive", lhs, rhs, (x, x2, y, y2, r, p))


def check_lipschitz_in_args(x, x2, y, r, p, carrier=None) -> LawReport:
    """``+_r`` is ``r^(1/p)``-Lipschitz in its first argument and
    ``(1-r)^(1/p)``-Lipschitz in its second. Both bounds on one instance;
    the reported slack is the smaller of the two."""
    c = _carrier_for(x, p, carrier)
    dxx = c.distance_pow(x, x2)
    first = r * dxx - c.distance_pow(c.combine(x, y, r), c.combine(x2, y, r))
    second = (1 - r) * dxx - c.distance_pow(c.combine(y, x, r), c.combine(y, x2, r))
    report = LawReport("lipschitz")
    report.record(min(first, second), (x, x2, y, r, p), tolerance=_tol(first, second))
    return report


def check_holder_in_r(x, y, r, s, p, carrier=None) -> LawReport:
    """``d(x +_r y, x +_s y) <= d(x, y) |r - s|^(1/p)``, compared as p-th powers."""
    c = _carrier_for(x, p, carrier)
    lhs = c.distance_pow(c.combine(x, y, r), c.combine(x, y, s))
    rhs = c.distance_pow(x, y) * abs(r - s)
    return _inequality("holder", lhs, rhs, (x, y, r, s, p))


def check_generalized_condition(pairs: Sequence[tuple[Any, Any, Any]], p, carrier=None) -> LawReport:
    """``d(sum r_i x_i, sum r_i x'_i)^p <= sum r_i d(x_i, x'_i)^p``."""
    rs = [r for r, _, _ in pairs]
    if any(r < 0 for r in rs):
        raise ValueError("weights must be nonnegative")
    total = sum(rs, Fraction(0)) if all(is_exact_number(r) for r in rs) else math.fsum(rs)
    if abs(total - 1) > (0 if is_exact_number(total) else MASS_TOL):
        raise ValueError(f"weights sum to {total}, not 1")
    c = _carrier_for(pairs[0][1], p, carrier)
    left = c.finite_sum([(r, x) for r, x, _ in pairs])
    right = c.finite_sum([(r, x2) for r, _, x2 in pairs])
    lhs = c.distance_pow(left, right)
    terms = [r * c.distance_pow(x, x2) for r, x, x2 in pairs]
    rhs = sum(terms, Fraction(0)) if all(is_exact_number(t) for t in terms) else math.fsum(float(t) for t in terms)
    return _inequality("generalized-condition", lhs, rhs, (pairs, p))


def quantitative_side_condition(r, q1, q2, e, p) -> bool:
    return r * power(q1, p) + (1 - r) * power(q2, p) <= power(e, p)


def check_quantitative_inference(x, y, x2, y2, r, q1, q2, e, p, carrier=None) -> LawReport:
    """Soundness of ``x =_q1 y, x' =_q2 y' |- x +_r x' =_e y +_r y'``.

    ``q1, q2, e`` are rationals in [0, 1] with ``r q1^p + (1-r) q2^p <= e^p``;
    instances violating that are ill-formed and rejected. When a premise
    fails the trial is recorded as vacuous.
    """
    q1, q2, e = (to_fraction(q) for q in (q1, q2, e))
    for q in (q1, q2, e):
        if not 0 <= q <= 1:
            raise IllFormedAxiom(f"quantities must lie in [0, 1], got {q}")
    if not quantitative_side_condition(r, q1, q2, e, p):
        raise IllFormedAxiom(f"r q1^p + (1-r) q2^p > e^p for r={r}, q1={q1}, q2={q2}, e={e}, p={p}")
    c = _carrier_for(x, p, carrier)
    report = LawReport("quantitative-inference")
    d1, d2 = c.distance_pow(x, y), c.distance_pow(x2, y2)
    q1p, q2p, ep = power(q1, p), power(q2, p), power(e, p)
    if d1 > q1p + _tol(d1) or d2 > q2p + _tol(d2):
        report.record_vacuous()
        return report
    lhs = c.distance_pow(c.combine(x, x2, r), c.combine(y, y2, r))
    report.record(ep - lhs, (x, y, x2, y2, r, q1, q2, e, p), tolerance=_tol(lhs, ep))
    return report


# --- free extension ------------------------------------------------------------

def free_extension(f: Callable, mu: DiscreteMeasure, carrier=None):
    """The affine extension ``mu -> sum_s mu(s) f(s)`` of ``f`` along Dirac."""
    terms = [(w, f(x)) for x, w in mu.items()]
    c = carrier if carrier is not None else _carrier_for(terms[0][1], None, None)
    return c.finite_sum(terms)


@dataclass
class FreeExtensionReport:
    unit: LawReport
    affinity: LawReport
    nonexpansive: LawReport

    def reports(self) -> list[LawReport]:
        return [self.unit, self.affinity, self.nonexpansive]


def check_free_extension(f, mu: DiscreteMeasure, nu: DiscreteMeasure, r, p, carrier, points=()) -> FreeExtensionReport:
    """Unit law ``f_bar(delta x) = f(x)``, affinity, and
    ``d(f_bar mu, f_bar nu) <= W_p(mu, nu)`` for a nonexpansive ``f``."""
    from .measure import dirac

    unit = LawReport("free-extension-unit", tolerance=0)
    for x in tuple(points) or mu.atoms:
        fx = f(x)
        ok = carrier.equal(free_extension(f, dirac(mu.space, x), carrier), fx)
        unit.record_equality(ok, 0, (x,))
    lhs = free_extension(f, convex_sum(mu, nu, r), carrier)
    rhs = carrier.combine(free_extension(f, mu, carrier), free_extension(f, nu, carrier), r)
    affinity = _equality("free-extension-affinity", carrier, lhs, rhs, (mu, nu, r))
    d_img = carrier.distance_pow(free_extension(f, mu, carrier), free_extension(f, nu, carrier))
    d_src = wasserstein_cost(mu, nu, p)
    nonexp = _inequality("free-extension-nonexpansive", d_img, d_src, (mu, nu, p))
    return FreeExtensionReport(unit, affinity, nonexp)
