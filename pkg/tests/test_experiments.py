import json
import math
from pathlib import Path

import pytest

from wassalg import DiscreteMeasure, RealLine, dirac, wasserstein
from wassalg.experiments import (
    cauchy_experiment,
    classify_trace,
    density_experiment,
    dirichlet_moment_convergence,
    dirichlet_truncation,
    dyadic_grid_measure,
    fit_decay_exponent,
    moment_convergence_check,
    moment_growth,
    snap_to_grid,
    zeta,
)

GOLDENS = json.loads((Path(__file__).parent / "goldens" / "dirichlet_cauchy.json").read_text())


def _zeta_oracle(s, n=200000):
    # direct partial sum plus the integral bracket for the tail
    head = math.fsum(k ** -s for k in range(1, n))
    return head + n ** (1 - s) / (s - 1) + 0.5 * n ** -s


@pytest.mark.parametrize("s,exact", [(2, math.pi**2 / 6), (4, math.pi**4 / 90)])
def test_zeta_closed_forms(s, exact):
    assert zeta(s) == pytest.approx(exact, abs=1e-12)


@pytest.mark.parametrize("s", [1.5, 2.5, 3.0, 7.25])
def test_zeta_against_partial_sums(s):
    assert zeta(s) == pytest.approx(_zeta_oracle(s), rel=1e-10)


def test_zeta_against_mpmath():
    mpmath = pytest.importorskip("mpmath")
    for s in (1.1, 2, 3, 5.5):
        assert zeta(s) == pytest.approx(float(mpmath.zeta(s)), rel=1e-14)


@pytest.mark.parametrize("s", [1, 0.5, -2])
def test_zeta_diverges(s):
    with pytest.raises(ValueError):
        zeta(s)


def test_truncation_shape():
    d1 = dirichlet_truncation(2, 1).measure
    assert d1.atoms == (1, 2)
    assert d1.weights[0] == pytest.approx(1 / zeta(3))
    a, b = dirichlet_truncation(2, 5).measure, dirichlet_truncation(2, 9).measure
    assert a.weights[:5] == b.weights[:5]
    assert math.fsum(b.weights) == pytest.approx(1, abs=1e-15)
    with pytest.raises(ValueError):
        dirichlet_truncation(0.5, 3)
    with pytest.raises(ValueError):
        dirichlet_truncation(2, 0)


def test_moment_growth_first_row():
    z = zeta(3)
    w1 = 1 / z
    assert moment_growth(2, 1, 1).value_at(1) == pytest.approx(w1 + 2 * (1 - w1))


def test_moment_growth_trends():
    conv = moment_growth(2, 1, 256)
    assert all(d > 0 for d in conv.increments())
    assert conv.increments()[-1] < 1e-4
    div = moment_growth(2, 2, 256)
    assert div.value_at(256) > div.value_at(16) > div.value_at(4)


def test_cauchy_trace_short_schedule_matches_goldens():
    tr = cauchy_experiment(2, 1, (2, 4, 8))
    assert tr.distances == pytest.approx(GOLDENS["p1"][:3], rel=1e-12)
    assert tr.indices == [(2, 4), (4, 8), (8, 16)]


def test_equal_indices_give_zero():
    a = dirichlet_truncation(2, 7).measure
    assert wasserstein(a, dirichlet_truncation(2, 7).measure, 2) == 0


def test_classification_and_fit():
    assert classify_trace([1.0, 0.5, 0.05]) == "cauchy-like"
    assert classify_trace([1.0, 1.2, 1.1]) == "non-cauchy-like"
    assert classify_trace([1.0, 0.01, 0.5]) == "inconclusive"
    assert fit_decay_exponent([1, 2, 4, 8], [1, 0.5, 0.25, 0.125]) == pytest.approx(-1)
    assert math.isnan(fit_decay_exponent([1, 2], [1, 0]))
    with pytest.raises(ValueError):
        cauchy_experiment(2, 1, (4, 2))


def test_density_default():
    rows = density_experiment(k=5)
    assert rows[0].level == 5 and rows[0].distance == 0
    for r in rows:
        assert r.distance <= r.spacing
    assert [r.atoms for r in rows] == [32, 16, 8, 4, 2, 1]


def test_density_custom_target():
    target = DiscreteMeasure(RealLine(), [0.1, 0.7, 0.9], [0.2, 0.3, 0.5])
    rows = density_experiment(target, levels=[3, 1], p=2)
    assert all(r.distance <= r.spacing for r in rows)


def test_grid_helpers():
    from fractions import Fraction as F

    assert snap_to_grid(F(3, 10), F(1, 4)) == F(3, 8)
    assert snap_to_grid((0.3, 0.9), 0.5) == (0.25, 0.75)
    assert dyadic_grid_measure(2, exact=True).atoms == (F(1, 8), F(3, 8), F(5, 8), F(7, 8))


def test_moment_convergence():
    rep = dirichlet_moment_convergence(2, 1, x0=0)
    assert rep.verdict == "moments-converge" and rep.bound_holds
    mu = dirac(RealLine(), 3)
    const = moment_convergence_check([mu, mu, mu], mu, 0, 2)
    assert const.w_distances == [0, 0, 0] and const.moment_gaps == [0, 0, 0]
