from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wassalg import (
    DiscreteMeasure,
    Euclidean,
    MatrixSpace,
    MeasureError,
    ProductSpace,
    RealLine,
    convex_fold,
    convex_sum,
    dirac,
    finite_convex_sum,
    p_moment,
    pushforward,
    support,
)
from wassalg.transport import coupling_from_measure, marginals

LINE = RealLine()

weights = st.lists(st.integers(1, 20), min_size=1, max_size=5)


@st.composite
def line_measures(draw):
    ws = draw(weights)
    atoms = draw(st.lists(st.integers(-6, 6), min_size=len(ws), max_size=len(ws)))
    total = sum(ws)
    return DiscreteMeasure(LINE, [F(a, 2) for a in atoms], [F(w, total) for w in ws])


rationals = st.fractions(min_value=0, max_value=1, max_denominator=12)


def test_coalescing_and_pruning():
    mu = DiscreteMeasure(LINE, [1, 0, 1, 2], [F(1, 4), F(1, 4), F(1, 2), F(0)])
    assert mu.atoms == (0, 1) and mu.weights == (F(1, 4), F(3, 4))


def test_exact_requires_unit_mass():
    with pytest.raises(MeasureError):
        DiscreteMeasure(LINE, [0, 1], [F(1, 2), F(1, 3)])


def test_float_mass_tolerance():
    mu = DiscreteMeasure(LINE, [0, 1], [0.5, 0.5 + 1e-13])
    assert abs(sum(mu.weights) - 1) < 1e-15
    with pytest.raises(MeasureError):
        DiscreteMeasure(LINE, [0, 1], [0.5, 0.4])


@pytest.mark.parametrize("atoms,ws", [([], []), ([0], [F(1), F(0)]), ([0, 1], [F(3, 2), F(-1, 2)])])
def test_malformed_measures(atoms, ws):
    with pytest.raises(MeasureError):
        DiscreteMeasure(LINE, atoms, ws)


def test_atoms_must_be_in_space():
    with pytest.raises(MeasureError):
        DiscreteMeasure(MatrixSpace([[0, 1], [1, 0]]), [2], [F(1)])


def test_dirac():
    d = dirac(LINE, 3)
    assert d.as_dict() == {3: 1}
    assert support(d) == {3}
    assert p_moment(d, 3, 2).value == 0


def test_convex_sum_of_diracs():
    m = convex_sum(dirac(LINE, 0), dirac(LINE, 1), F(1, 2))
    assert m.as_dict() == {0: F(1, 2), 1: F(1, 2)}
    assert support(m) == {0, 1}


def test_convex_sum_errors():
    mu = dirac(LINE, 0)
    with pytest.raises(MeasureError):
        convex_sum(mu, mu, F(3, 2))
    with pytest.raises(MeasureError):
        convex_sum(mu, dirac(Euclidean(1), (0,)), F(1, 2))


@given(line_measures(), line_measures(), rationals)
@settings(max_examples=150, deadline=None)
def test_barycentric_identities(mu, nu, r):
    assert convex_sum(mu, nu, 1) == mu
    assert convex_sum(mu, mu, r) == mu
    assert convex_sum(mu, nu, r) == convex_sum(nu, mu, 1 - r)
    if 0 < r < 1:
        assert support(convex_sum(mu, nu, r)) == support(mu) | support(nu)


def test_finite_convex_sum_examples():
    mus = [dirac(LINE, k) for k in range(3)]
    assert finite_convex_sum([(1, mus[0])]) == mus[0]
    for k in range(3):
        assert finite_convex_sum([(int(i == k), m) for i, m in enumerate(mus)]) == mus[k]
    mix = finite_convex_sum([(F(1, 2), mus[0]), (F(1, 4), mus[1]), (F(1, 4), mus[2])])
    assert mix.as_dict() == {0: F(1, 2), 1: F(1, 4), 2: F(1, 4)}


def test_finite_convex_sum_errors():
    with pytest.raises(MeasureError):
        finite_convex_sum([])
    with pytest.raises(MeasureError):
        finite_convex_sum([(F(1, 2), dirac(LINE, 0))])


@given(st.lists(line_measures(), min_size=1, max_size=4), weights)
@settings(max_examples=100, deadline=None)
def test_finite_sum_is_the_right_fold(mus, ws):
    ws = (ws * 4)[: len(mus)]
    terms = [(F(w, sum(ws)), m) for w, m in zip(ws, mus)]
    assert finite_convex_sum(terms) == convex_fold(terms, convex_sum)


def test_pushforward():
    mu = DiscreteMeasure(LINE, [0, 1], [F(1, 2), F(1, 2)])
    assert pushforward(mu, lambda x: x) == mu
    assert pushforward(mu, lambda x: 0) == dirac(LINE, 0)
    with pytest.raises(MeasureError):
        pushforward(mu, lambda x: (x,))


def test_diagonal_pushforward_has_equal_marginals():
    mu = DiscreteMeasure(LINE, [0, 1, 3], [F(1, 6), F(1, 3), F(1, 2)])
    joint = pushforward(mu, lambda x: (x, x), ProductSpace(LINE, LINE))
    left, right = marginals(coupling_from_measure(joint, mu, mu))
    assert left == mu and right == mu


def test_p_moment():
    mu = DiscreteMeasure(LINE, [0, 2], [F(1, 2), F(1, 2)])
    assert p_moment(mu, 0, 2).value == 2
    with pytest.raises(MeasureError):
        p_moment(mu, 0, F(1, 2))


@given(line_measures(), st.integers(-4, 4), st.integers(-4, 4), st.sampled_from([1, 2, 3]))
@settings(max_examples=100, deadline=None)
def test_moment_basepoint_change_bound(mu, a, b, p):
    # d(x,y)^p <= 2^(p-1) (d(x,z)^p + d(z,y)^p) integrated against mu
    ma = p_moment(mu, a, p).value
    mb = p_moment(mu, b, p).value
    assert ma <= 2 ** (p - 1) * (mb + abs(a - b) ** p)
