import random
from fractions import Fraction as F

import pytest

from wassalg.metric import (
    Euclidean,
    MatrixSpace,
    MetricError,
    ProductSpace,
    RealLine,
    check_metric_axioms,
    distance,
    product_distance,
)


def test_line_distance():
    assert distance(RealLine(), 2, 5) == 3
    assert distance(RealLine(), F(7, 2), F(7, 2)) == 0


def test_matrix_lookup():
    space = MatrixSpace([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    assert space.distance(0, 2) == 2
    with pytest.raises(MetricError):
        distance(space, 0, 3)


def test_matrix_triangle_violation_rejected():
    with pytest.raises(MetricError):
        MatrixSpace([[0, 5, 1], [5, 0, 1], [1, 1, 0]])
    bad = MatrixSpace.unchecked([[0, 5, 1], [5, 0, 1], [1, 1, 0]])
    report = check_metric_axioms(bad, [0, 1, 2])
    assert not report.passed


@pytest.mark.parametrize("entries", [
    [[0, 1], [2, 0]],          # asymmetric
    [[0, 0], [0, 0]],          # not separating
    [[1, 1], [1, 0]],          # nonzero diagonal
    [[0, -1], [-1, 0]],        # negative
    [[0, float("inf")], [float("inf"), 0]],
])
def test_matrix_rejects_non_metrics(entries):
    with pytest.raises(MetricError):
        MatrixSpace(entries)


def test_euclidean_exact_when_perfect_square():
    plane = Euclidean(2)
    assert plane.distance((0, 0), (3, 4)) == 5
    assert isinstance(plane.distance((F(0), F(0)), (F(3), F(4))), F)
    assert plane.distance_pow((0, 0), (1, 1), 2) == 2
    assert plane.distance((0, 0), (1, 1)) == pytest.approx(2**0.5)


def test_euclidean_sample_passes():
    rng = random.Random(3)
    pts = [(rng.uniform(-5, 5), rng.uniform(-5, 5)) for _ in range(50)]
    report = check_metric_axioms(Euclidean(2), pts)
    assert report.passed and report.worst_slack >= -1e-9


def test_single_point_passes():
    assert check_metric_axioms(RealLine(), [1.5]).passed


def test_product_max_metric():
    line = RealLine()
    assert product_distance(line, line, (0, 0), (3, 1)) == 3
    assert product_distance(line, line, (0, 0), (0, 0)) == 0
    assert product_distance(line, line, (0, 0), (2, 2)) == 2
    assert ProductSpace(line, line).distance((0, 0), (1, 4)) == 4


def test_points_are_validated():
    with pytest.raises(MetricError):
        Euclidean(2).validate_point((1, 2, 3))
    with pytest.raises(MetricError):
        RealLine().validate_point(float("nan"))
