"""Finitely supported probability measures on metric spaces, exact
Wasserstein distances, and randomized checks of the convex-combination
laws they satisfy."""

from .measure import (
    DiscreteMeasure,
    MeasureError,
    convex_fold,
    convex_sum,
    dirac,
    finite_convex_sum,
    p_moment,
    pushforward,
    support,
)
from .metric import Euclidean, MatrixSpace, MetricError, MetricSpace, ProductSpace, RealLine, check_metric_axioms, distance
from .oracle import brute_force_oracle, wasserstein_1d
from .report import LawReport
from .transport import Coupling, TransportResult, optimal_coupling, wasserstein, wasserstein_cost

__version__ = "0.1.0"

__all__ = [
    "Coupling",
    "DiscreteMeasure",
    "Euclidean",
    "LawReport",
    "MatrixSpace",
    "MeasureError",
    "MetricError",
    "MetricSpace",
    "ProductSpace",
    "RealLine",
    "TransportResult",
    "brute_force_oracle",
    "check_metric_axioms",
    "convex_fold",
    "convex_sum",
    "dirac",
    "distance",
    "finite_convex_sum",
    "optimal_coupling",
    "p_moment",
    "pushforward",
    "support",
    "wasserstein",
    "wasserstein_1d",
    "wasserstein_cost",
]
