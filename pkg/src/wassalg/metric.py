"""Metric spaces: the real line, Euclidean space, explicit finite distance
matrices, and binary products under the max metric."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Any, Sequence

from .numeric import (
    FLOAT_TOL,
    exact_root,
    integer_order,
    is_exact_number,
    parse_number,
    power,
)
from .report import LawReport


class MetricError(ValueError):
    """Raised for points outside a space or data violating the metric axioms."""


def _check_real(x) -> None:
    if isinstance(x, bool) or not isinstance(x, Real):
        raise MetricError(f"not a real number: {x!r}")
    if not math.isfinite(float(x)):
        raise MetricError(f"non-finite coordinate: {x!r}")


class MetricSpace:
    """Base class. Subclasses define ``validate_point`` and ``distance``.

    Spaces are immutable values; two spaces compare equal when they carry the
    same points and distances.
    """

    name = "abstract"

    def validate_point(self, x):
        raise NotImplementedError

    def contains(self, x) -> bool:
        try:
            self.validate_point(x)
        except (MetricError, TypeError):
            return False
        return True

    def distance(self, x, y):
        raise NotImplementedError

    def distance_pow(self, x, y, p):
        """``distance(x, y) ** p``; exact where the distance data allows it."""
        return power(self.distance(x, y), p)

    def sort_key(self, x):
        return x

    def to_json(self) -> Any:
        raise NotImplementedError


@dataclass(frozen=True)
class RealLine(MetricSpace):
    """The real line with ``d(x, y) = |x - y|``."""

    name = "line"

    def validate_point(self, x):
        _check_real(x)
        return x

    def distance(self, x, y):
        return abs(x - y)

    def to_json(self):
        return "line"


@dataclass(frozen=True)
class Euclidean(MetricSpace):
    """R^dim with the Euclidean metric. Points are tuples of length ``dim``."""

    dim: int

    name = "euclidean"

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise MetricError(f"dimension must be a positive integer, got {self.dim!r}")

    def validate_point(self, x):
        if not isinstance(x, tuple):
            raise MetricError(f"Euclidean points are tuples, got {type(x).__name__}")
        if len(x) != self.dim:
            raise MetricError(f"expected a point of dimension {self.dim}, got {len(x)}")
        for c in x:
            _check_real(c)
        return x

    def squared_distance(self, x, y):
        return sum((a - b) * (a - b) for a, b in zip(x, y))

    def distance(self, x, y):
        sq = self.squared_distance(x, y)
        if is_exact_number(sq):
            r = exact_root(Fraction(sq), 2)
            if r is not None:
                return r
        return math.sqrt(sq)

    def distance_pow(self, x, y, p):
        sq = self.squared_distance(x, y)
        k = integer_order(p)
        if is_exact_number(sq) and k is not None and k % 2 == 0:
            return Fraction(sq) ** (k // 2)
        return power(self.distance(x, y), p)

    def to_json(self):
        return {"dim": self.dim}


class MatrixSpace(MetricSpace):
    """A finite metric space on ``{0, ..., n-1}`` given by a distance matrix.

    The axioms are checked exhaustively on construction, triangles included.
    Entries may be ints/Fractions (exact) or floats.
    """

    name = "matrix"

    def __init__(self, entries: Sequence[Sequence], *, check: bool = True):
        rows = tuple(tuple(row) for row in entries)
        n = len(rows)
        if n == 0:
            raise MetricError("a matrix space needs at least one point")
        for row in rows:
            if len(row) != n:
                raise MetricError("distance matrix must be square")
            for v in row:
                _check_real(v)
                if v < 0:
                    raise MetricError(f"negative distance {v!r}")
        self.entries = rows
        if check:
            report = check_metric_axioms(self, range(n))
            if not report.passed:
                raise MetricError(f"distance matrix violates the metric axioms: {report.witness}")

    @classmethod
    def unchecked(cls, entries) -> "MatrixSpace":
        """Build without the axiom check; for exercising ``check_metric_axioms``."""
        return cls(entries, check=False)

    @classmethod
    def from_json(cls, doc, *, exact: bool = False) -> "MatrixSpace":
        try:
            n = doc["n"]
            d = doc["d"]
        except (KeyError, TypeError) as exc:
            raise MetricError('matrix space JSON needs "n" and "d"') from exc
        if len(d) != n:
            raise MetricError(f'"n" is {n} but "d" has {len(d)} rows')
        return cls([[parse_number(v, exact) for v in row] for row in d])

    @property
    def n(self) -> int:
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, MatrixSpace) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"MatrixSpace(n={self.n})"

    def validate_point(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise MetricError(f"matrix-space points are integer indices, got {x!r}")
        if not 0 <= x < self.n:
            raise MetricError(f"index {x} out of range for a {self.n}-point space")
        return x

    def distance(self, x, y):
        return self.entries[x][y]

    def to_json(self):
        from .numeric import format_number

        return {
            "n": self.n,
            "d": [[v if isinstance(v, (int, float)) else format_number(v) for v in row] for row in self.entries],
        }


@dataclass(frozen=True)
class ProductSpace(MetricSpace):
    """Binary product carrying the max metric."""

    left: MetricSpace
    right: MetricSpace

    name = "product"

    def validate_point(self, x):
        if not isinstance(x, tuple) or len(x) != 2:
            raise MetricError(f"product points are pairs, got {x!r}")
        self.left.validate_point(x[0])
        self.right.validate_point(x[1])
        return x

    def distance(self, x, y):
        return product_distance(self.left, self.right, x, y)

    def distance_pow(self, x, y, p):
        # t -> t**p is increasing, so max commutes with it.
        return max(self.left.distance_pow(x[0], y[0], p), self.right.distance_pow(x[1], y[1], p))

    def sort_key(self, x):
        return (self.left.sort_key(x[0]), self.right.sort_key(x[1]))

    def to_json(self):
        return {"product": [self.left.to_json(), self.right.to_json()]}


def distance(space: MetricSpace, x, y):
    space.validate_point(x)
    space.validate_point(y)
    return space.distance(x, y)


def product_distance(space_a: MetricSpace, space_b: MetricSpace, xy, xy2):
    (a, b), (a2, b2) = xy, xy2
    for s, pt in ((space_a, a), (space_a, a2), (space_b, b), (space_b, b2)):
        s.validate_point(pt)
    return max(space_a.distance(a, a2), space_b.distance(b, b2))


def check_metric_axioms(space: MetricSpace, sample, *, tolerance: float = FLOAT_TOL) -> LawReport:
    """Check identity, symmetry, separation and the triangle inequality over
    all pairs and triples drawn from ``sample``.

    ``worst_slack`` is the smallest ``d(x,y) + d(y,z) - d(x,z)`` seen (or a
    negative discrepancy for a failed equality axiom).
    """
    pts = list(sample)
    if not pts:
        raise ValueError("sample must be nonempty")
    report = LawReport("metric-axioms", tolerance=tolerance)
    dist = {}
    for i, x in enumerate(pts):
        for j, y in enumerate(pts):
            dist[i, j] = space.distance(x, y)
    for i, x in enumerate(pts):
        report.record_equality(dist[i, i] == 0, dist[i, i], ("identity", x))
    for i, j in itertools.combinations(range(len(pts)), 2):
        x, y = pts[i], pts[j]
        report.record_equality(dist[i, j] == dist[j, i], dist[i, j] - dist[j, i], ("symmetry", x, y))
        if x != y:
            report.record_equality(dist[i, j] > 0, 1 if dist[i, j] == 0 else 0, ("separation", x, y))
    exact = all(is_exact_number(v) for v in dist.values())
    tol = 0 if exact else tolerance
    for i, j, k in itertools.product(range(len(pts)), repeat=3):
        slack = dist[i, j] + dist[j, k] - dist[i, k]
        report.record(slack, ("triangle", pts[i], pts[j], pts[k]), tolerance=tol)
    return report
