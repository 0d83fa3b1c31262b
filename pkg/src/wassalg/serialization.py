"""JSON measures, JSON matrix spaces and CSV coupling tables."""

from __future__ import annotations

import csv
import io
import json
import os
from fractions import Fraction
from typing import Any

from .measure import DiscreteMeasure, MeasureError
from .metric import Euclidean, MatrixSpace, MetricError, MetricSpace, ProductSpace, RealLine
from .numeric import format_number, parse_number
from .transport import Coupling


def space_from_json(doc: Any, *, exact: bool = False, base_dir: str | None = None) -> MetricSpace:
    """``"line"``, ``{"dim": n}``, a matrix ``{"n": .., "d": [[..]]}``, or a
    path to a JSON file holding one of these."""
    if isinstance(doc, str):
        if doc == "line":
            return RealLine()
        path = doc if base_dir is None or os.path.isabs(doc) else os.path.join(base_dir, doc)
        if os.path.exists(path):
            with open(path) as fh:
                return space_from_json(json.load(fh), exact=exact, base_dir=os.path.dirname(path))
        raise MetricError(f"unknown space {doc!r}")
    if isinstance(doc, dict):
        if "dim" in doc:
            return Euclidean(doc["dim"])
        if "d" in doc:
            return MatrixSpace.from_json(doc, exact=exact)
        if "product" in doc:
            left, right = doc["product"]
            return ProductSpace(space_from_json(left, exact=exact), space_from_json(right, exact=exact))
    raise MetricError(f"unrecognised space description {doc!r}")


def point_from_json(space: MetricSpace, raw, *, exact: bool):
    if isinstance(space, RealLine):
        return parse_number(raw, exact)
    if isinstance(space, Euclidean):
        if not isinstance(raw, list):
            raise MeasureError(f"Euclidean atoms are JSON arrays, got {raw!r}")
        return tuple(parse_number(c, exact) for c in raw)
    if isinstance(space, MatrixSpace):
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise MeasureError(f"matrix-space atoms are integer indices, got {raw!r}")
        return raw
    if isinstance(space, ProductSpace):
        a, b = raw
        return (point_from_json(space.left, a, exact=exact), point_from_json(space.right, b, exact=exact))
    raise MeasureError(f"cannot read points of {space!r}")


def point_to_json(x):
    if isinstance(x, tuple):
        return [point_to_json(c) for c in x]
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else format_number(x)
    return x


def measure_from_json(doc: Any, *, exact: bool = False, base_dir: str | None = None) -> DiscreteMeasure:
    try:
        space_doc, atoms, weights = doc["space"], doc["atoms"], doc["weights"]
    except (KeyError, TypeError) as exc:
        raise MeasureError('a measure needs "space", "atoms" and "weights"') from exc
    space = space_from_json(space_doc, exact=exact, base_dir=base_dir)
    if not isinstance(atoms, list) or not isinstance(weights, list):
        raise MeasureError('"atoms" and "weights" must be arrays')
    try:
        pts = [point_from_json(space, a, exact=exact) for a in atoms]
        ws = [parse_number(w, exact) for w in weights]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise MeasureError(f"bad number in measure: {exc}") from exc
    return DiscreteMeasure(space, pts, ws, exact=exact)


def measure_to_json(mu: DiscreteMeasure) -> dict:
    return {
        "space": mu.space.to_json(),
        "atoms": [point_to_json(x) for x in mu.atoms],
        "weights": [format_number(w) if isinstance(w, Fraction) else w for w in mu.weights],
    }


def load_measure(path: str, *, exact: bool = False, stdin=None) -> DiscreteMeasure:
    """Read a measure from ``path``; ``-`` means standard input."""
    if path == "-":
        import sys

        doc = json.load(stdin or sys.stdin)
        return measure_from_json(doc, exact=exact)
    with open(path) as fh:
        doc = json.load(fh)
    return measure_from_json(doc, exact=exact, base_dir=os.path.dirname(os.path.abspath(path)))


def _atom_cell(x) -> str:
    v = point_to_json(x)
    return v if isinstance(v, str) else json.dumps(v)


def coupling_to_csv(coupling: Coupling) -> str:
    """Header row of column atoms, then one row per row atom.

    Floats are written with 17 significant digits and Fractions as
    ``num/den`` so the table reads back losslessly.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + [_atom_cell(y) for y in coupling.col_measure.atoms])
    for x, row in zip(coupling.row_measure.atoms, coupling.matrix):
        w.writerow([_atom_cell(x)] + [format_number(v) for v in row])
    return buf.getvalue()


def _parse_atom_cell(space, cell: str, exact: bool):
    cell = cell.strip()
    try:
        raw = json.loads(cell)
    except json.JSONDecodeError:
        raw = cell  # "num/den" strings are not JSON
    return point_from_json(space, raw, exact=exact)


def coupling_from_csv(text: str, mu: DiscreteMeasure, nu: DiscreteMeasure) -> Coupling:
    """Rebuild a coupling from :func:`coupling_to_csv` output and check its
    marginals against ``mu`` and ``nu``."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise MeasureError("empty coupling table")
    exact = mu.exact and nu.exact
    cols = [_parse_atom_cell(nu.space, c, exact) for c in rows[0][1:]]
    col_index = {y: j for j, y in enumerate(nu.atoms)}
    row_index = {x: i for i, x in enumerate(mu.atoms)}
    zero = Fraction(0) if exact else 0.0
    matrix = [[zero] * len(nu) for _ in range(len(mu))]
    for row in rows[1:]:
        if not row:
            continue
        x = _parse_atom_cell(mu.space, row[0], exact)
        if x not in row_index:
            raise MeasureError(f"row atom {x!r} is not in the first measure's support")
        if len(row) - 1 != len(cols):
            raise MeasureError("ragged coupling table")
        for y, cell in zip(cols, row[1:]):
            v = parse_number(cell, exact)
            if v == 0:
                continue
            if y not in col_index:
                raise MeasureError(f"column atom {y!r} is not in the second measure's support")
            matrix[row_index[x]][col_index[y]] += v
    return Coupling(mu, nu, matrix)
