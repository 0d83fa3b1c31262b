"""Helpers shared by the float and exact (rational) arithmetic modes."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational, Real

FLOAT_TOL = 1e-9
MASS_TOL = 1e-12


def is_exact_number(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


def to_fraction(x) -> Fraction:
    """Convert ints, Fractions and ``"num/den"`` / decimal strings to a Fraction.

    Floats are converted through their shortest decimal repr, so ``0.1``
    becomes ``1/10`` rather than the binary expansion.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot convert {x!r} to a rational")


def parse_number(x, exact: bool):
    if exact:
        return to_fraction(x)
    if isinstance(x, str):
        return float(Fraction(x.strip()))
    if isinstance(x, bool) or not isinstance(x, Real):
        raise TypeError(f"not a real number: {x!r}")
    return float(x)


def integer_order(p) -> int | None:
    """Return ``p`` as an int when it is a positive integer, else None."""
    if isinstance(p, bool):
        return None
    if isinstance(p, int):
        return p if p >= 1 else None
    if isinstance(p, Fraction) and p.denominator == 1 and p >= 1:
        return int(p)
    if isinstance(p, float) and p.is_integer() and p >= 1:
        return int(p)
    return None


def check_order(p) -> None:
    if isinstance(p, bool) or not isinstance(p, Real) or not p >= 1:
        raise ValueError(f"order p must be a real number >= 1, got {p!r}")
    if not math.isfinite(float(p)):
        raise ValueError("order p must be finite")


def power(x, p):
    """``x ** p`` keeping Fractions exact when ``p`` is a positive integer."""
    k = integer_order(p)
    if is_exact_number(x) and k is not None:
        return Fraction(x) ** k
    return float(x) ** float(p)


def _iroot(n: int, k: int) -> int | None:
    if n < 2:
        return n if n >= 0 else None
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x**k == n else None


def exact_root(x: Fraction, k: int) -> Fraction | None:
    """The exact rational k-th root of ``x`` if there is one."""
    num = _iroot(x.numerator, k)
    if num is None:
        return None
    den = _iroot(x.denominator, k)
    if den is None:
        return None
    return Fraction(num, den)


def root(x, p):
    """``x ** (1/p)``, exact when ``x`` is a perfect rational power."""
    if x == 0:
        return Fraction(0) if is_exact_number(x) else 0.0
    k = integer_order(p)
    if is_exact_number(x) and k is not None:
        r = exact_root(Fraction(x), k)
        if r is not None:
            return r
    return float(x) ** (1.0 / float(p))


def integerize(values) -> tuple[list[int], int]:
    """Scale Fractions by their common denominator: ``values[k] == ints[k] / den``."""
    fracs = [Fraction(v) for v in values]
    den = 1
    for f in fracs:
        den = den * f.denominator // math.gcd(den, f.denominator)
    return [f.numerator * (den // f.denominator) for f in fracs], den


def format_number(x) -> str:
    """17 significant digits for floats, ``num/den`` for Fractions."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    return f"{float(x):.17g}"
