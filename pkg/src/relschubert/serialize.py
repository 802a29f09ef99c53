"""JSON helpers: rationals are written as [numerator, denominator] pairs."""
from fractions import Fraction

from .linalg import frac


def rational(x):
    x = frac(x)
    return [x.numerator, x.denominator]


def rational_vector(v):
    return [rational(x) for x in v]


def parse_rational(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (list, tuple)):
        if len(x) != 2 or x[1] == 0:
            raise ValueError("rationals are [num, den] pairs with den != 0")
        return Fraction(int(x[0]), int(x[1]))
    if isinstance(x, str):
        return Fraction(x)
    return frac(x)


def parse_vector(v):
    return tuple(parse_rational(x) for x in v)
