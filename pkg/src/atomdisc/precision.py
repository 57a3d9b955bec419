"""Working-precision real arithmetic.

Reals live in a private mpmath context so the package never touches the
global ``mpmath.mp`` settings. Exact values are ``fractions.Fraction``;
anything that mixes the two goes through :func:`to_real`.
"""
from __future__ import annotations

import contextlib
import math
from fractions import Fraction
from typing import Iterator, Union

import mpmath

DEFAULT_PRECISION = 50
MIN_PRECISION = 20

mp = mpmath.MPContext()
mp.dps = DEFAULT_PRECISION

Real = mpmath.ctx_mp_python.mpf
Number = Union[Fraction, "mpmath.mpf"]


def get_precision() -> int:
    return mp.dps


def set_precision(digits: int) -> None:
    if digits < MIN_PRECISION:
        raise ValueError(f"precision must be at least {MIN_PRECISION} digits, got {digits}")
    mp.dps = digits


@contextlib.contextmanager
def working_precision(digits: int) -> Iterator[None]:
    old = mp.dps
    set_precision(digits)
    try:
        yield
    finally:
        mp.dps = old


def is_exact(v) -> bool:
    return isinstance(v, (Fraction, int))


def to_real(v):
    """Convert an int, Fraction, str or mpf to a working-precision mpf."""
    if isinstance(v, Fraction):
        return mp.mpf(v.numerator) / v.denominator
    if isinstance(v, str):
        return mp.mpf(v)
    return mp.mpf(v)


def coerce_pair(a, b):
    """Bring two values to a common representation (Fraction if both exact)."""
    if is_exact(a) and is_exact(b):
        return Fraction(a), Fraction(b)
    return to_real(a), to_real(b)


def floor(v) -> int:
    if is_exact(v):
        return math.floor(v)
    return int(mp.floor(v))


def vmax(a, b):
    a, b = coerce_pair(a, b)
    return a if a >= b else b


def less_equal(a, b) -> bool:
    a, b = coerce_pair(a, b)
    return a <= b


def rel_slack() -> "mpmath.mpf":
    """Tolerance used for sums of real weights: 10^(2 - precision)."""
    return mp.mpf(10) ** (2 - mp.dps)


# Named irrational constants accepted in measure documents.
_CONSTANTS = {
    "inv_sqrt2": lambda: 1 / mp.sqrt(2),
    "one_minus_inv_sqrt2": lambda: 1 - 1 / mp.sqrt(2),
    "sqrt2_minus_1": lambda: mp.sqrt(2) - 1,
    "two_minus_sqrt2": lambda: 2 - mp.sqrt(2),
    "phi_minus_1": lambda: (mp.sqrt(5) - 1) / 2,
    "two_minus_phi": lambda: (3 - mp.sqrt(5)) / 2,
    "inv_pi": lambda: 1 / mp.pi,
    "one_minus_inv_pi": lambda: 1 - 1 / mp.pi,
    "inv_e": lambda: 1 / mp.e,
    "one_minus_inv_e": lambda: 1 - 1 / mp.e,
}


def constant_names() -> list[str]:
    return sorted(_CONSTANTS)


def constant(name: str):
    """Evaluate a named constant at the current working precision."""
    try:
        return _CONSTANTS[name]()
    except KeyError:
        raise KeyError(f"unknown constant {name!r}; known: {', '.join(constant_names())}") from None
