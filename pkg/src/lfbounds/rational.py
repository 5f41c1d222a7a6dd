"""Exact rational arithmetic backend.

All exact computations in this package run on a single rational number
type: ``gmpy2.mpq`` when gmpy2 is importable (much faster), otherwise
``fractions.Fraction``.  Both are arbitrary-precision, always reduced to
lowest terms with a positive denominator, and interoperate with ints.
Code elsewhere only uses operator syntax plus the helpers below, so the
two backends are interchangeable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

try:
    from gmpy2 import mpq as _mpq
    from gmpy2 import mpz as _mpz

    RAT_BACKEND = "gmpy2"
    _RAT_TYPES = (int, Fraction, _mpq, _mpz)

    def _make(num, den=None):
        return _mpq(num) if den is None else _mpq(num, den)

except ImportError:  # pragma: no cover - exercised only without gmpy2
    RAT_BACKEND = "fraction"
    _RAT_TYPES = (int, Fraction)

    def _make(num, den=None):
        return Fraction(num) if den is None else Fraction(num, den)


Rat = Union[Fraction, "gmpy2.mpq"]  # noqa: F821 - purely documentary

ZERO = _make(0)
ONE = _make(1)


def rat(value, den=None) -> Rat:
    """Build an exact rational from int, "p/q" string, Fraction or mpq.

    Floats are rejected: silently rationalizing a float is precision loss
    in disguise.  Use :func:`rationalize` when that is actually intended.
    """
    if isinstance(value, float):
        raise TypeError(
            "refusing to convert float %r to an exact rational; "
            "use rationalize() for a nearby rational" % (value,)
        )
    if den is not None:
        return _make(value, den)
    if isinstance(value, str):
        return _make(Fraction(value.strip()))
    return _make(value)


def rationalize(value: float, max_denominator: int = 10**12) -> Rat:
    """Nearest rational to ``value`` with denominator <= max_denominator."""
    return _make(Fraction(value).limit_denominator(max_denominator))


def rat_str(value: Rat) -> str:
    """Canonical "p/q" (or plain "p") rendering of an exact rational."""
    return str(value)


def is_rational(value) -> bool:
    return isinstance(value, _RAT_TYPES)
