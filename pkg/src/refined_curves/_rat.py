"""Arbitrary-precision rational scalars.

All coefficient arithmetic in this package is exact.  The backend is
``gmpy2.mpq`` when available (an order of magnitude faster) and
``fractions.Fraction`` otherwise; both normalize to lowest terms with a
positive denominator and print identically, so serialized output does not
depend on the backend.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as _mpq

    def rat(p, q=1):
        return _mpq(p, q)

    RAT_BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    def rat(p, q=1):
        return Fraction(p, q)

    RAT_BACKEND = "fractions"

RAT_ZERO = rat(0)
RAT_ONE = rat(1)


def rat_from_str(s: str):
    """Parse the canonical "p/q" (or bare "p") form."""
    if "/" in s:
        p, q = s.split("/")
        return rat(int(p), int(q))
    return rat(int(s))


def rat_to_str(x) -> str:
    """Canonical form: "p" for integers, "p/q" otherwise (q > 0)."""
    return str(x)


def is_zero(x) -> bool:
    return x == 0
