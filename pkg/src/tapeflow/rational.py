"""Exact rational arithmetic used throughout the LP layer.

gmpy2.mpq is preferred (it is several times faster than Fraction on the
dense simplex tableaus); fractions.Fraction is a drop-in fallback so the
package still works on interpreters without gmpy2.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Q

ZERO = Q(0)
ONE = Q(1)


def rat(value) -> "Q":
    """Coerce an int, string like '3/4', or rational to the Q type."""
    if isinstance(value, str):
        if "/" in value:
            num, den = value.split("/", 1)
            return Q(int(num), int(den))
        return Q(int(value))
    return Q(value)


def rat_str(value) -> str:
    """Render a rational as 'p' or 'p/q' (the dump format)."""
    s = str(value)
    return s
