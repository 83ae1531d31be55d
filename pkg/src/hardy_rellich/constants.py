"""Exact rational calculus for the Hardy-Rellich constants.

Every function here returns a :class:`fractions.Fraction`. Floats only enter
through :func:`as_rational`, which reads them through their shortest decimal
representation so that ``0.1`` becomes ``1/10``.

>>> sharp_constant(3)
Fraction(25, 36)
>>> eps_star(3)
Fraction(14, 9)
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction

__all__ = [
    "Rational",
    "as_rational",
    "check_dimension",
    "check_mode",
    "eigenvalue_ck",
    "sharp_constant",
    "g_lower",
    "h_lower",
    "eps_star",
    "min_split",
    "mode_limit_quotient",
    "asymptotic_quotient",
    "weighted_rellich_constant",
    "weighted_hardy_constant",
]


def check_dimension(n) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"dimension must be an int, got {type(n).__name__}")
    if n < 3:
        raise ValueError(f"dimension must be >= 3, got {n}")
    return n


def check_mode(k) -> int:
    if isinstance(k, bool) or not isinstance(k, int):
        raise TypeError(f"mode index must be an int, got {type(k).__name__}")
    if k < 0:
        raise ValueError(f"mode index must be >= 0, got {k}")
    return k


def as_rational(x) -> Fraction:
    """Convert ints, Fractions, decimal strings or floats to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, (int, _RationalABC, str)):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def eigenvalue_ck(n: int, k: int) -> Fraction:
    """Laplace-Beltrami eigenvalue ``k(k + n - 2)`` on the unit sphere of R^n."""
    check_dimension(n)
    check_mode(k)
    return Fraction(k * (k + n - 2))


def sharp_constant(n: int) -> Fraction:
    check_dimension(n)
    if n == 3:
        return Fraction(25, 36)
    if n == 4:
        return Fraction(3)
    return Fraction(n * n, 4)


def weighted_rellich_constant(n: int) -> Fraction:
    """``(n-2)^2/4``, the constant bounding ∫r^{n-1}u''^2 by ∫r^{n-3}u'^2."""
    check_dimension(n)
    return Fraction((n - 2) ** 2, 4)


def weighted_hardy_constant(n: int) -> Fraction:
    """``(n-4)^2/4``, the constant bounding ∫r^{n-3}u'^2 by ∫r^{n-5}u^2."""
    check_dimension(n)
    return Fraction((n - 4) ** 2, 4)


def g_lower(n: int, k: int) -> Fraction:
    """``(n-4)^2/2 + c_k + 2(n-4)``: lower factor for the spherical part."""
    c = eigenvalue_ck(n, k)
    return Fraction((n - 4) ** 2, 2) + c + 2 * (n - 4)


def h_lower(n: int, eps, k: int) -> Fraction:
    """``(2 + eps/c_k)(n-4)^2/4 + c_k + 2(n-4)``, defined for k >= 1."""
    c = eigenvalue_ck(n, k)
    if c == 0:
        raise ValueError("h_lower needs k >= 1 (c_0 = 0 appears in a denominator)")
    eps = as_rational(eps)
    return (2 + eps / c) * Fraction((n - 4) ** 2, 4) + c + 2 * (n - 4)


def eps_star(n: int) -> Fraction:
    """Balancing shift ``(n-1)(-n^2+4n+4)/(n^2-4n+12)`` used for n in {3, 4}.

    It is the unique eps with ``n^2/4 - eps == h_lower(n, eps, 1)``.
    """
    check_dimension(n)
    if n not in (3, 4):
        raise ValueError(f"eps_star is only used for n in {{3, 4}}, got {n}")
    return Fraction((n - 1) * (-n * n + 4 * n + 4), n * n - 4 * n + 12)


def min_split(n: int) -> Fraction:
    """``min(n^2/4, (n^2-2n-2)/2)``, the constant of the unbalanced split."""
    check_dimension(n)
    return min(Fraction(n * n, 4), Fraction(n * n - 2 * n - 2, 2))


def _leading_fraction(n: int, c: Fraction, a2: Fraction, b2: Fraction) -> Fraction:
    num = a2 * b2 + (n - 1 + 2 * c) * a2 + c * c + 2 * (n - 4) * c
    den = a2 + c
    if den == 0:
        raise ZeroDivisionError("degenerate quotient 0/0 (alpha = 0 and c_k = 0)")
    return num / den


def mode_limit_quotient(n: int, k: int) -> Fraction:
    """Limit of the mode-k quotient of ``r^{-(n-4)/2+eps} g(r)`` as eps -> 0.

    Rejects ``(n, k) = (4, 0)``, where numerator and denominator both vanish.
    """
    c = eigenvalue_ck(n, k)
    s2 = Fraction(n - 4, 2) ** 2
    t2 = Fraction(n - 2, 2) ** 2
    if s2 == 0 and c == 0:
        raise ValueError("mode_limit_quotient is 0/0 at (n, k) = (4, 0)")
    return _leading_fraction(n, c, s2, t2)


def asymptotic_quotient(n: int, k: int, eps) -> Fraction:
    """Leading-order quotient at finite eps, cutoff remainders dropped.

    With ``alpha = -(n-4)/2 + eps`` and ``beta = alpha - 1`` this is
    ``[a^2 b^2 + (n-1+2c_k) a^2 + c_k^2 + 2(n-4)c_k] / [a^2 + c_k]``.

    >>> asymptotic_quotient(5, 0, Fraction(1, 10))
    Fraction(149, 25)
    """
    c = eigenvalue_ck(n, k)
    eps = as_rational(eps)
    alpha = Fraction(-(n - 4), 2) + eps
    beta = alpha - 1
    a2 = alpha * alpha
    if a2 == 0 and c == 0:
        raise ValueError("asymptotic_quotient has a zero denominator (alpha = 0, k = 0)")
    return _leading_fraction(n, c, a2, beta * beta)
