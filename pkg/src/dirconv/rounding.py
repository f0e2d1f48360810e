"""Outward-rounded double precision helpers.

Certificates assert inequalities between computed quantities, so every
quantity feeding the "must hold" side of an inequality is rounded up at
each step and every favourable quantity is rounded down.  Directed
steps come from ``math.nextafter``; primitives that are not guaranteed
correctly rounded (exp, log) get a two-ulp safety bump, which absorbs
their at-most-one-ulp error on CPython/libm.
"""

from __future__ import annotations

import math
from fractions import Fraction

INF = math.inf


def up(x: float) -> float:
    return math.nextafter(x, INF)


def dn(x: float) -> float:
    return math.nextafter(x, -INF)


def add_up(a, b):
    s = a + b
    return s if s == 0.0 else up(s)  # a zero sum is exact under round-to-nearest


def add_dn(a, b):
    s = a + b
    return s if s == 0.0 else dn(s)


def sub_up(a, b):
    s = a - b
    return s if s == 0.0 else up(s)


def sub_dn(a, b):
    s = a - b
    return s if s == 0.0 else dn(s)


def mul_up(a, b):
    if a == 0.0 or b == 0.0:
        return 0.0
    return up(a * b)


def mul_dn(a, b):
    if a == 0.0 or b == 0.0:
        return 0.0
    return dn(a * b)


def div_up(a, b):
    if a == 0.0:
        return 0.0
    return up(a / b)


def div_dn(a, b):
    if a == 0.0:
        return 0.0
    return dn(a / b)


def exp_up(x: float) -> float:
    if x == 0.0:
        return 1.0
    return up(up(math.exp(up(x))))


def exp_dn(x: float) -> float:
    if x == 0.0:
        return 1.0
    v = dn(dn(math.exp(dn(x))))
    return v if v > 0.0 else 0.0


def log_up(x: float) -> float:
    if x == 1.0:
        return 0.0
    return up(up(math.log(up(x))))


def log_dn(x: float) -> float:
    if x == 1.0:
        return 0.0
    return dn(dn(math.log(dn(x))))


def frac_bounds(q) -> tuple[float, float]:
    """Directed double bounds of a rational (or int) value."""
    if isinstance(q, int):
        f = float(q)
        if int(f) == q:
            return f, f
        return dn(f), up(f)
    f = float(q)  # round-to-nearest
    if math.isinf(f):
        return (f, f) if f > 0 else (f, f)
    if Fraction(f) == q:
        return f, f
    return dn(f), up(f)


def abs_bounds_complex(z: complex) -> tuple[float, float]:
    """Directed bounds of |z| for a complex double (hypot is within 1 ulp)."""
    a = math.hypot(z.real, z.imag)
    if a == 0.0:
        return 0.0, 0.0
    lo = dn(dn(a))
    return (lo if lo > 0.0 else 0.0), up(up(a))


def abs_bounds_exact(q) -> tuple[float, float]:
    """Verified double bounds of |q| for a Fraction or QC.

    The square root of the exact squared modulus is bracketed and then
    validated by exact squaring, so the bounds are rigorous.
    """
    a2 = q.abs2() if hasattr(q, "abs2") else Fraction(q) * Fraction(q)
    if a2 == 0:
        return 0.0, 0.0
    flo, fhi = frac_bounds(a2)
    x = math.sqrt(fhi)
    hi = up(up(x))
    while Fraction(hi) * Fraction(hi) < a2:
        hi = up(hi)
    lo = dn(dn(x))
    if lo < 0.0:
        lo = 0.0
    while lo > 0.0 and Fraction(lo) * Fraction(lo) > a2:
        lo = dn(lo)
    return lo, hi


def abs_bounds(value) -> tuple[float, float]:
    """Directed bounds of |value| for any supported scalar."""
    if isinstance(value, complex):
        return abs_bounds_complex(value)
    return abs_bounds_exact(value)


def weight_bounds(r: float, size_lo: float, size_hi: float) -> tuple[float, float]:
    """Directed bounds of the damping factor e^(-r*size)."""
    if r == 0.0:
        return 1.0, 1.0
    if r >= 0.0:
        lo = exp_dn(-mul_up(r, size_hi))
        hi = exp_up(-mul_dn(r, size_lo))
    else:
        lo = exp_dn(-mul_up(r, size_lo))
        hi = exp_up(-mul_dn(r, size_hi))
    return lo, hi


def poly_eval_up(coeffs, x_up: float) -> float:
    """Upper bound of sum(c_i * x^i) for non-negative coeffs and x >= 0."""
    acc = 0.0
    for c in reversed(coeffs):
        acc = add_up(mul_up(acc, x_up), c)
    return acc


def sum_up(terms) -> float:
    acc = 0.0
    for t in terms:
        acc = add_up(acc, t)
    return acc


def sum_dn(terms) -> float:
    acc = 0.0
    for t in terms:
        acc = add_dn(acc, t)
    return acc
