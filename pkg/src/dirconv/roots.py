"""Root finding for the anchor polynomial of a convolution equation.

Exact mode peels off what exact arithmetic can represent (the root 0,
rational roots, Gaussian-rational roots of a residual quadratic) and
falls back to a Durand-Kerner iteration in complex doubles for the
rest.  The solver downstream only ever divides by the derivative at a
root, so the report flags which roots are simple and which are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .scalars import QC


@dataclass(frozen=True)
class Root:
    value: object          # Fraction | QC | complex
    multiplicity: int
    simple: bool
    exact: bool


def poly_eval(coeffs, z):
    """Horner evaluation; works for exact and double scalars alike."""
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * z + c
    return acc


def poly_derivative(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:] or [0 * coeffs[0]]


def _trim(coeffs):
    out = list(coeffs)
    while out and not out[-1]:
        out.pop()
    return out


def durand_kerner(coeffs, tol_scale=1e-14, max_iter=500):
    """All complex roots of a polynomial with complex double coefficients.

    Deterministic: fixed initial configuration (powers of 0.4 + 0.9i),
    fixed sweep order, fixed iteration cap.
    """
    coeffs = [complex(c) for c in coeffs]
    coeffs = _trim(coeffs)
    n = len(coeffs) - 1
    if n <= 0:
        return []
    lead = coeffs[-1]
    monic = [c / lead for c in coeffs]
    scale = max(abs(c) for c in monic)
    tol = tol_scale * max(1.0, scale)
    seed = 0.4 + 0.9j
    roots = [seed ** (k + 1) for k in range(n)]
    for _ in range(max_iter):
        moved = 0.0
        for i in range(n):
            zi = roots[i]
            num = poly_eval(monic, zi)
            den = 1 + 0j
            for j in range(n):
                if j != i:
                    den *= zi - roots[j]
            if den == 0:
                den = complex(tol, tol)
            step = num / den
            roots[i] = zi - step
            moved = max(moved, abs(step))
        if moved < tol:
            break
    return sorted(roots, key=lambda z: (z.real, z.imag))


def cluster(points, radius):
    """Greedy chaining of points within ``radius``; returns (center, count)."""
    pts = sorted(points, key=lambda z: (z.real, z.imag))
    groups = []
    for p in pts:
        for g in groups:
            if any(abs(p - q) <= radius for q in g):
                g.append(p)
                break
        else:
            groups.append([p])
    return [(sum(g) / len(g), len(g)) for g in groups]


def _rational_sqrt(q: Fraction):
    """Exact square root of a non-negative rational, or None."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn = math.isqrt(n)
    rd = math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def qc_sqrt(q: QC):
    """Exact Gaussian-rational square root, or None if it does not exist."""
    a, b = q.re, q.im
    if b == 0:
        r = _rational_sqrt(a)
        if r is not None:
            return QC(r)
        r = _rational_sqrt(-a)
        if r is not None:
            return QC(0, r)
        return None
    s = _rational_sqrt(a * a + b * b)
    if s is None:
        return None
    x2 = (a + s) / 2
    x = _rational_sqrt(x2)
    if x is None or x == 0:
        return None
    return QC(x, b / (2 * x))


def _as_qc(c) -> QC:
    return c if isinstance(c, QC) else QC(c)


def _divisors(n: int, cap: int = 10**12):
    n = abs(n)
    if n == 0 or n > cap:
        return None
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def rational_roots(coeffs):
    """Rational roots (with multiplicity) of a rational polynomial.

    ``coeffs`` are Fractions, constant term first and non-zero.  Returns
    (roots, deflated) where ``deflated`` has all found roots divided
    out.  Gives up (returns no roots) when the integerized ends are too
    large to factor quickly.
    """
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    ps = _divisors(ints[0])
    qs = _divisors(ints[-1])
    if ps is None or qs is None:
        return [], list(coeffs)
    candidates = sorted(
        {Fraction(sp * p, q) for p in ps for q in qs for sp in (1, -1)})
    work = list(coeffs)
    found = []
    for cand in candidates:
        while len(work) > 1 and poly_eval(work, cand) == 0:
            work = _deflate_exact(work, cand)
            found.append(cand)
    return found, work


def _deflate_exact(coeffs, root):
    """Synthetic division by (z - root); exact, assumes zero remainder."""
    n = len(coeffs) - 1
    out = [None] * n
    acc = coeffs[-1]
    for i in range(n - 1, -1, -1):
        out[i] = acc
        acc = coeffs[i] + acc * root
    return out


def find_roots(f_coeffs, exact: bool):
    """All roots of the anchor polynomial, flagged simple/exact.

    ``f_coeffs`` is the list a_0(0), ..., a_d(0) (already trimmed of
    leading zeros by the caller).  Simplicity is decided exactly where
    the root is exact and through the gate |f'(z)| > tau_simple
    otherwise, with tau_simple = 1e-6 * max|a_j(0)|.
    """
    d = len(f_coeffs) - 1
    scale = max(abs(complex(c) if isinstance(c, QC) else complex(c))
                for c in f_coeffs)
    tau_root = 1e-8 * (1.0 + scale)
    tau_simple = 1e-6 * scale

    fprime = poly_derivative(f_coeffs)
    roots: list[Root] = []

    # the root 0, exactly
    m0 = 0
    work = list(f_coeffs)
    while not work[0]:
        work = work[1:]
        m0 += 1
    if m0:
        zero = Fraction(0) if exact else 0j
        roots.append(Root(zero, m0, _is_simple(f_coeffs, fprime, zero, m0,
                                               exact, tau_simple), exact))

    if exact:
        work, exact_roots = _exact_roots(work)
        for val, mult in exact_roots:
            roots.append(Root(val, mult,
                              _is_simple(f_coeffs, fprime, val, mult, True,
                                         tau_simple), True))

    if len(work) > 1:
        approx = durand_kerner([complex(c) if isinstance(c, QC) else complex(c)
                                for c in work])
        for center, mult in cluster(approx, tau_root):
            simple = mult == 1 and abs(
                complex(poly_eval([complex(c) if isinstance(c, QC) else complex(c)
                                   for c in fprime], center))) > tau_simple
            roots.append(Root(center, mult, simple, False))

    roots.sort(key=_root_sort_key)
    assert sum(r.multiplicity for r in roots) == d
    return roots


def _exact_roots(work):
    """Strip every exactly representable root from ``work``."""
    found = {}

    def note(val, n=1):
        found[val] = found.get(val, 0) + n

    changed = True
    while changed and len(work) > 1:
        changed = False
        if len(work) == 2:  # linear: always exact
            val = _normalize(-_as_qc(work[0]) / _as_qc(work[1]))
            note(val)
            work = [work[1]]
            changed = True
            continue
        if all(isinstance(c, Fraction) or (isinstance(c, QC) and c.im == 0)
               for c in work):
            rats = [c if isinstance(c, Fraction) else c.re for c in work]
            rroots, deflated = rational_roots(rats)
            if rroots:
                for v in rroots:
                    note(v)
                work = deflated
                changed = True
                continue
        if len(work) == 3:  # quadratic with a Gaussian-rational discriminant
            a, b, c = _as_qc(work[2]), _as_qc(work[1]), _as_qc(work[0])
            disc = b * b - QC(4) * a * c
            s = qc_sqrt(disc)
            if s is not None:
                for sign in (1, -1):
                    val = _normalize((-b + (s if sign > 0 else -s)) / (QC(2) * a))
                    note(val)
                work = [work[2]]
                changed = True
                continue
    return work, sorted(found.items(), key=lambda kv: _value_sort_key(kv[0]))


def _normalize(v):
    if isinstance(v, QC) and v.im == 0:
        return v.re
    return v


def _is_simple(f_coeffs, fprime, value, mult, exact, tau_simple):
    if mult != 1:
        return False
    if exact and not isinstance(value, complex):
        return bool(poly_eval([_as_qc(c) for c in fprime], _as_qc(value)))
    fp = poly_eval([complex(c) if isinstance(c, QC) else complex(c)
                    for c in fprime], complex(value))
    return abs(fp) > tau_simple


def _value_sort_key(v):
    z = complex(v) if isinstance(v, QC) else complex(v)
    return (z.real, z.imag)


def _root_sort_key(r: Root):
    return _value_sort_key(r.value)
