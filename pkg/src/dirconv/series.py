"""Evaluation of generalized Dirichlet series with rigorous tail bounds.

A window function g induces the series sum over x of g(x) e^{-x.s} with
s in C^k.  On the window the sum is finite; a norm certificate for g
turns the missing tail into an explicit bound valid on the closed
half-plane product {min_i Re(s_i) >= r}, because x.Re(s) >= r|x| there
for every x in [0,inf)^k.

``verify_scalar_equation`` checks that truncated evaluations of a
solved equation nearly satisfy the scalar polynomial equation, with the
allowed error propagated from coefficient and solution tails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import TruncatedFunction
from .certificate import NormCertificate
from .errors import OutOfHalfPlane
from .rounding import (abs_bounds, add_dn, add_up, mul_dn, mul_up, sub_up,
                       weight_bounds)
from .semigroup import size_bounds
from .solver import ConvPolynomial


@dataclass(frozen=True)
class SeriesValue:
    value: complex
    s: tuple
    window: object             # enumeration signature
    tail: object = None        # float bound or None when no certificate applies


def _normalize_point(enum, s) -> tuple:
    k = enum.backend.k
    if isinstance(s, (tuple, list)):
        if len(s) != k:
            raise ValueError(f"evaluation point must have {k} components")
        return tuple(complex(c) for c in s)
    return (complex(s),) * k


def _char_factor(enum, ident, s: tuple) -> complex:
    """e^{-x.s} for one element; ordinary-Dirichlet uses n^{-s} directly."""
    if enum.backend.kind == "ordinary-dirichlet":
        out = 1 + 0j
        for n, si in zip(ident, s):
            if n != 1:
                out *= complex(n) ** (-si)
        return out
    dot = 0j
    for c, si in zip(ident, s):
        dot += float(c) * si
    return _cexp(-dot)


def _cexp(z: complex) -> complex:
    m = math.exp(z.real)
    return complex(m * math.cos(z.imag), m * math.sin(z.imag))


def evaluate(g: TruncatedFunction, s) -> SeriesValue:
    """The window part of the series at s, in enumeration order.

    Kahan-compensated summation keeps the result independent of value
    magnitudes to near machine precision while staying deterministic.
    """
    pt = _normalize_point(g.enum, s)
    total = 0j
    comp = 0j
    for i, e in enumerate(g.enum.elements):
        term = complex(g.values[i]) * _char_factor(g.enum, e.ident, pt)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return SeriesValue(value=total, s=pt, window=g.enum.signature)


def tail_bound(g: TruncatedFunction, cert: NormCertificate, s) -> float:
    """Upper bound for the absolute series tail beyond the window.

    Valid when min_i Re(s_i) >= cert.r: then |e^{-x.s}| <= e^{-r|x|}
    pointwise, so the tail is at most the certified norm |z0| + t_star
    minus the window part of the r-weighted sum (rounded down).
    """
    pt = _normalize_point(g.enum, s)
    sigma = min(c.real for c in pt)
    if sigma < cert.r:
        raise OutOfHalfPlane(
            f"min Re(s) = {sigma} lies below the certified rate r = {cert.r}")
    window = 0.0
    for i, e in enumerate(g.enum.elements):
        lo_s, hi_s = size_bounds(e.size)
        w_lo = weight_bounds(cert.r, lo_s, hi_s)[0]
        a_lo = abs_bounds(g.values[i])[0]
        # clamping keeps the lower bound monotone when terms fall below
        # one ulp of the accumulator
        window = max(window, add_dn(window, mul_dn(a_lo, w_lo)))
    bound = sub_up(add_up(cert.abs_z0, cert.t_star), window)
    return max(0.0, bound)


@dataclass(frozen=True)
class PointCheck:
    s: tuple
    residual: float            # |sum_j a~_j(s) g~(s)^j|
    allowance: float           # propagated tail bound plus float fuzz
    ok: bool


@dataclass(frozen=True)
class VerifyReport:
    points: tuple
    all_ok: bool
    worst_ratio: float         # max residual/allowance over the points


def verify_scalar_equation(T: ConvPolynomial, g: TruncatedFunction, points,
                           cert: NormCertificate = None, g_tail=None,
                           coeff_tails=None, margin: float = 0.0,
                           fuzz: float = 1e-12) -> VerifyReport:
    """Check the scalar equation at sample points against propagated tails.

    Tail sources: the solution tail comes from ``g_tail(s)`` when given,
    otherwise from the certificate (which requires min Re(s) >= r +
    margin).  ``coeff_tails`` gives per-coefficient tails as a callable
    (j, s) -> bound, a sequence of per-j bounds, or None for
    window-supported coefficients.  The allowed residual at s is

        sum_j [ tail_aj * (|g~| + tail_g)^j
                + |a~_j| * j * (|g~| + tail_g)^{j-1} * tail_g ]

    plus a small multiple of the evaluation scale for float round-off.
    """
    d = T.degree
    checks = []
    worst = 0.0
    for s in points:
        pt = _normalize_point(T.enum, s)
        if g_tail is not None:
            tg = float(g_tail(pt if len(pt) > 1 else pt[0]))
        elif cert is not None:
            sigma = min(c.real for c in pt)
            if sigma < cert.r + margin:
                raise OutOfHalfPlane(
                    f"point {pt} below the certified half-plane r + margin = "
                    f"{cert.r + margin}")
            tg = tail_bound(g, cert, pt)
        else:
            raise ValueError("need a certificate or an explicit g_tail")
        gval = evaluate(g, pt).value
        avals = [evaluate(c, pt).value for c in T.coeffs]
        resid = abs(sum(a * gval ** j for j, a in enumerate(avals)))

        gmag = add_up(abs(gval), tg)
        allowance = 0.0
        scale = 0.0
        for j, a in enumerate(avals):
            ta = _coeff_tail(coeff_tails, j, pt)
            allowance = add_up(allowance, mul_up(ta, _pow_up_f(gmag, j)))
            if j >= 1:
                allowance = add_up(
                    allowance,
                    mul_up(mul_up(abs(a) * j, _pow_up_f(gmag, j - 1)), tg))
            scale = add_up(scale, mul_up(abs(a), _pow_up_f(max(1.0, abs(gval)), j)))
        allowance = add_up(allowance, mul_up(fuzz, scale))
        ok = resid <= allowance
        ratio = resid / allowance if allowance > 0 else math.inf
        worst = max(worst, ratio)
        checks.append(PointCheck(pt, resid, allowance, ok))
    return VerifyReport(tuple(checks), all(c.ok for c in checks), worst)


def _coeff_tail(coeff_tails, j, pt) -> float:
    if coeff_tails is None:
        return 0.0
    if callable(coeff_tails):
        return float(coeff_tails(j, pt if len(pt) > 1 else pt[0]))
    return float(coeff_tails[j])


def _pow_up_f(x: float, e: int) -> float:
    acc = 1.0
    for _ in range(e):
        acc = mul_up(acc, x)
    return acc
