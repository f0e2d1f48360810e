"""Convergence certificates for solved convolution equations.

From the coefficient data of an equation and a simple anchor root z0,
two real polynomials with non-negative coefficients are formed:

    P(t) = |f'(z0)|^-1 * sum_{j>=2} |a_j(0)| sum_{i=2}^{j} C(j,i) |z0|^{j-i} t^i
    Q(t) = |f'(z0)|^-1 * sum_{j>=0} ||a_j||_rho t^j

The damping ratio R(t) = (t - P(t)) / Q(|z0| + t) controls a recursive
bound on the partial sums S_r(m) of |g(x)| e^{-r|x|} over 0 < |x| <= m:
once e^{-(r-rho) m1} <= R(t*) holds for the minimal positive size m1,
every partial sum stays below t*, giving ||g||_r <= |z0| + t*.

Everything feeding an inequality that must hold is rounded up; the
ratio R is rounded down.  The certificate therefore never claims more
than what the computed floats support.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import TruncatedFunction, r_norm_partial
from .errors import (AllCoefficientsZero, CertificateViolated, NoPositiveR,
                     ZeroDerivative)
from .rounding import (abs_bounds, add_up, div_up, dn, exp_up, frac_bounds,
                       log_dn, mul_dn, mul_up, poly_eval_up, sub_dn, sub_up,
                       up, weight_bounds)
from .roots import poly_derivative, poly_eval
from .semigroup import size_bounds
from .solver import ConvPolynomial

#: scope markers for the coefficient norms entering Q
WINDOW_EXACT = "window-exact"
USER_BOUND = "user-bound"


@dataclass(frozen=True)
class NormCertificate:
    """A computed convergence certificate.

    Claims, for the solution g anchored at z0:
      (i)  S_r(m) <= t_star for every size level m of the window, where
           S_r(m) sums |g(x)| e^{-r|x|} over 0 < |x| <= m;
      (ii) the full r-norm of g is at most |z0| + t_star,
    provided the coefficient norms used were not under-reported (scope
    ``window-exact`` assumes the coefficients vanish off the window).
    """

    rho: Fraction
    m1: object                 # exact minimal positive size
    z0: object
    P: tuple                   # round-up coefficients, index = power of t
    Q: tuple
    t_star: float
    C: float                   # clamped damping ratio actually certified
    r: float
    scope: str
    abs_z0: float              # round-up |z0|

    def m1_bounds(self):
        return size_bounds(self.m1)


def _norms(T: ConvPolynomial, rho, norm_bounds):
    """Round-up window norms ||a_j||_rho, optionally dominated by user bounds."""
    norms = [r_norm_partial(c, float(rho), include_zero=True) for c in T.coeffs]
    scope = WINDOW_EXACT
    if norm_bounds is not None:
        if len(norm_bounds) != len(norms):
            raise ValueError("need one norm bound per coefficient")
        norms = [max(w, float(b)) for w, b in zip(norms, norm_bounds)]
        scope = USER_BOUND
    return norms, scope


def _abs_fprime_dn(T: ConvPolynomial, z0) -> float:
    f = T.anchor_coeffs()
    fp = poly_eval(poly_derivative(f), z0)
    lo = abs_bounds(fp)[0]
    if T.exact:
        if not fp:
            raise ZeroDerivative("f'(z0) = 0; no certificate at this anchor")
    elif lo <= 0.0:
        raise ZeroDerivative("|f'(z0)| is numerically zero; no certificate")
    return lo


def build_PQ(T: ConvPolynomial, z0, rho=0, norm_bounds=None):
    """The two comparison polynomials as round-up coefficient tuples."""
    z0 = _anchor_value(T, z0)
    d = T.degree
    fp_dn = _abs_fprime_dn(T, z0)
    norms, _ = _norms(T, rho, norm_bounds)
    if not any(norms):
        raise AllCoefficientsZero("all coefficient norms vanish; nothing to certify")
    abs_z0_up = abs_bounds(z0)[1]
    a0_abs = [abs_bounds(c.values[0])[1] for c in T.coeffs]

    P = [0.0] * (d + 1)
    for j in range(2, d + 1):
        if a0_abs[j] == 0.0:
            continue
        for i in range(2, j + 1):
            term = mul_up(a0_abs[j], float(math.comb(j, i)))
            term = mul_up(term, _pow_up(abs_z0_up, j - i))
            P[i] = add_up(P[i], div_up(term, fp_dn))
    Q = tuple(div_up(nj, fp_dn) for nj in norms)
    return tuple(P), Q


def _pow_up(x: float, e: int) -> float:
    acc = 1.0
    for _ in range(e):
        acc = mul_up(acc, x)
    return acc


def _anchor_value(T: ConvPolynomial, z0):
    from .scalars import double_value, exact_value

    return exact_value(z0) if T.exact else double_value(z0)


def _ratio_down(P, Q, abs_z0_up, t: float) -> float:
    num = sub_dn(t, poly_eval_up(P, up(t)))
    den = poly_eval_up(Q, add_up(abs_z0_up, t))
    if den <= 0.0:
        return -math.inf
    return dn(num / den)


GRID_POINTS = 2048
GRID_LO = 1e-6
GRID_HI = 1e6


def maximize_R(P, Q, abs_z0, grid_points=GRID_POINTS, lo=GRID_LO, hi=GRID_HI):
    """Near-maximizer of R(t) = (t - P(t)) / Q(|z0| + t) over t > 0.

    A log-spaced grid locates the best bracket and golden-section
    refinement polishes it.  When the best sample sits at the upper grid
    edge (the degree-1 plateau, where the supremum is approached as
    t -> infinity) the edge value is accepted as is.  R is always
    evaluated rounded down, so the returned value is certified.
    """
    la, lb = math.log(lo), math.log(hi)
    ts = [math.exp(la + (lb - la) * i / (grid_points - 1)) for i in range(grid_points)]
    vals = [_ratio_down(P, Q, abs_z0, t) for t in ts]
    best = max(range(grid_points), key=lambda i: vals[i])
    if vals[best] <= 0.0:
        raise NoPositiveR("the damping ratio is non-positive at every sampled t")
    best_t, best_v = ts[best], vals[best]
    if best == grid_points - 1:
        return best_t, best_v
    a = ts[best - 1] if best > 0 else lo
    b = ts[best + 1]
    inv_golden = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - inv_golden * (b - a)
    x2 = a + inv_golden * (b - a)
    f1 = _ratio_down(P, Q, abs_z0, x1)
    f2 = _ratio_down(P, Q, abs_z0, x2)
    for _ in range(160):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv_golden * (b - a)
            f2 = _ratio_down(P, Q, abs_z0, x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv_golden * (b - a)
            f1 = _ratio_down(P, Q, abs_z0, x1)
        t = x1 if f1 >= f2 else x2
        v = f1 if f1 >= f2 else f2
        if v > best_v:
            best_t, best_v = t, v
    return best_t, best_v


def certify(T: ConvPolynomial, z0, rho=0, norm_bounds=None) -> NormCertificate:
    """Build the full certificate at anchor z0 and norm level rho.

    The certified rate is r = rho + m1^{-1} max(0, -log C) with C the
    clamped ratio min(R(t*), 1); r is bumped upward until the defining
    inequality e^{-(r-rho) m1} <= C holds in round-up arithmetic.
    """
    rho = Fraction(rho)
    z0 = _anchor_value(T, z0)
    P, Q = build_PQ(T, z0, rho, norm_bounds)
    _, scope = _norms(T, rho, norm_bounds)
    abs_z0_up = abs_bounds(z0)[1]
    t_star, C_raw = maximize_R(P, Q, abs_z0_up)
    C = min(C_raw, 1.0)
    m1 = T.enum.m1
    m1_lo, _ = size_bounds(m1)
    if C >= 1.0:
        s = 0.0
    else:
        s = div_up(up(-log_dn(C)), m1_lo)
        # enlarging the rate only loosens the certificate, so growing s
        # geometrically until the round-up check passes stays sound
        while exp_up(-mul_dn(s, m1_lo)) > C:
            s = up(s * 1.25) if s > 0.0 else 1e-300
    rho_hi = frac_bounds(rho)[1]
    r = add_up(rho_hi, s) if s else float(rho_hi)
    return NormCertificate(rho=rho, m1=m1, z0=z0, P=P, Q=Q, t_star=t_star,
                           C=C, r=r, scope=scope, abs_z0=abs_z0_up)


@dataclass(frozen=True)
class ValidationReport:
    """Observed margins of a certificate against a solved function."""

    levels: tuple              # float sizes of the checked levels (level 0 first)
    partial_sums: tuple        # round-up S_r(m) per level
    sum_margin: float          # min over levels of t_star - S_r(m)
    recursive_margin: float    # min over levels of RHS - LHS in the level bound
    ok: bool


def validate(cert: NormCertificate, g: TruncatedFunction) -> ValidationReport:
    """Recheck both certified inequalities against the solved values.

    Recomputes every partial sum S_r(m) with round-up arithmetic,
    requires S_r(m) <= t_star, and checks the level-to-level bound
    S(m_n) <= P(S(m_{n-1})) + e^{-(r-rho) m1} Q(|z0| + S(m_{n-1})).
    A violation raises :class:`CertificateViolated`: it means a bug or
    an under-reported norm, never a sound certificate.
    """
    enum = g.enum
    r = cert.r
    levels = enum.levels
    sums = [0.0]
    acc = 0.0
    for size, idxs in levels[1:]:
        for i in idxs:
            lo, hi = size_bounds(size)
            w_hi = weight_bounds(r, lo, hi)[1]
            a_hi = abs_bounds(g.values[i])[1]
            acc = add_up(acc, mul_up(a_hi, w_hi))
        sums.append(acc)

    rho_hi = frac_bounds(cert.rho)[1]
    s_rate = max(0.0, sub_dn(r, rho_hi))
    m1_lo = size_bounds(cert.m1)[0]
    damp_up = exp_up(-mul_dn(s_rate, m1_lo))

    sum_margin = math.inf
    rec_margin = math.inf
    level_floats = tuple(float(size) for size, _ in levels)
    for n in range(1, len(sums)):
        margin = sub_dn(cert.t_star, sums[n])
        sum_margin = min(sum_margin, margin)
        if margin < 0.0:
            raise CertificateViolated(
                f"partial sum {sums[n]} exceeds t* = {cert.t_star} at level "
                f"{level_floats[n]}", level=level_floats[n])
        prev = sums[n - 1]
        rhs = add_up(poly_eval_up(cert.P, prev),
                     mul_up(damp_up,
                            poly_eval_up(cert.Q, add_up(cert.abs_z0, prev))))
        rmargin = sub_up(rhs, sums[n])
        rec_margin = min(rec_margin, rmargin)
        if rmargin < 0.0:
            raise CertificateViolated(
                f"recursive level bound fails at level {level_floats[n]}: "
                f"S = {sums[n]} > bound = {rhs}", level=level_floats[n])
    if math.isinf(sum_margin):
        sum_margin = cert.t_star  # window has no positive level; margins trivial
        rec_margin = cert.t_star
    return ValidationReport(levels=level_floats, partial_sums=tuple(sums),
                            sum_margin=sum_margin, recursive_margin=rec_margin,
                            ok=True)
