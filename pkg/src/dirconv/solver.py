"""Solving convolution-polynomial equations on an enumerated window.

An equation T g = a_d * g^{*d} + ... + a_1 * g + a_0 = 0 is anchored at
a root z0 of its *anchor polynomial* f(z) = sum_j a_j(0) z^j: the value
g(0) must be such a root, and whenever the root is simple the remaining
values are forced one element at a time in the window order, because
every term of (T g)(x) either contains g(x) linearly with total
coefficient f'(z0) or only touches strictly smaller sizes.

The per-element pass below keeps all convolution powers g^{*j} up to
date incrementally, so a full solve costs O(d) values per decomposition
pair instead of one full convolution per size level.  ``residual``
deliberately recomputes T g through plain convolutions, giving an
independent check of the recursion.

``solve_system`` extends the same sweep to square systems of polynomial
equations in several unknowns, anchored at a base point where the
Jacobian of the scalarized system is invertible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (DEFAULT_TOLERANCE, TruncatedFunction, check_compatible,
                      coerce_pair, convolve, power, unit)
from .errors import (DegenerateConstant, InconsistentBasePoint, NoSimpleRoots,
                     NotASimpleRoot, PreconditionFailed, SingularJacobian,
                     ZeroPolynomial)
from .roots import find_roots, poly_derivative, poly_eval
from .scalars import double_value, exact_value


@dataclass(frozen=True)
class ConvPolynomial:
    """The equation data: coefficient functions a_0, ..., a_d with d >= 1."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if len(coeffs) < 2:
            raise ValueError("need coefficients a_0, ..., a_d with d >= 1")
        for c in coeffs[1:]:
            check_compatible(coeffs[0], c)
        if coeffs[-1].is_zero():
            raise ValueError("the leading coefficient must not vanish identically")
        if not all(c.exact for c in coeffs) and any(c.exact for c in coeffs):
            coeffs = tuple(c.to_double() for c in coeffs)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def enum(self):
        return self.coeffs[0].enum

    @property
    def exact(self) -> bool:
        return self.coeffs[0].exact

    def to_double(self) -> "ConvPolynomial":
        if not self.exact:
            return self
        return ConvPolynomial(tuple(c.to_double() for c in self.coeffs))

    def anchor_coeffs(self):
        """The values a_j(0), constant term first."""
        return [c.values[0] for c in self.coeffs]


@dataclass(frozen=True)
class RootReport:
    """Roots of the anchor polynomial with multiplicity and simplicity flags."""

    f_coeffs: tuple
    degree: int
    roots: tuple
    exact: bool

    @property
    def fprime_coeffs(self):
        return tuple(poly_derivative(list(self.f_coeffs)))

    @property
    def simple_roots(self):
        return tuple(r for r in self.roots if r.simple)


@dataclass(frozen=True)
class Obstruction:
    """Witness that no solution can start at ``root``: (T g)(q) = value != 0
    is forced at a minimal-size element q whatever g(q) would be."""

    root: object
    q: object
    value: object


@dataclass(frozen=True)
class SolveAllResult:
    solutions: tuple   # (Root, TruncatedFunction) pairs
    skipped: tuple     # (Root, reason) pairs
    report: RootReport

    def __iter__(self):
        return iter(self.solutions)

    def __len__(self):
        return len(self.solutions)


def initial_polynomial(T: ConvPolynomial) -> RootReport:
    """Roots of f(z) = sum_j a_j(0) z^j, the admissible anchor values."""
    f = T.anchor_coeffs()
    if not any(f):
        raise ZeroPolynomial(
            "every coefficient vanishes at 0; anchor values are unconstrained "
            "and no solution can be selected")
    trimmed = list(f)
    while not trimmed[-1]:
        trimmed.pop()
    if len(trimmed) == 1:
        raise DegenerateConstant(
            "the anchor polynomial is a non-zero constant; the equation has "
            "no solution")
    roots = find_roots(trimmed, T.exact)
    return RootReport(tuple(f), len(trimmed) - 1, tuple(roots), T.exact)


def _tau_root(f_coeffs) -> float:
    scale = max(abs(complex(c)) for c in f_coeffs)
    return 1e-8 * (1.0 + scale)


def _tau_simple(f_coeffs) -> float:
    return 1e-6 * max(abs(complex(c)) for c in f_coeffs)


def solve(T: ConvPolynomial, z0) -> TruncatedFunction:
    """The unique solution g of T g = 0 with g(0) = z0, for a simple root z0.

    Exact mode demands f(z0) = 0 and f'(z0) != 0 exactly; double mode
    applies the gates |f(z0)| <= tau_root, |f'(z0)| > tau_simple.
    """
    f = T.anchor_coeffs()
    fprime = poly_derivative(f)
    if T.exact:
        z0 = exact_value(z0)
        if poly_eval(f, z0):
            raise NotASimpleRoot(f"f({z0!r}) != 0; not a root")
        fp = poly_eval(fprime, z0)
        if not fp:
            raise NotASimpleRoot(f"f'({z0!r}) = 0; root is not simple")
    else:
        z0 = double_value(z0)
        fc = [complex(c) for c in f]
        if abs(poly_eval(fc, z0)) > _tau_root(fc):
            raise NotASimpleRoot(f"|f({z0!r})| exceeds the root tolerance")
        fp = poly_eval([complex(c) for c in fprime], z0)
        if abs(fp) <= _tau_simple(fc):
            raise NotASimpleRoot(f"|f'({z0!r})| below the simplicity gate")
    return _solve_anchored(T, z0, fp)


def _solve_anchored(T: ConvPolynomial, z0, fprime_z0) -> TruncatedFunction:
    enum = T.enum
    d = T.degree
    exact = T.exact
    zero = Fraction(0) if exact else 0j
    inv_fp = (1 / fprime_z0) if exact else (1.0 / fprime_z0)
    a = [c.values for c in T.coeffs]
    n = len(enum)

    z0pow = [Fraction(1) if exact else 1 + 0j]
    for _ in range(d):
        z0pow.append(z0pow[-1] * z0)

    g = [zero] * n
    g[0] = z0
    # P[j] tracks g^{*j}; entries become final in the window order
    P = [[zero] * n for _ in range(d + 1)]
    P[0][0] = z0pow[0]
    for j in range(1, d + 1):
        P[j][0] = z0pow[j]

    dec = enum.decomp
    for t in range(1, n):
        pairs = dec[t]
        mid_gP = [zero] * (d + 1)
        mid_aP = [zero] * (d + 1)
        for u, v in pairs:
            if u == 0 or u == t:
                continue
            gu = g[u]
            for j in range(1, d + 1):
                mid_gP[j] = mid_gP[j] + gu * P[j - 1][v]
                mid_aP[j] = mid_aP[j] + a[j][u] * P[j][v]
        # the masked powers exclude every appearance of the unknown g(t)
        pmask = [zero] * (d + 1)
        for j in range(1, d + 1):
            pmask[j] = z0 * pmask[j - 1] + mid_gP[j]
        h = a[0][t]
        for j in range(1, d + 1):
            h = h + a[j][0] * pmask[j] + a[j][t] * z0pow[j] + mid_aP[j]
        gt = -(inv_fp * h)
        g[t] = gt
        for j in range(1, d + 1):
            P[j][t] = pmask[j] + j * z0pow[j - 1] * gt
    return TruncatedFunction(enum, g, exact)


def residual(T: ConvPolynomial, g: TruncatedFunction) -> TruncatedFunction:
    """T g computed by plain convolutions; exact on the window.

    Independent of the incremental bookkeeping in :func:`solve`, so it
    doubles as a cross-check of the recursion.
    """
    a0, g = coerce_pair(T.coeffs[0], g)
    out = a0
    p = unit(g.enum, g.exact)
    for j in range(1, T.degree + 1):
        p = convolve(p, g)
        aj = T.coeffs[j]
        if aj.exact and not g.exact:
            aj = aj.to_double()
        out = out + convolve(aj, p)
    return out


def _obstructions(T: ConvPolynomial, report: RootReport, tol: float):
    """Per root, look for a minimal-size element q forcing (T g)(q) != 0.

    At a minimal-size q the only decompositions are trivial, so
    (T g)(q) = f'(z0) g(q) + sum_j a_j(q) z0^j; with f'(z0) = 0 the
    whole value is pinned independently of g(q).
    """
    enum = T.enum
    if len(enum.levels) < 2:
        return ()
    first_level = enum.levels[1][1]
    scale = max(1.0, max(abs(complex(c)) for c in report.f_coeffs))
    found = []
    for root in report.roots:
        z = root.value
        zp = [exact_value(1) if T.exact else 1 + 0j]
        for _ in range(T.degree):
            zp.append(zp[-1] * z)
        for q_idx in first_level:
            val = sum((T.coeffs[j].values[q_idx] * zp[j]
                       for j in range(T.degree + 1)),
                      Fraction(0) if T.exact else 0j)
            nonzero = bool(val) if T.exact else abs(complex(val)) > tol * scale
            if nonzero:
                found.append(Obstruction(z, enum[q_idx], val))
                break
    return tuple(found)


def solve_all(T: ConvPolynomial, tol: float = DEFAULT_TOLERANCE) -> SolveAllResult:
    """One solution per simple root of the anchor polynomial.

    With no simple root at all, the instance is refused; if every root
    is blocked by an explicit minimal-size obstruction the refusal
    carries a proof of unsolvability, otherwise existence stays
    undecided.
    """
    report = initial_polynomial(T)
    simple = report.simple_roots
    if not simple:
        obs = _obstructions(T, report, tol)
        proven = len(obs) == len(report.roots) and len(obs) > 0
        raise NoSimpleRoots(
            "the anchor polynomial has no simple roots"
            + ("; every root is obstructed, the equation is unsolvable"
               if proven else "; existence is undecided"),
            report=report, obstructions=obs, proven_unsolvable=proven)
    solutions = []
    skipped = tuple((r, f"multiplicity {r.multiplicity}; not a simple root")
                    for r in report.roots if not r.simple)
    for root in simple:
        if T.exact and not root.exact:
            # an irrational anchor cannot live in exact arithmetic
            g = solve(T.to_double(), complex(root.value))
        else:
            g = solve(T, root.value)
        solutions.append((root, g))
    return SolveAllResult(tuple(solutions), skipped, report)


def factorization_check(T: ConvPolynomial, solutions,
                        tol: float = DEFAULT_TOLERANCE):
    """Check T g = a_d * (g - g_1) * ... * (g - g_d) coefficientwise.

    Requires the anchor polynomial to have degree d with d simple roots
    and exactly d supplied solutions.  Returns (ok, max_deviation);
    deviation is 0 in exact mode when the identity holds.
    """
    d = T.degree
    if len(solutions) != d:
        raise PreconditionFailed(f"need {d} solutions, got {len(solutions)}")
    report = initial_polynomial(T)
    if report.degree != d or len(report.simple_roots) != d:
        raise PreconditionFailed(
            "factorization needs deg f = d with all roots simple")
    gs = [g if isinstance(g, TruncatedFunction) else g[1] for g in solutions]
    enum = T.enum
    exact = all(g.exact for g in gs) and T.exact
    # expand prod (g - g_i) in the indeterminate g
    c = [unit(enum, exact)]
    for gi in gs:
        if gi.exact and not exact:
            gi = gi.to_double()
        new = [-convolve(gi, c[0])]
        for k in range(1, len(c)):
            new.append(c[k - 1] - convolve(gi, c[k]))
        new.append(c[-1])
        c = new
    ad = T.coeffs[-1] if exact == T.exact else T.coeffs[-1].to_double()
    worst = 0.0
    ok = True
    for k in range(d):
        lhs = convolve(ad, c[k])
        rhs = T.coeffs[k] if exact == T.exact else T.coeffs[k].to_double()
        if exact:
            if lhs != rhs:
                ok = False
                worst = max(worst, max(
                    abs(complex(x - y)) for x, y in zip(lhs.values, rhs.values)))
        else:
            dev = max(abs(complex(x) - complex(y))
                      for x, y in zip(lhs.values, rhs.values))
            worst = max(worst, dev)
            scale = max(1.0, rhs.max_abs())
            if dev > tol * scale:
                ok = False
    return ok, worst


# ---------------------------------------------------------------------------
# square polynomial systems


@dataclass(frozen=True)
class Monomial:
    """c * g_1^{*e_1} * ... * g_m^{*e_m} inside one system equation."""

    coeff: TruncatedFunction
    exponents: tuple

    def total_degree(self) -> int:
        return sum(self.exponents)


@dataclass(frozen=True)
class PolySystem:
    """m polynomial equations in m unknown window functions, plus a base point."""

    m: int
    equations: tuple   # tuple of tuples of Monomial
    z0: tuple

    def __post_init__(self):
        object.__setattr__(self, "equations",
                           tuple(tuple(eq) for eq in self.equations))
        object.__setattr__(self, "z0", tuple(self.z0))
        if len(self.equations) != self.m or len(self.z0) != self.m:
            raise ValueError("need m equations and an m-component base point")
        for eq in self.equations:
            for t in eq:
                if len(t.exponents) != self.m:
                    raise ValueError("monomial exponent vectors must have length m")

    @property
    def enum(self):
        return self.equations[0][0].coeff.enum

    @property
    def exact(self) -> bool:
        return all(t.coeff.exact for eq in self.equations for t in eq)


def _linear_solve(A, rhs_cols, exact):
    """Gaussian elimination returning the solution columns; None if singular."""
    n = len(A)
    M = [list(row) + list(extra) for row, extra in zip(A, rhs_cols)]
    width = len(M[0])
    for col in range(n):
        if exact:
            piv = next((r for r in range(col, n) if M[r][col]), None)
        else:
            piv = max(range(col, n), key=lambda r: abs(complex(M[r][col])))
            if abs(complex(M[piv][col])) == 0.0:
                piv = None
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        pivot = M[col][col]
        inv = (1 / pivot) if exact else (1.0 / pivot)
        M[col] = [inv * v for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                factor = M[r][col]
                M[r] = [v - factor * w for v, w in zip(M[r], M[col])]
    return [row[n:width] for row in M]


def _jacobian(S: PolySystem, zero):
    zp_cache = {}

    def zpow(l, e):
        if e < 0:
            return None
        key = (l, e)
        if key not in zp_cache:
            zp_cache[key] = S.z0[l] ** e if e else (zero + 1)
        return zp_cache[key]

    def mono_value(t: Monomial, diff_l=None):
        v = t.coeff.values[0]
        for l, e in enumerate(t.exponents):
            if l == diff_l:
                if e == 0:
                    return zero
                v = v * e * zpow(l, e - 1)
            else:
                v = v * zpow(l, e)
        return v

    F0 = [sum((mono_value(t) for t in eq), zero) for eq in S.equations]
    J = [[sum((mono_value(t, diff_l=l) for t in eq), zero)
          for l in range(S.m)] for eq in S.equations]
    return F0, J


def solve_system(S: PolySystem, tol: float = DEFAULT_TOLERANCE,
                 tau_cond: float = 1e-10, max_degree: int = 8,
                 max_unknowns: int = 8):
    """The unique m-tuple of window functions solving the system with the
    prescribed values at 0, given an invertible base-point Jacobian.

    The sweep mirrors :func:`solve`: at each element x the unknown
    values (g_1(x), ..., g_m(x)) enter every equation linearly with the
    base-point Jacobian as coefficient matrix, and all other terms only
    use strictly smaller sizes.
    """
    if S.m > max_unknowns:
        raise PreconditionFailed(f"system has {S.m} unknowns; limit {max_unknowns}")
    for eq in S.equations:
        for t in eq:
            if t.total_degree() > max_degree:
                raise PreconditionFailed(
                    f"monomial degree {t.total_degree()} exceeds limit {max_degree}")
    enum = S.enum
    exact = S.exact
    zero = Fraction(0) if exact else 0j
    z0 = tuple(exact_value(z) if exact else double_value(z) for z in S.z0)
    S = PolySystem(S.m, S.equations, z0)

    F0, J = _jacobian(S, zero)
    for i, v in enumerate(F0):
        bad = bool(v) if exact else abs(complex(v)) > tol * _system_scale(S)
        if bad:
            raise InconsistentBasePoint(
                f"equation {i} does not vanish at the base point: F_i = {v!r}")
    identity = [[(zero + 1) if r == c else zero for c in range(S.m)]
                for r in range(S.m)]
    Jinv_cols = _linear_solve(J, identity, exact)
    if Jinv_cols is None:
        raise SingularJacobian("base-point Jacobian is singular")
    if not exact:
        norm_J = max(sum(abs(complex(v)) for v in row) for row in J)
        norm_Jinv = max(sum(abs(complex(v)) for v in row) for row in Jinv_cols)
        if norm_J * norm_Jinv > 1.0 / tau_cond:
            raise SingularJacobian(
                f"Jacobian condition estimate {norm_J * norm_Jinv:.3e} "
                f"exceeds 1/{tau_cond}")

    n = len(enum)
    gvals = [[zero] * n for _ in range(S.m)]
    for l in range(S.m):
        gvals[l][0] = z0[l]

    # one shared product chain per distinct factor sequence
    chains = {}
    for eq in S.equations:
        for t in eq:
            fs = tuple(l for l, e in enumerate(t.exponents) for _ in range(e))
            if fs not in chains and fs:
                chains[fs] = None
    for fs in chains:
        depth = len(fs)
        Q = [[zero] * n for _ in range(depth + 1)]
        Q[0][0] = zero + 1
        for p in range(1, depth + 1):
            Q[p][0] = Q[p - 1][0] * z0[fs[p - 1]]
        chains[fs] = Q
    empty_chain = [[zero] * n]
    empty_chain[0][0] = zero + 1

    def chain_of(t: Monomial):
        fs = tuple(l for l, e in enumerate(t.exponents) for _ in range(e))
        return fs, (chains[fs] if fs else empty_chain)

    dec = enum.decomp
    for x in range(1, n):
        pairs = dec[x]
        interior = [(u, v) for u, v in pairs if u != 0 and u != x]
        masked = {}
        for fs, Q in chains.items():
            depth = len(fs)
            qm = [zero] * (depth + 1)
            for p in range(1, depth + 1):
                s = qm[p - 1] * z0[fs[p - 1]]
                gl = gvals[fs[p - 1]]
                Qprev = Q[p - 1]
                for u, v in interior:
                    s = s + Qprev[u] * gl[v]
                qm[p] = s
            masked[fs] = qm
        known = []
        for eq in S.equations:
            k = zero
            for t in eq:
                fs, Q = chain_of(t)
                depth = len(fs)
                cv = t.coeff.values
                qm_top = masked[fs][depth] if fs else zero
                k = k + cv[0] * qm_top + cv[x] * Q[depth][0]
                Qtop = Q[depth]
                for u, v in interior:
                    k = k + cv[u] * Qtop[v]
            known.append(k)
        sol = _linear_solve(J, [[-k] for k in known], exact)
        if sol is None:  # cannot happen: J was inverted above
            raise SingularJacobian("Jacobian became singular mid-sweep")
        for l in range(S.m):
            gvals[l][x] = sol[l][0]
        for fs, Q in chains.items():
            for p in range(1, len(fs) + 1):
                gl = gvals[fs[p - 1]]
                Qprev = Q[p - 1]
                s = zero
                for u, v in pairs:
                    s = s + Qprev[u] * gl[v]
                Q[p][x] = s
    return tuple(TruncatedFunction(enum, gvals[l], exact) for l in range(S.m))


def _system_scale(S: PolySystem) -> float:
    vals = [abs(complex(t.coeff.values[0])) for eq in S.equations for t in eq]
    return max(1.0, max(vals, default=1.0))


def system_residual(S: PolySystem, gs) -> list:
    """Each equation evaluated by plain convolutions; the independent check."""
    out = []
    for eq in S.equations:
        acc = None
        for t in eq:
            term = t.coeff
            for l, e in enumerate(t.exponents):
                if e:
                    term = convolve(term, power(gs[l], e))
            acc = term if acc is None else acc + term
        out.append(acc)
    return out
