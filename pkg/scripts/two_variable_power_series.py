#!/usr/bin/env python3
"""A two-variable power-series equation with a closed-form solution.

Solves g * g = (1 + w1)(1 + w2) on the two-dimensional lattice window;
the solution coefficients factor as products of one-variable binomial
series coefficients, which the script checks exactly, and the truncated
series is compared against sqrt((1 + w1)(1 + w2)) at a few points.
"""

import math
from fractions import Fraction

import dirconv as dc


def binom_half(n):
    num = Fraction(1)
    for i in range(n):
        num *= Fraction(1, 2) - i
    den = math.prod(range(2, n + 1)) if n > 1 else 1
    return num / den


def main():
    enum = dc.enumerate_semigroup(dc.Lattice(2), size_bound=12)
    rhs = dc.from_pairs(enum, [((0, 0), 1), ((1, 0), 1), ((0, 1), 1),
                               ((1, 1), 1)])
    T = dc.ConvPolynomial((-rhs, dc.constant(enum, 0), dc.unit(enum)))
    g = dc.solve(T, 1)

    mismatches = sum(
        1 for i, el in enumerate(enum)
        if g.values[i] != binom_half(el.ident[0]) * binom_half(el.ident[1]))
    print(f"window: {len(enum)} lattice points up to total degree 12")
    print(f"coefficient factorization mismatches: {mismatches}")

    for w in (0.05, 0.1, 0.2):
        s = (-math.log(w), -math.log(w))
        approx = dc.evaluate(g, s).value.real
        exact = math.sqrt((1 + w) * (1 + w))
        print(f"w1 = w2 = {w}: series {approx:.12f}  closed form {exact:.12f}"
              f"  diff {abs(approx - exact):.2e}")


if __name__ == "__main__":
    main()
