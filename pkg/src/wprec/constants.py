"""Universal coefficient tables for the mixed-class recursions.

Three rational families, one per recursion flavour, all defined by the same
triangular convolution: the table value at b is fixed by requiring

    sum over L + L' = b of (-1)^length(L) c_L / (L! L'! D(weight(L')))  =  0

for b != 0, with c_0 = 1. They differ only in the denominator sequence D:
odd double factorials (2w+1)!! for the main pivot recursion, (2w-1)!! and
w! for the two flavours of direct Hodge pairing recursion. Single-row
values tie out against classical sequences (Bernoulli and secant numbers),
which the accessors below expose for cross-checking.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .multiindex import ZERO, MultiIndex, indices_of_weight, splits2
from .numbers import bernoulli, double_factorial, factorial


class ConstantTable:
    """Memoized solver for one denominator flavour of the convolution."""

    def __init__(self, kind: str, denom: Callable[[int], int]):
        self.kind = kind
        self._denom = denom
        self._values: dict[MultiIndex, Fraction] = {ZERO: Fraction(1)}

    def value(self, b: MultiIndex) -> Fraction:
        known = self._values.get(b)
        if known is not None:
            return known
        # Solve the b-th convolution row for the L = b term. Its own
        # coefficient is (-1)^length(b) / b!, every other term has L
        # strictly contained in b, so the recursion terminates.
        acc = Fraction(0)
        for left, right in splits2(b):
            if not right:
                continue
            sign = -1 if left.length % 2 else 1
            acc += (
                sign
                * self.value(left)
                / (left.factorial() * right.factorial() * self._denom(right.weight))
            )
        sign_b = -1 if b.length % 2 else 1
        result = -sign_b * b.factorial() * acc
        return self._values.setdefault(b, result)


ALPHA = ConstantTable("alpha", lambda w: double_factorial(2 * w + 1))
GAMMA_ODD = ConstantTable("gamma_odd", lambda w: double_factorial(2 * w - 1))
GAMMA_FACT = ConstantTable("gamma_fact", factorial)


def alpha(b: MultiIndex) -> Fraction:
    """Pivot-recursion coefficient; alpha(delta_l) = 1/(2l+1)!!."""
    return ALPHA.value(b)


def gamma_odd(b: MultiIndex) -> Fraction:
    """Direct-pairing coefficient, odd flavour; rows give secant numbers."""
    return GAMMA_ODD.value(b)


def gamma_fact(b: MultiIndex) -> Fraction:
    """Direct-pairing coefficient, factorial flavour."""
    return GAMMA_FACT.value(b)


def beta(l: int) -> Fraction:
    """Generating constants: beta_l = (-1)^(l-1) 2^l (2^(2l) - 2) B_(2l)/(2l)!.

    beta_1, beta_2, beta_3 = 1/3, 7/90, 62/2835; alpha(delta-free rows) has
    alpha({1: l}) = l! beta_l, checked in the tests.
    """
    if l < 1:
        raise ValueError(f"beta defined for l >= 1, got {l}")
    sign = 1 if l % 2 else -1
    return (
        sign
        * 2**l
        * (2 ** (2 * l) - 2)
        * bernoulli(2 * l)
        / factorial(2 * l)
    )


def gamma_kdv(b: MultiIndex) -> Fraction:
    """Closed-form inverse row to alpha under the same convolution:

    gamma_kdv(b) = (-1)^length(b) / (b! (2 weight(b) + 1)!!), so that
    sum over L + L' = b of (alpha_L / L!) gamma_kdv(L') is 1 at b = 0 and 0
    otherwise. The duality is frozen in the tests.
    """
    sign = -1 if b.length % 2 else 1
    return Fraction(sign, b.factorial() * double_factorial(2 * b.weight + 1))


def shift_polynomial(k: int, max_weight: int) -> dict[MultiIndex, Fraction]:
    """Coefficient map of the k-th variable shift, truncated by weight.

    The shift replaces the k-th descendant variable (k >= 2) by itself plus
    a polynomial in the kappa variables whose coefficient at the multi-index
    L of weight k - 1 is (-1)^(length(L) - 1) / L!. Entries of weight above
    max_weight are dropped (the polynomial is homogeneous of weight k - 1,
    so the truncation either keeps all of it or none).
    """
    if k < 2:
        raise ValueError(f"shift polynomials start at k = 2, got {k}")
    out: dict[MultiIndex, Fraction] = {}
    if k - 1 > max_weight:
        return out
    for L in indices_of_weight(k - 1):
        sign = 1 if L.length % 2 else -1
        out[L] = Fraction(sign, L.factorial())
    return out
