"""Exact integer sequences used throughout the recursions.

Double factorials, Bernoulli and Euler numbers are served from memoized
growing tables. Table extension is serialized with a lock; reads are
lock-free (lists only grow, and CPython list appends are atomic).
Everything returns ints or Fractions, never floats.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

_dfact_lock = threading.Lock()
# _DFACT[k + 1] == k!!, seeded with (-1)!! = 0!! = 1.
_DFACT: list[int] = [1, 1]


def double_factorial(k: int) -> int:
    """k!! for k >= -1, with (-1)!! = 0!! = 1."""
    if k < -1:
        # Must be checked before the table lookup: _DFACT[k + 1] with
        # k <= -2 would silently index from the end of the list.
        raise ValueError(f"double factorial undefined for {k}")
    if k + 1 >= len(_DFACT):
        with _dfact_lock:
            while k + 1 >= len(_DFACT):
                n = len(_DFACT) - 1
                _DFACT.append(n * _DFACT[n - 1])
    return _DFACT[k + 1]


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial undefined for {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """C(n, k); zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError(f"binomial undefined for n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(n: int, *parts: int) -> int:
    """n! / (parts[0]! * ... * rest!), the rest being n - sum(parts).

    The implicit final part must be nonnegative.
    """
    if n < 0:
        raise ValueError(f"multinomial undefined for n={n}")
    rest = n - sum(parts)
    if rest < 0 or any(p < 0 for p in parts):
        raise ValueError(f"multinomial parts {parts} exceed {n}")
    out = 1
    remaining = n
    for p in parts:
        out *= math.comb(remaining, p)
        remaining -= p
    return out

_bernoulli_lock = threading.Lock()
_BERNOULLI: list[Fraction] = [Fraction(1)]


def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m (B_1 = -1/2 convention).

    Defined by sum_{i=0}^{m} C(m+1, i) B_i = 0 for m >= 1. Odd m >= 3 are
    exactly zero and rejected here so a misuse is loud rather than silent.
    """
    if m < 0:
        raise ValueError(f"Bernoulli number undefined for {m}")
    if m >= 3 and m % 2 == 1:
        raise ValueError(f"odd Bernoulli numbers vanish; refusing B_{m}")
    if m >= len(_BERNOULLI):
        with _bernoulli_lock:
            while m >= len(_BERNOULLI):
                j = len(_BERNOULLI)
                acc = Fraction(0)
                for i in range(j):
                    acc += math.comb(j + 1, i) * _BERNOULLI[i]
                _BERNOULLI.append(-acc / (j + 1))
    return _BERNOULLI[m]

_euler_lock = threading.Lock()
_EULER: list[int] = [1]


def euler_number(n: int) -> int:
    """Secant number E_{2n} (|E_0|, |E_2|, ... = 1, 1, 5, 61, 1385, ...).

    Returned unsigned, via E_n = sum_{j=1}^{n} (-1)^(j+1) C(2n, 2j) E_{n-j}.
    """
    if n < 0:
        raise ValueError(f"Euler number index must be >= 0, got {n}")
    if n >= len(_EULER):
        with _euler_lock:
            while n >= len(_EULER):
                m = len(_EULER)
                acc = 0
                for j in range(1, m + 1):
                    term = math.comb(2 * m, 2 * j) * _EULER[m - j]
                    acc += term if j % 2 == 1 else -term
                _EULER.append(acc)
    return _EULER[n]
