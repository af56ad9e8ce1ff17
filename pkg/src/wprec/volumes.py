"""Volume polynomials: kappa monomials paired against exponent-zero points.

The volume V_{g,n}(kappa(b)) is the correlator of kappa(b) with n plain
(exponent-zero) insertions. This module computes it without descending to
general correlators: a closed recursion trades genus and kappa length
against each other, so the dual computation against the pivot engine is a
genuine cross-check of both.

The n >= 1 recursion inducts on (g, length(b)) lexicographically. Its
insertion-free counterpart (g >= 2) inducts on length(b) alone, landing in
n >= 1 volumes. A kappa factor of index zero is a scalar 2g - 2 + n, never
a multi-index entry; the two _times_kappa helpers keep that case separate.
"""

from __future__ import annotations

from fractions import Fraction

from .correlator import CorrelatorEngine, IdentityReport
from .multiindex import (
    ZERO,
    MultiIndex,
    delta,
    multi_binomial,
    multi_multinomial,
    splits2,
    splits3,
    subsets,
)
from .numbers import binomial, double_factorial, factorial

_HALF = Fraction(1, 2)


class VolumeEngine:
    """Self-contained evaluator for the volume recursions."""

    def __init__(self) -> None:
        self._open_memo: dict[tuple[int, int, MultiIndex], Fraction] = {}
        self._closed_memo: dict[tuple[int, MultiIndex], Fraction] = {}

    def volume(self, genus: int, n: int, kappa: MultiIndex = ZERO) -> Fraction:
        """V_{g,n}(kappa(b)); zero off-dimension or on unstable (g, n)."""
        if genus < 0:
            raise ValueError(f"negative genus {genus}")
        if n < 0:
            raise ValueError(f"negative point count {n}")
        if not isinstance(kappa, MultiIndex):
            kappa = MultiIndex(kappa)
        if n == 0:
            if genus < 2:
                return Fraction(0)
            return self.volume_closed(genus, kappa)
        if 2 * genus - 2 + n <= 0:
            return Fraction(0)
        if kappa.weight != 3 * genus - 3 + n:
            return Fraction(0)
        key = (genus, n, kappa)
        found = self._open_memo.get(key)
        if found is not None:
            return found
        if genus == 0 and kappa.length <= 1:
            # The dimension gate already forces kappa = 0 with n = 3, or a
            # single index n - 3: both integrate to 1.
            return self._open_memo.setdefault(key, Fraction(1))

        total = Fraction(0)
        if genus >= 1:
            total += Fraction(1, 12) * self.volume(genus - 1, n + 3, kappa)
        for left, right in splits2(kappa):
            if right.length >= 2:
                total -= multi_binomial(kappa, left) * self.volume(
                    genus, n, left + delta(right.weight)
                )
        for left, right in splits2(kappa):
            if not left or not right:
                continue
            cb = multi_binomial(kappa, left)
            for gi in range(genus + 1):
                for r in range(n):
                    s = n - 1 - r
                    first = self.volume(gi, r + 2, left)
                    if not first:
                        continue
                    total += (
                        _HALF
                        * cb
                        * binomial(n - 1, r)
                        * first
                        * self.volume(genus - gi, s + 2, right)
                    )
        result = total / (2 * genus - 1 + kappa.length)
        return self._open_memo.setdefault(key, result)

    def volume_closed(self, genus: int, kappa: MultiIndex = ZERO) -> Fraction:
        """V_g(kappa(b)) on the unpointed space; needs genus >= 2."""
        if genus < 2:
            raise ValueError(f"closed volumes need genus >= 2, got {genus}")
        if not isinstance(kappa, MultiIndex):
            kappa = MultiIndex(kappa)
        if kappa.weight != 3 * genus - 3:
            return Fraction(0)
        key = (genus, kappa)
        found = self._closed_memo.get(key)
        if found is not None:
            return found

        q = kappa.length
        total = Fraction(0)
        for left, right in splits2(kappa):
            cb = multi_binomial(kappa, left)
            total += 5 * cb * self.volume(
                genus, 1, left + delta(right.weight + 1)
            )
            total -= (
                Fraction(1, 6)
                * cb
                * self._times_kappa(genus - 1, 3, left, right.weight)
            )
        for left, mid, rest in splits3(kappa):
            ways = multi_multinomial(kappa, left, mid)
            for gi in range(genus + 1):
                first = self._times_kappa(gi, 1, mid, left.weight)
                if not first:
                    continue
                total -= ways * first * self.volume(genus - gi, 2, rest)
        for left, right in splits2(kappa):
            if right.length < 2:
                continue
            cb = multi_binomial(kappa, left)
            total -= (
                (2 * genus - 1 + q)
                * cb
                * self.volume_closed(genus, left + delta(right.weight))
            )
            bumped = left + delta(right.weight)
            inner = Fraction(0)
            for e, f in splits2(bumped):
                inner += multi_binomial(bumped, e) * self._closed_times_kappa(
                    genus, e, f.weight
                )
            total -= cb * inner

        prefactor = (2 * genus - 1) * (2 * genus - 2) + (4 * genus - 3) * q + q * q
        result = total / prefactor
        return self._closed_memo.setdefault(key, result)

    def _times_kappa(self, genus: int, n: int, m: MultiIndex, a: int) -> Fraction:
        """V_{g,n}(kappa(m) kappa_a) with the index-zero scalar convention."""
        if genus < 0:
            return Fraction(0)
        if a == 0:
            return (2 * genus - 2 + n) * self.volume(genus, n, m)
        return self.volume(genus, n, m + delta(a))

    def _closed_times_kappa(self, genus: int, m: MultiIndex, a: int) -> Fraction:
        if a == 0:
            return (2 * genus - 2) * self.volume_closed(genus, m)
        return self.volume_closed(genus, m + delta(a))


def check_expanded_volume(volumes: VolumeEngine, genus: int, n: int, kappa) -> IdentityReport:
    """Compare the recursion against its fully expanded genus ladder.

    The expansion trades every genus-lowering step at once: a delta term for
    kappa length 0 or 1 plus one bracket per intermediate genus h, weighted
    by (2h - 3 + q)!!/(12^(g-h) (2g - 1 + q)!!). A bracket's double
    factorial is left unevaluated when the bracket itself vanishes (at
    q <= 1 the shape (2h - 3 + q) can drop below -1, but every such bracket
    is an empty sum).
    """
    if not isinstance(kappa, MultiIndex):
        kappa = MultiIndex(kappa)
    if n < 1:
        raise ValueError("the expanded form needs n >= 1")
    if kappa.weight != 3 * genus - 3 + n:
        raise ValueError("the expanded form applies on-dimension only")
    lhs = volumes.volume(genus, n, kappa)

    q = kappa.length
    rhs = Fraction(0)
    if q == 0:
        rhs += 1
    if q == 1:
        rhs += Fraction(1, 24**genus * factorial(genus))
    for h in range(genus + 1):
        extra = 3 * (genus - h)
        bracket = Fraction(0)
        for left, right in splits2(kappa):
            if not left or not right:
                continue
            cb = multi_binomial(kappa, left)
            for r in range(n + extra):
                s = n - 1 + extra - r
                pairs = Fraction(0)
                for hi in range(h + 1):
                    first = volumes.volume(hi, r + 2, left)
                    if not first:
                        continue
                    pairs += first * volumes.volume(h - hi, s + 2, right)
                bracket += _HALF * cb * binomial(n - 1 + extra, r) * pairs
        for left, right in splits2(kappa):
            if right.length < 2:
                continue
            bracket -= multi_binomial(kappa, left) * volumes.volume(
                h, n + extra, left + delta(right.weight)
            )
        if bracket:
            rhs += (
                Fraction(
                    double_factorial(2 * h - 3 + q),
                    12 ** (genus - h) * double_factorial(2 * genus - 1 + q),
                )
                * bracket
            )
    return IdentityReport(lhs == rhs, lhs, rhs)


def check_kdv_identity(
    engine: CorrelatorEngine, genus: int, kappa: MultiIndex, psi
) -> IdentityReport:
    """Genus-lowering form for a correlator carrying both tau_0 and tau_1."""
    exps = tuple(psi)
    lhs = engine.correlator(genus, kappa, (0, 1) + exps)
    rhs = Fraction(0)
    if genus >= 1:
        rhs += Fraction(1, 12) * engine.correlator(
            genus - 1, kappa, (0, 0, 0, 0) + exps
        )
    for left, right in splits2(kappa):
        cb = multi_binomial(kappa, left)
        for part_i, part_j in subsets(exps):
            for gi in range(genus + 1):
                first = engine.correlator(gi, left, (0, 0) + part_i)
                if not first:
                    continue
                rhs += (
                    _HALF
                    * cb
                    * first
                    * engine.correlator(genus - gi, right, (0, 0) + part_j)
                )
    return IdentityReport(lhs == rhs, lhs, rhs)


def check_shift_identity(
    engine: CorrelatorEngine, genus: int, kappa: MultiIndex, psi, r: int
) -> IdentityReport:
    """Trading tau_1 tau_r for tau_0 tau_(r+1) plus lower terms."""
    if r < 0:
        raise ValueError(f"negative shift exponent {r}")
    exps = tuple(psi)
    lhs = engine.correlator(genus, kappa, (1, r) + exps)
    rhs = (2 * r + 3) * engine.correlator(genus, kappa, (0, r + 1) + exps)
    if genus >= 1:
        rhs -= Fraction(1, 6) * engine.correlator(
            genus - 1, kappa, (0, 0, 0, r) + exps
        )
    for left, right in splits2(kappa):
        cb = multi_binomial(kappa, left)
        for part_i, part_j in subsets(exps):
            for gi in range(genus + 1):
                first = engine.correlator(gi, left, (0, r) + part_i)
                if not first:
                    continue
                rhs -= (
                    cb
                    * first
                    * engine.correlator(genus - gi, right, (0, 0) + part_j)
                )
    return IdentityReport(lhs == rhs, lhs, rhs)
