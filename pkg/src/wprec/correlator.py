"""Pivot-recursion engine for mixed kappa/descendant correlators.

A correlator is indexed by a genus, a kappa multi-index b and a multiset of
descendant exponents. It vanishes unless the signature is stable
(2g - 2 + n > 0) and the degrees fill the dimension exactly
(weight(b) + sum(d) == 3g - 3 + n). On-shell values are produced by trading
the distinguished insertion of largest exponent against the rest: the pivot
either merges with another insertion (kappa shedding a sub-index L into the
merged exponent, weighted by the alpha table), drops the genus by splitting
into a pair of fresh insertions, or separates the surface into two factors.
Each move lowers the dimension 3g - 3 + n, so the recursion terminates on
the three dimension-one-or-zero seeds.

Insertion-free correlators (n = 0, forced g >= 2) are first traded for
one-point ones through the signed dilaton-type relation
(2g - 2) <kappa(b)> = sum over L + L' = b of
(-1)^len(L) C(b, L) <tau_(weight(L)+1) kappa(L')>, whose right side never
re-enters the n = 0 case.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .constants import ALPHA, ConstantTable
from .multiindex import (
    ZERO,
    MultiIndex,
    multi_binomial,
    multi_multinomial,
    multiset_splits,
    splits2,
    splits3,
    subsets,
)
from .numbers import double_factorial

_HALF = Fraction(1, 2)


class CorrelatorKey(NamedTuple):
    """Canonical (genus, kappa, descending psi exponents) triple."""

    genus: int
    kappa: MultiIndex
    psi: tuple[int, ...]

    @classmethod
    def make(cls, genus: int, kappa: MultiIndex = ZERO, psi=()) -> "CorrelatorKey":
        if genus < 0:
            raise ValueError(f"negative genus {genus}")
        if not isinstance(kappa, MultiIndex):
            kappa = MultiIndex(kappa)
        exps = tuple(sorted(psi, reverse=True))
        if exps and exps[-1] < 0:
            raise ValueError(f"negative psi exponent in {exps}")
        return cls(genus, kappa, exps)

    def text(self) -> str:
        return "{}|{}|{}".format(
            self.genus, self.kappa.to_text(), ",".join(map(str, self.psi))
        )

    @classmethod
    def from_text(cls, text: str) -> "CorrelatorKey":
        parts = text.split("|")
        if len(parts) != 3:
            raise ValueError(f"bad correlator key {text!r}")
        g_text, kappa_text, psi_text = parts
        psi = tuple(int(c) for c in psi_text.split(",") if c.strip())
        return cls.make(int(g_text), MultiIndex.from_text(kappa_text), psi)


# The recursion cannot produce these three values; they are its seeds and
# lie outside the domain of every identity derived from it.
INITIAL_VALUES: dict[CorrelatorKey, Fraction] = {
    CorrelatorKey(0, ZERO, (0, 0, 0)): Fraction(1),
    CorrelatorKey(1, ZERO, (1,)): Fraction(1, 24),
    CorrelatorKey(1, MultiIndex({1: 1}), (0,)): Fraction(1, 24),
}


class CorrelatorEngine:
    """Memoizing evaluator; one instance per coefficient table."""

    def __init__(self, alpha_table: ConstantTable | None = None):
        self._alpha = (alpha_table or ALPHA).value
        self.memo: dict[CorrelatorKey, Fraction] = {}

    def correlator(self, genus: int, kappa: MultiIndex = ZERO, psi=()) -> Fraction:
        return self._value(CorrelatorKey.make(genus, kappa, psi))

    def correlator_via_pivot(
        self, genus: int, kappa: MultiIndex, psi, pivot: int
    ) -> Fraction:
        """On-shell value recomputed around the given insertion.

        The recursion is valid around any distinguished insertion, not just
        the largest; `pivot` is a position into the canonical descending
        exponent tuple. Seeds and n = 0 signatures take their usual route.
        """
        key = CorrelatorKey.make(genus, kappa, psi)
        if not key.psi:
            return self._value(key)
        if not 0 <= pivot < len(key.psi):
            raise ValueError(f"pivot {pivot} out of range for {key.psi}")
        n = len(key.psi)
        if 2 * genus - 2 + n <= 0:
            return Fraction(0)
        if key.kappa.weight + sum(key.psi) != 3 * genus - 3 + n:
            return Fraction(0)
        if self._seed(key) is not None:
            return self._value(key)
        return self._pivot_eval(key.genus, key.kappa, key.psi, pivot)

    @staticmethod
    def _seed(key: CorrelatorKey) -> Fraction | None:
        return INITIAL_VALUES.get(key)

    def _value(self, key: CorrelatorKey) -> Fraction:
        g, b, d = key
        n = len(d)
        if 2 * g - 2 + n <= 0:
            return Fraction(0)
        if b.weight + sum(d) != 3 * g - 3 + n:
            return Fraction(0)
        found = self.memo.get(key)
        if found is not None:
            return found
        seed = self._seed(key)
        if seed is not None:
            return self.memo.setdefault(key, seed)
        if n == 0:
            acc = Fraction(0)
            for left, rest in splits2(b):
                sign = -1 if left.length % 2 else 1
                acc += (
                    sign
                    * multi_binomial(b, left)
                    * self._value(CorrelatorKey(g, rest, (left.weight + 1,)))
                )
            result = acc / (2 * g - 2)
        else:
            result = self._pivot_eval(g, b, d, 0)
        return self.memo.setdefault(key, result)

    def _pivot_eval(
        self, g: int, b: MultiIndex, d: tuple[int, ...], pivot: int
    ) -> Fraction:
        dp = d[pivot]
        others = d[:pivot] + d[pivot + 1 :]
        alpha = self._alpha
        total = Fraction(0)

        counts: dict[int, int] = {}
        removed: dict[int, tuple[int, ...]] = {}
        for pos, v in enumerate(others):
            counts[v] = counts.get(v, 0) + 1
            if v not in removed:
                removed[v] = others[:pos] + others[pos + 1 :]

        for left, rest_kappa in splits2(b):
            a = alpha(left)
            if not a:
                continue
            cb = a * multi_binomial(b, left)
            base = left.weight + dp
            for v, c in counts.items():
                merged = base + v - 1
                if merged < 0:
                    continue
                coeff = (
                    cb
                    * c
                    * double_factorial(2 * (base + v) - 1)
                    / double_factorial(2 * v - 1)
                )
                total += coeff * self._value(
                    CorrelatorKey(
                        g,
                        rest_kappa,
                        tuple(sorted(removed[v] + (merged,), reverse=True)),
                    )
                )
            if g >= 1 and base >= 2:
                for r in range(base - 1):
                    s = base - 2 - r
                    total += (
                        _HALF
                        * cb
                        * double_factorial(2 * r + 1)
                        * double_factorial(2 * s + 1)
                        * self._value(
                            CorrelatorKey(
                                g - 1,
                                rest_kappa,
                                tuple(sorted(others + (r, s), reverse=True)),
                            )
                        )
                    )

        for left, mid, rest in splits3(b):
            base = left.weight + dp
            if base < 2:
                continue
            a = alpha(left)
            if not a:
                continue
            w = a * multi_multinomial(b, left, mid)
            for part_i, part_j, ways in multiset_splits(others):
                dim_i = mid.weight + sum(part_i) + 2 - len(part_i)
                for r in range(base - 1):
                    s = base - 2 - r
                    if (dim_i + r) % 3:
                        continue
                    gi = (dim_i + r) // 3
                    if gi < 0 or gi > g:
                        continue
                    first = self._value(
                        CorrelatorKey(
                            gi, mid, tuple(sorted(part_i + (r,), reverse=True))
                        )
                    )
                    if not first:
                        continue
                    second = self._value(
                        CorrelatorKey(
                            g - gi,
                            rest,
                            tuple(sorted(part_j + (s,), reverse=True)),
                        )
                    )
                    if not second:
                        continue
                    total += (
                        _HALF
                        * w
                        * ways
                        * double_factorial(2 * r + 1)
                        * double_factorial(2 * s + 1)
                        * first
                        * second
                    )

        return total / double_factorial(2 * dp + 1)


class IdentityReport(NamedTuple):
    equal: bool
    lhs: Fraction
    rhs: Fraction


def check_transfer_identity(
    engine: CorrelatorEngine, genus: int, kappa: MultiIndex, psi
) -> IdentityReport:
    """Signed kappa-to-descendant transfer around the first exponent.

    The left side swaps sub-indices of kappa into the distinguished
    insertion with alternating signs; the right side is the corresponding
    merge/genus-drop/split move sum with kappa kept whole (split over
    ordered sub-index pairs). Both sides vanish unless
    weight(kappa) + sum(psi) == 3g - 3 + n, so the check is meaningful on
    exactly the in-dimension signatures. The three INITIAL_VALUES
    signatures are outside the identity's domain: there the right side is
    an empty sum while the left side contains the seed itself.
    """
    exps = tuple(psi)
    if not exps:
        raise ValueError("transfer identity needs a distinguished insertion")
    d1 = exps[0]
    others = exps[1:]

    lhs = Fraction(0)
    for left, rest in splits2(kappa):
        sign = -1 if left.length % 2 else 1
        lhs += (
            sign
            * multi_binomial(kappa, left)
            * Fraction(
                double_factorial(2 * d1 + 2 * left.weight + 1),
                double_factorial(2 * left.weight + 1),
            )
            * engine.correlator(genus, rest, (d1 + left.weight,) + others)
        )

    rhs = Fraction(0)
    for pos, v in enumerate(others):
        merged = d1 + v - 1
        if merged < 0:
            continue
        rest_psi = others[:pos] + others[pos + 1 :]
        rhs += Fraction(
            double_factorial(2 * (d1 + v) - 1), double_factorial(2 * v - 1)
        ) * engine.correlator(genus, kappa, (merged,) + rest_psi)
    if genus >= 1:
        for r in range(d1 - 1):
            s = d1 - 2 - r
            rhs += (
                _HALF
                * double_factorial(2 * r + 1)
                * double_factorial(2 * s + 1)
                * engine.correlator(genus - 1, kappa, (r, s) + others)
            )
    for left, rest in splits2(kappa):
        cb = multi_binomial(kappa, left)
        for part_i, part_j in subsets(others):
            for gi in range(genus + 1):
                for r in range(d1 - 1):
                    s = d1 - 2 - r
                    first = engine.correlator(gi, left, (r,) + part_i)
                    if not first:
                        continue
                    rhs += (
                        _HALF
                        * cb
                        * double_factorial(2 * r + 1)
                        * double_factorial(2 * s + 1)
                        * first
                        * engine.correlator(genus - gi, rest, (s,) + part_j)
                    )
    return IdentityReport(lhs == rhs, lhs, rhs)


def check_string_identity(
    engine: CorrelatorEngine, genus: int, kappa: MultiIndex, psi
) -> IdentityReport:
    """Adding an exponent-zero insertion, with kappa correction terms.

    Nontrivial when weight(kappa) + sum(psi) == 3g - 2 + n; both sides
    vanish termwise otherwise.
    """
    exps = tuple(psi)
    lhs = Fraction(0)
    for left, rest in splits2(kappa):
        sign = -1 if left.length % 2 else 1
        lhs += (
            sign
            * multi_binomial(kappa, left)
            * engine.correlator(genus, rest, exps + (left.weight,))
        )
    rhs = Fraction(0)
    for pos, v in enumerate(exps):
        if v == 0:
            continue
        rhs += engine.correlator(
            genus, kappa, exps[:pos] + (v - 1,) + exps[pos + 1 :]
        )
    return IdentityReport(lhs == rhs, lhs, rhs)


def check_dilaton_identity(
    engine: CorrelatorEngine, genus: int, kappa: MultiIndex, psi
) -> IdentityReport:
    """Adding an exponent-one insertion, with kappa correction terms."""
    exps = tuple(psi)
    lhs = Fraction(0)
    for left, rest in splits2(kappa):
        sign = -1 if left.length % 2 else 1
        lhs += (
            sign
            * multi_binomial(kappa, left)
            * engine.correlator(genus, rest, exps + (left.weight + 1,))
        )
    rhs = (2 * genus - 2 + len(exps)) * engine.correlator(genus, kappa, exps)
    return IdentityReport(lhs == rhs, lhs, rhs)
