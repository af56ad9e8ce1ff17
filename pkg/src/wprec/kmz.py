"""Independent oracle for mixed correlators via descendant expansion.

Every kappa monomial pairs against descendants through a finite signed sum:
each kappa factor set of total multiplicity q contributes partitions into k
nonzero sub-indices, weighted (-1)^(q-k)/k! over ordered partitions, each
part of weight w becoming a new psi insertion of exponent w + 1. The pure
descendant values underneath come from the classical genus-reducing
recursion on the largest exponent. Nothing here touches the coefficient
tables or the pivot engine, so agreement between the two routes is a real
consistency check, not a tautology.
"""

from __future__ import annotations

from fractions import Fraction

from .multiindex import (
    ZERO,
    MultiIndex,
    multi_multinomial,
    multiset_partitions,
    multiset_splits,
    ordered_nonempty_partitions,
)
from .numbers import double_factorial, factorial

_HALF = Fraction(1, 2)

_partition_terms_cache: dict[MultiIndex, tuple[tuple[Fraction, tuple[int, ...]], ...]] = {}


def kappa_partition_terms(
    kappa: MultiIndex,
) -> tuple[tuple[Fraction, tuple[int, ...]], ...]:
    """Signed descendant substitutions for one kappa monomial.

    Yields (coefficient, extra exponents) pairs: the pairing of kappa(b)
    against any fixed class equals the coefficient-weighted sum of pairings
    with the extra descendant insertions appended. The zero index gives the
    single pair (1, ()).
    """
    found = _partition_terms_cache.get(kappa)
    if found is not None:
        return found
    if not kappa:
        terms: tuple[tuple[Fraction, tuple[int, ...]], ...] = ((Fraction(1), ()),)
        return _partition_terms_cache.setdefault(kappa, terms)
    q = kappa.length
    collected: list[tuple[Fraction, tuple[int, ...]]] = []
    for k in range(1, q + 1):
        sign = -1 if (q - k) % 2 else 1
        base = Fraction(sign, factorial(k))
        for parts in ordered_nonempty_partitions(kappa, k):
            ways = multi_multinomial(kappa, *parts[:-1])
            exps = tuple(sorted((p.weight + 1 for p in parts), reverse=True))
            collected.append((base * ways, exps))
    return _partition_terms_cache.setdefault(kappa, tuple(collected))


class KmzOracle:
    """Mixed correlators by reduction to pure descendant integrals."""

    def __init__(self) -> None:
        self._psi_memo: dict[tuple[int, tuple[int, ...]], Fraction] = {}

    def pure_psi(self, genus: int, psi) -> Fraction:
        """Descendant integral with no kappa factors.

        Zero off-dimension or on unstable signatures; exponents must be
        nonnegative.
        """
        if genus < 0:
            raise ValueError(f"negative genus {genus}")
        exps = tuple(sorted(psi, reverse=True))
        if exps and exps[-1] < 0:
            raise ValueError(f"negative psi exponent in {exps}")
        return self._pure(genus, exps)

    def _pure(self, genus: int, exps: tuple[int, ...]) -> Fraction:
        n = len(exps)
        if 2 * genus - 2 + n <= 0:
            return Fraction(0)
        if sum(exps) != 3 * genus - 3 + n:
            return Fraction(0)
        if genus == 0 and exps == (0, 0, 0):
            return Fraction(1)
        if genus == 1 and exps == (1,):
            return Fraction(1, 24)
        key = (genus, exps)
        found = self._psi_memo.get(key)
        if found is not None:
            return found

        d1 = exps[0]
        others = exps[1:]
        total = Fraction(0)

        removed: dict[int, tuple[int, ...]] = {}
        for pos, v in enumerate(others):
            if v not in removed:
                removed[v] = others[:pos] + others[pos + 1 :]
        counts: dict[int, int] = {}
        for v in others:
            counts[v] = counts.get(v, 0) + 1
        for v, rest in removed.items():
            merged = d1 + v - 1
            if merged < 0:
                continue
            coeff = Fraction(
                counts[v] * double_factorial(2 * (d1 + v) - 1),
                double_factorial(2 * v - 1),
            )
            total += coeff * self._pure(
                genus, tuple(sorted(rest + (merged,), reverse=True))
            )

        if d1 >= 2:
            for r in range(d1 - 1):
                s = d1 - 2 - r
                weight = double_factorial(2 * r + 1) * double_factorial(2 * s + 1)
                if genus >= 1:
                    total += (
                        _HALF
                        * weight
                        * self._pure(
                            genus - 1,
                            tuple(sorted(others + (r, s), reverse=True)),
                        )
                    )
                for part_i, part_j, ways in multiset_splits(others):
                    dim_i = r + sum(part_i) + 2 - len(part_i)
                    if dim_i % 3:
                        continue
                    gi = dim_i // 3
                    if gi < 0 or gi > genus:
                        continue
                    left = self._pure(
                        gi, tuple(sorted(part_i + (r,), reverse=True))
                    )
                    if not left:
                        continue
                    right = self._pure(
                        genus - gi, tuple(sorted(part_j + (s,), reverse=True))
                    )
                    if not right:
                        continue
                    total += _HALF * weight * ways * left * right

        result = total / double_factorial(2 * d1 + 1)
        return self._psi_memo.setdefault(key, result)

    def kmz_expand(self, genus: int, kappa: MultiIndex, psi) -> Fraction:
        """Mixed correlator through the ordered-partition descendant sum.

        Gates (stability, dimension) are identical to the pivot engine's so
        the two routes agree on the whole input space, not only on-shell.
        """
        if genus < 0:
            raise ValueError(f"negative genus {genus}")
        exps = tuple(sorted(psi, reverse=True))
        if exps and exps[-1] < 0:
            raise ValueError(f"negative psi exponent in {exps}")
        n = len(exps)
        if 2 * genus - 2 + n <= 0:
            return Fraction(0)
        if kappa.weight + sum(exps) != 3 * genus - 3 + n:
            return Fraction(0)
        if not kappa:
            return self._pure(genus, exps)

        total = Fraction(0)
        for coeff, extra in kappa_partition_terms(kappa):
            total += coeff * self._pure(
                genus, tuple(sorted(exps + extra, reverse=True))
            )
        return total

    def kmz_expand_unordered(self, genus: int, kappa: MultiIndex, psi) -> Fraction:
        """Same sum regrouped over unordered partitions with multiplicities.

        A small-input cross-check on the partition bookkeeping: each
        unordered shape with part counts a_1, ..., a_r carries weight
        (-1)^(q - k)/(a_1! ... a_r!) where k = sum(a_i).
        """
        if genus < 0:
            raise ValueError(f"negative genus {genus}")
        exps = tuple(sorted(psi, reverse=True))
        n = len(exps)
        if 2 * genus - 2 + n <= 0:
            return Fraction(0)
        if kappa.weight + sum(exps) != 3 * genus - 3 + n:
            return Fraction(0)
        if not kappa:
            return self._pure(genus, exps)

        q = kappa.length
        total = Fraction(0)
        for shape in multiset_partitions(kappa):
            k = sum(count for _, count in shape)
            sign = -1 if (q - k) % 2 else 1
            denom = 1
            flat: list[MultiIndex] = []
            for part, count in shape:
                denom *= factorial(count)
                flat.extend([part] * count)
            ways = multi_multinomial(kappa, *flat[:-1])
            new = tuple(p.weight + 1 for p in flat)
            total += (
                Fraction(sign, denom)
                * ways
                * self._pure(genus, tuple(sorted(exps + new, reverse=True)))
            )
        return total
