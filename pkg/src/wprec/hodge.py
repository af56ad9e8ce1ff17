"""Pairings of kappa/descendant monomials against the two socle classes.

Two evaluation tags: "lambda_g_lambda_gm1" pairs against the product of the
top two Chern classes of the Hodge bundle (degree condition
weight(b) + sum(d) = g - 2 + n) and "lambda_g" against the top class alone
(degree 2g - 3 + n). Both integrals are determined by a single one-point
seed per genus together with recursions that never change the genus.

Seeds default to the classical closed forms

    <psi^(2g-2) lambda_g>          = (2^(2g-1) - 1)/2^(2g-1) |B_2g|/(2g)!
    <psi^(g-1) lambda_g lambda_(g-1)> = |B_2g| / (2^(2g-1) (2g-1)!! 2g)

proved by Faber and Pandharipande (Invent. Math. 139 (2000) and the lambda_g
conjecture literature); any other provider of one-point values can be
substituted and all outputs scale linearly with it.

Two independent kappa-handling routes are exposed. The primary route
rewrites kappa factors as signed descendant insertions and reduces the pure
pairing by the two-distinguished-insertions rule. The direct route keeps
kappa factors in play with table-weighted coefficients, plus three
forgetful-map identities covering the shapes the table recursion cannot
reach (a point-adding step needs two insertions with the rest positive):
a string step with kappa corrections, a kappa-removal step trading one
kappa factor for a fresh insertion, and the insertion-free dilaton scaling
<|lambda> = <tau_1|lambda>/(2g-2). All three follow from the standard
comparisons kappa_a = pull(kappa_a) + psi_(n+1)^a, psi_j = pull(psi_j) + D_j
with psi_(n+1) D_j = 0, and push(psi_(n+1)^(a+1)) = kappa_a.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction

from .constants import GAMMA_FACT, GAMMA_ODD
from .correlator import IdentityReport
from .kmz import kappa_partition_terms
from .multiindex import ZERO, MultiIndex, delta, multi_binomial, splits2
from .numbers import bernoulli, double_factorial, factorial

LAMBDA_G = "lambda_g"
LAMBDA_G_GM1 = "lambda_g_lambda_gm1"
_TAGS = (LAMBDA_G, LAMBDA_G_GM1)


def pairing_degree(tag: str, genus: int, n: int) -> int:
    """Total kappa/psi degree forced by the dimension at (tag, genus, n)."""
    if tag == LAMBDA_G:
        return 2 * genus - 3 + n
    if tag == LAMBDA_G_GM1:
        return genus - 2 + n
    raise ValueError(f"unknown pairing tag {tag!r}")


class BaseValueProvider:
    """One-point seed values; subclasses fill in base_value."""

    fingerprint = "abstract"

    def base_value(self, genus: int, tag: str) -> Fraction:
        raise NotImplementedError


class DefaultBaseValues(BaseValueProvider):
    """Faber-Pandharipande closed forms, any genus >= 1."""

    fingerprint = "builtin:v1"

    def base_value(self, genus: int, tag: str) -> Fraction:
        if genus < 1:
            raise LookupError(f"base value unavailable (g={genus}, tag={tag})")
        b2g = abs(bernoulli(2 * genus))
        if tag == LAMBDA_G:
            half_pow = 2 ** (2 * genus - 1)
            return Fraction(half_pow - 1, half_pow) * b2g / factorial(2 * genus)
        if tag == LAMBDA_G_GM1:
            return b2g / (
                2 ** (2 * genus - 1)
                * double_factorial(2 * genus - 1)
                * 2
                * genus
            )
        raise ValueError(f"unknown pairing tag {tag!r}")


class FileBaseValues(BaseValueProvider):
    """Seed values from a text file of lines ``genus,tag,num/den``.

    Blank lines and lines starting with ``#`` are ignored. Missing entries
    raise LookupError so a partial table fails loudly, never silently.
    """

    def __init__(self, path: str):
        self._values: dict[tuple[int, str], Fraction] = {}
        with open(path, "r", encoding="utf-8") as handle:
            content = handle.read()
        self.fingerprint = "file:" + hashlib.sha256(content.encode()).hexdigest()[:16]
        for line_no, raw in enumerate(content.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 3:
                raise ValueError(f"{path}:{line_no}: expected genus,tag,value")
            genus = int(parts[0])
            tag = parts[1]
            if tag not in _TAGS:
                raise ValueError(f"{path}:{line_no}: unknown tag {tag!r}")
            self._values[(genus, tag)] = Fraction(parts[2])

    def base_value(self, genus: int, tag: str) -> Fraction:
        try:
            return self._values[(genus, tag)]
        except KeyError:
            raise LookupError(
                f"base value unavailable (g={genus}, tag={tag})"
            ) from None


class HodgeEngine:
    """Both evaluation routes over one seed provider."""

    def __init__(self, provider: BaseValueProvider | None = None):
        self.provider = provider or DefaultBaseValues()
        # Keys carry the provider fingerprint so swapping self.provider
        # cannot serve values seeded by a different base table.
        self._pure_memo: dict[
            tuple[str, str, int, tuple[int, ...]], Fraction
        ] = {}
        self._direct_memo: dict[
            tuple[str, str, int, MultiIndex, tuple[int, ...]], Fraction
        ] = {}

    def pure_pairing(self, genus: int, tag: str, psi) -> Fraction:
        if genus < 1:
            raise ValueError(f"pairings need genus >= 1, got {genus}")
        if tag not in _TAGS:
            raise ValueError(f"unknown pairing tag {tag!r}")
        exps = tuple(sorted(psi, reverse=True))
        if exps and exps[-1] < 0:
            raise ValueError(f"negative psi exponent in {exps}")
        return self._pure(genus, tag, exps)

    def correlator(self, genus: int, tag: str, kappa: MultiIndex = ZERO, psi=()) -> Fraction:
        """Primary route: kappa factors traded for signed descendants."""
        genus, tag, kappa, exps = self._canonical(genus, tag, kappa, psi)
        if self._gated(genus, tag, kappa, exps):
            return Fraction(0)
        total = Fraction(0)
        for coeff, extra in kappa_partition_terms(kappa):
            total += coeff * self._pure(
                genus, tag, tuple(sorted(exps + extra, reverse=True))
            )
        return total

    def correlator_direct(
        self, genus: int, tag: str, kappa: MultiIndex = ZERO, psi=()
    ) -> Fraction:
        """Direct route: kappa factors consumed by the table recursion."""
        genus, tag, kappa, exps = self._canonical(genus, tag, kappa, psi)
        if self._gated(genus, tag, kappa, exps):
            return Fraction(0)
        return self._direct(genus, tag, kappa, exps)

    @staticmethod
    def _canonical(genus, tag, kappa, psi):
        if genus < 1:
            raise ValueError(f"pairings need genus >= 1, got {genus}")
        if tag not in _TAGS:
            raise ValueError(f"unknown pairing tag {tag!r}")
        if not isinstance(kappa, MultiIndex):
            kappa = MultiIndex(kappa)
        exps = tuple(sorted(psi, reverse=True))
        if exps and exps[-1] < 0:
            raise ValueError(f"negative psi exponent in {exps}")
        return genus, tag, kappa, exps

    @staticmethod
    def _gated(genus, tag, kappa, exps) -> bool:
        n = len(exps)
        if 2 * genus - 2 + n <= 0:
            return True
        return kappa.weight + sum(exps) != pairing_degree(tag, genus, n)

    def _pure(self, genus: int, tag: str, exps: tuple[int, ...]) -> Fraction:
        n = len(exps)
        if 2 * genus - 2 + n <= 0:
            return Fraction(0)
        if sum(exps) != pairing_degree(tag, genus, n):
            return Fraction(0)
        key = (self.provider.fingerprint, tag, genus, exps)
        found = self._pure_memo.get(key)
        if found is not None:
            return found

        if n == 0:
            result = self._pure(genus, tag, (1,)) / (2 * genus - 2)
        elif n == 1:
            result = self.provider.base_value(genus, tag)
        elif exps[-1] == 0:
            rest = exps[:-1]
            result = Fraction(0)
            for pos, v in enumerate(rest):
                if v == 0:
                    continue
                result += self._pure(
                    genus,
                    tag,
                    tuple(
                        sorted(rest[:pos] + (v - 1,) + rest[pos + 1 :], reverse=True)
                    ),
                )
        else:
            d, d0 = exps[0], exps[1]
            others = exps[2:]
            result = self._merge_coeff(tag, d, d0, 0) * self._pure(
                genus, tag, tuple(sorted((d0 + d - 1,) + others, reverse=True))
            )
            for pos, v in enumerate(others):
                rest = others[:pos] + others[pos + 1 :]
                result += self._join_coeff(tag, d, v, 0) * self._pure(
                    genus,
                    tag,
                    tuple(sorted((d0, v + d - 1) + rest, reverse=True)),
                )
        return self._pure_memo.setdefault(key, result)

    def _direct(
        self, genus: int, tag: str, kappa: MultiIndex, exps: tuple[int, ...]
    ) -> Fraction:
        if self._gated(genus, tag, kappa, exps):
            return Fraction(0)
        if not kappa:
            return self._pure(genus, tag, exps)
        key = (self.provider.fingerprint, tag, genus, kappa, exps)
        found = self._direct_memo.get(key)
        if found is not None:
            return found

        n = len(exps)
        if n <= 1:
            # Trade the smallest kappa index for a fresh insertion.
            a = kappa.entries[0][0]
            m = kappa - delta(a)
            result = Fraction(0)
            for left, right in splits2(m):
                sign = -1 if right.length % 2 else 1
                result += (
                    sign
                    * multi_binomial(m, left)
                    * self._direct(
                        genus,
                        tag,
                        left,
                        tuple(
                            sorted(exps + (a + 1 + right.weight,), reverse=True)
                        ),
                    )
                )
        elif exps[-1] == 0:
            rest = exps[:-1]
            result = Fraction(0)
            for pos, v in enumerate(rest):
                if v == 0:
                    continue
                result += self._direct(
                    genus,
                    tag,
                    kappa,
                    tuple(
                        sorted(rest[:pos] + (v - 1,) + rest[pos + 1 :], reverse=True)
                    ),
                )
            for left, right in splits2(kappa):
                if not right:
                    continue
                cb = multi_binomial(kappa, left)
                if right.weight == 1:
                    result += (
                        cb
                        * (2 * genus - 2 + n - 1)
                        * self._direct(genus, tag, left, rest)
                    )
                else:
                    result += cb * self._direct(
                        genus, tag, left + delta(right.weight - 1), rest
                    )
        else:
            gamma = (GAMMA_FACT if tag == LAMBDA_G else GAMMA_ODD).value
            d, d0 = exps[0], exps[1]
            others = exps[2:]
            result = Fraction(0)
            for left, right in splits2(kappa):
                gcb = gamma(left) * multi_binomial(kappa, left)
                if not gcb:
                    continue
                w = left.weight
                result += (
                    gcb
                    * self._merge_coeff(tag, d, d0, w)
                    * self._direct(
                        genus,
                        tag,
                        right,
                        tuple(sorted((d0 + d + w - 1,) + others, reverse=True)),
                    )
                )
                for pos, v in enumerate(others):
                    rest = others[:pos] + others[pos + 1 :]
                    result += (
                        gcb
                        * self._join_coeff(tag, d, v, w)
                        * self._direct(
                            genus,
                            tag,
                            right,
                            tuple(sorted((d0, v + d + w - 1) + rest, reverse=True)),
                        )
                    )
        return self._direct_memo.setdefault(key, result)

    @staticmethod
    def _merge_coeff(tag: str, d: int, d0: int, w: int) -> Fraction:
        """Weight on the term joining the two distinguished insertions."""
        if d0 + d + w - 1 < 0:
            return Fraction(0)
        if tag == LAMBDA_G:
            return Fraction(
                factorial(d + d0 + w), factorial(d0) * factorial(d)
            )
        return Fraction(
            double_factorial(2 * d + 2 * d0 + 2 * w - 1),
            double_factorial(2 * d - 1) * double_factorial(2 * d0 - 1),
        )

    @staticmethod
    def _join_coeff(tag: str, d: int, dj: int, w: int) -> Fraction:
        """Weight on the term joining the pivot with a positive insertion."""
        if tag == LAMBDA_G:
            return Fraction(
                factorial(dj + d + w - 1), factorial(dj - 1) * factorial(d)
            )
        return Fraction(
            double_factorial(2 * d + 2 * dj + 2 * w - 3),
            double_factorial(2 * d - 1) * double_factorial(2 * dj - 3),
        )


def check_pairing_reduction(
    engine: HodgeEngine, genus: int, tag: str, d: int, d0: int, rest
) -> IdentityReport:
    """Two-distinguished-insertions rule on pure pairings, checked literally.

    Requires every non-distinguished exponent positive, as the rule does.
    """
    others = tuple(rest)
    if any(v < 1 for v in others):
        raise ValueError("non-distinguished exponents must be >= 1")
    if d < 0 or d0 < 0:
        raise ValueError("distinguished exponents must be >= 0")
    lhs = engine.pure_pairing(genus, tag, (d, d0) + others)
    rhs = Fraction(0)
    if d0 + d - 1 >= 0:
        rhs += engine._merge_coeff(tag, d, d0, 0) * engine.pure_pairing(
            genus, tag, (d0 + d - 1,) + others
        )
    for pos, v in enumerate(others):
        kept = others[:pos] + others[pos + 1 :]
        rhs += engine._join_coeff(tag, d, v, 0) * engine.pure_pairing(
            genus, tag, (d0, v + d - 1) + kept
        )
    return IdentityReport(lhs == rhs, lhs, rhs)
