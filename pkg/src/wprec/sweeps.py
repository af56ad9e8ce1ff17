"""Deterministic signature sweeps shared by the verify suites and tests.

Each generator enumerates exactly the stable signatures in a bounded
window, ordered reproducibly (genus, then point count, then kappa weight).
The identity sweeps pick the degree shell on which the identity in
question is nontrivial; off-shell signatures make both sides vanish
termwise and would only pad the case counts.
"""

from __future__ import annotations

from typing import Iterator

from .hodge import LAMBDA_G, LAMBDA_G_GM1, pairing_degree
from .multiindex import MultiIndex, indices_of_weight


def partitions(
    total: int, max_part: int | None = None
) -> Iterator[tuple[int, ...]]:
    """Weakly decreasing positive tuples summing to total; () for zero."""
    if total < 0:
        return
    if total == 0:
        yield ()
        return
    top = total if max_part is None else min(total, max_part)
    for first in range(top, 0, -1):
        for rest in partitions(total - first, first):
            yield (first,) + rest


def psi_lists(total: int, n: int) -> Iterator[tuple[int, ...]]:
    """Descending exponent tuples of length n summing to total."""
    if n == 0:
        if total == 0:
            yield ()
        return
    for shape in partitions(total):
        if len(shape) <= n:
            yield shape + (0,) * (n - len(shape))


def _stable_windows(max_dim: int, min_n: int) -> Iterator[tuple[int, int, int]]:
    for genus in range((max_dim + 3) // 3 + 1):
        for n in range(min_n, max_dim - 3 * genus + 4):
            if 2 * genus - 2 + n <= 0:
                continue
            dim = 3 * genus - 3 + n
            if 0 <= dim <= max_dim:
                yield genus, n, dim


def correlator_signatures(
    max_dim: int, min_n: int = 1, shell: int = 0
) -> Iterator[tuple[int, MultiIndex, tuple[int, ...]]]:
    """Stable (genus, kappa, psi) with dimension at most max_dim.

    Degrees sum to dimension + shell; shell 0 walks the in-dimension
    signatures, shell 1 the shell on which point-adding identities bite.
    """
    for genus, n, dim in _stable_windows(max_dim, min_n):
        degree = dim + shell
        for w in range(degree + 1):
            for kappa in indices_of_weight(w):
                for psi in psi_lists(degree - w, n):
                    yield genus, kappa, psi


def volume_signatures(
    max_dim: int,
) -> Iterator[tuple[int, int, MultiIndex]]:
    """Stable (genus, n >= 1, kappa) with kappa filling the dimension."""
    for genus, n, dim in _stable_windows(max_dim, 1):
        for kappa in indices_of_weight(dim):
            yield genus, n, kappa


def closed_volume_indices(
    genus: int, max_length: int | None = None
) -> Iterator[MultiIndex]:
    """Kappa indices pairing on the unpointed genus-g space."""
    if genus < 2:
        raise ValueError(f"closed volumes need genus >= 2, got {genus}")
    yield from indices_of_weight(3 * genus - 3, max_length=max_length)


def hodge_signatures(
    max_genus: int = 3, max_length: int = 2, max_n: int = 3
) -> Iterator[tuple[int, str, MultiIndex, tuple[int, ...]]]:
    """In-dimension (genus, tag, kappa, psi) for both pairing tags."""
    for genus in range(1, max_genus + 1):
        for tag in (LAMBDA_G_GM1, LAMBDA_G):
            for n in range(max_n + 1):
                if 2 * genus - 2 + n <= 0:
                    continue
                degree = pairing_degree(tag, genus, n)
                if degree < 0:
                    continue
                for w in range(degree + 1):
                    for kappa in indices_of_weight(w, max_length=max_length):
                        for psi in psi_lists(degree - w, n):
                            yield genus, tag, kappa, psi


def kdv_cases(
    max_dim: int,
) -> Iterator[tuple[int, MultiIndex, tuple[int, ...]]]:
    """(genus, kappa, psi) whose tau_0 tau_1 extension is in-dimension."""
    for genus in range((max_dim + 1) // 3 + 1):
        for n in range(max_dim - 3 * genus + 2):
            if 2 * genus + n <= 0:
                continue
            if not 0 <= 3 * genus - 1 + n <= max_dim:
                continue
            shell = 3 * genus - 2 + n
            for w in range(shell + 1):
                for kappa in indices_of_weight(w):
                    for psi in psi_lists(shell - w, n):
                        yield genus, kappa, psi


def rshift_cases(
    max_dim: int,
) -> Iterator[tuple[int, MultiIndex, tuple[int, ...], int]]:
    """(genus, kappa, psi, r) whose tau_1 tau_r extension is in-dimension."""
    for genus in range((max_dim + 1) // 3 + 1):
        for n in range(max_dim - 3 * genus + 2):
            if 2 * genus + n <= 0:
                continue
            if not 0 <= 3 * genus - 1 + n <= max_dim:
                continue
            shell = 3 * genus - 2 + n
            for w in range(shell + 1):
                for kappa in indices_of_weight(w):
                    for partial in range(shell - w + 1):
                        for psi in psi_lists(partial, n):
                            yield genus, kappa, psi, shell - w - partial


def pairing_reduction_cases(
    max_genus: int = 3, max_extra: int = 2
) -> Iterator[tuple[int, str, int, int, tuple[int, ...]]]:
    """(genus, tag, d, d0, rest) hitting the two-insertion rule in-dimension.

    rest entries are all positive, as the rule requires.
    """
    for genus in range(1, max_genus + 1):
        for tag in (LAMBDA_G_GM1, LAMBDA_G):
            for extra in range(max_extra + 1):
                n = extra + 2
                degree = pairing_degree(tag, genus, n)
                if degree < 0:
                    continue
                for d in range(degree + 1):
                    for d0 in range(degree - d + 1):
                        leftover = degree - d - d0
                        for rest in partitions(leftover):
                            if len(rest) == extra:
                                yield genus, tag, d, d0, rest
