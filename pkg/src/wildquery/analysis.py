"""Exact cost bounds for wildcard queries, evaluated in rational arithmetic.

Everything here is a pure function of small integers. Binomials come from
math.comb and averages are fractions.Fraction, so all equality checks
against enumerated measurements can be exact. Floats belong only in report
rendering, never here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import SizeLimitError
from .trie import complete_trie
from .wildcard import (
    Configuration,
    QueryPattern,
    backtracking_query,
    enumerate_configurations,
    validate_configuration,
)

DEFAULT_MAX_ENUMERATION = 1 << 22


def config_step_bound(m: int, w: int, positions: Configuration, k: int = 2) -> int:
    """Worst-case steps for one wildcard configuration, exact on full tries.

    For wildcard positions z_1 < ... < z_w this is
    m + sum_j 2 * k**(w-j) * (k-1) * z_j; with k=2 the weight reduces to
    2**(w-j+1).
    """
    positions = tuple(positions)
    if len(positions) != w:
        raise ValueError(f"expected {w} positions, got {positions}")
    validate_configuration(m, positions)
    if k < 2:
        raise ValueError(f"arity must be >= 2, got {k}")
    total = m
    for j, z in enumerate(positions, start=1):
        total += 2 * k ** (w - j) * (k - 1) * z
    return total


def wildcard_position_pmf(m: int, w: int, z: int, j: int) -> Fraction:
    """Probability that the j-th least significant wildcard sits at z.

    C(z-1, j-1) * C(m-z, w-j) / C(m, w); arguments outside the support
    give 0.
    """
    if not (1 <= j <= w <= m and 1 <= z <= m):
        return Fraction(0)
    return Fraction(comb(z - 1, j - 1) * comb(m - z, w - j), comb(m, w))


def mean_step_bound(m: int, w: int, k: int = 2) -> Fraction:
    """Average of config_step_bound over uniform configurations, closed form.

    m + 2(m+1)/(w+1) * (k**(w+1) - (w+1)k + w)/(k-1), which at k=2 equals
    (m+1)/(w+1) * (2**(w+2) - 2w - 4) + m. By convention w=0 gives m, a
    plain search.
    """
    if k < 2:
        raise ValueError(f"arity must be >= 2, got {k}")
    if not 0 <= w <= m:
        raise ValueError(f"need 0 <= w <= m, got w={w}, m={m}")
    if w == 0:
        return Fraction(m)
    return m + Fraction(2 * (m + 1), w + 1) * Fraction(
        k ** (w + 1) - (w + 1) * k + w, k - 1
    )


def mean_step_bound_hypergeometric(m: int, w: int, k: int = 2) -> Fraction:
    """Same average written as the double sum over position and rank.

    m + sum_{z,j} j * 2 * k**(w-j) * (k-1) * C(z,j)C(m-z,w-j) / C(m,w),
    evaluated term by term. Agreement with mean_step_bound is the closed
    form identity the bound rests on.
    """
    if k < 2:
        raise ValueError(f"arity must be >= 2, got {k}")
    if not 1 <= w <= m:
        raise ValueError(f"need 1 <= w <= m, got w={w}, m={m}")
    denom = comb(m, w)
    total = Fraction(m)
    for j in range(1, w + 1):
        weight = 2 * k ** (w - j) * (k - 1)
        for z in range(1, m + 1):
            total += Fraction(j * weight * comb(z, j) * comb(m - z, w - j), denom)
    return total


def binomial_convolution_identity(m: int, w: int, j: int) -> tuple[int, int]:
    """Both sides of sum_z C(z,j)C(m-z,w-j) == C(m+1,w+1).

    The left side is summed directly over z = 0..m; the right side is a
    single binomial. Returned as (lhs, rhs) for the caller to compare.
    """
    if not 1 <= j <= w <= m:
        raise ValueError(f"need 1 <= j <= w <= m, got m={m}, w={w}, j={j}")
    lhs = sum(comb(z, j) * comb(m - z, w - j) for z in range(m + 1))
    rhs = comb(m + 1, w + 1)
    return lhs, rhs


def mean_steps_by_enumeration(
    m: int,
    w: int,
    k: int = 2,
    max_work: int = DEFAULT_MAX_ENUMERATION,
) -> Fraction:
    """Measured average steps on the complete trie over all configurations.

    Runs the real search once per configuration (fixed letters all 0; on a
    complete trie the cost depends only on the wildcard positions) and
    averages the step counts exactly.
    """
    if not 0 <= w <= m:
        raise ValueError(f"need 0 <= w <= m, got w={w}, m={m}")
    if comb(m, w) * k**m > max_work:
        raise SizeLimitError(
            f"enumeration for m={m}, w={w}, k={k} exceeds work limit {max_work}"
        )
    trie = complete_trie(k, m)
    total = 0
    count = 0
    for positions in enumerate_configurations(m, w):
        pattern = QueryPattern.from_configuration(m, positions)
        total += backtracking_query(trie, pattern).steps
        count += 1
    return Fraction(total, count)


@dataclass(frozen=True)
class ExactBound:
    """All exact cost values for one (m, w, k) in a single bundle."""

    m: int
    w: int
    k: int
    per_config: dict[Configuration, int]
    hypergeometric_mean: Fraction
    closed_form_mean: Fraction


def exact_bound(m: int, w: int, k: int = 2) -> ExactBound:
    """Per-configuration bounds plus both forms of their average."""
    per_config = {
        positions: config_step_bound(m, w, positions, k)
        for positions in enumerate_configurations(m, w)
    }
    return ExactBound(
        m=m,
        w=w,
        k=k,
        per_config=per_config,
        hypergeometric_mean=mean_step_bound_hypergeometric(m, w, k)
        if w >= 1
        else Fraction(m),
        closed_form_mean=mean_step_bound(m, w, k),
    )
