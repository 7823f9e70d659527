"""Behavior of games under parallel payout shifts.

Shifting every payout by n (admissible for n > -ess_inf) leaves two
quantities unchanged for any fixed price u inside the admissible interval:
the ratio of the raw optimal proportion to its price, and the growth rate at
that proportion. Optimal prices shift additively with n as long as exp(rate)
stays below the boundary growth of both the original and the shifted game;
past a threshold shift the pricing regime switches to full investment, and
for large shifts the optimal price approaches the shifted expectation
discounted by exp(rate).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import DomainError, InternalConsistencyError
from .games import Game, compute_stats, translate
from .solver import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    PricingSolution,
    optimal_price,
    pre_optimal_proportion,
)

# Absolute agreement required between pricing the shifted game directly and
# shifting the original optimal price.
TRANSLATION_CHECK_TOL = 1e-6

# Threshold search: initial upper bound factor and doubling cap.
_SEARCH_START_FACTOR = 10.0
_MAX_DOUBLINGS = 60


@dataclass(frozen=True)
class TranslationReport:
    """Both sides of the shift-invariance identities at one (u, n) pair."""

    shift: float
    ratio_original: float
    ratio_translated: float
    ratio_residual: float
    growth_original: float
    growth_translated: float
    growth_residual: float


def _compare(game: Game, u: float, n: float, tol: float, max_iter: int) -> TranslationReport:
    base = pre_optimal_proportion(game, u, tol=tol, max_iter=max_iter)
    shifted = pre_optimal_proportion(
        translate(game, n), u + n, tol=tol, max_iter=max_iter
    )
    ratio_original = base.proportion / u
    ratio_translated = shifted.proportion / (u + n)
    return TranslationReport(
        shift=n,
        ratio_original=ratio_original,
        ratio_translated=ratio_translated,
        ratio_residual=abs(ratio_translated - ratio_original),
        growth_original=base.growth,
        growth_translated=shifted.growth,
        growth_residual=abs(shifted.growth - base.growth),
    )


def check_ratio_invariance(
    game: Game,
    u: float,
    n: float,
    *,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> TranslationReport:
    """Compare proportion-to-price ratios of the original game at price u and
    the shifted game at price u + n.

    Both raw (uncapped) roots are solved independently; the report stores
    both sides along with the absolute residuals.
    """
    return _compare(game, u, n, tol, max_iter)


def check_growth_invariance(
    game: Game,
    u: float,
    n: float,
    *,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> TranslationReport:
    """Compare growth rates at the raw optimal proportions of the original
    game at price u and the shifted game at price u + n."""
    return _compare(game, u, n, tol, max_iter)


def boundary_growth(game: Game, n: float) -> float:
    """Growth rate of the shifted game at its fair price with full investment.

    Equals the shifted harmonic integral times the geometric mean of the
    shifted payouts. Strictly decreasing in n with limit 1, it separates the
    interior pricing regime from full investment at a given rate.
    """
    stats = compute_stats(translate(game, n))
    return stats.harmonic_integral * math.exp(stats.log_moment)


class ThresholdStatus(Enum):
    """Whether a regime-switch shift exists at the given rate."""

    FOUND = "found"
    ALREADY_FULL_INVESTMENT_AT_ZERO_SHIFT = "already_full_investment_at_zero_shift"


@dataclass(frozen=True)
class ThresholdResult:
    """Shift at which pricing switches to the full-investment regime.

    n0 and residual are None when the unshifted game already prices in the
    full-investment regime; otherwise residual is the absolute mismatch of
    the boundary growth against exp(rate) at n0.
    """

    rate: float
    n0: float | None
    residual: float | None
    regime_note: ThresholdStatus


def threshold_shift(
    game: Game,
    r: float,
    *,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> ThresholdResult:
    """Solve boundary_growth(game, n0) = exp(r) for the regime-switch shift.

    The boundary growth is strictly decreasing in the shift, so the root is
    bisected on [0, n_hi] with n_hi found by doubling. When exp(r) already
    exceeds the unshifted boundary growth there is nothing to solve and the
    status says so.
    """
    if not r > 0.0:
        raise DomainError(f"rate r={r!r} must be strictly positive")
    target = math.exp(r)
    b0 = boundary_growth(game, 0.0)
    if target > b0:
        return ThresholdResult(
            rate=r,
            n0=None,
            residual=None,
            regime_note=ThresholdStatus.ALREADY_FULL_INVESTMENT_AT_ZERO_SHIFT,
        )
    if target == b0:
        return ThresholdResult(
            rate=r, n0=0.0, residual=0.0, regime_note=ThresholdStatus.FOUND
        )
    stats = compute_stats(game)
    hi = max(1.0, _SEARCH_START_FACTOR * stats.expectation)
    doublings = 0
    while boundary_growth(game, hi) >= target:
        hi *= 2.0
        doublings += 1
        if doublings > _MAX_DOUBLINGS:
            raise InternalConsistencyError(
                f"boundary growth failed to drop below exp(r)={target!r}"
                f" for shifts up to {hi!r}"
            )
    lo = 0.0
    n0 = 0.5 * (lo + hi)
    res = boundary_growth(game, n0) - target
    iterations = 1
    while iterations < max_iter:
        if res > 0.0:
            lo = n0
        else:
            hi = n0
        if hi - lo <= tol * max(1.0, hi) and abs(res) <= tol:
            break
        nxt = 0.5 * (lo + hi)
        if nxt == lo or nxt == hi:
            break
        n0 = nxt
        res = boundary_growth(game, n0) - target
        iterations += 1
    return ThresholdResult(
        rate=r, n0=n0, residual=abs(res), regime_note=ThresholdStatus.FOUND
    )


def price_translated(
    game: Game,
    r: float,
    n: float,
    *,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> PricingSolution:
    """Optimal price of the game shifted by n at rate r.

    Whenever exp(r) lies below the boundary growth of both the original and
    the shifted game, the result must equal the original optimal price plus
    n; the two routes are compared to TRANSLATION_CHECK_TOL and a mismatch
    raises InternalConsistencyError, since it can only come from a solver
    defect.
    """
    if not r > 0.0:
        raise DomainError(f"rate r={r!r} must be strictly positive")
    shifted = translate(game, n)
    solution = optimal_price(shifted, r, tol=tol, max_iter=max_iter)
    b_original = boundary_growth(game, 0.0)
    b_shifted = boundary_growth(game, n)
    if r < math.log(min(b_original, b_shifted)):
        base = optimal_price(game, r, tol=tol, max_iter=max_iter)
        expected = base.optimal_price + n
        if abs(solution.optimal_price - expected) > TRANSLATION_CHECK_TOL:
            raise InternalConsistencyError(
                f"shifted optimal price {solution.optimal_price!r} disagrees"
                f" with original-plus-shift {expected!r} beyond"
                f" {TRANSLATION_CHECK_TOL}"
            )
    return solution


@dataclass(frozen=True)
class AsymptoticRow:
    """Large-shift tracking quantities for one shift value.

    gap: shifted expectation minus shifted fair price (drops to 0).
    boundary_growth: regime boundary of the shifted game (drops to 1).
    price_ratio: shifted optimal price over shifted expectation (tends to
    exp(-rate)).
    monotone_witness: shifted fair price minus the shift (increases toward
    the unshifted expectation).
    """

    shift: float
    gap: float
    boundary_growth: float
    price_ratio: float
    monotone_witness: float


def asymptotic_sweep(
    game: Game,
    r: float,
    shifts: Sequence[float],
    *,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> list[AsymptoticRow]:
    """Track the large-shift quantities along a strictly increasing list of
    shifts, one row per shift in input order.

    No trend is asserted here; the sweep command and the test suite check
    the expected monotonicity and limits.
    """
    if not r > 0.0:
        raise DomainError(f"rate r={r!r} must be strictly positive")
    values = [float(n) for n in shifts]
    for prev, nxt in zip(values, values[1:]):
        if not nxt > prev:
            raise DomainError(
                f"shifts must be strictly increasing, got {prev!r} before {nxt!r}"
            )
    rows: list[AsymptoticRow] = []
    for n in values:
        shifted = translate(game, n)
        stats = compute_stats(shifted)
        pricing = optimal_price(shifted, r, tol=tol, max_iter=max_iter)
        rows.append(
            AsymptoticRow(
                shift=n,
                gap=stats.expectation - stats.fair_price,
                boundary_growth=stats.harmonic_integral * math.exp(stats.log_moment),
                price_ratio=pricing.optimal_price / stats.expectation,
                monotone_witness=stats.fair_price - n,
            )
        )
    return rows
