"""Log-optimal proportion of investment and growth-based pricing.

At price u and proportion t, one period multiplies wealth by
``a*t/u - t + 1`` where ``a`` is the drawn payout. The raw (uncapped)
optimal proportion is the unique root in t of the first-order condition

    sum_i p_i * (a_i - u) / ((a_i - u)*t + u) = 0,

which is strictly decreasing in t and positive at t=0 whenever u is below
the expectation. The growth rate at (u, t) is the geometric mean wealth
factor ``exp(sum_i p_i * log(a_i*t/u - t + 1))``.

For prices above the fair price 1/H the raw root lies in (0, 1) and is the
no-borrowing optimum; at or below the fair price the optimum is full
investment (t = 1). The optimal price at a riskless rate r equates the best
achievable growth rate with exp(r).

All solvers use plain bisection: the relevant curves are strictly monotone,
so bisection converges unconditionally. Everything here is a pure function
of immutable inputs and is safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError
from .games import Game, GameStats, Outcome, compute_stats

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 200

# Relative gap kept below the proportion cap u/(u - ess_inf), where the
# first-order sum diverges for games with mass at the infimum.
_CAP_MARGIN = 1e-13
# Relative gap kept inside the (fair_price, expectation) pricing bracket.
_PRICE_MARGIN = 1e-12


@dataclass(frozen=True)
class ProportionSolution:
    """Result of solving for the proportion of investment at one price.

    `residual` is the value of the first-order sum at the returned
    proportion; for uncapped roots it is within the solver tolerance, for
    regime-capped solutions (proportion 1) it is merely diagnostic.
    """

    price: float
    proportion: float
    growth: float
    residual: float
    iterations: int


class Regime(Enum):
    """Which branch of the pricing optimum applies."""

    INTERIOR = "interior"
    FULL_INVESTMENT = "full_investment"


@dataclass(frozen=True)
class PricingSolution:
    """Optimal price of a game at a riskless rate.

    `growth_check` is the growth rate recomputed at (optimal_price,
    proportion); it must equal exp(rate) up to solver tolerance.
    """

    rate: float
    optimal_price: float
    regime: Regime
    proportion: float
    growth_check: float


def _first_order_sum(outcomes: tuple[Outcome, ...], u: float, t: float) -> float:
    """sum_i p_i (a_i - u) / ((a_i - u) t + u); -inf past the cap."""
    terms = []
    for o in outcomes:
        denom = (o.payout - u) * t + u
        if not denom > 0.0:
            # Only reachable for t at or beyond the cap; the sign is all the
            # bisection needs there.
            return -math.inf
        terms.append(o.weight * (o.payout - u) / denom)
    return math.fsum(terms)


def _log_growth(outcomes: tuple[Outcome, ...], u: float, t: float) -> float:
    return math.fsum(
        o.weight * math.log1p(t * (o.payout - u) / u) for o in outcomes
    )


def _solve_proportion(
    outcomes: tuple[Outcome, ...],
    xi: float,
    u: float,
    tol: float,
    max_iter: int,
) -> tuple[float, float, int]:
    """Bisect the first-order sum over (0, u/(u - xi)).

    The sum is positive at 0 for u below the expectation and strictly
    decreasing, so [0, cap) brackets the unique root. Iterates until the
    bracket is relatively narrow and the residual is small, or the bracket
    can no longer be split.
    """
    cap = u / (u - xi)
    lo = 0.0
    hi = cap * (1.0 - _CAP_MARGIN)
    mid = 0.5 * (lo + hi)
    res = _first_order_sum(outcomes, u, mid)
    iterations = 1
    while iterations < max_iter:
        if res > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * hi and abs(res) <= tol:
            break
        nxt = 0.5 * (lo + hi)
        if nxt == lo or nxt == hi:
            break
        mid = nxt
        res = _first_order_sum(outcomes, u, mid)
        iterations += 1
    return mid, res, iterations


def _require_admissible_price(u: float, stats: GameStats) -> None:
    if not (stats.lower_price_bound < u < stats.expectation):
        raise DomainError(
            f"price u={u!r} outside the admissible interval"
            f" (ess_inf + 1/h_xi, expectation) ="
            f" ({stats.lower_price_bound!r}, {stats.expectation!r})"
        )


def proportion_residual(game: Game, u: float, t: float) -> float:
    """Value of the first-order sum at (u, t).

    Strictly decreasing in t on [0, u/(u - ess_inf)) and equal to
    (expectation - u)/u at t = 0. The price must exceed the essential
    infimum and t must stay below the cap so every denominator is positive.
    """
    stats = compute_stats(game)
    if not u > stats.ess_inf:
        raise DomainError(f"price u={u!r} must exceed ess_inf = {stats.ess_inf!r}")
    cap = u / (u - stats.ess_inf)
    if not (0.0 <= t < cap):
        raise DomainError(
            f"proportion t={t!r} outside [0, u/(u - ess_inf)) = [0, {cap!r})"
        )
    return _first_order_sum(game.outcomes, u, t)


def pre_optimal_proportion(
    game: Game,
    u: float,
    *,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> ProportionSolution:
    """Solve for the raw (uncapped) optimal proportion at price u.

    The root exceeds 1 for prices below the fair price, which corresponds to
    investing borrowed money; use optimal_proportion for the no-borrowing
    optimum. Admissible prices lie strictly between the lower price bound
    and the expectation.
    """
    stats = compute_stats(game)
    _require_admissible_price(u, stats)
    t, res, iterations = _solve_proportion(
        game.outcomes, stats.ess_inf, u, tol, max_iter
    )
    growth = math.exp(_log_growth(game.outcomes, u, t))
    return ProportionSolution(
        price=u, proportion=t, growth=growth, residual=res, iterations=iterations
    )


def growth_rate(game: Game, u: float, t: float) -> float:
    """Geometric mean per-period wealth factor at price u and proportion t.

    Every per-outcome factor a*t/u - t + 1 must be strictly positive; the
    error message identifies the offending outcome otherwise.
    """
    stats = compute_stats(game)
    if not u > 0.0:
        raise DomainError(f"price u={u!r} must be strictly positive")
    if not t >= 0.0:
        raise DomainError(f"proportion t={t!r} must be nonnegative")
    if u > stats.ess_inf:
        cap = u / (u - stats.ess_inf)
        if not t < cap:
            raise DomainError(
                f"proportion t={t!r} must stay below u/(u - ess_inf) = {cap!r}"
            )
    for o in game.outcomes:
        x = t * (o.payout - u) / u
        if not x > -1.0:
            raise DomainError(
                f"wealth factor {1.0 + x!r} is not positive for payout"
                f" {o.payout!r} at u={u!r}, t={t!r}"
            )
    return math.exp(_log_growth(game.outcomes, u, t))


def optimal_proportion(
    game: Game,
    u: float,
    *,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> ProportionSolution:
    """No-borrowing optimal proportion for any price in (0, expectation).

    Above the fair price this is the raw root, which lies in (0, 1); at or
    below the fair price the optimum is full investment with growth
    exp(log_moment)/u.
    """
    stats = compute_stats(game)
    if not (0.0 < u < stats.expectation):
        raise DomainError(
            f"price u={u!r} outside (0, expectation) ="
            f" (0, {stats.expectation!r})"
        )
    if u > stats.fair_price:
        return pre_optimal_proportion(game, u, tol=tol, max_iter=max_iter)
    growth = math.exp(stats.log_moment) / u
    res = _first_order_sum(game.outcomes, u, 1.0)
    return ProportionSolution(
        price=u, proportion=1.0, growth=growth, residual=res, iterations=0
    )


def optimal_price(
    game: Game,
    r: float,
    *,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> PricingSolution:
    """Price at which the best achievable growth rate equals exp(r).

    The boundary value is the growth rate at the fair price with full
    investment, harmonic_integral * exp(log_moment). At or above it the
    optimum is full investment with price exp(log_moment - r); below it the
    strictly decreasing growth-versus-price curve is inverted by bisection
    on (fair_price, expectation).
    """
    stats = compute_stats(game)
    if not r > 0.0:
        raise DomainError(
            f"rate r={r!r} must be strictly positive: growth rates only"
            " approach 1 as the price approaches the expectation"
        )
    log_boundary = math.log(stats.harmonic_integral) + stats.log_moment
    if r >= log_boundary:
        price = math.exp(stats.log_moment - r)
        growth = math.exp(stats.log_moment) / price if price > 0.0 else math.inf
        return PricingSolution(
            rate=r,
            optimal_price=price,
            regime=Regime.FULL_INVESTMENT,
            proportion=1.0,
            growth_check=growth,
        )
    target = math.exp(r)
    outcomes = game.outcomes
    xi = stats.ess_inf
    lo = stats.fair_price * (1.0 + _PRICE_MARGIN)
    hi = stats.expectation * (1.0 - _PRICE_MARGIN)
    price = 0.5 * (lo + hi)
    t, _, _ = _solve_proportion(outcomes, xi, price, tol, max_iter)
    growth = math.exp(_log_growth(outcomes, price, t))
    iterations = 1
    while iterations < max_iter:
        if growth > target:
            lo = price
        else:
            hi = price
        if hi - lo <= tol * hi and abs(growth - target) <= tol:
            break
        nxt = 0.5 * (lo + hi)
        if nxt == lo or nxt == hi:
            break
        price = nxt
        t, _, _ = _solve_proportion(outcomes, xi, price, tol, max_iter)
        growth = math.exp(_log_growth(outcomes, price, t))
        iterations += 1
    return PricingSolution(
        rate=r,
        optimal_price=price,
        regime=Regime.INTERIOR,
        proportion=t,
        growth_check=growth,
    )
