"""Independent verification paths for the solver.

Three routes that never touch the bisection code: the closed-form solution
for two-point games, brute-force grid maximization of the growth rate, and
Monte Carlo simulation of per-period wealth growth.

The simulation uses an xorshift64* generator seeded through the splitmix64
finalizer, written out below so draws are bit-reproducible across platforms
and languages. Each path derives its state from (seed, path index) alone,
so results do not depend on scheduling order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .games import Game, compute_stats


@dataclass(frozen=True)
class TwoPointGame:
    """Payout `high` with probability `p_high`, else `low` (0 < low < high)."""

    high: float
    low: float
    p_high: float

    def __post_init__(self) -> None:
        if not (0.0 < self.low < self.high and math.isfinite(self.high)):
            raise DomainError(
                f"payouts must satisfy 0 < low < high, got low={self.low!r},"
                f" high={self.high!r}"
            )
        if not 0.0 < self.p_high < 1.0:
            raise DomainError(f"p_high={self.p_high!r} must lie in (0, 1)")

    @property
    def expectation(self) -> float:
        return self.p_high * self.high + (1.0 - self.p_high) * self.low

    def to_game(self, label: str | None = None) -> Game:
        return Game.from_pairs(
            [(self.high, self.p_high), (self.low, 1.0 - self.p_high)], label=label
        )


def two_point_closed_form(
    g: TwoPointGame, u: float, n: float = 0.0
) -> tuple[float, float]:
    """Closed-form raw proportion and growth for a two-point game shifted by n.

    The proportion refers to the game shifted by n at price u + n:

        t = (E - u) * (n + u) / ((high - u) * (u - low))

    The growth rate at that proportion,

        (high - low) * (p/(u - low))**p * ((1-p)/(high - u))**(1-p),

    involves no n at all. The price must lie strictly between `low` and the
    expectation, and the shift must exceed -low.
    """
    e = g.expectation
    if not g.low < u < e:
        raise DomainError(
            f"price u={u!r} must lie in (low, expectation) = ({g.low!r}, {e!r})"
        )
    if not n > -g.low:
        raise DomainError(f"shift n={n!r} must exceed -low = {-g.low!r}")
    proportion = (e - u) * (n + u) / ((g.high - u) * (u - g.low))
    p = g.p_high
    growth = (
        (g.high - g.low)
        * (p / (u - g.low)) ** p
        * ((1.0 - p) / (g.high - u)) ** (1.0 - p)
    )
    return proportion, growth


def grid_argmax_growth(game: Game, u: float, grid_points: int) -> float:
    """Brute-force argmax of the growth rate over a uniform proportion grid.

    The grid places `grid_points` interior points on
    (0, min(1, (1 - 1e-9) * u/(u - ess_inf))); ties resolve to the smaller
    proportion. Prices must lie in (fair_price, expectation), where the
    no-borrowing optimum is interior.
    """
    if grid_points < 1:
        raise DomainError(f"grid_points={grid_points!r} must be at least 1")
    stats = compute_stats(game)
    if not (stats.fair_price < u < stats.expectation):
        raise DomainError(
            f"price u={u!r} outside (fair_price, expectation) ="
            f" ({stats.fair_price!r}, {stats.expectation!r})"
        )
    cap = min(1.0, (1.0 - 1e-9) * u / (u - stats.ess_inf))
    ts = cap * np.arange(1, grid_points + 1, dtype=np.float64) / (grid_points + 1)
    log_growth = np.zeros_like(ts)
    for o in game.outcomes:
        log_growth += o.weight * np.log1p(ts * ((o.payout - u) / u))
    return float(ts[int(np.argmax(log_growth))])


# 64-bit generator, written out for cross-language reproducibility.
_MASK64 = (1 << 64) - 1
_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    """splitmix64 output finalizer."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _path_state(seed: int, path: int) -> int:
    """Nonzero xorshift64* state for one path, from (seed, path) only."""
    state = _mix64((seed + (path + 1) * _SPLITMIX_GAMMA) & _MASK64)
    return state or _SPLITMIX_GAMMA


def _next_uniform(state: int) -> tuple[int, float]:
    """One xorshift64* step; the top 53 output bits map to [0, 1)."""
    state ^= state >> 12
    state = (state ^ (state << 25)) & _MASK64
    state ^= state >> 27
    out = (state * 0x2545F4914F6CDD1D) & _MASK64
    return state, (out >> 11) * 2.0**-53


@dataclass(frozen=True)
class SimulationResult:
    """Per-period log growth statistics over periods * paths draws."""

    mean_log_growth: float
    std_error: float
    paths: int
    periods_per_path: int
    seed: int


def simulate_wealth(
    game: Game,
    u: float,
    t: float,
    periods: int,
    paths: int,
    seed: int,
) -> SimulationResult:
    """Simulate per-period log wealth growth at price u and proportion t.

    Outcomes are drawn i.i.d. by inverse CDF over the payout-sorted
    cumulative weights; each period multiplies wealth by a*t/u - t + 1, so
    the per-period log growth is the log of that factor. The mean and its
    standard error aggregate every period of every path. Identical
    arguments give bit-identical results.
    """
    compute_stats(game)
    if not u > 0.0:
        raise DomainError(f"price u={u!r} must be strictly positive")
    if not 0.0 <= t <= 1.0:
        # proportions in [0, 1] keep every wealth factor positive, since
        # u/(u - ess_inf) > 1 whenever the essential infimum is positive
        raise DomainError(
            f"proportion t={t!r} must lie in [0, 1]; borrowing is unsupported"
        )
    if periods < 1 or paths < 1:
        raise DomainError(
            f"periods={periods!r} and paths={paths!r} must both be at least 1"
        )
    seed = int(seed) & _MASK64

    cum: list[float] = []
    acc = 0.0
    for o in game.outcomes:
        acc += o.weight
        cum.append(acc)
    cum[-1] = 1.0  # guard the last bucket against rounding
    log_factors = [math.log1p(t * (o.payout - u) / u) for o in game.outcomes]

    total = 0.0
    total_sq = 0.0
    for j in range(paths):
        state = _path_state(seed, j)
        for _ in range(periods):
            state, x = _next_uniform(state)
            k = 0
            while x >= cum[k]:
                k += 1
            lf = log_factors[k]
            total += lf
            total_sq += lf * lf
    count = periods * paths
    mean = total / count
    if count > 1:
        var = max(0.0, (total_sq - count * mean * mean) / (count - 1))
        std_error = math.sqrt(var / count)
    else:
        std_error = 0.0
    return SimulationResult(
        mean_log_growth=mean,
        std_error=std_error,
        paths=paths,
        periods_per_path=periods,
        seed=seed,
    )
