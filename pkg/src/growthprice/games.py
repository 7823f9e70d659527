"""Discrete payoff games and their summary statistics.

A game is a finite list of (payout, weight) pairs: invest 1 dollar at some
price and receive `payout` gross dollars (stake included) with probability
`weight`. Games and their statistics are immutable after construction and
every operation here is a pure function, so values can be shared freely
across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, GameValidationError, SpecParseError

WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class Outcome:
    """One payoff point: gross dollars returned per dollar invested, and its mass."""

    payout: float
    weight: float


@dataclass(frozen=True)
class Game:
    """A finite payoff distribution.

    Outcomes are canonicalized at construction: zero-weight entries are
    dropped, duplicate payouts are merged by summing weights, and the list is
    sorted by payout. Canonical form makes equality, hashing and all derived
    sums deterministic.
    """

    outcomes: tuple[Outcome, ...]
    label: str | None = None

    def __post_init__(self) -> None:
        merged: dict[float, float] = {}
        for o in self.outcomes:
            merged[o.payout] = merged.get(o.payout, 0.0) + o.weight
        canon = tuple(
            Outcome(payout, weight)
            for payout, weight in sorted(merged.items())
            if weight != 0.0
        )
        object.__setattr__(self, "outcomes", canon)

    @classmethod
    def from_pairs(
        cls, pairs: Iterable[tuple[float, float]], label: str | None = None
    ) -> "Game":
        """Build a game from (payout, weight) pairs."""
        return cls(tuple(Outcome(float(a), float(p)) for a, p in pairs), label=label)


@dataclass(frozen=True)
class ValidationResult:
    """Verdict of checking a game against the standing assumptions."""

    ok: bool
    problems: tuple[str, ...]


def validate(game: Game) -> ValidationResult:
    """Check the standing assumptions and list every violation found.

    A valid game has finite nonnegative weights summing to 1 (within
    WEIGHT_SUM_TOL absolute), finite strictly positive payouts, and at least
    two distinct payouts carrying positive weight.
    """
    problems: list[str] = []
    for o in game.outcomes:
        if not (math.isfinite(o.weight) and o.weight >= 0.0):
            problems.append(
                f"weight {o.weight!r} for payout {o.payout!r} must be a"
                " nonnegative finite number"
            )
    total = math.fsum(o.weight for o in game.outcomes)
    if not abs(total - 1.0) <= WEIGHT_SUM_TOL:
        problems.append(
            f"weights sum to {total!r}, expected 1 within {WEIGHT_SUM_TOL}"
        )
    for o in game.outcomes:
        if not (math.isfinite(o.payout) and o.payout > 0.0):
            problems.append(f"payout {o.payout!r} must be finite and strictly positive")
    distinct = {o.payout for o in game.outcomes if o.weight > 0.0}
    if len(distinct) < 2:
        problems.append(
            "profit is constant: fewer than two distinct payouts carry positive weight"
        )
    return ValidationResult(ok=not problems, problems=tuple(problems))


@dataclass(frozen=True)
class GameStats:
    """Summary quantities of a valid game.

    h_xi is the expectation of 1/(payout - ess_inf); it is math.inf whenever
    probability mass sits exactly at the essential infimum, which is always
    the case for games ingested as explicit outcome lists. For every valid
    game the chain ess_inf <= lower_price_bound < fair_price < expectation
    holds.
    """

    expectation: float
    harmonic_integral: float
    ess_inf: float
    h_xi: float
    lower_price_bound: float
    fair_price: float
    log_moment: float


def compute_stats(game: Game, *, ess_inf: float | None = None) -> GameStats:
    """Compute the summary statistics of a valid game.

    `ess_inf` overrides the essential infimum for games born from quadrature
    nodes, where the true lower endpoint of the support may carry no mass.
    It must be positive and no larger than the smallest listed payout; when
    it equals the smallest payout (the default), mass sits at the infimum,
    h_xi is infinite and the lower price bound collapses to the infimum.

    Raises GameValidationError (carrying the verdict) for invalid games.
    """
    verdict = validate(game)
    if not verdict.ok:
        raise GameValidationError(verdict)
    min_payout = min(o.payout for o in game.outcomes)
    if ess_inf is None:
        xi = min_payout
    else:
        xi = float(ess_inf)
        if not xi <= min_payout:
            raise DomainError(
                f"ess_inf={xi!r} must not exceed the smallest payout {min_payout!r}"
            )
        if not xi > 0.0:
            raise DomainError(f"ess_inf={xi!r} must be strictly positive")
    expectation = math.fsum(o.weight * o.payout for o in game.outcomes)
    harmonic = math.fsum(o.weight / o.payout for o in game.outcomes)
    log_moment = math.fsum(o.weight * math.log(o.payout) for o in game.outcomes)
    if xi == min_payout:
        h_xi = math.inf
        inv_h_xi = 0.0
    else:
        h_xi = math.fsum(o.weight / (o.payout - xi) for o in game.outcomes)
        inv_h_xi = 1.0 / h_xi
    return GameStats(
        expectation=expectation,
        harmonic_integral=harmonic,
        ess_inf=xi,
        h_xi=h_xi,
        lower_price_bound=xi + inv_h_xi,
        fair_price=1.0 / harmonic,
        log_moment=log_moment,
    )


def translate(game: Game, n: float) -> Game:
    """Shift every payout by n, keeping weights and label.

    The shift must stay above minus the essential infimum so that shifted
    payouts remain strictly positive.
    """
    verdict = validate(game)
    if not verdict.ok:
        raise GameValidationError(verdict)
    xi = min(o.payout for o in game.outcomes)
    if not n > -xi:
        raise DomainError(f"shift n={n!r} must exceed -ess_inf = {-xi!r}")
    return Game(
        tuple(Outcome(o.payout + n, o.weight) for o in game.outcomes),
        label=game.label,
    )


def game_from_nodes(
    payouts: Sequence[float],
    weights: Sequence[float],
    *,
    label: str | None = None,
) -> Game:
    """Build a game from quadrature-style nodes and unnormalized weights.

    Typical use: `payouts` are quadrature nodes for a continuous payoff
    density and `weights` are density values times quadrature weights. The
    weights are rescaled to unit total, then canonicalized like any other
    game.
    """
    if len(payouts) != len(weights):
        raise DomainError(
            f"payouts and weights must have equal length, got {len(payouts)}"
            f" and {len(weights)}"
        )
    ws = [float(w) for w in weights]
    for w in ws:
        if not (math.isfinite(w) and w >= 0.0):
            raise DomainError(f"node weight {w!r} must be a nonnegative finite number")
    total = math.fsum(ws)
    if not total > 0.0:
        raise DomainError(f"total node weight must be positive, got {total!r}")
    return Game.from_pairs(
        ((float(a), w / total) for a, w in zip(payouts, ws)), label=label
    )


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def load_spec(text: str, *, normalize: bool = False) -> Game:
    """Parse a JSON game document, canonicalize and validate it.

    Schema::

        {"label": optional string,
         "outcomes": [{"payout": number, "prob": number}, ...]}

    With normalize=True the probabilities are rescaled to unit total before
    the weight-sum check; by default the document must already be normalized.

    Raises SpecParseError (with position) for malformed documents and
    GameValidationError (with the verdict) for invalid games.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}"
            f" (char {exc.pos}): {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise SpecParseError(
            f"top-level value must be an object, got {type(doc).__name__}"
        )
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise SpecParseError(f"label must be a string, got {label!r}")
    raw = doc.get("outcomes")
    if not isinstance(raw, list):
        raise SpecParseError('"outcomes" must be a list of {payout, prob} objects')
    pairs: list[tuple[float, float]] = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise SpecParseError(f"outcomes[{i}] must be an object, got {entry!r}")
        payout = entry.get("payout")
        prob = entry.get("prob")
        if not _is_number(payout):
            raise SpecParseError(f"outcomes[{i}].payout must be a number, got {payout!r}")
        if not _is_number(prob):
            raise SpecParseError(f"outcomes[{i}].prob must be a number, got {prob!r}")
        pairs.append((float(payout), float(prob)))
    if normalize:
        total = math.fsum(p for _, p in pairs)
        if math.isfinite(total) and total > 0.0:
            pairs = [(a, p / total) for a, p in pairs]
    game = Game.from_pairs(pairs, label=label)
    verdict = validate(game)
    if not verdict.ok:
        raise GameValidationError(verdict)
    return game


def save_spec(game: Game) -> str:
    """Serialize a game to the JSON document format accepted by load_spec.

    Loading the result reproduces the game exactly (floats round-trip).
    """
    doc: dict = {}
    if game.label is not None:
        doc["label"] = game.label
    doc["outcomes"] = [{"payout": o.payout, "prob": o.weight} for o in game.outcomes]
    return json.dumps(doc, indent=2)
