"""Randomized rounding coupled to the fractional algorithm.

Every fractional update (e, dx) triggers one coin with probability dx/4; the
element joins F only when the coin lands and F + e stays independent in the
constraint matroid.  Coins are drawn in trace order even when independence
already fails, so the random stream stays aligned across variant runs of the
same trace.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidInputError
from .fractional import (AlgGState, Instance, fractional_profit, run_algg,
                         sample_alpha)
from .rng import derive_rng


@dataclass
class CoinRecord:
    round_index: int
    element: int
    dx: float
    probability: float
    outcome: bool
    accepted: bool


@dataclass
class CoupledTrace:
    alpha: int
    f_rounds: list[frozenset[int]] = field(default_factory=list)
    coin_log: list[CoinRecord] = field(default_factory=list)
    profits: list[int] = field(default_factory=list)
    total_profit: float = 0.0
    fractional_total: float = 0.0

    @property
    def final_set(self) -> frozenset[int]:
        return self.f_rounds[-1] if self.f_rounds else frozenset()


def run_coupled(instance: Instance, alpha: int, rng, *,
                fractional: AlgGState | None = None,
                order_policy: str = "asc",
                order_rng=None) -> CoupledTrace:
    """Run (or replay) the fractional algorithm and round it online.

    `fractional` may carry a precomputed state for this (instance, alpha):
    the fractional run is deterministic, so replaying its trace is exactly
    the interleaved execution.
    """
    if not instance.is_unweighted:
        raise InvalidInputError(
            "run_coupled takes unweighted instances; use the weighted module")
    state = fractional if fractional is not None \
        else run_algg(instance, alpha, order_policy=order_policy,
                      order_rng=order_rng)
    if state.alpha != alpha or state.m != instance.m:
        raise InvalidInputError("fractional state does not match the call")
    constraint = instance.constraint
    trace = CoupledTrace(alpha=alpha, fractional_total=fractional_profit(state))
    by_round: dict[int, list] = {}
    for rec in state.trace:
        by_round.setdefault(rec.round_index, []).append(rec)
    current: set[int] = set()
    for i, arrival in enumerate(instance.arrivals, start=1):
        for rec in by_round.get(i, ()):
            p = rec.dx / 4.0
            outcome = rng.random() < p
            ok = rec.element in current or \
                constraint.is_independent(current | {rec.element})
            accepted = outcome and ok
            if accepted:
                current.add(rec.element)
            trace.coin_log.append(CoinRecord(i, rec.element, rec.dx, p,
                                             outcome, accepted))
        trace.f_rounds.append(frozenset(current))
        trace.profits.append(arrival.matroid.rank(current))
    trace.total_profit = float(sum(trace.profits))
    return trace


def integral_profit(instance: Instance, trace: CoupledTrace) -> float:
    """Recompute sum_i f_i(F_i) from the per-round sets (unit weights)."""
    total = 0.0
    for arrival, f_i in zip(instance.arrivals, trace.f_rounds):
        total += arrival.matroid.weighted_rank(f_i, arrival.unit_weights())
    return total


def full_pipeline(instance: Instance, scheme, master_seed: int, *,
                  fractional_cache: dict | None = None,
                  order_policy: str = "asc",
                  order_seed: int | None = None) -> CoupledTrace:
    """Guess alpha, then run the coupled rounding.

    The guess and the rounding coins come from independent streams derived
    from (master_seed, tag), so neither consumes the other's draws.  An
    optional per-alpha cache of fractional states cuts repeated trials on a
    fixed instance down to coin replays.

    Shuffled element order draws from (order_seed or master_seed, alpha);
    callers sharing a fractional cache across master seeds must pass one
    order_seed so the cached states match the orders replayed.
    """
    alpha = sample_alpha(scheme, derive_rng(master_seed, "alpha"))

    def order_rng():
        return derive_rng(order_seed if order_seed is not None
                          else master_seed, "order", alpha)

    state = None
    if fractional_cache is not None:
        state = fractional_cache.get(alpha)
        if state is None:
            state = run_algg(instance, alpha, order_policy=order_policy,
                             order_rng=order_rng())
            fractional_cache[alpha] = state
    return run_coupled(instance, alpha,
                       derive_rng(master_seed, "rounding", alpha),
                       fractional=state, order_policy=order_policy,
                       order_rng=order_rng())


def trace_to_dict(trace: CoupledTrace) -> dict:
    """JSON-friendly export with per-round F as sorted element arrays."""
    return {
        "alpha": trace.alpha,
        "f_rounds": [sorted(f) for f in trace.f_rounds],
        "profits": trace.profits,
        "total_profit": trace.total_profit,
        "fractional_total": trace.fractional_total,
        "coins": [{"round": c.round_index, "element": c.element,
                   "dx": c.dx, "p": c.probability,
                   "outcome": c.outcome, "accepted": c.accepted}
                  for c in trace.coin_log],
    }
