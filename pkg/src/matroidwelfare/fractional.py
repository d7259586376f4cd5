"""The fractional online algorithm and its guess schemes.

State is a pair (x, z): x lives in the constraint matroid's polytope and only
ever grows; z_i is written once per round under a half-slack guard against
the arriving matroid.  Updates multiply x_e by exp(GROWTH_RATE * ln m / alpha)
and cap it at the polytope headroom; z_{i,e} is then set to x_e / 2.

All logarithms here and in the lemma-level constants are natural logs, pinned
by the named constants below so the test suite can assert against them.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import polytope
from .errors import InvalidInputError
from .matroids import MatroidSpec, validate_weights
from .polytope import EPS

# Exponent numerator in the multiplicative update exp(GROWTH_RATE * ln m / a).
GROWTH_RATE = 8.0
# Per-element total z mass is at least alpha/(Z_SUM_DIVISOR * ln m) times the
# growth of x beyond its floor.
Z_SUM_DIVISOR = 48.0
# For alpha >= GROWTH_RATE * ln m every relative update is at most
# RATIO_BOUND * ln m / alpha.
RATIO_BOUND = 24.0
# z updates require min slack in the arriving matroid above this threshold.
Z_GUARD = 0.5


def growth_factor(m: int, alpha: int) -> float:
    return math.exp(GROWTH_RATE * math.log(m) / alpha)


@dataclass(frozen=True)
class Arrival:
    matroid: MatroidSpec
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.weights is not None:
            w = tuple(float(v) for v in self.weights)
            object.__setattr__(self, "weights", w)
            validate_weights(w, self.matroid.m)

    @property
    def is_unit(self) -> bool:
        return self.weights is None or all(v == 1 for v in self.weights)

    def unit_weights(self) -> tuple[float, ...]:
        return self.weights if self.weights is not None \
            else (1.0,) * self.matroid.m


@dataclass(frozen=True)
class Instance:
    """A constraint matroid plus an ordered sequence of arrivals."""

    constraint: MatroidSpec
    arrivals: tuple[Arrival, ...]

    def __post_init__(self):
        object.__setattr__(self, "arrivals", tuple(self.arrivals))
        for a in self.arrivals:
            if a.matroid.m != self.constraint.m:
                raise InvalidInputError(
                    "all matroids must share the ground-set size")

    @property
    def m(self) -> int:
        return self.constraint.m

    @property
    def n(self) -> int:
        return len(self.arrivals)

    @property
    def is_unweighted(self) -> bool:
        return all(a.is_unit for a in self.arrivals)


@dataclass
class UpdateRecord:
    round_index: int
    element: int
    x_before: float
    x_after: float
    z_value: float

    @property
    def dx(self) -> float:
        return self.x_after - self.x_before


@dataclass
class AlgGState:
    """Evolving fractional solution; mutated in place by process_arrival."""

    alpha: int
    m: int
    x: list[float]
    z: dict[int, dict[int, float]] = field(default_factory=dict)
    round_index: int = 0
    trace: list[UpdateRecord] = field(default_factory=list)


def init_state(m: int, alpha: int) -> AlgGState:
    if m < 2:
        raise InvalidInputError("need m >= 2 (the 1/m^2 floor degenerates)")
    if alpha < 1:
        raise InvalidInputError("alpha must be a positive integer")
    return AlgGState(alpha=int(alpha), m=m, x=[1.0 / (m * m)] * m)


def _element_order(m: int, policy: str, rng) -> list[int]:
    if policy == "asc":
        return list(range(m))
    if policy == "desc":
        return list(range(m - 1, -1, -1))
    if policy == "shuffle":
        if rng is None:
            raise InvalidInputError("shuffle order needs an rng")
        order = list(range(m))
        rng.shuffle(order)
        return order
    raise InvalidInputError(f"unknown order policy {policy!r}")


def process_arrival(state: AlgGState, constraint: MatroidSpec,
                    arrival: MatroidSpec,
                    order: Sequence[int] | None = None) -> AlgGState:
    """Process one arriving matroid, updating x and writing this round's z.

    An element e is updated only while it avoids every tight set of the
    constraint (min slack > EPS) and the arriving matroid retains slack above
    1/2 at e (so z_i stays feasible after receiving x_e / 2).
    """
    if arrival.m != state.m or constraint.m != state.m:
        raise InvalidInputError("matroid ground-set size mismatch")
    state.round_index += 1
    i = state.round_index
    factor = growth_factor(state.m, state.alpha)
    z_round: dict[int, float] = {}
    z_vec = [0.0] * state.m
    for e in (order if order is not None else range(state.m)):
        if polytope.min_slack(constraint, state.x, e) <= EPS:
            continue
        if polytope.min_slack(arrival, z_vec, e) <= Z_GUARD + EPS:
            continue
        before = state.x[e]
        after = min(before * factor, polytope.headroom(constraint, state.x, e))
        state.x[e] = after
        z_round[e] = after / 2.0
        z_vec[e] = after / 2.0
        if after > before:
            state.trace.append(UpdateRecord(i, e, before, after, after / 2.0))
    if z_round:
        state.z[i] = z_round
    return state


def run_algg(instance: Instance, alpha: int, *, order_policy: str = "asc",
             order_rng=None) -> AlgGState:
    """Run the full fractional algorithm for a fixed guess alpha."""
    if not instance.is_unweighted:
        raise InvalidInputError(
            "run_algg takes unweighted instances; reduce weighted ones "
            "through the weighted module first")
    loops = instance.constraint.loops()
    if loops:
        raise InvalidInputError(
            f"constraint matroid has loops {sorted(loops)}; the 1/m^2 "
            "initialization is infeasible for them")
    state = init_state(instance.m, alpha)
    for arrival in instance.arrivals:
        order = _element_order(state.m, order_policy, order_rng)
        process_arrival(state, instance.constraint, arrival.matroid,
                        order=order)
    return state


def fractional_profit(state: AlgGState) -> float:
    return sum(v for per_round in state.z.values()
               for v in per_round.values())


def trace_to_jsonl(state: AlgGState) -> str:
    """One JSON record per update, in processing order."""
    lines = [json.dumps({"round": r.round_index, "element": r.element,
                         "x_before": r.x_before, "x_after": r.x_after,
                         "z": r.z_value})
             for r in state.trace]
    return "\n".join(lines)


# -- guess schemes -----------------------------------------------------------

@dataclass(frozen=True)
class KnownN:
    """Uniform over {1, 2, 4, ..., 2^ceil(log2 n)}."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError("need n >= 1")

    @property
    def exponent_bound(self) -> int:
        return (self.n - 1).bit_length()

    def support(self) -> list[int]:
        return [1 << i for i in range(self.exponent_bound + 1)]


@dataclass(frozen=True)
class UnknownN:
    """Heavy-tailed guess 2^i with prob 1/(c * i * ln(1+i)^(1+epsilon)).

    c normalizes the truncated support 1 <= i <= i_max; any residual mass
    from rounding goes to i = 1 so the distribution is proper.
    """

    epsilon: float = 1.0
    i_max: int = 64

    def __post_init__(self):
        if self.epsilon <= 0 or self.i_max < 1:
            raise InvalidInputError("need epsilon > 0 and i_max >= 1")


@lru_cache(maxsize=16)
def _unknown_cumulative(scheme: UnknownN) -> tuple[float, ...]:
    raw = [1.0 / (i * math.log(1 + i) ** (1.0 + scheme.epsilon))
           for i in range(1, scheme.i_max + 1)]
    c = sum(raw)
    probs = [v / c for v in raw]
    probs[0] += max(0.0, 1.0 - sum(probs))
    cum = []
    acc = 0.0
    for p in probs:
        acc += p
        cum.append(acc)
    cum[-1] = 1.0
    return tuple(cum)


def sample_exponent(scheme, rng) -> int:
    """The exponent i of the guessed power of two."""
    if isinstance(scheme, KnownN):
        return rng.randrange(scheme.exponent_bound + 1)
    if isinstance(scheme, UnknownN):
        u = rng.random()
        cum = _unknown_cumulative(scheme)
        for i, threshold in enumerate(cum, start=1):
            if u <= threshold:
                return i
        return scheme.i_max
    raise InvalidInputError(f"unknown guess scheme {scheme!r}")


def sample_alpha(scheme, rng) -> int:
    return 1 << sample_exponent(scheme, rng)
