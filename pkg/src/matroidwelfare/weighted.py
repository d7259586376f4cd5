"""Reduction from weighted rank arrivals to unweighted ones.

Positive singleton values are split into power-of-two buckets above the
smallest one; a guessed bucket keeps only its elements (everything else
becomes a loop of the arriving matroid) and the unweighted pipeline runs on
the result.  Scaling the unweighted profit by the bucket floor under-counts
the true weighted profit, never over-counts it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateInstanceError, InvalidInputError
from .fractional import Arrival, Instance, UnknownN, sample_exponent
from .matroids import restrict
from .rng import derive_rng, derive_seed
from .rounding import CoupledTrace, full_pipeline


@dataclass(frozen=True)
class WeightStats:
    f_min: float          # smallest positive singleton value
    f_max: float          # largest singleton value
    f_ratio: float        # 2 * f_max / f_min
    num_buckets: int      # ceil(log2 f_ratio) + 1


def _singleton_values(arrival: Arrival):
    """(element, f_i({e})) pairs with positive value; loops contribute 0."""
    w = arrival.unit_weights()
    for e in range(arrival.matroid.m):
        if w[e] > 0 and arrival.matroid.is_independent({e}):
            yield e, w[e]


def weight_stats(instance: Instance) -> WeightStats:
    values = [v for a in instance.arrivals for _, v in _singleton_values(a)]
    if not values:
        raise DegenerateInstanceError(
            "no arrival has a positive singleton value")
    f_min, f_max = min(values), max(values)
    f_ratio = 2.0 * f_max / f_min
    return WeightStats(f_min=f_min, f_max=f_max, f_ratio=f_ratio,
                       num_buckets=math.ceil(math.log2(f_ratio)) + 1)


def bucket_index(value: float, f_min: float) -> int:
    """j with 2^j * f_min <= value < 2^(j+1) * f_min, robust at boundaries."""
    if value <= 0 or f_min <= 0:
        raise InvalidInputError("bucket index needs positive values")
    j = max(0, math.floor(math.log2(value / f_min)))
    while (1 << (j + 1)) * f_min <= value:
        j += 1
    while j > 0 and (1 << j) * f_min > value:
        j -= 1
    return j


def _bucket_arrival(arrival: Arrival, j: int, f_min: float) -> Arrival:
    lo = (1 << j) * f_min
    hi = (1 << (j + 1)) * f_min
    w = arrival.unit_weights()
    allowed = {e for e in range(arrival.matroid.m) if lo <= w[e] < hi}
    return Arrival(matroid=restrict(arrival.matroid, allowed), weights=None)


def bucketize(instance: Instance, j: int, f_min: float | None = None) -> Instance:
    """The unweighted instance whose arrivals keep only bucket-j elements."""
    stats = weight_stats(instance)
    if not 0 <= j < stats.num_buckets:
        raise InvalidInputError(
            f"bucket {j} outside [0, {stats.num_buckets})")
    f_min = stats.f_min if f_min is None else f_min
    return Instance(constraint=instance.constraint,
                    arrivals=tuple(_bucket_arrival(a, j, f_min)
                                   for a in instance.arrivals))


def verify_bucket_bound(instance: Instance, S) -> bool:
    """f_i(S) <= 2 * sum_j 2^j * f_min * f_ij(S) for every arrival i."""
    stats = weight_stats(instance)
    S = frozenset(S)
    for arrival in instance.arrivals:
        lhs = arrival.matroid.weighted_rank(S, arrival.unit_weights())
        rhs = 0.0
        for j in range(stats.num_buckets):
            restricted = _bucket_arrival(arrival, j, stats.f_min)
            rhs += (1 << j) * stats.f_min * restricted.matroid.rank(S)
        if lhs > 2.0 * rhs + 1e-9:
            return False
    return True


@dataclass
class WeightedRunResult:
    trace: CoupledTrace
    bucket: int
    f_min_used: float
    scale: float                 # 2^bucket * f_min_used
    unweighted_profit: float
    scaled_profit: float         # scale * unweighted profit, a lower bound
    exact_weighted_profit: float  # sum_i f_i(F_i) with the true weights
    f_min_drifted: bool = False


def _exact_weighted_profit(instance: Instance, trace: CoupledTrace) -> float:
    total = 0.0
    for arrival, f_i in zip(instance.arrivals, trace.f_rounds):
        total += arrival.matroid.weighted_rank(f_i, arrival.unit_weights())
    return total


def run_weighted(instance: Instance, scheme, ratio_known: bool,
                 master_seed: int,
                 force_bucket: int | None = None,
                 order_policy: str = "asc",
                 order_seed: int | None = None) -> WeightedRunResult:
    """Guess a weight bucket, run the unweighted pipeline on it, and report
    the scaled profit alongside the exact weighted profit of the same run.

    ratio_known: the bucket is uniform over the ones the full instance
    actually spans.  Otherwise the bucket exponent comes from the heavy-tail
    guess (mapped down by one so the bottom bucket is reachable) and bucket
    membership of each arrival uses the running minimum singleton value seen
    so far; the report flags runs where that minimum drifted.

    force_bucket is a test hook that bypasses the guess.
    """
    stats = weight_stats(instance)   # validates non-degeneracy in both modes
    bucket_rng = derive_rng(master_seed, "bucket")
    drifted = False
    if ratio_known:
        j = force_bucket if force_bucket is not None \
            else bucket_rng.randrange(stats.num_buckets)
        f_min_used = stats.f_min
        arrivals = tuple(_bucket_arrival(a, j, stats.f_min)
                         for a in instance.arrivals)
    else:
        j = force_bucket if force_bucket is not None \
            else sample_exponent(UnknownN(), bucket_rng) - 1
        running_min: float | None = None
        arrivals = []
        for arrival in instance.arrivals:
            values = [v for _, v in _singleton_values(arrival)]
            if values:
                new_min = min(values)
                if running_min is None:
                    running_min = new_min
                elif new_min < running_min:
                    running_min = new_min
                    drifted = True
            if running_min is None:
                # no positive singleton seen yet: bucket membership is
                # undefined, so this arrival contributes nothing
                arrivals.append(Arrival(matroid=restrict(arrival.matroid, ()),
                                        weights=None))
            else:
                arrivals.append(_bucket_arrival(arrival, j, running_min))
        arrivals = tuple(arrivals)
        f_min_used = running_min if running_min is not None else stats.f_min
    unweighted = Instance(constraint=instance.constraint, arrivals=arrivals)
    trace = full_pipeline(unweighted, scheme,
                          derive_seed(master_seed, "pipeline", j),
                          order_policy=order_policy, order_seed=order_seed)
    scale = (1 << j) * f_min_used
    return WeightedRunResult(
        trace=trace, bucket=j, f_min_used=f_min_used, scale=scale,
        unweighted_profit=trace.total_profit,
        scaled_profit=scale * trace.total_profit,
        exact_weighted_profit=_exact_weighted_profit(instance, trace),
        f_min_drifted=drifted)
