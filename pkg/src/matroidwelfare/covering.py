"""Covering a randomly sampled set by few independent sets.

A set drawn from a point in half the matroid polytope decomposes into a
logarithmic number of independent sets with high probability.  This module
implements the sampling, a first-fit cover (upper bound on the minimum
cover), the backwards last-element ordering built from Monte-Carlo toss
estimates, and the sequential rounds process whose union is distributed
exactly as independent sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import polytope
from .errors import EstimationFailureError, InvalidInputError, LoopError
from .matroids import MatroidSpec


@dataclass
class CoverResult:
    sampled: frozenset[int]
    parts: list[frozenset[int]]
    rounds: int


def sample_set(z: Sequence[float], rng) -> frozenset[int]:
    """Each element independently with probability z_e."""
    return frozenset(e for e, p in enumerate(z) if rng.random() < p)


def first_fit_cover(spec: MatroidSpec, D) -> CoverResult:
    """Scan D ascending, placing each element in the first part that stays
    independent; a new part opens when none accepts."""
    parts: list[set[int]] = []
    for e in sorted(D):
        for part in parts:
            if spec.is_independent(part | {e}):
                part.add(e)
                break
        else:
            if not spec.is_independent({e}):
                raise LoopError(f"element {e} is a loop and fits no part")
            parts.append({e})
    return CoverResult(sampled=frozenset(D),
                       parts=[frozenset(p) for p in parts],
                       rounds=len(parts))


def exact_toss_probability(spec: MatroidSpec, z: Sequence[float],
                           remaining, e: int) -> float:
    """Pr[e not in span(D \\ {e})] for D sampled from z over `remaining`.

    Brute-force enumeration over all 2^|remaining - e| outcomes; the oracle
    behind the Monte-Carlo estimates, usable up to ~16 remaining elements.
    """
    others = sorted(set(remaining) - {e})
    total = 0.0
    for mask in range(1 << len(others)):
        prob = 1.0
        subset = []
        for idx, f in enumerate(others):
            if mask & (1 << idx):
                prob *= z[f]
                subset.append(f)
            else:
                prob *= 1.0 - z[f]
        if prob == 0.0:
            continue
        if spec.rank(subset + [e]) > spec.rank(subset):
            total += prob
    return total


def _estimate_toss(spec: MatroidSpec, z: Sequence[float], others,
                   e: int, rng, samples: int) -> float:
    hits = 0
    for _ in range(samples):
        drawn = [f for f in others if rng.random() < z[f]]
        if spec.rank(drawn + [e]) > spec.rank(drawn):
            hits += 1
    return hits / samples


def last_element_order(spec: MatroidSpec, z: Sequence[float], rng,
                       samples: int = 2000) -> list[int]:
    """Build the ordering backwards: place last a remaining element whose
    estimated toss probability clears 1/2 - 2*sigma, then recurse.

    Requires z(S) <= r(S)/2 for all S (checked by scaling z by two) so such
    an element always exists among any base of the remaining elements.
    """
    if samples < 1:
        raise InvalidInputError("samples must be >= 1")
    doubled = [2.0 * v for v in z]
    if not polytope.in_polytope(spec, doubled):
        raise InvalidInputError("z must satisfy z(S) <= r(S)/2 for all S")
    remaining = list(range(spec.m))
    placed_reversed: list[int] = []
    while remaining:
        best_e, best_p = -1, -1.0
        for e in remaining:
            others = [f for f in remaining if f != e]
            p_hat = _estimate_toss(spec, z, others, e, rng, samples)
            if p_hat > best_p:
                best_e, best_p = e, p_hat
        sigma = math.sqrt(max(best_p * (1.0 - best_p), 0.0) / samples)
        if best_p < 0.5 - 2.0 * sigma:
            raise EstimationFailureError(
                f"no element reached the toss threshold: best element "
                f"{best_e} estimated at {best_p:.4f} "
                f"(samples={samples}); increase samples or check the "
                f"half-polytope precondition",
                best_element=best_e, best_estimate=best_p)
        placed_reversed.append(best_e)
        remaining.remove(best_e)
    return list(reversed(placed_reversed))


def sequential_rounds_cover(spec: MatroidSpec, z: Sequence[float], rng,
                            ordering: Sequence[int]) -> CoverResult:
    """The covering process: per iteration scan survivors in `ordering`,
    tossing each element's single coin once the current part accepts it.

    The union of the parts is distributed exactly as sample_set(z).  The
    iteration count is hard-capped: every pass removes the first orderable
    survivor, and passes that remove nothing (all-loop survivors) stop the
    process.
    """
    if len(z) != spec.m or sorted(ordering) != list(range(spec.m)):
        raise InvalidInputError("ordering must be a permutation of [0, m)")
    survivors = set(range(spec.m))
    parts: list[frozenset[int]] = []
    rounds = 0
    for _ in range(spec.m):
        if not survivors:
            break
        rounds += 1
        part: set[int] = set()
        removed = False
        for e in ordering:
            if e not in survivors:
                continue
            if spec.is_independent(part | {e}):
                if rng.random() < z[e]:
                    part.add(e)
                survivors.remove(e)
                removed = True
        if part:
            parts.append(frozenset(part))
        if not removed:
            rounds -= 1
            break
    sampled = frozenset(e for part in parts for e in part)
    return CoverResult(sampled=sampled, parts=parts, rounds=rounds)
