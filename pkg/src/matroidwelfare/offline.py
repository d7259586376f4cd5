"""Ground-truth oracles: brute-force OPT, the greedy baseline, feasibility
checkers for the two linear programs, and the constructive per-guess
decomposition of an optimal integral solution.

Nothing here is part of the online path; these are the references the
online algorithm is measured against, so they are written for obviousness
over speed and hard-capped at BRUTE_FORCE_LIMIT elements where exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from . import polytope
from .errors import CapabilityError, InvalidInputError
from .fractional import Instance
from .matroids import MatroidSpec
from .polytope import EPS

BRUTE_FORCE_LIMIT = 16


@dataclass
class OfflineSolution:
    chosen: frozenset[int]
    value: float
    witnesses: list[frozenset[int]]


@dataclass
class Violation:
    constraint: str           # one of the CLASS_* labels below
    amount: float
    arrival: int | None = None       # 1-based round, when applicable
    element: int | None = None
    witness: frozenset[int] | None = None


CLASS_NONNEG = "nonneg"
CLASS_X_IN_M = "x_in_constraint_polytope"
CLASS_Z_IN_N = "z_in_arrival_polytope"
CLASS_Z_LE_X = "z_le_x"
CLASS_COVER_UPPER = "z_sum_le_alpha_x"
CLASS_COVER_LOWER = "z_sum_ge_half_alpha_x"


def independent_sets(spec: MatroidSpec) -> Iterator[frozenset[int]]:
    """All independent sets, by pruned DFS (children of dependent sets are
    never visited, which is sound by the hereditary property)."""
    if spec.m > BRUTE_FORCE_LIMIT:
        raise CapabilityError(
            f"independent-set enumeration limited to m <= {BRUTE_FORCE_LIMIT}"
            f" (got m={spec.m})")
    current: list[int] = []

    def rec(start: int):
        yield frozenset(current)
        for e in range(start, spec.m):
            current.append(e)
            if spec.is_independent(current):
                yield from rec(e + 1)
            current.pop()

    yield from rec(0)


def _round_value(arrival, S) -> float:
    if arrival.weights is None:
        return float(arrival.matroid.rank(S))
    return arrival.matroid.weighted_rank(S, arrival.weights)


def brute_force_opt(instance: Instance) -> OfflineSolution:
    """Exhaustive offline optimum; ties go to the lexicographically smallest
    chosen set."""
    best_key: tuple | None = None
    best: frozenset[int] = frozenset()
    best_value = 0.0
    for cand in independent_sets(instance.constraint):
        value = sum(_round_value(a, cand) for a in instance.arrivals)
        key = (-value, tuple(sorted(cand)))
        if best_key is None or key < best_key:
            best_key, best, best_value = key, cand, value
    witnesses = [a.matroid.max_weight_subset(best, a.unit_weights())
                 for a in instance.arrivals]
    return OfflineSolution(chosen=best, value=best_value, witnesses=witnesses)


def greedy_opt(instance: Instance) -> OfflineSolution:
    """Marginal-gain greedy under the constraint matroid; the classical 1/2
    approximation for this objective.  Scales past the brute-force cap."""
    chosen: set[int] = set()
    value = 0.0
    while True:
        best_gain, best_e = 0.0, None
        for e in range(instance.m):
            if e in chosen:
                continue
            if not instance.constraint.is_independent(chosen | {e}):
                continue
            gain = sum(_round_value(a, chosen | {e})
                       for a in instance.arrivals) - value
            if gain > best_gain:
                best_gain, best_e = gain, e
        if best_e is None:
            break
        chosen.add(best_e)
        value += best_gain
    final = frozenset(chosen)
    witnesses = [a.matroid.max_weight_subset(final, a.unit_weights())
                 for a in instance.arrivals]
    return OfflineSolution(chosen=final, value=value, witnesses=witnesses)


def _z_rounds(instance: Instance,
              z: Mapping[int, Mapping[int, float]]) -> list[dict[int, float]]:
    """Dense-by-round view of the sparse z; round indices are 1..n."""
    rounds = []
    for i in range(1, instance.n + 1):
        rounds.append(dict(z.get(i, {})))
    for i in z:
        if not 1 <= i <= instance.n:
            raise InvalidInputError(f"z has round {i} outside 1..{instance.n}")
    return rounds


def check_lp1(instance: Instance, x: Sequence[float],
              z: Mapping[int, Mapping[int, float]]) -> list[Violation]:
    """All violated constraints of the natural LP: x in P(M), z_i in P(N_i),
    z <= x, nonnegativity."""
    out: list[Violation] = []
    for e, v in enumerate(x):
        if v < -EPS:
            out.append(Violation(CLASS_NONNEG, -v, element=e))
    rounds = _z_rounds(instance, z)
    for i, zi in enumerate(rounds, start=1):
        for e, v in zi.items():
            if v < -EPS:
                out.append(Violation(CLASS_NONNEG, -v, arrival=i, element=e))
    worst = polytope.membership_violation(instance.constraint, x)
    if worst is not None:
        out.append(Violation(CLASS_X_IN_M, worst[1], witness=worst[0]))
    for i, (arrival, zi) in enumerate(zip(instance.arrivals, rounds), start=1):
        dense = [0.0] * instance.m
        for e, v in zi.items():
            dense[e] = v
        worst = polytope.membership_violation(arrival.matroid, dense)
        if worst is not None:
            out.append(Violation(CLASS_Z_IN_N, worst[1], arrival=i,
                                 witness=worst[0]))
        for e, v in zi.items():
            if v > x[e] + EPS:
                out.append(Violation(CLASS_Z_LE_X, v - x[e], arrival=i,
                                     element=e))
    return out


def check_lp2(instance: Instance, alpha: int, x: Sequence[float],
              z: Mapping[int, Mapping[int, float]]) -> list[Violation]:
    """LP1 checks plus the per-element coverage band
    alpha*x_e/2 <= sum_i z_{i,e} <= alpha*x_e."""
    out = check_lp1(instance, x, z)
    totals = [0.0] * instance.m
    for zi in _z_rounds(instance, z):
        for e, v in zi.items():
            totals[e] += v
    for e in range(instance.m):
        upper = alpha * x[e]
        if totals[e] > upper + EPS:
            out.append(Violation(CLASS_COVER_UPPER, totals[e] - upper,
                                 element=e))
        if totals[e] < upper / 2.0 - EPS:
            out.append(Violation(CLASS_COVER_LOWER, upper / 2.0 - totals[e],
                                 element=e))
    return out


@dataclass
class Lp2Solution:
    alpha: int
    x: tuple[float, ...]
    z: dict[int, dict[int, float]] = field(default_factory=dict)
    objective: float = 0.0


def decompose_optimal(instance: Instance,
                      opt: OfflineSolution) -> list[Lp2Solution]:
    """Split an integral optimum into one feasible restricted-LP solution per
    guess alpha in {1, 2, ..., 2^ceil(log2 n)}.

    Element e of the optimum goes to the guess bracketing its coverage count
    c_e (alpha/2 < c_e <= alpha); its chosen indicator travels with it, so
    every per-guess solution satisfies the coverage band (elements covered
    zero times are assigned nowhere).  Objectives sum to the optimum exactly.
    """
    if not instance.is_unweighted:
        raise InvalidInputError("decomposition applies to unweighted "
                                "instances (the restricted LP is unweighted)")
    coverage = {e: 0 for e in opt.chosen}
    for witness in opt.witnesses:
        for e in witness:
            coverage[e] += 1
    exp_bound = (instance.n - 1).bit_length() if instance.n >= 1 else 0
    solutions = []
    for j in range(exp_bound + 1):
        alpha = 1 << j
        bucket = {e for e, c in coverage.items() if alpha / 2 < c <= alpha}
        x = tuple(1.0 if e in bucket else 0.0 for e in range(instance.m))
        zsol: dict[int, dict[int, float]] = {}
        objective = 0.0
        for i, witness in enumerate(opt.witnesses, start=1):
            row = {e: 1.0 for e in witness if e in bucket}
            if row:
                zsol[i] = row
                objective += len(row)
        solutions.append(Lp2Solution(alpha=alpha, x=x, z=zsol,
                                     objective=objective))
    return solutions
