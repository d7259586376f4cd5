"""Fractional points over the matroid polytope.

P(M) = {x >= 0 : x(S) <= r(S) for all S}.  Uniform and partition specs get
closed-form membership/slack at any ground-set size; graphic and explicit
specs fall back to exhaustive subset enumeration over numpy tables, capped at
``GENERIC_LIMIT`` elements.  All tightness comparisons use the single global
tolerance ``EPS``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import CapabilityError, InvalidInputError
from .matroids import Graphic, Explicit, MatroidSpec, Partition, Uniform

EPS = 1e-9
GENERIC_LIMIT = 16


def _closed_form(spec: MatroidSpec) -> bool:
    return isinstance(spec, (Uniform, Partition))


def _check_generic_size(spec: MatroidSpec) -> None:
    if spec.m > GENERIC_LIMIT:
        raise CapabilityError(
            f"{type(spec).__name__} spec has m={spec.m}: exhaustive subset "
            f"enumeration is limited to m <= {GENERIC_LIMIT}")


def _check_point(spec: MatroidSpec, x: Sequence[float]) -> None:
    if len(x) != spec.m:
        raise InvalidInputError(f"point length {len(x)} != m={spec.m}")


@lru_cache(maxsize=32)
def _bits_matrix(m: int) -> np.ndarray:
    """(2^m, m) 0/1 matrix; row `mask` holds the indicator of the subset."""
    ids = np.arange(1 << m, dtype=np.uint32)
    return ((ids[:, None] >> np.arange(m)) & 1).astype(np.float64)


@lru_cache(maxsize=256)
def _masks_with(m: int, e: int) -> np.ndarray:
    ids = np.arange(1 << m, dtype=np.uint32)
    return np.nonzero(ids & (1 << e))[0]


@lru_cache(maxsize=256)
def _rank_table(spec: MatroidSpec) -> np.ndarray:
    """Ranks of all 2^m subsets, indexed by bitmask."""
    _check_generic_size(spec)
    m = spec.m
    size = 1 << m
    if isinstance(spec, Explicit):
        indep = np.ones(size, dtype=bool)
        for cm in spec._circuit_masks:
            ids = np.arange(size, dtype=np.uint32)
            indep &= (ids & cm) != cm
        counts = _bits_matrix(m).sum(axis=1).astype(np.int16)
        ranks = np.where(indep, counts, np.int16(-1))
        for mask in range(1, size):
            if ranks[mask] < 0:
                best = 0
                rest = mask
                while rest:
                    low = rest & -rest
                    sub = ranks[mask ^ low]
                    if sub > best:
                        best = sub
                    rest ^= low
                ranks[mask] = best
        return ranks.astype(np.int16)
    ranks = np.empty(size, dtype=np.int16)
    for mask in range(size):
        ranks[mask] = spec._rank_mask(mask)
    return ranks


def _subset_sums(m: int, x: Sequence[float]) -> np.ndarray:
    return _bits_matrix(m) @ np.asarray(x, dtype=np.float64)


def in_polytope(spec: MatroidSpec, x: Sequence[float]) -> bool:
    """Exact membership test: x >= 0 and x(S) <= r(S) for all S (within EPS)."""
    _check_point(spec, x)
    if any(v < -EPS for v in x):
        return False
    if isinstance(spec, Uniform):
        cap = min(1, spec.k)
        return (all(v <= cap + EPS for v in x)
                and sum(x) <= spec.k + EPS)
    if isinstance(spec, Partition):
        for b, c in zip(spec.blocks, spec.caps):
            cap = min(1, c)
            if any(x[e] > cap + EPS for e in b):
                return False
            if sum(x[e] for e in b) > c + EPS:
                return False
        return True
    slack = _rank_table(spec) - _subset_sums(spec.m, x)
    return bool(slack.min() >= -EPS)


def headroom(spec: MatroidSpec, x: Sequence[float], e: int) -> float:
    """min over S containing e of r(S) - x(S \\ {e}): the value x_e may be
    raised to without leaving P(M).

    Closed forms assume x in P(M) (the algorithmic caller's precondition).
    """
    _check_point(spec, x)
    if not 0 <= e < spec.m:
        raise InvalidInputError(f"element {e} outside ground set")
    if isinstance(spec, Uniform):
        if spec.k == 0:
            return -sum(v for f, v in enumerate(x) if f != e and v > 0)
        return min(1.0, spec.k - sum(x) + x[e])
    if isinstance(spec, Partition):
        b = spec.block_index(e)
        block = spec.blocks[b]
        c = spec.caps[b]
        if c == 0:
            return -sum(x[f] for f in block if f != e and x[f] > 0)
        block_sum = sum(x[f] for f in block)
        return min(min(1, c), min(len(block), c) - block_sum + x[e])
    slack = _rank_table(spec) - _subset_sums(spec.m, x)
    sel = _masks_with(spec.m, e)
    return float(slack[sel].min()) + x[e]


def min_slack(spec: MatroidSpec, x: Sequence[float], e: int) -> float:
    """min over S containing e of r(S) - x(S); equals headroom - x_e exactly.

    A value <= EPS means e lies in a tight set.
    """
    return headroom(spec, x, e) - x[e]


def maximal_tight_set(spec: MatroidSpec, x: Sequence[float]) -> frozenset[int]:
    """Union of all tight sets (x(S) = r(S) within EPS); empty set if none.

    The empty set is trivially tight and is the returned value when no
    nonempty tight set exists.
    """
    _check_point(spec, x)
    if isinstance(spec, (Uniform, Partition)):
        out: set[int] = set()
        groups = ([(tuple(range(spec.m)), spec.k)] if isinstance(spec, Uniform)
                  else list(zip(spec.blocks, spec.caps)))
        for group, c in groups:
            total = sum(x[e] for e in group)
            if total >= min(len(group), c) - EPS:
                out.update(group)
            else:
                out.update(e for e in group if x[e] >= min(1, c) - EPS)
        return frozenset(out)
    slack = _rank_table(spec) - _subset_sums(spec.m, x)
    tight = np.nonzero(slack <= EPS)[0]
    union = int(np.bitwise_or.reduce(tight)) if len(tight) else 0
    return frozenset(i for i in range(spec.m) if union & (1 << i))


def membership_violation(spec: MatroidSpec, x: Sequence[float]):
    """Worst violated rank constraint, or None if x(S) <= r(S) holds for all S.

    Returns (witness elements, amount) with amount = x(S) - r(S) > EPS.
    Negative coordinates are the caller's concern; this only scans subset
    constraints.  Valid for arbitrary x.
    """
    _check_point(spec, x)
    worst: tuple[frozenset[int], float] | None = None
    if isinstance(spec, (Uniform, Partition)):
        groups = ([(tuple(range(spec.m)), spec.k)] if isinstance(spec, Uniform)
                  else list(zip(spec.blocks, spec.caps)))
        for group, c in groups:
            for e in group:
                amt = x[e] - min(1, c)
                if amt > EPS and (worst is None or amt > worst[1]):
                    worst = (frozenset([e]), amt)
            amt = sum(x[e] for e in group) - c
            if amt > EPS and (worst is None or amt > worst[1]):
                worst = (frozenset(group), amt)
        return worst
    excess = _subset_sums(spec.m, x) - _rank_table(spec)
    idx = int(np.argmax(excess))
    if excess[idx] > EPS:
        witness = frozenset(i for i in range(spec.m) if idx & (1 << i))
        worst = (witness, float(excess[idx]))
    return worst
