"""Seeded instance generators for the experiment harness.

Every generator is a pure function of (params, seed).  Constraint matroids
are always loop-free (the fractional algorithm requires it); arriving
matroids may contain loops.
"""

from __future__ import annotations

from .errors import InvalidInputError
from .fractional import Arrival, Instance
from .matroids import Graphic, Partition, Uniform
from .rng import derive_rng

KINDS = ("random-uniform", "random-partition", "random-graphic",
         "max-coverage")


def _random_partition_spec(m: int, rng, min_cap: int) -> Partition:
    elements = list(range(m))
    rng.shuffle(elements)
    num_blocks = rng.randint(1, max(1, m // 2))
    cuts = sorted(rng.sample(range(1, m), num_blocks - 1)) if num_blocks > 1 \
        else []
    blocks = []
    prev = 0
    for cut in cuts + [m]:
        blocks.append(tuple(sorted(elements[prev:cut])))
        prev = cut
    caps = tuple(rng.randint(min_cap, max(min_cap, len(b))) for b in blocks)
    return Partition(size=m, blocks=tuple(blocks), caps=caps)


def _random_graphic_spec(m: int, rng) -> Graphic:
    # enough vertices that forests are non-trivial, few enough for cycles
    v = max(2, (2 * m) // 3 + 1)
    edges = []
    for _ in range(m):
        u = rng.randrange(v)
        w = rng.randrange(v - 1)
        if w >= u:
            w += 1
        edges.append((u, w))
    return Graphic(num_vertices=v, edges=tuple(edges))


def _maybe_weights(m: int, rng, max_weight: int | None):
    if max_weight is None:
        return None
    return tuple(float(rng.randint(1, max_weight)) for _ in range(m))


def generate(kind: str, params: dict, seed: int) -> Instance:
    """Build an instance of the named kind; identical (kind, params, seed)
    always yields an identical instance."""
    params = dict(params or {})
    m = int(params.get("m", 8))
    n = int(params.get("n", 8))
    max_weight = params.get("max_weight")
    if max_weight is not None:
        max_weight = int(max_weight)
    if m < 2 or n < 0:
        raise InvalidInputError("need m >= 2 and n >= 0")
    rng = derive_rng(seed, "gen", kind, m, n)

    if kind == "random-uniform":
        k = int(params.get("k", 0)) or rng.randint(1, max(1, m // 2))
        constraint = Uniform(m, k)
        arrivals = tuple(
            Arrival(Uniform(m, rng.randint(1, m)),
                    _maybe_weights(m, rng, max_weight))
            for _ in range(n))
        return Instance(constraint, arrivals)

    if kind == "random-partition":
        constraint = _random_partition_spec(m, rng, min_cap=1)
        arrivals = tuple(
            Arrival(_random_partition_spec(m, rng, min_cap=0),
                    _maybe_weights(m, rng, max_weight))
            for _ in range(n))
        return Instance(constraint, arrivals)

    if kind == "random-graphic":
        constraint = _random_graphic_spec(m, rng)
        arrivals = tuple(
            Arrival(_random_graphic_spec(m, rng),
                    _maybe_weights(m, rng, max_weight))
            for _ in range(n))
        return Instance(constraint, arrivals)

    if kind == "max-coverage":
        # m sets, n arriving universe elements, pick at most k sets
        k = int(params.get("k", max(1, m // 3)))
        density = float(params.get("density", 0.4))
        constraint = Uniform(m, k)
        arrivals = []
        for _ in range(n):
            cover = tuple(sorted(s for s in range(m)
                                 if rng.random() < density))
            arrivals.append(Arrival(coverage_arrival_matroid(m, cover),
                                    _maybe_weights(m, rng, max_weight)))
        return Instance(constraint, tuple(arrivals))

    raise InvalidInputError(f"unknown generator kind {kind!r}; "
                            f"known kinds: {', '.join(KINDS)}")


def coverage_arrival_matroid(num_sets: int, covering_sets) -> Partition:
    """The arriving matroid of one universe element in the coverage setting:
    a single capacity-1 block holding the sets that cover it, capacity 0
    elsewhere, so its rank is 1 exactly when some chosen set covers it."""
    cover = tuple(sorted(covering_sets))
    rest = tuple(s for s in range(num_sets) if s not in set(cover))
    blocks, caps = [], []
    if cover:
        blocks.append(cover)
        caps.append(1)
    if rest:
        blocks.append(rest)
        caps.append(0)
    if not blocks:
        raise InvalidInputError("coverage arrival needs at least one set")
    return Partition(size=num_sets, blocks=tuple(blocks), caps=tuple(caps))
