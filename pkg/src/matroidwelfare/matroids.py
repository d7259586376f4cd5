"""Matroid oracles: independence, rank, span and weighted rank.

Four concrete families cover every experiment in this repo: uniform,
partition, graphic (ground set = edges, independence = forests) and tiny
explicit matroids given by their circuits.  All values are immutable and
hashable; rank queries are memoized per spec (keyed by subset bitmask) up to
``MEMO_LIMIT`` elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidInputError

# Beyond this ground-set size rank results are recomputed instead of cached.
MEMO_LIMIT = 24


def _as_mask(spec: "MatroidSpec", S: Iterable[int]) -> int:
    mask = 0
    for e in S:
        if not 0 <= e < spec.m:
            raise InvalidInputError(
                f"element {e} outside ground set [0, {spec.m})")
        mask |= 1 << e
    return mask


def _mask_elements(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def validate_weights(w: Sequence[float], m: int) -> None:
    if len(w) != m:
        raise InvalidInputError(f"weight vector length {len(w)} != m={m}")
    for e, we in enumerate(w):
        if we < 0:
            raise InvalidInputError(f"negative weight {we} at element {e}")


@dataclass(frozen=True)
class MatroidSpec:
    """Base class; subclasses implement `_independent_mask` and may override
    rank/span with closed forms."""

    _rank_cache: dict = field(default_factory=dict, init=False,
                              compare=False, repr=False)

    @property
    def m(self) -> int:
        raise NotImplementedError

    def _independent_mask(self, mask: int) -> bool:
        raise NotImplementedError

    def _rank_mask(self, mask: int) -> int:
        """Greedy augmentation; valid for any matroid."""
        kept = 0
        for e in _mask_elements(mask):
            if self._independent_mask(kept | (1 << e)):
                kept |= 1 << e
        return kept.bit_count()

    # -- public oracle surface -------------------------------------------

    def is_independent(self, S: Iterable[int]) -> bool:
        return self._independent_mask(_as_mask(self, S))

    def rank(self, S: Iterable[int]) -> int:
        mask = _as_mask(self, S)
        if self.m <= MEMO_LIMIT:
            cached = self._rank_cache.get(mask)
            if cached is None:
                cached = self._rank_mask(mask)
                self._rank_cache[mask] = cached
            return cached
        return self._rank_mask(mask)

    def span(self, S: Iterable[int]) -> frozenset[int]:
        """Elements whose addition to S does not increase rank (S included)."""
        mask = _as_mask(self, S)
        r = self.rank(_mask_elements(mask))
        out = set(_mask_elements(mask))
        for e in range(self.m):
            if not mask & (1 << e):
                if self.rank(_mask_elements(mask | (1 << e))) == r:
                    out.add(e)
        return frozenset(out)

    def max_weight_subset(self, S: Iterable[int],
                          w: Sequence[float]) -> frozenset[int]:
        """Max-weight independent subset of S by the matroid greedy.

        Descends by weight, ties broken by ascending element index; keeps
        zero-weight elements while they preserve independence, so on the full
        ground set the result is a basis.
        """
        validate_weights(w, self.m)
        mask = _as_mask(self, S)
        order = sorted(_mask_elements(mask), key=lambda e: (-w[e], e))
        kept = 0
        for e in order:
            if self._independent_mask(kept | (1 << e)):
                kept |= 1 << e
        return frozenset(_mask_elements(kept))

    def weighted_rank(self, S: Iterable[int], w: Sequence[float]) -> float:
        return float(sum(w[e] for e in self.max_weight_subset(S, w)))

    def max_weight_basis(self, w: Sequence[float]) -> frozenset[int]:
        return self.max_weight_subset(range(self.m), w)

    def loops(self) -> frozenset[int]:
        """Elements that are dependent on their own."""
        return frozenset(e for e in range(self.m)
                         if not self._independent_mask(1 << e))


@dataclass(frozen=True)
class Uniform(MatroidSpec):
    """Independent iff |S| <= k."""

    size: int = 0
    k: int = 0

    def __post_init__(self):
        if self.size < 0 or self.k < 0:
            raise InvalidInputError("uniform matroid needs m >= 0, k >= 0")

    @property
    def m(self) -> int:
        return self.size

    def _independent_mask(self, mask: int) -> bool:
        return mask.bit_count() <= self.k

    def _rank_mask(self, mask: int) -> int:
        return min(mask.bit_count(), self.k)

    def span(self, S: Iterable[int]) -> frozenset[int]:
        mask = _as_mask(self, S)
        if mask.bit_count() >= self.k:
            return frozenset(range(self.m))
        return frozenset(_mask_elements(mask))


@dataclass(frozen=True)
class Partition(MatroidSpec):
    """Independent iff each block's intersection stays within its capacity."""

    size: int = 0
    blocks: tuple[tuple[int, ...], ...] = ()
    caps: tuple[int, ...] = ()

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        caps = tuple(int(c) for c in self.caps)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "caps", caps)
        if len(blocks) != len(caps):
            raise InvalidInputError("one capacity per block required")
        if any(c < 0 for c in caps):
            raise InvalidInputError("negative capacity")
        seen: set[int] = set()
        for b in blocks:
            for e in b:
                if not 0 <= e < self.size or e in seen:
                    raise InvalidInputError(
                        "blocks must disjointly cover [0, m)")
                seen.add(e)
        if len(seen) != self.size:
            raise InvalidInputError("blocks must disjointly cover [0, m)")
        block_of = [0] * self.size
        block_masks = []
        for idx, b in enumerate(blocks):
            bm = 0
            for e in b:
                block_of[e] = idx
                bm |= 1 << e
            block_masks.append(bm)
        object.__setattr__(self, "_block_of", tuple(block_of))
        object.__setattr__(self, "_block_masks", tuple(block_masks))

    @property
    def m(self) -> int:
        return self.size

    def block_index(self, e: int) -> int:
        return self._block_of[e]

    def _independent_mask(self, mask: int) -> bool:
        return all((mask & bm).bit_count() <= c
                   for bm, c in zip(self._block_masks, self.caps))

    def _rank_mask(self, mask: int) -> int:
        return sum(min((mask & bm).bit_count(), c)
                   for bm, c in zip(self._block_masks, self.caps))

    def span(self, S: Iterable[int]) -> frozenset[int]:
        mask = _as_mask(self, S)
        out: set[int] = set()
        for b, bm, c in zip(self.blocks, self._block_masks, self.caps):
            inter = mask & bm
            if inter.bit_count() >= c:
                out.update(b)
            else:
                out.update(_mask_elements(inter))
        return frozenset(out)


@dataclass(frozen=True)
class Graphic(MatroidSpec):
    """Ground set = edge list; independent iff the edges form a forest.

    Self-loop edges (u, u) are matroid loops, which is how restrictions
    delete elements without renumbering the ground set.
    """

    num_vertices: int = 0
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        for u, v in edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise InvalidInputError("edge endpoint outside vertex range")

    @property
    def m(self) -> int:
        return len(self.edges)

    def _forest_size(self, mask: int) -> tuple[int, bool]:
        """(number of cycle-free edges, whether any edge closed a cycle)."""
        parent = list(range(self.num_vertices))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        size = 0
        cycle = False
        for e in _mask_elements(mask):
            u, v = self.edges[e]
            ru, rv = find(u), find(v)
            if ru == rv:
                cycle = True
            else:
                parent[rv] = ru
                size += 1
        return size, cycle

    def _independent_mask(self, mask: int) -> bool:
        return not self._forest_size(mask)[1]

    def _rank_mask(self, mask: int) -> int:
        return self._forest_size(mask)[0]

    def span(self, S: Iterable[int]) -> frozenset[int]:
        mask = _as_mask(self, S)
        parent = list(range(self.num_vertices))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for e in _mask_elements(mask):
            u, v = self.edges[e]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[rv] = ru
        return frozenset(e for e, (u, v) in enumerate(self.edges)
                         if find(u) == find(v))


@dataclass(frozen=True)
class Explicit(MatroidSpec):
    """Tiny hand-built matroid given by its circuits (minimal dependent sets).

    Construction validates the circuit axioms: circuits are nonempty, none
    contains another, and weak elimination holds.  Cost grows with the number
    of circuit pairs, which is fine for the m <= 10 test matroids this family
    exists for.
    """

    size: int = 0
    circuits: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        circuits = tuple(tuple(sorted(set(c))) for c in self.circuits)
        object.__setattr__(self, "circuits", circuits)
        masks = []
        for c in circuits:
            if not c:
                raise InvalidInputError("empty circuit")
            mask = 0
            for e in c:
                if not 0 <= e < self.size:
                    raise InvalidInputError("circuit element outside [0, m)")
                mask |= 1 << e
            masks.append(mask)
        if len(set(masks)) != len(masks):
            raise InvalidInputError("duplicate circuit")
        for i, ci in enumerate(masks):
            for j, cj in enumerate(masks):
                if i != j and ci & cj == ci:
                    raise InvalidInputError(
                        f"circuit {circuits[i]} contained in {circuits[j]}")
        # weak circuit elimination
        for i, ci in enumerate(masks):
            for j in range(i + 1, len(masks)):
                cj = masks[j]
                common = ci & cj
                union = ci | cj
                for e in _mask_elements(common):
                    target = union & ~(1 << e)
                    if not any(ck & target == ck for ck in masks):
                        raise InvalidInputError(
                            "circuit axioms violated: no circuit inside "
                            f"union of {circuits[i]} and {circuits[j]} "
                            f"minus element {e}")
        object.__setattr__(self, "_circuit_masks", tuple(masks))

    @property
    def m(self) -> int:
        return self.size

    def _independent_mask(self, mask: int) -> bool:
        return all(mask & cm != cm for cm in self._circuit_masks)


def restrict(spec: MatroidSpec, allowed: Iterable[int]) -> MatroidSpec:
    """The matroid with every element outside `allowed` turned into a loop.

    Ground-set size and element numbering are preserved, so restricted
    arrivals drop into existing instances unchanged.
    """
    keep = frozenset(allowed)
    for e in keep:
        if not 0 <= e < spec.m:
            raise InvalidInputError(f"element {e} outside ground set")
    if len(keep) == spec.m:
        return spec
    dropped = sorted(set(range(spec.m)) - keep)
    if isinstance(spec, Uniform):
        blocks = [tuple(sorted(keep)), tuple(dropped)]
        caps = [spec.k, 0]
        if not keep:
            blocks, caps = [tuple(dropped)], [0]
        return Partition(size=spec.m, blocks=tuple(blocks), caps=tuple(caps))
    if isinstance(spec, Partition):
        blocks: list[tuple[int, ...]] = []
        caps: list[int] = []
        for b, c in zip(spec.blocks, spec.caps):
            kept_b = tuple(e for e in b if e in keep)
            if kept_b:
                blocks.append(kept_b)
                caps.append(c)
        blocks.append(tuple(dropped))
        caps.append(0)
        return Partition(size=spec.m, blocks=tuple(blocks), caps=tuple(caps))
    if isinstance(spec, Graphic):
        edges = tuple(e if i in keep else (0, 0)
                      for i, e in enumerate(spec.edges))
        return Graphic(num_vertices=max(spec.num_vertices, 1), edges=edges)
    if isinstance(spec, Explicit):
        circuits = [(e,) for e in dropped]
        circuits += [c for c in spec.circuits if set(c) <= keep]
        return Explicit(size=spec.m, circuits=tuple(circuits))
    raise InvalidInputError(f"unsupported spec type {type(spec).__name__}")


# -- JSON encoding ---------------------------------------------------------

def spec_to_dict(spec: MatroidSpec) -> dict:
    if isinstance(spec, Uniform):
        return {"kind": "uniform", "m": spec.m, "k": spec.k}
    if isinstance(spec, Partition):
        return {"kind": "partition", "m": spec.m,
                "blocks": [list(b) for b in spec.blocks],
                "caps": list(spec.caps)}
    if isinstance(spec, Graphic):
        return {"kind": "graphic", "vertices": spec.num_vertices,
                "edges": [list(e) for e in spec.edges]}
    if isinstance(spec, Explicit):
        return {"kind": "explicit", "m": spec.m,
                "circuits": [list(c) for c in spec.circuits]}
    raise InvalidInputError(f"unsupported spec type {type(spec).__name__}")


def spec_from_dict(d: dict) -> MatroidSpec:
    kind = d.get("kind")
    if kind == "uniform":
        return Uniform(size=d["m"], k=d["k"])
    if kind == "partition":
        return Partition(size=d["m"],
                         blocks=tuple(tuple(b) for b in d["blocks"]),
                         caps=tuple(d["caps"]))
    if kind == "graphic":
        return Graphic(num_vertices=d["vertices"],
                       edges=tuple(tuple(e) for e in d["edges"]))
    if kind == "explicit":
        return Explicit(size=d["m"],
                        circuits=tuple(tuple(c) for c in d["circuits"]))
    raise InvalidInputError(f"unknown matroid kind {kind!r}")
