"""Oracle and axiom tests for the matroid families."""

import pytest
from hypothesis import given, settings, strategies as st

from matroidwelfare import (Explicit, Graphic, InvalidInputError, Partition,
                            Uniform, restrict, spec_from_dict, spec_to_dict)
from matroidwelfare.matroids import MatroidSpec


def subsets(n):
    for mask in range(1 << n):
        yield [e for e in range(n) if mask >> e & 1]


# -- spec examples -----------------------------------------------------------

def test_uniform_independence():
    u = Uniform(5, 2)
    assert u.is_independent({0, 1})
    assert not u.is_independent({0, 1, 2})


def test_graphic_triangle_cycle():
    tri = Graphic(3, ((0, 1), (1, 2), (2, 0)))
    assert not tri.is_independent({0, 1, 2})
    assert tri.rank({0, 1, 2}) == 2


def test_triangle_rank_matches_forest_enumeration():
    # independent oracle: a set of edges is a forest iff networkx says so
    nx = pytest.importorskip("networkx")
    tri = Graphic(3, ((0, 1), (1, 2), (2, 0)))
    best = 0
    for S in subsets(3):
        g = nx.MultiGraph()
        g.add_nodes_from(range(3))
        for e in S:
            g.add_edge(*tri.edges[e])
        if nx.is_forest(g):
            best = max(best, len(S))
    assert best == 2
    assert tri.rank(range(3)) == best


def test_rank_of_empty_set():
    for spec in (Uniform(5, 2), Graphic(3, ((0, 1), (1, 2), (2, 0))),
                 Partition(4, ((0, 1), (2, 3)), (1, 1)),
                 Explicit(3, ((0, 1, 2),))):
        assert spec.rank([]) == 0


def test_uniform_rank_closed_form():
    assert Uniform(5, 2).rank({0, 1, 2}) == 2


def test_span_examples():
    assert Uniform(5, 2).span([]) == frozenset()
    assert Uniform(3, 1).span({0}) == frozenset({0, 1, 2})
    tri = Graphic(3, ((0, 1), (1, 2), (2, 0)))
    assert tri.span({0, 1}) == frozenset({0, 1, 2})


def test_span_monotone_idempotent():
    tri = Graphic(4, ((0, 1), (1, 2), (2, 0), (2, 3)))
    for S in subsets(4):
        sp = tri.span(S)
        assert set(S) <= sp
        assert tri.span(sp) == sp


def test_weighted_rank_examples():
    u = Uniform(4, 2)
    # exhaustive oracle over independent subsets of S = {0, 1, 2}
    w = (5, 1, 3, 9)
    best = max(sum(w[e] for e in S) for S in subsets(3)
               if u.is_independent(S))
    assert best == 8
    assert u.weighted_rank({0, 1, 2}, w) == best
    assert u.weighted_rank([], w) == 0


def test_weighted_rank_unit_weights_is_rank():
    p = Partition(6, ((0, 1, 2), (3, 4), (5,)), (2, 1, 1))
    for S in subsets(6):
        assert p.weighted_rank(S, [1.0] * 6) == p.rank(S)


def test_max_weight_basis_examples():
    assert Uniform(3, 1).max_weight_basis((2, 2, 1)) == frozenset({0})
    p = Partition(4, ((0, 1), (2, 3)), (1, 1))
    assert p.max_weight_basis((1, 4, 3, 3)) == frozenset({1, 2})
    basis = Uniform(4, 2).max_weight_basis((0, 0, 0, 0))
    assert len(basis) == 2  # still a basis at weight zero


def test_negative_weight_rejected():
    with pytest.raises(InvalidInputError):
        Uniform(3, 1).weighted_rank({0}, (1, -2, 0))


def test_out_of_range_element_rejected():
    with pytest.raises(InvalidInputError):
        Uniform(3, 1).rank({5})


def test_explicit_circuit_axiom_validation():
    with pytest.raises(InvalidInputError):
        Explicit(3, ((0, 1), (0, 1, 2)))  # containment
    with pytest.raises(InvalidInputError):
        Explicit(3, ((),))
    # U(3,1) as circuits: all pairs; weak elimination holds
    spec = Explicit(3, ((0, 1), (0, 2), (1, 2)))
    assert spec.rank({0, 1, 2}) == 1


def test_restrict_turns_outside_elements_into_loops():
    for spec in (Uniform(5, 2),
                 Partition(5, ((0, 1, 2), (3, 4)), (2, 1)),
                 Graphic(4, ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2))),
                 Explicit(4, ((0, 1, 2),))):
        allowed = {0, 2}
        sub = restrict(spec, allowed)
        assert sub.m == spec.m
        for S in subsets(spec.m):
            expect = spec.rank([e for e in S if e in allowed])
            assert sub.rank(S) == expect, (spec, S)


def test_json_round_trip():
    specs = [Uniform(5, 2),
             Partition(4, ((0, 1), (2, 3)), (1, 1)),
             Graphic(3, ((0, 1), (1, 2), (2, 0))),
             Explicit(3, ((0, 1, 2),))]
    for spec in specs:
        assert spec_from_dict(spec_to_dict(spec)) == spec
    assert spec_to_dict(Uniform(5, 2)) == {"kind": "uniform", "m": 5, "k": 2}


# -- property tests ----------------------------------------------------------

@st.composite
def small_specs(draw):
    family = draw(st.sampled_from(["uniform", "partition", "graphic",
                                   "explicit"]))
    if family == "uniform":
        m = draw(st.integers(1, 10))
        return Uniform(m, draw(st.integers(0, m)))
    if family == "partition":
        m = draw(st.integers(1, 10))
        cuts = sorted(draw(st.sets(st.integers(1, m - 1), max_size=3))) \
            if m > 1 else []
        bounds = [0] + cuts + [m]
        blocks = tuple(tuple(range(a, b))
                       for a, b in zip(bounds, bounds[1:]) if b > a)
        caps = tuple(draw(st.integers(0, len(b))) for b in blocks)
        return Partition(m, blocks, caps)
    if family == "graphic":
        v = draw(st.integers(2, 5))
        edge = st.tuples(st.integers(0, v - 1), st.integers(0, v - 1))
        edges = tuple(draw(st.lists(edge, min_size=1, max_size=8)))
        return Graphic(v, edges)
    circuits = [(0, 1, 2)] if draw(st.booleans()) else [(0, 1), (0, 2), (1, 2)]
    return Explicit(draw(st.integers(3, 8)), tuple(circuits))


@settings(max_examples=200, deadline=None)
@given(spec=small_specs(), data=st.data())
def test_hereditary_property(spec, data):
    S = data.draw(st.sets(st.integers(0, spec.m - 1)))
    if spec.is_independent(S):
        for e in S:
            assert spec.is_independent(S - {e})


@settings(max_examples=200, deadline=None)
@given(spec=small_specs(), data=st.data())
def test_exchange_property(spec, data):
    A = data.draw(st.sets(st.integers(0, spec.m - 1)))
    B = data.draw(st.sets(st.integers(0, spec.m - 1)))
    A = spec.max_weight_subset(A, [1.0] * spec.m)
    B = spec.max_weight_subset(B, [1.0] * spec.m)
    if len(A) > len(B):
        assert any(spec.is_independent(B | {a}) for a in A - B)


@settings(max_examples=150, deadline=None)
@given(spec=small_specs(), data=st.data())
def test_rank_submodular_and_monotone(spec, data):
    A = data.draw(st.sets(st.integers(0, spec.m - 1)))
    B = data.draw(st.sets(st.integers(0, spec.m - 1)))
    ra, rb = spec.rank(A), spec.rank(B)
    assert ra + rb >= spec.rank(A | B) + spec.rank(A & B)
    assert spec.rank(A | B) >= max(ra, rb)


@settings(max_examples=150, deadline=None)
@given(spec=small_specs(), data=st.data())
def test_closed_form_rank_matches_augmentation(spec, data):
    S = data.draw(st.sets(st.integers(0, spec.m - 1)))
    mask = sum(1 << e for e in S)
    assert spec.rank(S) == MatroidSpec._rank_mask(spec, mask)


@settings(max_examples=100, deadline=None)
@given(spec=small_specs(), data=st.data())
def test_greedy_weighted_rank_is_exhaustive_max(spec, data):
    if spec.m > 10:
        return
    S = data.draw(st.sets(st.integers(0, spec.m - 1)))
    w = [data.draw(st.integers(0, 9)) for _ in range(spec.m)]
    best = 0
    mask = sum(1 << e for e in S)
    sub = mask
    while True:
        elems = [e for e in range(spec.m) if sub >> e & 1]
        if spec.is_independent(elems):
            best = max(best, sum(w[e] for e in elems))
        if sub == 0:
            break
        sub = (sub - 1) & mask
    assert spec.weighted_rank(S, w) == best
