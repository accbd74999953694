import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import INTERVAL, SQUARE, TRIANGLE, built
from multiehrhart.errors import ChamberError, DimensionError, InvalidArgumentError, InvalidPolytopeError, SamplingError
from multiehrhart.polytope import (
    GlueEdge,
    HRep,
    chamber_samples,
    dilate,
    enumerate_vertices,
    facet,
    glued,
    glued_chamber_samples,
    glued_dilate,
    incidence,
    is_chamber_point,
    is_glued_chamber_point,
)
from multiehrhart.suite import lshape_document


def points(vs):
    return sorted(v.point for v in vs)


def test_dilate():
    P = HRep(SQUARE, (1, 1, 1, 1))
    inst = dilate(P, (2, 0, 1, 1))
    assert inst.t == (2, 0, 1, 1) and inst.A == P.A
    assert points(enumerate_vertices(P, (2, 0, 1, 1))) == [(0, -1), (0, 1), (2, -1), (2, 1)]
    assert points(enumerate_vertices(P, (3, 3, 3, 3))) == [(-3, -3), (-3, 3), (3, -3), (3, 3)]
    with pytest.raises(DimensionError):
        dilate(P, (1, 1, 1))


def test_vertices_examples():
    P = HRep(SQUARE, (1, 1, 1, 1))
    vs = enumerate_vertices(P, P.b)
    assert points(vs) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]
    assert all(len(v.tight) == 2 for v in vs)
    T = HRep(TRIANGLE, (0, 0, 1))
    assert points(enumerate_vertices(T, T.b)) == [(0, 0), (0, 1), (1, 0)]
    assert enumerate_vertices(P, (-2, 1, 1, 1)) == ()


def test_incidence_examples():
    P = HRep(SQUARE, (1, 1, 1, 1))
    # 0-based rows: {1,3},{1,4},{2,3},{2,4} in 1-based labels
    assert incidence(enumerate_vertices(P, P.b)) == ((0, 2), (0, 3), (1, 2), (1, 3))
    T = HRep(TRIANGLE, (0, 0, 1))
    assert incidence(enumerate_vertices(T, T.b)) == ((0, 1), (0, 2), (1, 2))
    assert incidence(()) == ()


def test_incidence_order_invariant():
    vs = list(enumerate_vertices(built("cube"), built("cube").b))
    shuffled = vs[:]
    random.Random(3).shuffle(shuffled)
    assert incidence(shuffled) == incidence(vs)


def test_chamber_examples():
    P = HRep(SQUARE, (1, 1, 1, 1))
    assert is_chamber_point(P, (2, 0, 1, 1))
    assert not is_chamber_point(P, (0, 0, 1, 1))
    assert not is_chamber_point(HRep(TRIANGLE, (0, 0, 1)), (0, 0, -1))
    # moving the hypotenuse past a corner changes the incidence
    assert not is_chamber_point(HRep([[1, 0], [0, 1], [-1, 0], [0, -1], [1, 1]], (1, 1, 1, 1, 1)), (1, 1, 1, 1, 3))


def test_construction_rejects_bad_systems():
    with pytest.raises(InvalidPolytopeError):
        HRep([[1, 0], [0, 1]], (1, 1))  # unbounded
    with pytest.raises(InvalidPolytopeError):
        HRep(SQUARE, (0, 0, 1, 1))  # flat
    with pytest.raises(InvalidPolytopeError):
        HRep(SQUARE + [[1, 1]], (1, 1, 1, 1, 5))  # redundant row
    with pytest.raises(InvalidPolytopeError):
        HRep(SQUARE, (-2, 1, 1, 1))  # empty


def test_facet_examples():
    P = HRep(SQUARE, (1, 1, 1, 1))
    F = facet(P, 0)
    assert points(F.vertices()) == [(1, -1), (1, 1)]
    assert F.boundary_rows == {2, 3}
    H = facet(HRep(TRIANGLE, (0, 0, 1)), 2)
    assert points(H.vertices()) == [(0, 1), (1, 0)]
    I = facet(HRep(INTERVAL, (1, 1)), 0)
    assert points(I.vertices()) == [(1,)]
    assert I.boundary_rows == frozenset()
    with pytest.raises(InvalidArgumentError):
        facet(P, 4)


def test_chamber_samples_contract():
    P = HRep(SQUARE, (1, 1, 1, 1))
    ts = chamber_samples(P, 3, 2, 0)
    assert len(set(ts)) == 3 and all(is_chamber_point(P, t) for t in ts)
    assert chamber_samples(P, 3, 2, 0) == ts
    assert chamber_samples(P, 0, 2, 0) == []
    I = HRep(INTERVAL, (1, 1))
    for seed in range(5):
        assert all(t[0] + t[1] > 0 for t in chamber_samples(I, 5, 4, seed))
    with pytest.raises(SamplingError):
        chamber_samples(I, 50, 1, 0, spread=0)


@pytest.mark.parametrize("name", ["square", "halfslope", "hexagon", "cube", "prism", "simplex3_r0"])
def test_vertices_are_exact(name):
    P = built(name)
    for t in chamber_samples(P, 10, 5, 7) + [P.b]:
        vs = enumerate_vertices(P, t)
        assert set(points(vs)) == oracles.vertices(P.A, t)
        for v in vs:
            slack = [sum(a * x for a, x in zip(row, v.point)) - ti for row, ti in zip(P.A, t)]
            assert all(s <= 0 for s in slack)
            assert v.tight == {i for i, s in enumerate(slack) if s == 0}
            assert len(v.tight) >= P.n


def test_base_and_classical_dilations_in_chamber(corpus_name):
    P = built(corpus_name)
    check = is_glued_chamber_point if hasattr(P, "pieces") else is_chamber_point
    for s in (1, 2, 3, 7):
        assert check(P, tuple(s * x for x in P.b))


_rows = st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=3, max_size=5)


@settings(max_examples=60, deadline=None)
@given(_rows, st.lists(st.integers(1, 4), min_size=5, max_size=5))
def test_random_systems_base_in_chamber(A, b):
    try:
        P = HRep(A, b[: len(A)])
    except InvalidPolytopeError:
        return
    assert is_chamber_point(P, P.b)
    assert is_chamber_point(P, tuple(3 * x for x in P.b))


# ------------------------------------------------------------------ glued

def lshape():
    return lshape_document().build()


def test_lshape_construction():
    G = lshape()
    assert G.n == 2 and G.m == 8
    assert G.split(G.b) == ((2, 0, 1, 0), (1, 0, 2, -1))


def test_lshape_scaled():
    G = lshape()
    t = tuple(2 * x for x in G.b)
    p1, p2 = glued_dilate(G, t)
    assert points(enumerate_vertices(G.pieces[0], p1.t)) == [(0, 0), (0, 2), (4, 0), (4, 2)]
    assert points(enumerate_vertices(G.pieces[1], p2.t)) == [(0, 2), (0, 4), (2, 2), (2, 4)]


def test_lshape_broken_glue():
    G = lshape()
    t = list(G.b)
    t[6] = 3  # lift P2 one unit off the top of P1
    t[7] = -2
    with pytest.raises(ChamberError):
        glued_dilate(G, t)
    with pytest.raises(DimensionError):
        glued_dilate(G, G.b[:-1])


def test_lshape_dependencies():
    assert lshape().dependent_coordinates() == {7: (2, Fraction(-1)), 5: (1, Fraction(1))}


def test_glued_shared_boundary_coincides():
    G = lshape()
    for t in glued_chamber_samples(G, 20, 6, 4, spread=2):
        assert is_glued_chamber_point(G, t)
        (p1, p2) = G.split(t)
        top = {v.point for v in enumerate_vertices(G.pieces[0], p1) if 2 in v.tight}
        floor = {v.point for v in enumerate_vertices(G.pieces[1], p2) if 3 in v.tight}
        # the shared segment's endpoints lie in both pieces
        shared = {p for p in top | floor
                  if all(sum(a * x for a, x in zip(r, p)) <= s for r, s in zip(G.pieces[0].A, p1))
                  and all(sum(a * x for a, x in zip(r, p)) <= s for r, s in zip(G.pieces[1].A, p2))}
        assert len(shared) == 2


def test_glue_requires_tree():
    sq = HRep(SQUARE, (1, 1, 1, 1))
    with pytest.raises(InvalidPolytopeError):
        glued([sq, sq], [])
    with pytest.raises(InvalidPolytopeError):
        glued([HRep(SQUARE, (2, 0, 1, 0)), HRep(SQUARE, (1, 0, 2, -1))], [GlueEdge(0, 1, 0, 1)])
