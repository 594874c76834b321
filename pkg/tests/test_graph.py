import pytest
from hypothesis import given

from strategies import gl2, points
from tetrafarey.eisenstein import INF, ONE, SIGMA, SIGMA_BAR, UNITS, EInt, ProjPoint, point, point_eq
from tetrafarey.graph import (
    STANDARD_TETRA,
    CoincidentPoints,
    NotAnEdge,
    det_length_sq,
    is_edge,
    is_face,
    is_fundamental_tetrahedron,
    reflect_apex,
    star,
    symmetric_farey_sum,
    tetrahedra_on_edge,
)
from tetrafarey.sampling import rand_tetra


def test_det_length_examples():
    assert det_length_sq(INF, point(EInt(7, -3))) == 1
    assert det_length_sq(point(2), point(SIGMA)) == 3
    assert det_length_sq(point(2), point(0)) == 4


def test_edge_examples():
    assert is_edge(INF, point(EInt(5, 2)))
    assert is_edge(point(0), point(SIGMA))
    assert not is_edge(point(0), point(2))
    with pytest.raises(CoincidentPoints):
        is_edge(point(1), ProjPoint(-ONE, -ONE))


def test_farey_sum_of_inf_and_zero_is_the_units():
    s = symmetric_farey_sum(INF, point(0))
    assert {p.key() for p in s} == {point(u).key() for u in UNITS}


def test_farey_sum_rejects_non_edges():
    with pytest.raises(NotAnEdge):
        symmetric_farey_sum(point(0), point(2))


@given(gl2())
def test_farey_sum_structure(A):
    u, v = A.apply(INF), A.apply(point(0))
    s = symmetric_farey_sum(u, v)
    assert len({p.key() for p in s}) == 6
    assert all(is_edge(u, w) and is_edge(v, w) for w in s)
    assert len(star(u, v)) == 6 and len(tetrahedra_on_edge(u, v)) == 6
    assert all(is_fundamental_tetrahedron(t) for t in tetrahedra_on_edge(u, v))


def test_face_examples():
    assert is_face((INF, point(0), point(1)))
    assert not is_face((INF, point(0), point(2)))


@given(gl2())
def test_face_invariance(A):
    f = (INF, point(0), point(1))
    assert is_face(tuple(A.apply(p) for p in f))
    g = (INF, point(0), point(2))
    assert not is_face(tuple(A.apply(p) for p in g))


def test_tetrahedron_examples():
    assert is_fundamental_tetrahedron(STANDARD_TETRA)
    assert not is_fundamental_tetrahedron((point(0), point(1), point(-1), INF))
    assert is_fundamental_tetrahedron((INF, point(0), point(1), point(SIGMA_BAR)))


def test_reflect_apex_examples():
    face = (INF, point(0), point(1))
    assert point_eq(reflect_apex(face, point(SIGMA)), point(SIGMA_BAR))
    assert point_eq(reflect_apex(face, point(SIGMA_BAR)), point(SIGMA))


@given(gl2())
def test_reflect_apex_equivariant_involution(A):
    face = [A.apply(p) for p in (INF, point(0), point(1))]
    apex = A.apply(point(SIGMA))
    r = reflect_apex(face, apex)
    assert point_eq(r, A.apply(point(SIGMA_BAR)))
    assert point_eq(reflect_apex(face, r), apex)


def test_random_tetrahedra_have_unit_edges():
    import random

    rng = random.Random(0)
    for _ in range(200):
        T, _ = rand_tetra(rng)
        vs = list(T)
        assert all(det_length_sq(vs[i], vs[j]) == 1 for i in range(4) for j in range(i + 1, 4))
        assert is_fundamental_tetrahedron(T)
