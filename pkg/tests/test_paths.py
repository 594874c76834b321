import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import angle_lists, sl2, units
from tetrafarey.catalogue import periodic_u
from tetrafarey.eisenstein import INF, ONE, SIGMA, SIGMA_BAR, UNITS, ZERO, EInt, ProjPoint, QSigma, det2, point, point_eq, sigma_pow
from tetrafarey.paths import (
    AngleSeq,
    Mode,
    NotConcyclic,
    PathError,
    PathRep,
    angle_norm_matches,
    angle_sequence,
    cf_eval,
    cross_ratio,
    cyclic_tsin_product,
    normalise_path,
    normalised_to_skew,
    path_from_angles,
    rescale,
    revisits_vertex,
    skew_normalise,
    skew_sign,
    skew_to_normalised,
    t_angle,
    t_angle_general,
    vanishing_subfractions,
    verify_concyclic_ptolemy,
)
from tetrafarey.sampling import rand_point

V0, V1 = ProjPoint(ONE, ZERO), ProjPoint(ZERO, ONE)


def test_normalise_worked_example():
    p = normalise_path([INF, point(0), point(1), point(SIGMA)], seed=V0)
    assert p.vertices[2] == ProjPoint(-ONE, -ONE)
    assert p.vertices[3] == ProjPoint(SIGMA_BAR, -SIGMA)
    assert [periodic_u(i) for i in range(4)] == list(p.vertices)


def test_two_vertex_path():
    assert normalise_path([INF, point(0)], seed=V0).vertices == (V0, V1)


def test_reseeding_scales_alternately():
    pts = [INF, point(0), point(1), point(SIGMA), INF]
    a = normalise_path(pts, seed=V0)
    b = normalise_path(pts, seed=V0.scale(SIGMA))
    for i, (x, y) in enumerate(zip(a.vertices, b.vertices)):
        assert y == x.scale(SIGMA if i % 2 == 0 else SIGMA_BAR)


def test_skew_example():
    p = skew_normalise([INF, point(0), point(1)], seed=V0)
    assert p.vertices == (V0, V1, ProjPoint(ONE, ONE))
    assert det2(p[0], p[1]) == ONE and det2(p[1], p[2]) == -ONE


def test_six_skew_normalisations():
    pts = [INF, point(0), point(1), point(SIGMA)]
    chains = {skew_normalise(pts, seed=V0.scale(u)).vertices for u in UNITS}
    assert len(chains) == 6


def test_skew_sign_pattern():
    assert [skew_sign(i) for i in range(8)] == [1, 1, -1, -1, 1, 1, -1, -1]


@given(angle_lists, sl2())
def test_skew_normalised_conversion(angles, A):
    u0, u1 = A.columns()
    p = path_from_angles(u0, u1, AngleSeq(tuple(angles), 1))
    n = skew_to_normalised(p)
    assert n.mode is Mode.NORMALISED
    assert all(det2(n[i], n[i + 1]) == ONE for i in n.indices[:-1])
    assert normalised_to_skew(n).vertices == p.vertices


def test_t_angle_examples():
    assert t_angle(V0, V1, ProjPoint(ONE, ONE), 1) == ONE
    assert t_angle(V0, V1, ProjPoint(ONE, SIGMA), 1) == SIGMA


def test_constant_angle_sequence():
    p = path_from_angles(V0, V1, AngleSeq((ONE,) * 6, 1))
    assert angle_sequence(p).values == (ONE,) * 6


@given(angle_lists, sl2())
def test_angles_round_trip_and_invariance(angles, A):
    seq = AngleSeq(tuple(angles), 1)
    p = path_from_angles(V0, V1, seq)
    assert angle_sequence(p).values == seq.values
    assert angle_sequence(p.mapped(A)).values == seq.values


@given(angle_lists, st.integers(0, 5))
def test_rescaling_rotates_angles(angles, k):
    p = path_from_angles(V0, V1, AngleSeq(tuple(angles), 1))
    q = rescale(p, k)
    a, b = angle_sequence(p), angle_sequence(q)
    for i in a.indices:
        e = 2 * k if (i + 1) % 2 == 0 else -2 * k
        assert b[i] == a[i] * sigma_pow(e)


@given(angle_lists)
def test_backward_extension(angles):
    p = path_from_angles(V0, V1, AngleSeq(tuple(angles), 1))
    n = len(angles)
    # rebuild from the last two vertices going backwards
    q = path_from_angles(p[n], p[n + 1], AngleSeq(tuple(angles), 1), seed_index=n)
    assert q.vertices == p.vertices


def test_zero_angles_alternate():
    p = path_from_angles(V0, V1, AngleSeq((ZERO,) * 4, 1))
    assert [v.key() for v in p.vertices] == [V0.key(), V1.key()] * 3
    assert revisits_vertex(p)


def test_angles_one_one():
    p = path_from_angles(V0, V1, AngleSeq((ONE, ONE), 1))
    assert point_eq(p.vertices[3], ProjPoint(ONE, EInt(2)))


def test_cf_examples():
    a = EInt(2, 3)
    r = cf_eval([a])
    assert point_eq(r.endpoint, ProjPoint(ONE, a)) and r.nested == QSigma.coerce(a)
    r = cf_eval([ONE, ONE])
    assert point_eq(r.endpoint, ProjPoint(ONE, EInt(2))) and r.nested == QSigma(2)
    assert r.endpoint_is_reciprocal()


@given(angle_lists)
def test_cf_reciprocal_relation(angles):
    assert cf_eval(angles).endpoint_is_reciprocal()


@given(st.lists(st.sampled_from([ZERO, *UNITS, EInt(2), EInt(1, 1)]), min_size=1, max_size=7))
def test_revisit_iff_vanishing_subfraction(angles):
    p = path_from_angles(V0, V1, AngleSeq(tuple(angles), 1))
    assert revisits_vertex(p) == bool(vanishing_subfractions(angles))


@given(angle_lists)
def test_angle_norms_are_det_lengths(angles):
    p = path_from_angles(V0, V1, AngleSeq(tuple(angles), 1))
    assert angle_norm_matches(p)


def test_t_angle_general_examples():
    assert t_angle_general(V0, V1, ProjPoint(ONE, ONE)) == QSigma(1)
    vals = [t_angle_general(point(0), point(1), INF), t_angle_general(point(1), INF, point(0)), t_angle_general(INF, point(0), point(1))]
    assert vals[0] * vals[1] * vals[2] == QSigma(-1)


def test_cyclic_product_is_minus_one():
    rng = random.Random(4)
    n = 0
    while n < 300:
        a, b, c = (rand_point(rng, 15) for _ in range(3))
        if point_eq(a, b) or point_eq(b, c) or point_eq(a, c):
            continue
        n += 1
        assert cyclic_tsin_product(a, b, c) == QSigma(-1)


def test_concyclic_ptolemy_example():
    vs = [point(0), point(1), point(2), INF]
    r = verify_concyclic_ptolemy(vs, point(SIGMA))
    assert r.passed and r.in_order
    assert r.lhs == pytest.approx(2 * 3 ** -0.25)
    assert r.rhs == pytest.approx(2 * 3 ** -0.25)


def test_concyclic_wrong_order():
    vs = [point(0), point(2), point(1), INF]
    with pytest.raises(NotConcyclic):
        verify_concyclic_ptolemy(vs, point(SIGMA))
    r = verify_concyclic_ptolemy(vs, point(SIGMA), check_order=False)
    assert not r.passed and r.residual > 0.1


def test_cross_ratio_detects_non_concyclic():
    assert not cross_ratio(point(0), point(1), point(SIGMA), point(2)).is_real()


@given(sl2())
def test_concyclic_invariance_under_real_maps(A):
    # any unimodular map sends the real line to a circle or line; in-order stays in-order
    vs = [A.apply(p) for p in (point(0), point(1), point(2), INF)]
    v0 = A.apply(point(SIGMA))
    r = verify_concyclic_ptolemy(vs, v0)
    assert r.passed


def test_bad_path_rejected():
    with pytest.raises(PathError):
        normalise_path([point(0), point(2)])
    with pytest.raises(PathError):
        PathRep((V0, ProjPoint(ONE, SIGMA)), Mode.NORMALISED, 0)
    with pytest.raises(PathError):
        PathRep((V0, ProjPoint(ONE, EInt(2))), Mode.PLAIN, 0)
