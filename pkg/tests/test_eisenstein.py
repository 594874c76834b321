import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import eints, gl2, nonzero_eints, points, sl2, units
from tetrafarey.eisenstein import (
    INF,
    ONE,
    SIGMA,
    SIGMA_BAR,
    UNITS,
    ZERO,
    EInt,
    ProjPoint,
    QSigma,
    UnimodularMatrix,
    det2,
    gcd,
    mat_inverse,
    matrix_to_infinity,
    mobius_apply,
    norm,
    point,
    point_eq,
    reduce,
    sector,
    sigma_pow,
    unit_normal,
    xgcd,
)

SIG = cmath.exp(1j * math.pi / 3)


def test_sigma_relation():
    assert SIGMA * SIGMA == SIGMA - ONE
    assert SIGMA * SIGMA_BAR == ONE
    assert SIGMA**6 == ONE and SIGMA**3 == -ONE


@pytest.mark.parametrize("z,n", [(EInt(0, 0), 0), (EInt(1, 1), 3), (EInt(2, 1), 7)])
def test_norm_examples(z, n):
    assert norm(z) == n
    assert math.isclose(abs(z.to_complex()) ** 2, n, abs_tol=1e-12)


def test_units_are_powers():
    assert [sigma_pow(k) for k in range(6)] == list(UNITS)
    for k, u in enumerate(UNITS):
        assert cmath.isclose(u.to_complex(), SIG**k)


@given(eints, eints)
def test_ring_ops_match_complex(x, y):
    assert cmath.isclose((x * y).to_complex(), x.to_complex() * y.to_complex(), abs_tol=1e-6)
    assert cmath.isclose((x + y).to_complex(), x.to_complex() + y.to_complex(), abs_tol=1e-9)
    assert (x * y).norm() == x.norm() * y.norm()
    assert x.conj().to_complex() == pytest.approx(x.to_complex().conjugate())


@given(eints, nonzero_eints)
def test_euclidean_division(x, y):
    q, r = x.divmod(y)
    assert q * y + r == x
    assert r.norm() < y.norm()


def test_gcd_examples():
    g = gcd(EInt(4, 2), EInt(2))
    assert g.norm() == 4 and g.divides(EInt(2)) and g.divides(EInt(4, 2))
    assert gcd(EInt(2, 1), EInt(1, -1)).is_unit()
    x = EInt(5, -3)
    assert gcd(x, ZERO).norm() == x.norm()


@given(eints, eints)
def test_xgcd_bezout(x, y):
    if not x and not y:
        return
    g, s, t = xgcd(x, y)
    assert s * x + t * y == g
    assert g.divides(x) and g.divides(y)


@given(eints)
def test_sector_matches_argument(z):
    if not z:
        return
    k = sector(z)
    arg = cmath.phase(z.to_complex()) % (2 * math.pi)
    assert k * math.pi / 3 - 1e-9 <= arg < (k + 1) * math.pi / 3 + 1e-9


def test_reduce_examples():
    assert reduce(ProjPoint(EInt(4, 2), EInt(2))) == ProjPoint(EInt(2, 1), ONE)
    assert reduce(ProjPoint(SIGMA**3, ZERO)) == INF
    rep = ProjPoint(ZERO, -SIGMA_BAR)
    assert reduce(rep) == ProjPoint(ZERO, ONE)
    assert rep.q == -SIGMA_BAR  # the representative itself is untouched


@given(points(), units)
def test_reduce_is_canonical(f, u):
    r = reduce(f.scale(u))
    assert r == reduce(f)
    assert r.q == ZERO or sector(r.q) == 0
    assert unit_normal(f.scale(u)) == r


def test_point_eq_examples():
    assert point_eq(ProjPoint(ONE, SIGMA), ProjPoint(SIGMA_BAR, ONE))
    assert not point_eq(INF, point(0))
    assert point_eq(ProjPoint(-ONE, -ONE), point(1))


def test_det2_examples():
    assert det2(INF, point(0)) == ONE
    assert det2(point(2), point(0)) == EInt(2)
    f = point(EInt(3, 1))
    assert det2(f, f) == ZERO


def test_mobius_examples():
    f = ProjPoint(EInt(2, 1), EInt(1, 3))
    assert mobius_apply(UnimodularMatrix.identity(), f) == f
    s = UnimodularMatrix(ZERO, -ONE, ONE, ZERO, True)
    assert point_eq(mobius_apply(s, INF), point(0))
    assert point_eq(mobius_apply(s, point(1)), point(-1))


@given(gl2(), points(), points())
def test_mobius_preserves_det_length(A, f, g):
    assert det2(A.apply(f), A.apply(g)).norm() == det2(f, g).norm()


def test_mat_inverse_examples():
    I = UnimodularMatrix.identity()
    assert mat_inverse(I) == I
    shear = UnimodularMatrix(ONE, ONE, ZERO, ONE, True)
    assert mat_inverse(shear).entries() == (ONE, -ONE, ZERO, ONE)


@given(gl2())
def test_inverse_product_identity(A):
    assert (A @ A.inverse()).entries() == UnimodularMatrix.identity().entries()


@given(points())
def test_matrix_to_infinity(f):
    A = matrix_to_infinity(f)
    assert A.det() == ONE
    assert A.apply(f).q == ZERO


def test_bad_matrix_rejected():
    with pytest.raises(ValueError):
        UnimodularMatrix(EInt(2), ZERO, ZERO, ONE)


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 30), st.integers(-30, 30))
def test_qsigma_field(a, b, c, d):
    x = QSigma.ratio(EInt(a, b), EInt(c, d))
    if x:
        assert x * (QSigma(1) / x) == QSigma(1)
    assert cmath.isclose(x.to_complex(), EInt(a, b).to_complex() / EInt(c, d).to_complex(), abs_tol=1e-9)
