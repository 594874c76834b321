"""Lambda lengths: exact squared values via determinants, numeric values via horospheres.

The exact working quantity is lambda squared, which is an integer for standard
horospheres at vertices of the graph.  Floats only appear in the horosphere
oracle and in the random-configuration checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from .eisenstein import (
    INF,
    unit_normal,
    EInt,
    ProjPoint,
    QSigma,
    UnimodularMatrix,
    det2,
    matrix_to_infinity,
    point,
    point_eq,
    reduce,
)
from .graph import (
    CoincidentPoints,
    Face,
    FundamentalTetrahedron,
    det_length_sq,
    is_fundamental_tetrahedron,
    reflect_apex,
)


@dataclass(frozen=True)
class Horosphere:
    """Horosphere in upper half-space.  center None means the point at infinity;
    size is then the height of the horizontal plane, otherwise the Euclidean radius."""

    center: complex | None
    size: float

    def __post_init__(self) -> None:
        if not self.size > 0:
            raise ValueError("horosphere size must be positive")

    @property
    def at_infinity(self) -> bool:
        return self.center is None

    @property
    def curvature(self) -> float:
        return 0.0 if self.center is None else 1.0 / self.size


def standard_horosphere(f: ProjPoint) -> Horosphere:
    if not f.is_irreducible():
        raise ValueError(f"{f} is not irreducible")
    if f.is_infinity:
        return Horosphere(None, 1.0)
    return Horosphere(f.to_complex(), 1.0 / (2 * f.q.norm()))


def lambda_numeric(A: Horosphere, B: Horosphere) -> float:
    if A.at_infinity and B.at_infinity:
        raise CoincidentPoints("both horospheres are centred at infinity")
    if A.at_infinity:
        return math.sqrt(A.size / (2 * B.size))
    if B.at_infinity:
        return math.sqrt(B.size / (2 * A.size))
    d = abs(A.center - B.center)
    if d == 0:
        raise CoincidentPoints("horospheres share a centre")
    return d / (2 * math.sqrt(A.size * B.size))


def lambda_sq_numeric(A: Horosphere, B: Horosphere) -> float:
    return lambda_numeric(A, B) ** 2


def mobius_horosphere(m: UnimodularMatrix, h: Horosphere) -> Horosphere:
    """Image of a horosphere under z -> (az+b)/(cz+d), computed in floats.

    Independent of the exact det-length machinery, so it can serve as an oracle.
    """
    a, b, c, d = m.to_complex()
    det = a * d - b * c
    if h.center is None:
        if abs(c) < 1e-300:
            # infinity is fixed; plane height scales by |a/d|... up to |det|
            return Horosphere(None, h.size * abs(a) ** 2 / abs(det))
        return Horosphere(a / c, abs(det) / (2 * h.size * abs(c) ** 2))
    z = h.center
    den = c * z + d
    if abs(den) < 1e-12 * max(1.0, abs(c * z), abs(d)):
        return Horosphere(None, abs(det) / (2 * h.size * abs(c) ** 2))
    return Horosphere((a * z + b) / den, h.size * abs(det) / abs(den) ** 2)


@dataclass
class Report:
    lhs: object
    rhs: object
    residual: float
    passed: bool
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "residual": self.residual, "pass": self.passed, **self.details}


def _rel(lhs: float, rhs: float) -> float:
    scale = max(abs(lhs), abs(rhs), 1e-300)
    return abs(lhs - rhs) / scale


def ptolemy_sides(b: Sequence) -> tuple:
    """Both sides of sum b_i^2 = sum_{i<j} b_i b_j."""
    return sum(x * x for x in b), sum(x * y for x, y in combinations(b, 2))


def verify_tetra_ptolemy(tetra: FundamentalTetrahedron | Sequence[ProjPoint], X: ProjPoint, tolerance: float = 1e-9) -> Report:
    verts = [reduce(v) for v in tetra]
    X = reduce(X)
    if not is_fundamental_tetrahedron(verts):
        raise ValueError("not a fundamental tetrahedron")
    for v in verts:
        if point_eq(v, X):
            raise CoincidentPoints("X coincides with a vertex")
    b = [det_length_sq(X, v) for v in verts]
    lhs, rhs = ptolemy_sides(b)
    hx = standard_horosphere(X)
    lam2 = [lambda_numeric(hx, standard_horosphere(v)) ** 2 for v in verts]
    flhs, frhs = ptolemy_sides(lam2)
    residual = _rel(flhs, frhs)
    return Report(lhs, rhs, residual, lhs == rhs, {"b": b, "float_residual_ok": residual < tolerance})


def quadratic_partner(b_face: Sequence[int], b_apex: int) -> int:
    """The other root: b1 + b2 + b3 - b4."""
    return sum(b_face) - b_apex


FIVE_CYCLES: tuple[tuple[int, ...], ...] = tuple(
    (0,) + p for p in permutations(range(1, 5)) if p[0] < p[-1]
)


def five_point_sides(lam2: dict) -> tuple:
    """Both sides of the five-point relation from squared lambda lengths.

    lam2 maps frozenset({i, j}) to lambda_ij squared.  Works for ints and floats.
    """
    def L(i, j):
        return lam2[frozenset((i, j))]

    lhs = 0
    for i, j in combinations(range(5), 2):
        k, l, m = (x for x in range(5) if x not in (i, j))
        lhs += L(i, j) ** 2 * L(k, l) * L(l, m) * L(m, k)
    rhs = 0
    for cyc in FIVE_CYCLES:
        term = 1
        for s in range(5):
            term *= L(cyc[s], cyc[(s + 1) % 5])
        rhs += term
    return lhs, rhs


def verify_five_point(points: Sequence, tolerance: float = 1e-8) -> Report:
    """points: five ProjPoints (exact, standard horospheres) or five Horospheres (float)."""
    if len(points) != 5:
        raise ValueError("need exactly five points")
    if all(isinstance(p, ProjPoint) for p in points):
        pts = [reduce(p) for p in points]
        for i, j in combinations(range(5), 2):
            if point_eq(pts[i], pts[j]):
                raise CoincidentPoints(f"points {i} and {j} coincide")
        lam2 = {frozenset((i, j)): det_length_sq(pts[i], pts[j]) for i, j in combinations(range(5), 2)}
        lhs, rhs = five_point_sides(lam2)
        return Report(lhs, rhs, 0.0 if lhs == rhs else float("inf"), lhs == rhs, {"exact": True})
    hs = list(points)
    lam2 = {frozenset((i, j)): lambda_numeric(hs[i], hs[j]) ** 2 for i, j in combinations(range(5), 2)}
    lhs, rhs = five_point_sides(lam2)
    residual = _rel(lhs, rhs)
    return Report(lhs, rhs, residual, residual < tolerance, {"exact": False})


def soddy_sides(k: Sequence) -> tuple:
    """Reduced Soddy-Gosset relation with the boundary plane: sum_{i<j} k_i k_j vs sum k_i^2."""
    return sum(x * y for x, y in combinations(k, 2)), sum(x * x for x in k)


def verify_soddy_gosset(tetra: FundamentalTetrahedron | Sequence[ProjPoint], tolerance: float = 1e-9) -> Report:
    verts = [reduce(v) for v in tetra]
    if not is_fundamental_tetrahedron(verts):
        raise ValueError("not a fundamental tetrahedron")
    k = [0 if v.is_infinity else 2 * v.q.norm() for v in verts]
    lhs, rhs = soddy_sides(k)
    return Report(lhs, rhs, 0.0 if lhs == rhs else float("inf"), lhs == rhs, {"k": k, "exact": True})


def verify_soddy_gosset_numeric(horospheres: Sequence[Horosphere], tolerance: float = 1e-9) -> Report:
    k = [h.curvature for h in horospheres]
    lhs, rhs = soddy_sides(k)
    residual = _rel(lhs, rhs)
    return Report(lhs, rhs, residual, residual < tolerance, {"k": k, "exact": False})


class DegenerateGeodesic(ValueError):
    """The geodesic lies in a face plane: the configuration is two-dimensional."""


class WalkAmbiguity(ArithmeticError):
    """The geodesic passes through an edge, so the next tetrahedron is not unique."""


def _qs(x) -> QSigma:
    return QSigma.coerce(x)


def _circumcentre_sq(y: QSigma, a: QSigma, b: QSigma, c: QSigma) -> Fraction | None:
    """Squared height where the vertical line over y meets the hemisphere through a, b, c.

    Negative when y lies outside the circumcircle.  None for collinear a, b, c:
    that face sits in a vertical half-plane which the line never crosses.
    """
    return _height_sq(_scaled_pt(y), _scaled_pt(a), _scaled_pt(b), _scaled_pt(c))


def _scaled_pt(z: QSigma) -> tuple[EInt, int]:
    d = z.a.denominator * z.b.denominator // math.gcd(z.a.denominator, z.b.denominator)
    return EInt(z.a * d, z.b * d), d


def _ratio_pt(f: ProjPoint) -> tuple[EInt, int]:
    # p/q as (p * conj(q)) / N(q)
    return f.p * f.q.conj(), f.q.norm()


def _height_sq(y, a, b, c) -> Fraction | None:
    # same quantity as above on points given as (numerator, positive denominator);
    # everything is scaled by a common L so only one Fraction is built
    (Y, dy), (A, da), (B, db), (C, dc) = y, a, b, c
    L = dy * da * db * dc
    Y, A, B, C = Y * (L // dy), A * (L // da), B * (L // db), C * (L // dc)
    b0, c0 = B - A, C - A
    den = b0.conj() * c0 - b0 * c0.conj()
    if not den:
        return None
    zn = (c0 * b0.norm() - b0 * c0.norm()) * den.conj()
    nd = den.norm()
    w = (Y - A) * nd - zn
    return Fraction(zn.norm() - w.norm(), L * L * nd * nd)


def _same(u: tuple[EInt, int], v: tuple[EInt, int]) -> bool:
    return u[0] * v[1] == v[0] * u[1]


def _frac_split(x: Fraction) -> tuple[int, Fraction]:
    n = math.floor(x)
    return n, x - n


def _first_cell(y: QSigma) -> list[EInt]:
    al, be = y.a, y.b
    if al.denominator == 1 or be.denominator == 1 or (al + be).denominator == 1:
        raise DegenerateGeodesic("geodesic lies in a vertical face plane")
    na, fa = _frac_split(al)
    nb, fb = _frac_split(be)
    n = EInt(na, nb)
    if fa + fb < 1:
        return [n, n + 1, n + EInt(0, 1)]
    return [n + 1, n + EInt(0, 1), n + EInt(1, 1)]


def geodesic_walk(X: ProjPoint, Y: ProjPoint, max_steps: int = 10_000) -> list[FundamentalTetrahedron]:
    """Fundamental tetrahedra crossed by the geodesic from X to Y, in order.

    Works in the frame where X is at infinity, where the geodesic is the vertical
    line over y.  Each step leaves through the face met highest below the entry point.
    All tests are exact rational comparisons.
    """
    X, Y = reduce(X), reduce(Y)
    if point_eq(X, Y):
        raise CoincidentPoints("X and Y coincide")
    A = matrix_to_infinity(X)
    Ainv = A.inverse()
    yp = A.apply(Y)
    y = QSigma.ratio(yp.p, yp.q)
    back = lambda z: unit_normal(Ainv.apply(point(z)))  # noqa: E731

    if det_length_sq(X, Y) == 1:
        yi = y.to_eint()
        return [FundamentalTetrahedron((X, back(yi), back(yi + 1), back(yi + EInt(0, 1))))]

    face = _first_cell(y)
    walk = [FundamentalTetrahedron((X, *[back(v) for v in face]))]
    ys = _scaled_pt(y)
    # exact local coordinates of the finite vertices of the current face
    cur = [(v, 1) for v in face]
    prev_apex_pt: ProjPoint = INF
    face_pts = [point(v) for v in face]
    steps = 0
    while True:
        steps += 1
        if steps > max_steps:
            raise RuntimeError("step budget exhausted")
        # cross the current exit face: reflect the apex we came from
        new_pt = reflect_apex(face_pts, prev_apex_pt)
        new = _ratio_pt(new_pt)
        entry_h2 = _height_sq(ys, *cur)
        verts_pts = face_pts + [new_pt]
        verts = cur + [new]
        walk.append(FundamentalTetrahedron(tuple(back_pt(Ainv, v) for v in verts_pts)))
        if any(_same(v, ys) for v in verts):
            return walk
        best = None
        for drop in range(3):
            tri = [verts[i] for i in range(4) if i != drop]
            h2 = _height_sq(ys, *tri)
            if h2 is not None and h2 < entry_h2 and (best is None or h2 >= best[0]):
                if best is not None and h2 == best[0]:
                    raise WalkAmbiguity("geodesic meets an edge")
                best = (h2, drop)
        if best is None or best[0] <= 0:
            raise WalkAmbiguity("no exit face found below the entry height")
        drop = best[1]
        prev_apex_pt = face_pts[drop]
        face_pts = [verts_pts[i] for i in range(4) if i != drop]
        cur = [verts[i] for i in range(4) if i != drop]


def back_pt(Ainv: UnimodularMatrix, f: ProjPoint) -> ProjPoint:
    # a unimodular image of an irreducible fraction stays irreducible
    return unit_normal(Ainv.apply(f))


@dataclass(frozen=True)
class BSequence:
    values: tuple[int, ...]
    vertices: tuple[ProjPoint, ...]
    # index in ``vertices`` of the vertex dropped at each crossing
    dropped: tuple[int, ...]

    def recurrence_holds(self) -> bool:
        b = self.values
        return all(b[i] + b[i + 4] == b[i + 1] + b[i + 2] + b[i + 3] for i in range(len(b) - 4))

    def increasing_at_lag4(self) -> bool:
        b = self.values
        return all(b[i] < b[i + 4] for i in range(len(b) - 4))

    def step_relations_hold(self) -> bool:
        """Per crossing: new + dropped = sum over the shared face."""
        return all(ok for ok in self._steps())

    def _steps(self):
        b = self.values
        live = [0, 1, 2, 3]
        for s, d in enumerate(self.dropped):
            new = 4 + s
            face = [i for i in live if i != d]
            yield b[new] + b[d] == sum(b[i] for i in face)
            live = face + [new]

    def is_fifo(self) -> bool:
        return list(self.dropped) == list(range(len(self.dropped)))


def b_sequence(X: ProjPoint, walk: Sequence[FundamentalTetrahedron], strict: bool = False) -> BSequence:
    """Squared lambda lengths from X to the vertex stream of the walk.

    X is labelled X0.  The other three vertices of the first tetrahedron are labelled
    in the order the walk drops them, then each crossing appends its new apex.
    With strict=True the three stated properties are asserted.
    """
    X = reduce(X)
    first = [reduce(v) for v in walk[0]]
    others = [v for v in first if not point_eq(v, X)]
    if len(others) != 3:
        raise ValueError("X is not a vertex of the first tetrahedron")
    keys = []
    new_pts = []
    drops_pts = []
    live = [X] + others
    for T in walk[1:]:
        pts = [reduce(v) for v in T]
        gone = [v for v in live if not any(point_eq(v, w) for w in pts)]
        added = [w for w in pts if not any(point_eq(v, w) for v in live)]
        if len(gone) != 1 or len(added) != 1:
            raise ValueError("consecutive tetrahedra do not share a face")
        drops_pts.append(gone[0])
        new_pts.append(added[0])
        live = [v for v in live if v is not gone[0]] + added
    order = []
    for g in drops_pts:
        for j, o in enumerate(others):
            if j not in order and point_eq(g, o):
                order.append(j)
    order += [j for j in range(3) if j not in order]
    stream = [X] + [others[j] for j in order] + new_pts
    dropped = [next(i for i, v in enumerate(stream) if v is g) for g in drops_pts]
    values = tuple(det_length_sq(X, v) if i else 0 for i, v in enumerate(stream))
    seq = BSequence(values, tuple(stream), tuple(dropped))
    if strict:
        if not seq.recurrence_holds():
            raise AssertionError("lag-4 recurrence violated")
        if not seq.increasing_at_lag4():
            raise AssertionError("b_i < b_{i+4} violated")
    return seq
