"""Paths in the tetrahedral graph, their angle sequences and continued fractions.

A path is stored as a window of fraction representatives with an absolute
``base_index``.  Sign contracts of the form (-1)**i always use the absolute index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .eisenstein import (
    ONE,
    ZERO,
    EInt,
    ProjPoint,
    QSigma,
    det2,
    point_eq,
    reduce,
    sigma_pow,
)
from .graph import det_length_sq


class Mode(str, Enum):
    PLAIN = "plain"
    NORMALISED = "normalised"
    SKEW = "skew-normalised"


class PathError(ValueError):
    pass


def _sign(i: int) -> int:
    return -1 if i % 2 else 1


@dataclass(frozen=True)
class PathRep:
    vertices: tuple[ProjPoint, ...]
    mode: Mode = Mode.PLAIN
    base_index: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "mode", Mode(self.mode))
        self.validate()

    def validate(self) -> None:
        vs = self.vertices
        for k in range(len(vs) - 1):
            d = det2(vs[k], vs[k + 1])
            i = self.base_index + k
            if self.mode is Mode.NORMALISED and d != ONE:
                raise PathError(f"det(v{i}, v{i + 1}) = {d}, expected 1")
            if self.mode is Mode.SKEW and d != _sign(i):
                raise PathError(f"det(v{i}, v{i + 1}) = {d}, expected {_sign(i)}")
            if self.mode is Mode.PLAIN and d.norm() != 1:
                raise PathError(f"v{i} and v{i + 1} are not adjacent")

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def indices(self) -> range:
        return range(self.base_index, self.base_index + len(self.vertices))

    @property
    def last_index(self) -> int:
        return self.base_index + len(self.vertices) - 1

    def __getitem__(self, i: int) -> ProjPoint:
        """Vertex at absolute index i."""
        k = i - self.base_index
        if not 0 <= k < len(self.vertices):
            raise IndexError(f"index {i} outside the stored window {self.base_index}..{self.last_index}")
        return self.vertices[k]

    def points(self) -> list[ProjPoint]:
        return [reduce(v) for v in self.vertices]

    def is_self_intersecting(self) -> bool:
        keys = [v.key() for v in self.vertices]
        return len(set(keys)) != len(keys)

    def mapped(self, m) -> PathRep:
        return PathRep(tuple(m.apply(v) for v in self.vertices), self.mode, self.base_index)


@dataclass(frozen=True)
class AngleSeq:
    values: tuple[EInt, ...]
    base_index: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(EInt.coerce(a) for a in self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> EInt:
        k = i - self.base_index
        if not 0 <= k < len(self.values):
            raise IndexError(f"no angle stored at index {i}")
        return self.values[k]

    @property
    def indices(self) -> range:
        return range(self.base_index, self.base_index + len(self.values))


def _chain(vertices: Sequence[ProjPoint], seed: ProjPoint, base_index: int, skew: bool) -> PathRep:
    if not vertices:
        raise PathError("empty path")
    if not point_eq(seed, vertices[0]):
        raise PathError("seed does not represent the first vertex")
    if not seed.is_irreducible():
        raise PathError("seed is not irreducible")
    out = [seed]
    for k in range(1, len(vertices)):
        r = vertices[k]
        d = det2(out[-1], r)
        if d.norm() != 1:
            # a unit determinant already certifies irreducibility; otherwise reduce first
            r = reduce(r)
            d = det2(out[-1], r)
        if d.norm() != 1:
            raise PathError(f"step {base_index + k - 1} -> {base_index + k} is not an edge")
        target = _sign(base_index + k - 1) if skew else 1
        u = d.unit_inverse() * target
        out.append(r.scale(u))
    return PathRep(tuple(out), Mode.SKEW if skew else Mode.NORMALISED, base_index)


def normalise_path(vertices: Sequence[ProjPoint], seed: ProjPoint | None = None, base_index: int = 0) -> PathRep:
    """The normalised chain of representatives extending ``seed``."""
    return _chain(vertices, seed if seed is not None else reduce(vertices[0]), base_index, False)


def skew_normalise(vertices: Sequence[ProjPoint], seed: ProjPoint | None = None, base_index: int = 0) -> PathRep:
    return _chain(vertices, seed if seed is not None else reduce(vertices[0]), base_index, True)


# sign pattern + + - - by absolute index mod 4; it is an involution
def skew_sign(i: int) -> int:
    return 1 if i % 4 in (0, 1) else -1


def skew_to_normalised(path: PathRep) -> PathRep:
    if path.mode is not Mode.SKEW:
        raise PathError("expected a skew-normalised path")
    vs = tuple(v.scale(skew_sign(i)) for i, v in zip(path.indices, path.vertices))
    return PathRep(vs, Mode.NORMALISED, path.base_index)


def normalised_to_skew(path: PathRep) -> PathRep:
    if path.mode is not Mode.NORMALISED:
        raise PathError("expected a normalised path")
    vs = tuple(v.scale(skew_sign(i)) for i, v in zip(path.indices, path.vertices))
    return PathRep(vs, Mode.SKEW, path.base_index)


def t_angle(v_prev: ProjPoint, v_cur: ProjPoint, v_next: ProjPoint, i: int) -> EInt:
    """The a with v_next = v_prev + a * v_cur, for a skew-normalised triple centred at index i."""
    if det2(v_prev, v_cur) != _sign(i - 1) or det2(v_cur, v_next) != _sign(i):
        raise PathError(f"skew contract violated around index {i}")
    a = det2(v_prev, v_next) * _sign(i - 1)
    if v_next.p != v_prev.p + a * v_cur.p or v_next.q != v_prev.q + a * v_cur.q:
        raise AssertionError("angle solve is inconsistent")
    return a


def angle_sequence(path: PathRep) -> AngleSeq:
    if path.mode is not Mode.SKEW:
        raise PathError("angle sequences are defined for skew-normalised paths")
    if len(path) < 3:
        raise PathError("need at least three vertices")
    vs = path.vertices
    base = path.base_index
    vals = tuple(t_angle(vs[k - 1], vs[k], vs[k + 1], base + k) for k in range(1, len(vs) - 1))
    return AngleSeq(vals, base + 1)


def path_from_angles(v0: ProjPoint, v1: ProjPoint, angles: AngleSeq | Sequence, seed_index: int = 0) -> PathRep:
    """Unique skew-normalised path through the seeds with the given angles.

    The seeds sit at absolute indices seed_index and seed_index + 1.  Angles at
    indices above seed_index extend forwards, angles at or below extend backwards.
    """
    if not isinstance(angles, AngleSeq):
        angles = AngleSeq(tuple(angles), seed_index + 1)
    s = seed_index
    if det2(v0, v1) != _sign(s):
        raise PathError(f"seed determinant must be {_sign(s)} at index {s}")
    idx = angles.indices
    if len(idx) and (idx.start > s + 1 or idx.stop - 1 < s):
        raise PathError("angle window does not touch the seed edge")
    fwd = [v0, v1]
    i = s + 1
    while i in idx:
        a = angles[i]
        prev, cur = fwd[-2], fwd[-1]
        fwd.append(ProjPoint(prev.p + a * cur.p, prev.q + a * cur.q))
        i += 1
    back: list[ProjPoint] = []
    i = s
    nxt, cur = v1, v0
    while i in idx:
        a = angles[i]
        prev = ProjPoint(nxt.p - a * cur.p, nxt.q - a * cur.q)
        back.append(prev)
        nxt, cur = cur, prev
        i -= 1
    back.reverse()
    return PathRep(tuple(back + fwd), Mode.SKEW, s - len(back))


def continuant(a: Sequence) -> EInt:
    """K(a1..an) with K() = 1, K(a1) = a1, K(a1..an) = an K(a1..a(n-1)) + K(a1..a(n-2))."""
    k_prev, k = ONE, ONE
    first = True
    for x in a:
        x = EInt.coerce(x)
        if first:
            k_prev, k = ONE, x
            first = False
        else:
            k_prev, k = k, x * k + k_prev
    return k


def nested_cf(a: Sequence) -> QSigma:
    """[a1; a2, ..., an] = a1 + 1/(a2 + 1/(... + 1/an)) over Q(sigma).

    Raises ZeroDivisionError when an inner tail vanishes.
    """
    if not a:
        raise ValueError("empty continued fraction")
    val = QSigma.coerce(EInt.coerce(a[-1]))
    for x in reversed(a[:-1]):
        val = QSigma.coerce(EInt.coerce(x)) + QSigma.coerce(1) / val
    return val


def nested_cf_point(a: Sequence) -> ProjPoint:
    """The nested value as a projective point K(a1..an)/K(a2..an); never divides."""
    a = list(a)
    return ProjPoint(continuant(a), continuant(a[1:]))


@dataclass(frozen=True)
class CFResult:
    endpoint: ProjPoint
    nested: QSigma | None
    nested_point: ProjPoint

    def endpoint_is_reciprocal(self) -> bool:
        """endpoint == 1/[a1; ...] as points of the projective line."""
        n = self.nested_point
        return point_eq(self.endpoint, ProjPoint(n.q, n.p))


def cf_eval(angles: Sequence | AngleSeq) -> CFResult:
    """Endpoint of the path from 1/0, 0/1 with angles a1..a(n+1), and the nested value.

    The endpoint equals the reciprocal 1/[a1; a2, ..., a(n+1)].
    """
    vals = list(angles.values if isinstance(angles, AngleSeq) else angles)
    if not vals:
        raise ValueError("need at least one angle")
    path = path_from_angles(ProjPoint(ONE, ZERO), ProjPoint(ZERO, ONE), AngleSeq(tuple(vals), 1))
    end = path.vertices[-1]
    try:
        nested = nested_cf(vals)
    except ZeroDivisionError:
        nested = None
    return CFResult(end, nested, nested_cf_point(vals))


def vanishing_subfractions(a: Sequence) -> list[tuple[int, int]]:
    """Index ranges (k, l), 1-based inclusive, with K(a_k..a_l) = 0."""
    a = [EInt.coerce(x) for x in a]
    out = []
    for k in range(len(a)):
        for l in range(k, len(a)):
            if not continuant(a[k : l + 1]):
                out.append((k + 1, l + 1))
    return out


def revisits_vertex(path: PathRep) -> bool:
    return path.is_self_intersecting()


def t_angle_general(v0: ProjPoint, v1: ProjPoint, v2: ProjPoint) -> QSigma:
    d01 = det2(v0, v1)
    if not d01:
        raise ZeroDivisionError("v0 and v1 coincide")
    if point_eq(v0, v2):
        raise ValueError("v0 and v2 coincide")
    return QSigma.ratio(det2(v0, v2), d01)


def cyclic_tsin_product(v0: ProjPoint, v1: ProjPoint, v2: ProjPoint) -> QSigma:
    return t_angle_general(v0, v1, v2) * t_angle_general(v1, v2, v0) * t_angle_general(v2, v0, v1)


@dataclass(frozen=True)
class ConcyclicReport:
    lhs: float
    rhs: float
    residual: float
    concyclic: bool
    in_order: bool
    passed: bool

    def as_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "concyclic": self.concyclic,
            "in_order": self.in_order,
            "pass": self.passed,
        }


def cross_ratio(v1: ProjPoint, v2: ProjPoint, v3: ProjPoint, v4: ProjPoint) -> QSigma:
    """d12 d34 / (d14 d32); real iff concyclic, negative iff the cyclic order is 1234."""
    return QSigma.ratio(det2(v1, v2) * det2(v3, v4), det2(v1, v4) * det2(v3, v2))


class NotConcyclic(ValueError):
    pass


def verify_concyclic_ptolemy(
    vs: Sequence[ProjPoint], v0: ProjPoint, tolerance: float = 1e-9, check_order: bool = True
) -> ConcyclicReport:
    """Residual of x13 x24 = x12 x34 + x23 x14 with x_ij = |d_ij| / sqrt|d_i0 d_j0|.

    With check_order=False a mis-ordered input is evaluated instead of rejected.
    """
    if len(vs) != 4:
        raise ValueError("need four points on a circle")
    pts = [v0, *vs]
    for i in range(5):
        for j in range(i + 1, 5):
            if point_eq(pts[i], pts[j]):
                raise ValueError("points must be distinct")
    cr = cross_ratio(*vs)
    concyclic = cr.is_real()
    in_order = concyclic and cr.a < 0
    if check_order and not concyclic:
        raise NotConcyclic("points are not on one circle or line")
    if check_order and not in_order:
        raise NotConcyclic("points are not in cyclic order v1 v2 v3 v4")

    def x(i: int, j: int) -> float:
        dij = det2(pts[i], pts[j]).norm()
        di0 = det2(pts[i], v0).norm()
        dj0 = det2(pts[j], v0).norm()
        return math.sqrt(dij) / (di0 * dj0) ** 0.25

    lhs = x(1, 3) * x(2, 4)
    rhs = x(1, 2) * x(3, 4) + x(2, 3) * x(1, 4)
    residual = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)
    return ConcyclicReport(lhs, rhs, residual, concyclic, in_order, residual < tolerance)


def angle_norm_matches(path: PathRep) -> bool:
    """|a_i|^2 equals the squared det-length across the fan at every interior vertex."""
    seq = angle_sequence(path)
    return all(seq[i].norm() == det_length_sq(reduce(path[i - 1]), reduce(path[i + 1])) for i in seq.indices)


def rescale(path: PathRep, k: int) -> PathRep:
    """Re-normalise by multiplying v_i by sigma^((-1)^i k); stays in the same mode."""
    vs = tuple(v.scale(sigma_pow(k * _sign(i))) for i, v in zip(path.indices, path.vertices))
    return PathRep(vs, path.mode, path.base_index)


def periodic_points(points: Iterable[ProjPoint], count: int, start: int = 0) -> list[ProjPoint]:
    pts = list(points)
    return [pts[(start + i) % len(pts)] for i in range(count)]
