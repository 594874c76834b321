"""Combinatorics of the tetrahedral graph: edges, faces, fundamental tetrahedra."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable

from .eisenstein import INF, SIGMA, UNITS, ProjPoint, det2, point, point_eq, reduce, unit_exponent, unit_normal


class NotAnEdge(ValueError):
    pass


class CoincidentPoints(ValueError):
    pass


def _canon(f: ProjPoint) -> ProjPoint:
    # predicates accept any representative; reducing keeps them honest
    return f if f.is_irreducible() else reduce(f)


def _distinct(points: Iterable[ProjPoint]) -> None:
    pts = list(points)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if point_eq(pts[i], pts[j]):
                raise CoincidentPoints(f"points {pts[i]} and {pts[j]} coincide")


@dataclass(frozen=True)
class Face:
    vertices: tuple[ProjPoint, ProjPoint, ProjPoint]

    def __iter__(self):
        return iter(self.vertices)


@dataclass(frozen=True)
class FundamentalTetrahedron:
    vertices: tuple[ProjPoint, ProjPoint, ProjPoint, ProjPoint]

    def __iter__(self):
        return iter(self.vertices)

    def faces(self) -> list[tuple[Face, ProjPoint]]:
        """Each face together with the opposite vertex."""
        out = []
        for k in range(4):
            rest = tuple(v for i, v in enumerate(self.vertices) if i != k)
            out.append((Face(rest), self.vertices[k]))  # type: ignore[arg-type]
        return out

    def mapped(self, m) -> FundamentalTetrahedron:
        return FundamentalTetrahedron(tuple(m.apply(v) for v in self.vertices))  # type: ignore[arg-type]


def det_length_sq(u: ProjPoint, v: ProjPoint) -> int:
    u, v = _canon(u), _canon(v)
    return det2(u, v).norm()


def is_edge(u: ProjPoint, v: ProjPoint) -> bool:
    _distinct((u, v))
    return det_length_sq(u, v) == 1


def symmetric_farey_sum(u: ProjPoint, v: ProjPoint) -> list[ProjPoint]:
    """The six apexes (p + s^i r)/(q + s^i s), i = 0..5, in order of i."""
    u, v = _canon(u), _canon(v)
    if det2(u, v).norm() != 1:
        raise NotAnEdge(f"{u} and {v} are not joined by an edge")
    # det(u, u + s^i v) is a unit, so every apex is already irreducible
    return [unit_normal(ProjPoint(u.p + w * v.p, u.q + w * v.q)) for w in UNITS]


def _farey_index(u: ProjPoint, v: ProjPoint, w: ProjPoint) -> int | None:
    # w ~ u + s^i v  iff  det(u, w) / det(w, v) = s^i with both determinants units
    d1, d2 = det2(u, w), det2(w, v)
    if d1.norm() != 1 or d2.norm() != 1:
        return None
    return unit_exponent(d1 * d2.conj())


def is_face(t: Face | Iterable[ProjPoint]) -> bool:
    a, b, c = (_canon(x) for x in t)
    _distinct((a, b, c))
    if det2(a, b).norm() != 1:
        return False
    return _farey_index(a, b, c) is not None


def _tetra_config(a: ProjPoint, b: ProjPoint, c: ProjPoint, d: ProjPoint) -> bool:
    if det2(a, b).norm() != 1:
        return False
    i = _farey_index(a, b, c)
    j = _farey_index(a, b, d)
    return i is not None and j is not None and (j - i) % 6 in (1, 5)


def is_fundamental_tetrahedron(t: FundamentalTetrahedron | Iterable[ProjPoint]) -> bool:
    pts = [_canon(x) for x in t]
    if len(pts) != 4:
        raise ValueError("a tetrahedron has four vertices")
    _distinct(pts)
    a = pts[0]
    # an edge through pts[0] and the other two vertices at adjacent Farey indices
    for b, c, d in permutations(pts[1:]):
        if _tetra_config(a, b, c, d):
            return True
    return False


def all_pairs_unit(pts: Iterable[ProjPoint]) -> bool:
    pts = list(pts)
    return all(det_length_sq(pts[i], pts[j]) == 1 for i in range(len(pts)) for j in range(i + 1, len(pts)))


def reflect_apex(f: Face | Iterable[ProjPoint], apex: ProjPoint) -> ProjPoint:
    """The other apex completing the face to a fundamental tetrahedron."""
    a, b, c = (_canon(x) for x in f)
    apex = _canon(apex)
    if not is_fundamental_tetrahedron((a, b, c, apex)):
        raise ValueError("face and apex do not form a fundamental tetrahedron")
    i = _farey_index(a, b, c)
    j = _farey_index(a, b, apex)
    assert i is not None and j is not None
    k = (2 * i - j) % 6
    return symmetric_farey_sum(a, b)[k]


def star(u: ProjPoint, v: ProjPoint) -> list[Face]:
    """The six faces containing the edge uv."""
    return [Face((_canon(u), _canon(v), w)) for w in symmetric_farey_sum(u, v)]


def tetrahedra_on_edge(u: ProjPoint, v: ProjPoint) -> list[FundamentalTetrahedron]:
    s = symmetric_farey_sum(u, v)
    u, v = _canon(u), _canon(v)
    return [FundamentalTetrahedron((u, v, s[i], s[(i + 1) % 6])) for i in range(6)]


# (0, 1, sigma, inf)
STANDARD_TETRA = FundamentalTetrahedron((point(0), point(1), point(SIGMA), INF))
