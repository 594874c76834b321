"""Tame SL2(Z[sigma])-tilings on finite windows.

A window stores entries m[i][j] for absolute rows row_offset.. and columns
col_offset..; every operation states its contract on the window only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Sequence

from .eisenstein import (
    ONE,
    ZERO,
    EInt,
    ProjPoint,
    UnimodularMatrix,
    det2,
    sector,
    sigma_pow,
)
from .paths import (
    AngleSeq,
    Mode,
    PathError,
    PathRep,
    angle_sequence,
    normalised_to_skew,
    path_from_angles,
    skew_to_normalised,
)


class ProductMode(str, Enum):
    SCALAR = "scalar"
    DET = "det"


class TilingError(ValueError):
    pass


@dataclass(frozen=True)
class TilingWindow:
    row_offset: int
    col_offset: int
    entries: tuple[tuple[EInt, ...], ...]
    generators: tuple | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        rows = tuple(tuple(EInt.coerce(x) for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise TilingError("empty window")
        if any(len(r) != len(rows[0]) for r in rows):
            raise TilingError("ragged window")
        object.__setattr__(self, "entries", rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    @property
    def rows(self) -> range:
        return range(self.row_offset, self.row_offset + self.shape[0])

    @property
    def cols(self) -> range:
        return range(self.col_offset, self.col_offset + self.shape[1])

    def __getitem__(self, ij: tuple[int, int]) -> EInt:
        i, j = ij
        if i not in self.rows or j not in self.cols:
            raise IndexError(f"({i}, {j}) outside the window")
        return self.entries[i - self.row_offset][j - self.col_offset]

    def same_entries(self, other: TilingWindow) -> bool:
        return (self.row_offset, self.col_offset, self.entries) == (other.row_offset, other.col_offset, other.entries)

    def sub(self, rows: range, cols: range) -> TilingWindow:
        return TilingWindow(rows.start, cols.start, tuple(tuple(self[i, j] for j in cols) for i in rows))


def _as_det_partner(v: ProjPoint) -> ProjPoint:
    # det(u, (-s, r)) = p r + q s, the scalar product with v = (r, s)
    return ProjPoint(-v.q, v.p)


def _as_scalar_partner(v: ProjPoint) -> ProjPoint:
    return ProjPoint(v.q, -v.p)


def entry(u: ProjPoint, v: ProjPoint, mode: ProductMode) -> EInt:
    if ProductMode(mode) is ProductMode.SCALAR:
        return u.p * v.p + u.q * v.q
    return u.p * v.q - u.q * v.p


def tiling_from_paths(
    u: PathRep, v: PathRep, mode: ProductMode | str = ProductMode.SCALAR, rows: range | None = None, cols: range | None = None
) -> TilingWindow:
    mode = ProductMode(mode)
    for name, path in (("u", u), ("v", v)):
        if path.mode is not Mode.NORMALISED:
            raise PathError(f"path {name} is not normalised")
    rows = rows if rows is not None else u.indices
    cols = cols if cols is not None else v.indices
    ents = tuple(tuple(entry(u[i], v[j], mode) for j in cols) for i in rows)
    return TilingWindow(rows.start, cols.start, ents, (u, v, mode))


def _det2x2(a: EInt, b: EInt, c: EInt, d: EInt) -> EInt:
    return a * d - b * c


def _det3x3(m: Sequence[Sequence[EInt]]) -> EInt:
    (a, b, c), (d, e, f), (g, h, k) = m
    return a * (e * k - f * h) - b * (d * k - f * g) + c * (d * h - e * g)


@dataclass(frozen=True)
class WindowCheck:
    sl2_ok: bool
    tame_ok: bool
    first_violation: dict | None

    @property
    def ok(self) -> bool:
        return self.sl2_ok and self.tame_ok

    def as_dict(self) -> dict:
        return {"sl2_ok": self.sl2_ok, "tame_ok": self.tame_ok, "first_violation": self.first_violation}


def check_window(w: TilingWindow, require_tame: bool = True) -> WindowCheck:
    R, C = w.shape
    if R < 2 or C < 2:
        raise TilingError("window too small for the 2x2 check")
    if require_tame and (R < 3 or C < 3):
        raise TilingError("window too small for the 3x3 check")
    e = w.entries
    first = None
    sl2 = True
    for i in range(R - 1):
        for j in range(C - 1):
            d = _det2x2(e[i][j], e[i][j + 1], e[i + 1][j], e[i + 1][j + 1])
            if d != ONE:
                sl2 = False
                if first is None:
                    first = {"kind": "2x2", "row": w.row_offset + i, "col": w.col_offset + j, "det": list(d)}
    tame = True
    if require_tame:
        for i in range(R - 2):
            for j in range(C - 2):
                d = _det3x3([row[j : j + 3] for row in e[i : i + 3]])
                if d:
                    tame = False
                    if first is None:
                        first = {"kind": "3x3", "row": w.row_offset + i, "col": w.col_offset + j, "det": list(d)}
    return WindowCheck(sl2, tame, first)


def paths_from_tiling(w: TilingWindow, mode: ProductMode | str = ProductMode.SCALAR) -> tuple[PathRep, PathRep]:
    """Normalised paths u, v with u_0 = 1/0, u_1 = 0/1 that reproduce the window.

    Rows 0 and 1 must lie inside the window.
    """
    mode = ProductMode(mode)
    if 0 not in w.rows or 1 not in w.rows:
        raise TilingError("rows 0 and 1 must be inside the window")
    chk = check_window(w, require_tame=min(w.shape) >= 3)
    if not chk.ok:
        raise TilingError(f"window is not a tame SL2 tiling: {chk.first_violation}")
    cols = w.cols
    vs = [ProjPoint(w[0, j], w[1, j]) for j in cols]
    c0 = cols.start
    # B = (m00 m01; m10 m11) over the first two columns, det 1
    B = UnimodularMatrix(w[0, c0], w[0, c0 + 1], w[1, c0], w[1, c0 + 1], True)
    Bi = B.inverse()
    us = []
    for i in w.rows:
        x, y = w[i, c0], w[i, c0 + 1]
        al = x * Bi.a + y * Bi.c
        be = x * Bi.b + y * Bi.d
        us.append(ProjPoint(al, be))
    u = PathRep(tuple(us), Mode.NORMALISED, w.row_offset)
    if mode is ProductMode.DET:
        vs = [_as_det_partner(v) for v in vs]
    v = PathRep(tuple(vs), Mode.NORMALISED, w.col_offset)
    return u, v


def equivalence_transform(w: TilingWindow, k: int, l: int, flip: bool = False) -> TilingWindow:
    """Row i times sigma^((-1)^i k), column j times sigma^((-1)^j l), optional global sign."""
    s = -1 if flip else 1
    ents = tuple(
        tuple(
            w[i, j] * sigma_pow((k if i % 2 == 0 else -k) + (l if j % 2 == 0 else -l)) * s
            for j in w.cols
        )
        for i in w.rows
    )
    return TilingWindow(w.row_offset, w.col_offset, ents)


def equivalence_orbit(w: TilingWindow) -> list[TilingWindow]:
    seen = {}
    for k, l, f in product(range(6), range(6), (False, True)):
        t = equivalence_transform(w, k, l, f)
        seen.setdefault(t.entries, t)
    return list(seen.values())


def tilings_equivalent(w1: TilingWindow, w2: TilingWindow) -> bool:
    if w1.shape != w2.shape or (w1.row_offset, w1.col_offset) != (w2.row_offset, w2.col_offset):
        raise TilingError("windows differ in shape or offsets")
    return any(
        equivalence_transform(w1, k, l, f).entries == w2.entries
        for k, l, f in product(range(6), range(6), (False, True))
    )


def is_generic(w: TilingWindow) -> bool:
    """A nonzero entry in each of the four (row parity, column parity) classes."""
    seen = set()
    for i in w.rows:
        for j in w.cols:
            if w[i, j]:
                seen.add((i % 2, j % 2))
    return len(seen) == 4


@dataclass(frozen=True)
class TilingTriple:
    a: AngleSeq
    b: AngleSeq
    X: UnimodularMatrix

    def __post_init__(self) -> None:
        if self.X.det() != ONE:
            raise TilingError("det(X) must be 1")


def _seed_u(a0: EInt) -> tuple[ProjPoint, ProjPoint]:
    k = sector(a0) // 2
    c = sigma_pow(-k)
    return ProjPoint(c, ZERO), ProjPoint(ZERO, c.unit_inverse())


def _seed_d(b0: EInt) -> EInt:
    return sigma_pow(sector(b0) // 2)


def _need_zero(seq: AngleSeq, name: str) -> EInt:
    try:
        return seq[0]
    except IndexError:
        raise TilingError(f"the angle sequence {name} must include index 0") from None


def _window_path(v0: ProjPoint, v1: ProjPoint, angles: AngleSeq, rng: range) -> PathRep:
    path = path_from_angles(v0, v1, angles, 0)
    if rng.start < path.base_index or rng.stop - 1 > path.last_index:
        raise TilingError(f"angles do not cover indices {rng.start}..{rng.stop - 1}")
    k = rng.start - path.base_index
    return PathRep(path.vertices[k : k + len(rng)], Mode.SKEW, rng.start)


def triple_to_tiling(t: TilingTriple, rows: range, cols: range) -> TilingWindow:
    """Deterministic det-mode tiling from a triple, with the canonical seeds."""
    a0 = _need_zero(t.a, "a")
    b0 = _need_zero(t.b, "b")
    u0, u1 = _seed_u(a0)
    d = _seed_d(b0)
    X = t.X
    v0 = ProjPoint(X.a * d.unit_inverse(), X.c * d.unit_inverse())
    v1 = ProjPoint(X.b * d, X.d * d)
    u = skew_to_normalised(_window_path(u0, u1, t.a, rows))
    v = skew_to_normalised(_window_path(v0, v1, t.b, cols))
    return tiling_from_paths(u, v, ProductMode.DET, rows, cols)


def tiling_to_triple(w: TilingWindow) -> TilingTriple:
    """Inverse of triple_to_tiling.  Rows and columns -1, 0, 1 must be inside the window."""
    for idx in (-1, 0, 1):
        if idx not in w.rows or idx not in w.cols:
            raise TilingError("rows and columns -1, 0, 1 must lie inside the window")
    u, v = paths_from_tiling(w, ProductMode.DET)
    su, sv = normalised_to_skew(u), normalised_to_skew(v)
    a = angle_sequence(su)
    b = angle_sequence(sv)
    u0, u1 = _seed_u(a[0])
    # recovered u has u_0 = 1/0 and u_1 = 0/1, so the map to the canonical seeds is C itself
    C = UnimodularMatrix.from_columns(u0, u1, True)
    v0, v1 = C.apply(sv[0]), C.apply(sv[1])
    d = _seed_d(b[0])
    X = UnimodularMatrix(v0.p * d, v1.p * d.unit_inverse(), v0.q * d, v1.q * d.unit_inverse(), True)
    return TilingTriple(a, b, X)


def triples_equivalent(t1: TilingTriple, t2: TilingTriple, relation: str = "seeded") -> bool:
    """Equivalence of triples: angle sequences related by a re-normalisation, X twisted to match.

    The default ``"seeded"`` relation is the one preserved by triple_to_tiling:
    the arg-dependent seeds absorb the rescaling of a_0 and b_0, and whatever
    is left over, (kx, lx), acts as X -> diag(s^-kx, s^kx) X diag(s^lx, s^-lx).
    ``"full"`` is the twist by the full (k, l), X -> diag(s^l, s^-l) X diag(s^-k, s^k),
    which in general does not preserve the tiling class.
    """
    if relation not in ("seeded", "full"):
        raise ValueError(f"unknown relation {relation!r}")
    for k in range(3):
        if not _angles_scaled(t1.a, t2.a, k):
            continue
        for l in range(3):
            if not _angles_scaled(t1.b, t2.b, l):
                continue
            if relation == "seeded":
                kx = k - _seed_shift(t1.a, t2.a)
                lx = l - _seed_shift(t1.b, t2.b)
                Xt = _diag(-kx) @ t1.X @ _diag(lx)
            else:
                Xt = _diag(l) @ t1.X @ _diag(-k)
            if Xt == t2.X or (-Xt) == t2.X:
                return True
    return False


def _diag(e: int) -> UnimodularMatrix:
    return UnimodularMatrix.diag(sigma_pow(e), sigma_pow(-e))


def _seed_shift(a: AngleSeq, b: AngleSeq) -> int:
    # how far the canonical seed exponent moves between the two sequences
    return sector(_need_zero(a, "a")) // 2 - sector(_need_zero(b, "b")) // 2


def _angles_scaled(a: AngleSeq, b: AngleSeq, k: int) -> bool:
    # multiplying a_i by sigma^((-1)^(i+1) 2k)
    if a.indices != b.indices:
        return False
    return all(a[i] * sigma_pow(2 * k * (1 if i % 2 else -1)) == b[i] for i in a.indices)


def canonical_x(X: UnimodularMatrix) -> UnimodularMatrix:
    """Pick the sign of X whose first nonzero entry has argument in [0, pi)."""
    first = next(e for e in X.entries() if e)
    return X if sector(first) < 3 else -X


@dataclass(frozen=True)
class CoplanarReport:
    coplanar: bool
    all_integer: bool
    witness: dict | None

    def as_dict(self) -> dict:
        return {"coplanar": self.coplanar, "all_integer": self.all_integer, "witness": self.witness}


def coplanarity_test(w: TilingWindow) -> CoplanarReport:
    """Two consecutive all-integer rows and two consecutive all-integer columns."""
    R, C = w.shape
    e = w.entries
    int_rows = [all(x.b == 0 for x in e[i]) for i in range(R)]
    int_cols = [all(e[i][j].b == 0 for i in range(R)) for j in range(C)]
    row_pair = next((i for i in range(R - 1) if int_rows[i] and int_rows[i + 1]), None)
    col_pair = next((j for j in range(C - 1) if int_cols[j] and int_cols[j + 1]), None)
    coplanar = row_pair is not None and col_pair is not None
    witness = None
    if coplanar:
        witness = {"rows": [w.row_offset + row_pair, w.row_offset + row_pair + 1], "cols": [w.col_offset + col_pair, w.col_offset + col_pair + 1]}
    return CoplanarReport(coplanar, all(int_rows), witness)
