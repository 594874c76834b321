"""Closed paths in the tetrahedral graph and the friezes they generate.

Enumeration works on angle sequences anchored at v0 = 1/0, v1 = 0/1.  The last
three angles are forced by the closing conditions, so the search only branches
on a_1 .. a_(m-3), and a backward continuant bound keeps the denominators small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .eisenstein import INF, ONE, UNITS, ZERO, EInt, ProjPoint, det2, point_eq, reduce, sector
from .graph import det_length_sq
from .paths import AngleSeq, Mode, PathRep, angle_sequence, path_from_angles, skew_normalise, skew_to_normalised
from .tilings import ProductMode, TilingWindow, check_window, tiling_from_paths

MIN_PERIOD = 4
MAX_PERIOD = 10


class FriezeError(ValueError):
    pass


def _unit_normal(p: ProjPoint) -> ProjPoint:
    # canonical representative of an irreducible fraction, without a gcd
    k = p.unit_key()
    return ProjPoint(EInt(k[0], k[1]), EInt(k[2], k[3]))


@dataclass(frozen=True)
class ClosedPath:
    """Vertices v_0 .. v_(m-1) of a closed path, as points; v_m = v_0."""

    points: tuple[ProjPoint, ...]

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        m = len(pts)
        # unit determinants between neighbours already certify irreducibility
        if not all(det2(pts[i], pts[(i + 1) % m]).norm() == 1 for i in range(m)):
            pts = tuple(reduce(p) for p in pts)
        for i in range(m):
            if det2(pts[i], pts[(i + 1) % m]).norm() != 1:
                raise FriezeError(f"v{i} and v{(i + 1) % m} are not adjacent")
        object.__setattr__(self, "points", tuple(_unit_normal(p) for p in pts))

    @property
    def period(self) -> int:
        return len(self.points)

    def is_self_intersecting(self) -> bool:
        keys = [p.key() for p in self.points]
        return len(set(keys)) != len(keys)

    def unrolled(self, start: int, count: int) -> list[ProjPoint]:
        m = self.period
        return [self.points[(start + i) % m] for i in range(count)]

    def skew_lift(self, count: int | None = None, start: int = 0, reverse: bool = False) -> PathRep:
        m = self.period
        pts = list(self.points[::-1]) if reverse else list(self.points)
        n = count if count is not None else m + 2
        seq = [pts[(start + i) % m] for i in range(n)]
        return skew_normalise(seq)

    def quiddity(self, start: int = 0, reverse: bool = False) -> tuple[EInt, ...]:
        """Angles a_1 .. a_m of a skew lift starting at v_start."""
        return angle_sequence(self.skew_lift(start=start, reverse=reverse)).values

    def angle_norms(self) -> list[int]:
        m = self.period
        return [det_length_sq(self.points[(i - 1) % m], self.points[(i + 1) % m]) for i in range(m)]


@dataclass(frozen=True)
class Frieze:
    period: int
    window: TilingWindow
    band: tuple[tuple[EInt, ...], ...]
    zero_witness: tuple[int, int] | None

    @property
    def height(self) -> int:
        return len(self.band[0]) if self.band else 0

    @property
    def zero_free(self) -> bool:
        return self.zero_witness is None


def frieze_from_closed_path(c: ClosedPath, rows: int | None = None) -> Frieze:
    """Det-mode tiling of a normalised lift of the path against itself.

    band[i] lists m_(i, i+d) for d = 2 .. m-2, which is the frieze of height m - 3.
    """
    m = c.period
    if m <= 3:
        raise FriezeError("period must exceed 3")
    rows = rows if rows is not None else m
    n = rows + m
    lift = skew_to_normalised(skew_normalise(c.unrolled(0, n)))
    w = tiling_from_paths(lift, lift, ProductMode.DET, range(0, rows), range(0, n))
    band = tuple(tuple(w[i, i + d] for d in range(2, m - 1)) for i in range(rows))
    witness = None
    for i, row in enumerate(band):
        for k, x in enumerate(row):
            if not x:
                witness = (i, i + k + 2)
                break
        if witness:
            break
    return Frieze(m, w, band, witness)


@dataclass(frozen=True)
class QuiddityReport:
    period: int
    bound: int
    norms: tuple[int, ...]
    passed: bool

    def as_dict(self) -> dict:
        return {"period": self.period, "bound": self.bound, "norms": list(self.norms), "pass": self.passed}


def quiddity_bound_check(c: ClosedPath) -> QuiddityReport:
    """norm(a_i) <= (m - 2)^2 for every angle of the closed path."""
    if c.is_self_intersecting():
        raise FriezeError("path is self-intersecting")
    m = c.period
    norms = tuple(c.angle_norms())
    bound = (m - 2) ** 2
    return QuiddityReport(m, bound, norms, all(x <= bound for x in norms))


def _ball(center_num: EInt, center_den: EInt, radius_sq_num: int, radius_sq_den: int, max_norm: int) -> Iterator[EInt]:
    """Elements a with |a - num/den|^2 <= rnum/rden and norm(a) <= max_norm.

    Floats only size the scan; membership is decided exactly by
    |a*den - num|^2 * rden <= rnum * N(den), in plain integer arithmetic.
    """
    n0, n1 = center_num
    d0, d1 = center_den
    nd = d0 * d0 + d0 * d1 + d1 * d1
    # c = num * conj(den); conj(d0 + d1 s) = (d0 + d1) - d1 s
    e0, e1 = d0 + d1, -d1
    c0 = n0 * e0 - n1 * e1
    c1 = n0 * e1 + n1 * e0 + n1 * e1
    cx = (c0 + c1 / 2) / nd
    cy = (c1 * _H) / nd
    r = math.sqrt(radius_sq_num / radius_sq_den) + 1e-9
    rhs = radius_sq_num * nd
    for b in range(math.floor((cy - r) / _H) - 1, math.ceil((cy + r) / _H) + 2):
        dy = r * r - (b * _H - cy) ** 2
        if dy < -1e-9:
            continue
        dx = math.sqrt(max(dy, 0.0))
        for a in range(math.floor(cx - dx - b / 2) - 1, math.ceil(cx + dx - b / 2) + 2):
            if a * a + a * b + b * b > max_norm:
                continue
            # a*den - num
            bd = b * d1
            x0 = a * d0 - bd - n0
            x1 = a * d1 + b * d0 + bd - n1
            if (x0 * x0 + x0 * x1 + x1 * x1) * radius_sq_den <= rhs:
                yield EInt(a, b)


_H = math.sqrt(3) / 2


def _box(max_norm: int) -> list[EInt]:
    r = int(math.isqrt(max_norm)) + 2
    out = [EInt(a, b) for a in range(-2 * r, 2 * r + 1) for b in range(-2 * r, 2 * r + 1) if EInt(a, b).norm() <= max_norm]
    out.sort(key=lambda z: (z.norm(), z.a, z.b))
    return out


def _caps_for(m: int, max_norm: int) -> list[int]:
    M = math.isqrt(max_norm)
    if M * M < max_norm:
        M += 1
    return _continuant_caps(m, M)


def _continuant_caps(m: int, M: int) -> list[int]:
    """caps[j] bounds |q_(m-1-j)|: C(0) = 1, C(1) = M, C(j) = M C(j-1) + C(j-2)."""
    caps = [1, M]
    while len(caps) < m + 2:
        caps.append(M * caps[-1] + caps[-2])
    return caps


@dataclass(frozen=True)
class SearchConfig:
    """Enumeration settings.

    prune_quiddity: enforce norm(a) <= (m-2)^2 during the search.
    prune_symmetry: require a_1 to have maximal norm and arg in [0, 2 pi/3).
    box_norm: angle norm cap when the quiddity prune is off (default m^2).
    conjugation: include complex conjugation among the dedup symmetries.
    group: "pgl2" (all six unit rescalings) or "sl2" (only sigma^2k).
    """

    prune_quiddity: bool = True
    prune_symmetry: bool = True
    box_norm: int | None = None
    conjugation: bool = True
    group: str = "pgl2"


@dataclass
class EnumerationResult:
    period: int
    paths: list[ClosedPath]
    quiddities: list[tuple[EInt, ...]]
    raw_count: int
    nodes: int
    config: SearchConfig
    truncated: bool = False
    keys: list[tuple] = field(default_factory=list)


class LimitExhausted(RuntimeError):
    pass


def _scaled(a: Sequence[EInt], w: EInt) -> list[EInt]:
    # a_i * w^((-1)^(i+1)), positions 1..m
    wi = w.unit_inverse()
    return [x * (w if (k + 1) % 2 else wi) for k, x in enumerate(a)]


def _key_from_lift(lift: Sequence[EInt], m: int, units: Sequence[EInt], conjugation: bool) -> tuple:
    # table[k][e] = lift[k] * sigma^e as a pair; conjugates alongside
    table = []
    for x in lift:
        a, b = x
        row = []
        for _ in range(6):
            row.append((a, b))
            a, b = -b, a + b  # times sigma
        table.append(row)
    tabs = [table]
    if conjugation:
        tabs.append([[(y[0] + y[1], -y[1]) for y in row] for row in table])
    exps = [UNITS.index(w) for w in units]
    # (table, start, even exponent, odd exponent); odd starts negate every angle
    choices = []
    for tab in tabs:
        for s in range(m):
            shift = 3 if s % 2 else 0
            for e in exps:
                choices.append((tab, s, (e + shift) % 6, (-e + shift) % 6))
    # lexicographic minimum, filtering position by position
    for k in range(m):
        vals = [c[0][c[1] + k][c[2] if k % 2 == 0 else c[3]] for c in choices]
        low = min(vals)
        choices = [c for c, v in zip(choices, vals) if v == low]
        if len(choices) == 1:
            break
    tab, s, ev, od = choices[0]
    return tuple(tab[s + k][ev if k % 2 == 0 else od] for k in range(m))


def _m(x: tuple, y: tuple) -> tuple:
    bd = x[1] * y[1]
    return (x[0] * y[0] - bd, x[0] * y[1] + x[1] * y[0] + bd)


def _lift_angles(points: Sequence[ProjPoint], count: int) -> list[EInt]:
    """Angles of the skew lift of the cyclic sequence ``points`` (integer pairs only)."""
    m = len(points)
    raw = [(tuple(p.p), tuple(p.q)) for p in points]
    out = [raw[0]]
    for k in range(1, count):
        r = raw[k % m]
        v = out[-1]
        d = _m(v[0], r[1])
        e = _m(v[1], r[0])
        d = (d[0] - e[0], d[1] - e[1])
        # det is a unit; its inverse is its conjugate, times the skew sign
        u = (d[0] + d[1], -d[1]) if (k - 1) % 2 == 0 else (-d[0] - d[1], d[1])
        out.append((_m(r[0], u), _m(r[1], u)))
    angles = []
    for i in range(1, count - 1):
        a, b = out[i - 1], out[i + 1]
        x = _m(a[0], b[1])
        y = _m(a[1], b[0])
        dd = (x[0] - y[0], x[1] - y[1])
        angles.append(EInt(dd[0], dd[1]) if i % 2 else EInt(-dd[0], -dd[1]))
    return angles


def canonical_key(c: ClosedPath, conjugation: bool = True, group: str = "pgl2") -> tuple:
    """Smallest angle tuple over rotations, reversal, unit rescaling and optionally conjugation.

    Rotations are read off one long lift: the window starting at s is a
    re-normalisation of a fresh lift, with every angle negated when s is odd.
    """
    units = UNITS if group == "pgl2" else (UNITS[0], UNITS[2], UNITS[4])
    m = c.period
    keys = []
    for reverse in (False, True):
        pts = c.points[::-1] if reverse else c.points
        lift = _lift_angles(pts, 2 * m + 1)
        keys.append(_key_from_lift(lift, m, units, conjugation))
    return min(keys)


def closed_path_from_angles(a: Sequence[EInt]) -> ClosedPath:
    """Closed path from a full angle cycle a_1 .. a_m anchored at 1/0, 0/1."""
    m = len(a)
    path = path_from_angles(ProjPoint(ONE, ZERO), ProjPoint(ZERO, ONE), AngleSeq(tuple(a), 1))
    v = path.vertices
    if not point_eq(v[m], v[0]) or not point_eq(v[m + 1], v[1]):
        raise FriezeError("angles do not close up")
    return ClosedPath(tuple(v[:m]))


def enumerate_closed_paths(m: int, limit: int | None = 100_000, config: SearchConfig = SearchConfig()) -> EnumerationResult:
    """Closed non-self-intersecting paths of period m, deduplicated up to symmetry."""
    if not MIN_PERIOD <= m <= MAX_PERIOD:
        raise FriezeError(f"period must lie in {MIN_PERIOD}..{MAX_PERIOD}")
    M2 = (m - 2) ** 2 if config.prune_quiddity else (config.box_norm if config.box_norm is not None else m * m)
    box = _box(M2)
    # norm cap on every angle and the matching continuant caps; with the symmetry
    # prune a_1 has maximal norm, so both tighten once a_1 is chosen
    state = {"M2": M2, "caps": _caps_for(m, M2)}
    raw = 0
    nodes = 0
    found: dict[tuple, ClosedPath] = {}
    quids: dict[tuple, tuple[EInt, ...]] = {}

    v0 = ProjPoint(ONE, ZERO)
    v1 = ProjPoint(ZERO, ONE)
    verts: list[ProjPoint] = [v0, v1]
    keys: set = {v0.unit_key(), v1.unit_key()}
    angles: list[EInt] = []

    def cap_ok(q: EInt, k: int) -> bool:
        # |q_k| <= C(m-1-k)
        j = m - 1 - k
        return j < 0 or q.norm() <= state["caps"][j] ** 2

    def finish() -> None:
        nonlocal raw
        # v_(m-2) is the last chosen vertex; a_(m-2) makes q_(m-1) a unit
        vm3, vm2 = verts[-2], verts[-1]
        if not vm2.q:
            return
        for eps in UNITS:
            num = eps - vm3.q
            if not vm2.q.divides(num):
                continue
            a = num.exact_div(vm2.q)
            if a.norm() > state["M2"]:
                continue
            vm1 = ProjPoint(vm3.p + a * vm2.p, vm3.q + a * vm2.q)
            if vm1.unit_key() in keys:
                continue
            # a_(m-1) sends q_m to zero
            b = -(vm2.q.exact_div(vm1.q))
            vm = ProjPoint(vm2.p + b * vm1.p, vm2.q + b * vm1.q)
            assert not vm.q
            # a_m returns to 0/1
            c_ = -(vm1.p.exact_div(vm.p))
            full = angles + [a, b, c_]
            if any(x.norm() > state["M2"] for x in (b, c_)):
                continue
            # distinct unit keys already rule out revisited vertices
            cp = ClosedPath(tuple(verts + [vm1]))
            raw += 1
            key = canonical_key(cp, config.conjugation, config.group)
            if key not in found:
                found[key] = cp
                quids[key] = tuple(full)
                if limit is not None and len(found) > limit:
                    raise LimitExhausted(f"more than {limit} classes")

    def candidates(k: int) -> Iterator[EInt]:
        # choose a_k, producing v_(k+1); q_(k+1) = q_(k-1) + a_k q_k
        prev, cur = verts[-2], verts[-1]
        j = m - 1 - (k + 1)
        if cur.q and j >= 0:
            cap2 = state["caps"][j] ** 2
            yield from _ball(-prev.q, cur.q, cap2, cur.q.norm(), state["M2"])
        else:
            yield from box

    def dfs(k: int) -> None:
        nonlocal nodes
        if k == m - 2:
            finish()
            return
        for a in candidates(k):
            nodes += 1
            if k == 1 and config.prune_symmetry and sector(a) >= 2:
                continue
            prev, cur = verts[-2], verts[-1]
            nxt = ProjPoint(prev.p + a * cur.p, prev.q + a * cur.q)
            if not cap_ok(nxt.q, k + 1):
                continue
            key = nxt.unit_key()
            if key in keys:
                continue
            verts.append(nxt)
            keys.add(key)
            angles.append(a)
            if k == 1 and config.prune_symmetry:
                saved = dict(state)
                state["M2"] = a.norm()
                state["caps"] = _caps_for(m, a.norm())
                if cap_ok(nxt.q, 2):
                    dfs(k + 1)
                state.update(saved)
            else:
                dfs(k + 1)
            angles.pop()
            keys.discard(key)
            verts.pop()

    dfs(1)
    ordered = sorted(found)
    return EnumerationResult(
        m,
        [found[k] for k in ordered],
        [quids[k] for k in ordered],
        raw,
        nodes,
        config,
        keys=ordered,
    )


def real_quiddity(c: ClosedPath) -> tuple[int, ...] | None:
    """Integer Conway-Coxeter quiddity c_i = (-1)^i a_i if some rescaling makes all angles integral."""
    q = c.quiddity()
    for w in UNITS:
        s = _scaled(q, w)
        if all(x.b == 0 for x in s):
            return tuple((-1 if (i + 1) % 2 else 1) * x.a for i, x in enumerate(s))
    return None
