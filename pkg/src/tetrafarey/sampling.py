"""Seeded random generators for property checks and experiments."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .eisenstein import ONE, UNITS, ZERO, EInt, ProjPoint, UnimodularMatrix, gcd, reduce
from .graph import STANDARD_TETRA, FundamentalTetrahedron
from .paths import AngleSeq, Mode, PathRep, path_from_angles, skew_to_normalised
from .tilings import ProductMode, TilingTriple, TilingWindow, tiling_from_paths


_SL2 = UnimodularMatrix._trusted
_INVERSION = UnimodularMatrix(ZERO, -ONE, ONE, ZERO, True)


@dataclass(frozen=True)
class SamplerConfig:
    coeff_bound: int = 6
    matrix_steps: int = 6
    angle_norm_bound: int = 7
    max_window: int = 8


def rand_eint(rng: random.Random, bound: int) -> EInt:
    return EInt(rng.randint(-bound, bound), rng.randint(-bound, bound))


def rand_eint_norm(rng: random.Random, max_norm: int, nonzero: bool = False) -> EInt:
    """Uniform over elements with norm <= max_norm (rejection from a box)."""
    r = int(max_norm**0.5) + 1
    while True:
        x = EInt(rng.randint(-2 * r, 2 * r), rng.randint(-2 * r, 2 * r))
        if x.norm() <= max_norm and (x or not nonzero):
            return x


def rand_unit(rng: random.Random) -> EInt:
    return rng.choice(UNITS)


def rand_sl2(rng: random.Random, steps: int = 6, bound: int = 3) -> UnimodularMatrix:
    """Random product of elementary matrices and z -> -1/z."""
    m = UnimodularMatrix.identity()
    for _ in range(steps):
        t = rand_eint(rng, bound)
        # elementary shears and the inversion all have determinant 1
        e = _SL2(ONE, t, ZERO, ONE, True) if rng.random() < 0.5 else _SL2(ONE, ZERO, t, ONE, True)
        m = m @ e
        if rng.random() < 0.5:
            m = m @ _INVERSION
    return m


def rand_gl2(rng: random.Random, steps: int = 6, bound: int = 3) -> UnimodularMatrix:
    m = rand_sl2(rng, steps, bound)
    return m @ UnimodularMatrix.diag(rand_unit(rng), ONE)


def rand_point(rng: random.Random, bound: int = 20, finite: bool = False) -> ProjPoint:
    while True:
        p, q = rand_eint(rng, bound), rand_eint(rng, bound)
        if (q or (not finite and p)) and (p or q) and gcd(p, q).is_unit():
            return reduce(ProjPoint(p, q))


def rand_point_qnorm(rng: random.Random, max_qnorm: int) -> ProjPoint:
    """Irreducible finite fraction with norm(q) <= max_qnorm."""
    while True:
        q = rand_eint_norm(rng, max_qnorm, nonzero=True)
        n = q.norm()
        r = int(n**0.5) + 2
        p = EInt(rng.randint(-3 * r, 3 * r), rng.randint(-3 * r, 3 * r))
        if gcd(p, q).is_unit():
            return ProjPoint(p, q)


def rand_tetra(rng: random.Random, steps: int = 6) -> tuple[FundamentalTetrahedron, UnimodularMatrix]:
    m = rand_gl2(rng, steps)
    return STANDARD_TETRA.mapped(m), m


def rand_angles(rng: random.Random, n: int, base_index: int, max_norm: int = 7) -> AngleSeq:
    return AngleSeq(tuple(rand_eint_norm(rng, max_norm) for _ in range(n)), base_index)


def rand_skew_path(rng: random.Random, rows: range, max_norm: int = 7, steps: int = 4) -> PathRep:
    """Skew-normalised path on the index window ``rows`` (which must contain 0 and 1)."""
    angles = rand_angles(rng, len(rows) - 2, rows.start + 1, max_norm)
    A = rand_sl2(rng, steps)
    u0, u1 = A.columns()
    return path_from_angles(u0, u1, angles, 0)


def rand_normalised_path(rng: random.Random, rows: range, max_norm: int = 7, steps: int = 4) -> PathRep:
    return skew_to_normalised(rand_skew_path(rng, rows, max_norm, steps))


def rand_window_range(rng: random.Random, max_size: int = 8, min_size: int = 3, need: tuple[int, ...] = (0, 1)) -> range:
    lo_need, hi_need = min(need), max(need)
    size = rng.randint(max(min_size, hi_need - lo_need + 1), max_size)
    start = rng.randint(hi_need - size + 1, lo_need)
    return range(start, start + size)


def rand_window(rng: random.Random, mode: ProductMode | str = ProductMode.SCALAR, cfg: SamplerConfig = SamplerConfig(), need: tuple[int, ...] = (0, 1)) -> TilingWindow:
    rows = rand_window_range(rng, cfg.max_window, need=need)
    cols = rand_window_range(rng, cfg.max_window, need=need)
    u = rand_normalised_path(rng, rows, cfg.angle_norm_bound)
    v = rand_normalised_path(rng, cols, cfg.angle_norm_bound)
    return tiling_from_paths(u, v, mode)


def rand_triple(rng: random.Random, rows: range, cols: range, max_norm: int = 7) -> TilingTriple:
    a = rand_angles(rng, len(rows) - 2, rows.start + 1, max_norm)
    b = rand_angles(rng, len(cols) - 2, cols.start + 1, max_norm)
    return TilingTriple(a, b, rand_sl2(rng, 4))


def rand_real_normalised_path(rng: random.Random, rows: range, bound: int = 3) -> PathRep:
    """Normalised path inside the real Farey graph (integer angles, integer seeds)."""
    angles = AngleSeq(tuple(EInt(rng.randint(-bound, bound)) for _ in range(len(rows) - 2)), rows.start + 1)
    A = rand_sl2_real(rng)
    u0, u1 = A.columns()
    return skew_to_normalised(path_from_angles(u0, u1, angles, 0))


def rand_sl2_real(rng: random.Random, steps: int = 4, bound: int = 3) -> UnimodularMatrix:
    m = UnimodularMatrix.identity()
    for _ in range(steps):
        t = EInt(rng.randint(-bound, bound))
        m = m @ (UnimodularMatrix(ONE, t, ZERO, ONE, True) if rng.random() < 0.5 else UnimodularMatrix(ONE, ZERO, t, ONE, True))
    return m


__all__ = [name for name in dir() if name.startswith("rand_")] + ["SamplerConfig", "Mode"]
