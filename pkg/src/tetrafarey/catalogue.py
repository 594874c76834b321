"""Worked configurations used by the tests, scripts and CLI demos."""

from __future__ import annotations

from .eisenstein import ONE, SIGMA, SIGMA_BAR, ZERO, EInt, ProjPoint, sigma_pow
from .graph import STANDARD_TETRA
from .paths import Mode, PathRep

# four consecutive representatives of each path; the rest follow by a unit twist
_U_SEED = (
    ProjPoint(ONE, ZERO),
    ProjPoint(ZERO, ONE),
    ProjPoint(-ONE, -ONE),
    ProjPoint(SIGMA_BAR, -SIGMA),
)
_V_SEED = (
    ProjPoint(ZERO, -SIGMA_BAR),
    ProjPoint(SIGMA, SIGMA_BAR),
    ProjPoint(-ONE, ONE),
    ProjPoint(-ONE, ZERO),
)

# the 4x4 block on rows/columns 0..3 in scalar mode
PERIODIC_BLOCK = (
    (ZERO, SIGMA, -ONE, -ONE),
    (-SIGMA_BAR, SIGMA_BAR, ONE, ZERO),
    (SIGMA_BAR, -ONE, ZERO, ONE),
    (ONE, ZERO, -ONE, -SIGMA_BAR),
)


def _quasi_periodic(seed, parity_shift: int, idx: int) -> ProjPoint:
    # v_(i+4) = w_i v_i with w_i = sigma^((-1)^(i + parity_shift))
    k, r = divmod(idx, 4)
    e = 1 if (r + parity_shift) % 2 == 0 else -1
    w = sigma_pow(e * k)
    return seed[r].scale(w)


def periodic_u(idx: int) -> ProjPoint:
    return _quasi_periodic(_U_SEED, 1, idx)


def periodic_v(idx: int) -> ProjPoint:
    return _quasi_periodic(_V_SEED, 0, idx)


def periodic_paths(rows: range = range(0, 4), cols: range = range(0, 4)) -> tuple[PathRep, PathRep]:
    """Normalised quasi-periodic paths through (inf, 0, 1, sigma) and (0, sigma^2, -1, inf)."""
    u = PathRep(tuple(periodic_u(i) for i in rows), Mode.NORMALISED, rows.start)
    v = PathRep(tuple(periodic_v(j) for j in cols), Mode.NORMALISED, cols.start)
    return u, v


def block_law_exponent(i: int, j: int, k: int, l: int) -> int:
    """Exponent e with m_(i+4k, j+4l) = sigma^e m_(i,j) for the periodic example."""
    return (k if i % 2 else -k) + (l if j % 2 == 0 else -l)


def stated_block_exponent(k: int, l: int) -> int:
    """The uniform exponent l - k, which is only correct on the (even, even) parity class."""
    return l - k


PINNED_X = ProjPoint(EInt(2), ONE)
STANDARD = STANDARD_TETRA
