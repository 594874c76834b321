"""Exact computations on the tetrahedral Farey graph over the Eisenstein integers."""

from .eisenstein import (
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
    mobius_apply,
    norm,
    point,
    point_eq,
    reduce,
    xgcd,
)

__version__ = "0.1.0"
