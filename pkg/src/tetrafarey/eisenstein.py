"""Exact arithmetic in Z[sigma], sigma = exp(i*pi/3), and its projective line.

Elements are stored as a + b*sigma with Python ints, using sigma**2 = sigma - 1
and conj(sigma) = 1 - sigma.  Nothing in this module touches floats except the
explicit ``to_complex`` helpers.
"""

from __future__ import annotations

import math
from operator import itemgetter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

SQRT3_2 = math.sqrt(3.0) / 2.0

IntLike = Union[int, "EInt"]


class EInt(tuple):
    """Eisenstein integer a + b*sigma, an immutable pair (a, b)."""

    __slots__ = ()

    def __new__(cls, a: int = 0, b: int = 0) -> EInt:
        return tuple.__new__(cls, (int(a), int(b)))

    a = property(itemgetter(0))
    b = property(itemgetter(1))

    @classmethod
    def coerce(cls, x: IntLike) -> EInt:
        if isinstance(x, EInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot convert {type(x).__name__} to EInt")

    def __repr__(self) -> str:
        return f"EInt({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}σ"
        return f"{self.a}{self.b:+d}σ"

    def __eq__(self, other) -> bool:
        if isinstance(other, EInt):
            return tuple.__eq__(self, other)
        if isinstance(other, int):
            return self[1] == 0 and self[0] == other
        return NotImplemented

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = tuple.__hash__

    # tuple ordering is not meaningful for ring elements
    def __lt__(self, other):
        return NotImplemented

    __le__ = __gt__ = __ge__ = __lt__

    def __len__(self) -> int:
        return 2

    def __bool__(self) -> bool:
        return bool(self[0] or self[1])

    def __neg__(self) -> EInt:
        return _mk(-self[0], -self[1])

    def __add__(self, other: IntLike) -> EInt:
        if isinstance(other, EInt):
            return _mk(self[0] + other[0], self[1] + other[1])
        if isinstance(other, int):
            return _mk(self[0] + other, self[1])
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: IntLike) -> EInt:
        if isinstance(other, EInt):
            return _mk(self[0] - other[0], self[1] - other[1])
        if isinstance(other, int):
            return _mk(self[0] - other, self[1])
        return NotImplemented

    def __rsub__(self, other: IntLike) -> EInt:
        return (-self) + other

    def __mul__(self, other: IntLike) -> EInt:
        if isinstance(other, EInt):
            a, b = self
            c, d = other
            bd = b * d
            return _mk(a * c - bd, a * d + b * c + bd)
        if isinstance(other, int):
            return _mk(self[0] * other, self[1] * other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> EInt:
        if n < 0:
            return self.unit_inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> EInt:
        a, b = self
        return _mk(a + b, -b)

    def norm(self) -> int:
        a, b = self
        return a * a + a * b + b * b

    def is_unit(self) -> bool:
        return self.norm() == 1

    def unit_inverse(self) -> EInt:
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        return self.conj()

    def to_complex(self) -> complex:
        return complex(self.a + 0.5 * self.b, SQRT3_2 * self.b)

    def divmod(self, other: IntLike) -> tuple[EInt, EInt]:
        """Euclidean division with coefficient-wise nearest rounding (ties to even)."""
        other = EInt.coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[sigma]")
        num = self * other.conj()
        quot = _mk(_round_div(num[0], n), _round_div(num[1], n))
        rem = self - quot * other
        assert rem.norm() < n, "Euclidean step failed to decrease the norm"
        return quot, rem

    def __floordiv__(self, other: IntLike) -> EInt:
        return self.divmod(other)[0]

    def __mod__(self, other: IntLike) -> EInt:
        return self.divmod(other)[1]

    def divides(self, other: IntLike) -> bool:
        other = EInt.coerce(other)
        if not self:
            return not other
        num = other * self.conj()
        n = self.norm()
        return num.a % n == 0 and num.b % n == 0

    def exact_div(self, other: IntLike) -> EInt:
        other = EInt.coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[sigma]")
        num = self * other.conj()
        if num.a % n or num.b % n:
            raise ArithmeticError(f"{other} does not divide {self}")
        return EInt(num.a // n, num.b // n)

    def sector(self) -> int:
        return sector(self)


def _round_div(x: int, n: int) -> int:
    """Nearest integer to x/n (n > 0), ties to even, in integer arithmetic."""
    q, r = divmod(x, n)
    if 2 * r > n or (2 * r == n and q % 2):
        q += 1
    return q


def _mk(a: int, b: int) -> EInt:
    # trusted constructor for results that are already ints
    return tuple.__new__(EInt, (a, b))


ZERO = EInt(0, 0)
ONE = EInt(1, 0)
SIGMA = EInt(0, 1)
SIGMA_BAR = EInt(1, -1)
# UNITS[k] == sigma**k
UNITS: tuple[EInt, ...] = (EInt(1, 0), EInt(0, 1), EInt(-1, 1), EInt(-1, 0), EInt(0, -1), EInt(1, -1))


def sigma_pow(k: int) -> EInt:
    return UNITS[k % 6]


def unit_exponent(u: EInt) -> int:
    """Return k with u == sigma**k."""
    for k, w in enumerate(UNITS):
        if w == u:
            return k
    raise ValueError(f"{u} is not a unit")


def norm(x: IntLike) -> int:
    return EInt.coerce(x).norm()


def sector(z) -> int:
    """Index k with arg(z) in [k*pi/3, (k+1)*pi/3), decided by coefficient signs.

    Works for EInt and QSigma.  arg(0) is taken to be 0.
    """
    if not z:
        return 0
    for k in range(6):
        w = z * UNITS[(-k) % 6]
        if w.a > 0 and w.b >= 0:
            return k
    raise AssertionError("unreachable: every nonzero element lies in one sector")


def gcd(x: IntLike, y: IntLike) -> EInt:
    """Greatest common divisor, defined up to a unit."""
    x, y = EInt.coerce(x), EInt.coerce(y)
    if not x and not y:
        raise ValueError("gcd(0, 0) is undefined")
    a, b = x
    c, d = y
    # Euclid on coefficient pairs; same rounding as divmod
    while c or d:
        n = c * c + c * d + d * d
        e, f = c + d, -d
        bf = b * f
        q0 = _round_div(a * e - bf, n)
        q1 = _round_div(a * f + b * e + bf, n)
        qd = q1 * d
        a, b, c, d = c, d, a - (q0 * c - qd), b - (q0 * d + q1 * c + qd)
    return _mk(a, b)


def xgcd(x: IntLike, y: IntLike) -> tuple[EInt, EInt, EInt]:
    """Return (g, s, t) with s*x + t*y == g and g a gcd of x, y."""
    x, y = EInt.coerce(x), EInt.coerce(y)
    if not x and not y:
        raise ValueError("gcd(0, 0) is undefined")
    s0, t0, s1, t1 = ONE, ZERO, ZERO, ONE
    while y:
        quot, r = x.divmod(y)
        x, y = y, r
        s0, s1 = s1, s0 - quot * s1
        t0, t1 = t1, t0 - quot * t1
    return x, s0, t0


class QSigma:
    """Element of the fraction field Q(sigma), stored as a + b*sigma with rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0) -> None:
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("QSigma is immutable")

    @classmethod
    def coerce(cls, x) -> QSigma:
        if isinstance(x, QSigma):
            return x
        if isinstance(x, EInt):
            return cls(x.a, x.b)
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot convert {type(x).__name__} to QSigma")

    @classmethod
    def ratio(cls, num: IntLike, den: IntLike) -> QSigma:
        return cls.coerce(num) / cls.coerce(den)

    def __repr__(self) -> str:
        return f"QSigma({self.a}, {self.b})"

    def __eq__(self, other) -> bool:
        try:
            other = QSigma.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __neg__(self) -> QSigma:
        return QSigma(-self.a, -self.b)

    def __add__(self, other) -> QSigma:
        other = QSigma.coerce(other)
        return QSigma(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other) -> QSigma:
        other = QSigma.coerce(other)
        return QSigma(self.a - other.a, self.b - other.b)

    def __rsub__(self, other) -> QSigma:
        return QSigma.coerce(other) - self

    def __mul__(self, other) -> QSigma:
        other = QSigma.coerce(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        bd = b * d
        return QSigma(a * c - bd, a * d + b * c + bd)

    __rmul__ = __mul__

    def conj(self) -> QSigma:
        return QSigma(self.a + self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a + self.a * self.b + self.b * self.b

    def __truediv__(self, other) -> QSigma:
        other = QSigma.coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sigma)")
        num = self * other.conj()
        return QSigma(num.a / n, num.b / n)

    def __rtruediv__(self, other) -> QSigma:
        return QSigma.coerce(other) / self

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def to_eint(self) -> EInt:
        if not self.is_integral():
            raise ValueError(f"{self} is not in Z[sigma]")
        return EInt(int(self.a), int(self.b))

    def is_real(self) -> bool:
        return self.b == 0

    def to_complex(self) -> complex:
        return complex(float(self.a) + 0.5 * float(self.b), SQRT3_2 * float(self.b))


@dataclass(frozen=True)
class ProjPoint:
    """A representative p/q of a point of Q(sigma) u {inf}.

    Dataclass equality compares representatives; use ``point_eq`` or ``same_point``
    for equality of points.
    """

    p: EInt
    q: EInt

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", EInt.coerce(self.p))
        object.__setattr__(self, "q", EInt.coerce(self.q))
        if not self.p and not self.q:
            raise ValueError("0/0 is not a point")

    def __str__(self) -> str:
        return f"({self.p})/({self.q})"

    def __iter__(self) -> Iterator[EInt]:
        yield self.p
        yield self.q

    @property
    def is_infinity(self) -> bool:
        return not self.q

    def is_irreducible(self) -> bool:
        return gcd(self.p, self.q).is_unit()

    def scale(self, u: IntLike) -> ProjPoint:
        return ProjPoint(self.p * u, self.q * u)

    def __neg__(self) -> ProjPoint:
        return ProjPoint(-self.p, -self.q)

    def reduced(self) -> ProjPoint:
        return reduce(self)

    def same_point(self, other: ProjPoint) -> bool:
        return point_eq(self, other)

    def value(self) -> QSigma:
        if self.is_infinity:
            raise ZeroDivisionError("the point at infinity has no finite value")
        return QSigma.ratio(self.p, self.q)

    def to_complex(self) -> complex | None:
        """Complex embedding; None stands for infinity."""
        if self.is_infinity:
            return None
        return self.value().to_complex()

    def key(self) -> tuple[int, int, int, int]:
        r = reduce(self)
        return (r.p.a, r.p.b, r.q.a, r.q.b)

    def unit_key(self) -> tuple[int, int, int, int]:
        """Same as key() for a representative already known to be irreducible; skips the gcd."""
        u = UNITS[(-sector(self.q)) % 6] if self.q else self.p.unit_inverse()
        p, q = self.p * u, self.q * u
        return (p[0], p[1], q[0], q[1])


INF = ProjPoint(ONE, ZERO)


def point(x: IntLike, y: IntLike = 1) -> ProjPoint:
    return ProjPoint(EInt.coerce(x), EInt.coerce(y))


def reduce(f: ProjPoint) -> ProjPoint:
    """Irreducible canonical representative: arg(q) in [0, pi/3), or p = 1 at infinity."""
    g = gcd(f.p, f.q)
    p, q = f.p.exact_div(g), f.q.exact_div(g)
    if q:
        u = UNITS[(-sector(q)) % 6]
    else:
        u = p.unit_inverse()
    return ProjPoint(p * u, q * u)


def unit_normal(f: ProjPoint) -> ProjPoint:
    """Canonical representative of a fraction already known to be irreducible (no gcd)."""
    u = UNITS[(-sector(f.q)) % 6] if f.q else f.p.unit_inverse()
    return ProjPoint(f.p * u, f.q * u)


def det2(f: ProjPoint, g: ProjPoint) -> EInt:
    """Cross determinant p1*q2 - p2*q1."""
    return f.p * g.q - g.p * f.q


def point_eq(f: ProjPoint, g: ProjPoint) -> bool:
    return not det2(f, g)


@dataclass(frozen=True)
class UnimodularMatrix:
    """2x2 matrix over Z[sigma] with unit determinant (exactly 1 when ``special``)."""

    a: EInt
    b: EInt
    c: EInt
    d: EInt
    special: bool = False

    def __post_init__(self) -> None:
        for name in "abcd":
            object.__setattr__(self, name, EInt.coerce(getattr(self, name)))
        det = self.det()
        if self.special and det != ONE:
            raise ValueError(f"determinant {det} is not 1")
        if not det.is_unit():
            raise ValueError(f"determinant {det} is not a unit")

    @classmethod
    def from_columns(cls, f: ProjPoint, g: ProjPoint, special: bool = False) -> UnimodularMatrix:
        return cls(f.p, g.p, f.q, g.q, special)

    @classmethod
    def identity(cls) -> UnimodularMatrix:
        return cls(ONE, ZERO, ZERO, ONE, True)

    @classmethod
    def diag(cls, x: IntLike, y: IntLike) -> UnimodularMatrix:
        x, y = EInt.coerce(x), EInt.coerce(y)
        return cls(x, ZERO, ZERO, y, x * y == ONE)

    def entries(self) -> tuple[EInt, EInt, EInt, EInt]:
        return (self.a, self.b, self.c, self.d)

    def det(self) -> EInt:
        return self.a * self.d - self.b * self.c

    def columns(self) -> tuple[ProjPoint, ProjPoint]:
        return ProjPoint(self.a, self.c), ProjPoint(self.b, self.d)

    def apply(self, f: ProjPoint) -> ProjPoint:
        return ProjPoint(self.a * f.p + self.b * f.q, self.c * f.p + self.d * f.q)

    @classmethod
    def _trusted(cls, a: EInt, b: EInt, c: EInt, d: EInt, special: bool) -> UnimodularMatrix:
        # skips validation; callers guarantee a unit determinant
        m = object.__new__(cls)
        for name, v in zip("abcde", (a, b, c, d, special)):
            object.__setattr__(m, "special" if name == "e" else name, v)
        return m

    def __matmul__(self, other: UnimodularMatrix) -> UnimodularMatrix:
        # a product of unimodular matrices is unimodular
        (a0, a1), (b0, b1), (c0, c1), (d0, d1) = self.a, self.b, self.c, self.d
        (e0, e1), (f0, f1), (g0, g1), (h0, h1) = other.a, other.b, other.c, other.d

        def dot(x0, x1, y0, y1, z0, z1, w0, w1):
            # x*y + z*w on coefficient pairs
            xy, zw = x1 * y1, z1 * w1
            return _mk(x0 * y0 - xy + z0 * w0 - zw, x0 * y1 + x1 * y0 + xy + z0 * w1 + z1 * w0 + zw)

        return UnimodularMatrix._trusted(
            dot(a0, a1, e0, e1, b0, b1, g0, g1),
            dot(a0, a1, f0, f1, b0, b1, h0, h1),
            dot(c0, c1, e0, e1, d0, d1, g0, g1),
            dot(c0, c1, f0, f1, d0, d1, h0, h1),
            self.special and other.special,
        )

    def __neg__(self) -> UnimodularMatrix:
        return UnimodularMatrix(-self.a, -self.b, -self.c, -self.d, self.special)

    def scale(self, u: EInt) -> UnimodularMatrix:
        m = UnimodularMatrix(self.a * u, self.b * u, self.c * u, self.d * u)
        return m if m.det() != ONE else UnimodularMatrix(*m.entries(), True)

    def transpose(self) -> UnimodularMatrix:
        return UnimodularMatrix(self.a, self.c, self.b, self.d, self.special)

    def inverse(self) -> UnimodularMatrix:
        return mat_inverse(self)

    def to_complex(self) -> tuple[complex, complex, complex, complex]:
        return tuple(x.to_complex() for x in self.entries())  # type: ignore[return-value]


def mobius_apply(m: UnimodularMatrix, f: ProjPoint) -> ProjPoint:
    return m.apply(f)


def mat_inverse(m: UnimodularMatrix) -> UnimodularMatrix:
    det = m.det()
    if not det.is_unit():
        raise ValueError(f"determinant {det} is not a unit")
    inv = det.unit_inverse()
    return UnimodularMatrix(m.d * inv, -m.b * inv, -m.c * inv, m.a * inv, m.special)


def matrix_to_infinity(f: ProjPoint) -> UnimodularMatrix:
    """An SL2 matrix sending the irreducible fraction f to infinity."""
    g, s, t = xgcd(f.p, f.q)
    if not g.is_unit():
        raise ValueError(f"{f} is not irreducible")
    # s*p + t*q = g; rows (s', t') and (q, -p) with s'*(-p) - t'*q = 1
    ginv = g.unit_inverse()
    s, t = -s * ginv, -t * ginv
    return UnimodularMatrix(s, t, f.q, -f.p, True)


def representatives(f: ProjPoint) -> list[ProjPoint]:
    """The six irreducible representatives of the point f."""
    r = reduce(f)
    return [r.scale(u) for u in UNITS]
