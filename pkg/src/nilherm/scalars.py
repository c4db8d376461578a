"""Exact scalars: Gaussian rationals and real-radical extensions of them.

Exact mode uses :class:`QQi` (a pair of ``gmpy2.mpq``).  Unitary coframes need
square roots of rational pivots, so :class:`Radical` represents finite sums
``sum_k z_k * sqrt(m_k)`` with ``z_k`` Gaussian rational and ``m_k`` positive
integers in pairwise distinct square classes.  Distinct square classes are
linearly independent over ``Q(i)``, so the zero test stays exact.

Float mode uses plain Python ``complex``.  Mixing the two raises
:class:`ModeError`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational

import gmpy2
from gmpy2 import mpq

__all__ = [
    "ModeError",
    "QQi",
    "Radical",
    "as_exact",
    "conj",
    "exact_sqrt",
    "format_rational",
    "is_exact",
    "parse_rational",
    "rationalize",
    "to_complex",
]


class ModeError(TypeError):
    """Exact and float scalars were combined."""


_RATIONAL_TYPES = (int, type(mpq(0)), Fraction)


def parse_rational(text) -> mpq:
    """Parse ``"p/q"``, a decimal string or an int into an exact rational."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, _RATIONAL_TYPES):
        return mpq(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational scalar string: {text!r}")
    try:
        return mpq(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational scalar string: {text!r}") from exc


def format_rational(q) -> str:
    return str(mpq(q))


class QQi:
    """Gaussian rational ``re + i*im`` with exact ``mpq`` parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = mpq(re)
        self.im = mpq(im)

    @staticmethod
    def _new(re, im) -> "QQi":
        z = object.__new__(QQi)
        z.re = re
        z.im = im
        return z

    @classmethod
    def parse(cls, re="0", im="0") -> "QQi":
        return cls._new(parse_rational(re), parse_rational(im))

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if type(other) is QQi:
            return QQi._new(self.re + other.re, self.im + other.im)
        if isinstance(other, _RATIONAL_TYPES):
            return QQi._new(self.re + other, self.im)
        if isinstance(other, (float, complex)):
            raise ModeError("cannot mix exact and float scalars")
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QQi._new(-self.re, -self.im)

    def __sub__(self, other):
        if type(other) is QQi:
            return QQi._new(self.re - other.re, self.im - other.im)
        if isinstance(other, _RATIONAL_TYPES):
            return QQi._new(self.re - other, self.im)
        if isinstance(other, (float, complex)):
            raise ModeError("cannot mix exact and float scalars")
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            return QQi._new(other - self.re, -self.im)
        if isinstance(other, (float, complex)):
            raise ModeError("cannot mix exact and float scalars")
        return NotImplemented

    def __mul__(self, other):
        if type(other) is QQi:
            a, b, c, d = self.re, self.im, other.re, other.im
            return QQi._new(a * c - b * d, a * d + b * c)
        if isinstance(other, _RATIONAL_TYPES):
            return QQi._new(self.re * other, self.im * other)
        if isinstance(other, (float, complex)):
            raise ModeError("cannot mix exact and float scalars")
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            other = mpq(other)
            return QQi._new(self.re / other, self.im / other)
        if type(other) is QQi:
            c, d = other.re, other.im
            den = c * c + d * d
            a, b = self.re, self.im
            return QQi._new((a * c + b * d) / den, (b * c - a * d) / den)
        if isinstance(other, (float, complex)):
            raise ModeError("cannot mix exact and float scalars")
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            return QQi._new(mpq(other), mpq(0)) / self
        return NotImplemented

    def conjugate(self) -> "QQi":
        return QQi._new(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    # comparison -----------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if type(other) is QQi:
            return self.re == other.re and self.im == other.im
        if isinstance(other, _RATIONAL_TYPES):
            return not self.im and self.re == other
        if type(other) is Radical:
            return other == self
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def is_real(self) -> bool:
        return not self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __float__(self):
        if self.im:
            raise ValueError(f"{self} is not real")
        return float(self.re)

    def __repr__(self):
        return f"QQi({format_rational(self.re)!r}, {format_rational(self.im)!r})"

    def __str__(self):
        if not self.im:
            return format_rational(self.re)
        if not self.re:
            return f"{_imag_str(self.im)}"
        sign = "-" if self.im < 0 else "+"
        return f"({format_rational(self.re)}{sign}{_imag_str(abs(self.im))})"


def _imag_str(q) -> str:
    if q == 1:
        return "i"
    if q == -1:
        return "-i"
    return f"{format_rational(q)}i"


_ZERO = QQi()
_ONE = QQi(1)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _strip_squares(m: int) -> tuple[int, int]:
    """Return (c, r) with m = c*c*r, removing square factors of small primes."""
    c = 1
    for p in _SMALL_PRIMES:
        pp = p * p
        while m % pp == 0:
            m //= pp
            c *= p
    return c, m


class Radical:
    """Exact real-radical extension ``sum_k z_k * sqrt(m_k)`` of the Gaussian rationals."""

    __slots__ = ("parts",)

    def __init__(self, parts=None):
        self.parts: dict[int, QQi] = {}
        if parts:
            for m, z in parts.items():
                self._insert(int(m), as_exact(z))

    @staticmethod
    def sqrt_of(q) -> "Radical":
        q = mpq(q)
        if q < 0:
            raise ValueError("square root of a negative rational")
        r = Radical()
        if q:
            # sqrt(p/d) = sqrt(p*d)/d
            p, d = int(q.numerator), int(q.denominator)
            r._insert(p * d, QQi._new(mpq(1, d), mpq(0)))
        return r

    @staticmethod
    def lift(x) -> "Radical":
        if type(x) is Radical:
            return x
        r = Radical()
        x = as_exact(x)
        if x:
            r.parts[1] = x
        return r

    def _insert(self, m: int, z: QQi) -> None:
        if not z:
            return
        if m <= 0:
            raise ValueError("radicand must be positive")
        c, m = _strip_squares(m)
        if c != 1:
            z = z * c
        if m != 1 and gmpy2.is_square(m):
            z = z * int(gmpy2.isqrt(m))
            m = 1
        parts = self.parts
        if m in parts:
            s = parts[m] + z
            if s:
                parts[m] = s
            else:
                del parts[m]
            return
        for key in parts:
            prod = key * m
            if gmpy2.is_square(prod):
                # sqrt(m) = sqrt(m*key)/key * sqrt(key)
                s = parts[key] + z * mpq(int(gmpy2.isqrt(prod)), key)
                if s:
                    parts[key] = s
                else:
                    del parts[key]
                return
        parts[m] = z

    def _copy(self) -> "Radical":
        r = Radical()
        r.parts = dict(self.parts)
        return r

    def __add__(self, other):
        if isinstance(other, (float, complex)):
            raise ModeError("cannot mix exact and float scalars")
        other = Radical.lift(other)
        r = self._copy()
        for m, z in other.parts.items():
            r._insert(m, z)
        return r

    __radd__ = __add__

    def __neg__(self):
        r = Radical()
        r.parts = {m: -z for m, z in self.parts.items()}
        return r

    def __sub__(self, other):
        if isinstance(other, (float, complex)):
            raise ModeError("cannot mix exact and float scalars")
        return self + (-Radical.lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (float, complex)):
            raise ModeError("cannot mix exact and float scalars")
        if type(other) is not Radical:
            other = as_exact(other)
            r = Radical()
            if other:
                r.parts = {m: z * other for m, z in self.parts.items()}
            return r
        r = Radical()
        for m1, z1 in self.parts.items():
            for m2, z2 in other.parts.items():
                g = gcd(m1, m2)
                r._insert((m1 // g) * (m2 // g), z1 * z2 * g)
        return r

    __rmul__ = __mul__

    def inverse(self) -> "Radical":
        if not self.parts:
            raise ZeroDivisionError("division by zero")
        if len(self.parts) != 1:
            raise NotImplementedError("inverse of a multi-term radical is not supported")
        ((m, z),) = self.parts.items()
        # 1/(z sqrt(m)) = sqrt(m)/(z m)
        r = Radical()
        r.parts[m] = (QQi._new(mpq(1), mpq(0)) / z) / m
        return r

    def __truediv__(self, other):
        if isinstance(other, (float, complex)):
            raise ModeError("cannot mix exact and float scalars")
        if type(other) is Radical:
            return self * other.inverse()
        other = as_exact(other)
        r = Radical()
        r.parts = {m: z / other for m, z in self.parts.items()}
        return r

    def __rtruediv__(self, other):
        return self.inverse() * other

    def conjugate(self) -> "Radical":
        r = Radical()
        r.parts = {m: z.conjugate() for m, z in self.parts.items()}
        return r

    def abs2(self) -> "Radical":
        return self * self.conjugate()

    def __bool__(self):
        return bool(self.parts)

    def __eq__(self, other):
        if isinstance(other, (float, complex)):
            return NotImplemented
        if not isinstance(other, (Radical, QQi) + _RATIONAL_TYPES):
            return NotImplemented
        return not (self - other)

    __hash__ = None

    def is_rational(self) -> bool:
        return not self.parts or set(self.parts) == {1}

    def to_qqi(self) -> QQi:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.parts.get(1, _ZERO)

    def is_real(self) -> bool:
        return all(not z.im for z in self.parts.values())

    def __complex__(self):
        return sum((complex(z) * float(gmpy2.sqrt(m)) for m, z in self.parts.items()), 0j)

    def __float__(self):
        if not self.is_real():
            raise ValueError(f"{self} is not real")
        return complex(self).real

    def __repr__(self):
        return f"Radical({ {m: str(z) for m, z in self.parts.items()} })"

    def __str__(self):
        if not self.parts:
            return "0"
        out = []
        for m in sorted(self.parts):
            z = self.parts[m]
            out.append(str(z) if m == 1 else f"{z}*sqrt({m})")
        return " + ".join(out)


def exact_sqrt(q):
    """Square root of a nonnegative rational; a :class:`QQi` when it is rational."""
    if isinstance(q, QQi):
        if q.im:
            raise ValueError("square root of a non-real value")
        q = q.re
    q = mpq(q)
    if q < 0:
        raise ValueError("square root of a negative rational")
    num, den = int(q.numerator), int(q.denominator)
    if gmpy2.is_square(num) and gmpy2.is_square(den):
        return QQi._new(mpq(int(gmpy2.isqrt(num)), int(gmpy2.isqrt(den))), mpq(0))
    return Radical.sqrt_of(q)


def is_exact(x) -> bool:
    return type(x) in (QQi, Radical) or isinstance(x, _RATIONAL_TYPES)


def as_exact(x):
    """Coerce rationals to :class:`QQi`; exact values pass through; floats are rejected."""
    t = type(x)
    if t is QQi or t is Radical:
        return x
    if isinstance(x, _RATIONAL_TYPES) or isinstance(x, Rational):
        return QQi._new(mpq(x), mpq(0))
    raise ModeError(f"expected an exact scalar, got {t.__name__}")


def conj(x):
    if isinstance(x, _RATIONAL_TYPES):
        return x
    return x.conjugate()


def to_complex(x) -> complex:
    return complex(x)


def rationalize(x, max_den: int = 10**6) -> QQi:
    """Continued-fraction rounding of a float or complex to a Gaussian rational."""
    z = complex(x)
    re = Fraction(z.real).limit_denominator(max_den)
    im = Fraction(z.imag).limit_denominator(max_den)
    return QQi(re, im)


def exact_from_float(x) -> QQi:
    """Exact binary-to-rational conversion (no rounding)."""
    z = complex(x)
    return QQi(mpq(z.real), mpq(z.imag))


ZERO = _ZERO
ONE = _ONE
I = QQi(0, 1)
