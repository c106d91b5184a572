"""Exact scalars in Q and Q(w), w a primitive cube root of unity.

Elements of Q(w) are stored in the basis {1, w} and reduced with
w^2 = -1 - w.  Rationals are plain :class:`fractions.Fraction` values;
components with denominator 1 are kept as ``int`` for speed.
Complex floating point scalars are Python ``complex`` numbers; ``eis_embed``
maps w to (-1 + i*sqrt(3))/2.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Rational

Rat = Fraction

SQRT3_HALF = math.sqrt(3.0) / 2.0
OMEGA_COMPLEX = complex(-0.5, SQRT3_HALF)


def _rat(x) -> int | Fraction:
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, (int, Rational)):
        return _rat(Fraction(x))
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class Eis:
    """An element a + b*w of Q(w).

    Instances are immutable and hashable.  Integers and Fractions coerce
    automatically in arithmetic and comparisons.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _rat(a))
        object.__setattr__(self, "b", _rat(b))

    def __setattr__(self, name, value):
        raise AttributeError("Eis is immutable")

    @classmethod
    def _make(cls, a, b) -> "Eis":
        if type(a) is Fraction and a.denominator == 1:
            a = a.numerator
        if type(b) is Fraction and b.denominator == 1:
            b = b.numerator
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        return obj

    @classmethod
    def coerce(cls, x) -> "Eis":
        if isinstance(x, Eis):
            return x
        return cls._make(_rat(x), 0)

    # -- structure -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Eis):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"Eis({self.a!s}, {self.b!s})"

    def __str__(self):
        return format_scalar(self)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Eis):
            return Eis._make(self.a + other.a, self.b + other.b)
        if isinstance(other, (int, Fraction)):
            return Eis._make(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Eis._make(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, Eis):
            return Eis._make(self.a - other.a, self.b - other.b)
        if isinstance(other, (int, Fraction)):
            return Eis._make(self.a - other, self.b)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return Eis._make(other - self.a, -self.b)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Eis):
            a, b, c, d = self.a, self.b, other.a, other.b
            bd = b * d
            return Eis._make(a * c - bd, a * d + b * c - bd)
        if isinstance(other, (int, Fraction)):
            return Eis._make(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm a^2 - ab + b^2 (= |x|^2 under the embedding)."""
        a, b = self.a, self.b
        return a * a - a * b + b * b

    def conj(self) -> "Eis":
        return Eis._make(self.a - self.b, -self.b)

    def inverse(self) -> "Eis":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(w)")
        # conj(x) / N(x)
        return Eis._make(Fraction(self.a - self.b) / n, Fraction(-self.b) / n)

    def __truediv__(self, other):
        if isinstance(other, Eis):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(w)")
            return Eis._make(Fraction(self.a) / other, Fraction(self.b) / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __complex__(self):
        return complex(float(self.a) - 0.5 * float(self.b), SQRT3_HALF * float(self.b))


ZERO = Eis(0, 0)
ONE = Eis(1, 0)
W = Eis(0, 1)
W2 = Eis(-1, -1)


def eis_mul(x: Eis, y: Eis) -> Eis:
    return Eis.coerce(x) * Eis.coerce(y)


def eis_inv(x: Eis) -> Eis:
    return Eis.coerce(x).inverse()


def eis_conj(x: Eis) -> Eis:
    return Eis.coerce(x).conj()


def eis_embed(x) -> complex:
    return complex(Eis.coerce(x))


def is_exact(x) -> bool:
    return isinstance(x, (Eis, int, Fraction))


def recognize(z: complex, max_den: int = 10**6, tol: float = 1e-9) -> Eis | None:
    """Best guess for an element of Q(w) close to ``z``, or None.

    The guess is only a candidate; callers verify it exactly.
    """
    b = z.imag / SQRT3_HALF
    a = z.real + 0.5 * b
    fa = Fraction(a).limit_denominator(max_den)
    fb = Fraction(b).limit_denominator(max_den)
    guess = Eis(fa, fb)
    if abs(complex(guess) - z) > tol * max(1.0, abs(z)):
        return None
    return guess


def eis_cube_root(x: Eis) -> Eis | None:
    """A cube root of ``x`` lying in Q(w), or None if there is none."""
    x = Eis.coerce(x)
    if not x:
        return ZERO
    z = complex(x)
    r = abs(z) ** (1.0 / 3.0)
    phi = cmath.phase(z) / 3.0
    for k in range(3):
        cand = recognize(cmath.rect(r, phi + 2.0 * math.pi * k / 3.0))
        if cand is not None and cand ** 3 == x:
            return cand
    return None


# -- text -----------------------------------------------------------------

def _fmt_rat(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Render an exact scalar as text such as ``2/3 + 1/2*w``.

    Complex floats render as ``re+imj`` via ``repr``.
    """
    if isinstance(x, complex):
        return repr(x)
    if isinstance(x, float):
        return repr(x)
    x = Eis.coerce(x)
    a, b = x.a, x.b
    if b == 0:
        return _fmt_rat(a)
    if b == 1:
        wpart = "w"
    elif b == -1:
        wpart = "-w"
    else:
        wpart = f"{_fmt_rat(b)}*w"
    if a == 0:
        return wpart
    if wpart.startswith("-"):
        return f"{_fmt_rat(a)} - {wpart[1:]}"
    return f"{_fmt_rat(a)} + {wpart}"


def parse_scalar(text: str) -> Eis:
    """Parse scalar text (``a/b``, ``w``, sums and products of those)."""
    from .parsing import parse_scalar as _parse

    return _parse(text)
