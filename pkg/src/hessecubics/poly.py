"""Sparse polynomials and ternary cubic forms.

Group action convention
-----------------------
A matrix ``g`` acts on forms by substitution of the inverse::

    (g . f)(x) = f(g^{-1} x)

so that ``act(g1, act(g2, f)) == act(g1 @ g2, f)`` and the zero set moves
with the points: ``C(g . f) = g . C(f)``.  Both conventions occur in the
literature; this one is used everywhere in the package.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import NotADivisorError
from .scalar import Eis, format_scalar

Exp = tuple  # exponent tuple


def _coerce_all(values: Iterable) -> list:
    vals = list(values)
    if any(isinstance(v, (complex, float)) for v in vals):
        return [complex(v) for v in vals]
    return [Eis.coerce(v) for v in vals]


class Poly:
    """A polynomial in ``nvars`` variables as a dict exponent-tuple -> coefficient.

    Zero coefficients are never stored.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, terms: Mapping[Exp, object] | None = None, nvars: int = 3):
        self.nvars = nvars
        clean = {}
        if terms:
            keys = list(terms)
            vals = _coerce_all(terms[k] for k in keys)
            for k, v in zip(keys, vals):
                if len(k) != nvars:
                    raise ValueError(f"exponent {k} does not have {nvars} entries")
                if v != 0:
                    clean[tuple(k)] = v
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "Poly":
        p = object.__new__(Poly)
        p.nvars = nvars
        p.terms = {k: v for k, v in terms.items() if v != 0}
        return p

    @classmethod
    def var(cls, i: int, nvars: int = 3, one=None) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls._raw({tuple(e): Eis(1) if one is None else one}, nvars)

    @classmethod
    def const(cls, c, nvars: int = 3) -> "Poly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Poly":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(terms, n)

    # -- basic protocol -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Poly({self.terms!r}, nvars={self.nvars})"

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d: int) -> bool:
        return all(sum(e) == d for e in self.terms)

    def is_exact(self) -> bool:
        return all(isinstance(v, Eis) for v in self.terms.values())

    def _zero(self):
        for v in self.terms.values():
            return v * 0
        return Eis(0)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.nvars)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                out[e] = out[e] + c
            else:
                out[e] = c
        return Poly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly._raw({e: c * other for e, c in self.terms.items()}, self.nvars)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if e in out:
                    out[e] = out[e] + c1 * c2
                else:
                    out[e] = c1 * c2
        return Poly._raw(out, self.nvars)

    def __rmul__(self, other):
        return Poly._raw({e: other * c for e, c in self.terms.items()}, self.nvars)

    def __pow__(self, n: int):
        result = Poly.const(Eis(1) if self.is_exact() else 1.0 + 0j, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def diff(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return Poly._raw(out, self.nvars)

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        total = self._zero()
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            total = total + term
        return total

    def substitute_linear(self, A: Sequence[Sequence]) -> "Poly":
        """Return the polynomial x -> self(A x) for a square matrix A."""
        lin = [Poly.linear(row) for row in A]
        powers = [{0: None} for _ in lin]
        out = Poly._raw({}, self.nvars)
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if not k:
                    continue
                cache = powers[i]
                if k not in cache:
                    cache[k] = lin[i] ** k
                term = cache[k] if term is None else term * cache[k]
            if term is None:
                out = out + Poly._raw({(0,) * self.nvars: c}, self.nvars)
            else:
                out = out + term * c
        return out

    def leading(self) -> tuple[Exp, object]:
        e = max(self.terms)
        return e, self.terms[e]

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Multivariate division by a single polynomial in lex order.

        The remainder is zero exactly when ``other`` divides ``self``.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        le, lc = other.leading()
        q: dict = {}
        r: dict = {}
        p = Poly._raw(dict(self.terms), self.nvars)
        while p.terms:
            e, c = p.leading()
            if all(a >= b for a, b in zip(e, le)):
                m = tuple(a - b for a, b in zip(e, le))
                coef = c / lc
                q[m] = q.get(m, 0) + coef
                p = p - Poly._raw({m: coef}, self.nvars) * other
            else:
                r[e] = c
                del p.terms[e]
        return Poly._raw(q, self.nvars), Poly._raw(r, self.nvars)

    def divides(self, other: "Poly") -> bool:
        """True if ``self`` divides ``other``."""
        return other.divmod(self)[1].is_zero()


# -- ternary cubics ---------------------------------------------------------

#: The 10 exponent triples in the fixed (descending lexicographic) order.
MONOMIALS: tuple[tuple[int, int, int], ...] = tuple(
    sorted((e for e in product(range(4), repeat=3) if sum(e) == 3), reverse=True)
)


class Cubic(Poly):
    """A ternary cubic form (or the zero form)."""

    __slots__ = ()

    def __init__(self, terms: Mapping[Exp, object] | None = None):
        super().__init__(terms, 3)
        for e in self.terms:
            if sum(e) != 3:
                raise ValueError(f"monomial {e} is not of degree 3")

    @classmethod
    def from_poly(cls, p: Poly) -> "Cubic":
        c = object.__new__(cls)
        c.nvars = 3
        c.terms = dict(p.terms)
        for e in c.terms:
            if sum(e) != 3:
                raise ValueError(f"monomial {e} is not of degree 3")
        return c

    @classmethod
    def from_vector(cls, vec: Sequence) -> "Cubic":
        return cls(dict(zip(MONOMIALS, vec)))

    def vector(self) -> list:
        z = self._zero()
        return [self.terms.get(e, z) for e in MONOMIALS]

    def coefficient(self, e: Exp):
        return self.terms.get(tuple(e), self._zero())

    def to_complex(self) -> "Cubic":
        return Cubic({e: complex(c) for e, c in self.terms.items()})

    def __add__(self, other):
        out = Poly.__add__(self, other)
        return Cubic.from_poly(out) if out.is_homogeneous(3) else out

    def __sub__(self, other):
        out = Poly.__sub__(self, other)
        return Cubic.from_poly(out) if out.is_homogeneous(3) else out

    def __neg__(self):
        return Cubic.from_poly(Poly.__neg__(self))

    def __mul__(self, other):
        out = Poly.__mul__(self, other)
        return Cubic.from_poly(out) if out.is_homogeneous(3) else out

    def __rmul__(self, other):
        return Cubic.from_poly(Poly.__rmul__(self, other))

    __hash__ = Poly.__hash__

    def __repr__(self):
        return f"Cubic({format_cubic(self)!r})"

    def __str__(self):
        return format_cubic(self)

    def serialize(self) -> list[tuple[str, str]]:
        """``(i0 i1 i2, scalar-text)`` pairs in the fixed monomial order."""
        return [
            (" ".join(map(str, e)), format_scalar(self.terms[e]))
            for e in MONOMIALS
            if e in self.terms
        ]


def cubic_from_poly(p: Poly) -> Cubic:
    return Cubic.from_poly(p)


def _monomial_text(e: Exp) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i}")
        elif k > 1:
            parts.append(f"x{i}^{k}")
    return "*".join(parts)


def format_cubic(f: Poly) -> str:
    """Render a form in the grammar accepted by the parser."""
    if f.is_zero():
        return "0"
    order = MONOMIALS if f.nvars == 3 and f.is_homogeneous(3) else sorted(f.terms, reverse=True)
    pieces = []
    for e in order:
        if e not in f.terms:
            continue
        c = f.terms[e]
        mono = _monomial_text(e)
        sign = "+"
        if isinstance(c, complex):
            text = f"({c!r})"
        else:
            c = Eis.coerce(c)
            if c.b == 0 and c.a < 0:
                sign, c = "-", -c
            text = format_scalar(c) if c.b == 0 else f"({format_scalar(c)})"
        if not mono:
            term = text
        elif text == "1":
            term = mono
        else:
            term = f"{text}*{mono}"
        if not pieces:
            pieces.append(term if sign == "+" else f"-{term}")
        else:
            pieces.append(f"{sign} {term}")
    return " ".join(pieces)


# -- operations ------------------------------------------------------------

def _as_cubic(f) -> Cubic:
    return f if isinstance(f, Cubic) else Cubic.from_poly(f)


def hessian(f: Poly) -> Cubic:
    """Determinant of the matrix of second partial derivatives.

    No normalising constant is applied; ``hessian(x0^3+x1^3+x2^3)`` is
    ``216*x0*x1*x2``.
    """
    f = _as_cubic(f)
    if f.is_zero():
        return Cubic()
    first = [f.diff(i) for i in range(3)]
    m = [[first[i].diff(j) for j in range(3)] for i in range(3)]
    (a, b, c), (d, e, g), (h, i, k) = m
    det = a * (e * k - g * i) - b * (d * k - g * h) + c * (d * i - e * h)
    return Cubic.from_poly(det)


def act(g: Sequence[Sequence], f: Poly) -> Cubic:
    """The form ``x -> f(g^{-1} x)``.

    Mixing an exact matrix with a numeric form (or the reverse) computes
    numerically.
    """
    f = _as_cubic(f)
    g = linalg.as_matrix(g)
    exact_g = isinstance(g[0][0], Eis)
    if exact_g and not f.is_exact():
        g = tuple(tuple(complex(x) for x in row) for row in g)
    elif not exact_g and f.is_exact():
        f = f.to_complex()
    return Cubic.from_poly(f.substitute_linear(linalg.inv3(g)))


def evaluate(f: Poly, p: Sequence):
    return f(tuple(p))


# ``eval`` is the name the operation goes by elsewhere; shadowing the builtin
# inside this module is harmless since nothing here calls it.
eval = evaluate  # noqa: A001


def _sl3_basis(zero, one) -> list:
    basis = []
    for i in range(3):
        for j in range(3):
            if i != j:
                m = [[zero] * 3 for _ in range(3)]
                m[i][j] = one
                basis.append(m)
    for i in range(2):
        m = [[zero] * 3 for _ in range(3)]
        m[i][i] = one
        m[i + 1][i + 1] = -one
        basis.append(m)
    return basis


def lie_action(X: Sequence[Sequence], f: Poly) -> Cubic:
    """Infinitesimal action X.f = -sum_i (X x)_i * df/dx_i."""
    f = _as_cubic(f)
    out = Poly._raw({}, 3)
    for i in range(3):
        lin = Poly.linear(X[i])
        out = out + lin * f.diff(i)
    return Cubic.from_poly(-out)


def sl3_orbit_dim(f: Poly) -> int:
    """Dimension of the SL3 orbit of ``f``: rank of the tangent vectors X.f."""
    f = _as_cubic(f)
    if f.is_zero():
        return 0
    exact = f.is_exact()
    zero, one = (Eis(0), Eis(1)) if exact else (0j, 1 + 0j)
    rows = [lie_action(X, f).vector() for X in _sl3_basis(zero, one)]
    if exact:
        return linalg.rank(rows)
    import numpy as np

    return int(np.linalg.matrix_rank(np.array(rows, dtype=complex), tol=1e-9))


def random_unimodular(rng, size: int = 3, steps: int = 6, bound: int = 2) -> tuple:
    """Random integer matrix of determinant 1 built from elementary moves."""
    M = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    for _ in range(steps):
        i, j = rng.sample(range(size), 2)
        k = rng.choice([x for x in range(-bound, bound + 1) if x])
        # row_i += k * row_j
        M[i] = [a + k * b for a, b in zip(M[i], M[j])]
    perm = list(range(size))
    rng.shuffle(perm)
    # an even permutation keeps det = 1; fix the sign by negating a row otherwise
    M = [M[p] for p in perm]
    if _perm_sign(perm) < 0:
        M[0] = [-a for a in M[0]]
    return tuple(tuple(Eis(a) for a in row) for row in M)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def random_cubic(rng, bound: int = 5, exact: bool = True) -> Cubic:
    """Cubic with random integer coefficients in [-bound, bound]."""
    vals = [rng.randint(-bound, bound) for _ in MONOMIALS]
    if not any(vals):
        vals[0] = 1
    f = Cubic.from_vector([Eis(v) for v in vals])
    return f if exact else f.to_complex()


def divide_exact(f: Poly, p: Poly) -> Poly:
    q, r = f.divmod(p)
    if not r.is_zero():
        raise NotADivisorError("polynomial does not divide")
    return q


__all__ = [
    "Poly",
    "Cubic",
    "MONOMIALS",
    "hessian",
    "act",
    "evaluate",
    "sl3_orbit_dim",
    "lie_action",
    "format_cubic",
    "random_unimodular",
    "random_cubic",
]
