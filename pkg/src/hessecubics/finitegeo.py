"""The affine plane over F3, its 12 lines and its affine groups.

Points of F3^2 are pairs of ints in {0, 1, 2}.  Groups are small enough
(at most 432 elements) to be materialised as plain lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import NotAGroupError

P = 3
Point = tuple[int, int]
Matrix2 = tuple[tuple[int, int], tuple[int, int]]

POINTS: tuple[Point, ...] = tuple(product(range(P), repeat=2))


class F3(int):
    """An element of Z/3Z, kept as its residue in {0, 1, 2}."""

    def __new__(cls, value: int = 0):
        return super().__new__(cls, int(value) % P)

    def __add__(self, other):
        return F3(int(self) + int(other))

    __radd__ = __add__

    def __sub__(self, other):
        return F3(int(self) - int(other))

    def __rsub__(self, other):
        return F3(int(other) - int(self))

    def __mul__(self, other):
        return F3(int(self) * int(other))

    __rmul__ = __mul__

    def __neg__(self):
        return F3(-int(self))

    def inverse(self) -> "F3":
        if self == 0:
            raise ZeroDivisionError("0 has no inverse in F3")
        return F3(int(self))  # 1*1 = 1 and 2*2 = 4 = 1

    def __repr__(self):
        return f"F3({int(self)})"


def add_points(u: Point, v: Point) -> Point:
    return ((u[0] + v[0]) % P, (u[1] + v[1]) % P)


def sub_points(u: Point, v: Point) -> Point:
    return ((u[0] - v[0]) % P, (u[1] - v[1]) % P)


def scale_point(c: int, u: Point) -> Point:
    return ((c * u[0]) % P, (c * u[1]) % P)


def _det2(m: Matrix2) -> int:
    return (m[0][0] * m[1][1] - m[0][1] * m[1][0]) % P


def _mat_mul2(a: Matrix2, b: Matrix2) -> Matrix2:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(2)) % P for j in range(2)) for i in range(2)
    )


def _mat_vec2(m: Matrix2, v: Point) -> Point:
    return ((m[0][0] * v[0] + m[0][1] * v[1]) % P, (m[1][0] * v[0] + m[1][1] * v[1]) % P)


def _mat_inv2(m: Matrix2) -> Matrix2:
    d = _det2(m)
    if d == 0:
        raise ZeroDivisionError("singular matrix over F3")
    inv = d  # d^{-1} = d in F3
    a, b = m[0]
    c, e = m[1]
    return ((e * inv % P, -b * inv % P), (-c * inv % P, a * inv % P))


@dataclass(frozen=True)
class AffMap3:
    """The affine map p -> linear * p + translation on F3^2."""

    linear: Matrix2
    translation: Point = (0, 0)

    def __post_init__(self):
        lin = tuple(tuple(int(x) % P for x in row) for row in self.linear)
        tr = tuple(int(x) % P for x in self.translation)
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "translation", tr)
        if _det2(lin) == 0:
            raise ValueError("linear part must be invertible")

    @classmethod
    def identity(cls) -> "AffMap3":
        return cls(((1, 0), (0, 1)))

    @classmethod
    def translation_by(cls, t: Point) -> "AffMap3":
        return cls(((1, 0), (0, 1)), t)

    def __call__(self, p: Point) -> Point:
        return add_points(_mat_vec2(self.linear, p), self.translation)

    def compose(self, other: "AffMap3") -> "AffMap3":
        """self after other."""
        return AffMap3(
            _mat_mul2(self.linear, other.linear),
            add_points(_mat_vec2(self.linear, other.translation), self.translation),
        )

    __matmul__ = compose

    def inverse(self) -> "AffMap3":
        li = _mat_inv2(self.linear)
        return AffMap3(li, scale_point(2, _mat_vec2(li, self.translation)))

    @property
    def det(self) -> int:
        return _det2(self.linear)

    def is_special(self) -> bool:
        return self.det == 1

    def __str__(self):
        (a, b), (c, d) = self.linear
        t1, t2 = self.translation
        return f"[[{a},{b}],[{c},{d}]] + ({t1},{t2})"


def parse_affmap(text: str) -> AffMap3:
    """Inverse of ``str(AffMap3)``; the translation part is optional."""
    import re

    nums = [int(n) for n in re.findall(r"-?\d+", text)]
    if len(nums) not in (4, 6):
        raise ValueError(f"cannot read an affine map from {text!r}")
    lin = ((nums[0], nums[1]), (nums[2], nums[3]))
    tr = (nums[4], nums[5]) if len(nums) == 6 else (0, 0)
    return AffMap3(lin, tr)


# -- incidence ----------------------------------------------------------------

def collinear_f3(a: Point, b: Point, c: Point) -> bool:
    """Whether b - a and c - a are linearly dependent over F3."""
    u, v = sub_points(b, a), sub_points(c, a)
    return (u[0] * v[1] - u[1] * v[0]) % P == 0


@lru_cache(maxsize=None)
def ag23_lines() -> tuple[tuple[Point, Point, Point], ...]:
    """The 12 lines of AG(2,3), each a sorted triple, in sorted order."""
    lines = set()
    for u, v in combinations(POINTS, 2):
        d = sub_points(v, u)
        lines.add(tuple(sorted(add_points(u, scale_point(t, d)) for t in range(P))))
    return tuple(sorted(lines))


def third_point(a: Point, b: Point) -> Point:
    """The third point on the line through a != b, namely 2(a + b)."""
    return scale_point(2, add_points(a, b))


def preserves_lines(sigma: AffMap3) -> bool:
    lines = set(ag23_lines())
    return all(tuple(sorted(sigma(p) for p in line)) in lines for line in lines)


# -- groups -------------------------------------------------------------------

def _all_matrices() -> Iterable[Matrix2]:
    for a, b, c, d in product(range(P), repeat=4):
        m = ((a, b), (c, d))
        if _det2(m):
            yield m


@lru_cache(maxsize=None)
def aff_enumerate() -> tuple[AffMap3, ...]:
    """All 432 elements of Aff(F3^2)."""
    return tuple(AffMap3(m, t) for m in _all_matrices() for t in POINTS)


@lru_cache(maxsize=None)
def saff_enumerate() -> tuple[AffMap3, ...]:
    """The 216 affine maps whose linear part has determinant 1."""
    return tuple(s for s in aff_enumerate() if s.is_special())


def sl2f3() -> tuple[Matrix2, ...]:
    return tuple(m for m in _all_matrices() if _det2(m) == 1)


def is_closed(group: Sequence[AffMap3]) -> bool:
    elems = set(group)
    return all(a @ b in elems for a in elems for b in elems)


def stabilizer_f3(group: Sequence[AffMap3], p: Point) -> list[AffMap3]:
    return [s for s in group if s(p) == p]


def sl2f3_recognize(group: Sequence[AffMap3]) -> bool:
    """Whether a group of affine maps is a point stabilizer isomorphic to SL2(F3).

    The test: the group has order 24, fixes some point q, and after moving
    q to the origin its linear parts are exactly the determinant-one
    matrices.  Raises NotAGroupError if the input is not closed.
    """
    elems = set(group)
    if not elems or not is_closed(list(elems)):
        raise NotAGroupError("input is not closed under composition")
    if len(elems) != 24:
        return False
    fixed = [q for q in POINTS if all(s(q) == q for s in elems)]
    if not fixed:
        return False
    move = AffMap3.translation_by(scale_point(2, fixed[0]))  # q -> 0
    back = move.inverse()
    conj = {move @ s @ back for s in elems}
    if any(c.translation != (0, 0) for c in conj):
        return False
    return {c.linear for c in conj} == set(sl2f3())
