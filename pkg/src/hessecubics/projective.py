"""Points, lines and transformations of the projective plane.

Every object is stored through a canonical representative of its class
modulo scalars.  Exact objects (entries in Q(w)) scale the first nonzero
entry to 1 and compare structurally.  Numeric objects (complex entries) are
scaled to unit norm with the largest entry real and positive, and compare
by a phase-invariant distance with tolerance ``NUMERIC_TOL``.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Sequence

from . import linalg
from .errors import DegenerateFrameError, EqualPointsError, SingularMatrixError
from .scalar import Eis, format_scalar

NUMERIC_TOL = 1e-6
COLLINEAR_TOL = 1e-8


def _coerce(values: Sequence) -> tuple:
    if any(isinstance(v, (complex, float)) for v in values):
        return tuple(complex(v) for v in values)
    return tuple(Eis.coerce(v) for v in values)


def _canonical(values: Sequence) -> tuple:
    vals = _coerce(values)
    if isinstance(vals[0], Eis):
        lead = next((v for v in vals if v), None)
        if lead is None:
            raise ValueError("the zero vector has no projective class")
        if lead == 1:
            return vals
        inv = lead.inverse()
        return tuple(v * inv for v in vals)
    norm = math.sqrt(sum(abs(v) ** 2 for v in vals))
    if norm == 0.0:
        raise ValueError("the zero vector has no projective class")
    big = max(vals, key=abs)
    phase = big / abs(big)
    scale = 1.0 / (norm * phase)
    return tuple(v * scale for v in vals)


def projective_distance(u: Sequence[complex], v: Sequence[complex]) -> float:
    """Distance between two classes, min over phases of |u - e^{it} v| for unit u, v."""
    u = [complex(x) for x in u]
    v = [complex(x) for x in v]
    nu = math.sqrt(sum(abs(x) ** 2 for x in u))
    nv = math.sqrt(sum(abs(x) ** 2 for x in v))
    inner = sum(b.conjugate() * a for a, b in zip(u, v))
    phase = inner / abs(inner) if inner else 1.0
    # |u - phase*v| directly; the closed form sqrt(2 - 2|<u,v>|) loses half the digits
    return math.sqrt(sum(abs(a / nu - phase * b / nv) ** 2 for a, b in zip(u, v)))


class _Homogeneous:
    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        if len(coords) != 3:
            raise ValueError("expected three homogeneous coordinates")
        self.coords = _canonical(coords)

    @property
    def exact(self) -> bool:
        return isinstance(self.coords[0], Eis)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if self.exact and other.exact:
            return self.coords == other.coords
        return projective_distance(self.coords, other.coords) < NUMERIC_TOL

    def __hash__(self):
        if not self.exact:
            raise TypeError("numeric projective objects are not hashable")
        return hash((type(self).__name__, self.coords))

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def to_complex(self):
        return type(self)(tuple(complex(c) for c in self.coords))

    def __str__(self):
        return "(" + " : ".join(format_scalar(c) for c in self.coords) + ")"


class PPoint(_Homogeneous):
    __slots__ = ()

    def __repr__(self):
        return f"PPoint{self}"


class PLine(_Homogeneous):
    """The line {x : a0*x0 + a1*x1 + a2*x2 = 0}."""

    __slots__ = ()

    def contains(self, p: PPoint, tol: float = COLLINEAR_TOL) -> bool:
        val = sum((a * x for a, x in zip(self.coords, p.coords)), 0 * self.coords[0])
        if self.exact and p.exact:
            return val == 0
        return abs(complex(val)) < tol

    def __repr__(self):
        return f"PLine{self}"

    def __str__(self):
        from .poly import Poly, format_cubic

        return format_cubic(Poly.linear(self.coords)) + " = 0"


class PTransform:
    """An element of PGL3, stored as a canonical 3x3 matrix."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Sequence[Sequence]):
        m = linalg.as_matrix(matrix)
        if linalg.det3(m) == 0:
            raise SingularMatrixError("projective transformation must be invertible")
        flat = _canonical([x for row in m for x in row])
        self.matrix = tuple(tuple(flat[3 * i: 3 * i + 3]) for i in range(3))

    @classmethod
    def identity(cls, exact: bool = True) -> "PTransform":
        one = Eis(1) if exact else 1 + 0j
        zero = one * 0
        return cls(linalg.identity(3, one, zero))

    @property
    def exact(self) -> bool:
        return isinstance(self.matrix[0][0], Eis)

    def __matmul__(self, other: "PTransform") -> "PTransform":
        return PTransform(linalg.mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "PTransform":
        return PTransform(linalg.adjugate3(self.matrix))

    def __call__(self, p: PPoint) -> PPoint:
        return apply(self, p)

    def __eq__(self, other):
        if not isinstance(other, PTransform):
            return NotImplemented
        if self.exact and other.exact:
            return self.matrix == other.matrix
        a = [complex(x) for row in self.matrix for x in row]
        b = [complex(x) for row in other.matrix for x in row]
        return projective_distance(a, b) < NUMERIC_TOL

    def __hash__(self):
        if not self.exact:
            raise TypeError("numeric transforms are not hashable")
        return hash(self.matrix)

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(format_scalar(x) for x in r) + "]" for r in self.matrix)
        return f"PTransform([{rows}])"

    def is_identity(self) -> bool:
        return self == PTransform.identity(self.exact)

    def to_complex(self) -> "PTransform":
        return PTransform(tuple(tuple(complex(x) for x in row) for row in self.matrix))


# -- operations ---------------------------------------------------------------

def apply(g: PTransform, p: PPoint) -> PPoint:
    m = g.matrix
    coords = p.coords
    if g.exact != p.exact:
        m = tuple(tuple(complex(x) for x in r) for r in m)
        coords = tuple(complex(x) for x in coords)
    return PPoint(linalg.mat_vec(m, coords))


def det_of_points(p: PPoint, q: PPoint, r: PPoint):
    return linalg.det3((p.coords, q.coords, r.coords))


def collinear(p: PPoint, q: PPoint, r: PPoint, tol: float = COLLINEAR_TOL) -> bool:
    """Whether three points lie on a common line.

    Numeric points are unit vectors after canonicalisation, so the
    determinant is compared against ``tol`` directly.
    """
    if p.exact and q.exact and r.exact:
        return det_of_points(p, q, r) == 0
    rows = [[complex(x) for x in pt.coords] for pt in (p, q, r)]
    return abs(linalg.det3(rows)) < tol


def line_through(p: PPoint, q: PPoint) -> PLine:
    if p == q:
        raise EqualPointsError("a line needs two distinct points")
    a, b = p.coords, q.coords
    if p.exact != q.exact:
        a = tuple(complex(x) for x in a)
        b = tuple(complex(x) for x in b)
    return PLine(linalg.cross(a, b))


def meet(l1: PLine, l2: PLine) -> PPoint:
    if l1 == l2:
        raise EqualPointsError("identical lines do not meet in a point")
    return PPoint(linalg.cross(l1.coords, l2.coords))


def _check_frame(points: Sequence[PPoint], label: str) -> None:
    if len(points) != 4:
        raise DegenerateFrameError(f"{label} frame needs four points")
    for a, b, c in combinations(points, 3):
        if collinear(a, b, c):
            raise DegenerateFrameError(f"three points of the {label} frame are collinear")


def _standard_frame_matrix(points: Sequence[PPoint]):
    """Matrix sending e0, e1, e2, e0+e1+e2 to the given four points."""
    cols = linalg.transpose([p.coords for p in points[:3]])
    lam = linalg.solve3(cols, points[3].coords)
    return tuple(tuple(cols[i][j] * lam[j] for j in range(3)) for i in range(3))


def transform_from_frames(src: Sequence[PPoint], dst: Sequence[PPoint]) -> PTransform:
    """The unique projective map with src[k] -> dst[k] for k = 0..3."""
    src, dst = list(src), list(dst)
    exact = all(p.exact for p in src + dst)
    if not exact:
        src = [p.to_complex() if p.exact else p for p in src]
        dst = [p.to_complex() if p.exact else p for p in dst]
    _check_frame(src, "source")
    _check_frame(dst, "target")
    A = _standard_frame_matrix(src)
    B = _standard_frame_matrix(dst)
    return PTransform(linalg.mat_mul(B, linalg.adjugate3(A)))


STANDARD_FRAME = (
    PPoint((1, 0, 0)),
    PPoint((0, 1, 0)),
    PPoint((0, 0, 1)),
    PPoint((1, 1, 1)),
)
