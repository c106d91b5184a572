"""The Hesse pencil x0^3 + x1^3 + x2^3 + lam*x0*x1*x2 and its flex configuration.

Flexes are labelled by pairs (i, j) in F3^2:

    t(0, j) = (0 : -w^j : 1)
    t(1, j) = (1 : 0 : -w^j)
    t(2, j) = (-w^j : 1 : 0)

The 12 lines come from factoring the four singular members; incidence is
computed from coordinates, not entered by hand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .errors import NumericFailure, VerificationError
from .finitegeo import POINTS, Point, add_points, collinear_f3, third_point
from .poly import MONOMIALS, Cubic, Poly, act
from .projective import PLine, PPoint, PTransform, collinear, transform_from_frames
from .scalar import Eis, W, W2, format_scalar

FERMAT = Cubic({(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1})
TRIANGLE = Cubic({(1, 1, 1): 1})
_PENCIL_SLOTS = {(3, 0, 0), (0, 3, 0), (0, 0, 3), (1, 1, 1)}


class PencilParam:
    """A point of the parameter line: a finite value or infinity."""

    __slots__ = ("value",)

    def __init__(self, value=None):
        if value is not None and not isinstance(value, complex):
            value = Eis.coerce(value)
        self.value = value

    @classmethod
    def infinity(cls) -> "PencilParam":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    @property
    def exact(self) -> bool:
        return not isinstance(self.value, complex)

    def __eq__(self, other):
        if not isinstance(other, PencilParam):
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"PencilParam({self.value!r})"

    def __str__(self):
        if self.value is None:
            return "lambda = inf"
        return f"lambda = {format_scalar(self.value)}"


INFINITY = PencilParam.infinity()
SINGULAR_PARAMS = (INFINITY, PencilParam(-3), PencilParam(-3 * W), PencilParam(-3 * W2))


def pencil_member(lam) -> Cubic:
    if not isinstance(lam, PencilParam):
        lam = PencilParam(lam)
    if lam.is_infinite:
        return TRIANGLE
    return FERMAT + TRIANGLE * lam.value


def pencil_residual(f: Poly) -> tuple[float, Optional[PencilParam]]:
    """Relative distance of f from the pencil, and the nearest parameter.

    The residual is the largest offending coefficient divided by the
    largest coefficient of f.
    """
    f = f if isinstance(f, Cubic) else Cubic.from_poly(f)
    coef = {e: complex(f.coefficient(e)) for e in MONOMIALS}
    scale = max(abs(c) for c in coef.values())
    if scale == 0:
        raise ValueError("the zero form is not a curve")
    cubes = [coef[(3, 0, 0)], coef[(0, 3, 0)], coef[(0, 0, 3)]]
    a = sum(cubes) / 3
    off = [abs(c) for e, c in coef.items() if e not in _PENCIL_SLOTS]
    off += [abs(c - a) for c in cubes]
    res = max(off) / scale
    if abs(a) <= 1e-12 * scale:
        return res, INFINITY
    return res, PencilParam(coef[(1, 1, 1)] / a)


def in_pencil(f: Poly, tol: float = 1e-6) -> Optional[PencilParam]:
    """The pencil parameter of f, or None when f is not a member."""
    f = f if isinstance(f, Cubic) else Cubic.from_poly(f)
    if f.is_zero():
        raise ValueError("the zero form is not a curve")
    if f.is_exact():
        if any(e not in _PENCIL_SLOTS for e in f.terms):
            return None
        a, b, c = (f.coefficient(e) for e in ((3, 0, 0), (0, 3, 0), (0, 0, 3)))
        if not (a == b == c):
            return None
        if a == 0:
            return INFINITY
        return PencilParam(f.coefficient((1, 1, 1)) / a)
    res, param = pencil_residual(f)
    return param if res <= tol else None


# -- the configuration --------------------------------------------------------

def flex_point(i: int, j: int) -> PPoint:
    c = -(W ** (j % 3))
    i %= 3
    if i == 0:
        return PPoint((0, c, 1))
    if i == 1:
        return PPoint((1, 0, c))
    return PPoint((c, 1, 0))


FLEX_LABELS: tuple[Point, ...] = POINTS  # (0,0), (0,1), ..., (2,2)
FLEXES: tuple[PPoint, ...] = tuple(flex_point(i, j) for i, j in FLEX_LABELS)

# linear factors of the singular members, keyed by parameter
LINE_FACTORS: dict[PencilParam, tuple[tuple, ...]] = {
    INFINITY: ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    PencilParam(-3): ((1, 1, 1), (1, W, W2), (1, W2, W)),
    PencilParam(-3 * W): ((1, 1, W), (1, W, 1), (1, W2, W2)),
    PencilParam(-3 * W2): ((1, 1, W2), (1, W, W), (1, W2, 1)),
}
LINES: tuple[PLine, ...] = tuple(PLine(c) for factors in LINE_FACTORS.values() for c in factors)


def label_of(p: PPoint) -> Point:
    for label, q in zip(FLEX_LABELS, FLEXES):
        if p == q:
            return label
    raise ValueError(f"{p} is not one of the nine flexes")


@dataclass(frozen=True)
class HesseConfig:
    flexes: tuple[PPoint, ...]
    lines: tuple[PLine, ...]
    incidence: tuple[tuple[bool, ...], ...]  # 12 rows (lines) x 9 columns (flexes)

    def flexes_on(self, line: int) -> list[Point]:
        return [FLEX_LABELS[k] for k, hit in enumerate(self.incidence[line]) if hit]

    def lines_through(self, flex: Point) -> list[int]:
        k = FLEX_LABELS.index(flex)
        return [i for i, row in enumerate(self.incidence) if row[k]]

    def third(self, a: Point, b: Point) -> Point:
        """The third flex on the line through two distinct flexes."""
        for i in self.lines_through(a):
            on = self.flexes_on(i)
            if b in on:
                return next(p for p in on if p not in (a, b))
        raise VerificationError(f"no line through {a} and {b}")


@lru_cache(maxsize=None)
def incidence_report() -> HesseConfig:
    table = tuple(tuple(line.contains(p) for p in FLEXES) for line in LINES)
    cfg = HesseConfig(FLEXES, LINES, table)
    if len(set(LINES)) != 12:
        raise VerificationError("the 12 lines are not distinct")
    if any(sum(row) != 3 for row in table):
        raise VerificationError("some line does not hold exactly 3 flexes")
    if any(sum(row[k] for row in table) != 4 for k in range(9)):
        raise VerificationError("some flex is not on exactly 4 lines")
    for a, b in combinations(range(9), 2):
        if sum(row[a] and row[b] for row in table) != 1:
            raise VerificationError("a pair of flexes is not on exactly one line")
    return cfg


def collinearity_agreement() -> tuple[int, int, bool]:
    """Count collinear triples projectively and in F3^2; report if they agree."""
    proj = f3 = 0
    agree = True
    for a, b, c in combinations(range(9), 3):
        cp = collinear(FLEXES[a], FLEXES[b], FLEXES[c])
        cf = collinear_f3(FLEX_LABELS[a], FLEX_LABELS[b], FLEX_LABELS[c])
        proj += cp
        f3 += cf
        agree &= cp == cf
    return proj, f3, agree


def evaluation_matrix() -> list[list[Eis]]:
    """Rows: the flexes; columns: the monomials in descending lex order."""
    rows = []
    for p in FLEXES:
        x = p.coords
        rows.append([x[0] ** e[0] * x[1] ** e[1] * x[2] ** e[2] for e in MONOMIALS])
    return rows


def cubics_through_flexes() -> list[Cubic]:
    """A basis of the cubics vanishing on all nine flexes."""
    basis = linalg.kernel(evaluation_matrix(), one=Eis(1), zero=Eis(0))
    return [Cubic.from_vector(v) for v in basis]


def flex_add(a: Point, b: Point, o: Point = (0, 0)) -> Point:
    """Chord-tangent addition of flexes with neutral element o."""
    cfg = incidence_report()
    if a != b:
        c = cfg.third(a, b)
    elif a != o:
        return cfg.third(a, o)
    else:
        return o
    return o if c == o else cfg.third(c, o)


def singular_member_factors(lam: PencilParam) -> list[Poly]:
    return [Poly.linear(c) for c in LINE_FACTORS[lam]]


# -- normal form --------------------------------------------------------------

FRAME_LABELS: tuple[Point, ...] = ((0, 0), (1, 0), (1, 1), (2, 1))


def _collinear_triples(points: Sequence[np.ndarray]) -> list[tuple[int, int, int]]:
    dets = sorted(
        (abs(np.linalg.det(np.array([points[a], points[b], points[c]]))), (a, b, c))
        for a, b, c in combinations(range(9), 3)
    )
    return [t for _, t in dets[:12]]


def label_flexes(points: Sequence[np.ndarray]) -> dict[Point, int]:
    """Label nine numeric flexes by F3^2 so that collinear triples sum to zero.

    Three non-collinear flexes fix (0,0), (1,0), (0,1); the rest follow
    from (i, j) = third((2i, 0), (0, 2j)).  Raises NumericFailure if the
    12 most nearly collinear triples do not form an affine plane.
    """
    triples = _collinear_triples(points)
    third = {}
    for a, b, c in triples:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            third[(x, y)] = third[(y, x)] = z
    if len(third) != 72:
        raise NumericFailure("flex collinearity graph is not an affine plane")
    label: dict[Point, int] = {(0, 0): 0, (1, 0): 1}
    label[(2, 0)] = third[(0, 1)]
    label[(0, 1)] = next(k for k in range(9) if k not in label.values())
    label[(0, 2)] = third[(0, label[(0, 1)])]
    for i in (1, 2):
        for j in (1, 2):
            label[(i, j)] = third[(label[(2 * i % 3, 0)], label[(0, 2 * j % 3)])]
    if len(set(label.values())) != 9:
        raise NumericFailure("flex labelling is not a bijection")
    for a, b, c in triples:
        inv = {v: k for k, v in label.items()}
        if not collinear_f3(inv[a], inv[b], inv[c]):
            raise NumericFailure("flex labelling does not respect collinearity")
    return label


def to_hesse_normal_form(f: Poly, seed: int = 0, tol: float = 1e-6) -> tuple[PTransform, PencilParam]:
    """A transform T and parameter lam with act(T, f) proportional to a pencil member."""
    from .flexsolve import flexes_numeric

    res = flexes_numeric(f, seed=seed)
    pts = [fp for fp in res.flexes if not fp.singular]
    if res.dim != 0 or len(pts) != 9:
        raise NumericFailure(f"expected 9 smooth flexes, found {len(pts)}")
    vecs = [np.array(fp.point.coords, dtype=complex) for fp in pts]
    label = label_flexes(vecs)
    fc = f.to_complex() if isinstance(f, Cubic) else Cubic.from_poly(f).to_complex()
    best = None
    for mirror in (False, True):
        src = []
        for i, j in FRAME_LABELS:
            key = (i, (2 * j) % 3) if mirror else (i, j)
            src.append(pts[label[key]].point)
        dst = [flex_point(i, j).to_complex() for i, j in FRAME_LABELS]
        T = transform_from_frames(src, dst)
        r, param = pencil_residual(act(T.matrix, fc))
        if best is None or r < best[0]:
            best = (r, T, param)
        if r <= tol:
            return T, param
    raise NumericFailure(f"normal form residual {best[0]:.3g} exceeds tolerance")


def flex_group_table(o: Point = (0, 0)) -> dict[tuple[Point, Point], Point]:
    return {(a, b): flex_add(a, b, o) for a in FLEX_LABELS for b in FLEX_LABELS}


def transported_table(o: Point = (0, 0)) -> dict[tuple[Point, Point], Point]:
    """Addition of F3^2 moved so that o is the neutral element."""
    neg_o = ((-o[0]) % 3, (-o[1]) % 3)
    return {
        (a, b): add_points(add_points(a, b), neg_o) for a in FLEX_LABELS for b in FLEX_LABELS
    }


__all__ = [
    "FERMAT", "TRIANGLE", "PencilParam", "INFINITY", "SINGULAR_PARAMS", "pencil_member",
    "pencil_residual", "in_pencil", "flex_point", "FLEX_LABELS", "FLEXES", "LINE_FACTORS",
    "LINES", "label_of", "HesseConfig", "incidence_report", "collinearity_agreement",
    "evaluation_matrix", "cubics_through_flexes", "flex_add", "singular_member_factors",
    "FRAME_LABELS", "label_flexes", "to_hesse_normal_form", "flex_group_table",
    "transported_table", "third_point",
]
