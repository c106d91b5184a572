"""Exact classification of plane cubics over Q(w).

The decision procedure works on the singular locus of C(f), i.e. the common
zeros of the three partial derivatives:

* no singular point          -> elliptic
* a line of singular points  -> triple line or double line plus line
* three / two points         -> triangle / conic plus secant line
* one point p                -> move p to (0:0:1) and read f = q2*x2 + q3;
  the rank of q2 and whether its root divides q3 separate concurrent lines,
  conic plus tangent, cuspidal and nodal cubics.

Singular points are counted without factoring: after a random unimodular
change of coordinates the x0/x1 ratios of singular points are roots of a
resultant, and the gcd of the partials is computed over the residue ring of
that resultant's squarefree part, splitting the ring whenever a zero
divisor turns up.  Points defined over a quadratic or larger extension of
Q(w) are thus counted correctly even though their coordinates are not
listed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from . import linalg
from . import upoly as U
from .errors import NotADivisorError, UnsupportedExtensionError, VerificationError
from .poly import Cubic, Poly, hessian
from .projective import PLine, PPoint, line_through
from .scalar import Eis

_MAX_TRIES = 25


class CubicType(Enum):
    ELLIPTIC = "elliptic"
    TRIPLE_LINE = "triple-line"
    DOUBLE_LINE_PLUS_LINE = "double-line-plus-line"
    THREE_CONCURRENT_LINES = "three-concurrent-lines"
    TRIANGLE = "triangle"
    CONIC_PLUS_TANGENT_LINE = "conic-plus-tangent"
    CONIC_PLUS_SECANT_LINE = "conic-plus-secant"
    CUSPIDAL_CUBIC = "cuspidal"
    NODAL_CUBIC = "nodal"

    @property
    def reducible(self) -> bool:
        return self not in (CubicType.ELLIPTIC, CubicType.CUSPIDAL_CUBIC, CubicType.NODAL_CUBIC)

    @property
    def table_row(self) -> str | None:
        """Name of the normal form of this orbit type (None for elliptic curves)."""
        return _TABLE_ROW.get(self)

    def __str__(self):
        return self.value


_TABLE_ROW = {
    CubicType.TRIPLE_LINE: "h3",
    CubicType.DOUBLE_LINE_PLUS_LINE: "h5",
    CubicType.THREE_CONCURRENT_LINES: "h6",
    CubicType.TRIANGLE: "h_mu_6",
    CubicType.CONIC_PLUS_TANGENT_LINE: "h7",
    CubicType.CONIC_PLUS_SECANT_LINE: "h_mu_7",
    CubicType.CUSPIDAL_CUBIC: "h8",
    CubicType.NODAL_CUBIC: "h_mu_8",
}


@dataclass
class SingularLocus:
    """Singular points of C(f).

    ``count`` is the number of distinct singular points when the locus is
    finite; ``points`` lists those whose coordinates lie in Q(w).
    """

    points: list[PPoint] = field(default_factory=list)
    infinite: bool = False
    witness_line: PLine | None = None
    count: int = 0

    @property
    def empty(self) -> bool:
        return not self.infinite and self.count == 0


# -- helpers ---------------------------------------------------------------

def _substitute(f: Poly, M) -> Cubic:
    """The form x -> f(M x)."""
    return Cubic.from_poly(f.substitute_linear(M))


def _zpoly(p: Poly) -> list:
    """p(t, 1, z) as a list, indexed by the power of z, of polynomials in t."""
    if p.is_zero():
        return []
    out = [[] for _ in range(max(e[2] for e in p.terms) + 1)]
    for (i, _j, k), c in p.terms.items():
        out[k] = U.add(out[k], [Eis(0)] * i + [c])
    return _ztrim(out)


def _ztrim(zp: list) -> list:
    zp = list(zp)
    while zp and not zp[-1]:
        zp.pop()
    return zp


def _at(zp: list, t0) -> list:
    return U.trim([U.evaluate(c, t0) for c in zp])


def _reduce(zp: list, s: list) -> list:
    return _ztrim([U.rem(c, s) for c in zp])


def _zrem(a: list, b: list, s: list) -> list:
    """Remainder of a by the monic b in (Q(w)[t]/s)[z]."""
    r = list(a)
    while len(r) >= len(b) and r:
        c = r[-1]
        k = len(r) - len(b)
        for i, bc in enumerate(b):
            r[i + k] = U.rem(U.sub(r[i + k], U.mul(c, bc)), s)
        r = _ztrim(r)
    return r


def _make_monic(s: list, a: list) -> list:
    """Split s so that on each factor a is zero or has a unit leading coefficient."""
    a = _reduce(a, s)
    if not a:
        return [(s, [])]
    lc = a[-1]
    g = U.gcd(lc, s)
    if U.deg(g) > 0:
        other = U.divmod_(s, g)[0]
        out = _make_monic(g, a)
        if U.deg(other) > 0:
            out += _make_monic(other, a)
        return out
    inv = U.inverse_mod(lc, s)
    return [(s, [U.rem(U.mul(c, inv), s) for c in a])]


def _gcd_pair(s: list, a: list, b: list) -> list:
    out = []
    for s1, bm in _make_monic(s, b):
        if not bm:
            out += _make_monic(s1, a)
            continue
        out += _gcd_pair(s1, bm, _zrem(_reduce(a, s1), bm, s1))
    return out


def gcd_over_residue_ring(s: list, polys: Sequence[list]) -> list:
    """Monic gcd of z-polynomials over Q(w)[t]/(s), s squarefree.

    Returns ``[(s_k, g_k)]`` with s = prod s_k and g_k the gcd over the
    factor ring Q(w)[t]/(s_k).
    """
    branches = [(s, polys[0])]
    for q in polys[1:]:
        nxt = []
        for sk, g in branches:
            nxt += _gcd_pair(sk, g, q)
        branches = nxt
    if len(polys) == 1:
        branches = [b for sk, g in branches for b in _make_monic(sk, g)]
    return branches


def _zderiv(g: list) -> list:
    return _ztrim([U.scale(g[k], k) for k in range(1, len(g))])


def _squarefree_branches(branches: list) -> list:
    """Attach to each (s_k, g_k) the number of distinct roots of g_k."""
    out = []
    for sk, g in branches:
        if len(g) <= 2:
            out.append((sk, g, len(g) - 1))
            continue
        for sk2, h in gcd_over_residue_ring(sk, [g, _zderiv(g)]):
            g2 = [U.rem(c, sk2) for c in g]
            out.append((sk2, g2, (len(g) - 1) - (len(h) - 1)))
    return out


def resultant_quadratics(za: list, zb: list) -> list:
    """Res_z of two quadratics in z whose coefficients are polynomials in t."""
    a0, a1, a2 = (list(za) + [[], [], []])[:3]
    b0, b1, b2 = (list(zb) + [[], [], []])[:3]
    u = U.sub(U.mul(a2, b0), U.mul(a0, b2))
    v = U.sub(U.mul(a2, b1), U.mul(a1, b2))
    w = U.sub(U.mul(a1, b0), U.mul(a0, b1))
    return U.sub(U.mul(u, u), U.mul(v, w))


def _random_change(rng: random.Random):
    from .poly import random_unimodular

    return random_unimodular(rng, steps=5, bound=2)


def _zero_on_x1_line(partials: Sequence[Poly]) -> bool:
    """Whether the partials have a common zero on the line x1 = 0."""
    if all(p((Eis(1), Eis(0), Eis(0))) == 0 for p in partials):
        return True
    g: list = []
    for p in partials:
        q = U.trim([Eis(0)] * 0)
        for (i, j, k), c in p.terms.items():
            if j == 0:
                q = U.add(q, [Eis(0)] * i + [c])
        g = U.gcd(g, q)
    return U.deg(g) >= 1 or g == []


def _repeated_line(f: Cubic, rng: random.Random) -> PLine | None:
    """The line l with l^2 | f, or None when f is squarefree."""
    for _ in range(_MAX_TRIES):
        M = _random_change(rng)
        F = _substitute(f, M)
        if F.coefficient((0, 0, 3)) == 0:
            continue
        zp = _zpoly(F)
        roots = []
        # the z-discriminant has degree <= 6 in t: 7 vanishing values force it to 0
        for t0 in range(7):
            u = _at(zp, Eis(t0))
            g = U.gcd(u, U.deriv(u))
            if U.deg(g) < 1:
                return None
            r = U.squarefree(g)
            if U.deg(r) == 1 and len(roots) < 2:
                roots.append((Eis(t0), -r[0]))
        if len(roots) < 2:
            continue
        pts = [PPoint(linalg.mat_vec(M, (t0, Eis(1), z0))) for t0, z0 in roots]
        line = line_through(*pts)
        lin = Poly.linear(line.coords)
        if not (lin * lin).divides(f):
            raise VerificationError("repeated-line detection produced a non-divisor")
        return line
    raise VerificationError("no generic coordinate change found")


def _finite_locus(f: Cubic, rng: random.Random) -> tuple[list[PPoint], int]:
    for _ in range(_MAX_TRIES):
        M = _random_change(rng)
        F = _substitute(f, M)
        partials = [F.diff(i) for i in range(3)]
        if _zero_on_x1_line(partials):
            continue
        ra = [rng.randint(-3, 3) for _ in range(3)]
        rb = [rng.randint(-3, 3) for _ in range(3)]
        A = sum((p * Eis(c) for p, c in zip(partials, ra)), Poly._raw({}, 3))
        B = sum((p * Eis(c) for p, c in zip(partials, rb)), Poly._raw({}, 3))
        za, zb = _zpoly(A), _zpoly(B)
        if len(za) != 3 or len(zb) != 3 or U.deg(za[2]) != 0 or U.deg(zb[2]) != 0:
            continue
        R = resultant_quadratics(za, zb)
        if not R:
            continue
        s = U.squarefree(R)
        if U.deg(s) == 0:
            return [], 0
        branches = _squarefree_branches(
            gcd_over_residue_ring(s, [_zpoly(p) for p in partials])
        )
        # two singular points on one line through (0:0:1): not generic
        if any(d > 1 for _, _, d in branches):
            continue
        count = 0
        points = []
        for sk, g, d in branches:
            if d != 1:
                continue
            count += U.deg(sk)
            # g = (z - z0)^m over each root t0 of sk, so z0 = -g[m-1](t0) / m
            m = len(g) - 1
            for t0 in U.rational_roots(sk):
                z0 = -U.evaluate(g[m - 1], t0) / m
                points.append(PPoint(linalg.mat_vec(M, (t0, Eis(1), z0))))
        for p in points:
            if any(d(p.coords) != 0 for d in (f.diff(0), f.diff(1), f.diff(2))):
                raise VerificationError("computed singular point is not singular")
        return points, count
    raise VerificationError("no generic coordinate change found")


def _require_exact(f) -> Cubic:
    if not isinstance(f, Cubic):
        f = Cubic.from_poly(f)
    if f.is_zero():
        raise ValueError("the zero form does not define a curve")
    if not f.is_exact():
        raise TypeError("exact classification needs coefficients in Q(w)")
    return f


# -- operations --------------------------------------------------------------

def singular_points(f: Poly, seed: int = 0) -> SingularLocus:
    """Common zeros of the three partial derivatives of f."""
    f = _require_exact(f)
    rng = random.Random(seed)
    line = _repeated_line(f, rng)
    if line is not None:
        return SingularLocus(points=[], infinite=True, witness_line=line, count=0)
    points, count = _finite_locus(f, rng)
    return SingularLocus(points=sorted(points, key=_point_key), count=count)


def _point_key(p: PPoint):
    return tuple((c.a, c.b) for c in p.coords)


def _proportional(p: Poly, q: Poly) -> bool:
    if set(p.terms) != set(q.terms):
        return False
    ratio = None
    for e, c in p.terms.items():
        r = q.terms[e] / c
        if ratio is None:
            ratio = r
        elif r != ratio:
            return False
    return True


def _move_to_origin_frame(p: PPoint):
    """An invertible matrix whose last column is p."""
    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for a in range(3):
        for b in range(a + 1, 3):
            cols = (e[a], e[b], p.coords)
            M = linalg.as_matrix(linalg.transpose(cols))
            if linalg.det3(M) != 0:
                return M
    raise VerificationError("point has no complement basis")


def _one_point_type(f: Cubic, p: PPoint) -> CubicType:
    F = _substitute(f, _move_to_origin_frame(p))
    if any(e[2] >= 2 for e in F.terms):
        raise VerificationError("singular point was not moved to (0:0:1)")
    a = F.coefficient((2, 0, 1))
    b = F.coefficient((1, 1, 1))
    c = F.coefficient((0, 2, 1))
    if not (a or b or c):
        return CubicType.THREE_CONCURRENT_LINES
    if b * b - 4 * a * c != 0:
        return CubicType.NODAL_CUBIC
    # q2 = (const) * l^2; root of l
    root = (-b, 2 * a) if a else (Eis(1), Eis(0))
    q3 = Poly._raw({e: v for e, v in F.terms.items() if e[2] == 0}, 3)
    if q3((root[0], root[1], Eis(0))) == 0:
        return CubicType.CONIC_PLUS_TANGENT_LINE
    return CubicType.CUSPIDAL_CUBIC


def classify(f: Poly, seed: int = 0) -> CubicType:
    """The orbit type of f: one of the normal-form rows, or elliptic."""
    f = _require_exact(f)
    locus = singular_points(f, seed)
    if locus.infinite:
        lin = Poly.linear(locus.witness_line.coords)
        if _proportional(lin**3, f):
            return CubicType.TRIPLE_LINE
        return CubicType.DOUBLE_LINE_PLUS_LINE
    if locus.count == 0:
        return CubicType.ELLIPTIC
    if locus.count == 3:
        return CubicType.TRIANGLE
    if locus.count == 2:
        return CubicType.CONIC_PLUS_SECANT_LINE
    if locus.count == 1:
        if not locus.points:
            raise UnsupportedExtensionError("unique singular point is not Q(w)-rational")
        return _one_point_type(f, locus.points[0])
    raise VerificationError(f"a reduced cubic cannot have {locus.count} singular points")


def is_elliptic(f: Poly, seed: int = 0) -> bool:
    return classify(f, seed) is CubicType.ELLIPTIC


def is_reducible(f: Poly, seed: int = 0) -> bool:
    return classify(f, seed).reducible


def component_in_flex_locus(p: Poly, f: Poly) -> bool:
    """Whether the component {p = 0} of C(f) lies in the Hessian curve of f."""
    f = _require_exact(f)
    if not p.divides(f):
        raise NotADivisorError("the component form does not divide f")
    h = hessian(f)
    return h.is_zero() or p.divides(h)


def flex_components(factors: Sequence[Poly], f: Poly) -> int:
    """Number of the given irreducible factors whose zero set lies in Fl(C(f))."""
    return sum(component_in_flex_locus(p, f) for p in factors)
