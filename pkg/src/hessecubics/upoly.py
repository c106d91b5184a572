"""Dense univariate polynomials over Q(w).

A polynomial is a list of coefficients, constant term first, with no
trailing zeros (the zero polynomial is ``[]``).  Only what the exact
singular-point computation needs is provided.
"""

from __future__ import annotations

from typing import Sequence

from .scalar import Eis

UPoly = list

ONE = Eis(1)


def trim(p: Sequence) -> UPoly:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def deg(p: UPoly) -> int:
    return len(p) - 1


def add(p: UPoly, q: UPoly) -> UPoly:
    n = max(len(p), len(q))
    zero = Eis(0)
    return trim(
        [(p[i] if i < len(p) else zero) + (q[i] if i < len(q) else zero) for i in range(n)]
    )


def neg(p: UPoly) -> UPoly:
    return [-c for c in p]


def sub(p: UPoly, q: UPoly) -> UPoly:
    return add(p, neg(q))


def mul(p: UPoly, q: UPoly) -> UPoly:
    if not p or not q:
        return []
    out = [Eis(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def scale(p: UPoly, c) -> UPoly:
    return trim([a * c for a in p])


def monic(p: UPoly) -> UPoly:
    if not p:
        return []
    inv = p[-1].inverse()
    return [a * inv for a in p]


def divmod_(p: UPoly, q: UPoly) -> tuple[UPoly, UPoly]:
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(p)
    dq = deg(q)
    inv = q[-1].inverse()
    quo = [Eis(0)] * max(0, len(p) - dq)
    while len(r) - 1 >= dq and r:
        k = len(r) - 1 - dq
        c = r[-1] * inv
        quo[k] = c
        for i, b in enumerate(q):
            r[i + k] = r[i + k] - c * b
        r = trim(r)
    return trim(quo), r


def rem(p: UPoly, q: UPoly) -> UPoly:
    return divmod_(p, q)[1]


def gcd(p: UPoly, q: UPoly) -> UPoly:
    """Monic greatest common divisor (``[]`` if both are zero)."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def deriv(p: UPoly) -> UPoly:
    return trim([p[i] * i for i in range(1, len(p))])


def squarefree(p: UPoly) -> UPoly:
    """Monic squarefree part p / gcd(p, p')."""
    p = trim(p)
    if deg(p) <= 0:
        return monic(p)
    g = gcd(p, deriv(p))
    return monic(divmod_(p, g)[0])


def evaluate(p: UPoly, x):
    acc = Eis(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def inverse_mod(a: UPoly, m: UPoly) -> UPoly:
    """Inverse of ``a`` modulo ``m``; raises ZeroDivisionError if not a unit."""
    r0, r1 = trim(m), rem(a, m)
    s0, s1 = [], [ONE]
    while r1:
        qt, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(qt, s1))
    if deg(r0) != 0:
        raise ZeroDivisionError("not invertible modulo m")
    return rem(scale(s0, r0[0].inverse()), m)


def interpolate(xs: Sequence, ys: Sequence) -> UPoly:
    """Lagrange interpolation through (xs[i], ys[i])."""
    out: UPoly = []
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        num = [ONE]
        den = ONE
        for j, xj in enumerate(xs):
            if j != i:
                num = mul(num, [-Eis.coerce(xj), ONE])
                den = den * (Eis.coerce(xi) - xj)
        out = add(out, scale(num, yi * den.inverse()))
    return out


def rational_roots(p: UPoly) -> list:
    """Roots of p lying in Q(w).

    Candidates come from numpy's companion-matrix roots and are kept only
    if they vanish exactly.
    """
    import numpy as np

    from .scalar import recognize

    p = trim(p)
    if deg(p) < 1:
        return []
    coeffs = [complex(c) for c in reversed(p)]
    found: list = []
    for z in np.roots(coeffs):
        cand = recognize(complex(z), tol=1e-6)
        if cand is not None and cand not in found and not evaluate(p, cand):
            found.append(cand)
    return found
