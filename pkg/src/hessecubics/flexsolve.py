"""Numeric flex loci: C(f) intersected with the Hessian curve {H_f = 0}.

The solver eliminates x2 with a resultant after a random special unitary
change of coordinates, takes the complex roots of the resulting binary
form, lifts each root back to the curve and polishes the point with Newton
steps on {f = 0, H_f = 0}.  Points where the gradient of f vanishes (the
singular points, which belong to the Hessian curve too) are polished on
grad f = 0 instead and flagged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .classify import classify
from .errors import NumericFailure
from .poly import Cubic, Poly, hessian
from .projective import PPoint, projective_distance

MAX_NEWTON = 40
STEP_TOL = 1e-14
CLOSE_RAW = 1e-3
LEAD_TOL = 1e-10
ROUNDING_RESIDUAL = 1e-13
ZERO_HESSIAN = 1e-12
SHARED_COMPONENT = 1e-10
_PROBE_LINES = 4
_DFT_NODES = 16


@dataclass(frozen=True)
class FlexPair:
    """A cubic together with a point of its flex locus."""

    cubic: Cubic
    point: PPoint

    def residuals(self) -> tuple[float, float]:
        f = _normalized(self.cubic.to_complex())
        h = _normalized(hessian(f))
        x = _unit(self.point.coords)
        return abs(_Evaluator(f).value(x)), abs(_Evaluator(h).value(x))

    def is_valid(self, tol: float = 1e-8) -> bool:
        if self.cubic.is_exact() and self.point.exact:
            return self.cubic(self.point.coords) == 0 and hessian(self.cubic)(self.point.coords) == 0
        return max(self.residuals()) < tol


@dataclass
class FlexPoint:
    point: PPoint
    residual_f: float
    residual_h: float
    singular: bool = False
    converged: bool = True

    @property
    def residual(self) -> float:
        return max(self.residual_f, self.residual_h)


@dataclass
class FlexResult:
    flexes: list[FlexPoint] = field(default_factory=list)
    multiplicity_warning: bool = False
    dim: int = 0

    @property
    def points(self) -> list[PPoint]:
        return [fp.point for fp in self.flexes]

    @property
    def residuals(self) -> list[tuple[float, float]]:
        return [(fp.residual_f, fp.residual_h) for fp in self.flexes]


@dataclass(frozen=True)
class FiberProfile:
    in_J: bool
    fiber_dim: int


# -- numeric helpers ----------------------------------------------------------

def _unit(v: Sequence) -> np.ndarray:
    x = np.array([complex(c) for c in v], dtype=complex)
    return x / np.linalg.norm(x)


def _normalized(f: Poly) -> Cubic:
    f = f if isinstance(f, Cubic) else Cubic.from_poly(f)
    if f.is_zero():
        return f
    scale = max(abs(complex(c)) for c in f.terms.values())
    return Cubic({e: complex(c) / scale for e, c in f.terms.items()})


class _Evaluator:
    """Fast evaluation of a complex cubic, its gradient and Hessian matrix."""

    def __init__(self, f: Cubic):
        self.exps = np.array(list(f.terms), dtype=int).reshape(-1, 3)
        self.coef = np.array([complex(c) for c in f.terms.values()], dtype=complex)

    def value(self, x: np.ndarray) -> complex:
        if not len(self.coef):
            return 0j
        return complex(np.sum(self.coef * np.prod(x[None, :] ** self.exps, axis=1)))

    def grad(self, x: np.ndarray) -> np.ndarray:
        g = np.zeros(3, dtype=complex)
        for i in range(3):
            e = self.exps.copy()
            c = self.coef * e[:, i]
            e[:, i] = np.maximum(e[:, i] - 1, 0)
            g[i] = np.sum(c * np.prod(x[None, :] ** e, axis=1))
        return g

    def second(self, x: np.ndarray) -> np.ndarray:
        m = np.zeros((3, 3), dtype=complex)
        for i in range(3):
            for j in range(3):
                e = self.exps.copy()
                c = self.coef * e[:, i]
                e[:, i] = np.maximum(e[:, i] - 1, 0)
                c = c * e[:, j]
                e[:, j] = np.maximum(e[:, j] - 1, 0)
                m[i, j] = np.sum(c * np.prod(x[None, :] ** e, axis=1))
        return m


def random_special_unitary(rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    q = q * (d / np.abs(d))[None, :]
    return q / np.linalg.det(q) ** (1.0 / 3.0)


def _z_coefficients(f: Cubic, t: complex) -> np.ndarray:
    """Coefficients (z^3 .. z^0) of f(t, 1, z)."""
    out = np.zeros(4, dtype=complex)
    for (i, _j, k), c in f.terms.items():
        out[3 - k] += complex(c) * t**i
    return out


def _sylvester_det(a: np.ndarray, b: np.ndarray) -> complex:
    n = 6
    S = np.zeros((n, n), dtype=complex)
    for r in range(3):
        S[r, r: r + 4] = a
        S[3 + r, r: r + 4] = b
    return complex(np.linalg.det(S))


def resultant_coefficients(f: Cubic, h: Cubic) -> np.ndarray:
    """Coefficients (constant first) of Res_z(f(t,1,z), h(t,1,z)) in t.

    Values on the unit circle are interpolated with a DFT, which is exact
    up to rounding for degree < the number of nodes.
    """
    nodes = np.exp(2j * np.pi * np.arange(_DFT_NODES) / _DFT_NODES)
    vals = np.array(
        [_sylvester_det(_z_coefficients(f, t), _z_coefficients(h, t)) for t in nodes]
    )
    coeffs = np.fft.fft(vals) / _DFT_NODES
    return coeffs[:10]


def _chart_newton(funcs, jac, x: np.ndarray) -> tuple[np.ndarray, bool]:
    """Newton / Gauss-Newton in the affine chart pinning the largest coordinate."""
    x = x / np.linalg.norm(x)
    pin = int(np.argmax(np.abs(x)))
    free = [i for i in range(3) if i != pin]
    y = x / x[pin]
    converged = False
    for _ in range(MAX_NEWTON):
        r = funcs(y)
        J = jac(y)[:, free]
        step = np.linalg.lstsq(J, -r, rcond=None)[0]
        y[free] = y[free] + step
        if not np.all(np.isfinite(y)):
            return x, False
        if np.linalg.norm(step) < STEP_TOL * max(1.0, np.linalg.norm(y)):
            converged = True
            break
    y = y / np.linalg.norm(y)
    # ill-conditioned systems stall above the step tolerance at rounding level
    converged = converged or np.linalg.norm(funcs(y)) < ROUNDING_RESIDUAL
    return y, converged


def _shares_component(fc: Cubic, hc: Cubic, rng: np.random.Generator) -> bool:
    """Whether C(f) and C(H) have a common component, for normalized f and H.

    Each random line meets C(f) in three points; a common component puts
    one of them on C(H) for every line, otherwise none is on it.
    """
    ev_f, ev_h = _Evaluator(fc), _Evaluator(hc)
    nodes = np.array([1, -1, 1j, -1j])
    vander = np.vander(nodes, 4)
    for _ in range(_PROBE_LINES):
        a, b = np.linalg.qr(rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2)))[0].T
        coeffs = np.linalg.solve(vander, [ev_f.value(a + s * b) for s in nodes])
        pts = [a + s * b for s in np.roots(coeffs)]
        if min(abs(ev_h.value(p / np.linalg.norm(p))) for p in pts) > SHARED_COMPONENT:
            return False
    return True


def _canonical_key(p: PPoint):
    return tuple((round(c.real, 9), round(c.imag, 9)) for c in p.coords)


# -- operations --------------------------------------------------------------

def flexes_numeric(f: Poly, seed: int = 0, tol: float = 1e-6) -> FlexResult:
    """All points of C(f) on the Hessian curve, for a cubic with finite flex locus.

    Returns ``dim = 1`` with no points when C(f) and its Hessian curve share
    a component (the resultant then vanishes identically), which happens
    exactly for reducible cubics.
    """
    fc = _normalized(Cubic.from_poly(f) if not isinstance(f, Cubic) else f.to_complex())
    if fc.is_zero():
        raise ValueError("the zero form does not define a curve")
    h_raw = hessian(fc)
    if h_raw.is_zero() or max(abs(complex(c)) for c in h_raw.terms.values()) < ZERO_HESSIAN:
        return FlexResult(dim=1)
    hc = _normalized(h_raw)
    rng = np.random.default_rng(seed)
    if _shares_component(fc, hc, rng):
        return FlexResult(dim=1)

    for attempt in range(2):
        Umat = random_special_unitary(rng)
        rows = [tuple(r) for r in Umat]
        F = _normalized(fc.substitute_linear(rows))
        Hh = _normalized(hc.substitute_linear(rows))
        R = resultant_coefficients(F, Hh)
        scale = np.max(np.abs(R))
        if scale == 0 or abs(R[9]) < LEAD_TOL * scale or abs(F.coefficient((0, 0, 3))) < LEAD_TOL:
            if attempt == 0:
                continue
            raise NumericFailure("no generic coordinate change found")
        break

    t_roots = np.roots(R[::-1])
    ev_f, ev_h = _Evaluator(fc), _Evaluator(hc)
    ev_F, ev_H = _Evaluator(F), _Evaluator(Hh)
    raw = []
    for t in t_roots:
        zs = np.roots(_z_coefficients(F, t))
        best = min(zs, key=lambda z: abs(ev_H.value(np.array([t, 1.0, z]))))
        raw.append(Umat @ np.array([t, 1.0, best]))

    warn = any(
        projective_distance(raw[i], raw[j]) < CLOSE_RAW
        for i in range(len(raw))
        for j in range(i + 1, len(raw))
    )

    def fh(y):
        return np.array([ev_f.value(y), ev_h.value(y)])

    def fh_jac(y):
        return np.vstack([ev_f.grad(y), ev_h.grad(y)])

    found: list[FlexPoint] = []
    for x0 in raw:
        x, ok = _chart_newton(fh, fh_jac, x0)
        grad_norm = np.linalg.norm(ev_f.grad(x))
        singular = False
        if grad_norm < 1e-3 or not ok:
            xs, ok_s = _chart_newton(ev_f.grad, ev_f.second, x if ok else x0 / np.linalg.norm(x0))
            if np.linalg.norm(ev_f.grad(xs)) < 1e-9:
                x, ok, singular = xs, True, True
        fp = FlexPoint(
            point=PPoint(tuple(complex(c) for c in x)),
            residual_f=abs(ev_f.value(x)),
            residual_h=abs(ev_h.value(x)),
            singular=singular,
            converged=ok,
        )
        for k, other in enumerate(found):
            if projective_distance(other.point.coords, fp.point.coords) < tol:
                if fp.residual < other.residual:
                    found[k] = fp
                break
        else:
            found.append(fp)

    found.sort(key=lambda fp: _canonical_key(fp.point))
    return FlexResult(flexes=found, multiplicity_warning=warn, dim=0)


def fl_dimension(f: Poly, seed: int = 0) -> int:
    """Dimension of Fl(C(f)): 1 exactly for reducible f."""
    return 1 if classify(f, seed).reducible else 0


def fiber_profile(f: Poly, seed: int = 0) -> FiberProfile:
    """Dimension of the fiber of the flex variety over the class of f."""
    d = fl_dimension(f, seed)
    return FiberProfile(in_J=d == 1, fiber_dim=d)
