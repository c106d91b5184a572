"""Normal forms of the singular plane cubics and their recorded invariants.

Rows are keyed ``h3, h5, h6, h_mu_6, h7, h_mu_7, h8, h_mu_8``; the ``mu``
rows take a nonzero scalar parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .classify import CubicType
from .poly import Cubic, Poly
from .scalar import Eis

x0, x1, x2 = (Poly.var(i) for i in range(3))


@dataclass(frozen=True)
class NormalForm:
    row: str
    cubic_type: CubicType
    orbit_dim: int
    flex_dim: int
    flex_components: int
    has_mu: bool
    _form: Callable[[Eis], Poly]
    _hessian: Callable[[Eis], Poly]
    _factors: Callable[[Eis], tuple]

    def form(self, mu=1) -> Cubic:
        return Cubic.from_poly(self._form(Eis.coerce(mu)))

    def expected_hessian(self, mu=1) -> Cubic:
        h = self._hessian(Eis.coerce(mu))
        return Cubic.from_poly(h) if not h.is_zero() else Cubic({})

    def factors(self, mu=1) -> tuple[Poly, ...]:
        """Irreducible factors of the form, without the scalar mu."""
        return self._factors(Eis.coerce(mu))


_zero = Poly({})
_conic = x0**2 - x1 * x2

NORMAL_FORMS: dict[str, NormalForm] = {
    nf.row: nf
    for nf in (
        NormalForm("h3", CubicType.TRIPLE_LINE, 3, 1, 1, False,
                   lambda m: x0**3, lambda m: _zero, lambda m: (x0,)),
        NormalForm("h5", CubicType.DOUBLE_LINE_PLUS_LINE, 5, 1, 2, False,
                   lambda m: x0**2 * x1, lambda m: _zero, lambda m: (x0, x1)),
        NormalForm("h6", CubicType.THREE_CONCURRENT_LINES, 6, 1, 3, False,
                   lambda m: x0 * x1 * (x0 + x1), lambda m: _zero, lambda m: (x0, x1, x0 + x1)),
        NormalForm("h_mu_6", CubicType.TRIANGLE, 6, 1, 3, True,
                   lambda m: x0 * x1 * x2 * m,
                   lambda m: x0 * x1 * x2 * (2 * m**3),
                   lambda m: (x0, x1, x2)),
        NormalForm("h7", CubicType.CONIC_PLUS_TANGENT_LINE, 7, 1, 1, False,
                   lambda m: _conic * x1, lambda m: x1**3 * -8, lambda m: (_conic, x1)),
        NormalForm("h_mu_7", CubicType.CONIC_PLUS_SECANT_LINE, 7, 1, 1, True,
                   lambda m: _conic * x0 * m,
                   lambda m: (3 * x0**2 + x1 * x2) * x0 * (-2 * m**3),
                   lambda m: (_conic, x0)),
        NormalForm("h8", CubicType.CUSPIDAL_CUBIC, 8, 0, 0, False,
                   lambda m: x1**2 * x2 - x0**3, lambda m: x0 * x1**2 * 24,
                   lambda m: (x1**2 * x2 - x0**3,)),
        NormalForm("h_mu_8", CubicType.NODAL_CUBIC, 8, 0, 0, True,
                   lambda m: (x1**2 * x2 - x0**3 - x0**2 * x2) * m,
                   lambda m: (-(x0**2) * x2 + 3 * x0 * x1**2 + x1**2 * x2) * (8 * m**3),
                   lambda m: (x1**2 * x2 - x0**3 - x0**2 * x2,)),
    )
}

ROWS = tuple(NORMAL_FORMS)


def match_normal_form(f: Poly) -> tuple[str, Eis] | None:
    """The row and mu with f equal to that normal form, if any (mu tried from the coefficients)."""
    f = f if isinstance(f, Cubic) else Cubic.from_poly(f)
    if not f.is_exact() or f.is_zero():
        return None
    for nf in NORMAL_FORMS.values():
        base = nf.form(1)
        e, c = next(iter(base.terms.items()))
        mu = f.coefficient(e) / c
        if not mu or (not nf.has_mu and mu != 1):
            continue
        if nf.form(mu) == f:
            return nf.row, mu
    return None
