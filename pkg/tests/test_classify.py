import random

import pytest

from conftest import random_exact_cubic
from hessecubics.classify import (
    CubicType,
    classify,
    component_in_flex_locus,
    flex_components,
    gcd_over_residue_ring,
    is_elliptic,
    is_reducible,
    resultant_quadratics,
    singular_points,
)
from hessecubics.errors import NotADivisorError
from hessecubics.hesse import pencil_member
from hessecubics.normal_forms import NORMAL_FORMS
from hessecubics.parsing import parse_cubic
from hessecubics.poly import Cubic, Poly, act, random_unimodular, sl3_orbit_dim
from hessecubics.projective import PLine, PPoint
from hessecubics.scalar import W, Eis

X0, X1, X2 = (Poly.var(i) for i in range(3))
MUS = (1, 2, W)


def forms():
    for nf in NORMAL_FORMS.values():
        for mu in MUS if nf.has_mu else (1,):
            yield nf, mu, nf.form(mu)


def test_fermat_is_smooth():
    locus = singular_points(parse_cubic("x0^3 + x1^3 + x2^3"))
    assert locus.empty and not locus.points and not locus.infinite


def test_triangle_vertices():
    locus = singular_points(X0 * X1 * X2)
    assert set(locus.points) == {PPoint((1, 0, 0)), PPoint((0, 1, 0)), PPoint((0, 0, 1))}
    assert locus.count == 3


def test_double_line_locus():
    locus = singular_points(X0**2 * X1)
    assert locus.infinite and locus.points == []
    assert locus.witness_line == PLine((1, 0, 0))


def test_listed_points_are_singular(rng):
    for nf, mu, f in forms():
        g = random_unimodular(rng)
        h = act(g, f)
        for p in singular_points(h).points:
            assert all(h.diff(i)(p.coords) == 0 for i in range(3))


def test_irrational_singular_points_are_counted():
    # conic x1^2 - 3*x2^2 + x0*x2 meets x0 = 0 where x1 = +-sqrt(3)*x2
    f = parse_cubic("x0*(x1^2 - 3*x2^2 + x0*x2)")
    locus = singular_points(f)
    assert locus.count == 2 and locus.points == []
    assert classify(f) is CubicType.CONIC_PLUS_SECANT_LINE


def test_irrational_triangle():
    f = parse_cubic("x2*(x0^2 - 2*x1^2)")
    locus = singular_points(f)
    assert locus.count == 3 and locus.points == [PPoint((0, 0, 1))]
    assert classify(f) is CubicType.TRIANGLE


@pytest.mark.parametrize("row", list(NORMAL_FORMS))
def test_normal_forms_get_their_tag(row):
    nf = NORMAL_FORMS[row]
    for mu in MUS if nf.has_mu else (1,):
        assert classify(nf.form(mu)) is nf.cubic_type
        assert nf.cubic_type.table_row == row


def test_tags_serialise():
    assert [t.value for t in CubicType] == [
        "elliptic", "triple-line", "double-line-plus-line", "three-concurrent-lines", "triangle",
        "conic-plus-tangent", "conic-plus-secant", "cuspidal", "nodal",
    ]


def test_classification_is_orbit_invariant():
    rng = random.Random(7)
    for nf, mu, f in forms():
        for _ in range(10):
            g = random_unimodular(rng, steps=4, bound=2)
            assert classify(act(g, f), seed=rng.randrange(100)) is nf.cubic_type


def test_cuspidal_translate():
    rng = random.Random(3)
    for _ in range(3):
        g = random_unimodular(rng)
        assert classify(act(g, X1**2 * X2 - X0**3)) is CubicType.CUSPIDAL_CUBIC


def test_singular_pencil_members():
    assert classify(pencil_member(-3)) is CubicType.TRIANGLE
    assert classify(pencil_member(-3 * W)) is CubicType.TRIANGLE
    assert classify(pencil_member(None)) is CubicType.TRIANGLE


def test_is_elliptic_examples():
    assert is_elliptic(pencil_member(1))
    assert not is_elliptic(pencil_member(-3 * W))
    assert not is_elliptic(X0**3)


def test_orbit_dim_drops_exactly_for_reducible():
    for nf, mu, f in forms():
        assert (sl3_orbit_dim(f) < 8) == is_reducible(f)
    rng = random.Random(11)
    smooth = 0
    while smooth < 20:
        f = random_exact_cubic(rng)
        if classify(f) is CubicType.ELLIPTIC:
            assert sl3_orbit_dim(f) == 8
            smooth += 1


def test_component_examples():
    h7 = NORMAL_FORMS["h7"].form()
    assert component_in_flex_locus(X1, h7)
    assert not component_in_flex_locus(X0**2 - X1 * X2, h7)
    tri = NORMAL_FORMS["h_mu_6"].form()
    assert all(component_in_flex_locus(x, tri) for x in (X0, X1, X2))
    assert component_in_flex_locus(X0, NORMAL_FORMS["h6"].form())


def test_component_must_divide():
    with pytest.raises(NotADivisorError):
        component_in_flex_locus(X2, NORMAL_FORMS["h7"].form())


def test_flex_component_counts():
    for nf, mu, f in forms():
        assert flex_components(nf.factors(mu), f) == nf.flex_components


def test_zero_form_rejected():
    with pytest.raises(ValueError):
        classify(Cubic({}))


def test_numeric_input_rejected():
    with pytest.raises(TypeError):
        classify(pencil_member(1).to_complex())


def test_resultant_of_quadratics():
    # (z - 1)(z - 2) and (z - 2)(z + 5) share a root
    one = Eis(1)
    za = [[Eis(2)], [Eis(-3)], [one]]
    zb = [[Eis(-10)], [Eis(3)], [one]]
    assert all(not c for c in resultant_quadratics(za, zb))


def test_gcd_over_residue_ring_splits():
    # modulo t^2 - 1: gcd of (z - t) and (z - 1) is z - 1 on the branch t = 1 only
    one, zero = Eis(1), Eis(0)
    s = [Eis(-1), zero, one]
    a = [[zero, Eis(-1)], [one]]
    b = [[Eis(-1)], [one]]
    branches = gcd_over_residue_ring(s, [a, b])
    degrees = sorted(len(g) - 1 for _, g in branches)
    assert degrees == [0, 1]
