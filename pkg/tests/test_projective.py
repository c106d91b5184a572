import random
from itertools import combinations, permutations

import pytest
from hypothesis import given

from conftest import eis_values, int_eis
from hessecubics import linalg
from hessecubics.errors import DegenerateFrameError, EqualPointsError, SingularMatrixError
from hessecubics.hesse import flex_point
from hessecubics.poly import random_unimodular
from hessecubics.projective import (
    STANDARD_FRAME,
    PLine,
    PPoint,
    PTransform,
    apply,
    collinear,
    line_through,
    meet,
    projective_distance,
    transform_from_frames,
)
from hessecubics.scalar import Eis, W

G1 = PTransform(((0, 1, 0), (0, 0, 1), (1, 0, 0)))


def random_frame(rng):
    while True:
        pts = [PPoint([Eis(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(3)]) for _ in range(4)]
        if all(any(p.coords) for p in pts) and not any(collinear(*t) for t in combinations(pts, 3)):
            return pts


def test_exact_canonical_form():
    p = PPoint((0, 2, 4))
    assert p.coords == (0, 1, 2)
    assert p == PPoint((0, W, 2 * W))


def test_zero_vector_rejected():
    with pytest.raises(ValueError):
        PPoint((0, 0, 0))


@given(int_eis, int_eis, int_eis, eis_values)
def test_canonicalisation_is_scale_invariant(a, b, c, s):
    if not (a or b or c) or not s:
        return
    p = PPoint((a, b, c))
    assert PPoint(tuple(s * x for x in (a, b, c))) == p
    assert PPoint(p.coords).coords == p.coords


def test_numeric_canonicalisation():
    p = PPoint((1j, 2j, 0))
    q = PPoint((3, 6, 0))
    assert p == q
    assert abs(sum(abs(c) ** 2 for c in p.coords) - 1) < 1e-15
    big = max(p.coords, key=abs)
    assert big.imag == 0 and big.real > 0
    with pytest.raises(TypeError):
        hash(p)


def test_mixed_exact_numeric_equality():
    assert PPoint((1, W, 0)) == PPoint((1, complex(W), 0))


def test_collinear_examples():
    t = flex_point
    assert collinear(t(0, 0), t(0, 1), t(0, 2))
    assert not collinear(t(0, 0), t(1, 0), t(1, 1))
    p, q = PPoint((1, 2, 3)), PPoint((0, 1, W))
    assert collinear(p, p, q)


def test_line_through_examples():
    assert line_through(flex_point(0, 0), flex_point(0, 1)) == PLine((1, 0, 0))
    assert line_through(PPoint((1, 0, 0)), PPoint((0, 1, 0))) == PLine((0, 0, 1))
    assert line_through(flex_point(0, 0), flex_point(1, 0)) == PLine((1, 1, 1))
    with pytest.raises(EqualPointsError):
        line_through(PPoint((1, 2, 3)), PPoint((2, 4, 6)))


def test_meet():
    assert meet(PLine((1, 0, 0)), PLine((0, 1, 0))) == PPoint((0, 0, 1))
    assert str(PLine((1, 1, 1))) == "x0 + x1 + x2 = 0"


def test_identical_frames_give_identity(rng):
    frame = random_frame(rng)
    assert transform_from_frames(frame, frame).is_identity()


def test_frame_to_permuted_frame_is_permutation():
    e = STANDARD_FRAME
    for perm in permutations(range(3)):
        dst = [e[perm[0]], e[perm[1]], e[perm[2]], e[3]]
        T = transform_from_frames(e, dst)
        expected = [[1 if i == perm[j] else 0 for j in range(3)] for i in range(3)]
        assert T == PTransform(expected)


def test_frame_map_that_misses_a_flex():
    t = flex_point
    src = [t(2, 1), t(0, 0), t(1, 0), t(1, 1)]
    dst = [t(2, 2), t(0, 0), t(1, 0), t(1, 2)]
    T = transform_from_frames(src, dst)
    for a, b in zip(src, dst):
        assert T(a) == b
    image = T(t(0, 1))
    assert image != t(0, 2)
    # frozen from an independent sympy computation
    assert image == PPoint((1, Eis(-1, -2) / 3, Eis(1, 2) / 3))


def test_frames_compose_to_identity(rng):
    for _ in range(20):
        a, b = random_frame(rng), random_frame(rng)
        assert (transform_from_frames(b, a) @ transform_from_frames(a, b)).is_identity()


def test_degenerate_frame():
    bad = [PPoint((1, 0, 0)), PPoint((0, 1, 0)), PPoint((1, 1, 0)), PPoint((0, 0, 1))]
    with pytest.raises(DegenerateFrameError):
        transform_from_frames(bad, STANDARD_FRAME)
    with pytest.raises(DegenerateFrameError):
        transform_from_frames(STANDARD_FRAME, bad)


def test_apply_examples():
    p = PPoint((2, W, -1))
    assert apply(PTransform.identity(), p) == p
    assert G1(p) == PPoint((W, -1, 2))
    g = PTransform(((1, 2, 0), (0, 1, W), (3, 0, 1)))
    assert g(g.inverse()(p)) == p


def test_apply_preserves_collinearity(rng):
    for _ in range(10):
        g = PTransform(random_unimodular(rng))
        p, q = PPoint((1, 2, W)), PPoint((0, 1, -3))
        r = PPoint(tuple(2 * a - W * b for a, b in zip(p.coords, q.coords)))
        assert collinear(g(p), g(q), g(r))


def test_transform_canonical_equality():
    a = PTransform(((2, 0, 0), (0, 2, 0), (0, 0, 2)))
    assert a == PTransform.identity() and hash(a) == hash(PTransform.identity())
    with pytest.raises(SingularMatrixError):
        PTransform(((1, 1, 0), (1, 1, 0), (0, 0, 1)))


def test_numeric_transform_equality():
    g = PTransform(((1, 2, 0), (0, 1, W), (3, 0, 1)))
    assert g.to_complex() == g.to_complex()
    scaled = PTransform(tuple(tuple(2j * complex(x) for x in row) for row in g.matrix))
    assert scaled == g.to_complex()


def test_projective_distance_phase_invariant():
    u = (1, 1j, 0)
    v = tuple(-1j * x for x in u)
    assert projective_distance(u, v) < 1e-12
    assert projective_distance((1, 0, 0), (0, 1, 0)) > 1
