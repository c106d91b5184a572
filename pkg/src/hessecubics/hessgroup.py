"""The Hessian group: the 216 projective transformations preserving the flexes.

Elements are enumerated by breadth-first closure from five generators.
Each element permutes the nine flexes; reading that permutation through
the labels (i, j) in F3^2 gives an affine map, and this map theta is an
isomorphism onto the special affine group SAff(F3^2).
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from . import linalg
from .errors import HesseError, VerificationError
from .finitegeo import POINTS, AffMap3, Point, sub_points
from .hesse import FLEX_LABELS, FLEXES, FRAME_LABELS, PencilParam, flex_point, in_pencil, label_of, pencil_member
from .poly import act
from .projective import PTransform, apply, transform_from_frames
from .scalar import W, W2, Eis, eis_cube_root, format_scalar

MAX_ORDER = 500


class ClosureOverflow(HesseError):
    pass


def generators() -> tuple[PTransform, ...]:
    """Five transformations generating the group, acting on column vectors."""
    return (
        PTransform(((0, 1, 0), (0, 0, 1), (1, 0, 0))),
        PTransform(((1, 0, 0), (0, 0, 1), (0, 1, 0))),
        PTransform(((1, 0, 0), (0, W, 0), (0, 0, W2))),
        PTransform(((1, 0, 0), (0, W, 0), (0, 0, W))),
        PTransform(((1, 1, 1), (1, W, W2), (1, W2, W))),
    )


GENERATOR_NAMES = ("g1", "g2", "g3", "g4", "g5")


def flex_permutation(g: PTransform) -> tuple[int, ...]:
    """perm[k] is the index of g(flex k); raises ValueError if g moves a flex off the set."""
    return tuple(FLEX_LABELS.index(label_of(apply(g, p))) for p in FLEXES)


def affine_from_permutation(perm: Sequence[int]) -> AffMap3:
    """Fit the affine map of F3^2 inducing a flex permutation, and verify it."""
    image = {FLEX_LABELS[k]: FLEX_LABELS[perm[k]] for k in range(9)}
    t = image[(0, 0)]
    c1 = sub_points(image[(1, 0)], t)
    c2 = sub_points(image[(0, 1)], t)
    sigma = AffMap3(((c1[0], c2[0]), (c1[1], c2[1])), t)
    if any(sigma(p) != q for p, q in image.items()):
        raise VerificationError("flex permutation is not affine")
    return sigma


@dataclass(frozen=True)
class HesElement:
    transform: PTransform
    flex_perm: tuple[int, ...]
    theta_image: AffMap3

    @classmethod
    def from_transform(cls, g: PTransform) -> "HesElement":
        perm = flex_permutation(g)
        return cls(g, perm, affine_from_permutation(perm))

    def det_one_matrix(self):
        return det_one_representative(self.transform)

    def __str__(self):
        rows = "; ".join(", ".join(format_scalar(x) for x in r) for r in self.transform.matrix)
        return f"[{rows}]  theta = {self.theta_image}"


@dataclass(frozen=True)
class HesGroupTable:
    elements: tuple[HesElement, ...]
    index: dict
    cayley: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.elements)

    def find(self, g: PTransform) -> Optional[int]:
        return self.index.get(g.matrix)

    def contains(self, g: PTransform) -> bool:
        return g.matrix in self.index

    def compose_exact(self, i: int, j: int) -> int:
        """Index of elements[i] @ elements[j] via an exact matrix product."""
        prod = self.elements[i].transform @ self.elements[j].transform
        k = self.find(prod)
        if k is None:
            raise VerificationError("product left the group")
        return k


def _compose_perm(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """The permutation of (a after b) from perms p of a and q of b."""
    return tuple(p[q[k]] for k in range(len(q)))


@lru_cache(maxsize=None)
def enumerate_hes() -> HesGroupTable:
    """Breadth-first closure of the generators in PGL3."""
    gens = generators()
    ident = PTransform.identity()
    seen = {ident.matrix: ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = s @ g
            if h.matrix not in seen:
                seen[h.matrix] = h
                order.append(h)
                queue.append(h)
                if len(order) > MAX_ORDER:
                    raise ClosureOverflow("closure exceeded 500 elements")
    elements = tuple(HesElement.from_transform(g) for g in order)
    index = {e.transform.matrix: k for k, e in enumerate(elements)}
    by_perm = {e.flex_perm: k for k, e in enumerate(elements)}
    if len(by_perm) != len(elements):
        raise VerificationError("two elements induce the same flex permutation")
    # only the identity fixes every flex, so composing permutations
    # determines the product
    cayley = tuple(
        tuple(by_perm[_compose_perm(a.flex_perm, b.flex_perm)] for b in elements)
        for a in elements
    )
    return HesGroupTable(elements, index, cayley)


def element_of(g: PTransform) -> HesElement:
    table = enumerate_hes()
    k = table.find(g)
    if k is None:
        raise ValueError("transform is not in the Hessian group")
    return table.elements[k]


def theta(e) -> AffMap3:
    if isinstance(e, PTransform):
        e = HesElement.from_transform(e)
    return e.theta_image


def stabilizer(i: int, j: int) -> list[HesElement]:
    k = FLEX_LABELS.index((i % 3, j % 3))
    return [e for e in enumerate_hes().elements if e.flex_perm[k] == k]


def flex_orbit(label: Point = (0, 0)) -> set[Point]:
    k = FLEX_LABELS.index(label)
    return {FLEX_LABELS[e.flex_perm[k]] for e in enumerate_hes().elements}


def realize_collineation(sigma: AffMap3) -> Optional[PTransform]:
    """The projective map inducing sigma on the flexes, if there is one.

    The frame of flexes labelled (0,0), (1,0), (1,1), (2,1) determines the
    only candidate; it is returned iff the other five flexes match too.
    """
    src = [flex_point(*p) for p in FRAME_LABELS]
    dst = [flex_point(*sigma(p)) for p in FRAME_LABELS]
    T = transform_from_frames(src, dst)
    for p in POINTS:
        if apply(T, flex_point(*p)) != flex_point(*sigma(p)):
            return None
    return T


# induced by complex conjugation: t(i,0) fixed, t(i,1) and t(i,2) swapped
C_HAT = AffMap3(((1, 0), (0, 2)))


def det_one_representative(g: PTransform):
    """A matrix of determinant 1 in the class of g, or None if that needs a cube root outside Q(w)."""
    m = g.matrix
    root = eis_cube_root(linalg.det3(m))
    if root is None:
        return None
    inv = root.inverse()
    return tuple(tuple(x * inv for x in row) for row in m)


@dataclass(frozen=True)
class H12Result:
    g_in_hes: bool
    image_in_pencil: bool

    @property
    def agree(self) -> bool:
        return self.g_in_hes == self.image_in_pencil


def h12_check(g: PTransform, lam) -> H12Result:
    """Membership of g in the group versus membership of g . C_lam in the pencil."""
    member = pencil_member(lam if isinstance(lam, PencilParam) else PencilParam(lam))
    in_group = enumerate_hes().contains(g)
    image = act(g.matrix, member)
    return H12Result(in_group, in_pencil(image) is not None)


def random_non_member(rng: random.Random, bound: int = 3) -> PTransform:
    """A random invertible integer matrix outside the group."""
    table = enumerate_hes()
    while True:
        m = tuple(tuple(rng.randint(-bound, bound) for _ in range(3)) for _ in range(3))
        if linalg.det3(linalg.as_matrix(m)) == 0:
            continue
        g = PTransform(m)
        if not table.contains(g):
            return g


__all__ = [
    "generators", "GENERATOR_NAMES", "flex_permutation", "affine_from_permutation", "HesElement",
    "HesGroupTable", "enumerate_hes", "element_of", "theta", "stabilizer", "flex_orbit",
    "realize_collineation", "C_HAT", "det_one_representative", "H12Result", "h12_check",
    "random_non_member", "ClosureOverflow",
]
