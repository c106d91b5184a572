"""Small dense linear algebra over an exact field or over complex floats.

Matrices are tuples of row tuples.  Everything here works for any scalar
type supporting ``+ - * /`` and an exact zero test, so it serves both
Q(w) and Python ``complex`` (where it is only used for 3x3 work; larger
numeric problems go through numpy).
"""

from __future__ import annotations

from typing import Sequence

from .errors import SingularMatrixError

Matrix = tuple  # tuple[tuple[S, ...], ...]


def identity(n: int = 3, one=1, zero=0) -> Matrix:
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    """Tuple-of-tuples copy with entries coerced to Q(w) or to complex."""
    from .scalar import Eis

    flat = [x for r in rows for x in r]
    if any(isinstance(x, (complex, float)) for x in flat):
        return tuple(tuple(complex(x) for x in r) for r in rows)
    return tuple(tuple(Eis.coerce(x) for x in r) for r in rows)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    Bt = tuple(zip(*B))
    return tuple(
        tuple(sum((a * b for a, b in zip(row, col)), 0 * row[0]) for col in Bt) for row in A
    )


def mat_vec(A: Matrix, v: Sequence) -> tuple:
    return tuple(sum((a * x for a, x in zip(row, v)), 0 * v[0]) for row in A)


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def det3(A: Matrix):
    (a, b, c), (d, e, f), (g, h, i) = A
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def adjugate3(A: Matrix) -> Matrix:
    (a, b, c), (d, e, f), (g, h, i) = A
    return (
        (e * i - f * h, c * h - b * i, b * f - c * e),
        (f * g - d * i, a * i - c * g, c * d - a * f),
        (d * h - e * g, b * g - a * h, a * e - b * d),
    )


def inv3(A: Matrix) -> Matrix:
    d = det3(A)
    if d == 0:
        raise SingularMatrixError("matrix is singular")
    return tuple(tuple(x / d for x in row) for row in adjugate3(A))


def cross(u: Sequence, v: Sequence) -> tuple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def row_echelon(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form by exact Gauss-Jordan elimination.

    Returns the nonzero reduced rows and their pivot columns.
    """
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((k for k in range(r, len(M)) if M[k][c] != 0), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for k in range(len(M)):
            if k != r and M[k][c] != 0:
                factor = M[k][c]
                M[k] = [x - factor * y for x, y in zip(M[k], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_echelon(rows)[1])


def kernel(rows: Sequence[Sequence], one=1, zero=0) -> list[list]:
    """Basis of the right null space {v : M v = 0}."""
    ncols = len(rows[0])
    R, pivots = row_echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for row, pc in zip(R, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def solve3(A: Matrix, b: Sequence) -> tuple:
    """Solve A x = b for an invertible 3x3 matrix."""
    return mat_vec(inv3(A), b)
