"""Acceptance criteria, one test each.

Every criterion prints a PASS/FAIL line in the terminal summary (see
conftest.py); running this file directly prints the same lines.
"""

from __future__ import annotations

import random
import sys
from itertools import combinations

import numpy as np
import pytest

from hessecubics import linalg
from hessecubics.classify import CubicType, classify
from hessecubics.finitegeo import POINTS, aff_enumerate, collinear_f3, saff_enumerate, sl2f3_recognize
from hessecubics.flexsolve import fiber_profile, flexes_numeric
from hessecubics.hesse import (
    FERMAT,
    FLEX_LABELS,
    FLEXES,
    TRIANGLE,
    collinearity_agreement,
    cubics_through_flexes,
    evaluation_matrix,
    flex_add,
    in_pencil,
    incidence_report,
    pencil_member,
    pencil_residual,
    to_hesse_normal_form,
)
from hessecubics.hessgroup import (
    C_HAT,
    enumerate_hes,
    flex_orbit,
    h12_check,
    random_non_member,
    realize_collineation,
    stabilizer,
)
from hessecubics.normal_forms import NORMAL_FORMS
from hessecubics.poly import Cubic, act, hessian, random_cubic, random_unimodular, sl3_orbit_dim
from hessecubics.projective import PPoint, collinear, projective_distance
from hessecubics.scalar import W, Eis

from conftest import random_rational_cubic

RESULTS: dict[int, tuple[bool, str]] = {}
TITLES = {
    1: "Hessians of the normal forms",
    2: "orbit dimensions",
    3: "Hessian covariance",
    4: "numeric flex solver",
    5: "Hesse configuration incidence",
    6: "cubics through the nine flexes",
    7: "group order, theta bijection and homomorphism",
    8: "flex stabilizers and transitivity",
    9: "realizability split of AG(2,3) collineations",
    10: "group membership versus pencil membership",
    11: "flex group law",
    12: "Hesse normal form reduction",
    13: "fiber dimension dichotomy",
}
MUS = (Eis(1), Eis(2), W)


def record(n: int, ok: bool, detail: str = "") -> None:
    RESULTS[n] = (bool(ok), detail)
    assert ok, f"criterion {n} ({TITLES[n]}) failed: {detail}"


def _match(points, targets, tol) -> bool:
    if len(points) != len(targets):
        return False
    remaining = list(targets)
    for p in points:
        hit = next((q for q in remaining if projective_distance(p.coords, q.coords) < tol), None)
        if hit is None:
            return False
        remaining.remove(hit)
    return True


def _exact_flexes_numeric():
    return [PPoint(tuple(complex(c) for c in p.coords)) for p in FLEXES]


def test_criterion_01_normal_form_hessians():
    bad = []
    for nf in NORMAL_FORMS.values():
        for mu in MUS if nf.has_mu else (Eis(1),):
            if hessian(nf.form(mu)) != nf.expected_hessian(mu):
                bad.append(f"{nf.row}(mu={mu})")
    record(1, not bad, ", ".join(bad) or "14 forms exact")


def test_criterion_02_orbit_dimensions():
    dims = tuple(sl3_orbit_dim(nf.form()) for nf in NORMAL_FORMS.values())
    smooth = tuple(sl3_orbit_dim(pencil_member(lam)) for lam in (0, 1, W))
    ok = dims == (3, 5, 6, 6, 7, 7, 8, 8) and smooth == (8, 8, 8)
    record(2, ok, f"normal forms {dims}, pencil {smooth}")


def test_criterion_03_hessian_covariance():
    rng = random.Random(2024)
    failures = 0
    for _ in range(50):
        g = random_unimodular(rng)
        assert linalg.det3(g) == 1
        f = random_cubic(rng)
        failures += act(g, hessian(f)) != hessian(act(g, f))
    record(3, failures == 0, f"{failures} failures in 50")


def test_criterion_04_flex_solver():
    exact = _exact_flexes_numeric()
    fermat_ok = _match(flexes_numeric(FERMAT).points, exact, 1e-8)
    member_ok = _match(flexes_numeric(pencil_member(1)).points, exact, 1e-8)

    rng = random.Random(77)
    bad_random = 0
    done = 0
    while done < 100:
        f = random_rational_cubic(rng)
        if classify(f) is not CubicType.ELLIPTIC:
            continue
        done += 1
        res = flexes_numeric(f, seed=done)
        pts = res.points
        sep = min(projective_distance(p.coords, q.coords) for p, q in combinations(pts, 2)) if len(pts) > 1 else 0
        if len(pts) != 9 or sep <= 1e-4 or any(fp.residual >= 1e-8 for fp in res.flexes):
            bad_random += 1

    nrng = np.random.default_rng(4)
    bad_equiv = 0
    f = pencil_member(Eis(2, 1)).to_complex() + Cubic({(2, 1, 0): 0.5, (0, 1, 2): -1.25})
    base = flexes_numeric(f).points
    for k in range(20):
        g = nrng.normal(size=(3, 3)) + 1j * nrng.normal(size=(3, 3))
        moved = flexes_numeric(act(tuple(map(tuple, g)), f), seed=k).points
        expected = [PPoint(tuple(g @ np.array(p.coords))) for p in base]
        bad_equiv += not _match(moved, expected, 1e-6)

    ok = fermat_ok and member_ok and bad_random == 0 and bad_equiv == 0
    record(4, ok, f"fermat={fermat_ok} member={member_ok} random_bad={bad_random}/100 equivariance_bad={bad_equiv}/20")


def test_criterion_05_configuration():
    cfg = incidence_report()
    per_line = {sum(row) for row in cfg.incidence}
    per_flex = {sum(row[k] for row in cfg.incidence) for k in range(9)}
    agree = all(
        collinear(FLEXES[a], FLEXES[b], FLEXES[c]) == collinear_f3(FLEX_LABELS[a], FLEX_LABELS[b], FLEX_LABELS[c])
        for a, b, c in combinations(range(9), 3)
    )
    counts = collinearity_agreement()
    ok = len(cfg.lines) == 12 and per_line == {3} and per_flex == {4} and agree and counts == (12, 12, True)
    record(5, ok, f"lines={len(cfg.lines)} per_line={per_line} per_flex={per_flex} collinear={counts[:2]}")


def test_criterion_06_linear_system():
    rank = linalg.rank(evaluation_matrix())
    basis = [b.vector() for b in cubics_through_flexes()]
    pencil = [FERMAT.vector(), TRIANGLE.vector()]
    same_span = len(basis) == 2 and linalg.rank(basis + pencil) == 2 and linalg.rank(pencil) == 2
    record(6, rank == 8 and same_span, f"rank={rank} kernel_dim={len(basis)} same_span={same_span}")


def test_criterion_07_group_order_and_theta():
    table = enumerate_hes()
    images = [e.theta_image for e in table.elements]
    bijective = len(set(images)) == 216 and set(images) == set(saff_enumerate())
    rng = random.Random(31)
    bad = 0
    for _ in range(10_000):
        i, j = rng.randrange(216), rng.randrange(216)
        k = table.compose_exact(i, j)
        bad += images[k] != images[i] @ images[j] or table.cayley[i][j] != k
    ok = len(table) == 216 and bijective and bad == 0
    record(7, ok, f"order={len(table)} bijective={bijective} homomorphism_failures={bad}/10000")


def test_criterion_08_stabilizers():
    orders = [len(stabilizer(*p)) for p in POINTS]
    recognized = all(sl2f3_recognize([e.theta_image for e in stabilizer(*p)]) for p in POINTS)
    transitive = flex_orbit((0, 0)) == set(POINTS)
    ok = orders == [24] * 9 and recognized and transitive
    record(8, ok, f"orders={set(orders)} sl2f3={recognized} transitive={transitive}")


def test_criterion_09_realizability():
    yes = no = mismatched = 0
    for s in aff_enumerate():
        realized = realize_collineation(s) is not None
        yes += realized
        no += not realized
        mismatched += realized != s.is_special()
    c_hat_fails = realize_collineation(C_HAT) is None
    ok = yes == 216 and no == 216 and mismatched == 0 and c_hat_fails
    record(9, ok, f"realizable={yes} not={no} det_mismatch={mismatched} c_hat_fails={c_hat_fails}")


def test_criterion_10_h12():
    table = enumerate_hes()
    members = [h12_check(e.transform, 1) for e in table.elements]
    rng = random.Random(10)
    others = [h12_check(random_non_member(rng), 1) for _ in range(50)]
    ok = (
        all(r.agree and r.g_in_hes for r in members)
        and all(r.agree and not r.g_in_hes for r in others)
    )
    record(10, ok, f"members agree={sum(r.agree for r in members)}/216 non-members agree={sum(r.agree for r in others)}/50")


def test_criterion_11_group_law():
    o = (0, 0)
    table_ok = all(
        flex_add(a, b, o) == ((a[0] + b[0]) % 3, (a[1] + b[1]) % 3) for a in FLEX_LABELS for b in FLEX_LABELS
    )
    torsion = all(flex_add(flex_add(a, a, o), a, o) == o for a in FLEX_LABELS)
    record(11, table_ok and torsion, f"table={table_ok} three_torsion={torsion}")


def test_criterion_12_normal_form():
    rng = np.random.default_rng(12)
    singular = {complex(-3), complex(-3 * W), complex(-3 * W * W)}
    worst = 0.0
    failures = 0
    for k in range(25):
        lam = complex(*rng.normal(scale=3.0, size=2))
        if min(abs(lam - s) for s in singular) < 0.1:
            lam += 1.0
        f0 = FERMAT.to_complex() + TRIANGLE.to_complex() * lam
        g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        f = act(tuple(map(tuple, g)), f0)
        try:
            T, _ = to_hesse_normal_form(f, seed=k)
        except Exception:
            failures += 1
            continue
        image = act(T.matrix, f)
        res, _ = pencil_residual(image)
        worst = max(worst, res)
        failures += in_pencil(image, tol=1e-6) is None or res >= 1e-6
    record(12, failures == 0, f"failures={failures}/25 worst_residual={worst:.2e}")


def test_criterion_13_fiber_dichotomy():
    reducible = ["h3", "h5", "h6", "h_mu_6", "h7", "h_mu_7"]
    one = all(fiber_profile(NORMAL_FORMS[r].form()).fiber_dim == 1 for r in reducible)
    zero_forms = [NORMAL_FORMS["h8"].form(), NORMAL_FORMS["h_mu_8"].form()]
    zero_forms += [pencil_member(lam) for lam in (0, 1, W, Eis(5, -2))]
    zero = all(fiber_profile(f).fiber_dim == 0 and not fiber_profile(f).in_J for f in zero_forms)
    record(13, one and zero, f"reducible->1: {one}, h8/h_mu_8/smooth->0: {zero}")


def summary_lines() -> list[str]:
    lines = []
    for n in sorted(TITLES):
        if n in RESULTS:
            ok, detail = RESULTS[n]
            lines.append(f"[{'PASS' if ok else 'FAIL'}] AC{n:02d} {TITLES[n]}: {detail}")
        else:
            lines.append(f"[FAIL] AC{n:02d} {TITLES[n]}: not run")
    return lines


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(summary_lines()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) and len(RESULTS) == 13 else 1)
