"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 numeric failure,
4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any, Callable

from . import hesse, linalg
from .classify import classify, singular_points
from .errors import HesseError, NumericFailure, ParseError, VerificationError
from .finitegeo import parse_affmap, saff_enumerate, sl2f3_recognize, stabilizer_f3
from .flexsolve import flexes_numeric
from .hessgroup import (
    C_HAT,
    GENERATOR_NAMES,
    det_one_representative,
    enumerate_hes,
    generators,
    h12_check,
    random_non_member,
    realize_collineation,
    stabilizer,
)
from .normal_forms import NORMAL_FORMS, match_normal_form
from .parsing import parse_cubic, parse_scalar
from .poly import act, format_cubic, hessian, sl3_orbit_dim
from .projective import PPoint, projective_distance
from .scalar import Eis, format_scalar

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


# -- formatting -----------------------------------------------------------------

def fmt_number(z: complex, chop: float = 0.0) -> str:
    re, im = z.real, z.imag
    re, im = (0.0 if abs(re) < chop else re), (0.0 if abs(im) < chop else im)
    if abs(im) < 1e-15 * max(1.0, abs(re)):
        return f"{re:.12g}"
    if abs(re) < 1e-15 * max(1.0, abs(im)):
        return f"{im:.12g}j"
    return f"{re:.12g}{im:+.12g}j"


def fmt_point(p: PPoint) -> str:
    if p.exact:
        return str(p)
    # coordinates are unit-normalized, so rounding noise is absolute
    return "(" + " : ".join(fmt_number(c, chop=1e-14) for c in p.coords) + ")"


def fmt_matrix(m) -> list[list[str]]:
    return [[format_scalar(x) if not isinstance(x, complex) else fmt_number(x) for x in row] for row in m]


def _matching_flex(p: PPoint, tol: float = 1e-8) -> str | None:
    for label, q in zip(hesse.FLEX_LABELS, hesse.FLEXES):
        if projective_distance(p.coords, [complex(c) for c in q.coords]) < tol:
            return f"t({label[0]},{label[1]})"
    return None


# -- subcommands --------------------------------------------------------------

def cmd_classify(args) -> dict:
    f = parse_cubic(args.cubic)
    tag = classify(f, args.seed)
    locus = singular_points(f, args.seed)
    anchors = [f"table1:{tag.table_row}"] if tag.table_row else ["smooth:elliptic"]
    return {
        "cubic": format_cubic(f),
        "type": tag.value,
        "table_row": tag.table_row,
        "reducible": tag.reducible,
        "singular_locus": {
            "infinite": locus.infinite,
            "count": locus.count,
            "points": [str(p) for p in locus.points],
            "witness_line": str(locus.witness_line) if locus.witness_line else None,
        },
        "orbit_dim": sl3_orbit_dim(f),
        "anchors": anchors,
    }


def text_classify(r: dict) -> str:
    loc = r["singular_locus"]
    lines = [r["type"]]
    if loc["infinite"]:
        lines.append(f"singular locus: a line, e.g. {loc['witness_line']}")
    else:
        pts = ", ".join(loc["points"]) or "-"
        lines.append(f"singular points: {loc['count']} ({pts} rational over Q(w))")
    lines.append(f"orbit dimension: {r['orbit_dim']}")
    return "\n".join(lines)


def cmd_hessian(args) -> dict:
    f = parse_cubic(args.cubic)
    h = hessian(f)
    anchors = []
    m = match_normal_form(f)
    if m and NORMAL_FORMS[m[0]].expected_hessian(m[1]) == h:
        anchors.append(f"table2:{m[0]}:hessian")
    return {"cubic": format_cubic(f), "hessian": format_cubic(h), "anchors": anchors}


def cmd_orbit_dim(args) -> dict:
    f = parse_cubic(args.cubic)
    d = sl3_orbit_dim(f)
    anchors = []
    m = match_normal_form(f)
    if m and NORMAL_FORMS[m[0]].orbit_dim == d:
        anchors.append(f"table1:{m[0]}:orbit-dim")
    return {"cubic": format_cubic(f), "orbit_dim": d, "anchors": anchors}


def cmd_flexes(args) -> dict:
    f = parse_cubic(args.cubic)
    res = flexes_numeric(f, seed=args.seed, tol=args.tol)
    pts = []
    for fp in res.flexes:
        pts.append({
            "point": fmt_point(fp.point),
            "residual_f": fp.residual_f,
            "residual_h": fp.residual_h,
            "singular": fp.singular,
            "converged": fp.converged,
            "matches": _matching_flex(fp.point),
        })
    return {
        "cubic": format_cubic(f),
        "dim": res.dim,
        "multiplicity_warning": res.multiplicity_warning,
        "count": len(pts),
        "points": pts,
    }


def text_flexes(r: dict) -> str:
    if r["dim"] == 1:
        return "flex locus is one-dimensional (reducible cubic)"
    lines = [f"{r['count']} points"]
    for p in r["points"]:
        tags = []
        if p["singular"]:
            tags.append("singular")
        if not p["converged"]:
            tags.append("not converged")
        if p["matches"]:
            tags.append(p["matches"])
        extra = f"  [{', '.join(tags)}]" if tags else ""
        lines.append(f"{p['point']}  res_f={p['residual_f']:.2e} res_h={p['residual_h']:.2e}{extra}")
    if r["multiplicity_warning"]:
        lines.append("warning: candidate points nearly coincide")
    return "\n".join(lines)


def _check(anchor: str, name: str, passed: bool, detail: Any = None) -> dict:
    return {"anchor": anchor, "name": name, "passed": bool(passed), "detail": detail}


def cmd_hesse_verify(args) -> dict:
    checks = []
    try:
        cfg = hesse.incidence_report()
        checks.append(_check("hesse:incidence", "12 lines, 3 flexes per line, 4 lines per flex", True))
    except VerificationError as e:
        cfg = None
        checks.append(_check("hesse:incidence", "12 lines, 3 flexes per line, 4 lines per flex", False, str(e)))
    proj, f3, agree = hesse.collinearity_agreement()
    checks.append(_check("hesse:collinearity", "projective and F3^2 collinearity agree",
                         agree and proj == f3 == 12, {"projective": proj, "affine": f3}))
    rank = linalg.rank(hesse.evaluation_matrix())
    basis = hesse.cubics_through_flexes()
    span_ok = len(basis) == 2 and all(hesse.in_pencil(b) is not None for b in basis)
    checks.append(_check("hesse:linear-system", "cubics through the flexes form the pencil",
                         rank == 8 and span_ok, {"rank": rank, "kernel_dim": len(basis)}))
    table_ok = hesse.flex_group_table() == hesse.transported_table()
    torsion = all(hesse.flex_add(hesse.flex_add(a, a), a) == (0, 0) for a in hesse.FLEX_LABELS)
    checks.append(_check("hesse:group-law", "flex addition equals F3^2 addition", table_ok))
    checks.append(_check("hesse:3-torsion", "a + a + a = o for every flex", torsion))
    fact_ok = True
    for lam, factors in hesse.LINE_FACTORS.items():
        prod = hesse.singular_member_factors(lam)
        p = prod[0] * prod[1] * prod[2]
        fact_ok &= p == hesse.pencil_member(lam)
    checks.append(_check("hesse:singular-members", "singular members are products of three lines", fact_ok))
    smooth_ok = all(classify(hesse.pencil_member(lam)).value != "elliptic" for lam in hesse.SINGULAR_PARAMS)
    for v in (0, 1, 2, -1, Eis(0, 1), Eis(1, 1), Eis(3, -2)):
        smooth_ok &= classify(hesse.pencil_member(v)).value == "elliptic"
    checks.append(_check("hesse:smooth-members", "members are smooth exactly off the four singular parameters", smooth_ok))
    out: dict = {"checks": checks, "passed": all(c["passed"] for c in checks)}
    if args.dump_incidence and cfg is not None:
        out["incidence"] = {
            "lines": [str(l) for l in cfg.lines],
            "flexes": [f"t({i},{j})" for i, j in hesse.FLEX_LABELS],
            "table": [[int(x) for x in row] for row in cfg.incidence],
        }
    return out


def text_checks(r: dict) -> str:
    lines = [f"{'PASS' if c['passed'] else 'FAIL'}  {c['anchor']}  {c['name']}" for c in r["checks"]]
    if "incidence" in r:
        inc = r["incidence"]
        lines.append("incidence (rows: lines, columns: " + " ".join(inc["flexes"]) + ")")
        for name, row in zip(inc["lines"], inc["table"]):
            lines.append(" ".join(str(x) for x in row) + "  " + name)
    return "\n".join(lines)


def cmd_group(args) -> dict:
    q = args.query
    table = enumerate_hes()
    if q == "order":
        return {"order": len(table), "anchors": ["hes:order"]}
    if q == "stabilizer":
        if args.i is None or args.j is None:
            raise UsageError("group stabilizer needs two indices i j")
        stab = stabilizer(args.i, args.j)
        images = [e.theta_image for e in stab]
        point = (args.i % 3, args.j % 3)
        expected = set(stabilizer_f3(saff_enumerate(), point))
        return {
            "flex": f"t({point[0]},{point[1]})",
            "order": len(stab),
            "theta_matches_affine_stabilizer": set(images) == expected,
            "sl2f3": sl2f3_recognize(images),
            "theta_images": [str(s) for s in images],
        }
    if q == "theta":
        gens = [
            {"name": n, "matrix": fmt_matrix(g.matrix), "theta": str(table.elements[table.find(g)].theta_image)}
            for n, g in zip(GENERATOR_NAMES, generators())
        ]
        images = {e.theta_image for e in table.elements}
        return {
            "generators": gens,
            "bijective_onto_saff": images == set(saff_enumerate()) and len(images) == len(table),
        }
    if q == "realize":
        if not args.args:
            raise UsageError("group realize needs an affine map like '[[1,0],[0,2]] + (0,0)'")
        text = " ".join(args.args)
        try:
            sigma = C_HAT if text.strip() == "c_hat" else parse_affmap(text)
        except ValueError as e:
            raise ParseError(str(e)) from None
        T = realize_collineation(sigma)
        rep = det_one_representative(T) if T is not None else None
        return {
            "map": str(sigma),
            "det": sigma.det,
            "realizable": T is not None,
            "matrix": fmt_matrix(T.matrix) if T is not None else None,
            "det_one_matrix": fmt_matrix(rep) if rep is not None else None,
        }
    if q == "h12":
        lam = parse_scalar(args.lam)
        rng = random.Random(args.seed)
        members = [h12_check(e.transform, lam) for e in table.elements]
        others = [h12_check(random_non_member(rng), lam) for _ in range(args.count)]
        return {
            "lambda": format_scalar(lam),
            "members_checked": len(members),
            "members_agree": all(r.agree for r in members),
            "non_members_checked": len(others),
            "non_members_agree": all(r.agree for r in others),
            "passed": all(r.agree for r in members + others),
        }
    raise UsageError(f"unknown group query {q!r}")


def text_group(r: dict) -> str:
    if set(r) == {"order", "anchors"}:
        return str(r["order"])
    lines = []
    for k, v in r.items():
        if isinstance(v, list) and v and isinstance(v[0], dict):
            for g in v:
                lines.append(f"{g['name']}: theta = {g['theta']}")
        elif isinstance(v, list):
            lines.append(f"{k}:")
            lines.extend(f"  {x}" for x in v)
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines)


def cmd_normalize(args) -> dict:
    f = parse_cubic(args.cubic)
    T, param = hesse.to_hesse_normal_form(f, seed=args.seed, tol=args.tol)
    residual, _ = hesse.pencil_residual(act(T.matrix, f.to_complex()))
    lam = "inf" if param.is_infinite else fmt_number(param.value)
    return {"cubic": format_cubic(f), "transform": fmt_matrix(T.matrix), "lambda": lam, "residual": residual}


def text_normalize(r: dict) -> str:
    rows = "\n".join("  [" + ", ".join(row) + "]" for row in r["transform"])
    return f"transform:\n{rows}\nlambda = {r['lambda']}\nresidual: {r['residual']:.2e}"


def _default_text(r: dict) -> str:
    return "\n".join(f"{k}: {v}" for k, v in r.items())


COMMANDS: dict[str, tuple[Callable, Callable]] = {
    "classify": (cmd_classify, text_classify),
    "hessian": (cmd_hessian, lambda r: r["hessian"]),
    "orbit-dim": (cmd_orbit_dim, lambda r: str(r["orbit_dim"])),
    "flexes": (cmd_flexes, text_flexes),
    "hesse": (cmd_hesse_verify, text_checks),
    "group": (cmd_group, text_group),
    "normalize": (cmd_normalize, text_normalize),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="hessecubics", description="Plane cubics, flexes and the Hesse pencil.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, helptext in (("classify", "orbit type and singular locus"),
                           ("hessian", "the Hessian form"),
                           ("orbit-dim", "dimension of the SL3 orbit")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("cubic")

    p = sub.add_parser("flexes", parents=[common], help="numeric flex locus")
    p.add_argument("cubic")
    p.add_argument("--tol", type=float, default=1e-6)

    p = sub.add_parser("hesse", parents=[common], help="checks on the Hesse configuration")
    p.add_argument("action", choices=("verify",))
    p.add_argument("--dump-incidence", action="store_true")

    p = sub.add_parser("group", parents=[common], help="queries on the Hessian group")
    p.add_argument("query", choices=("order", "stabilizer", "theta", "realize", "h12"))
    p.add_argument("args", nargs="*")
    p.add_argument("--lam", default="1", help="pencil parameter for h12")
    p.add_argument("--count", type=int, default=50, help="random non-members for h12")

    p = sub.add_parser("normalize", parents=[common], help="Hesse normal form of a smooth cubic")
    p.add_argument("cubic")
    p.add_argument("--tol", type=float, default=1e-6)
    return parser


def _prepare_group_args(args) -> None:
    args.i = args.j = None
    if args.query == "stabilizer":
        try:
            args.i, args.j = (int(x) for x in args.args)
        except ValueError:
            raise UsageError("group stabilizer needs two integer indices i j") from None


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "group":
            _prepare_group_args(args)
        run, render = COMMANDS[args.command]
        result = run(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except NumericFailure as e:
        print(f"numeric failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except VerificationError as e:
        print(f"verification failure: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except (ValueError, HesseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE

    if args.format == "json":
        print(json.dumps(result, indent=2))
    else:
        print(render(result))
    if result.get("passed") is False:
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
