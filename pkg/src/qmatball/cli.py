"""
Command line front end.

    qmatball analyze --n 2 --alpha 0 --beta -1 [--format json|text|dot|svg]
    qmatball classify --n 2 --alpha -1/2 --beta -3/2
    qmatball intertwiner --n 2 --k 1,0 --k 2,1 [--symbolic --d 0]
    qmatball act --n 2 --word "E2*F1" --vector "z[1,1]*det^-1" [--symbolic --d 1]
    qmatball verify lemmas --n 3
    qmatball render --n 2 --alpha 0 --beta -3 --format svg

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from math import comb

from . import __version__
from .scalars import Concrete, ParameterPoint, Symbolic, specialize

SCHEMA_VERSION = 1
_NEGATIVE = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def _params(args) -> tuple[ParameterPoint, ParameterPoint]:
    if args.alpha is None or args.beta is None:
        raise UsageError("--alpha and --beta are required")
    im = args.alpha_im
    try:
        return ParameterPoint(_fraction(args.alpha), im), ParameterPoint(_fraction(args.beta), im)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _signature(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"signature must be comma separated integers: {text!r}") from exc


def _qsample(args) -> Fraction:
    from .unitarity import default_qsample

    return _fraction(args.q) if getattr(args, "q", None) else default_qsample()


def _envelope(kind: str, request: dict, body: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "tool": f"qmatball {__version__}", "command": kind, "request": request, "result": body}


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str)


# ---------------------------------------------------------------------------
# diagrams


def plane_text(report, bound: int) -> str:
    """ASCII picture of the ``(k_1, k_2)`` plane for n = 2: each dominant node is
    labelled by the simple submodule containing it (``.`` for none)."""
    letters = "ABCDEFGH"
    lines = []
    header = "k2\\k1 " + " ".join(f"{k1:>3}" for k1 in range(-bound, bound + 1))
    lines.append(header)
    for k2 in range(bound, -bound - 1, -1):
        row = [f"{k2:>5} "]
        for k1 in range(-bound, bound + 1):
            if k1 < k2:
                row.append("   ")
                continue
            mark = "."
            for i, p in enumerate(report.simples):
                if p((k1, k2)):
                    mark = letters[i]
                    break
            row.append(f"{mark:>3}")
        lines.append(" ".join(row))
    lines.append("")
    for i, p in enumerate(report.simples):
        lines.append(f"{letters[i]}: {p.text}")
    for name, eq in sorted(report.hyperplanes.items()):
        lines.append(f"{name}: {eq}")
    return "\n".join(lines)


def plane_svg(report, bound: int) -> str:
    """SVG version of :func:`plane_text` with the four lines drawn."""
    cell = 40
    size = (2 * bound + 3) * cell
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"]

    def px(k1):
        return (k1 + bound + 1) * cell

    def py(k2):
        return (bound + 1 - k2) * cell

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">']
    out.append(f'<line x1="{px(-bound)}" y1="{py(-bound)}" x2="{px(bound)}" y2="{py(bound)}" stroke="#999" stroke-dasharray="4"/>')
    alpha, beta = report.alpha.re, report.beta.re
    if not report.irreducible:
        lines = [
            ("L1+", float(beta), None),
            ("L1-", float(-alpha - 1), None),
            ("L2+", None, float(beta + 1)),
            ("L2-", None, float(-alpha)),
        ]
        for name, x, y in lines:
            dash = "" if name.endswith("+") else ' stroke-dasharray="6,3"'
            if x is not None:
                out.append(f'<line x1="{px(x + 0.5)}" y1="{py(bound)}" x2="{px(x + 0.5)}" y2="{py(-bound)}" stroke="black"{dash}/>')
                out.append(f'<text x="{px(x + 0.5) + 2}" y="{py(bound) - 4}" font-size="11">{name}</text>')
            else:
                out.append(f'<line x1="{px(-bound)}" y1="{py(y + 0.5)}" x2="{px(bound)}" y2="{py(y + 0.5)}" stroke="black"{dash}/>')
                out.append(f'<text x="{px(bound) + 4}" y="{py(y + 0.5) + 4}" font-size="11">{name}</text>')
    for k1 in range(-bound, bound + 1):
        for k2 in range(-bound, k1 + 1):
            fill = "#ddd"
            for i, p in enumerate(report.simples):
                if p((k1, k2)):
                    fill = colors[i % len(colors)]
                    break
            out.append(f'<circle cx="{px(k1)}" cy="{py(k2)}" r="6" fill="{fill}"/>')
    out.append("</svg>")
    return "\n".join(out)


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    from .transitions import classify, lattice
    from .unitarity import classify_series

    alpha, beta = _params(args)
    n = args.n
    report = classify(alpha, beta, n)
    series = classify_series(alpha, beta, n)
    lat = lattice(alpha, beta, n, args.bound)
    if args.format == "json":
        body = report.as_dict()
        body["series"] = str(series)
        body["lattice"] = {"bound": args.bound, "nodes": len(lat.nodes), "edges": len(lat.edges)}
        print(_dump(_envelope("analyze", {"n": n, "alpha": str(alpha), "beta": str(beta), "bound": args.bound}, body)))
    elif args.format == "dot":
        print(lat.to_dot())
    elif n != 2:
        raise UsageError("plane diagrams exist for n = 2 only; use --format dot")
    elif args.format == "svg":
        print(plane_svg(report, args.bound))
    else:
        print(f"case: {report.case}  series: {series}  direct sum: {report.direct_sum}  finite dimensional: {report.finite_dim}")
        print(plane_text(report, args.bound))
    return 0


def cmd_render(args) -> int:
    if args.format == "json":
        raise UsageError("render emits text, dot or svg")
    return cmd_analyze(args)


def cmd_classify(args) -> int:
    from .equivalence import partner
    from .transitions import classify
    from .unitarity import classify_series, recurrence_constants

    alpha, beta = _params(args)
    n = args.n
    series = classify_series(alpha, beta, n)
    eq = partner(alpha, beta, n)
    body = {"series": str(series), "note": series.note, "equivalence_class": eq.as_dict()}
    if series.case is not None:
        rep = classify(alpha, beta, n)
        body["unitarizable_submodules"] = [p.text for p in rep.simples] if series.case > 1 else []
    else:
        from itertools import product

        from .isotypic import is_dominant

        q = _qsample(args)
        nodes = [k for k in product(range(2, -3, -1), repeat=n) if is_dominant(k)]
        table = recurrence_constants(alpha, beta, n, nodes, float(q))
        body["c_table"] = {"q": str(q), "values": {",".join(map(str, k)): round(v.real, 12) for k, v in sorted(table.items(), reverse=True)}}
    if args.format == "json":
        print(_dump(_envelope("classify", {"n": n, "alpha": str(alpha), "beta": str(beta)}, body)))
    else:
        print(f"series: {body['series']}")
        if body["note"]:
            print(f"note: {body['note']}")
        print("class: " + ", ".join(f"({a}, {b})" for a, b in body["equivalence_class"]["members"]))
        for p in body.get("unitarizable_submodules", []):
            print(f"unitary submodule: {p}")
        for k, v in body.get("c_table", {}).get("values", {}).items():
            print(f"c[{k}] = {v}")
    return 0


def cmd_intertwiner(args) -> int:
    from .equivalence import a_coeff
    from .scalars import ScalarError

    n = args.n
    sigs = [_signature(s) for s in args.k] or [tuple([0] * n)]
    if any(len(k) != n for k in sigs):
        raise UsageError(f"signatures must have {n} entries")
    if args.symbolic:
        qa, qb = Symbolic(args.d).values()
        rows = {",".join(map(str, k)): a_coeff(k, qa, qb).to_text() for k in sigs}
        req = {"n": n, "symbolic": True, "d": args.d}
    else:
        alpha, beta = _params(args)
        qa, qb = Concrete(alpha, beta).values()
        q = _qsample(args)
        rows = {}
        for k in sigs:
            try:
                val = a_coeff(k, qa, qb)
                num = specialize(val, _sqrt(q), alpha, beta)
                rows[",".join(map(str, k))] = str(num)
            except (ScalarError, ZeroDivisionError):
                rows[",".join(map(str, k))] = "pole"
        req = {"n": n, "alpha": str(alpha), "beta": str(beta), "q": str(q)}
    if args.format == "json":
        print(_dump(_envelope("intertwiner", req, {"a": rows})))
    else:
        for k, v in rows.items():
            print(f"a[{k}] = {v}")
    return 0


def _sqrt(q: Fraction) -> Fraction:
    from .unitarity import _rational_sqrt

    try:
        return _rational_sqrt(q)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _context(args, n: int):
    from .action import twisted, untwisted

    if args.symbolic:
        return twisted(n, Symbolic(args.d))
    if args.alpha is None and args.beta is None:
        return untwisted(n)
    alpha, beta = _params(args)
    return twisted(n, Concrete(alpha, beta))


def cmd_act(args) -> int:
    from .qmatrix import PolyParseError, parse_poly
    from .uqsl import WordParseError, format_uword, parse_word

    n = args.n
    try:
        w = parse_word(args.word)
        x = parse_poly(args.vector, n)
    except (WordParseError, PolyParseError) as exc:
        raise UsageError(str(exc)) from exc
    if w.max_index() > 2 * n - 1:
        raise UsageError(f"generator index exceeds {2 * n - 1}")
    ctx = _context(args, n)
    y = ctx.act_word(w, x).reduce()
    if args.format == "json":
        print(_dump(_envelope("act", {"n": n, "word": format_uword(w), "vector": str(x)}, {"image": str(y)})))
    else:
        print(y)
    return 0


# -- verification suites ------------------------------------------------------


def _suite_confluence(n, args):
    from .qmatrix import check_confluence, graded_dimension

    bad = check_confluence(n)
    dims = {j: graded_dimension(n, j) for j in range(5)}
    ok = not bad and all(dims[j] == comb(n * n + j - 1, j) for j in dims)
    return ok, {"unresolved_overlaps": [list(t) for t in bad], "dimensions": dims}


def _suite_relations(n, args, serre_only=False):
    from .action import check_relations, twisted, untwisted, window_basis
    from .uqsl import defining_relations

    rels = defining_relations(n)
    if serre_only:
        rels = [r for r in rels if r[0].startswith("serre")]
    window = window_basis(n, args.max_degree, args.max_det)
    out = {}
    ok = True
    for label, ctx in (("untwisted", untwisted(n)), ("symbolic", twisted(n, Symbolic(args.d)))):
        bad = check_relations(ctx, window, rels)
        ok = ok and not bad
        out[label] = [[name, str(x)] for name, x in bad[:10]]
    return ok, {"failures": out, "window": len(window)}


def _suite_isotypic(n, args):
    from .isotypic import decompose, signatures, weyl_dimension

    out = {}
    ok = True
    for d in range(args.max_det + 1):
        for grade in range(-n * d, args.max_degree - n * d + 1):
            comps = decompose(n, grade, d)
            sigs = sorted(c.signature for c in comps)
            good = sigs == sorted(signatures(n, grade, d)) and all(c.dimension == weyl_dimension(c.signature) ** 2 for c in comps)
            ok = ok and good
            out[f"grade {grade}, det {d}"] = {",".join(map(str, c.signature)): c.dimension for c in comps}
    return ok, out


def _suite_lemmas(n, args):
    from .action import window_basis
    from .canonical import LEMMAS, lemma_check

    window = window_basis(n, args.max_degree, args.max_det)
    out = {}
    ok = True
    for name in LEMMAS:
        res = lemma_check(name, n, window)
        fails = [r.as_dict() for r in res if not r.status]
        ok = ok and not fails
        out[name] = {"checked": len(res), "failures": fails}
    return ok, out


def _suite_transitions(n, args):
    from .transitions import down_map, fits, up_map, window_signatures
    from .action import twisted

    ctx = twisted(n, Symbolic(args.d))
    out = []
    ok = True
    for k in window_signatures(n, args.max_degree, args.max_det):
        for j in range(1, n + 1):
            for f in (up_map, down_map):
                m = f(k, j, ctx)
                if not m.admissible or not fits(m.target, args.max_degree, args.max_det):
                    continue
                c = m.coefficient
                good = c.remainder_u_free and c.remainder_nonzero
                ok = ok and good
                out.append({"from": list(k), "to": list(m.target), "u_free": c.remainder_u_free, "nonzero": c.remainder_nonzero})
    return ok, {"maps": out}


def _suite_prop21(n, args):
    from .action import twisted
    from .transitions import prop21_evaluate

    sigs = {1: [(0,), (1,), (2,)], 2: [(0, 0), (1, 0), (1, 1), (2, 1)], 3: [(0, 0, 0), (1, 0, 0), (1, 1, 0)]}.get(n)
    if sigs is None:
        raise UsageError("prop21 is available for n <= 3")
    rows = []
    ok = True
    ratios: dict = {}
    exact = True
    for d in (0, 1):
        ctx = twisted(n, Symbolic(d))
        for j in range(1, n + 1):
            for k in sigs:
                r = prop21_evaluate(k, j, ctx)
                rows.append(dict(r.as_dict(), d=d))
                ok = ok and r.proportional
                exact = exact and r.matches
                if r.ratio is not None and not r.ratio.is_zero():
                    ratios.setdefault(j, set()).add(r.ratio.to_text())
    constant = all(len(v) == 1 for v in ratios.values())
    ok = ok and constant and (exact or not args.strict)
    return ok, {"rows": rows, "ratio_by_j": {j: sorted(v) for j, v in ratios.items()}, "ratio_constant": constant, "exact_match": exact}


def _suite_intertwiner(n, args):
    from .equivalence import check_recurrences, detshift_verify, intertwine_verify, pole_report, signature_box

    rec = check_recurrences(n, args.d, 3)
    poles = [pole_report(k, args.d) for k in signature_box(n, 3)]
    op = intertwine_verify(n, args.d, min(args.max_degree, 3 if n < 3 else 1), args.max_det)
    ts = detshift_verify(n, args.d, args.max_degree, args.max_det)
    body = {
        "recurrences": {"checked": rec.checked, "failures": [list(map(str, f)) for f in rec.failures]},
        "poles_integral": all(p.integral for p in poles),
        "poles_simple": all(p.simple for p in poles),
        "non_simple": [list(p.k) for p in poles if not p.simple][:10],
        "intertwining": {"checked": op.checked, "failures": len(op.failures)},
        "det_shift": {"checked": ts.checked, "failures": len(ts.failures)},
    }
    ok = rec.ok and body["poles_integral"] and op.ok and ts.ok and (body["poles_simple"] or not args.strict)
    return ok, body


def _suite_unitarity(n, args):
    from .unitarity import classify_series, compare_with_recurrence, invariant_form_solve, is_unitary_series, reference_point

    q = _qsample(args)
    half = Fraction(1, 2)
    samples = [
        (-half, -Fraction(3, 2)),
        (-Fraction(3, 2), -half),
        (ParameterPoint(0, 1), ParameterPoint(0, 1)),
        (Fraction(0), Fraction(0)),
        (half, half),
    ]
    out = []
    ok = True
    for a, b in samples:
        label = classify_series(a, b, n)
        form = invariant_form_solve(a, b, n, q=q)
        ra, rb = reference_point(a, b, n)
        dev = compare_with_recurrence(form, invariant_form_solve(ra, rb, n, q=q), a, b, n, float(q)) if form.feasible else None
        agree = form.feasible == is_unitary_series(label) and (dev is None or dev < 1e-9)
        ok = ok and agree
        out.append({"alpha": str(a), "beta": str(b), "series": str(label), "form": form.as_dict(), "deviation": dev, "agree": agree})
    return ok, {"q": str(q), "samples": out}


SUITES = {
    "confluence": _suite_confluence,
    "relations": _suite_relations,
    "serre": lambda n, a: _suite_relations(n, a, serre_only=True),
    "isotypic": _suite_isotypic,
    "lemmas": _suite_lemmas,
    "transitions": _suite_transitions,
    "prop21": _suite_prop21,
    "intertwiner": _suite_intertwiner,
    "unitarity": _suite_unitarity,
}


def cmd_verify(args) -> int:
    suite = SUITES.get(args.suite)
    if suite is None:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(sorted(SUITES))}")
    ok, body = suite(args.n, args)
    req = {"suite": args.suite, "n": args.n, "max_degree": args.max_degree, "max_det": args.max_det, "seed": args.seed}
    if args.format == "json":
        print(_dump(_envelope("verify", req, {"pass": ok, "details": body})))
    else:
        print(f"{args.suite} n={args.n}: {'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qmatball", description="Degenerate principal series on localized quantum matrices.")
    p.add_argument("--version", action="version", version=f"qmatball {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=("json", "text"), default="text"):
        # let negative fractions such as -1/2 through as option values
        sp._negative_number_matcher = _NEGATIVE
        sp.add_argument("--n", type=int, default=2)
        sp.add_argument("--alpha")
        sp.add_argument("--beta")
        sp.add_argument("--alpha-im", type=int, default=0, choices=(0, 1), help="imaginary part in units of pi/h (both parameters)")
        sp.add_argument("--symbolic", action="store_true")
        sp.add_argument("--d", type=int, default=0, help="alpha - beta in symbolic mode")
        sp.add_argument("--q", help="rational q sample with a rational square root")
        sp.add_argument("--format", choices=fmt, default=default)

    sp = sub.add_parser("analyze", help="structure of the module at integral alpha - beta")
    common(sp, ("json", "text", "dot", "svg"))
    sp.add_argument("--bound", type=int, default=4)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("render", help="diagram of the submodule structure")
    common(sp, ("text", "dot", "svg"), "svg")
    sp.add_argument("--bound", type=int, default=4)
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("classify", help="series label and equivalence class")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("intertwiner", help="coefficients a_k of the intertwining operator")
    common(sp)
    sp.add_argument("--k", action="append", default=[], help="signature, e.g. 1,0")
    sp.set_defaults(func=cmd_intertwiner)

    sp = sub.add_parser("act", help="apply a word to a vector")
    common(sp)
    sp.add_argument("--word", required=True)
    sp.add_argument("--vector", required=True)
    sp.set_defaults(func=cmd_act)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite")
    common(sp)
    sp.add_argument("--max-degree", type=int, default=None)
    sp.add_argument("--max-det", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--strict", action="store_true", help="also require the exact closed forms")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "max_degree", 0) is None:
        # transition maps at n >= 3 are costly; keep their default window small
        heavy = args.command == "verify" and args.suite == "transitions"
        args.max_degree = (3 if args.n <= 2 else 1) if heavy else (3 if args.n <= 3 else 2)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
