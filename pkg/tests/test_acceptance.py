"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line.  Criteria that
cannot hold as stated are marked ``xfail(strict=True)``: they still run in
full and report FAIL, and the run breaks if they ever start passing.
"""

import time
from fractions import Fraction
from itertools import product
from math import comb

import pytest

from conftest import CRITERIA
from qmatball.action import check_relations, twisted, untwisted, window_basis
from qmatball.canonical import LEMMAS, lemma_check
from qmatball.equivalence import (
    check_recurrences, detshift_verify, intertwine_verify, pole_report, signature_box,
)
from qmatball.isotypic import decompose, is_dominant, vh_vector, weyl_dimension
from qmatball.qmatrix import LocalizedVector, algebra, check_confluence, graded_dimension
from qmatball.scalars import ParameterPoint, QExp, Symbolic, qint, s_power
from qmatball.transitions import (
    classify, down_map, fits, lattice, prop21_evaluate, up_map, window_signatures,
)
from qmatball.uqsl import E
from qmatball.unitarity import (
    classify_series, compare_with_recurrence, invariant_form_solve, is_unitary_series,
    reference_point,
)


def report(num: int, ok: bool, detail: str, started: float) -> None:
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}  [{time.time() - started:.1f}s]"
    CRITERIA[num] = line
    print(line)


def test_criterion_01_confluence_and_dimensions():
    t = time.time()
    unresolved = {n: check_confluence(n) for n in (2, 3)}
    dims = {(n, j): graded_dimension(n, j) for n in (2, 3) for j in range(5)}
    ok = not any(unresolved.values()) and all(d == comb(n * n + j - 1, j) for (n, j), d in dims.items())
    report(1, ok, f"overlaps resolved for n=2,3; dims {dims[(3, 4)]} at n=3 j=4", t)
    assert ok and time.time() - t < 30


def test_criterion_02_relations():
    t = time.time()
    bad = {}
    for n in (1, 2, 3):
        w = window_basis(n)
        for label, ctx in (("untwisted", untwisted(n)), ("d=0", twisted(n, Symbolic(0))), ("d=1", twisted(n, Symbolic(1)))):
            bad[(n, label)] = len(check_relations(ctx, w))
    ok = not any(bad.values())
    report(2, ok, f"{len(bad)} (n, action) pairs, failures {sum(bad.values())}", t)
    assert ok and time.time() - t < 300


def _expected_signatures(n, grade, d):
    rng = range(grade + n * d, -d - 1, -1)
    return sorted(k for k in product(rng, repeat=n) if sum(k) == grade and is_dominant(k) and k[-1] >= -d)


def test_criterion_03_isotypic():
    t = time.time()
    ok = True
    for d in (0, 1):
        for grade in range(-2 * d, 4):
            comps = decompose(2, grade, d)
            ok &= sorted(c.signature for c in comps) == _expected_signatures(2, grade, d)
            ok &= all(c.dimension == weyl_dimension(c.signature) ** 2 for c in comps)
    grade2 = sorted(c.dimension for c in decompose(2, 2, 0))
    ok &= grade2 == [1, 9]
    report(3, ok, f"n=2 grades <= 3, det <= 1; grade 2 splits {grade2}", t)
    assert ok and time.time() - t < 60


def test_criterion_04_highest_vectors():
    t = time.time()
    checked = 0
    ok = True
    for n in (1, 2, 3):
        for k in product(range(2, -3, -1), repeat=n):
            if not is_dominant(k):
                continue
            v = vh_vector(k)
            for d in (0, 1):
                ctx = twisted(n, Symbolic(d))
                ok &= all(ctx.act_word(E(i), v).is_zero() for i in range(1, 2 * n) if i != n)
                diffs = [k[i] - k[i + 1] for i in range(n - 1)]
                ok &= ctx.weight_of(v) == tuple(diffs + [2 * k[-1] + d] + diffs[::-1])
                checked += 1
    report(4, ok, f"{checked} highest vectors killed by compact E_i, slot n = 2k_n + alpha - beta", t)
    assert ok and time.time() - t < 60


def test_criterion_05_lemmas_n3():
    t = time.time()
    w = window_basis(3)
    counts, bad = {}, []
    for name in LEMMAS:
        res = lemma_check(name, 3, w)
        counts[name] = len(res)
        bad += [r.as_dict() for r in res if not r.status]
    ok = not bad and all(counts.values())
    report(5, ok, f"items checked {counts}, failures {len(bad)}", t)
    assert ok and time.time() - t < 300


def test_criterion_06_transition_factorization():
    t = time.time()
    seen, bad = 0, []
    for n in (1, 2):
        for d in (0, 1):
            ctx = twisted(n, Symbolic(d))
            for k in window_signatures(n):
                for j in range(1, n + 1):
                    for f in (up_map, down_map):
                        m = f(k, j, ctx)
                        if not m.admissible or not fits(m.target):
                            continue
                        seen += 1
                        if not (m.coefficient.remainder_u_free and m.coefficient.remainder_nonzero):
                            bad.append((n, d, k, j, f.__name__))
    ok = seen > 0 and not bad
    report(6, ok, f"{seen} maps factor with a parameter-free nonzero remainder", t)
    assert ok and time.time() - t < 300


P21_SIGS = [(0, 0), (1, 0), (1, 1), (2, 1)]


def test_criterion_07_word_sum_scalar_proportional():
    # what does hold: proportional, with a k- and beta-independent ratio
    ratios = set()
    for d in (0, 1):
        ctx = twisted(2, Symbolic(d))
        for j in (1, 2):
            for k in P21_SIGS:
                r = prop21_evaluate(k, j, ctx)
                assert r.proportional
                if not r.expected.is_zero():
                    ratios.add(r.ratio)
    assert ratios == {-s_power(-3)}


@pytest.mark.xfail(strict=True, reason="closed form off by the constant -q^{-3/2} at n=2; see decisions ledger")
def test_criterion_07_word_sum_scalar_exact():
    t = time.time()
    rows = []
    for d in (0, 1):
        ctx = twisted(2, Symbolic(d))
        for j in (1, 2):
            for k in P21_SIGS:
                rows.append(prop21_evaluate(k, j, ctx))
    ok = all(r.matches for r in rows)
    report(7, ok, f"{sum(r.matches for r in rows)}/{len(rows)} exact; others differ by ratio -q^(-3/2)", t)
    assert ok


REGIMES = {(0, 0): (1, 1), (0, -1): (2, 2), (0, -2): (3, 3), (0, -3): (4, 3)}


def _edge_oracle(k, j, direction, alpha, beta, n):
    if direction == "+":
        return beta - k[j - 1] + j - 1 != 0
    return alpha + k[j - 1] + n - j != 0


def test_criterion_08_structure():
    t = time.time()
    ok = True
    for (a, b), (case, count) in REGIMES.items():
        r = classify(a, b, 2)
        ok &= r.case == case and len(r.simples) == count
        ok &= r.direct_sum == (a + b == -2)
        ok &= r.finite_dim == (case == 1)
        lat = lattice(a, b, 2, 4)
        nodes = set(lat.nodes)
        want = set()
        for k in nodes:
            for j in (1, 2):
                for step, sym in ((1, "+"), (-1, "-")):
                    tgt = list(k)
                    tgt[j - 1] += step
                    tgt = tuple(tgt)
                    if tgt in nodes and _edge_oracle(k, j, sym, a, b, 2):
                        want.add((k, tgt, j, sym))
        ok &= set(lat.edges) == want
    half = Fraction(1, 2)
    for alpha, beta in ((half, -half), (Fraction(1, 3), Fraction(-2, 3)), (ParameterPoint(0, 1), ParameterPoint(-1, 1))):
        ok &= classify(alpha, beta, 2).irreducible
    report(8, ok, "four n=2 regimes (1/2/3/3 simples), edges match hyperplanes on B=4, non-integral irreducible", t)
    assert ok and time.time() - t < 60


def _intertwiner_parts():
    rec = all(check_recurrences(n, d, 3).ok for n in (1, 2) for d in (0, 1))
    poles = [pole_report(k, d) for n in (1, 2) for k in signature_box(n, 3) for d in (0, 1)]
    op = all(intertwine_verify(n, d, deg, 1).ok for n, deg in ((1, 3), (2, 2)) for d in (0, 1))
    op3 = intertwine_verify(3, 0, 1, 0).ok
    return rec, poles, op and op3


def test_criterion_09_intertwiner_parts():
    # recurrences, integral poles and exact intertwining all hold
    rec, poles, op = _intertwiner_parts()
    assert rec and op and all(p.integral for p in poles)
    assert all(p.simple for p in poles if len(p.k) == 1)


@pytest.mark.xfail(strict=True, reason="a_k has double poles for n=2, e.g. (u +- 1)^2 at k=(2,2); see decisions ledger")
def test_criterion_09_intertwiner():
    t = time.time()
    rec, poles, op = _intertwiner_parts()
    simple = all(p.simple for p in poles)
    ok = rec and op and all(p.integral for p in poles) and simple
    report(9, ok, f"recurrences {rec}, intertwining {op}, poles integral True, simple {simple}", t)
    assert ok and time.time() - t < 600


def test_criterion_10_det_shift():
    t = time.time()
    ok = all(detshift_verify(n, d, 3, 1).ok for n in (1, 2) for d in (0, 1))
    report(10, ok, "pi_{a,b}(g) T = T pi_{a-1,b+1}(g) on windows, n <= 2", t)
    assert ok and time.time() - t < 60


def test_criterion_11_unitarity():
    t = time.time()
    h = Fraction(1, 2)
    samples = [
        ("principal", -h, -3 * h, None, True),
        ("complementary", -3 * h, -h, None, True),
        ("strange", ParameterPoint(0, 1), ParameterPoint(0, 1), None, True),
        ("(0,0)", 0, 0, None, False),
        ("V^s_2 at (0,-1)", 0, -1, lambda k: k[1] == 0, True),
    ]
    ok = True
    worst = 0.0
    for q in (Fraction(1, 4), Fraction(49, 100)):
        for name, a, b, restrict, want in samples:
            form = invariant_form_solve(a, b, 2, q=q, restrict=restrict)
            ok &= form.feasible == want
            if restrict is None:
                ok &= form.feasible == is_unitary_series(classify_series(a, b, 2))
            if form.feasible:
                ok &= all(c.real > 0 and abs(c.imag) <= 1e-9 * abs(c) for c in form.constants.values())
                ref = invariant_form_solve(*reference_point(a, b, 2), 2, q=q, restrict=restrict)
                dev = compare_with_recurrence(form, ref, a, b, 2, float(q))
                worst = max(worst, dev)
                ok &= dev <= 1e-9
    report(11, ok, f"feasibility as expected at q=1/4, 49/100; max ratio deviation {worst:.1e}", t)
    assert ok and time.time() - t < 300


def test_criterion_12_n1_closed_form():
    t = time.time()
    z = algebra(1).z(1, 1)
    ok = True
    for d in (0, 1, -2):
        mode = Symbolic(d)
        qa, qb = mode.values()
        ctx = twisted(1, mode)
        for k in range(6):
            # q^{k - beta - 1/2} [beta - k]_q
            coeff = s_power(2 * k - 1) / qb * qint(QExp(-k, 0, 1), qa, qb)
            ok &= ctx.act_word(E(1), LocalizedVector(z**k)) == LocalizedVector(z ** (k + 1)).scale(coeff)
    report(12, ok, "E z^k = q^(k-beta-1/2) [beta-k]_q z^(k+1), k <= 5", t)
    assert ok and time.time() - t < 5
