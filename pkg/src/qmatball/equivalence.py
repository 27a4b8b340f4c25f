"""
Parameter arithmetic for equivalent representations, the diagonal
intertwining operator and the det-shift operator.

Two facts are used throughout:

* multiplying by ``det^{-1}`` identifies ``pi_{alpha-1, beta+1}`` with
  ``pi_{alpha, beta}``, so ``alpha - beta`` can be pushed into ``{0, 1}``;
* for generic parameters the operator acting on ``V_k`` by the scalar
  ``a_k(alpha, beta)`` intertwines ``pi_{alpha,beta}`` with
  ``pi_{-n-beta, -n-alpha}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import floor
from typing import Sequence

import flint

from .action import RepContext, custom, twisted, window_basis
from .isotypic import component_coordinates, is_dominant
from .qmatrix import LocalizedVector
from .scalars import ONE, ParameterPoint, QExp, ScalarExpr, Symbolic, qint, s_power
from .uqsl import generators
from .transitions import NotIntegral


def _param(x) -> ParameterPoint:
    return ParameterPoint.of(x)


# ---------------------------------------------------------------------------
# parameter classes


def canonicalize(alpha, beta) -> tuple[ParameterPoint, ParameterPoint, int]:
    """Shift ``(alpha, beta) -> (alpha - m, beta + m)`` so that ``alpha - beta``
    is 0 or 1; returns the new pair and ``m``."""
    alpha, beta = _param(alpha), _param(beta)
    diff = alpha.re - beta.re
    if alpha.im_units != beta.im_units or diff.denominator != 1:
        raise NotIntegral("alpha - beta must be an integer")
    m = floor(diff / 2)
    return alpha - m, beta + m, m


@dataclass(frozen=True)
class EquivalenceClass:
    members: tuple
    partner_raw: tuple | None

    def as_dict(self) -> dict:
        return {
            "members": [[str(a), str(b)] for a, b in self.members],
            "partner_before_shift": None if self.partner_raw is None else [str(x) for x in self.partner_raw],
        }


def partner_raw(alpha, beta, n: int) -> tuple[ParameterPoint, ParameterPoint]:
    """``(-n - beta, -n - alpha)``; the imaginary parts, wrapped into
    ``[0, 2 pi/h)``, swap along with the real parts."""
    alpha, beta = _param(alpha), _param(beta)
    return ParameterPoint(-n - beta.re, beta.im_units), ParameterPoint(-n - alpha.re, alpha.im_units)


def partner(alpha, beta, n: int) -> EquivalenceClass:
    """Equivalence class of a canonical parameter pair."""
    a, b, _ = canonicalize(alpha, beta)
    if a.is_integer() and b.is_integer():
        return EquivalenceClass(((a, b),), None)
    pa, pb = partner_raw(a, b, n)
    ca, cb, _ = canonicalize(pa, pb)
    members = ((a, b),) if (ca, cb) == (a, b) else ((a, b), (ca, cb))
    return EquivalenceClass(members, (pa, pb))


# ---------------------------------------------------------------------------
# coefficients of the intertwiner


def _one_minus(c: QExp, qa, qb) -> ScalarExpr:
    return ONE - (c * 2).power(qa, qb)


def a_coeff(k: Sequence[int], qa: ScalarExpr, qb: ScalarExpr) -> ScalarExpr:
    """``a_k = prod_j P_j`` with ``a_0 = 1``; ``qa``, ``qb`` are ``q^alpha``, ``q^beta``.

    Raises ``ScalarError`` (division by zero) when evaluated on a pole.
    """
    n = len(k)
    out = ONE
    for j, kj in enumerate(k, start=1):
        if kj > 0:
            for i in range(kj):
                out = out * _one_minus(QExp(n + i - j + 1, 1, 0), qa, qb) / _one_minus(QExp(i - j + 1, 0, -1), qa, qb)
        elif kj < 0:
            for i in range(kj + 1, 1):
                out = out * _one_minus(QExp(i - j, 0, -1), qa, qb) / _one_minus(QExp(n + i - j, 1, 0), qa, qb)
    return out


def up_ratio(n: int, k: Sequence[int], j: int, qa, qb) -> ScalarExpr:
    """``a_{k+e_j} / a_k = q^{n+alpha+beta} [-n-alpha-k_j+j-1] / [beta-k_j+j-1]``."""
    kj = k[j - 1]
    return QExp(n, 1, 1).power(qa, qb) * qint(QExp(-n - kj + j - 1, -1, 0), qa, qb) / qint(QExp(-kj + j - 1, 0, 1), qa, qb)


def down_ratio(n: int, k: Sequence[int], j: int, qa, qb) -> ScalarExpr:
    """``a_{k-e_j} / a_k = q^{-n-alpha-beta} [-beta+k_j-j] / [alpha+k_j+n-j]``."""
    kj = k[j - 1]
    return QExp(-n, -1, -1).power(qa, qb) * qint(QExp(kj - j, 0, -1), qa, qb) / qint(QExp(kj + n - j, 1, 0), qa, qb)


def signature_box(n: int, bound: int) -> list[tuple]:
    return [k for k in product(range(bound, -bound - 1, -1), repeat=n) if is_dominant(k)]


@dataclass
class RecurrenceReport:
    checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def check_recurrences(n: int, d: int = 0, bound: int = 3) -> RecurrenceReport:
    """Both ratio recurrences for every adjacent pair of dominant signatures
    with ``|k_i| <= bound``, with ``q^alpha = u`` and ``q^beta = u q^{-d}``."""
    qa, qb = Symbolic(d).values()
    box = set(signature_box(n, bound))
    coeff = {k: a_coeff(k, qa, qb) for k in box}
    failures = []
    checked = 0
    for k in sorted(box, reverse=True):
        for j in range(1, n + 1):
            up = list(k)
            up[j - 1] += 1
            up = tuple(up)
            if up in box:
                checked += 1
                if coeff[up] != coeff[k] * up_ratio(n, k, j, qa, qb):
                    failures.append(("up", k, j))
            dn = list(k)
            dn[j - 1] -= 1
            dn = tuple(dn)
            if dn in box:
                checked += 1
                if coeff[dn] != coeff[k] * down_ratio(n, k, j, qa, qb):
                    failures.append(("down", k, j))
    return RecurrenceReport(checked, failures)


def pole_structure(e: ScalarExpr) -> list[tuple[int, int, int]]:
    """Poles of a coefficient in ``s`` and ``u`` as a function of ``u``.

    Every denominator factor must be ``s^a u - c s^b`` with ``c = +-1``, i.e. a
    pole at ``q^{2 alpha} = q^m`` with ``m = b - a`` (in powers of ``s``).
    Returns ``(m, c, multiplicity)`` triples and raises ``ValueError`` for any
    other factor shape.
    """
    if e.depends_on("v"):
        raise ValueError("expected a coefficient in s and u only")
    _, factors = e.den.factor()
    out = []
    for f, mult in factors:
        terms = f.to_dict()
        if len(terms) == 1:
            continue  # monomials in s, u are units away from u = 0
        if len(terms) != 2 or f.degrees()[1] != 1:
            raise ValueError(f"unexpected denominator factor {f}")
        (eu, cu), (es, cs) = sorted(terms.items(), key=lambda t: -t[0][1])
        if eu[1] != 1 or eu[2] != 0 or es[1] != 0 or es[2] != 0 or abs(flint.fmpq(cu)) != abs(flint.fmpq(cs)):
            raise ValueError(f"unexpected denominator factor {f}")
        sign = 1 if flint.fmpq(cu) == -flint.fmpq(cs) else -1
        out.append((int(es[0]) - int(eu[0]), sign, int(mult)))
    return sorted(out)


@dataclass
class PoleReport:
    k: tuple
    d: int
    poles: list

    @property
    def integral(self) -> bool:
        return all(m % 2 == 0 for m, _, _ in self.poles)

    @property
    def simple(self) -> bool:
        return all(mult == 1 for _, _, mult in self.poles)


def pole_report(k: Sequence[int], d: int = 0) -> PoleReport:
    qa, qb = Symbolic(d).values()
    return PoleReport(tuple(k), d, pole_structure(a_coeff(k, qa, qb)))


# ---------------------------------------------------------------------------
# operator checks


def partner_context(ctx: RepContext) -> RepContext:
    """``pi_{-n-beta, -n-alpha}`` over the same field as ``ctx``."""
    n = ctx.n
    return custom(n, s_power(-2 * n) / ctx.qb, s_power(-2 * n) / ctx.qa, ctx.shift, label="partner")


def apply_A(x: LocalizedVector, qa, qb) -> LocalizedVector:
    out = None
    for k, part in component_coordinates(x).items():
        y = part.scale(a_coeff(k, qa, qb))
        out = y if out is None else out + y
    return out if out is not None else x


@dataclass
class OperatorReport:
    checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def intertwine_verify(n: int, d: int = 0, max_degree: int = 2, max_det: int = 1) -> OperatorReport:
    """``A pi_{alpha,beta}(g) = pi_{-n-beta,-n-alpha}(g) A`` for every generator
    and every window vector, with ``q^alpha = u`` generic."""
    ctx = twisted(n, Symbolic(d))
    other = partner_context(ctx)
    qa, qb = ctx.qa, ctx.qb
    failures = []
    checked = 0
    for x in window_basis(n, max_degree, max_det):
        ax = apply_A(x, qa, qb)
        for g in generators(n):
            lhs = apply_A(ctx.act_word(g, x), qa, qb)
            rhs = other.act_word(g, ax)
            checked += 1
            if not (lhs - rhs).is_zero():
                failures.append((g, x))
    return OperatorReport(checked, failures)


def shift_context(ctx: RepContext, steps: int = 1) -> RepContext:
    """``pi_{alpha-steps, beta+steps}`` over the same field as ``ctx``."""
    shift = None if ctx.shift is None else ctx.shift - 2 * steps
    return custom(ctx.n, ctx.qa * s_power(-2 * steps), ctx.qb * s_power(2 * steps), shift, label="shifted")


def det_shift(x: LocalizedVector) -> LocalizedVector:
    """``T(f) = f det^{-1}``."""
    return LocalizedVector(x.poly, x.d + 1)


def detshift_verify(n: int, d: int = 0, max_degree: int = 3, max_det: int = 1, orientation: str = "forward") -> OperatorReport:
    """``pi_{alpha,beta}(g) T = T pi_{alpha-1,beta+1}(g)`` on the window
    (``orientation='forward'``); ``'reverse'`` tests the roles swapped."""
    ctx = twisted(n, Symbolic(d))
    low = shift_context(ctx)
    if orientation == "reverse":
        ctx, low = low, ctx
    elif orientation != "forward":
        raise ValueError("orientation must be 'forward' or 'reverse'")
    failures = []
    checked = 0
    for x in window_basis(n, max_degree, max_det):
        for g in generators(n):
            checked += 1
            if not (ctx.act_word(g, det_shift(x)) - det_shift(low.act_word(g, x))).is_zero():
                failures.append((g, x))
    return OperatorReport(checked, failures)
