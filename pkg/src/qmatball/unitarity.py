"""
Unitarizability: the series labels, the ratio recurrence for the component
constants of an invariant form, and a numeric solver that looks for an
invariant positive Hermitian form directly.

The solver never uses the recurrence.  It first finds, on each component
``V_k``, the Hermitian form invariant under the compact part (``E_i``, ``F_i``,
``K_i`` for ``i != n`` and ``K_n``), which is unique up to scale.  The whole form
is then ``sum_k c_k <,>_k`` and invariance under the ``p^+`` block
(``(xi u, v) = (u, xi^* v)``) is a homogeneous linear system in the ``c_k``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .action import RepContext, twisted, untwisted
from .canonical import pq_entry
from .isotypic import component_basis, is_dominant, project
from .linalg import CoordSystem
from .qmatrix import LocalizedVector
from .scalars import Concrete, ParameterPoint, ScalarExpr, specialize
from .transitions import NotIntegral, case_of, fits
from .uqsl import E, F, K, UWord, star

DEFAULT_QSAMPLES = (Fraction(1, 4), Fraction(49, 100))


def default_qsample() -> Fraction:
    env = os.environ.get("QMATBALL_QSAMPLE")
    return Fraction(env) if env else DEFAULT_QSAMPLES[1]


def _param(x) -> ParameterPoint:
    return ParameterPoint.of(x)


# ---------------------------------------------------------------------------
# labels


PRINCIPAL = "PrincipalUnitary"
COMPLEMENTARY = "Complementary"
STRANGE = "Strange"
NOT_UNITARIZABLE = "NotUnitarizable"


@dataclass(frozen=True)
class SeriesLabel:
    name: str
    case: int | None = None
    note: str = ""

    def __str__(self):
        return self.name if self.case is None else f"IntegerCase({self.case})"


_CASE_NOTES = {
    1: "neither the module nor its simple submodule is unitary",
    2: "the n submodules V^s_j are unitary (small representations)",
    3: "completely reducible; all n+1 simple submodules are unitary",
    4: "the n+1 simple submodules are unitary; some quotients are not",
}


def classify_series(alpha, beta, n: int) -> SeriesLabel:
    """Series label; the strange series wins over the others, then the
    complementary one."""
    alpha, beta = _param(alpha), _param(beta)
    if alpha.im_units != beta.im_units or (alpha.re - beta.re).denominator != 1:
        raise NotIntegral("alpha - beta must be an integer")
    if alpha.im_units:
        return SeriesLabel(STRANGE)
    if alpha.is_integer():
        case = case_of(alpha, beta, n)
        return SeriesLabel(f"IntegerCase({case})", case, _CASE_NOTES[case])
    a, b = alpha.re, beta.re
    if abs(a + n) < 1 and abs(b) < 1 and (a + n) * b < 0:
        return SeriesLabel(COMPLEMENTARY)
    if a + b == -n:
        return SeriesLabel(PRINCIPAL)
    return SeriesLabel(NOT_UNITARIZABLE)


def is_unitary_series(label: SeriesLabel) -> bool:
    return label.name in (PRINCIPAL, COMPLEMENTARY, STRANGE)


# ---------------------------------------------------------------------------
# recurrence


def _q_to(x: complex | float, q: float, im_units: int) -> complex:
    """``q^{x + i*im_units*pi/h}`` with ``q = e^{-h/2}``."""
    return (q**x) * ((-1j) ** im_units)


def c_recurrence(k: Sequence[int], j: int, alpha, beta, q) -> complex:
    """``c_k / c_{k+e_j} = (1 - q^{2(-beta+k_j+1-j)}) / conj(1 - q^{2(alpha+k_j+1+n-j)})``.

    Raises ``ZeroDivisionError`` when the signature sits on a hyperplane.
    """
    alpha, beta = _param(alpha), _param(beta)
    n = len(k)
    q = float(q)
    kj = k[j - 1]
    num = 1 - _q_to(2 * (-float(beta.re) + kj + 1 - j), q, (-2 * beta.im_units) % 4)
    den = 1 - _q_to(2 * (float(alpha.re) + kj + 1 + n - j), q, 2 * alpha.im_units % 4)
    if abs(den) < 1e-14:
        raise ZeroDivisionError(f"{tuple(k)} lies on a hyperplane")
    return num / np.conj(den)


def recurrence_constants(alpha, beta, n: int, nodes: Iterable[tuple], q) -> dict:
    """Iterate the recurrence from ``c_0 = 1`` over ``nodes`` (BFS along up and
    down steps); ``None`` marks signatures unreachable without hitting a zero."""
    nodes = set(nodes)
    zero = tuple([0] * n)
    out = {zero: 1.0 + 0j}
    queue = [zero]
    while queue:
        k = queue.pop(0)
        for j in range(1, n + 1):
            up = list(k)
            up[j - 1] += 1
            up = tuple(up)
            if up in nodes and up not in out:
                try:
                    r = c_recurrence(k, j, alpha, beta, q)
                except ZeroDivisionError:
                    continue
                if abs(r) > 1e-14:
                    out[up] = out[k] / r
                    queue.append(up)
            dn = list(k)
            dn[j - 1] -= 1
            dn = tuple(dn)
            if dn in nodes and dn not in out:
                try:
                    r = c_recurrence(dn, j, alpha, beta, q)
                except ZeroDivisionError:
                    continue
                out[dn] = out[k] * r
                queue.append(dn)
    return out


# ---------------------------------------------------------------------------
# numeric invariant forms


class _Numeric:
    """Numeric coordinates of exact vectors on component bases at ``s = s0``."""

    def __init__(self, s0: Fraction, alpha: ParameterPoint, beta: ParameterPoint):
        self.s0 = s0
        self.alpha = alpha
        self.beta = beta
        self._bases: dict = {}

    def num(self, c: ScalarExpr) -> complex:
        v = specialize(c, self.s0, self.alpha, self.beta)
        return complex(v.to_complex()) if isinstance(v, ScalarExpr) else complex(v)

    def basis(self, k: tuple, d: int | None = None):
        """Basis of ``V_k`` with its coordinate system over ``det^d``."""
        vecs = component_basis(k)
        d = max(x.d for x in vecs) if d is None else max(d, max(x.d for x in vecs))
        hit = self._bases.get((k, d))
        if hit is None:
            cs = CoordSystem(vecs, d)
            M = np.array([[self.num(c) for c in cs.coords(b)] for b in vecs], dtype=complex).T
            hit = (vecs, cs, M)
            self._bases[(k, d)] = hit
        return hit

    def coords(self, x: LocalizedVector, k: tuple) -> np.ndarray:
        vecs, cs, M = self.basis(k, x.d)
        if x.is_zero():
            return np.zeros(len(vecs), dtype=complex)
        c = cs.coords(x)
        if c is None:
            raise ValueError("vector outside the component")
        y = np.array([self.num(t) for t in c], dtype=complex)
        sol, *_ = np.linalg.lstsq(M, y, rcond=None)
        if np.linalg.norm(M @ sol - y) > 1e-9 * max(1.0, np.linalg.norm(y)):
            raise ValueError("vector outside the component")
        return sol


def _op_matrix(ctx: RepContext, w: UWord, src: tuple, tgt: tuple, nm: _Numeric) -> np.ndarray:
    vecs = nm.basis(src)[0]
    cols = [nm.coords(project(ctx.act_word(w, b), tgt), tgt) for b in vecs]
    return np.array(cols, dtype=complex).T


def _hermitian_kernel(constraints: list[tuple[np.ndarray, np.ndarray]], dim: int) -> list[np.ndarray]:
    """Hermitian ``G`` with ``G A = B^H G`` for each pair ``(A, B)``."""
    # unknowns: real and imaginary parts of G, Hermitian symmetry imposed as rows
    idx = lambda a, b: a * dim + b  # noqa: E731
    N = dim * dim
    rows = []
    for A, B in constraints:
        BH = B.conj().T
        for a in range(dim):
            for b in range(dim):
                # (G A - BH G)[a,b] = sum_c G[a,c] A[c,b] - BH[a,c] G[c,b]
                r = np.zeros(N, dtype=complex)
                for c in range(dim):
                    r[idx(a, c)] += A[c, b]
                    r[idx(c, b)] -= BH[a, c]
                rows.append(r)
    rows = np.array(rows) if rows else np.zeros((0, N), dtype=complex)
    # real form: G = X + iY, complex equation r.(X+iY) = 0
    R = np.vstack([np.hstack([rows.real, -rows.imag]), np.hstack([rows.imag, rows.real])]) if len(rows) else np.zeros((0, 2 * N))
    herm = []
    for a in range(dim):
        for b in range(dim):
            r = np.zeros(2 * N)
            r[idx(a, b)] = 1
            r[idx(b, a)] -= 1
            herm.append(r)
            r = np.zeros(2 * N)
            r[N + idx(a, b)] = 1
            r[N + idx(b, a)] += 1
            herm.append(r)
    R = np.vstack([R, np.array(herm)])
    _, sv, vh = np.linalg.svd(R)
    tol = 1e-9 * max(1.0, sv[0] if len(sv) else 1.0)
    rank = int((sv > tol).sum())
    out = []
    for v in vh[rank:]:
        out.append((v[:N] + 1j * v[N:]).reshape(dim, dim))
    return out


_FORMS: dict = {}


def component_form(k: tuple, n: int, nm: _Numeric) -> np.ndarray:
    """The compact-invariant positive form on ``V_k``, trace-normalized.

    The compact generators other than ``K_n`` act without the twist and ``K_n``
    only by a real rescaling, so the form depends on ``k`` and ``q`` alone.
    """
    key = (k, nm.s0)
    hit = _FORMS.get(key)
    if hit is not None:
        return hit
    ctx = untwisted(n)
    dim = len(nm.basis(k)[0])
    cons = []
    gens: list[UWord] = []
    for i in range(1, 2 * n):
        gens.append(K(i))
        if i != n:
            gens += [E(i), F(i)]
    for g in gens:
        A = _op_matrix(ctx, g, k, k, nm)
        B = _op_matrix(ctx, star(g, n), k, k, nm)
        cons.append((A, B))
    ker = _hermitian_kernel(cons, dim)
    if len(ker) != 1:
        raise ValueError(f"compact-invariant forms on V_{k} span {len(ker)} dimensions")
    G = ker[0]
    G = G / np.trace(G)
    G = (G + G.conj().T) / 2
    if np.linalg.eigvalsh(G).min() <= 0:
        raise ValueError(f"compact-invariant form on V_{k} is not definite")
    _FORMS[key] = G
    return G


@dataclass
class EdgeRatio:
    """``rho = c_t / c_k`` forced by invariance along ``k -> t``; ``status`` is
    ``ok``, ``c_k=0``, ``c_t=0``, ``free`` (no constraint) or ``inconsistent``."""

    source: tuple
    target: tuple
    status: str
    rho: complex = 0j
    residual: float = 0.0


def edge_ratio(ctx: RepContext, k: tuple, t: tuple, n: int, nm: _Numeric, tol: float = 1e-9) -> EdgeRatio:
    """Invariance ``c_t (P_t xi u, v)_t = c_k (u, P_k xi^* v)_k`` for the ``p^+``
    entries, ``u`` in ``V_k`` and ``v`` in ``V_t``."""
    Gk, Gt = component_form(k, n, nm), component_form(t, n, nm)
    lhs, rhs = [], []
    for r in range(1, n + 1):
        for c in range(1, n + 1):
            w = pq_entry("+", n, r, c)
            A = _op_matrix(ctx, w, k, t, nm)
            B = _op_matrix(ctx, star(w, n), t, k, nm)
            lhs.append((Gt @ A).ravel())
            rhs.append((B.conj().T @ Gk).ravel())
    L, R = np.concatenate(lhs), np.concatenate(rhs)
    nl, nr = np.linalg.norm(L), np.linalg.norm(R)
    scale = max(nl, nr)
    if scale == 0:
        return EdgeRatio(k, t, "free")
    if nl < tol * scale:
        return EdgeRatio(k, t, "c_k=0", residual=nl / scale)
    if nr < tol * scale:
        return EdgeRatio(k, t, "c_t=0", residual=nr / scale)
    rho = np.vdot(L, R) / np.vdot(L, L)
    res = float(np.linalg.norm(L * rho - R) / nr)
    return EdgeRatio(k, t, "ok" if res < tol else "inconsistent", complex(rho), res)


@dataclass
class InvariantForm:
    feasible: bool
    constants: dict = field(default_factory=dict)
    edges: list = field(default_factory=list)
    residual: float = 0.0
    reason: str = ""
    pieces: int = 1

    def as_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "constants": {",".join(map(str, k)): round(float(v.real), 12) for k, v in sorted(self.constants.items(), reverse=True)},
            "residual": self.residual,
            "reason": self.reason,
            "pieces": self.pieces,
        }


def invariant_form_solve(
    alpha,
    beta,
    n: int,
    nodes: Iterable[tuple] | None = None,
    q=None,
    max_degree: int = 3,
    max_det: int = 1,
    restrict: Callable[[tuple], bool] | None = None,
    tol: float = 1e-9,
) -> InvariantForm:
    """Search for ``c_k > 0`` making ``sum c_k <,>_k`` invariant.

    ``nodes`` defaults to the window components; ``restrict`` keeps only the
    signatures of a submodule.  ``q`` must have a rational square root.  The
    constants are normalized to 1 at ``0`` (when present) and at the largest
    signature of every other connected piece of the constraint graph.
    """
    alpha, beta = _param(alpha), _param(beta)
    q = Fraction(q) if q is not None else default_qsample()
    nm = _Numeric(_rational_sqrt(q), alpha, beta)
    if nodes is None:
        nodes = _window(n, max_degree, max_det)
    nodes = sorted({tuple(k) for k in nodes if restrict is None or restrict(tuple(k))}, reverse=True)
    node_set = set(nodes)
    ctx = twisted(n, Concrete(alpha, beta))
    edges = []
    for k in nodes:
        for j in range(1, n + 1):
            t = list(k)
            t[j - 1] += 1
            t = tuple(t)
            if t in node_set:
                edges.append(edge_ratio(ctx, k, t, n, nm, tol))
    bad = [e for e in edges if e.status in ("c_k=0", "c_t=0", "inconsistent")]
    if bad:
        e = bad[0]
        return InvariantForm(False, edges=edges, reason=f"edge {e.source}->{e.target}: {e.status}")
    adj: dict = {k: [] for k in nodes}
    for e in edges:
        if e.status == "ok":
            adj[e.source].append((e.target, e.rho))
            adj[e.target].append((e.source, 1 / e.rho))
    zero = tuple([0] * n)
    consts: dict = {}
    worst = 0.0
    pieces = 0
    for start in ([zero] if zero in node_set else []) + nodes:
        if start in consts:
            continue
        # each connected piece carries its own free scale
        pieces += 1
        consts[start] = 1.0 + 0j
        queue = [start]
        while queue:
            k = queue.pop(0)
            for t, rho in adj[k]:
                val = consts[k] * rho
                if t in consts:
                    worst = max(worst, abs(consts[t] - val) / abs(val))
                else:
                    consts[t] = val
                    queue.append(t)
    if worst > tol:
        return InvariantForm(False, consts, edges, worst, "constraints around a cycle disagree", pieces)
    positive = all(abs(v.imag) < tol * abs(v) and v.real > 0 for v in consts.values())
    return InvariantForm(positive, consts, edges, worst, "" if positive else "invariant form exists but is not positive", pieces)


def reference_point(alpha, beta, n: int) -> tuple[ParameterPoint, ParameterPoint]:
    """A principal-series point with the same ``alpha - beta``; an imaginary
    shift keeps it off the integers when needed."""
    alpha, beta = _param(alpha), _param(beta)
    d = alpha.re - beta.re
    a0, b0 = (d - n) / 2, (-d - n) / 2
    im = 1 if Fraction(a0).denominator == 1 else 0
    return ParameterPoint(a0, im), ParameterPoint(b0, im)


def _rational_sqrt(q: Fraction) -> Fraction:
    from math import isqrt

    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a != q.numerator or b * b != q.denominator:
        raise ValueError(f"q = {q} needs a rational square root")
    return Fraction(a, b)


def _window(n: int, max_degree: int, max_det: int) -> list[tuple]:
    from itertools import product

    out = []
    for k in product(range(max_degree, -max_det - 1, -1), repeat=n):
        if is_dominant(k) and fits(k, max_degree, max_det):
            out.append(k)
    return out


def compare_with_recurrence(form: InvariantForm, reference: InvariantForm, alpha, beta, n: int, q) -> float:
    """Largest relative deviation between ``c_k / c_{k+e_j}`` (measured against
    the reference normalization) and the recurrence."""
    ref = {(e.source, e.target): e.rho for e in reference.edges if e.status == "ok"}
    worst = 0.0
    for e in form.edges:
        if e.status != "ok" or (e.source, e.target) not in ref:
            continue
        j = next(i for i in range(n) if e.target[i] != e.source[i]) + 1
        try:
            expected = c_recurrence(e.source, j, alpha, beta, q)
        except ZeroDivisionError:
            continue
        got = ref[(e.source, e.target)] / e.rho
        worst = max(worst, abs(got - expected) / abs(expected))
    return worst
