"""
Canonical elements of U_q sl_n built as words: the lowering elements F_mj and
S_rt, their rescaled forms G_mj, the K-bracket factors, and the adjoint-action
words spanning the two off-diagonal blocks p^+ and p^-.

The adjoint action is the left one, ``ad_a(b) = sum a' b S(a'')``.

Recursions (all products of K-bracket factors commute with one another)::

    F_jj = 1,  F_{j-1,j} = F_{j-1} K_{j-1}
    F_mj = F_{m+1,j} F_m K_m
           + sum_{s=m+2}^{j} (-1)^{s+m+1} F_sj ad_{F_{s-1}}...ad_{F_{m+1}}(F_m K_m) K(j, m+1, s-1)

    S_tt = 1,  S_{t-1,t} = F_t K_t
    S_rt = S_{r,t-1} F_t K_t
           + sum_{s=r+1}^{t-1} (-1)^{t-s} S_{r,s-1} ad_{F_s}...ad_{F_{t-1}}(F_t K_t) L(r, s, t-1)

    G_mj = F_m K_m F_{m+1,j}
           + sum_{s=m+2}^{j} (-q)^{s-m-1} ad_{F_{s-1}}...ad_{F_{m+1}}(F_m K_m) F_sj K_-(j, m+1, s-1)

with the factors

    K(j,p,r)   = prod_{a=p}^{r} q^{j-a}   K_a...K_{j-1} [H_a+...+H_{j-1}+j-a]_q
    K_-(j,p,r) = prod_{a=p}^{r} q^{j-a-1} K_a...K_{j-1} [H_a+...+H_{j-1}+j-a-1]_q
    L(j,p,r)   = prod_{a=p}^{r} q^{a-j}   K_{j+1}...K_a [H_{j+1}+...+H_a+a-j]_q
    L_-(j,p,r) = prod_{a=p}^{r} q^{a-j-1} K_{j+1}...K_a [H_{j+1}+...+H_a+a-j-1]_q
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .scalars import ONE, ZERO, ScalarExpr, qint, s_power
from .uqsl import LEFT, UWord, E, F, K, ad_chain, cartan_qbracket, k_product

# ---------------------------------------------------------------------------
# K-bracket factors


def _factor(kstart: int, kend: int, power: int, shift: int) -> UWord:
    """``q^power K_kstart...K_kend [H_kstart+...+H_kend+shift]_q``."""
    word = UWord({k_product(kstart, kend): s_power(2 * power)})
    return word * cartan_qbracket(kstart, kend, shift)


def K_factor(j: int, p: int, r: int) -> UWord:
    out = UWord.identity()
    for a in range(p, r + 1):
        out = out * _factor(a, j - 1, j - a, j - a)
    return out


def K_minus(j: int, p: int, r: int) -> UWord:
    out = UWord.identity()
    for a in range(p, r + 1):
        out = out * _factor(a, j - 1, j - a - 1, j - a - 1)
    return out


def L_factor(j: int, p: int, r: int) -> UWord:
    out = UWord.identity()
    for a in range(p, r + 1):
        out = out * _factor(j + 1, a, a - j, a - j)
    return out


def L_minus(j: int, p: int, r: int) -> UWord:
    out = UWord.identity()
    for a in range(p, r + 1):
        out = out * _factor(j + 1, a, a - j - 1, a - j - 1)
    return out


def factor_eigenvalue(kind: str, j: int, p: int, r: int, weight) -> ScalarExpr:
    """Scalar by which a K-bracket factor acts on a vector of the given weight
    (``weight[i-1]`` is the exponent of ``K_i``)."""
    total = ONE
    for a in range(p, r + 1):
        if kind in ("K", "K-"):
            lo, hi = a, j - 1
            power = j - a - (1 if kind == "K-" else 0)
        elif kind in ("L", "L-"):
            lo, hi = j + 1, a
            power = a - j - (1 if kind == "L-" else 0)
        else:
            raise ValueError(f"unknown factor kind {kind!r}")
        h = sum(weight[i - 1] for i in range(lo, hi + 1))
        total = total * s_power(2 * (power + h)) * qint(h + power)
    return total


# ---------------------------------------------------------------------------
# lowering elements


def _check_pair(a: int, b: int, what: str) -> None:
    if not (1 <= a <= b):
        raise ValueError(f"{what} needs 1 <= first index <= second index, got ({a},{b})")


@lru_cache(maxsize=None)
def build_Fmj(m: int, j: int, convention: str = LEFT) -> UWord:
    _check_pair(m, j, "F_mj")
    if m == j:
        return UWord.identity()
    fk = F(m) * K(m)
    if m == j - 1:
        return fk
    out = build_Fmj(m + 1, j, convention) * fk
    for s in range(m + 2, j + 1):
        inner = ad_chain([F(i) for i in range(s - 1, m, -1)], fk, convention)
        sign = ONE if (s + m + 1) % 2 == 0 else -ONE
        out = out + (build_Fmj(s, j, convention) * inner * K_factor(j, m + 1, s - 1)).scale(sign)
    return out


@lru_cache(maxsize=None)
def build_Srt(r: int, t: int, convention: str = LEFT) -> UWord:
    _check_pair(r, t, "S_rt")
    if r == t:
        return UWord.identity()
    fk = F(t) * K(t)
    if r == t - 1:
        return fk
    out = build_Srt(r, t - 1, convention) * fk
    for s in range(r + 1, t):
        inner = ad_chain([F(i) for i in range(s, t)], fk, convention)
        term = build_Srt(r, s - 1, convention) * inner * L_factor(r, s, t - 1)
        out = out + (term if (t - s) % 2 == 0 else -term)
    return out


@lru_cache(maxsize=None)
def build_Gmj(m: int, j: int, convention: str = LEFT) -> UWord:
    _check_pair(m, j, "G_mj")
    if m == j:
        return UWord.identity()
    fk = F(m) * K(m)
    out = fk * build_Fmj(m + 1, j, convention)
    for s in range(m + 2, j + 1):
        inner = ad_chain([F(i) for i in range(s - 1, m, -1)], fk, convention)
        coef = (-s_power(2)) ** (s - m - 1)
        out = out + (inner * build_Fmj(s, j, convention) * K_minus(j, m + 1, s - 1)).scale(coef)
    return out


# ---------------------------------------------------------------------------
# off-diagonal blocks


def pq_entry(sign: str, n: int, row: int, col: int, convention: str = LEFT) -> UWord:
    """Entry ``(row, col)`` of the spanning array of p^+ (``sign='+'``) or p^-.

    For p^+ the entry is ``(-1)^{col-1} ad_{E_{n+col-1}}...ad_{E_{n+1}} ad_{E_row}...ad_{E_{n-1}} E_n``;
    for p^- it is ``(-1)^{n-col} ad_{F_{n+row-1}}...ad_{F_{n+1}} ad_{F_col}...ad_{F_{n-1}} (K_n F_n)``.
    """
    if not (1 <= row <= n and 1 <= col <= n):
        raise ValueError("entry index out of range")
    if sign == "+":
        chain = [E(n + c) for c in range(col - 1, 0, -1)] + [E(i) for i in range(row, n)]
        out = ad_chain(chain, E(n), convention)
        return out if (col - 1) % 2 == 0 else -out
    if sign == "-":
        chain = [F(n + r) for r in range(row - 1, 0, -1)] + [F(i) for i in range(col, n)]
        out = ad_chain(chain, K(n) * F(n), convention)
        return out if (n - col) % 2 == 0 else -out
    raise ValueError("sign must be '+' or '-'")


def pq_basis(sign: str, n: int, convention: str = LEFT) -> list[list[UWord]]:
    return [[pq_entry(sign, n, r, c, convention) for c in range(1, n + 1)] for r in range(1, n + 1)]


def kminus_eigenvalue(kind: str, j: int, p: int, r: int, k, shift: int = 0) -> ScalarExpr:
    """Eigenvalue of a K-bracket factor on ``v^h_k``; ``kind`` is one of
    ``K``, ``K-``, ``L``, ``L-``."""
    from .isotypic import signature_weight

    return factor_eigenvalue(kind, j, p, r, signature_weight(tuple(k), shift))


# ---------------------------------------------------------------------------
# operator-level lemma checks


@dataclass
class LemmaResult:
    lemma: str
    item: str
    indices: tuple
    status: bool
    form: str = "as stated"

    def as_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "item": self.item,
            "indices": list(self.indices),
            "status": "pass" if self.status else "fail",
            "form": self.form,
        }


class _Checker:
    def __init__(self, n: int, window):
        from .action import untwisted

        self.n = n
        self.ctx = untwisted(n)
        self.window = list(window)
        self._kernels: dict = {}

    def vanishes(self, w: UWord, vecs=None) -> bool:
        vecs = self.window if vecs is None else vecs
        return all(self.ctx.act_word(w, x).is_zero() for x in vecs)

    def kernel_of_E(self, i: int) -> list:
        """Kernel of ``E_i`` inside the window, one weight space at a time."""
        hit = self._kernels.get(i)
        if hit is None:
            hit = kernel_in_window(self.ctx, "E", i, self.window)
            self._kernels[i] = hit
        return hit

    def q_commutes(self, a: UWord, b: UWord, power: int, vecs=None) -> bool:
        """``a b = q^power b a`` on the given vectors."""
        return self.vanishes(a * b - (b * a).scale(s_power(2 * power)), vecs)


def kernel_in_window(ctx, kind: str, i: int, window) -> list:
    from .linalg import vector_kernel

    groups: dict = {}
    for x in window:
        m = next(iter(x.poly.terms))
        groups.setdefault((x.d, ctx.mono_weight(m, x.d)), []).append(x)
    out = []
    for vecs in groups.values():
        for kv in vector_kernel([[ctx.act_gen(kind, i, x) for x in vecs]], len(vecs)):
            v = None
            for x, c in zip(vecs, kv):
                if not c.is_zero():
                    v = x.scale(c) if v is None else v + x.scale(c)
            out.append(v)
    return out


def _pairing(i: int, lo: int, hi: int) -> int:
    """``<alpha_i, alpha_lo + ... + alpha_hi>`` for the A-type Cartan matrix."""
    return sum(2 if i == a else (-1 if abs(i - a) == 1 else 0) for a in range(lo, hi + 1))


def check_l1(n: int, window) -> list[LemmaResult]:
    """The commutation relations of ``F_mj`` with ``K_i`` and ``E_i``."""
    chk = _Checker(n, window)
    out = []
    for m in range(1, n):
        for j in range(m + 1, n + 1):
            Fw = build_Fmj(m, j)
            idx = (m, j)
            for i in list(range(1, m - 1)) + list(range(j + 1, n + 1)):
                out.append(LemmaResult("l_1", "1", idx + (i,), chk.q_commutes(K(i), Fw, 0)))
            out.append(LemmaResult("l_1", "2", idx + (j,), chk.q_commutes(K(j), Fw, 1)))
            if m > 1:
                out.append(LemmaResult("l_1", "2", idx + (m - 1,), chk.q_commutes(K(m - 1), Fw, 1)))
            for i in sorted({j - 1, m}):
                # each K_i meets both ends when m = j-1
                power = -_pairing(i, m, j - 1)
                form = "as stated" if power == -1 else "exponent from the weight of F_mj"
                out.append(LemmaResult("l_1", "3", idx + (i,), chk.q_commutes(K(i), Fw, power), form))
            for i in list(range(1, m - 1)) + list(range(j + 1, n + 1)):
                out.append(LemmaResult("l_1", "4", idx + (i,), chk.q_commutes(E(i), Fw, 0)))
            if m > 1:
                out.append(LemmaResult("l_1", "5", idx + (m - 1,), chk.q_commutes(E(m - 1), Fw, 1)))
            if j - m == 1:
                out.append(LemmaResult("l_1", "5", idx + (j,), chk.q_commutes(E(j), Fw, 1)))
            else:
                ok = chk.q_commutes(E(j), Fw, 1, chk.kernel_of_E(j))
                out.append(LemmaResult("l_1", "5", idx + (j,), ok, "modulo U*E_j"))
            for i in range(m + 1, j):
                ok = chk.vanishes(E(i) * Fw, chk.kernel_of_E(i))
                out.append(LemmaResult("l_1", "6", idx + (i,), ok, "modulo U*E_i"))
            power = j - m if j - m > 1 else 0
            rhs = build_Fmj(m + 1, j) * UWord({k_product(m, j - 1): s_power(2 * power)}) * cartan_qbracket(m, j - 1, j - m - 1)
            form = "modulo U*E_m" if j - m > 1 else "modulo U*E_m, q-power 1 for j = m+1"
            out.append(LemmaResult("l_1", "7", idx, chk.vanishes(E(m) * Fw - rhs, chk.kernel_of_E(m)), form))
    return out


def check_l2(n: int, window) -> list[LemmaResult]:
    """The mirror relations for ``S_rt``, with items 2-3 read as
    commutations of ``K`` through ``S_rt``."""
    chk = _Checker(n, window)
    out = []
    top = 2 * n - 1
    for r in range(1, n):
        for t in range(r + 1, n + 1):
            Sw = build_Srt(r, t)
            idx = (r, t)
            for i in list(range(1, r)) + list(range(t + 2, top + 1)):
                out.append(LemmaResult("l_2", "1", idx + (i,), chk.q_commutes(K(i), Sw, 0)))
            for i in (r, t + 1):
                out.append(LemmaResult("l_2", "2", idx + (i,), chk.q_commutes(K(i), Sw, 1), "K_i S = q S K_i"))
            for i in sorted({r + 1, t}):
                power = -_pairing(i, r + 1, t)
                out.append(LemmaResult("l_2", "3", idx + (i,), chk.q_commutes(K(i), Sw, power), f"K_i S = q^{power} S K_i"))
            for i in list(range(1, r)) + list(range(t + 2, top + 1)):
                out.append(LemmaResult("l_2", "4", idx + (i,), chk.q_commutes(E(i), Sw, 0)))
            out.append(LemmaResult("l_2", "5", idx + (t + 1,), chk.q_commutes(E(t + 1), Sw, 1)))
            if t - r == 1:
                out.append(LemmaResult("l_2", "5", idx + (r,), chk.q_commutes(E(r), Sw, 1)))
            else:
                ok = chk.q_commutes(E(r), Sw, 1, chk.kernel_of_E(r))
                out.append(LemmaResult("l_2", "5", idx + (r,), ok, "modulo U*E_r"))
            for i in range(r + 1, t):
                ok = chk.vanishes(E(i) * Sw, chk.kernel_of_E(i))
                out.append(LemmaResult("l_2", "6", idx + (i,), ok, "modulo U*E_i"))
            power = t - r if t - r > 1 else 0
            rhs = build_Srt(r, t - 1) * UWord({k_product(r + 1, t): s_power(2 * power)}) * cartan_qbracket(r + 1, t, t - r - 1)
            out.append(
                LemmaResult("l_2", "7", idx, chk.vanishes(E(t) * Sw - rhs, chk.kernel_of_E(t)), "modulo U*E_t, positive sign")
            )
    return out


def check_G(n: int, window) -> list[LemmaResult]:
    chk = _Checker(n, window)
    out = []
    for m in range(1, n):
        for j in range(m + 1, n + 1):
            w = build_Fmj(m, j) - build_Gmj(m, j).scale(s_power(2 * (j - m - 1)))
            out.append(LemmaResult("G", "F_mj = q^{j-m-1} G_mj", (m, j), chk.vanishes(w)))
    return out


def fg_target(k, m: int, j: int):
    """``z^{wedge j-1}_{[j] minus m} * v^h_k / z^{wedge j-1}`` with the minor on the left."""
    from .qmatrix import LocalizedVector, _det_power, algebra, q_minor

    n = len(k)
    A = algebra(n)
    poly = q_minor(n, tuple(x for x in range(1, j + 1) if x != m), tuple(range(1, j)))
    for i in range(1, n):
        e = k[i - 1] - k[i] - (1 if i == j - 1 else 0)
        if e:
            poly = poly * A.leading_minor(i) ** e
    if k[-1] >= 0:
        return LocalizedVector(poly * _det_power(n, k[-1]), 0)
    return LocalizedVector(poly, -k[-1])


def fg_signatures(n: int, kmax: int = 2) -> list[tuple]:
    from itertools import product as iproduct

    return [k for k in iproduct(range(kmax, -1, -1), repeat=n) if all(k[i] >= k[i + 1] for i in range(n - 1))]


def check_FG(n: int, kmax: int = 2) -> list[LemmaResult]:
    """``G_mj(v^h_k) = q^{(j-m)/2} kappa M v^h_k / z^{wedge j-1}`` where
    ``kappa`` is the eigenvalue of ``K_-(j, m, j-1)`` on ``v^h_k`` and
    ``M`` is the minor with rows ``[j] minus m`` and columns ``[j-1]``."""
    from .action import untwisted
    from .isotypic import vh_vector

    ctx = untwisted(n)
    out = []
    for m in range(1, n):
        for j in range(m + 1, n + 1):
            G = build_Gmj(m, j)
            for k in fg_signatures(n, kmax):
                lhs = ctx.act_word(G, vh_vector(k))
                if k[j - 2] == k[j - 1]:
                    out.append(LemmaResult("FG", "vanishes when k_{j-1} = k_j", (m, j) + k, lhs.is_zero()))
                    continue
                coef = s_power(j - m) * kminus_eigenvalue("K-", j, m, j - 1, k)
                rhs = fg_target(k, m, j).scale(coef)
                out.append(LemmaResult("FG", "G_mj(v^h)", (m, j) + k, (lhs - rhs).is_zero(), "minor on the left"))
    return out


def lmin_terms(n: int, m: int, k: int, j: int):
    """Both sides of ``M_{[j]-m} z^{wedge k} = sum_{s=k+1}^{j} (-q)^{s-k-1} D_s M_{[j]-s}``
    where ``M_X`` has rows ``X`` and columns ``[j-1]`` and ``D_s`` has rows
    ``([k] - m) + s`` and columns ``[k]``."""
    from .qmatrix import algebra, q_minor

    A = algebra(n)
    cols_j = tuple(range(1, j))

    def M(s):
        return q_minor(n, tuple(x for x in range(1, j + 1) if x != s), cols_j)

    def D(s):
        return q_minor(n, tuple(sorted((set(range(1, k + 1)) - {m}) | {s})), tuple(range(1, k + 1)))

    lhs = M(m) * A.leading_minor(k)
    rhs = A.const(ZERO)
    for s in range(k + 1, j + 1):
        rhs = rhs + (D(s) * M(s)).scale((-s_power(2)) ** (s - k - 1))
    return lhs, rhs


def lmin_literal(n: int, m: int, k: int, j: int):
    """The identity read with ``z^{wedge k}_{[s] - m}`` taken literally; it is
    only well-formed when the row sets have ``k`` elements."""
    from .qmatrix import algebra, q_minor

    A = algebra(n)

    def Z(size, rows):
        rows = tuple(rows)
        if len(rows) != size:
            raise ValueError(f"a {size}-minor cannot have rows {rows}")
        return q_minor(n, rows, tuple(range(1, size + 1)))

    lhs = (A.leading_minor(j - 1) * Z(k, [x for x in range(1, j + 1) if x != m])).scale((-s_power(2)) ** (j - k - 1))
    for s in range(k + 1, j - 1):
        lhs = lhs - (Z(j - 1, [x for x in range(1, j + 1) if x != s]) * Z(k, [x for x in range(1, s + 1) if x != m])).scale(
            (-s_power(2)) ** (s - k - 1)
        )
    rhs = Z(j - 1, [x for x in range(1, j + 1) if x != m]) * A.leading_minor(k)
    return lhs, rhs


def check_lmin(n: int) -> list[LemmaResult]:
    out = []
    for j in range(3, n + 1):
        for k in range(1, j - 1):
            for m in range(1, k + 1):
                lhs, rhs = lmin_terms(n, m, k, j)
                out.append(LemmaResult("l_min", "minor exchange", (m, k, j), lhs == rhs, "reconstructed"))
    return out


def lemma_check(lemma: str, n: int, window=None) -> list[LemmaResult]:
    from .action import window_basis

    if window is None:
        window = window_basis(n)
    if lemma == "l_1":
        return check_l1(n, window)
    if lemma == "l_2":
        return check_l2(n, window)
    if lemma == "G":
        return check_G(n, window)
    if lemma == "FG":
        return check_FG(n)
    if lemma == "l_min":
        return check_lmin(n)
    raise ValueError(f"unknown lemma {lemma!r}")


LEMMAS = ("l_1", "l_2", "G", "FG", "l_min")
