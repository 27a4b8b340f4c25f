"""
The module-algebra action of U_q sl_{2n} on the localized quantum matrix space
and the twisted representation ``pi_{alpha,beta}``.

Generator table (``z = z_a^b``; indices ``k != n`` act on the lower index for
``k < n`` and on the upper index for ``k > n``)::

    K_n z      = q^{[a=n] + [b=n]} z
    F_n z      = q^{1/2} [a = b = n]
    E_n z      = -q^{1/2} * ( q^{-1} z_a^n z_n^b   if a != n and b != n
                              (z_n^n)^2           if a = b = n
                              z_n^n z_a^b         otherwise )
    K_k z      = q^{+1} if (k<n, a=k) or (k>n, b=2n-k)
                 q^{-1} if (k<n, a=k+1) or (k>n, b=2n-k+1)
    F_k z      = q^{1/2} z_{a+1}^b  (k<n, a=k),   q^{1/2} z_a^{b+1}  (k>n, b=2n-k)
    E_k z      = q^{-1/2} z_{a-1}^b (k<n, a=k+1), q^{-1/2} z_a^{b-1} (k>n, b=2n-k+1)

Products follow ``E(fg) = E(f)g + K(f)E(g)``, ``F(fg) = F(f)K^{-1}(g) + fF(g)``.
On ``det^{-d}``::

    K_n det^{-d} = q^{-2d} det^{-d}
    E_n det^{-d} = -q^{1/2} (1 - q^{-2d}) / (1 - q^2) z_n^n det^{-d}
    F_n det^{-d} =  q^{1/2} (1 - q^{2d}) / (1 - q^{-2}) minor_{n-1} det^{-d-1}

The twisted representation comes from conjugating by the formal factor
``det^alpha t^{alpha+beta}`` and expanding through the coproduct.  With
``A = q^alpha``, ``B = q^beta`` it reduces to

    pi(K_n) x = (A/B) K_n(x)
    pi(E_n) x = E_n(x) + c_E K_n(x) z_n^n,     c_E = -q^{1/2}(1 - B^{-2})/(1 - q^2)
    pi(F_n) x = (B/A) F_n(x) + c_F x minor_{n-1} det^{-1},
                                               c_F = A B q^{1/2}(1 - A^{-2})/(1 - q^{-2})

and ``pi(g) = g`` for every generator with index ``!= n``.  The untwisted
action is the case ``A = B = 1``.
"""

from __future__ import annotations

from functools import lru_cache

from .qmatrix import LocalizedVector, QPolynomial, _add_into, _det_power, algebra, q_minor
from .scalars import ONE, ZERO, ScalarExpr, Symbolic, TwistMode, s_power
from .uqsl import UWord

SQ = s_power(1)
SQINV = s_power(-1)
Q2 = s_power(4)


class NotAWeightVector(ValueError):
    pass


class RepContext:
    """An action of U_q sl_{2n} on the localized space.

    ``qa`` and ``qb`` are the values of ``q^alpha`` and ``q^beta``; ``shift`` is
    the integer ``alpha - beta`` used for weights (``None`` when unknown).
    Instances cache generator actions on monomials; the caches hold pure
    results only.
    """

    def __init__(self, n: int, qa: ScalarExpr = ONE, qb: ScalarExpr = ONE, shift: int | None = 0, label: str = ""):
        self.n = n
        self.qa = qa
        self.qb = qb
        self.shift = shift
        self.label = label
        self.alg = algebra(n)
        self.twisted = not (qa == ONE and qb == ONE)
        self.k_ratio = qa / qb
        self.f_ratio = qb / qa
        # c_E, c_F from the coproduct expansion of the twist factor
        self.c_e = -SQ * (ONE - qb ** (-2)) / (ONE - Q2)
        self.c_f = qa * qb * SQ * (ONE - qa ** (-2)) / (ONE - s_power(-4))
        self._cache: dict = {}
        self._minor = q_minor(n, tuple(range(1, n)), tuple(range(1, n))) if n > 1 else self.alg.const()
        self._table = _generator_table(n)

    def __repr__(self):
        return f"RepContext(n={self.n}, {self.label or ('twisted' if self.twisted else 'untwisted')})"

    # -- weights ------------------------------------------------------
    def mono_weight(self, mono, d: int) -> tuple:
        n = self.n
        lam = [0] * (2 * n - 1)
        table = self._table
        for g, e in enumerate(mono):
            if e:
                for i in range(2 * n - 1):
                    lam[i] += e * table["K"][i][g]
        lam[n - 1] -= 2 * d
        if self.twisted:
            if self.shift is None:
                raise NotAWeightVector("weights need an integral alpha - beta")
            lam[n - 1] += self.shift
        return tuple(lam)

    # -- generator action on one monomial ----------------------------
    def act_mono(self, kind: str, i: int, mono, d: int):
        """Image of ``mono * det^{-d}``: returns ``(terms, det_power)``."""
        key = (kind, i, mono, d)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        result = self._compute(kind, i, mono, d)
        self._cache[key] = result
        return result

    def _k_exp(self, i: int, mono, d: int) -> int:
        col = self._table["K"][i - 1]
        e = sum(col[g] * m for g, m in enumerate(mono) if m)
        if i == self.n:
            e -= 2 * d
        return e

    def _compute(self, kind, i, mono, d):
        A = self.alg
        n = self.n
        if kind in ("K", "Kinv"):
            e = self._k_exp(i, mono, d)
            c = s_power(2 * e)
            if i == n and self.twisted:
                c = c * self.k_ratio
            if kind == "Kinv":
                c = ONE / c
            return {mono: c}, d
        word = A.word(mono)
        table = self._table
        out: dict = {}
        if kind == "E":
            img = table["E"][i - 1]
            kcol = table["K"][i - 1]
            kpre = 0
            for p, g in enumerate(word):
                if img[g]:
                    pre = _mono_of(A, word[:p])
                    post = _mono_of(A, word[p + 1 :])
                    left = A.mul_terms({pre: s_power(2 * kpre)}, img[g])
                    for m, c in A.mul_terms(left, {post: ONE}).items():
                        _add_into(out, m, c)
                kpre += kcol[g]
            if i == n:
                # twist and det^{-d} contribute a multiple of K_n(mono) z_n^n
                coef = -SQ * (ONE - self.qb ** (-2) * s_power(-4 * d)) / (ONE - Q2)
                if not coef.is_zero():
                    kexp = sum(kcol[g] for g in word)
                    znn = A.gen_mono(n, n)
                    for m, c in A.mul_mono(mono, znn).items():
                        _add_into(out, m, coef * s_power(2 * kexp) * c)
            return out, d
        if kind == "F":
            img = table["F"][i - 1]
            kcol = table["K"][i - 1]
            ksuf = [0] * (len(word) + 1)
            for p in range(len(word) - 1, -1, -1):
                ksuf[p] = ksuf[p + 1] + kcol[word[p]]
            for p, g in enumerate(word):
                if img[g]:
                    pre = _mono_of(A, word[:p])
                    post = _mono_of(A, word[p + 1 :])
                    left = A.mul_terms({pre: ONE}, img[g])
                    for m, c in A.mul_terms(left, {post: s_power(-2 * ksuf[p + 1])}).items():
                        _add_into(out, m, c)
            if i != n:
                return out, d
            # F_n(p det^{-d}) = q^{2d} F_n(p) det^{-d} + f(d) p minor det^{-d-1}, then twist
            scale = s_power(4 * d)
            if self.twisted:
                scale = scale * self.f_ratio
            f_d = SQ * (ONE - s_power(4 * d)) / (ONE - s_power(-4))
            minor_coef = f_d * (self.f_ratio if self.twisted else ONE) + (self.c_f if self.twisted else ZERO)
            if minor_coef.is_zero():
                return {m: scale * c for m, c in out.items()}, d
            lifted: dict = {}
            if out:
                for m, c in A.mul_terms(out, _det_power(n, 1).terms).items():
                    _add_into(lifted, m, scale * c)
            for m, c in A.mul_terms({mono: minor_coef}, self._minor.terms).items():
                _add_into(lifted, m, c)
            return lifted, d + 1
        raise ValueError(f"unknown generator kind {kind!r}")

    # -- vectors ------------------------------------------------------
    def act_gen(self, kind: str, i: int, x: LocalizedVector) -> LocalizedVector:
        if not 1 <= i <= 2 * self.n - 1:
            raise ValueError(f"generator index {i} out of range")
        if x.is_zero():
            return x
        out: dict = {}
        outd = None
        pending = []
        for m, c in x.poly.terms.items():
            terms, d2 = self.act_mono(kind, i, m, x.d)
            pending.append((c, terms, d2))
        dmax = max(p[2] for p in pending)
        for c, terms, d2 in pending:
            if d2 < dmax:
                terms = self.alg.mul_terms(terms, _det_power(self.n, dmax - d2).terms)
            for m, c2 in terms.items():
                _add_into(out, m, c * c2)
        return LocalizedVector(QPolynomial(self.alg, out), dmax)

    def act_word(self, w: UWord, x: LocalizedVector) -> LocalizedVector:
        """``w(x)``; in each word the rightmost generator acts first."""
        total = None
        for word, c in w.terms.items():
            y = x
            for kind, i in reversed(word):
                y = self.act_gen(kind, i, y)
                if y.is_zero():
                    break
            y = y.scale(c)
            total = y if total is None else total + y
        if total is None:
            return LocalizedVector(QPolynomial(self.alg), x.d)
        return total

    def weight_of(self, x: LocalizedVector) -> tuple:
        weights = {self.mono_weight(m, x.d) for m in x.poly.terms}
        if len(weights) != 1:
            raise NotAWeightVector("vector is not a weight vector" if weights else "zero vector has no weight")
        return weights.pop()

    def k0_eigenvalue(self, x: LocalizedVector) -> int:
        """``j`` with ``K_0 x = q^{2j} x`` for the untwisted grading element
        ``K_0 = K_1 K_2^2 ... K_n^n ... K_{2n-1}``."""
        grades = x.grade()
        if len(grades) != 1:
            raise ValueError("vector is not homogeneous")
        n = self.n
        total = None
        for m in x.poly.terms:
            lam = _untwisted_weight(self, m, x.d)
            val = sum(min(i, 2 * n - i) * lam[i - 1] for i in range(1, 2 * n))
            if total is not None and val != total:
                raise ValueError("vector is not homogeneous")
            total = val
        if total is None:
            raise ValueError("zero vector")
        return total // 2


def _untwisted_weight(ctx: RepContext, mono, d):
    lam = [0] * (2 * ctx.n - 1)
    for g, e in enumerate(mono):
        if e:
            for i in range(2 * ctx.n - 1):
                lam[i] += e * ctx._table["K"][i][g]
    lam[ctx.n - 1] -= 2 * d
    return lam


def _mono_of(A, gens) -> tuple:
    e = [0] * A.ngen
    for g in gens:
        e[g] += 1
    return tuple(e)


@lru_cache(maxsize=None)
def _generator_table(n: int) -> dict:
    """Per-generator data: K exponents and E/F images as term dicts."""
    A = algebra(n)
    N = 2 * n - 1
    K = [[0] * A.ngen for _ in range(N)]
    Eimg = [[None] * A.ngen for _ in range(N)]
    Fimg = [[None] * A.ngen for _ in range(N)]
    for g in range(A.ngen):
        a, b = A.rowcol(g)
        for k in range(1, N + 1):
            if k == n:
                K[k - 1][g] = (a == n) + (b == n)
                if a == n and b == n:
                    Fimg[k - 1][g] = {A.one(): SQ}
                if a != n and b != n:
                    prod = A.normalize_product([A.index(a, n), A.index(n, b)], []).terms
                    Eimg[k - 1][g] = {m: -SQINV * c for m, c in prod.items()}
                elif a == n and b == n:
                    prod = A.normalize_product([A.index(n, n), A.index(n, n)], []).terms
                    Eimg[k - 1][g] = {m: -SQ * c for m, c in prod.items()}
                else:
                    prod = A.normalize_product([A.index(n, n), g], []).terms
                    Eimg[k - 1][g] = {m: -SQ * c for m, c in prod.items()}
            elif k < n:
                if a == k:
                    K[k - 1][g] = 1
                    Fimg[k - 1][g] = {A.gen_mono(a + 1, b): SQ}
                elif a == k + 1:
                    K[k - 1][g] = -1
                    Eimg[k - 1][g] = {A.gen_mono(a - 1, b): SQINV}
            else:
                if b == 2 * n - k:
                    K[k - 1][g] = 1
                    Fimg[k - 1][g] = {A.gen_mono(a, b + 1): SQ}
                elif b == 2 * n - k + 1:
                    K[k - 1][g] = -1
                    Eimg[k - 1][g] = {A.gen_mono(a, b - 1): SQINV}
    return {"K": K, "E": Eimg, "F": Fimg}


# ---------------------------------------------------------------------------
# constructors


@lru_cache(maxsize=None)
def untwisted(n: int) -> RepContext:
    return RepContext(n, ONE, ONE, 0, label="untwisted")


@lru_cache(maxsize=None)
def twisted(n: int, mode: TwistMode) -> RepContext:
    qa, qb = mode.values()
    shift = mode.d if isinstance(mode, Symbolic) else _concrete_shift(mode)
    return RepContext(n, qa, qb, shift, label=f"twisted {mode}")


def _concrete_shift(mode) -> int | None:
    diff = mode.alpha.re - mode.beta.re
    if diff.denominator == 1 and mode.alpha.im_units == mode.beta.im_units:
        return int(diff)
    return None


_CUSTOM: dict = {}


def custom(n: int, qa: ScalarExpr, qb: ScalarExpr, shift: int | None, label: str = "") -> RepContext:
    """A twisted context with explicit values of ``q^alpha`` and ``q^beta``
    (shared per argument tuple so caches are reused)."""
    key = (n, qa, qb, shift)
    ctx = _CUSTOM.get(key)
    if ctx is None:
        ctx = RepContext(n, qa, qb, shift, label=label or "custom")
        _CUSTOM[key] = ctx
    return ctx


def act_gen(ctx: RepContext, g, x: LocalizedVector) -> LocalizedVector:
    kind, i = g
    return ctx.act_gen(kind, i, x)


def act_word(ctx: RepContext, w: UWord, x: LocalizedVector) -> LocalizedVector:
    return ctx.act_word(w, x)


# ---------------------------------------------------------------------------
# windows


def window_basis(n: int, max_degree: int = 3, max_det: int = 1) -> list[LocalizedVector]:
    """Normal monomials of degree ``<= max_degree`` times ``det^{-d}``, ``d <= max_det``."""
    A = algebra(n)
    out = []
    for d in range(max_det + 1):
        for deg in range(max_degree + 1):
            for m in A.monomials_of_degree(deg):
                out.append(LocalizedVector(QPolynomial(A, {m: ONE}), d))
    return out


def check_relations(ctx: RepContext, window=None, relations=None) -> list[tuple[str, LocalizedVector]]:
    """``(relation, vector)`` pairs where a defining relation fails to act by zero."""
    from .uqsl import defining_relations

    window = window_basis(ctx.n) if window is None else window
    relations = defining_relations(ctx.n) if relations is None else relations
    bad = []
    for x in window:
        for name, w in relations:
            if not ctx.act_word(w, x).is_zero():
                bad.append((name, x))
    return bad
