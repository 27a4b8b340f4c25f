"""
Decomposition of the localized space under U_q k, the subalgebra generated by
``E_i, F_i, K_i^{+-1}`` with ``i != n``.

The graded piece of grade ``j`` with denominator ``det^k`` consists of degree
``n*k + j`` polynomials divided by ``det^k``.  It splits into pairwise
non-isomorphic simple components ``V_k`` labelled by signatures
``k_1 >= ... >= k_n`` with ``sum k_i = j`` and ``k_n >= -k``; each is generated
by the highest vector

    v^h_k = (z^{wedge 1})^{k_1-k_2} ... (z^{wedge n-1})^{k_{n-1}-k_n} (z^{wedge n})^{k_n}

whose untwisted weight is ``(k_1-k_2, ..., k_{n-1}-k_n, 2k_n, k_{n-1}-k_n, ..., k_1-k_2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Sequence

from .action import RepContext, untwisted
from .linalg import CoordSystem, coords_in_span, span_basis, vector_kernel
from .qmatrix import LocalizedVector, QPolynomial, algebra, _det_power
from .scalars import ONE, ZERO


class InvalidSignature(ValueError):
    pass


class SpanMismatch(RuntimeError):
    """The components found do not fill the graded piece."""


def is_dominant(k: Sequence[int]) -> bool:
    return all(k[i] >= k[i + 1] for i in range(len(k) - 1))


def weyl_dimension(k: Sequence[int]) -> int:
    """Dimension of the simple sl_n module with highest weight given by a signature."""
    n = len(k)
    num = prod(k[i] - k[j] + j - i for i in range(n) for j in range(i + 1, n))
    den = prod(j - i for i in range(n) for j in range(i + 1, n))
    return num // den


def signatures(n: int, grade: int, det_power: int) -> list[tuple]:
    """Dominant signatures with ``sum k = grade`` and ``k_n >= -det_power``."""
    out = []
    lo = -det_power
    hi = grade + (n - 1) * det_power

    def rec(prefix, remaining, slots):
        if slots == 0:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        top = prefix[-1] if prefix else hi
        for v in range(top, lo - 1, -1):
            # remaining slots must be able to reach the sum using values in [lo, v]
            rest = remaining - v
            if rest > v * (slots - 1) or rest < lo * (slots - 1):
                continue
            rec(prefix + [v], rest, slots - 1)

    rec([], grade, n)
    return sorted(out, reverse=True)


def signature_weight(k: Sequence[int], shift: int = 0) -> tuple:
    """Weight of ``v^h_k``; ``shift`` is ``alpha - beta`` for the twisted action."""
    n = len(k)
    diffs = [k[i] - k[i + 1] for i in range(n - 1)]
    return tuple(diffs + [2 * k[-1] + shift] + diffs[::-1])


def vh_vector(k: Sequence[int]) -> LocalizedVector:
    k = tuple(k)
    if not is_dominant(k):
        raise InvalidSignature(f"{k} is not a dominant signature")
    n = len(k)
    A = algebra(n)
    poly = A.const()
    for i in range(1, n):
        e = k[i - 1] - k[i]
        if e:
            poly = poly * A.leading_minor(i) ** e
    if k[-1] >= 0:
        if k[-1]:
            poly = poly * _det_power(n, k[-1])
        return LocalizedVector(poly, 0)
    return LocalizedVector(poly, -k[-1])


def piece_basis(n: int, grade: int, det_power: int) -> list[LocalizedVector]:
    A = algebra(n)
    deg = n * det_power + grade
    if deg < 0:
        return []
    return [LocalizedVector(QPolynomial(A, {m: ONE}), det_power) for m in A.monomials_of_degree(deg)]


def compact_indices(n: int) -> list[int]:
    return [i for i in range(1, 2 * n) if i != n]


def _cartan(i: int, j: int) -> int:
    return 2 if i == j else (-1 if abs(i - j) == 1 else 0)


def root(n: int, i: int) -> tuple:
    return tuple(_cartan(a, i) for a in range(1, 2 * n))


def root_coefficients(n: int, diff: Sequence[int]) -> dict | None:
    """Express a weight difference as ``sum c_i alpha_i`` over compact roots;
    ``None`` if impossible or not integral."""
    coeffs = {}
    for block in (range(1, n), range(n + 1, 2 * n)):
        idx = list(block)
        if not idx:
            continue
        # solve the A_{n-1} Cartan system on the block slots
        M = [[Fraction(_cartan(a, b)) for b in idx] + [Fraction(diff[a - 1])] for a in idx]
        size = len(idx)
        for c in range(size):
            p = next(r for r in range(c, size) if M[r][c] != 0)
            M[c], M[p] = M[p], M[c]
            M[c] = [x / M[c][c] for x in M[c]]
            for r in range(size):
                if r != c and M[r][c] != 0:
                    f = M[r][c]
                    M[r] = [x - f * y for x, y in zip(M[r], M[c])]
        for r, a in enumerate(idx):
            coeffs[a] = M[r][size]
    if any(c.denominator != 1 for c in coeffs.values()):
        return None
    # slot n only sees alpha_{n-1} and alpha_{n+1}
    slot_n = -coeffs.get(n - 1, 0) - coeffs.get(n + 1, 0)
    if slot_n != diff[n - 1]:
        return None
    return {a: int(c) for a, c in coeffs.items()}


def below(n: int, top: Sequence[int], mu: Sequence[int]) -> bool:
    """``mu`` lies in ``top - (nonnegative span of compact roots)``."""
    c = root_coefficients(n, [a - b for a, b in zip(top, mu)])
    return c is not None and all(v >= 0 for v in c.values())


def split_by_weight(ctx: RepContext, x: LocalizedVector) -> dict:
    parts: dict = {}
    for m, c in x.poly.terms.items():
        w = ctx.mono_weight(m, x.d)
        parts.setdefault(w, {})[m] = c
    return {w: LocalizedVector(QPolynomial(x.alg, t), x.d) for w, t in parts.items()}


@dataclass
class IsotypicComponent:
    signature: tuple
    basis: list
    highest_index: int = 0

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def highest_vector(self) -> LocalizedVector:
        return self.basis[self.highest_index]

    def highest_weight(self, shift: int = 0) -> tuple:
        return signature_weight(self.signature, shift)


# ---------------------------------------------------------------------------
# weight-space bases of components


class ComponentSpaces:
    """Lazily computed weight-space bases of ``V_k`` for a fixed signature,
    generated from ``v^h_k`` by the compact lowering operators."""

    def __init__(self, k: Sequence[int]):
        self.k = tuple(k)
        self.n = len(k)
        self.ctx = untwisted(self.n)
        self.top = signature_weight(self.k)
        self.vh = vh_vector(self.k)
        self._spaces: dict = {self.top: [self.vh]}

    def weight_basis(self, mu: Sequence[int]) -> list[LocalizedVector]:
        mu = tuple(mu)
        hit = self._spaces.get(mu)
        if hit is not None:
            return hit
        if not below(self.n, self.top, mu):
            self._spaces[mu] = []
            return []
        images = []
        for i in compact_indices(self.n):
            nu = tuple(a + b for a, b in zip(mu, root(self.n, i)))
            if not below(self.n, self.top, nu):
                continue
            for v in self.weight_basis(nu):
                y = self.ctx.act_gen("F", i, v)
                if not y.is_zero():
                    images.append(y)
        basis = span_basis(images)
        self._spaces[mu] = basis
        return basis

    def full_basis(self) -> list[LocalizedVector]:
        """All weight spaces, in BFS order from the highest weight."""
        out = []
        seen = {self.top}
        layer = [self.top]
        while layer:
            nxt = []
            for mu in layer:
                out.extend(self.weight_basis(mu))
                for i in compact_indices(self.n):
                    nu = tuple(a - b for a, b in zip(mu, root(self.n, i)))
                    if nu not in seen and self.weight_basis(nu):
                        seen.add(nu)
                        nxt.append(nu)
            layer = nxt
        return out


@lru_cache(maxsize=None)
def component_spaces(k: tuple) -> ComponentSpaces:
    return ComponentSpaces(k)


def component_basis(k: Sequence[int]) -> list[LocalizedVector]:
    return component_spaces(tuple(k)).full_basis()


# ---------------------------------------------------------------------------
# decomposition


def highest_vectors(n: int, grade: int, det_power: int) -> list[tuple]:
    """Joint kernel of the compact raising operators on the graded piece, one
    weight space at a time.  Returns ``(weight, vectors)`` pairs."""
    ctx = untwisted(n)
    by_weight: dict = {}
    for x in piece_basis(n, grade, det_power):
        m = next(iter(x.poly.terms))
        by_weight.setdefault(ctx.mono_weight(m, det_power), []).append(x)
    out = []
    for w, vecs in sorted(by_weight.items(), reverse=True):
        if any(w[i - 1] < 0 for i in compact_indices(n)):
            continue
        images = [[ctx.act_gen("E", i, x) for x in vecs] for i in compact_indices(n)]
        ker = vector_kernel(images, len(vecs))
        if ker:
            cs = CoordSystem(vecs, det_power)
            found = []
            for kv in ker:
                coords = [ZERO] * len(cs.monomials)
                for x, c in zip(vecs, kv):
                    coords[cs.index[next(iter(x.poly.terms))]] = c
                found.append(cs.vector(coords))
            out.append((w, found))
    return out


def signature_from_weight(n: int, grade: int, w: Sequence[int]) -> tuple:
    diffs = list(w[: n - 1])
    rest = grade - sum((i + 1) * d for i, d in enumerate(diffs))
    if rest % n:
        raise SpanMismatch(f"weight {w} does not come from a signature of grade {grade}")
    kn = rest // n
    k = [kn]
    for d in reversed(diffs):
        k.insert(0, k[0] + d)
    return tuple(k)


def decompose(n: int, grade: int, det_power: int) -> list[IsotypicComponent]:
    """Isotypic components of the graded piece, found from highest vectors
    (kernel of the compact raising operators) and closed under lowering."""
    comps = []
    total = 0
    for w, vecs in highest_vectors(n, grade, det_power):
        if len(vecs) != 1:
            raise SpanMismatch(f"highest-weight space {w} has dimension {len(vecs)}")
        k = signature_from_weight(n, grade, w)
        if signature_weight(k) != tuple(w):
            raise SpanMismatch(f"weight {w} is not the weight of a highest vector")
        basis = component_basis(k)
        comps.append(IsotypicComponent(k, basis, 0))
        total += len(basis)
    expected = len(piece_basis(n, grade, det_power))
    if total != expected:
        raise SpanMismatch(f"components fill {total} of {expected} dimensions")
    return comps


# ---------------------------------------------------------------------------
# projection


def project(x: LocalizedVector, target: Sequence[int]) -> LocalizedVector:
    """Component of ``x`` in ``V_target`` along the isotypic decomposition.

    Works one weight space at a time: the weight space of the piece containing
    ``x`` is the direct sum of the weight spaces of its components.
    """
    target = tuple(target)
    n = x.n
    A = x.alg
    zero = LocalizedVector(QPolynomial(A), x.d)
    if x.is_zero():
        return zero
    ctx = untwisted(n)
    out = zero
    for grade in sorted(x.grade()):
        xg = LocalizedVector(
            QPolynomial(A, {m: c for m, c in x.poly.terms.items() if A.degree(m) - n * x.d == grade}), x.d
        )
        sigs = signatures(n, grade, x.d)
        for mu, part in split_by_weight(ctx, xg).items():
            basis, owner = [], []
            for k in sigs:
                for b in component_spaces(k).weight_basis(mu):
                    basis.append(b)
                    owner.append(k)
            if target not in owner:
                continue
            cs = CoordSystem(basis + [part], x.d)
            coef = coords_in_span(cs.coords(part), [cs.coords(b) for b in basis])
            if coef is None:
                raise SpanMismatch("vector lies outside the decomposed weight space")
            for b, k, c in zip(basis, owner, coef):
                if k == target and not c.is_zero():
                    out = out + b.scale(c)
    return out


def component_coordinates(x: LocalizedVector) -> dict:
    """Split ``x`` into its isotypic parts: ``signature -> vector``."""
    n = x.n
    ctx = untwisted(n)
    A = x.alg
    parts: dict = {}
    for grade in sorted(x.grade()):
        xg = LocalizedVector(
            QPolynomial(A, {m: c for m, c in x.poly.terms.items() if A.degree(m) - n * x.d == grade}), x.d
        )
        sigs = signatures(n, grade, x.d)
        for mu, part in split_by_weight(ctx, xg).items():
            basis, owner = [], []
            for k in sigs:
                for b in component_spaces(k).weight_basis(mu):
                    basis.append(b)
                    owner.append(k)
            cs = CoordSystem(basis + [part], x.d)
            coef = coords_in_span(cs.coords(part), [cs.coords(b) for b in basis])
            if coef is None:
                raise SpanMismatch("vector lies outside the decomposed weight space")
            for b, k, c in zip(basis, owner, coef):
                if not c.is_zero():
                    parts[k] = parts.get(k, LocalizedVector(QPolynomial(A), x.d)) + b.scale(c)
    return parts
