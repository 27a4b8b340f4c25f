"""
Quantum matrix coordinate ring and its localization at the quantum determinant.

Generators ``z_a^b`` (``a`` is the lower index, ``b`` the upper one) are
numbered row-major, ``index = (a-1)*n + (b-1)``.  A normal monomial is an
exponent tuple of length ``n*n`` and stands for the ordered product of the
generators in increasing index.

For two generators ``x < y`` the product ``y*x`` is rewritten by

* same row or same column:        ``y x = q^{-1} x y``
* ``y`` strictly below-left of ``x``: ``y x = x y``
* ``y`` strictly below-right of ``x``:
  ``y x = x y - (q - q^{-1}) z_{a_x}^{b_y} z_{a_y}^{b_x}``

All products go through :meth:`QMatrixAlgebra.mul_mono_gen`, which is
memoized per algebra.  The cache only stores pure results.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache
from typing import Iterable, Mapping

from .scalars import ONE, ZERO, ScalarExpr, parse_scalar, s_power, scalar

Q = s_power(2)
QINV = s_power(-2)
QDIFF = Q - QINV

Monomial = tuple


def _add_into(acc: dict, mono, coef: ScalarExpr) -> None:
    old = acc.get(mono)
    if old is None:
        if not coef.is_zero():
            acc[mono] = coef
    else:
        new = old + coef
        if new.is_zero():
            del acc[mono]
        else:
            acc[mono] = new


class QMatrixAlgebra:
    """Normal-form arithmetic in the quantum matrix space of size ``n``."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.ngen = n * n
        self._gen_cache: dict = {}
        self._mono_cache: dict = {}
        self._one = (0,) * self.ngen

    # -- indexing ---------------------------------------------------------
    def index(self, a: int, b: int) -> int:
        if not (1 <= a <= self.n and 1 <= b <= self.n):
            raise ValueError(f"generator z[{a},{b}] out of range for n={self.n}")
        return (a - 1) * self.n + (b - 1)

    def rowcol(self, g: int) -> tuple[int, int]:
        return g // self.n + 1, g % self.n + 1

    def one(self) -> Monomial:
        return self._one

    def gen_mono(self, a: int, b: int) -> Monomial:
        e = [0] * self.ngen
        e[self.index(a, b)] = 1
        return tuple(e)

    def word(self, mono: Monomial) -> list[int]:
        """The generator sequence of a normal monomial."""
        out = []
        for g, e in enumerate(mono):
            out.extend([g] * e)
        return out

    def degree(self, mono: Monomial) -> int:
        return sum(mono)

    # -- products ---------------------------------------------------------
    def mul_mono_gen(self, mono: Monomial, g: int) -> dict:
        key = (mono, g)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        last = -1
        for k in range(self.ngen - 1, -1, -1):
            if mono[k]:
                last = k
                break
        if last <= g:
            e = list(mono)
            e[g] += 1
            result = {tuple(e): ONE}
        else:
            rest = list(mono)
            rest[last] -= 1
            rest = tuple(rest)
            ax, bx = self.rowcol(g)
            ay, by = self.rowcol(last)
            result: dict = {}
            head = self.mul_mono_gen(rest, g)
            if ax == ay or bx == by:
                for m, c in head.items():
                    for m2, c2 in self.mul_mono_gen(m, last).items():
                        _add_into(result, m2, QINV * c * c2)
            elif bx > by:
                for m, c in head.items():
                    for m2, c2 in self.mul_mono_gen(m, last).items():
                        _add_into(result, m2, c * c2)
            else:
                for m, c in head.items():
                    for m2, c2 in self.mul_mono_gen(m, last).items():
                        _add_into(result, m2, c * c2)
                left = self.mul_mono_gen(rest, self.index(ax, by))
                right_gen = self.index(ay, bx)
                for m, c in left.items():
                    for m2, c2 in self.mul_mono_gen(m, right_gen).items():
                        _add_into(result, m2, -QDIFF * c * c2)
        self._gen_cache[key] = result
        return result

    def mul_mono(self, m1: Monomial, m2: Monomial) -> dict:
        key = (m1, m2)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        current = {m1: ONE}
        for g in self.word(m2):
            nxt: dict = {}
            for m, c in current.items():
                for m3, c3 in self.mul_mono_gen(m, g).items():
                    _add_into(nxt, m3, c * c3)
            current = nxt
        self._mono_cache[key] = current
        return current

    def mul_terms(self, p1: Mapping, p2: Mapping) -> dict:
        out: dict = {}
        for m1, c1 in p1.items():
            for m2, c2 in p2.items():
                c12 = c1 * c2
                for m, c in self.mul_mono(m1, m2).items():
                    _add_into(out, m, c12 * c)
        return out

    def normalize_product(self, w1: Iterable[int], w2: Iterable[int]) -> "QPolynomial":
        """Normal form of the product of two generator words."""
        current = {self._one: ONE}
        for g in itertools.chain(w1, w2):
            nxt: dict = {}
            for m, c in current.items():
                for m3, c3 in self.mul_mono_gen(m, g).items():
                    _add_into(nxt, m3, c * c3)
            current = nxt
        return QPolynomial(self, current)

    # -- distinguished elements ------------------------------------------
    def z(self, a: int, b: int) -> "QPolynomial":
        return QPolynomial(self, {self.gen_mono(a, b): ONE})

    def const(self, c=ONE) -> "QPolynomial":
        c = scalar(c)
        return QPolynomial(self, {self._one: c} if not c.is_zero() else {})

    def q_minor(self, rows: Iterable[int], cols: Iterable[int]) -> "QPolynomial":
        return q_minor(self.n, tuple(rows), tuple(cols))

    def det(self) -> "QPolynomial":
        return q_minor(self.n, tuple(range(1, self.n + 1)), tuple(range(1, self.n + 1)))

    def det_power(self, k: int) -> "QPolynomial":
        return _det_power(self.n, k)

    def leading_minor(self, k: int) -> "QPolynomial":
        """``z^{wedge k}``: rows and columns ``1..k``."""
        idx = tuple(range(1, k + 1))
        return q_minor(self.n, idx, idx)

    def monomials_of_degree(self, j: int) -> list[Monomial]:
        """Normal monomials of total degree ``j`` in a fixed deterministic order."""
        out = []
        for combo in itertools.combinations_with_replacement(range(self.ngen), j):
            e = [0] * self.ngen
            for g in combo:
                e[g] += 1
            out.append(tuple(e))
        return out


@lru_cache(maxsize=None)
def algebra(n: int) -> QMatrixAlgebra:
    return QMatrixAlgebra(n)


def _perm_length(perm) -> int:
    return sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])


@lru_cache(maxsize=None)
def q_minor(n: int, rows: tuple, cols: tuple) -> "QPolynomial":
    """Alternating q-sum ``sum (-q)^{l(s)} z_{a_1}^{b_{s(1)}} ... z_{a_k}^{b_{s(k)}}``."""
    A = algebra(n)
    k = len(rows)
    if k != len(cols) or k == 0 or k > n:
        raise ValueError("rows and columns must be nonempty and of equal size <= n")
    for idx in (rows, cols):
        if any(x >= y for x, y in zip(idx, idx[1:])) or idx[0] < 1 or idx[-1] > n:
            raise ValueError(f"index set {idx} must be strictly increasing within 1..{n}")
    out: dict = {}
    for perm in itertools.permutations(range(k)):
        coef = (-Q) ** _perm_length(perm)
        gens = [A.index(rows[i], cols[perm[i]]) for i in range(k)]
        for m, c in A.normalize_product(gens, ()).terms.items():
            _add_into(out, m, coef * c)
    return QPolynomial(A, out)


@lru_cache(maxsize=None)
def _det_power(n: int, k: int) -> "QPolynomial":
    A = algebra(n)
    if k == 0:
        return A.const()
    return _det_power(n, k - 1) * A.det()


class QPolynomial:
    """A finite sum of normal monomials with scalar coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: QMatrixAlgebra, terms: Mapping | None = None):
        self.alg = alg
        self.terms = dict(terms) if terms else {}

    @property
    def n(self) -> int:
        return self.alg.n

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, QPolynomial):
            other = self.alg.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(out, m, c)
        return QPolynomial(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, QPolynomial):
            other = self.alg.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QPolynomial":
        c = scalar(c)
        if c.is_zero():
            return QPolynomial(self.alg)
        return QPolynomial(self.alg, {m: c * x for m, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, QPolynomial):
            return QPolynomial(self.alg, self.alg.mul_terms(self.terms, other.terms))
        if isinstance(other, LocalizedVector):
            return LocalizedVector(self, 0) * other
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = self.alg.const()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, LocalizedVector):
            return LocalizedVector(self, 0) == other
        if not isinstance(other, QPolynomial):
            other = self.alg.const(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degrees(self) -> set[int]:
        return {sum(m) for m in self.terms}

    def __str__(self):
        return format_terms(self.alg, self.terms)

    def __repr__(self):
        return f"QPolynomial({self})"


class LocalizedVector:
    """``poly * det^{-det_power}``, an element of the localized space."""

    __slots__ = ("poly", "d")

    def __init__(self, poly: QPolynomial, d: int = 0):
        if d < 0:
            poly = poly * _det_power(poly.n, -d)
            d = 0
        self.poly = poly
        self.d = d

    @classmethod
    def from_terms(cls, alg: QMatrixAlgebra, terms: Mapping, d: int = 0) -> "LocalizedVector":
        return cls(QPolynomial(alg, terms), d)

    @property
    def n(self) -> int:
        return self.poly.n

    @property
    def alg(self) -> QMatrixAlgebra:
        return self.poly.alg

    @property
    def det_power(self) -> int:
        return self.d

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def lift(self, d: int) -> "LocalizedVector":
        """Same vector written with denominator ``det^d`` (``d >= self.d``)."""
        if d < self.d:
            raise ValueError("cannot lower the det power without division")
        if d == self.d:
            return self
        return LocalizedVector(self.poly * _det_power(self.n, d - self.d), d)

    def __add__(self, other):
        if not isinstance(other, LocalizedVector):
            if isinstance(other, QPolynomial):
                other = LocalizedVector(other, 0)
            else:
                other = LocalizedVector(self.alg.const(other), 0)
        d = max(self.d, other.d)
        return LocalizedVector(self.lift(d).poly + other.lift(d).poly, d)

    __radd__ = __add__

    def __neg__(self):
        return LocalizedVector(-self.poly, self.d)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "LocalizedVector":
        return LocalizedVector(self.poly.scale(c), self.d)

    def __mul__(self, other):
        if isinstance(other, LocalizedVector):
            return LocalizedVector(self.poly * other.poly, self.d + other.d)
        if isinstance(other, QPolynomial):
            return LocalizedVector(self.poly * other, self.d)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, QPolynomial):
            return LocalizedVector(other * self.poly, self.d)
        return self.scale(other)

    def __eq__(self, other):
        return loc_equal(self, other)

    def __hash__(self):
        raise TypeError("LocalizedVector is not hashable")

    def grade(self) -> set[int]:
        return {deg - self.n * self.d for deg in self.poly.degrees()}

    def reduce(self) -> "LocalizedVector":
        """Divide by ``det`` as long as it divides exactly (display only)."""
        out = self
        while out.d > 0:
            quotient = divide_by_det(out.poly)
            if quotient is None:
                break
            out = LocalizedVector(quotient, out.d - 1)
        return out

    def __str__(self):
        body = str(self.poly)
        if self.d == 0:
            return body
        if len(self.poly.terms) > 1:
            body = f"({body})"
        return f"{body}*det^-{self.d}"

    def __repr__(self):
        return f"LocalizedVector({self})"


def loc_equal(x, y) -> bool:
    if isinstance(x, QPolynomial):
        x = LocalizedVector(x, 0)
    if isinstance(y, QPolynomial):
        y = LocalizedVector(y, 0)
    if not isinstance(x, LocalizedVector) or not isinstance(y, LocalizedVector):
        return NotImplemented
    d = max(x.d, y.d)
    return x.lift(d).poly.terms == y.lift(d).poly.terms


def divide_by_det(p: QPolynomial) -> QPolynomial | None:
    """Exact quotient ``p / det`` or None.

    The determinant is central and its leading monomial (the diagonal) is the
    largest in the degree-lexicographic order on exponent vectors read from
    the right, so ordinary leading-term division works.
    """
    A = p.alg
    det = A.det()
    lead = max(det.terms, key=_division_key)
    lead_c = det.terms[lead]
    rem = dict(p.terms)
    quot: dict = {}
    while rem:
        m = max(rem, key=_division_key)
        diff = tuple(a - b for a, b in zip(m, lead))
        if min(diff) < 0:
            return None
        c = rem[m] / lead_c
        _add_into(quot, diff, c)
        prod_terms = A.mul_terms({diff: c}, det.terms)
        for m2, c2 in prod_terms.items():
            _add_into(rem, m2, -c2)
        if m in rem:
            return None
    return QPolynomial(A, quot)


def _division_key(m):
    return (sum(m), tuple(reversed(m)))


def format_terms(alg: QMatrixAlgebra, terms: Mapping) -> str:
    if not terms:
        return "0"
    pieces = []
    for mono in sorted(terms, key=lambda m: (sum(m), m)):
        c = terms[mono]
        factors = []
        for g, e in enumerate(mono):
            if e:
                a, b = alg.rowcol(g)
                factors.append(f"z[{a},{b}]" + (f"^{e}" if e > 1 else ""))
        mono_text = "*".join(factors)
        if c == ONE:
            sign, body = "+", mono_text or "1"
        elif c == -ONE:
            sign, body = "-", mono_text or "1"
        else:
            ctext = str(c)
            simple = re.fullmatch(r"-?[\w^*]+", ctext) is not None and "/" not in ctext
            if simple and ctext.startswith("-"):
                sign, ctext = "-", ctext[1:]
            else:
                sign = "+"
            if not simple:
                ctext = f"({ctext})"
            body = f"{ctext}*{mono_text}" if mono_text else ctext
        pieces.append((sign, body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# polynomial grammar


class PolyParseError(ValueError):
    pass


_POLY_TOKEN = re.compile(
    r"\s*(?:(?P<z>z\[\s*(?P<a>\d+)\s*,\s*(?P<b>\d+)\s*\])"
    r"|(?P<minor>minor\(\s*(?P<rows>[\d,\s]*);(?P<cols>[\d,\s]*)\))"
    r"|(?P<det>det)"
    r"|(?P<num>\d+)"
    r"|(?P<var>[suvi])"
    r"|(?P<op>\*\*|[-+*/^()]))"
)


def parse_poly(text: str, n: int) -> LocalizedVector:
    """Parse the polynomial grammar into a :class:`LocalizedVector`.

    Factors are ``z[a,b]``, ``det`` (with any integer power) and
    ``minor(rows;cols)``; scalars follow the scalar grammar.
    """
    A = algebra(n)
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _POLY_TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character at position {pos}: {stripped[pos:pos + 10]!r}")
        tokens.append((m, pos))
        pos = m.end()
    p = _PolyParser(tokens, A)
    value = p.expr()
    if p.i < len(tokens):
        raise PolyParseError(f"trailing input at position {tokens[p.i][1]}")
    return value


class _PolyParser:
    def __init__(self, tokens, alg):
        self.tokens = tokens
        self.alg = alg
        self.i = 0

    def _op(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i][0].group("op")
        return None

    def _pos(self):
        return self.tokens[self.i][1] if self.i < len(self.tokens) else -1

    def expr(self):
        sign = 1
        if self._op() in ("+", "-"):
            sign = -1 if self.tokens[self.i][0].group("op") == "-" else 1
            self.i += 1
        value = self.term().scale(sign)
        while self._op() in ("+", "-"):
            op = self._op()
            self.i += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.power()
        while self._op() in ("*", "/"):
            op = self._op()
            self.i += 1
            rhs = self.power()
            if op == "*":
                value = value * rhs
            else:
                c = _as_scalar(rhs)
                if c is None:
                    raise PolyParseError(f"division by a non-scalar at position {self._pos()}")
                value = value.scale(ONE / c)
        return value

    def power(self):
        is_det = self.i < len(self.tokens) and self.tokens[self.i][0].group("det")
        base = self.atom()
        if self._op() in ("^", "**"):
            self.i += 1
            sign = 1
            if self._op() in ("+", "-"):
                sign = -1 if self._op() == "-" else 1
                self.i += 1
            if self.i >= len(self.tokens) or not self.tokens[self.i][0].group("num"):
                raise PolyParseError(f"integer exponent expected at position {self._pos()}")
            k = sign * int(self.tokens[self.i][0].group("num"))
            self.i += 1
            if k >= 0:
                out = LocalizedVector(self.alg.const())
                for _ in range(k):
                    out = out * base
                return out
            if is_det:
                return LocalizedVector(self.alg.const(), -k)
            c = _as_scalar(base)
            if c is None:
                raise PolyParseError("negative powers are allowed only for det and scalars")
            return LocalizedVector(self.alg.const(c**k))
        return base

    def atom(self):
        if self.i >= len(self.tokens):
            raise PolyParseError("unexpected end of input")
        m, pos = self.tokens[self.i]
        A = self.alg
        if m.group("op") == "(":
            self.i += 1
            value = self.expr()
            if self._op() != ")":
                raise PolyParseError(f"expected ')' at position {self._pos()}")
            self.i += 1
            return value
        if m.group("op") == "-":
            self.i += 1
            return -self.atom()
        self.i += 1
        if m.group("z"):
            try:
                return LocalizedVector(A.z(int(m.group("a")), int(m.group("b"))))
            except ValueError as exc:
                raise PolyParseError(f"{exc} at position {pos}") from None
        if m.group("minor"):
            try:
                rows = tuple(int(x) for x in m.group("rows").split(",") if x.strip())
                cols = tuple(int(x) for x in m.group("cols").split(",") if x.strip())
                return LocalizedVector(A.q_minor(rows, cols))
            except ValueError as exc:
                raise PolyParseError(f"{exc} at position {pos}") from None
        if m.group("det"):
            return LocalizedVector(A.det())
        if m.group("num"):
            return LocalizedVector(A.const(int(m.group("num"))))
        if m.group("var"):
            return LocalizedVector(A.const(parse_scalar(m.group("var"))))
        raise PolyParseError(f"unexpected token {m.group(0)!r} at position {pos}")


def _as_scalar(x: LocalizedVector) -> ScalarExpr | None:
    if x.d != 0:
        return None
    terms = x.poly.terms
    if not terms:
        return ZERO
    if len(terms) == 1 and sum(next(iter(terms))) == 0:
        return next(iter(terms.values()))
    return None


# ---------------------------------------------------------------------------
# confluence of the rewriting system


def rewrite_pair(alg: QMatrixAlgebra, y: int, x: int) -> dict:
    """One application of the rule to the word ``y x`` with ``y > x``; returns
    ``{word: coefficient}`` with two-letter words."""
    if y <= x:
        raise ValueError("the rule applies to decreasing pairs only")
    ax, bx = alg.rowcol(x)
    ay, by = alg.rowcol(y)
    if ax == ay or bx == by:
        return {(x, y): QINV}
    if bx > by:
        return {(x, y): ONE}
    return {(x, y): ONE, (alg.index(ax, by), alg.index(ay, bx)): -QDIFF}


def _reduce_words(alg: QMatrixAlgebra, words: Mapping) -> dict:
    out: dict = {}
    for w, c in words.items():
        for m, c2 in alg.normalize_product(w, ()).terms.items():
            _add_into(out, m, c * c2)
    return out


def overlap_ambiguities(n: int) -> list[tuple[int, int, int]]:
    """All words ``c b a`` with ``c > b > a``: the overlaps of two rules."""
    return [t for t in itertools.combinations(range(n * n - 1, -1, -1), 3)]


def resolve_overlap(alg: QMatrixAlgebra, c: int, b: int, a: int) -> bool:
    """Rewrite ``c b a`` starting on the left pair and on the right pair and
    compare the normal forms."""
    left = {w + (a,): k for w, k in rewrite_pair(alg, c, b).items()}
    right = {(c,) + w: k for w, k in rewrite_pair(alg, b, a).items()}
    return _reduce_words(alg, left) == _reduce_words(alg, right)


def check_confluence(n: int) -> list[tuple[int, int, int]]:
    """Overlaps that fail to resolve (empty when the system is confluent)."""
    alg = algebra(n)
    return [t for t in overlap_ambiguities(n) if not resolve_overlap(alg, *t)]


def graded_dimension(n: int, j: int) -> int:
    return len(algebra(n).monomials_of_degree(j))
