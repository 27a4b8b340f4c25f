"""
Formal elements of U_q sl_{2n}.

A :class:`UWord` is a finite linear combination of words in the generators
``E_i``, ``F_i``, ``K_i`` and ``Kinv_i``.  Words are never rewritten by the
defining relations of the algebra; the only simplification applied is the
cancellation of adjacent ``K_i Kinv_i`` pairs (the group-like part), which
keeps the star involution and the antipode honest involutions on words.

Hopf structure::

    Delta(E) = E (x) 1 + K (x) E      S(E) = -K^{-1} E     eps(E) = 0
    Delta(F) = F (x) K^{-1} + 1 (x) F  S(F) = -F K         eps(F) = 0
    Delta(K) = K (x) K                S(K) = K^{-1}        eps(K) = 1
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .scalars import ONE, ZERO, QExp, ScalarExpr, U, V, parse_scalar, s_power, scalar, QMINUSQINV

KINDS = ("E", "F", "K", "Kinv")

Gen = tuple  # (kind, index)


def gen(kind: str, i: int) -> Gen:
    if kind not in KINDS:
        raise ValueError(f"unknown generator kind {kind!r}")
    if i < 1:
        raise ValueError("generator index must be positive")
    return (kind, i)


def _inverse_gen(g: Gen) -> Gen | None:
    if g[0] == "K":
        return ("Kinv", g[1])
    if g[0] == "Kinv":
        return ("K", g[1])
    return None


def reduce_word(word: Iterable[Gen]) -> tuple:
    out: list = []
    for g in word:
        if out and _inverse_gen(g) == out[-1]:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def _acc(d: dict, key, c: ScalarExpr) -> None:
    old = d.get(key)
    if old is None:
        if not c.is_zero():
            d[key] = c
    else:
        new = old + c
        if new.is_zero():
            del d[key]
        else:
            d[key] = new


class UWord:
    """A linear combination of generator words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        out: dict = {}
        if terms:
            for w, c in terms.items():
                _acc(out, reduce_word(w), scalar(c))
        self.terms = out

    @classmethod
    def _wrap(cls, terms: dict) -> "UWord":
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def identity(cls) -> "UWord":
        return cls._wrap({(): ONE})

    @classmethod
    def const(cls, c) -> "UWord":
        c = scalar(c)
        return cls._wrap({(): c} if not c.is_zero() else {})

    @classmethod
    def of(cls, kind: str, i: int) -> "UWord":
        return cls._wrap({(gen(kind, i),): ONE})

    @classmethod
    def word(cls, gens: Iterable[Gen], c=ONE) -> "UWord":
        return cls({tuple(gens): c})

    def is_zero(self) -> bool:
        return not self.terms

    def max_index(self) -> int:
        return max((g[1] for w in self.terms for g in w), default=0)

    # -- algebra ----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, UWord):
            other = UWord.const(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c)
        return UWord._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return UWord._wrap({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, UWord):
            other = UWord.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "UWord":
        c = scalar(c)
        if c.is_zero():
            return UWord()
        return UWord._wrap({w: c * x for w, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, UWord):
            return self.scale(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _acc(out, reduce_word(w1 + w2), c1 * c2)
        return UWord._wrap(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(ONE / scalar(c))

    def __pow__(self, k: int):
        out = UWord.identity()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, UWord):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return format_uword(self)

    def __repr__(self):
        return f"UWord({self})"


def E(i: int) -> UWord:
    return UWord.of("E", i)


def F(i: int) -> UWord:
    return UWord.of("F", i)


def K(i: int) -> UWord:
    return UWord.of("K", i)


def Kinv(i: int) -> UWord:
    return UWord.of("Kinv", i)


# ---------------------------------------------------------------------------
# Hopf operations


def _gen_coproduct(g: Gen) -> list:
    kind, i = g
    one = ()
    if kind == "E":
        return [(ONE, (g,), one), (ONE, (("K", i),), (g,))]
    if kind == "F":
        return [(ONE, (g,), (("Kinv", i),)), (ONE, one, (g,))]
    return [(ONE, (g,), (g,))]


def coproduct(w: UWord) -> dict:
    """``Delta(w)`` as a dict ``(word1, word2) -> coefficient``."""
    out: dict = {}
    for word, c in w.terms.items():
        partial = {((), ()): c}
        for g in word:
            nxt: dict = {}
            for (a, b), x in partial.items():
                for y, ga, gb in _gen_coproduct(g):
                    _acc(nxt, (reduce_word(a + ga), reduce_word(b + gb)), x * y)
            partial = nxt
        for key, x in partial.items():
            _acc(out, key, x)
    return out


def tensor_product(t1: Mapping, t2: Mapping) -> dict:
    """Product in ``U (x) U`` of two coproduct-shaped dicts."""
    out: dict = {}
    for (a1, b1), c1 in t1.items():
        for (a2, b2), c2 in t2.items():
            _acc(out, (reduce_word(a1 + a2), reduce_word(b1 + b2)), c1 * c2)
    return out


def _gen_antipode(g: Gen) -> UWord:
    kind, i = g
    if kind == "E":
        return UWord({(("Kinv", i), g): -ONE})
    if kind == "F":
        return UWord({(g, ("K", i)): -ONE})
    if kind == "K":
        return Kinv(i)
    return K(i)


def antipode(w: UWord) -> UWord:
    out = UWord()
    for word, c in w.terms.items():
        acc = UWord.const(c)
        for g in word:
            acc = _gen_antipode(g) * acc
        out = out + acc
    return out


def counit(w: UWord) -> ScalarExpr:
    total = ZERO
    for word, c in w.terms.items():
        if all(g[0] in ("K", "Kinv") for g in word):
            total = total + c
    return total


def _gen_star(g: Gen, n: int) -> UWord:
    kind, i = g
    sign = -ONE if i == n else ONE
    if kind == "E":
        return UWord({(("K", i), ("F", i)): sign})
    if kind == "F":
        return UWord({(("E", i), ("Kinv", i)): sign})
    return UWord.word([g])


def star(w: UWord, n: int) -> UWord:
    """The involution of the real form su(n,n): conjugate-linear and
    anti-multiplicative, with ``E_n^* = -K_n F_n``, ``F_n^* = -E_n K_n^{-1}``,
    ``E_j^* = K_j F_j``, ``F_j^* = E_j K_j^{-1}`` for ``j != n`` and ``K^* = K``."""
    out = UWord()
    for word, c in w.terms.items():
        acc = UWord.const(c.conj())
        for g in word:
            acc = _gen_star(g, n) * acc
        out = out + acc
    return out


LEFT = "left"
RIGHT = "right"


def ad(a: UWord, b: UWord, convention: str = LEFT) -> UWord:
    """Adjoint action of ``a`` on ``b``.

    ``left``:  ``sum a' b S(a'')``, a left action (``ad_{xy} = ad_x ad_y``);
    on generators ``ad_E(b) = E b - K b K^{-1} E``,
    ``ad_F(b) = (F b - b F) K``, ``ad_K(b) = K b K^{-1}``.

    ``right``: ``sum S(a') b a''``, which gives
    ``ad_E(b) = -K^{-1} E b + K^{-1} b E`` and ``ad_F(b) = -F K b K^{-1} + b F``.
    """
    out = UWord()
    for (x, y), c in coproduct(a).items():
        if convention == LEFT:
            out = out + (UWord.word(x) * b * antipode(UWord.word(y))).scale(c)
        elif convention == RIGHT:
            out = out + (antipode(UWord.word(x)) * b * UWord.word(y)).scale(c)
        else:
            raise ValueError(f"unknown convention {convention!r}")
    return out


def ad_chain(gens: Iterable[UWord], b: UWord, convention: str = LEFT) -> UWord:
    """``ad_{g_1} ad_{g_2} ... ad_{g_m} (b)``: the last generator acts first."""
    out = b
    for g in reversed(list(gens)):
        out = ad(g, out, convention)
    return out


def k_product(a: int, b: int, inverse: bool = False) -> tuple:
    """``K_a K_{a+1} ... K_b`` (or ``K_b^{-1} ... K_a^{-1}``) as a word."""
    if inverse:
        return tuple(("Kinv", i) for i in range(b, a - 1, -1))
    return tuple(("K", i) for i in range(a, b + 1))


def cartan_qbracket(a: int, b: int, c, qa: ScalarExpr = U, qb: ScalarExpr = V) -> UWord:
    """``[H_a + ... + H_b + c]_q`` as the K-word
    ``(q^c K_a...K_b - q^{-c} K_b^{-1}...K_a^{-1}) / (q - q^{-1})``."""
    if not isinstance(c, QExp):
        c = QExp(c)
    plus = c.power(qa, qb) / QMINUSQINV
    minus = (-c).power(qa, qb) / QMINUSQINV
    return UWord({k_product(a, b): plus}) + UWord({k_product(a, b, inverse=True): -minus})


def defining_relations(n: int) -> list[tuple[str, UWord]]:
    """Defining relations of U_q sl_{2n} as words that must act by zero."""
    out = []
    N = 2 * n - 1
    q, qi = s_power(2), s_power(-2)

    def cartan(i, j):
        return 2 if i == j else (-1 if abs(i - j) == 1 else 0)

    for i in range(1, N + 1):
        out.append((f"K{i}Kinv{i}", K(i) * Kinv(i) - UWord.identity()))
        for j in range(1, N + 1):
            a = cartan(i, j)
            out.append((f"K{i}E{j}", K(i) * E(j) * Kinv(i) - E(j).scale(s_power(2 * a))))
            out.append((f"K{i}F{j}", K(i) * F(j) * Kinv(i) - F(j).scale(s_power(-2 * a))))
            if i < j:
                out.append((f"K{i}K{j}", K(i) * K(j) - K(j) * K(i)))
            bracket = (K(i) - Kinv(i)).scale(ONE / (q - qi)) if i == j else UWord()
            out.append((f"[E{i},F{j}]", E(i) * F(j) - F(j) * E(i) - bracket))
            if abs(i - j) == 1:
                for X, name in ((E, "E"), (F, "F")):
                    serre = X(i) * X(i) * X(j) - (X(i) * X(j) * X(i)).scale(q + qi) + X(j) * X(i) * X(i)
                    out.append((f"serre {name}{i}{name}{j}", serre))
            elif abs(i - j) > 1 and i < j:
                out.append((f"[E{i},E{j}]", E(i) * E(j) - E(j) * E(i)))
                out.append((f"[F{i},F{j}]", F(i) * F(j) - F(j) * F(i)))
    return out


def generators(n: int) -> list[UWord]:
    """All Chevalley generators and ``K_i^{-1}`` of U_q sl_{2n}."""
    out = []
    for i in range(1, 2 * n):
        out += [E(i), F(i), K(i), Kinv(i)]
    return out


def format_uword(w: UWord) -> str:
    if not w.terms:
        return "0"
    pieces = []
    for word in sorted(w.terms, key=lambda t: (len(t), t)):
        c = w.terms[word]
        body = "*".join(f"{kind}{i}" for kind, i in word)
        if c == ONE:
            sign, text = "+", body or "1"
        elif c == -ONE:
            sign, text = "-", body or "1"
        else:
            ctext = str(c)
            sign = "+"
            if " " in ctext or "/" in ctext:
                ctext = f"({ctext})"
            elif ctext.startswith("-"):
                sign, ctext = "-", ctext[1:]
            text = f"{ctext}*{body}" if body else ctext
        pieces.append((sign, text))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out


# ---------------------------------------------------------------------------
# word grammar


class WordParseError(ValueError):
    pass


_WORD_TOKEN = re.compile(
    r"\s*(?:(?P<gen>(?:Kinv|E|F|K)(?P<idx>\d+))"
    r"|(?P<named>Fmj|Srt|Gmj)\(\s*(?P<x>\d+)\s*,\s*(?P<y>\d+)\s*\)"
    r"|(?P<ad>ad\()"
    r"|(?P<num>\d+)"
    r"|(?P<var>[suvi])"
    r"|(?P<op>\*\*|[-+*/^();]))"
)


def parse_word(text: str, convention: str = LEFT) -> UWord:
    """Parse ``gen ('*' gen)*`` words with sums, scalar factors, and the named
    builders ``Fmj(m,j)``, ``Srt(r,t)``, ``Gmj(m,j)`` and ``ad(word; word)``."""
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _WORD_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordParseError(f"unexpected character at position {pos}: {text[pos:pos + 10]!r}")
        tokens.append((m, pos))
        pos = m.end()
    p = _WordParser(tokens, convention)
    value = p.expr()
    if p.i < len(tokens):
        raise WordParseError(f"trailing input at position {tokens[p.i][1]}")
    return value


class _WordParser:
    def __init__(self, tokens, convention):
        self.tokens = tokens
        self.i = 0
        self.convention = convention

    def _op(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i][0].group("op")
        return None

    def _pos(self):
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.tokens)

    def expect(self, op):
        if self._op() != op:
            raise WordParseError(f"expected {op!r} at position {self._pos()}")
        self.i += 1

    def expr(self):
        sign = ONE
        if self._op() in ("+", "-"):
            sign = -ONE if self._op() == "-" else ONE
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
                c = _word_scalar(rhs)
                if c is None or c.is_zero():
                    raise WordParseError(f"division by a non-scalar at position {self._pos()}")
                value = value.scale(ONE / c)
        return value

    def power(self):
        base = self.atom()
        if self._op() in ("^", "**"):
            self.i += 1
            sign = 1
            if self._op() in ("+", "-"):
                sign = -1 if self._op() == "-" else 1
                self.i += 1
            if self.i >= len(self.tokens) or not self.tokens[self.i][0].group("num"):
                raise WordParseError(f"integer exponent expected at position {self._pos()}")
            k = sign * int(self.tokens[self.i][0].group("num"))
            self.i += 1
            if k < 0:
                c = _word_scalar(base)
                if c is None:
                    raise WordParseError("negative powers are allowed only for scalars")
                return UWord.const(c**k)
            return base**k
        return base

    def atom(self):
        if self.i >= len(self.tokens):
            raise WordParseError("unexpected end of input")
        m, pos = self.tokens[self.i]
        if m.group("op") == "(":
            self.i += 1
            value = self.expr()
            self.expect(")")
            return value
        if m.group("op") == "-":
            self.i += 1
            return -self.atom()
        self.i += 1
        if m.group("gen"):
            kind = m.group("gen")[: -len(m.group("idx"))]
            return UWord.of(kind, int(m.group("idx")))
        if m.group("named"):
            from . import canonical

            x, y = int(m.group("x")), int(m.group("y"))
            builder = {"Fmj": canonical.build_Fmj, "Srt": canonical.build_Srt, "Gmj": canonical.build_Gmj}[m.group("named")]
            try:
                return builder(x, y, convention=self.convention)
            except ValueError as exc:
                raise WordParseError(f"{exc} at position {pos}") from None
        if m.group("ad"):
            a = self.expr()
            self.expect(";")
            b = self.expr()
            self.expect(")")
            return ad(a, b, self.convention)
        if m.group("num"):
            return UWord.const(int(m.group("num")))
        if m.group("var"):
            return UWord.const(parse_scalar(m.group("var")))
        raise WordParseError(f"unexpected token {m.group(0)!r} at position {pos}")


def _word_scalar(w: UWord) -> ScalarExpr | None:
    if not w.terms:
        return ZERO
    if set(w.terms) == {()}:
        return w.terms[()]
    return None
