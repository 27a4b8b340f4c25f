r"""
Exact scalars for the representation computations.

Every coefficient lives in the field ``Q(i)(s, u, v)`` where ``s = q^{1/2}``,
``u = q^alpha`` and ``v = q^beta``.  Elements are stored as

    (re + i*im) / den

with ``re``, ``im``, ``den`` polynomials over ``Q`` (python-flint
``fmpq_mpoly``).  After every operation the triple is divided by its gcd and
``den`` is made monic in the deglex order on ``(s, u, v)``, so equality is a
plain comparison of the three polynomials.

Conjugation flips the sign of ``i`` only: ``s``, ``u`` and ``v`` are treated as
real symbols.  Concrete parameters with non-real ``q^alpha`` are only ever
introduced through :func:`specialize`.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import flint
import mpmath

CTX = flint.fmpq_mpoly_ctx.get(("s", "u", "v"), "deglex")
_S, _U, _V = CTX.gens()
_ZERO = CTX.from_dict({})
_ONE = CTX.from_dict({(0, 0, 0): 1})
VARS = ("s", "u", "v")


class ScalarError(ArithmeticError):
    """Raised for division by zero and poles at a specialization point."""


def _gcd3(a, b, c):
    g = a.gcd(b)
    if c is not None and not g.is_one():
        g = g.gcd(c)
    return g


def _monic(re, im, den):
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / flint.fmpq(lc)
        re = re * inv
        den = den * inv
        if im is not None:
            im = im * inv
    return re, im, den


class ScalarExpr:
    """An element of ``Q(i)(s,u,v)`` in canonical reduced form."""

    __slots__ = ("re", "im", "den", "_hash")

    def __init__(self, value=0):
        if isinstance(value, ScalarExpr):
            self.re, self.im, self.den = value.re, value.im, value.den
        elif isinstance(value, (int, Fraction, flint.fmpq, flint.fmpz)):
            v = flint.fmpq(value.numerator, value.denominator) if isinstance(value, Fraction) else value
            self.re = _ONE * v if v != 0 else _ZERO
            self.im = None
            self.den = _ONE
        elif isinstance(value, complex):
            raise TypeError("floating point values are not exact scalars")
        elif isinstance(value, flint.fmpq_mpoly):
            self.re, self.im, self.den = value, None, _ONE
        else:
            raise TypeError(f"cannot build a scalar from {type(value).__name__}")
        self._hash = None

    @classmethod
    def _raw(cls, re, im, den) -> "ScalarExpr":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im if (im is not None and not im.is_zero()) else None
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def _make(cls, re, im, den) -> "ScalarExpr":
        if im is not None and im.is_zero():
            im = None
        if re.is_zero() and im is None:
            return ZERO
        if not den.is_one():
            g = _gcd3(den, re, im)
            if not g.is_one():
                den = den / g
                re = re / g
                if im is not None:
                    im = im / g
            re, im, den = _monic(re, im, den)
        return cls._raw(re, im, den)

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im is None

    def is_one(self) -> bool:
        return self.im is None and self.den.is_one() and self.re.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.re.is_constant() and (self.im is None or self.im.is_constant())

    def is_real(self) -> bool:
        return self.im is None

    def depends_on(self, var: str) -> bool:
        k = VARS.index(var)
        for p in (self.re, self.im, self.den):
            if p is not None and not p.is_zero() and p.degrees()[k] > 0:
                return True
        return False

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        if self.is_zero():
            return self
        return ScalarExpr._raw(-self.re, -self.im if self.im is not None else None, self.den)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        a, b = self, other
        im = _add_opt(a.im, b.im)
        if a.den == b.den:
            return ScalarExpr._make(a.re + b.re, im, a.den)
        if a.den.is_one():
            return ScalarExpr._raw_checked(a.re * b.den + b.re, _add_opt(_mul_opt(a.im, b.den), b.im), b.den)
        if b.den.is_one():
            return ScalarExpr._raw_checked(b.re * a.den + a.re, _add_opt(_mul_opt(b.im, a.den), a.im), a.den)
        g = a.den.gcd(b.den)
        da = a.den / g
        db = b.den / g
        re = a.re * db + b.re * da
        im = _add_opt(_mul_opt(a.im, db), _mul_opt(b.im, da))
        den = a.den * db
        return ScalarExpr._make(re, im, den)

    @classmethod
    def _raw_checked(cls, re, im, den):
        # numerator and denominator are already coprime; only zero and monic checks
        if im is not None and im.is_zero():
            im = None
        if re.is_zero() and im is None:
            return ZERO
        return cls._raw(re, im, den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self, other
        if a.is_zero() or b.is_zero():
            return ZERO
        if a.im is None and b.im is None:
            re, im = a.re * b.re, None
        else:
            re = a.re * b.re
            if a.im is not None and b.im is not None:
                re = re - a.im * b.im
            im = _add_opt(_mul_opt(b.im, a.re), _mul_opt(a.im, b.re))
        if a.den.is_one() and b.den.is_one():
            return ScalarExpr._raw_checked(re, im, _ONE)
        return ScalarExpr._make(re, im, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "ScalarExpr":
        if self.is_zero():
            raise ScalarError("division by zero")
        if self.im is None:
            return ScalarExpr._make(self.den, None, self.re)
        norm = self.re * self.re + self.im * self.im
        return ScalarExpr._make(self.den * self.re, -(self.den * self.im), norm)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "ScalarExpr":
        if self.im is None:
            return self
        return ScalarExpr._raw(self.re, -self.im, self.den)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (
            self.den == other.den
            and self.re == other.re
            and ((self.im is None and other.im is None) or (self.im is not None and other.im is not None and self.im == other.im))
        )

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if self._hash is None:
            key = (
                tuple(sorted(self.re.to_dict().items())),
                tuple(sorted(self.im.to_dict().items())) if self.im is not None else (),
                tuple(sorted(self.den.to_dict().items())),
            )
            self._hash = hash(key)
        return self._hash

    # -- substitution -----------------------------------------------------
    def subs(self, **values) -> "ScalarExpr":
        """Substitute ScalarExpr values for some of ``s``, ``u``, ``v``."""
        vals = [values.get(name) for name in VARS]
        vals = [None if x is None else _coerce(x) for x in vals]

        def ev(poly):
            total = ZERO
            for exps, c in poly.to_dict().items():
                term = ScalarExpr(Fraction(int(c.p), int(c.q)))
                rest = [0, 0, 0]
                for k, e in enumerate(exps):
                    if vals[k] is None:
                        rest[k] = e
                    elif e:
                        term = term * vals[k] ** e
                if any(rest):
                    term = term * ScalarExpr(CTX.from_dict({tuple(rest): 1}))
                total = total + term
            return total

        num = ev(self.re)
        if self.im is not None:
            num = num + I * ev(self.im)
        return num / ev(self.den)

    def constant_value(self):
        """Return the value as a Fraction (real) or a pair of Fractions."""
        if not self.is_constant():
            raise ValueError("scalar is not constant")
        re = _poly_const(self.re)
        im = _poly_const(self.im) if self.im is not None else Fraction(0)
        return re if im == 0 else (re, im)

    def to_complex(self) -> complex:
        val = self.constant_value()
        if isinstance(val, tuple):
            return complex(float(val[0]), float(val[1]))
        return complex(float(val), 0.0)

    # -- text -------------------------------------------------------------
    def to_text(self) -> str:
        return format_scalar(self)

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"ScalarExpr({format_scalar(self)!r})"


def _poly_const(p) -> Fraction:
    if p is None or p.is_zero():
        return Fraction(0)
    c = p.to_dict().get((0, 0, 0), 0)
    c = flint.fmpq(c)
    return Fraction(int(c.p), int(c.q))


def _add_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a + b


def _mul_opt(a, b):
    if a is None or b is None:
        return None
    return a * b


def _coerce(x):
    if isinstance(x, ScalarExpr):
        return x
    if isinstance(x, (int, Fraction)):
        return ScalarExpr(x)
    return NotImplemented


ZERO = ScalarExpr._raw(_ZERO, None, _ONE)
ONE = ScalarExpr._raw(_ONE, None, _ONE)
I = ScalarExpr._raw(_ZERO, _ONE, _ONE)
S = ScalarExpr(_S)
U = ScalarExpr(_U)
V = ScalarExpr(_V)


def scalar(x) -> ScalarExpr:
    """Coerce ints, Fractions and ScalarExprs; parse strings."""
    if isinstance(x, str):
        return parse_scalar(x)
    c = _coerce(x)
    if c is NotImplemented:
        raise TypeError(f"cannot convert {x!r} to a scalar")
    return c


def s_power(k: int) -> ScalarExpr:
    """``s^k = q^{k/2}`` for any integer k."""
    if k >= 0:
        return ScalarExpr._raw(CTX.from_dict({(k, 0, 0): 1}), None, _ONE)
    return ScalarExpr._raw(_ONE, None, CTX.from_dict({(-k, 0, 0): 1}))


def q_power(c, qa: ScalarExpr = U, qb: ScalarExpr = V, alpha: int = 0, beta: int = 0) -> ScalarExpr:
    """``q^{c + alpha*A + beta*B}`` where ``q^A = qa`` and ``q^B = qb``.

    ``c`` must be a half integer.
    """
    two_c = Fraction(c) * 2
    if two_c.denominator != 1:
        raise ValueError(f"q-exponent {c} is not a half integer")
    out = s_power(int(two_c))
    if alpha:
        out = out * qa**alpha
    if beta:
        out = out * qb**beta
    return out


QMINUSQINV = s_power(2) - s_power(-2)


@dataclass(frozen=True)
class QExp:
    """A q-exponent ``const + alpha*A + beta*B`` with integer A, B coefficients."""

    const: Fraction = Fraction(0)
    alpha: int = 0
    beta: int = 0

    def __post_init__(self):
        object.__setattr__(self, "const", Fraction(self.const))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QExp(other)
        return QExp(self.const + other.const, self.alpha + other.alpha, self.beta + other.beta)

    __radd__ = __add__

    def __neg__(self):
        return QExp(-self.const, -self.alpha, -self.beta)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QExp(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k: int):
        return QExp(self.const * k, self.alpha * k, self.beta * k)

    __rmul__ = __mul__

    def power(self, qa: ScalarExpr = U, qb: ScalarExpr = V) -> ScalarExpr:
        return q_power(self.const, qa, qb, self.alpha, self.beta)


ALPHA = QExp(0, 1, 0)
BETA = QExp(0, 0, 1)


def qint(x, qa: ScalarExpr = U, qb: ScalarExpr = V) -> ScalarExpr:
    """The q-integer ``(q^x - q^{-x}) / (q - q^{-1})``.

    ``x`` is an int, a Fraction or a :class:`QExp`; ``q^alpha`` and ``q^beta``
    are taken from ``qa`` and ``qb``.
    """
    if not isinstance(x, QExp):
        x = QExp(x)
    return (x.power(qa, qb) - (-x).power(qa, qb)) / QMINUSQINV


def qint_vanishes(x: QExp, alpha: "ParameterPoint", beta: "ParameterPoint") -> bool:
    """Whether ``[x]_q`` is zero at concrete parameters.

    For real ``q`` in ``(0,1)`` this happens exactly when the imaginary parts
    cancel and the real part of ``x`` is zero.
    """
    im = x.alpha * alpha.im_units + x.beta * beta.im_units
    real = x.const + x.alpha * alpha.re + x.beta * beta.re
    # q^{2x} = 1 requires Im(2x) in (2 pi / h) Z, i.e. im units even
    return im % 2 == 0 and real == 0


# ---------------------------------------------------------------------------
# parameters and twist modes


@dataclass(frozen=True)
class ParameterPoint:
    """A parameter value ``re + i*im_units*pi/h``."""

    re: Fraction
    im_units: int = 0

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        if self.im_units not in (0, 1):
            raise ValueError("im_units must be 0 or 1")

    @classmethod
    def of(cls, x) -> "ParameterPoint":
        if isinstance(x, ParameterPoint):
            return x
        return cls(Fraction(x))

    def is_integer(self) -> bool:
        return self.im_units == 0 and self.re.denominator == 1

    def zeta(self) -> ScalarExpr:
        # q^{i pi/h} = exp(-i pi/2) = -i because q = exp(-h/2)
        return -I if self.im_units else ONE

    def q_value(self) -> ScalarExpr:
        """``q^param`` as an exact scalar; needs ``2*re`` to be an integer."""
        return self.zeta() * q_power(self.re)

    def __add__(self, k):
        return ParameterPoint(self.re + Fraction(k), self.im_units)

    def __sub__(self, k):
        return ParameterPoint(self.re - Fraction(k), self.im_units)

    def __str__(self):
        text = str(self.re)
        return text + ("+i*pi/h" if self.im_units else "")


@dataclass(frozen=True)
class Symbolic:
    """Twist mode with ``u = q^alpha`` free and ``v = u*s^{-2d}``."""

    d: int

    def values(self) -> tuple[ScalarExpr, ScalarExpr]:
        return U, U * s_power(-2 * self.d)


@dataclass(frozen=True)
class Concrete:
    """Twist mode at concrete parameters.

    ``q^alpha`` is substituted when ``2*re(alpha)`` is an integer and left as
    ``u`` (resp. ``v``) otherwise.
    """

    alpha: ParameterPoint
    beta: ParameterPoint

    def values(self) -> tuple[ScalarExpr, ScalarExpr]:
        qa = self.alpha.q_value() if (2 * self.alpha.re).denominator == 1 else U
        qb = self.beta.q_value() if (2 * self.beta.re).denominator == 1 else V
        return qa, qb


TwistMode = Symbolic | Concrete


# ---------------------------------------------------------------------------
# specialization


def _gauss_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gauss_pow(a, k):
    out = (Fraction(1), Fraction(0))
    for _ in range(k):
        out = _gauss_mul(out, a)
    return out


def _exact_param(p: ParameterPoint, s0: Fraction):
    two = 2 * p.re
    if two.denominator != 1:
        return None
    mag = s0 ** int(two)
    return (Fraction(0), -mag) if p.im_units else (mag, Fraction(0))


def specialize(
    e: ScalarExpr,
    s0,
    alpha: ParameterPoint | None = None,
    beta: ParameterPoint | None = None,
    u=None,
    v=None,
    precision: int = 60,
):
    """Evaluate at ``s = s0`` and the given parameters.

    Returns an exact scalar constant when every substituted value is a Gaussian
    rational, otherwise a Python complex computed with ``precision`` digits
    (the rounding error is far below ``1e-12``).  ``u``/``v`` may be given
    directly instead of ``alpha``/``beta``.
    """
    s0 = Fraction(s0)
    if not 0 < s0 < 1:
        raise ValueError("s0 must lie in (0, 1)")
    vals: list = [(s0, Fraction(0)), None, None]
    exact = True
    for k, (p, direct) in enumerate(((alpha, u), (beta, v)), start=1):
        if direct is not None:
            vals[k] = direct
        elif p is not None:
            vals[k] = _exact_param(p, s0)
            if vals[k] is None:
                exact = False
                z = complex(0, -1) if p.im_units else 1
                vals[k] = z * mpmath.power(mpmath.mpf(s0.numerator) / s0.denominator, 2 * mpmath.mpf(p.re.numerator) / p.re.denominator)
    for k, var in ((1, "u"), (2, "v")):
        if vals[k] is None and e.depends_on(var):
            raise ValueError(f"no value supplied for {var}")
        if vals[k] is not None and not isinstance(vals[k], tuple):
            if isinstance(vals[k], (int, Fraction)):
                vals[k] = (Fraction(vals[k]), Fraction(0))
            elif isinstance(vals[k], ScalarExpr):
                cv = vals[k].constant_value()
                vals[k] = cv if isinstance(cv, tuple) else (cv, Fraction(0))
            else:
                exact = False
    if exact:
        num = _eval_exact(e.re, vals)
        if e.im is not None:
            a = _eval_exact(e.im, vals)
            num = (num[0] - a[1], num[1] + a[0])
        den = _eval_exact(e.den, vals)
        if den == (0, 0):
            raise ScalarError("pole at specialization point")
        norm = den[0] ** 2 + den[1] ** 2
        re = (num[0] * den[0] + num[1] * den[1]) / norm
        im = (num[1] * den[0] - num[0] * den[1]) / norm
        return ScalarExpr(re) + I * ScalarExpr(im) if im else ScalarExpr(re)
    with mpmath.workdps(precision):
        cv = [mpmath.mpc(*(mpmath.mpf(t.numerator) / t.denominator for t in x)) if isinstance(x, tuple) else x for x in vals]
        num = _eval_float(e.re, cv)
        if e.im is not None:
            num = num + 1j * _eval_float(e.im, cv)
        den = _eval_float(e.den, cv)
        if abs(den) < mpmath.mpf(10) ** (-precision // 2):
            raise ScalarError("pole at specialization point")
        return complex(num / den)


def _eval_exact(poly, vals):
    total = (Fraction(0), Fraction(0))
    for exps, c in poly.to_dict().items():
        c = flint.fmpq(c)
        term = (Fraction(int(c.p), int(c.q)), Fraction(0))
        for k, ex in enumerate(exps):
            if ex:
                term = _gauss_mul(term, _gauss_pow(vals[k], int(ex)))
        total = (total[0] + term[0], total[1] + term[1])
    return total


def _eval_float(poly, vals):
    total = mpmath.mpc(0)
    for exps, c in poly.to_dict().items():
        c = flint.fmpq(c)
        term = mpmath.mpf(int(c.p)) / int(c.q)
        for k, ex in enumerate(exps):
            if ex:
                term = term * vals[k] ** int(ex)
        total += term
    return total


def to_numeric(e: ScalarExpr, s0, u=None, v=None) -> complex:
    """Fast double-precision evaluation with explicit complex u, v."""
    vals = (float(s0), u, v)

    def ev(poly):
        total = 0j
        for exps, c in poly.to_dict().items():
            c = flint.fmpq(c)
            term = complex(int(c.p) / int(c.q))
            for k, ex in enumerate(exps):
                if ex:
                    term *= vals[k] ** int(ex)
            total += term
        return total

    num = ev(e.re)
    if e.im is not None:
        num += 1j * ev(e.im)
    return num / ev(e.den)


# ---------------------------------------------------------------------------
# text form


def _format_poly_laurent(poly, shift=(0, 0, 0)) -> str:
    terms = []
    for exps, c in sorted(poly.to_dict().items(), key=lambda t: tuple(-x for x in t[0])):
        c = flint.fmpq(c)
        c = Fraction(int(c.p), int(c.q))
        exps = tuple(e - sh for e, sh in zip(exps, shift))
        factors = []
        for name, e in zip(VARS, exps):
            if e == 1:
                factors.append(name)
            elif e != 0:
                factors.append(f"{name}^{e}")
        mono = "*".join(factors)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def format_scalar(e: ScalarExpr) -> str:
    """Render as Laurent numerator over an optional polynomial denominator."""
    if e.is_zero():
        return "0"
    # pull the monomial part of the denominator into negative exponents
    den_terms = e.den.to_dict()
    shift = tuple(min(ex[k] for ex in den_terms) for k in range(3))
    den = CTX.from_dict({tuple(a - b for a, b in zip(ex, shift)): c for ex, c in den_terms.items()})
    parts = []
    if not e.re.is_zero():
        parts.append(_format_poly_laurent(e.re, shift))
    if e.im is not None:
        im_text = _format_poly_laurent(e.im, shift)
        if im_text == "1":
            parts.append("i")
        elif im_text == "-1":
            parts.append("-i")
        else:
            parts.append(f"i*({im_text})")
    num = parts[0]
    for part in parts[1:]:
        num += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
    if den.is_one():
        return num
    return f"({num})/({_format_poly_laurent(den)})"


_TOKEN = _re.compile(r"\s*(?:(\d+)|([suvi])|(\*\*|[-+*/^()]))")


class ScalarParseError(ValueError):
    pass


def parse_scalar(text: str) -> ScalarExpr:
    """Parse the textual scalar grammar (``s``, ``u``, ``v``, ``i``, integers,
    ``+ - * / ^`` and parentheses)."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ScalarParseError(f"unexpected character at position {pos}: {text[pos:pos + 10]!r}")
        tokens.append((m.group(0).strip(), pos))
        pos = m.end()
    parser = _ScalarParser(tokens, text)
    value = parser.expr()
    if parser.i < len(tokens):
        raise ScalarParseError(f"trailing input at position {tokens[parser.i][1]}")
    return value


class _ScalarParser:
    def __init__(self, tokens, text):
        self.tokens = tokens
        self.text = text
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        if self.i >= len(self.tokens):
            raise ScalarParseError(f"unexpected end of input, expected {expected or 'a token'}")
        tok, pos = self.tokens[self.i]
        if expected is not None and tok != expected:
            raise ScalarParseError(f"expected {expected!r} at position {pos}, got {tok!r}")
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        value = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.power()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.power()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ScalarError("division by zero")
                value = value / rhs
        return value

    def power(self):
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            sign = 1
            if self.peek() in ("+", "-"):
                sign = -1 if self.take() == "-" else 1
            tok = self.take()
            if not tok.isdigit():
                raise ScalarParseError(f"integer exponent expected, got {tok!r}")
            base = base ** (sign * int(tok))
        return base

    def atom(self):
        tok = self.peek()
        if tok == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        if tok == "-":
            self.take()
            return -self.atom()
        tok = self.take()
        if tok.isdigit():
            return ScalarExpr(int(tok))
        if tok == "s":
            return S
        if tok == "u":
            return U
        if tok == "v":
            return V
        if tok == "i":
            return I
        raise ScalarParseError(f"unexpected token {tok!r}")


def scalar_sum(items: Iterable[ScalarExpr]) -> ScalarExpr:
    total = ZERO
    for x in items:
        total = total + x
    return total
