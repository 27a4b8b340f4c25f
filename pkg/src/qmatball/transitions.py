"""
Transitions between neighbouring isotypic components under the p^+ and p^-
blocks, the scalar attached to the highest vectors, and the submodule
structure at integral parameters.

The up map sends ``p^+ (x) V_k`` to ``V_{k+e_j}`` by acting and projecting; its
entries, computed with ``q^alpha = u`` free, factor as

    q^{-beta} [beta - k_j + j - 1]_q * (u-free map)

and dually the down map factors through ``q^{alpha} [alpha + k_j + n - j]_q``.
The structure part only needs the hyperplanes where these brackets vanish.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Sequence

from .action import RepContext, twisted
from .canonical import K_minus, build_Fmj, factor_eigenvalue, pq_entry
from .isotypic import component_basis, is_dominant, project, signature_weight, vh_vector
from .linalg import express
from .scalars import ZERO, ParameterPoint, QExp, ScalarExpr, Symbolic, qint, s_power


class FactorizationError(AssertionError):
    """The computed map does not factor through the expected q-integer."""


class NotIntegral(ValueError):
    pass


# ---------------------------------------------------------------------------
# transition maps


@dataclass
class TransitionCoefficient:
    j: int
    direction: str
    bracket: QExp  # argument of the q-integer, in terms of alpha/beta
    qpower: QExp  # the parameter-dependent power in front
    scalar: ScalarExpr  # q^qpower [bracket]_q in the context's variables
    remainder_u_free: bool
    remainder_nonzero: bool


@dataclass
class TransitionMap:
    source: tuple
    target: tuple
    admissible: bool
    coefficient: TransitionCoefficient | None = None
    # entry -> matrix; rows index the target basis, columns the source basis
    matrices: dict = field(default_factory=dict)
    remainder: dict = field(default_factory=dict)

    def is_zero(self) -> bool:
        return all(c.is_zero() for m in self.matrices.values() for row in m for c in row)


def _target(k: Sequence[int], j: int, step: int) -> tuple:
    t = list(k)
    t[j - 1] += step
    return tuple(t)


def transition_bracket(n: int, k: Sequence[int], j: int, direction: str) -> tuple[QExp, QExp]:
    """``(q-power, bracket argument)`` for the up (``'+'``) or down map."""
    kj = k[j - 1]
    if direction == "+":
        return QExp(0, 0, -1), QExp(-kj + j - 1, 0, 1)
    return QExp(0, 1, 0), QExp(kj + n - j, 1, 0)


def _map(k, j: int, ctx: RepContext, direction: str) -> TransitionMap:
    n = len(k)
    k = tuple(k)
    target = _target(k, j, 1 if direction == "+" else -1)
    if not is_dominant(target):
        return TransitionMap(k, target, False)
    qpow, arg = transition_bracket(n, k, j, direction)
    coef = qpow.power(ctx.qa, ctx.qb) * qint(arg, ctx.qa, ctx.qb)
    src = component_basis(k)
    tgt = component_basis(target)
    out = TransitionMap(k, target, True)
    u_free = True
    nonzero = False
    for row, col in product(range(1, n + 1), repeat=2):
        w = pq_entry(direction, n, row, col)
        mat = [[ZERO] * len(src) for _ in tgt]
        for c, b in enumerate(src):
            y = project(ctx.act_word(w, b), target)
            if y.is_zero():
                continue
            co = express(y, tgt)
            if co is None:
                raise FactorizationError("projection left the target component")
            for r, x in enumerate(co):
                mat[r][c] = x
        rem = [[x / coef if not x.is_zero() else x for x in r] for r in mat]
        for r in rem:
            for x in r:
                if not x.is_zero():
                    nonzero = True
                    if x.depends_on("u") or x.depends_on("v"):
                        u_free = False
        out.matrices[(row, col)] = mat
        out.remainder[(row, col)] = rem
    out.coefficient = TransitionCoefficient(j, direction, arg, qpow, coef, u_free, nonzero)
    return out


def up_map(k: Sequence[int], j: int, ctx: RepContext | None = None) -> TransitionMap:
    """``p^+ (x) V_k -> V_{k+e_j}``; ``ctx`` defaults to the symbolic twist with ``alpha = beta``."""
    ctx = ctx or twisted(len(k), Symbolic(0))
    return _map(k, j, ctx, "+")


def down_map(k: Sequence[int], j: int, ctx: RepContext | None = None) -> TransitionMap:
    ctx = ctx or twisted(len(k), Symbolic(0))
    return _map(k, j, ctx, "-")


def check_factorization(m: TransitionMap) -> None:
    if not m.admissible:
        return
    c = m.coefficient
    if not c.remainder_u_free:
        raise FactorizationError(f"{m.source} -> {m.target}: remainder depends on the parameters")
    if not c.remainder_nonzero:
        raise FactorizationError(f"{m.source} -> {m.target}: remainder vanishes")


def window_signatures(n: int, max_degree: int = 3, max_det: int = 1) -> list[tuple]:
    """Signatures whose component sits inside the default window."""
    out = []
    for d in range(max_det + 1):
        for k in product(range(-d, max_degree + 1), repeat=n):
            if not is_dominant(k) or max(0, -k[-1]) != d:
                continue
            if sum(k) + n * d <= max_degree:
                out.append(k)
    return sorted(out, reverse=True)


def fits(k: Sequence[int], max_degree: int = 3, max_det: int = 1) -> bool:
    d = max(0, -k[-1])
    return d <= max_det and sum(k) + len(k) * d <= max_degree


# ---------------------------------------------------------------------------
# the highest-vector scalar


def zeta_coefficients(j: int, normalization: str = "consistent") -> list[ScalarExpr]:
    """Coefficients of the row sum.  ``literal`` uses ``(-q^2)^{m-1}`` for every
    row; ``consistent`` replaces the last one by ``(-q^2)^{j-2}(-q)`` so that
    the sum is a highest vector."""
    mq2 = -s_power(4)
    out = [mq2 ** (m - 1) for m in range(1, j + 1)]
    if normalization == "consistent" and j >= 2:
        out[-1] = mq2 ** (j - 2) * -s_power(2)
    elif normalization not in ("consistent", "literal"):
        raise ValueError(f"unknown normalization {normalization!r}")
    return out


def highest_word_sum(n: int, j: int, column: int | None = None, normalization: str = "consistent"):
    """``sum_m zeta_m p^+_{m,column} F_mj K_-(j,1,m-1)`` as a list of words."""
    column = n - j + 1 if column is None else column
    words = []
    for m, z in zip(range(1, j + 1), zeta_coefficients(j, normalization)):
        words.append((pq_entry("+", n, m, column) * build_Fmj(m, j) * K_minus(j, 1, m - 1)).scale(z))
    return words


def prop21_closed_form(k: Sequence[int], j: int, ctx: RepContext) -> ScalarExpr:
    """``q^{-beta-n/2+k_j+j} [beta-k_j+j-1]_q kappa`` with ``kappa`` the
    eigenvalue of ``K_-(j,1,j-1)`` on ``v^h_k``."""
    n = len(k)
    kj = k[j - 1]
    kappa = factor_eigenvalue("K-", j, 1, j - 1, signature_weight(k, ctx.shift or 0))
    return s_power(-n + 2 * (kj + j)) / ctx.qb * qint(QExp(-kj + j - 1, 0, 1), ctx.qa, ctx.qb) * kappa


@dataclass
class Prop21Report:
    k: tuple
    j: int
    proportional: bool
    scalar: ScalarExpr | None
    expected: ScalarExpr
    ratio: ScalarExpr | None

    @property
    def matches(self) -> bool:
        return self.scalar is not None and self.scalar == self.expected

    def as_dict(self) -> dict:
        return {
            "k": list(self.k),
            "j": self.j,
            "proportional": self.proportional,
            "scalar": None if self.scalar is None else self.scalar.to_text(),
            "expected": self.expected.to_text(),
            "ratio": None if self.ratio is None else self.ratio.to_text(),
            "match": self.matches,
        }


def prop21_evaluate(
    k: Sequence[int], j: int, ctx: RepContext | None = None, column: int | None = None, normalization: str = "consistent"
) -> Prop21Report:
    """Apply the row sum to ``v^h_k`` and compare with the closed form."""
    k = tuple(k)
    n = len(k)
    ctx = ctx or twisted(n, Symbolic(0))
    v = vh_vector(k)
    total = None
    for w in highest_word_sum(n, j, column, normalization):
        y = ctx.act_word(w, v)
        total = y if total is None else total + y
    expected = prop21_closed_form(k, j, ctx)
    target = _target(k, j, 1)
    if not is_dominant(target):
        ok = total.is_zero()
        return Prop21Report(k, j, ok, ZERO if ok else None, expected, None if expected.is_zero() else ZERO)
    c = express(total, [vh_vector(target)])
    if c is None:
        return Prop21Report(k, j, False, None, expected, None)
    return Prop21Report(k, j, True, c[0], expected, None if expected.is_zero() else c[0] / expected)


# ---------------------------------------------------------------------------
# structure at integral parameters


def _param(x) -> ParameterPoint:
    return ParameterPoint.of(x)


def _difference_integral(a: ParameterPoint, b: ParameterPoint) -> bool:
    return a.im_units == b.im_units and (a.re - b.re).denominator == 1


def up_edge(k: Sequence[int], j: int, alpha, beta) -> bool:
    """Whether ``p^+`` moves ``V_k`` into ``V_{k+e_j}``."""
    beta = _param(beta)
    if not is_dominant(_target(k, j, 1)):
        return False
    return not (beta.im_units == 0 and beta.re - k[j - 1] + j - 1 == 0)


def down_edge(k: Sequence[int], j: int, alpha, beta) -> bool:
    alpha = _param(alpha)
    n = len(k)
    if not is_dominant(_target(k, j, -1)):
        return False
    return not (alpha.im_units == 0 and alpha.re + k[j - 1] + n - j == 0)


@dataclass
class Lattice:
    n: int
    bound: int
    nodes: list
    edges: list  # (source, target, j, direction)

    def successors(self) -> dict:
        out = {v: set() for v in self.nodes}
        for a, b, _, _ in self.edges:
            out[a].add(b)
        return out

    def to_dot(self) -> str:
        lines = ["digraph lattice {", "  node [shape=box];"]
        for v in self.nodes:
            lines.append(f'  "{v}";')
        for a, b, j, d in self.edges:
            style = "solid" if d == "+" else "dashed"
            lines.append(f'  "{a}" -> "{b}" [label="{d}{j}", style={style}];')
        lines.append("}")
        return "\n".join(lines)


def lattice(alpha, beta, n: int, bound: int = 4) -> Lattice:
    """Dominant signatures with ``|k_i| <= bound`` and the transition edges."""
    alpha, beta = _param(alpha), _param(beta)
    if not _difference_integral(alpha, beta):
        raise NotIntegral("alpha - beta must be an integer")
    nodes = [k for k in product(range(bound, -bound - 1, -1), repeat=n) if is_dominant(k)]
    present = set(nodes)
    edges = []
    for k in nodes:
        for j in range(1, n + 1):
            t = _target(k, j, 1)
            if t in present and up_edge(k, j, alpha, beta):
                edges.append((k, t, j, "+"))
            t = _target(k, j, -1)
            if t in present and down_edge(k, j, alpha, beta):
                edges.append((k, t, j, "-"))
    return Lattice(n, bound, nodes, edges)


def closed_sets_minimal(lat: Lattice) -> list[frozenset]:
    """Minimal nonempty edge-closed node sets (sink strongly connected components)."""
    succ = lat.successors()
    reach = {}
    for v in lat.nodes:
        seen = {v}
        stack = [v]
        while stack:
            for w in succ[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        reach[v] = frozenset(seen)
    sinks = {r for v, r in reach.items() if all(reach[w] == r for w in r)}
    return sorted(sinks, key=lambda s: sorted(s, reverse=True))


def is_closed(nodes: set, lat: Lattice) -> bool:
    return all(b in nodes for a, b, _, _ in lat.edges if a in nodes)


@dataclass
class Predicate:
    text: str
    test: Callable[[tuple], bool]

    def __call__(self, k) -> bool:
        return self.test(tuple(k))


@dataclass
class StructureReport:
    alpha: ParameterPoint
    beta: ParameterPoint
    n: int
    irreducible: bool
    case: int | None
    simples: list
    direct_sum: bool
    finite_dim: bool
    hyperplanes: dict
    partner_finite_dim: bool | None = None

    def as_dict(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "n": self.n,
            "case": self.case,
            "simples": [p.text for p in self.simples],
            "direct_sum": self.direct_sum,
            "finite_dim": self.finite_dim,
            "irreducible": self.irreducible,
            "hyperplanes": self.hyperplanes,
            "partner_finite_dim": self.partner_finite_dim,
        }


def _fmt(x: Fraction) -> str:
    return str(x)


def case_of(alpha: ParameterPoint, beta: ParameterPoint, n: int) -> int:
    c = alpha.re + beta.re + n - 1
    if c >= 1:
        return 1
    if c == 0:
        return 2
    if c == -1:
        return 3
    return 4


def _window_predicates(alpha: Fraction, beta: Fraction, n: int, case: int) -> list[Predicate]:
    up = [beta + j - 1 for j in range(1, n + 1)]  # k_j on L_j^+
    down = [-alpha - n + j for j in range(1, n + 1)]  # k_j on L_j^-
    if case == 1:
        text = " & ".join(f"{_fmt(down[j])} <= k_{j + 1} <= {_fmt(up[j])}" for j in range(n))
        return [Predicate(text, lambda k: all(down[j] <= k[j] <= up[j] for j in range(n)))]
    if case == 2:
        return [Predicate(f"k_{j + 1} = {_fmt(up[j])}", lambda k, j=j: k[j] == up[j]) for j in range(n)]
    out = []
    for i in range(1, n + 2):
        parts = []
        if i >= 2:
            parts.append(f"k_{i - 1} >= {_fmt(-alpha - n + i - 1)}")
        if i <= n:
            parts.append(f"k_{i} <= {_fmt(beta + i - 1)}")

        def test(k, i=i):
            if i >= 2 and not k[i - 2] >= -alpha - n + i - 1:
                return False
            if i <= n and not k[i - 1] <= beta + i - 1:
                return False
            return True

        out.append(Predicate(" & ".join(parts), test))
    return out


def classify(alpha, beta, n: int) -> StructureReport:
    alpha, beta = _param(alpha), _param(beta)
    if not _difference_integral(alpha, beta):
        raise NotIntegral("alpha - beta must be an integer")
    hyper = {}
    if alpha.is_integer():
        for j in range(1, n + 1):
            hyper[f"L{j}+"] = f"k_{j} = {_fmt(beta.re + j - 1)}"
            hyper[f"L{j}-"] = f"k_{j} = {_fmt(-alpha.re - n + j)}"
    if not alpha.is_integer():
        return StructureReport(alpha, beta, n, True, None, [Predicate("all", lambda k: True)], False, False, hyper)
    case = case_of(alpha, beta, n)
    simples = _window_predicates(alpha.re, beta.re, n, case)
    pa, pb = -n - beta.re, -n - alpha.re
    return StructureReport(
        alpha, beta, n, False, case, simples, case == 3, case == 1, hyper, partner_finite_dim=case_of(_param(pa), _param(pb), n) == 1
    )


def submodule_families(alpha, beta, n: int) -> list[Predicate]:
    """The half-spaces cut out by the hyperplanes; each is a submodule."""
    alpha, beta = _param(alpha), _param(beta)
    if not alpha.is_integer():
        return []
    out = []
    for j in range(1, n + 1):
        b = beta.re + j - 1
        a = -alpha.re - n + j
        out.append(Predicate(f"k_{j} <= {_fmt(b)}", lambda k, j=j, b=b: k[j - 1] <= b))
        out.append(Predicate(f"k_{j} >= {_fmt(a)}", lambda k, j=j, a=a: k[j - 1] >= a))
    return out


def submodule_enumerate(alpha, beta, n: int, bound: int = 4) -> list[tuple[str, frozenset]]:
    """Intersections of the half-space families, deduplicated on the window and
    checked to be closed under every edge present."""
    lat = lattice(alpha, beta, n, bound)
    fams = submodule_families(alpha, beta, n)
    found: dict = {}
    for r in range(len(fams) + 1):
        for combo in combinations(fams, r):
            nodes = frozenset(k for k in lat.nodes if all(p(k) for p in combo))
            if nodes in found:
                continue
            if not is_closed(nodes, lat):
                raise AssertionError(f"{' & '.join(p.text for p in combo)} is not closed")
            found[nodes] = " & ".join(p.text for p in combo) or "all"
    return sorted(((t, s) for s, t in found.items()), key=lambda x: (len(x[1]), x[0]))
