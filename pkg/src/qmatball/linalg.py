"""
Exact dense linear algebra over the scalar field, plus helpers that turn lists
of localized vectors into coordinate matrices over a shared monomial basis.

Elimination pivots on the first nonzero entry of each column, so results are
deterministic for identical input.
"""

from __future__ import annotations

from typing import Sequence

from .qmatrix import LocalizedVector, QPolynomial
from .scalars import ONE, ZERO, ScalarExpr, scalar


class DependentBasisError(ValueError):
    pass


Matrix = list  # list of rows, each a list of ScalarExpr


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    rows = [list(map(scalar, r)) for r in M]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv if not x.is_zero() else x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b if not b.is_zero() else a for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def kernel(M: Matrix, ncols: int | None = None) -> list[list[ScalarExpr]]:
    """A basis of ``{x : M x = 0}``."""
    if not M:
        if ncols is None:
            raise ValueError("column count needed for an empty matrix")
        return [[ONE if i == k else ZERO for i in range(ncols)] for k in range(ncols)]
    ncols = len(M[0])
    R, pivots = rref(M)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(R, pivots):
            if not row[f].is_zero():
                v[p] = -row[f]
        out.append(v)
    return out


def coords_in_span(v: Sequence, basis: Sequence[Sequence]) -> list[ScalarExpr] | None:
    """Coefficients ``c`` with ``sum c_i basis_i = v``; ``None`` if ``v`` is not in the span."""
    k = len(basis)
    if k == 0:
        return [] if all(scalar(x).is_zero() for x in v) else None
    dim = len(v)
    # augmented system: columns are basis vectors, last column is v
    M = [[scalar(basis[i][r]) for i in range(k)] + [scalar(v[r])] for r in range(dim)]
    R, pivots = rref(M)
    if len([p for p in pivots if p < k]) < k:
        raise DependentBasisError("basis vectors are linearly dependent")
    if k in pivots:
        return None
    out = [ZERO] * k
    for row, p in zip(R, pivots):
        out[p] = row[k]
    return out


def mat_vec(M: Matrix, x: Sequence) -> list[ScalarExpr]:
    out = []
    for row in M:
        acc = ZERO
        for a, b in zip(row, x):
            a, b = scalar(a), scalar(b)
            if not a.is_zero() and not b.is_zero():
                acc = acc + a * b
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# localized vectors as coordinates


class CoordSystem:
    """Coordinates for localized vectors over a common denominator ``det^d``."""

    def __init__(self, vectors: Sequence[LocalizedVector], d: int | None = None):
        if d is None:
            d = max((x.d for x in vectors), default=0)
        self.d = d
        monos: dict = {}
        for x in vectors:
            for m in x.lift(d).poly.terms:
                monos.setdefault(m, None)
        self.monomials = sorted(monos, reverse=True)
        self.index = {m: i for i, m in enumerate(self.monomials)}
        self.alg = vectors[0].alg if vectors else None

    def coords(self, x: LocalizedVector, extend: bool = False) -> list[ScalarExpr] | None:
        if x.d > self.d:
            raise ValueError("vector has a larger det power than the coordinate system")
        y = x.lift(self.d)
        v = [ZERO] * len(self.monomials)
        for m, c in y.poly.terms.items():
            i = self.index.get(m)
            if i is None:
                return None
            v[i] = c
        return v

    def vector(self, coords: Sequence) -> LocalizedVector:
        terms = {m: scalar(c) for m, c in zip(self.monomials, coords) if not scalar(c).is_zero()}
        return LocalizedVector(QPolynomial(self.alg, terms), self.d)


def span_basis(vectors: Sequence[LocalizedVector]) -> list[LocalizedVector]:
    """A linearly independent subfamily spanning the same space (greedy, in order)."""
    vectors = [x for x in vectors if not x.is_zero()]
    if not vectors:
        return []
    cs = CoordSystem(vectors)
    rows: list = []
    out = []
    for x in vectors:
        trial = rows + [cs.coords(x)]
        if rank(trial) == len(trial):
            rows = trial
            out.append(x)
    return out


def express(x: LocalizedVector, basis: Sequence[LocalizedVector]) -> list[ScalarExpr] | None:
    """Coefficients of ``x`` in terms of ``basis`` or ``None`` when outside the span."""
    cs = CoordSystem(list(basis) + [x])
    return coords_in_span(cs.coords(x), [cs.coords(b) for b in basis])


def vector_kernel(images: Sequence[Sequence[LocalizedVector]], ncols: int) -> list[list[ScalarExpr]]:
    """Kernel of the stacked linear maps given column-wise: ``images[g][c]`` is
    the image of the ``c``-th basis vector under map ``g``."""
    rows: Matrix = []
    for cols in images:
        nz = [v for v in cols if not v.is_zero()]
        if not nz:
            continue
        cs = CoordSystem(nz, max(v.d for v in cols))
        coords = [cs.coords(v) if not v.is_zero() else [ZERO] * len(cs.monomials) for v in cols]
        for r in range(len(cs.monomials)):
            rows.append([coords[c][r] for c in range(ncols)])
    if not rows:
        return kernel([], ncols)
    return kernel(rows)
