"""Exact rational polyhedra ``{y >= 0 : A y <= b}`` and a Bland-rule simplex.

No floating point is used; every answer comes with an exact witness.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, InconsistentInput
from .polyalg import rank_q

Vector = tuple[Fraction, ...]


def _vec(v) -> Vector:
    return tuple(Fraction(x) for x in v)


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class RationalPolyhedron:
    """``{y in [0, inf)^N : normal . y <= rhs for every row}``."""

    N: int
    rows: tuple[tuple[Vector, Fraction], ...] = ()

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("ambient dimension must be at least 1")
        rows = []
        for normal, rhs in self.rows:
            normal = _vec(normal)
            if len(normal) != self.N:
                raise DimensionMismatch(f"row normal has length {len(normal)}, expected {self.N}")
            rows.append((normal, Fraction(rhs)))
        object.__setattr__(self, "rows", tuple(rows))

    nonneg = True

    @classmethod
    def orthant(cls, N: int) -> RationalPolyhedron:
        return cls(N, ())

    def with_rows(self, extra) -> RationalPolyhedron:
        return RationalPolyhedron(self.N, self.rows + tuple(extra))

    def contains(self, y: Sequence) -> bool:
        y = _vec(y)
        return all(v >= 0 for v in y) and all(_dot(a, y) <= b for a, b in self.rows)

    def all_rows(self) -> list[tuple[Vector, Fraction]]:
        """Explicit rows including ``-y_k <= 0``."""
        neg = [(tuple(Fraction(-int(i == k)) for i in range(self.N)), Fraction(0))
               for k in range(self.N)]
        return list(self.rows) + neg


class Status(str, enum.Enum):
    OPTIMAL = "Optimal"
    UNBOUNDED = "Unbounded"
    INFEASIBLE = "Infeasible"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class LPOutcome:
    status: Status
    value: Fraction | None = None
    witness: Vector | None = None
    direction: Vector | None = None
    basis: tuple[int, ...] | None = None
    """Basic columns of the final tableau in the standard form
    ``[A | I] (y, s) = b``; columns ``N..N+M-1`` are the row slacks."""


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.T = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r, c):
        T, rhs = self.T, self.rhs
        p = T[r][c]
        if p != 1:
            T[r] = [v / p for v in T[r]]
            rhs[r] /= p
        pr = T[r]
        for i in range(len(T)):
            if i != r:
                f = T[i][c]
                if f:
                    T[i] = [a - f * b for a, b in zip(T[i], pr)]
                    rhs[i] -= f * rhs[r]
        self.basis[r] = c

    def run(self, cost, allowed):
        """Maximise ``cost . x`` by Bland's rule; returns (status, entering column)."""
        T, rhs, basis = self.T, self.rhs, self.basis
        while True:
            cb = [cost[j] for j in basis]
            enter = None
            for j in allowed:
                if j in basis:
                    continue
                red = cost[j] - sum((cb[i] * T[i][j] for i in range(len(T)) if T[i][j]),
                                    Fraction(0))
                if red > 0:
                    enter = j
                    break
            if enter is None:
                return Status.OPTIMAL, None
            best = None
            for i in range(len(T)):
                a = T[i][enter]
                if a > 0:
                    key = (rhs[i] / a, basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return Status.UNBOUNDED, enter
            self.pivot(best[1], enter)


def lp_maximize(P: RationalPolyhedron, c: Sequence) -> LPOutcome:
    """Maximise ``c . y`` over P by two-phase exact simplex."""
    c = _vec(c)
    if len(c) != P.N:
        raise DimensionMismatch("objective has the wrong length")
    N, M = P.N, len(P.rows)
    nv = N + M
    rows, rhs, basis, arts = [], [], [], []
    for i, (a, b) in enumerate(P.rows):
        row = list(a) + [Fraction(int(k == i)) for k in range(M)]
        if b < 0:
            row = [-v for v in row]
            b = -b
            arts.append(i)
        rows.append(row)
        rhs.append(b)
    na = len(arts)
    for k, i in enumerate(arts):
        for r in range(M):
            rows[r].append(Fraction(int(r == i)))
    for i in range(M):
        basis.append(nv + arts.index(i) if i in arts else N + i)
    tab = _Tableau(rows, rhs, basis)

    if na:
        cost1 = [Fraction(0)] * nv + [Fraction(-1)] * na
        tab.run(cost1, range(nv + na))
        if any(tab.rhs[i] for i in range(M) if tab.basis[i] >= nv):
            return LPOutcome(Status.INFEASIBLE)
        # drive zero-level artificials out of the basis, dropping redundant rows
        r = 0
        while r < len(tab.T):
            if tab.basis[r] >= nv:
                col = next((j for j in range(nv) if tab.T[r][j]), None)
                if col is None:
                    del tab.T[r], tab.rhs[r], tab.basis[r]
                    continue
                tab.pivot(r, col)
            r += 1
        tab.T = [row[:nv] for row in tab.T]

    cost = list(c) + [Fraction(0)] * M
    status, enter = tab.run(cost, range(nv))
    x = [Fraction(0)] * nv
    for i, j in enumerate(tab.basis):
        x[j] = tab.rhs[i]
    witness = tuple(x[:N])
    if status is Status.UNBOUNDED:
        z = [Fraction(0)] * nv
        z[enter] = Fraction(1)
        for i, j in enumerate(tab.basis):
            z[j] = -tab.T[i][enter]
        return LPOutcome(Status.UNBOUNDED, witness=witness, direction=tuple(z[:N]))
    return LPOutcome(Status.OPTIMAL, value=_dot(c, witness), witness=witness,
                     basis=tuple(tab.basis))


def is_feasible(P: RationalPolyhedron) -> bool:
    return lp_maximize(P, [0] * P.N).status is not Status.INFEASIBLE


def is_full_dim(P: RationalPolyhedron) -> bool:
    """Whether some y > 0 satisfies every inequality strictly.

    Solved as ``max t`` subject to ``a.y + t <= b``, ``y_k >= t``, ``t <= 1``.
    Rows ``0 . y <= b`` with ``b >= 0`` impose nothing and are ignored.
    """
    N = P.N
    rows = []
    for a, b in P.rows:
        if not any(a):
            if b < 0:
                return False
            continue
        rows.append((a + (Fraction(1),), b))
    for k in range(N):
        rows.append((tuple(Fraction(-int(i == k)) for i in range(N)) + (Fraction(1),), Fraction(0)))
    rows.append(((Fraction(0),) * N + (Fraction(1),), Fraction(1)))
    out = lp_maximize(RationalPolyhedron(N + 1, tuple(rows)), [0] * N + [1])
    return out.status is Status.OPTIMAL and out.value > 0


@dataclass(frozen=True)
class Face:
    dim: int
    bounded: bool


def optimal_face(P: RationalPolyhedron, c: Sequence, m) -> Face:
    """Dimension and boundedness of ``F = P ∩ {c.y = m}`` for the optimum m."""
    c, m = _vec(c), Fraction(m)
    N = P.N
    best = lp_maximize(P, c)
    if best.status is not Status.OPTIMAL or best.value != m:
        raise InconsistentInput(f"{m} is not the maximum of c.y over P")
    F = P.with_rows([(c, m), (tuple(-v for v in c), -m)])

    equalities = [c] if any(c) else []
    for a, b in P.all_rows():
        if not any(a):
            continue
        # slack b - a.y has maximum 0 over F iff the row is an implicit equality
        out = lp_maximize(F, [-v for v in a])
        if out.status is Status.OPTIMAL and b + out.value == 0:
            equalities.append(a)
    dim = N - (rank_q(equalities) if equalities else 0)

    cone = [(a, Fraction(0)) for a, _ in F.rows]
    cone.append(((Fraction(1),) * N, Fraction(1)))
    rec = lp_maximize(RationalPolyhedron(N, tuple(cone)), [1] * N)
    return Face(dim=dim, bounded=rec.value == 0)
