"""Exact rational linear programming.

Only one question is ever asked of the solver: is the open polyhedron
``{x : G x < h}`` non-empty, and if so, give a point of it. This is
answered with the margin program

    maximize t  subject to  G x + t <= h,  -R <= x_i <= R,

solved through its dual ``min h.y s.t. G^T y = 0, sum(y) = 1, y >= 0``,
which has only ``dim + 1`` rows. The primal point is read off the optimal
simplex multipliers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .linalg import to_fraction


@dataclass(frozen=True)
class MarginResult:
    margin: Fraction
    point: List[Fraction]

    @property
    def feasible(self) -> bool:
        return self.margin > 0


def _simplex_standard(A, b, c):
    """Minimize ``c.y`` s.t. ``A y = b, y >= 0`` (b >= 0 required).

    Two-phase tableau method with Bland's rule. Returns ``(value, y, pi)``
    where ``pi`` are the optimal multipliers (``A^T pi <= c``), or None if
    the program is infeasible. The program must be bounded.
    """
    m = len(A)
    n = len(A[0])
    # tableau rows: [A | I | b]; the identity block keeps B^{-1}
    T = [list(A[i]) + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    width = n + m

    def pivot(r, col):
        piv = T[r][col]
        if piv != 1:
            T[r] = [x / piv for x in T[r]]
        row = T[r]
        for i in range(m):
            if i != r:
                f = T[i][col]
                if f:
                    T[i] = [a - f * p for a, p in zip(T[i], row)]
        basis[r] = col

    def run(cost, allowed):
        while True:
            cb = [cost[j] for j in basis]
            enter = None
            for j in range(allowed):
                if j in basis:
                    continue
                red = cost[j] - sum(cb[i] * T[i][j] for i in range(m) if T[i][j])
                if red < 0:
                    enter = j
                    break
            if enter is None:
                return
            best = None
            for i in range(m):
                a = T[i][enter]
                if a > 0:
                    ratio = T[i][width] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                raise ArithmeticError("unbounded linear program")
            pivot(best[1], enter)

    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    run(phase1, width)
    if sum(T[i][width] for i in range(m) if basis[i] >= n) != 0:
        return None
    # drive zero-level artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0 and j not in basis), None)
            if col is not None:
                pivot(i, col)
    cost = [to_fraction(x) for x in c] + [Fraction(0)] * m
    run(cost, n)
    y = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            y[j] = T[i][width]
    cb = [cost[j] for j in basis]
    pi = [sum(cb[i] * T[i][n + k] for i in range(m)) for k in range(m)]
    value = sum(ci * yi for ci, yi in zip(c, y))
    return value, y, pi


def max_margin(G: Sequence[Sequence], h: Sequence, bound=1) -> MarginResult:
    """Largest ``t`` with ``G x + t <= h`` and ``|x_i| <= bound``, plus its ``x``.

    ``{x : G x < h, |x_i| < bound}`` is non-empty iff the returned margin is
    positive, in which case the returned point lies in it.
    """
    G = [[to_fraction(v) for v in row] for row in G]
    h = [to_fraction(v) for v in h]
    dim = len(G[0]) if G else 0
    R = to_fraction(bound)
    rows = list(G)
    rhs = list(h)
    for i in range(dim):
        e = [Fraction(0)] * dim
        e[i] = Fraction(1)
        rows.append(e)
        rhs.append(R)
        rows.append([-x for x in e])
        rhs.append(R)
    k = len(rows)
    # dual: variables y_j (one per row), constraints G^T y = 0 and sum y = 1
    A = [[rows[j][i] for j in range(k)] for i in range(dim)]
    A.append([Fraction(1)] * k)
    b = [Fraction(0)] * dim + [Fraction(1)]
    res = _simplex_standard(A, b, rhs)
    if res is None:  # cannot happen: the box rows make the dual feasible
        raise ArithmeticError("margin program dual infeasible")
    value, _, pi = res
    point = pi[:dim]
    return MarginResult(margin=value, point=point)


def strictly_feasible(G, h, bound=1) -> Optional[List[Fraction]]:
    """A point of ``{x : G x < h, |x_i| < bound}`` or None if it is empty."""
    res = max_margin(G, h, bound)
    return res.point if res.feasible else None
