"""The A-hypergeometric input data and its combinatorics.

Column indices are 0-based throughout the library; reports print them
1-based to match the usual numbering of the columns of A and B.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .cyclotomic import CycNumber, e_of
from .errors import (
    InconsistentChambers,
    NoHomogeneityForm,
    NotSaturated,
    RankDeficient,
    ResonantParameter,
    ValidationError,
)
from .linalg import hyperplane_normal, to_fraction


@dataclass(frozen=True)
class ASystem:
    A: Tuple[Tuple[int, ...], ...]
    alpha: Tuple[Fraction, ...]
    h: Tuple[Fraction, ...]
    B: Tuple[Tuple[int, ...], ...]

    @property
    def r(self) -> int:
        return len(self.A)

    @property
    def N(self) -> int:
        return len(self.A[0])

    @property
    def d(self) -> int:
        return self.N - self.r

    def column(self, j: int) -> List[int]:
        return [row[j] for row in self.A]

    def b(self, i: int) -> List[int]:
        return [row[i] for row in self.B]


@dataclass(frozen=True)
class IndexSet:
    I: Tuple[int, ...]
    delta: int


@dataclass(frozen=True)
class GammaChoice:
    owner: IndexSet
    gamma: Tuple[Fraction, ...]
    coset_id: int

    @property
    def label(self) -> Tuple[Tuple[int, ...], int]:
        return (self.owner.I, self.coset_id)


@dataclass(frozen=True)
class LocalCharacter:
    """n -> e(n . gamma): the factor a local series picks up along the loop c(n)."""

    gamma_choice: GammaChoice

    def exponent(self, n: Sequence[int]) -> Fraction:
        return sum((ni * g for ni, g in zip(n, self.gamma_choice.gamma)), Fraction(0))

    def __call__(self, n: Sequence[int], order: Optional[int] = None) -> CycNumber:
        return e_of(self.exponent(n), order)


def validate(A, alpha, B=None) -> ASystem:
    """Check the A-set axioms and build the system; optionally adopt a given B."""
    A = [[int(x) for x in row] for row in A]
    if not A or not A[0]:
        raise ValidationError("A must be a non-empty matrix")
    r, N = len(A), len(A[0])
    if any(len(row) != N for row in A):
        raise ValidationError("rows of A have different lengths")
    alpha = [to_fraction(x) for x in alpha]
    if len(alpha) != r:
        raise ValidationError("alpha has length %d, expected r = %d" % (len(alpha), r))
    if N <= r:
        raise ValidationError("need N > r (got N = %d, r = %d)" % (N, r))
    if linalg.rank(A) < r:
        raise RankDeficient("A has rank %d < r = %d" % (linalg.rank(A), r))
    H, _ = linalg.hermite_normal_form(linalg.transpose(A))
    if [row for row in H if any(row)] != linalg.identity(r):
        raise NotSaturated("the columns of A do not span Z^%d" % r)
    h = linalg.solve_linear(linalg.transpose(A), [1] * N)
    if h is None:
        raise NoHomogeneityForm("no linear form h with h(a) = 1 on every column of A")
    kernel = linalg.kernel_basis(A)
    if B is None:
        B = kernel
    else:
        B = [[int(x) for x in row] for row in B]
        if len(B) != N - r or any(len(row) != N for row in B):
            raise ValidationError("B must be a %d x %d matrix" % (N - r, N))
        if not linalg.is_zero_matrix(linalg.matmul(A, linalg.transpose(B))):
            raise ValidationError("A . B^T is not zero")
        if not linalg.same_row_lattice(B, kernel):
            raise ValidationError("rows of B do not form a Z-basis of the relation lattice")
    return ASystem(
        A=tuple(tuple(row) for row in A),
        alpha=tuple(alpha),
        h=tuple(h),
        B=tuple(tuple(row) for row in B),
    )


def resonance_normals(sys: ASystem) -> List[Tuple[int, ...]]:
    """Primitive normals of all hyperplanes spanned by r-1 columns of A."""
    normals = set()
    for S in itertools.combinations(range(sys.N), sys.r - 1):
        f = hyperplane_normal([sys.column(j) for j in S], sys.r)
        if f is not None:
            normals.add(tuple(f))
    return sorted(normals)


def is_totally_nonresonant(sys: ASystem) -> bool:
    for f in resonance_normals(sys):
        if linalg.dot(f, sys.alpha).denominator == 1:
            return False
    return True


def enumerate_index_sets(sys: ASystem) -> List[IndexSet]:
    out = []
    for I in itertools.combinations(range(sys.N), sys.d):
        delta = abs(linalg.det([[sys.B[k][i] for i in I] for k in range(sys.d)]))
        if delta:
            out.append(IndexSet(I=I, delta=delta))
    return out


def gamma_choices(sys: ASystem, I: IndexSet) -> List[GammaChoice]:
    """The Delta_I exponent vectors attached to I, pairwise distinct modulo L.

    Choice 0 vanishes on I; the others are shifted by B^T s for the coset
    representatives s of (B_I^T)^{-1} Z^d / Z^d.
    """
    comp = [j for j in range(sys.N) if j not in I.I]
    A_comp = [[sys.A[k][j] for j in comp] for k in range(sys.r)]
    sol = linalg.solve_rational(A_comp, list(sys.alpha))
    base = [Fraction(0)] * sys.N
    for j, v in zip(comp, sol):
        base[j] = v
    M = [[sys.B[k][i] for k in range(sys.d)] for i in I.I]
    reps = linalg.snf_coset_reps(M)
    Bt = linalg.transpose(sys.B)
    out = []
    for cid, s in enumerate(reps):
        shift = linalg.matvec(Bt, s)
        gamma = tuple(g + t for g, t in zip(base, shift))
        for j in comp:
            if gamma[j].denominator == 1:
                raise ResonantParameter(
                    "gamma_%d is an integer for I = %s; the system is resonant" % (j + 1, [i + 1 for i in I.I])
                )
        out.append(GammaChoice(owner=I, gamma=gamma, coset_id=cid))
    return out


def all_gamma_choices(sys: ASystem, index_sets: Optional[List[IndexSet]] = None) -> List[GammaChoice]:
    if index_sets is None:
        index_sets = enumerate_index_sets(sys)
    out = []
    for I in index_sets:
        out.extend(gamma_choices(sys, I))
    return out


def working_order(sys: ASystem, choices: Sequence[GammaChoice]) -> int:
    """lcm of the denominators of alpha and of every gamma coordinate."""
    n = 1
    for x in sys.alpha:
        n = lcm(n, x.denominator)
    for g in choices:
        for x in g.gamma:
            n = lcm(n, x.denominator)
    return n


def rank(sys: ASystem, chambers=None) -> int:
    """The holonomic rank D, read off every chamber; raises on disagreement."""
    from .polyhedral import enumerate_chambers

    if chambers is None:
        chambers = enumerate_chambers(sys.B)
    deltas = {I.I: I.delta for I in enumerate_index_sets(sys)}
    sums = {sum(deltas[I] for I in ch.index_sets) for ch in chambers}
    if len(sums) != 1:
        raise InconsistentChambers("chambers disagree on the rank: %s" % sorted(sums))
    return sums.pop()


def congruent_mod_lattice(sys: ASystem, g1: Sequence[Fraction], g2: Sequence[Fraction]) -> bool:
    """True iff g1 - g2 lies in the relation lattice L (rows of B)."""
    diff = [a - b for a, b in zip(g1, g2)]
    if any(x.denominator != 1 for x in diff):
        return False
    coords = linalg.solve_linear(linalg.transpose(sys.B), diff)
    return coords is not None and all(c.denominator == 1 for c in coords)
