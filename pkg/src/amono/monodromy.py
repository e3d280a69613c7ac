"""Mellin-Barnes bases, transition matrices and local monodromy generators."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .cyclotomic import CycMatrix, CycNumber, cyc_matrix_inverse, e_of
from .errors import NoMBBasis, NoUnimodularIndexSet, Singular, SingularTransition, ValidationError
from .polyhedral import (
    Chamber,
    Zonotope,
    common_translate_point,
    integer_points_in_difference_body,
)
from .system import ASystem, GammaChoice, IndexSet, enumerate_index_sets

Vector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class MBBasis:
    """D zonotope points with integer differences and their argument vectors.

    ``thetas[i]`` is Theta_i / 2 pi, so that ``B . thetas[i] == points[i]``.
    """

    points: Tuple[Vector, ...]
    thetas: Tuple[Vector, ...]
    support: Optional[Tuple[int, ...]] = None

    @property
    def size(self) -> int:
        return len(self.points)

    def loop(self, j: int) -> Tuple[int, ...]:
        """The integer vector (Theta_j - Theta_1) / 2 pi."""
        return tuple(int(a - b) for a, b in zip(self.thetas[j], self.thetas[0]))


def thread_count() -> int:
    raw = os.environ.get("AMONO_THREADS", "0").strip() or "0"
    n = int(raw)
    if n <= 0:
        n = os.cpu_count() or 1
    return n


def unimodular_index_set(sys: ASystem) -> IndexSet:
    for I in enumerate_index_sets(sys):
        if I.delta == 1:
            return I
    raise NoUnimodularIndexSet("no d columns of B with determinant +-1")


def mb_basis_from_thetas(sys: ASystem, thetas: Sequence[Sequence], D: int, zonotope: Zonotope = None) -> MBBasis:
    """Check user-supplied argument vectors (divided by 2 pi) and wrap them."""
    Z = zonotope or Zonotope.of_matrix(sys.B)
    thetas = [tuple(linalg.to_fraction(x) for x in t) for t in thetas]
    if len(thetas) != D:
        raise ValidationError("expected %d argument vectors, got %d" % (D, len(thetas)))
    if any(len(t) != sys.N for t in thetas):
        raise ValidationError("argument vectors must have length N = %d" % sys.N)
    for t in thetas[1:]:
        if any((a - b).denominator != 1 for a, b in zip(t, thetas[0])):
            raise ValidationError("argument vectors must differ by integer vectors")
    points = [tuple(linalg.matvec(sys.B, t)) for t in thetas]
    if len(set(points)) != D:
        raise ValidationError("argument vectors give coinciding zonotope points")
    for p in points:
        if not Z.contains(p):
            raise ValidationError("point %s is not inside the open zonotope" % (list(map(str, p)),))
    return MBBasis(points=tuple(points), thetas=tuple(thetas))


def mb_basis_from_points(sys: ASystem, points: Sequence[Sequence], zonotope: Zonotope = None) -> MBBasis:
    """Argument vectors for given zonotope points, supported on a unimodular index set."""
    Z = zonotope or Zonotope.of_matrix(sys.B)
    points = [tuple(linalg.to_fraction(x) for x in p) for p in points]
    for p in points:
        if not Z.contains(p):
            raise ValidationError("point %s is not inside the open zonotope" % (list(map(str, p)),))
        if any((a - b).denominator != 1 for a, b in zip(p, points[0])):
            raise ValidationError("zonotope points must differ by integer vectors")
    if len(set(points)) != len(points):
        raise ValidationError("zonotope points must be distinct")
    I = unimodular_index_set(sys)
    BI = [[sys.B[k][i] for i in I.I] for k in range(sys.d)]
    thetas = []
    for p in points:
        sol = linalg.solve_rational(BI, list(p))
        t = [Fraction(0)] * sys.N
        for i, v in zip(I.I, sol):
            t[i] = v
        thetas.append(tuple(t))
    return MBBasis(points=tuple(points), thetas=tuple(thetas), support=I.I)


def _shift_order(n):
    return (sum(abs(x) for x in n), tuple(-x for x in n))


def find_translate_clique(Z: Zonotope, size: int):
    """Shifts 0 = n_1, ..., n_size and a point q with q + n_i in Z for all i."""
    cands = sorted(integer_points_in_difference_body(Z), key=_shift_order)
    if size == 1:
        return [tuple([0] * Z.dim)], common_translate_point(Z, [[0] * Z.dim])
    cset = set(cands)
    zero = tuple([0] * Z.dim)

    def compatible(a, b):
        return tuple(x - y for x, y in zip(a, b)) in cset

    def extend(chosen, start):
        if len(chosen) == size:
            q = common_translate_point(Z, chosen)
            return (chosen, q) if q is not None else None
        for idx in range(start, len(cands)):
            n = cands[idx]
            if not all(c == zero or compatible(n, c) for c in chosen):
                continue
            trial = chosen + [n]
            if common_translate_point(Z, trial) is None:
                continue
            found = extend(trial, idx + 1)
            if found is not None:
                return found
        return None

    return extend([zero], 0) or (None, None)


def find_mb_basis(sys: ASystem, D: int, thetas=None, zonotope: Zonotope = None) -> MBBasis:
    """A Mellin-Barnes basis: D points of the open zonotope with integer differences.

    With ``thetas`` given they are validated and used as is. Otherwise the
    integer translates of Z_B meeting Z_B are searched exhaustively for D of
    them (including Z_B itself) with a common interior point; NoMBBasis is
    raised when none exists.
    """
    Z = zonotope or Zonotope.of_matrix(sys.B)
    if thetas is not None:
        return mb_basis_from_thetas(sys, thetas, D, Z)
    shifts, q = find_translate_clique(Z, D)
    if shifts is None:
        raise NoMBBasis("the zonotope Z_B holds no %d points with integer coordinate differences" % D)
    points = [tuple(a + b for a, b in zip(q, n)) for n in shifts]
    return mb_basis_from_points(sys, points, Z)


@dataclass(frozen=True)
class TransitionMatrix:
    chamber: Chamber
    matrix: CycMatrix
    inverse: CycMatrix
    column_order: Tuple[GammaChoice, ...]


@dataclass(frozen=True)
class MonodromyGenerator:
    chamber: Chamber
    loop: Tuple[int, ...]
    matrix: CycMatrix


def chamber_choices(chamber: Chamber, choices_by_set: Dict[Tuple[int, ...], List[GammaChoice]]) -> List[GammaChoice]:
    out = []
    for I in chamber.index_sets:
        out.extend(choices_by_set[I])
    return out


def x_vector(mb: MBBasis, gamma: Sequence[Fraction], order: int) -> List[CycNumber]:
    """(1, e(loop_2 . gamma), ..., e(loop_D . gamma)) for one exponent vector."""
    out = []
    for j in range(mb.size):
        n = mb.loop(j)
        out.append(e_of(sum((a * g for a, g in zip(n, gamma)), Fraction(0)), order))
    return out


def transition_matrix(sys: ASystem, mb: MBBasis, chamber: Chamber, choices, order: int) -> TransitionMatrix:
    cols = tuple(choices)
    if len(cols) != mb.size:
        raise ValueError("chamber carries %d gamma choices, basis has %d elements" % (len(cols), mb.size))
    vecs = [x_vector(mb, g.gamma, order) for g in cols]
    X = CycMatrix([[vecs[k][j] for k in range(len(cols))] for j in range(mb.size)], order)
    try:
        Xinv = cyc_matrix_inverse(X)
    except Singular as exc:
        raise SingularTransition("transition matrix of chamber rho = %s is singular" % (chamber.rho,)) from exc
    return TransitionMatrix(chamber=chamber, matrix=X, inverse=Xinv, column_order=cols)


def character_diagonal(tm: TransitionMatrix, n: Sequence[int], order: int) -> List[CycNumber]:
    return [e_of(sum((a * x for a, x in zip(n, g.gamma)), Fraction(0)), order) for g in tm.column_order]


def monodromy_generator(tm: TransitionMatrix, n: Sequence[int], order: int) -> MonodromyGenerator:
    """X chi X^{-1} for the loop c(n), chi the diagonal of local characters."""
    chi = character_diagonal(tm, n, order)
    X = tm.matrix
    scaled = CycMatrix([[x * c for x, c in zip(row, chi)] for row in X.rows], order)
    return MonodromyGenerator(chamber=tm.chamber, loop=tuple(n), matrix=scaled @ tm.inverse)


@dataclass
class GeneratorSet:
    generators: List[MonodromyGenerator]
    occurrences: List[List[Tuple[int, Tuple[int, ...]]]]
    raw_count: int


def _unit(N, k):
    return tuple(int(i == k) for i in range(N))


def _chamber_job(args):
    sys, mb, chamber, choices, order = args
    tm = transition_matrix(sys, mb, chamber, choices, order)
    return tm, [monodromy_generator(tm, _unit(sys.N, k), order) for k in range(sys.N)]


def build_chamber_data(sys: ASystem, mb: MBBasis, chambers, choices_by_set, order: int):
    """Transition matrices and unit-loop generators of every chamber, in chamber order."""
    jobs = [(sys, mb, ch, chamber_choices(ch, choices_by_set), order) for ch in chambers]
    workers = min(thread_count(), len(jobs))
    if workers > 1 and len(jobs) >= 8:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_chamber_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_chamber_job(j) for j in jobs]


def generator_set(chamber_data) -> GeneratorSet:
    """Unit-loop generators of all chambers, deduplicated by exact equality."""
    seen: Dict[tuple, int] = {}
    gens: List[MonodromyGenerator] = []
    occ: List[List[Tuple[int, Tuple[int, ...]]]] = []
    raw = 0
    for ci, (_, chamber_gens) in enumerate(chamber_data):
        for g in chamber_gens:
            raw += 1
            key = g.matrix.key()
            if key in seen:
                occ[seen[key]].append((ci, g.loop))
                continue
            seen[key] = len(gens)
            gens.append(g)
            occ.append([(ci, g.loop)])
    return GeneratorSet(generators=gens, occurrences=occ, raw_count=raw)
