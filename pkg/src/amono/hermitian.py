"""Orthogonality graph, invariant Hermitian form, signature and the diagonal-pairing check.

The form is searched as H = Y^* diag(lambda) Y with Y the inverse transition
matrix of a reference chamber. Every Hermitian H making that chamber's local
basis orthogonal has this shape, so nothing is lost; the unknowns drop from
D^2 entries to D.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .cyclotomic import CycMatrix, CycNumber, e_of
from .errors import DegenerateForm, NoInvariantForm, NonUniqueForm
from .monodromy import MBBasis, MonodromyGenerator, TransitionMatrix, x_vector
from .polyhedral import Cone, cones_intersect
from .system import ASystem, GammaChoice


def orthogonality_graph(sys: ASystem, choices: Sequence[GammaChoice], chambers=None) -> List[Tuple[int, int]]:
    """Index pairs (i, j), i < j, of gamma choices whose open cones b_I, b_J meet.

    Two open full-dimensional cones meet iff some chamber contains both, so
    with ``chambers`` given the test is a lookup; otherwise each pair of
    cones is decided by the exact margin program.
    """
    owners = sorted({g.owner.I for g in choices})
    meets: Dict[Tuple[tuple, tuple], bool] = {(I, I): True for I in owners}
    if chambers is not None:
        for ch in chambers:
            for I in ch.index_sets:
                for J in ch.index_sets:
                    meets[(I, J)] = True
    else:
        cones = {I: Cone.from_columns(sys.B, I) for I in owners}
        for x, I in enumerate(owners):
            for J in owners[x + 1:]:
                meets[(I, J)] = meets[(J, I)] = cones_intersect(cones[I], cones[J])
    edges = []
    for i, gi in enumerate(choices):
        for j in range(i + 1, len(choices)):
            if meets.get((gi.owner.I, choices[j].owner.I), False):
                edges.append((i, j))
    return edges


class _Echelon:
    """Incremental reduced row echelon form over a cyclotomic field."""

    def __init__(self, ncols: int, order: int):
        self.ncols = ncols
        self.order = order
        self.rows: List[List[CycNumber]] = []
        self.pivots: List[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, row: Sequence[CycNumber]) -> bool:
        row = [x.lift(self.order) for x in row]
        for r, p in zip(self.rows, self.pivots):
            c = row[p]
            if not c.is_zero():
                row = [a - c * b for a, b in zip(row, r)]
        piv = next((k for k, x in enumerate(row) if not x.is_zero()), None)
        if piv is None:
            return False
        inv = row[piv].inv()
        row = [x * inv for x in row]
        for i, r in enumerate(self.rows):
            c = r[piv]
            if not c.is_zero():
                self.rows[i] = [a - c * b for a, b in zip(r, row)]
        self.rows.append(row)
        self.pivots.append(piv)
        return True

    def nullspace(self) -> List[List[CycNumber]]:
        free = [k for k in range(self.ncols) if k not in self.pivots]
        zero = CycNumber.zero(self.order)
        one = CycNumber.one(self.order)
        out = []
        for f in free:
            v = [zero] * self.ncols
            v[f] = one
            for r, p in zip(self.rows, self.pivots):
                v[p] = -r[f]
            out.append(v)
        return out


def _pairing_row(u: Sequence[CycNumber], w: Sequence[CycNumber]) -> List[CycNumber]:
    """Coefficients of conj(w)^t diag(lambda) u as a linear form in lambda."""
    return [a * b.conj() for a, b in zip(u, w)]


def sine_product(values: Sequence[Fraction], order: int) -> CycNumber:
    """prod sin(pi x) for the given rationals, exactly.

    With m factors the product is (2i)^(-m) times a product of differences of
    roots of unity; for even m the i^m is rational, so the result stays in the
    field of order ``lcm(2 * denominators)`` and only odd m needs i.
    """
    m = len(values)
    n = order
    for x in values:
        n = lcm(n, 2 * x.denominator)
    if m % 2:
        n = lcm(n, 4)
    acc = CycNumber.one(n)
    for x in values:
        acc = acc * (e_of(x / 2, n) - e_of(-x / 2, n))
    if m % 2 == 0:
        return acc * CycNumber.rational(Fraction((-1) ** (m // 2), 2 ** m), n)
    i_inv = e_of(Fraction(-1, 4), n)
    return acc * (i_inv ** m) * CycNumber.rational(Fraction(1, 2 ** m), n)


def conjecture_target(sys: ASystem, g: GammaChoice, order: int = 1) -> CycNumber:
    """Delta_I (-1)^(sum_{i in I} gamma_i) prod_{i not in I} sin(pi gamma_i).

    The sign factor makes the value independent of the representative of
    gamma modulo L; it is 1 for the canonical choice (gamma vanishing on I).
    """
    I = g.owner.I
    sign = (-1) ** int(sum(g.gamma[i] for i in I) % 2)
    off = [g.gamma[i] for i in range(sys.N) if i not in I]
    return sine_product(off, order) * (g.owner.delta * sign)


@dataclass
class HermitianForm:
    H: CycMatrix
    normalization: GammaChoice
    uniqueness_flag: bool
    orthogonality_dimension: int
    joint_dimension: int
    lam: List[CycNumber] = field(repr=False, default_factory=list)


def _hermitianize(lam: List[CycNumber]) -> List[CycNumber]:
    cand = [x + x.conj() for x in lam]
    if any(not x.is_zero() for x in cand):
        return cand
    order = lcm(lam[0].order, 4)
    i = e_of(Fraction(1, 4), order)
    return [x.lift(order) * i for x in lam]


def invariant_hermitian_form(
    sys: ASystem,
    mb: MBBasis,
    choices: Sequence[GammaChoice],
    edges: Sequence[Tuple[int, int]],
    transitions: Sequence[TransitionMatrix],
    generators: Sequence[MonodromyGenerator] = (),
    order: int = 1,
) -> HermitianForm:
    """The Hermitian form making all orthogonal pairs X_I, X_J orthogonal.

    Invariance under the generators of a chamber amounts to orthogonality
    of the local basis vectors with different characters, so those rows are
    added to the same system. The solution is normalized so that the pairing
    at the lexicographically least index set (canonical coset) equals the
    conjectured diagonal value there, and then every generator is checked
    exactly.
    """
    D = mb.size
    ref = transitions[0]
    Y = ref.inverse
    X = [x_vector(mb, g.gamma, order) for g in choices]
    U = [[sum((Y.rows[k][j] * X[c][j] for j in range(D)), CycNumber.zero(order)) for k in range(D)] for c in range(len(choices))]

    ech = _Echelon(D, order)
    for i, j in edges:
        ech.add(_pairing_row(U[i], U[j]))
    orth_dim = D - ech.rank

    # invariance rows, written in the same lambda coordinates
    pos = {g.label: c for c, g in enumerate(choices)}
    for tm in transitions:
        cols = [pos[g.label] for g in tm.column_order]
        for a in range(D):
            for b in range(a + 1, D):
                ga, gb = tm.column_order[a].gamma, tm.column_order[b].gamma
                if any((x - y).denominator != 1 for x, y in zip(ga, gb)):
                    ech.add(_pairing_row(U[cols[a]], U[cols[b]]))
    joint_dim = D - ech.rank
    if joint_dim == 0:
        raise NoInvariantForm("the orthogonality and invariance constraints admit only H = 0")
    if joint_dim > 1:
        raise NonUniqueForm("invariant Hermitian forms make up a %d-dimensional space" % joint_dim, joint_dim)
    lam = _hermitianize(ech.nullspace()[0])
    n = lam[0].order

    # H = Y^* diag(lam) Y
    Yl = Y.lift(n)
    Ys = Yl.conj_transpose()
    LY = CycMatrix([[lam[k] * x for x in Yl.rows[k]] for k in range(D)], n)
    H = Ys @ LY

    base = min((c for c, g in enumerate(choices) if g.coset_id == 0), key=lambda c: choices[c].owner.I)
    g0 = choices[base]
    p0 = pairing(H, X[base])
    if p0.is_zero():
        raise DegenerateForm("the normalizing pairing at I = %s vanishes" % ([i + 1 for i in g0.owner.I],))
    target = conjecture_target(sys, g0, n)
    scale = target / p0
    H = H * scale
    lam = [x * scale for x in lam]

    if H.conj_transpose() != H:
        raise AssertionError("computed form is not Hermitian")
    for g in generators:
        gm = g.matrix
        if gm.conj_transpose() @ H @ gm != H:
            raise NoInvariantForm("form is not invariant under the generator for loop %s at rho = %s" % (g.loop, g.chamber.rho))
    return HermitianForm(
        H=H,
        normalization=g0,
        uniqueness_flag=orth_dim == 1,
        orthogonality_dimension=orth_dim,
        joint_dimension=joint_dim,
        lam=lam,
    )


def pairing(H: CycMatrix, x: Sequence[CycNumber], y: Optional[Sequence[CycNumber]] = None) -> CycNumber:
    """conj(y)^t H x (y defaults to x)."""
    if y is None:
        y = x
    n = H.order
    x = [v.lift(lcm(n, v.order)) for v in x]
    acc = CycNumber.zero(n)
    for i, row in enumerate(H.rows):
        s = CycNumber.zero(n)
        for hij, xj in zip(row, x):
            if not hij.is_zero() and not xj.is_zero():
                s = s + hij * xj
        if not s.is_zero():
            acc = acc + y[i].conj() * s
    return acc


@dataclass
class ConjectureRow:
    choice: GammaChoice
    pairing: float
    target: float
    deviation: float
    passed: bool


@dataclass
class ConjectureReport:
    rows: List[ConjectureRow]
    tolerance: float

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def max_deviation(self) -> float:
        return max((r.deviation for r in self.rows), default=0.0)

    @property
    def pass_count(self) -> int:
        return sum(r.passed for r in self.rows)


def _float_target(sys: ASystem, g: GammaChoice) -> float:
    I = g.owner.I
    sign = (-1) ** int(sum(g.gamma[i] for i in I) % 2)
    val = float(g.owner.delta * sign)
    for i in range(sys.N):
        if i not in I:
            val *= math.sin(math.pi * float(g.gamma[i]))
    return val


def check_signature_conjecture(
    sys: ASystem, mb: MBBasis, form: HermitianForm, choices: Sequence[GammaChoice], order: int, tol: float = 1e-8
) -> ConjectureReport:
    """Compare conj(X_I)^t H X_I with the conjectured value for every gamma choice.

    Both sides are evaluated in floating point; the relative deviation is
    measured against max(1, |target|). Never raises.
    """
    rows = []
    for g in choices:
        p = complex(pairing(form.H, x_vector(mb, g.gamma, order)))
        t = _float_target(sys, g)
        dev = abs(p - t) / max(1.0, abs(t))
        rows.append(ConjectureRow(choice=g, pairing=p.real, target=t, deviation=dev, passed=dev <= tol))
    return ConjectureReport(rows=rows, tolerance=tol)


@dataclass(frozen=True)
class Signature:
    positives: int
    negatives: int
    min_abs_eigenvalue: float

    def as_tuple(self) -> Tuple[int, int]:
        return (self.positives, self.negatives)

    def negated(self) -> "Signature":
        """Signature of -H."""
        return Signature(self.negatives, self.positives, self.min_abs_eigenvalue)

    def canonical(self) -> Tuple[int, int]:
        """The counts with the larger one first: the signature of the form up
        to a real scalar of either sign."""
        return (max(self.positives, self.negatives), min(self.positives, self.negatives))


def signature(H, tol: float = 1e-9) -> Signature:
    """Eigenvalue sign counts of the float embedding of a Hermitian matrix.

    ``tol`` is relative to the largest |eigenvalue|; anything smaller counts
    as zero and raises DegenerateForm.
    """
    M = np.array(H.to_complex() if isinstance(H, CycMatrix) else H, dtype=complex)
    M = (M + M.conj().T) / 2
    ev = np.linalg.eigvalsh(M)
    top = float(np.max(np.abs(ev))) if ev.size else 0.0
    small = float(np.min(np.abs(ev))) if ev.size else 0.0
    if top == 0.0 or small < tol * top:
        raise DegenerateForm("eigenvalue %.3g is within tolerance of zero (largest %.3g)" % (small, top))
    return Signature(positives=int(np.sum(ev > 0)), negatives=int(np.sum(ev < 0)), min_abs_eigenvalue=small)
