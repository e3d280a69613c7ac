"""Exact integer and rational linear algebra.

Matrices are plain row-major lists of lists holding ``int`` or
``fractions.Fraction`` entries. Nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

from .errors import RankDeficient, Singular

Matrix = List[List]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact input: %r" % (x,))
    return Fraction(x)


def shape(M: Sequence[Sequence]) -> Tuple[int, int]:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    return rows, cols


def copy_matrix(M) -> Matrix:
    return [list(row) for row in M]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(M) -> Matrix:
    return [list(col) for col in zip(*M)]


def matmul(A, B) -> Matrix:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v) -> list:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def is_zero_matrix(M) -> bool:
    return all(x == 0 for row in M for x in row)


def hermite_normal_form(M) -> Tuple[Matrix, Matrix]:
    """Row-style Hermite normal form with transform.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``. Pivots are
    positive, entries above a pivot lie in ``[0, pivot)`` and zero rows sit
    at the bottom.
    """
    H = [[int(x) for x in row] for row in M]
    m, n = shape(H)
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][c]))
            if p != r:
                H[r], H[p] = H[p], H[r]
                U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c] != 0:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][c] != 0:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        piv = H[r][c]
        for i in range(r):
            q = H[i][c] // piv
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return H, U


def det(M):
    """Exact determinant; Bareiss elimination for integer input."""
    n, c = shape(M)
    if n != c:
        raise ValueError("det of a non-square matrix")
    if n == 0:
        return 1
    if all(isinstance(x, int) for row in M for x in row):
        A = copy_matrix(M)
        sign = 1
        prev = 1
        for k in range(n - 1):
            if A[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
                if swap is None:
                    return 0
                A[k], A[swap] = A[swap], A[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            prev = A[k][k]
        return sign * A[n - 1][n - 1]
    A = [[to_fraction(x) for x in row] for row in M]
    result = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if A[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            A[k], A[p] = A[p], A[k]
            result = -result
        result *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
    return result


def rref(M) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    A = [[to_fraction(x) for x in row] for row in M]
    m, n = shape(A)
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M) -> int:
    if not M:
        return 0
    return len(rref(M)[1])


def nullspace(M, ncols: Optional[int] = None) -> Matrix:
    """Rational basis of ``{x : M x = 0}``, one basis vector per free column."""
    if not M:
        n = ncols if ncols is not None else 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, pivots = rref(M)
    n = shape(M)[1]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve_linear(M, rhs) -> Optional[list]:
    """A particular solution of ``M x = rhs`` or None when inconsistent."""
    m, n = shape(M)
    aug = [list(row) + [b] for row, b in zip(M, rhs)]
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x


def solve_rational(M, rhs) -> list:
    """Solve the square system ``M x = rhs`` exactly; raises Singular."""
    n, c = shape(M)
    if n != c or len(rhs) != n:
        raise ValueError("solve_rational needs a square system")
    aug = [list(row) + [b] for row, b in zip(M, rhs)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise Singular("matrix is singular")
    return [row[n] for row in R[:n]]


def inverse_rational(M) -> Matrix:
    n, c = shape(M)
    if n != c:
        raise ValueError("inverse of a non-square matrix")
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise Singular("matrix is singular")
    return [row[n:] for row in R]


def primitive_integer(v) -> List[int]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [to_fraction(x) for x in v]
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    return [x // g for x in ints]


def sign_normalize(v) -> list:
    """Flip ``v`` so that its first nonzero entry is positive."""
    for x in v:
        if x != 0:
            return list(v) if x > 0 else [-y for y in v]
    return list(v)


def hyperplane_normal(vectors, dim: int) -> Optional[List[int]]:
    """Primitive integer normal of the span of ``vectors`` when it has rank dim-1."""
    vectors = [list(v) for v in vectors]
    if rank(vectors) != dim - 1:
        return None
    ns = nullspace(vectors, ncols=dim)
    return sign_normalize(primitive_integer(ns[0]))


def kernel_basis(A) -> Matrix:
    """Z-basis of the integer kernel of ``A`` as rows, canonicalised by HNF.

    ``A`` must have full row rank; raises RankDeficient otherwise.
    """
    r, N = shape(A)
    if rank(A) < r:
        raise RankDeficient("A has rank %d < %d rows" % (rank(A), r))
    H, U = hermite_normal_form(transpose(A))
    raw = [U[i] for i in range(N) if all(x == 0 for x in H[i])]
    if not raw:
        return []
    Hk, _ = hermite_normal_form(raw)
    return [row for row in Hk if any(row)]


def same_row_lattice(M1, M2) -> bool:
    """True iff the integer row spans of M1 and M2 coincide."""
    H1 = [r for r in hermite_normal_form(M1)[0] if any(r)]
    H2 = [r for r in hermite_normal_form(M2)[0] if any(r)]
    return H1 == H2


def snf_coset_reps(M) -> List[List[Fraction]]:
    """Representatives of ``M^{-1} Z^d / Z^d`` inside ``[0, 1)^d``.

    There are exactly ``|det M|`` of them; the zero vector comes first and
    the rest are sorted lexicographically.
    """
    n, c = shape(M)
    if n != c:
        raise ValueError("snf_coset_reps needs a square matrix")
    if det([[int(x) for x in row] for row in M]) == 0:
        raise Singular("matrix is singular")
    # Z^d / M Z^d: the HNF of the column lattice is triangular with positive
    # pivots p_i, so the box 0 <= k_i < p_i is a full set of representatives.
    H, _ = hermite_normal_form(transpose(M))
    pivots = [H[i][i] for i in range(n)]
    Minv = inverse_rational(M)
    reps = []
    ks = [[]]
    for p in pivots:
        ks = [k + [j] for k in ks for j in range(p)]
    for k in ks:
        x = matvec(Minv, k)
        reps.append([xi - (xi.numerator // xi.denominator) for xi in x])
    zero = [Fraction(0)] * n
    rest = sorted(r for r in reps if r != zero)
    return [zero] + rest
