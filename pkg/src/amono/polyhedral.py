"""Open simplicial cones, secondary-fan chambers and the open zonotope Z_B.

Everything is decided exactly: membership by rational solves, emptiness of
open polyhedra by the margin program in :mod:`amono.lp`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import (
    det,
    dot,
    hyperplane_normal,
    inverse_rational,
    primitive_integer,
    rank,
    solve_rational,
    to_fraction,
    transpose,
)
from .errors import DegenerateDirection
from .lp import max_margin

IndexTuple = Tuple[int, ...]


@dataclass(frozen=True)
class Cone:
    """The open cone of strictly positive combinations of ``generators``."""

    generators: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def from_columns(cls, B, I: Sequence[int]) -> "Cone":
        return cls(tuple(tuple(to_fraction(B[k][i]) for k in range(len(B))) for i in I))

    @property
    def dim(self) -> int:
        return len(self.generators[0])

    def barycentric_rows(self) -> List[List[Fraction]]:
        """Rows of M^{-1}, M having the generators as columns."""
        return inverse_rational(transpose([list(g) for g in self.generators]))


def cone_contains(c: Cone, x) -> bool:
    lam = solve_rational(transpose([list(g) for g in c.generators]), [to_fraction(v) for v in x])
    return all(v > 0 for v in lam)


def cones_intersect(c1: Cone, c2: Cone) -> bool:
    G = [[-v for v in row] for row in c1.barycentric_rows() + c2.barycentric_rows()]
    return max_margin(G, [0] * len(G)).feasible


def column(B, i) -> List[int]:
    return [B[k][i] for k in range(len(B))]


def nonzero_index_sets(B) -> List[Tuple[IndexTuple, int]]:
    """All d-subsets I (0-based, sorted) with Delta_I = |det (b_i)_{i in I}| != 0."""
    d, N = len(B), len(B[0])
    out = []
    for I in itertools.combinations(range(N), d):
        delta = abs(det([[B[k][i] for i in I] for k in range(d)]))
        if delta:
            out.append((I, delta))
    return out


def wall_normals(B) -> List[Tuple[int, ...]]:
    """Primitive normals of all hyperplanes spanned by d-1 columns of B, deduplicated."""
    d, N = len(B), len(B[0])
    normals = set()
    for S in itertools.combinations(range(N), d - 1):
        n = hyperplane_normal([column(B, i) for i in S], d)
        if n is not None:
            normals.add(tuple(n))
    return sorted(normals)


@dataclass(frozen=True)
class Chamber:
    """A full-dimensional open cone of the secondary fan.

    ``index_sets`` is the family I(rho) of (0-based) index sets whose open
    cone contains ``rho``; ``sign_key`` is the smallest sign vector of the
    wall arrangement among the regions making up the chamber.
    """

    rho: Tuple[int, ...]
    index_sets: Tuple[IndexTuple, ...]
    sign_key: Tuple[int, ...] = field(compare=False, default=())


def _region_system(walls, signs):
    G = [[-s * v for v in w] for w, s in zip(walls, signs)]
    return G, [0] * len(G)


def arrangement_regions(walls: Sequence[Sequence[int]], dim: int) -> List[Tuple[Tuple[int, ...], List[Fraction]]]:
    """Regions of a central hyperplane arrangement as (sign vector, interior point).

    Built hyperplane by hyperplane; a region is split when the open piece on
    the side opposite its current interior point is non-empty.
    """
    regions = [((), None)]
    for j, w in enumerate(walls):
        new = []
        for signs, p in regions:
            side = None
            if p is not None:
                v = dot(w, p)
                side = 1 if v > 0 else (-1 if v < 0 else None)
            for s in (1, -1):
                if s == side:
                    new.append((signs + (s,), p))
                    continue
                G, h = _region_system(walls[: j + 1], signs + (s,))
                res = max_margin(G, h)
                if res.feasible:
                    new.append((signs + (s,), res.point))
        regions = new
    if not walls:
        regions = [((), [Fraction(1)] * dim)]
    return regions


def index_family(cones: Dict[IndexTuple, Cone], rho) -> Tuple[IndexTuple, ...]:
    return tuple(sorted(I for I, c in cones.items() if cone_contains(c, rho)))


def enumerate_chambers(B) -> List[Chamber]:
    """All chambers of the secondary fan of the columns of B.

    Each region of the wall arrangement lies inside a single chamber; regions
    are grouped by their family I(rho). Chambers are ordered by the smallest
    sign vector among their regions. Results are cached per B.
    """
    return list(_chambers_cached(tuple(tuple(int(x) for x in row) for row in B)))


@lru_cache(maxsize=32)
def _chambers_cached(B) -> Tuple[Chamber, ...]:
    d = len(B)
    walls = wall_normals(B)
    cones = {I: Cone.from_columns(B, I) for I, _ in nonzero_index_sets(B)}
    groups: Dict[Tuple[IndexTuple, ...], Tuple[Tuple[int, ...], List[Fraction]]] = {}
    for signs, p in arrangement_regions(walls, d):
        fam = index_family(cones, p)
        best = groups.get(fam)
        if best is None or signs < best[0]:
            groups[fam] = (signs, p)
    chambers = [
        Chamber(rho=tuple(primitive_integer(p)), index_sets=fam, sign_key=signs)
        for fam, (signs, p) in groups.items()
    ]
    chambers.sort(key=lambda c: c.sign_key)
    return tuple(chambers)


def is_generic_direction(B, rho) -> bool:
    """True iff rho lies on none of the walls of the cones b_I."""
    return all(dot(w, rho) != 0 for w in wall_normals(B))


def family_at(B, rho) -> Tuple[IndexTuple, ...]:
    """I(rho) for a convergence direction off every wall; DegenerateDirection otherwise."""
    if len(rho) != len(B) or not is_generic_direction(B, rho):
        raise DegenerateDirection("rho = %s lies on a wall of the secondary fan" % (tuple(rho),))
    cones = {I: Cone.from_columns(B, I) for I, _ in nonzero_index_sets(B)}
    return index_family(cones, [to_fraction(v) for v in rho])


class Zonotope:
    """The open zonotope ``{scale * sum mu_i b_i : -1 < mu_i < 1}``."""

    def __init__(self, columns: Sequence[Sequence], scale=Fraction(1, 4)):
        self.columns = [tuple(to_fraction(v) for v in c) for c in columns]
        self.scale = to_fraction(scale)
        self.dim = len(self.columns[0])
        if rank(self.columns) != self.dim:
            raise ValueError("zonotope generators do not span R^%d" % self.dim)
        self._normals = None
        self._widths = None

    @classmethod
    def of_matrix(cls, B, scale=Fraction(1, 4)) -> "Zonotope":
        return cls([column(B, i) for i in range(len(B[0]))], scale)

    @property
    def normals(self) -> List[Tuple[int, ...]]:
        if self._normals is None:
            self._normals = zonotope_facet_normals(self)
        return self._normals

    @property
    def widths(self) -> List[Fraction]:
        """Support value ``scale * sum |b_i . x|`` for every facet normal x."""
        if self._widths is None:
            self._widths = [self.scale * sum(abs(dot(c, x)) for c in self.columns) for x in self.normals]
        return self._widths

    def contains(self, q) -> bool:
        return zonotope_contains(self, q)


def zonotope_facet_normals(Z: Zonotope) -> List[Tuple[int, ...]]:
    d = Z.dim
    normals = set()
    for S in itertools.combinations(range(len(Z.columns)), d - 1):
        n = hyperplane_normal([list(Z.columns[i]) for i in S], d)
        if n is not None:
            normals.add(tuple(n))
    return sorted(normals)


def zonotope_contains(Z: Zonotope, q) -> bool:
    q = [to_fraction(v) for v in q]
    return all(abs(dot(q, x)) < w for x, w in zip(Z.normals, Z.widths))


def common_translate_point(Z: Zonotope, shifts: Sequence[Sequence[int]]) -> Optional[List[Fraction]]:
    """A point q with q + n in Z for every shift n, or None.

    The translates share the facet normals, so the intersection is a single
    slab per normal with the tightest bounds.
    """
    G, h = [], []
    for x, w in zip(Z.normals, Z.widths):
        vals = [dot(n, x) for n in shifts]
        G.append(list(x))
        h.append(w - max(vals))
        G.append([-v for v in x])
        h.append(w + min(vals))
    bound = sum(Z.widths) + 1
    res = max_margin(G, h, bound)
    return res.point if res.feasible else None


def integer_points_in_difference_body(Z: Zonotope) -> List[Tuple[int, ...]]:
    """Nonzero integer n with Z and Z - n overlapping, i.e. n in the open body 2Z."""
    ext = []
    for k in range(Z.dim):
        ext.append(2 * Z.scale * sum(abs(c[k]) for c in Z.columns))
    ranges = []
    for e in ext:
        m = int(e)
        if m == e:
            m -= 1
        ranges.append(range(-m, m + 1))
    out = []
    for n in itertools.product(*ranges):
        if any(n) and all(abs(dot(n, x)) < 2 * w for x, w in zip(Z.normals, Z.widths)):
            out.append(n)
    return out
