"""Built-in example systems.

Every entry is a SystemSpec with exact rational defaults. Parametric families
(``lauricella_fd(d)``) are generated on demand.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Dict, List, Sequence

from .errors import UnknownExample
from .spec_io import SystemSpec

F = Fraction


def horn_g3(a=F(1, 3), b=F(1, 5)) -> SystemSpec:
    """Horn's G3. The other common orientation of A has its two rows swapped
    (and one row negated); both give the same lattice and the same B."""
    a, b = F(a), F(b)
    return SystemSpec(
        name="g3",
        A=[[-1, 0, 1, 2], [2, 1, 0, -1]],
        alpha=[-a, -b],
        B=[[1, -2, 1, 0], [0, 1, -2, 1]],
        mb_thetas=[
            [F(-2, 5), 0, 0, F(-2, 5)],
            [F(3, 5), 0, 0, F(-2, 5)],
            [F(-2, 5), 0, 0, F(3, 5)],
        ],
        description="Horn G3 at a=%s, b=%s" % (a, b),
    )


E36_A = [
    [0, 1, 0, 0, 1, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 1, 0, 0, 1],
    [1, 1, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 1, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 1, 1],
]

E36_B = [
    [1, 0, -1, 0, 0, 0, -1, 0, 1],
    [1, -1, 0, 0, 0, 0, -1, 1, 0],
    [1, 0, -1, -1, 0, 1, 0, 0, 0],
    [1, -1, 0, -1, 1, 0, 0, 0, 0],
]

# p, p+(0,0,0,1), p+(1,0,0,0), p+(1,0,1,1), p+(1,1,0,1), p+(1,1,1,1)
E36_WITNESS_BASE = (F(-9, 10), F(-2, 5), F(-1, 2), F(-7, 10))
E36_WITNESS_SHIFTS = ((0, 0, 0, 0), (0, 0, 0, 1), (1, 0, 0, 0), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 1))


def e36_witness_points() -> List[tuple]:
    return [tuple(p + s for p, s in zip(E36_WITNESS_BASE, sh)) for sh in E36_WITNESS_SHIFTS]


def e36_alpha(a1, a2, a4, a5, a6) -> List[Fraction]:
    a1, a2, a4, a5, a6 = map(F, (a1, a2, a4, a5, a6))
    return [a1, a2, 2 - a4, 2 - a5, 2 - a6]


def aomoto_gelfand_e36(a1=F(1, 10), a2=F(1, 10), a4=F(1, 10), a5=F(1, 10), a6=F(1, 10), witness=False) -> SystemSpec:
    """E(3,6), six lines in the projective plane. alpha_3 is 3 minus the others."""
    spec = SystemSpec(
        name="e36",
        A=[list(r) for r in E36_A],
        alpha=e36_alpha(a1, a2, a4, a5, a6),
        B=[list(r) for r in E36_B],
        description="Aomoto-Gelfand E(3,6) at alpha_1,2,4,5,6 = %s" % ", ".join(map(str, (a1, a2, a4, a5, a6))),
    )
    if witness:
        spec.mb_points = e36_witness_points()
    return spec


def fd_matrix(d: int) -> List[List[int]]:
    """Columns e_1..e_{d+2}, then e_1 + e_{k+1} - e_{d+2} for k = 1..d."""
    n = d + 2
    cols = [[int(i == j) for i in range(n)] for j in range(n)]
    for k in range(1, d + 1):
        c = [0] * n
        c[0] += 1
        c[k] += 1
        c[n - 1] -= 1
        cols.append(c)
    return [[c[i] for c in cols] for i in range(n)]


def fd_b_matrix(d: int) -> List[List[int]]:
    N = 2 * d + 2
    rows = []
    for k in range(1, d + 1):
        r = [0] * N
        r[0] = -1
        r[k] = -1
        r[d + 1] = 1
        r[d + 1 + k] = 1
        rows.append(r)
    return rows


def fd_alpha(a, bs: Sequence, b0) -> List[Fraction]:
    """(-a, -b_1..-b_d, c-1) with c = a - b_0."""
    a, b0 = F(a), F(b0)
    c = a - b0
    return [-a] + [-F(b) for b in bs] + [c - 1]


# default b_1, b_2, ...; all denominators divide 60 so the cyclotomic field stays small
_FD_B = (F(1, 4), F(2, 5), F(1, 6), F(3, 4), F(3, 5), F(5, 6))


def lauricella_fd(d: int, a=None, bs=None, b0=None) -> SystemSpec:
    """Lauricella F_D in d variables; d = 2 is Appell F1."""
    if d < 1:
        raise UnknownExample("lauricella_fd needs d >= 1")
    a = F(-1, 3) if a is None else F(a)
    if bs is None:
        bs = [_FD_B[k % len(_FD_B)] + k // len(_FD_B) for k in range(d)]
    b0 = F(1, 5) if b0 is None else F(b0)
    return SystemSpec(
        name="lauricella_fd(%d)" % d,
        A=fd_matrix(d),
        alpha=fd_alpha(a, bs, b0),
        B=fd_b_matrix(d),
        description="Lauricella F_D, d=%d, a=%s, b_0=%s, b=(%s)" % (d, a, b0, ", ".join(map(str, bs))),
    )


def appell_f4(a=F(1, 3), b=F(1, 5), c=F(3, 7), c2=F(5, 11)) -> SystemSpec:
    """Appell F4; columns ordered (a, b, c, c', m!, n!) in the lattice rows."""
    a, b, c, c2 = map(F, (a, b, c, c2))
    return SystemSpec(
        name="appell_f4",
        A=[
            [1, 0, 0, 0, 1, 1],
            [0, 1, 0, 0, 1, 1],
            [0, 0, 1, 0, -1, 0],
            [0, 0, 0, 1, 0, -1],
        ],
        alpha=[-a, -b, c - 1, c2 - 1],
        B=[[-1, -1, 1, 0, 1, 0], [-1, -1, 0, 1, 0, 1]],
        description="Appell F4 at a=%s, b=%s, c=%s, c'=%s" % (a, b, c, c2),
    )


def gauss_2f1(a=F(1, 3), b=F(1, 5), c=F(4, 7)) -> SystemSpec:
    a, b, c = map(F, (a, b, c))
    return SystemSpec(
        name="gauss_2f1",
        A=[[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, -1]],
        alpha=[-a, -b, c - 1],
        B=[[-1, -1, 1, 1]],
        description="Gauss 2F1 at a=%s, b=%s, c=%s" % (a, b, c),
    )


_FIXED: Dict[str, Callable[[], SystemSpec]] = {
    "g3": horn_g3,
    "e36": aomoto_gelfand_e36,
    "appell_f1": lambda: _renamed(lauricella_fd(2), "appell_f1"),
    "appell_f4": appell_f4,
    "gauss_2f1": gauss_2f1,
}


def _renamed(spec: SystemSpec, name: str) -> SystemSpec:
    spec.name = name
    return spec


_FD_RE = re.compile(r"^lauricella_fd\((\d+)\)$")


def names() -> List[str]:
    return sorted(list(_FIXED) + ["lauricella_fd(d)"])


def catalog(name: str) -> SystemSpec:
    key = name.strip().lower()
    if key in _FIXED:
        return _FIXED[key]()
    m = _FD_RE.match(key)
    if m:
        return lauricella_fd(int(m.group(1)))
    raise UnknownExample("unknown example %r; known: %s" % (name, ", ".join(names())))
