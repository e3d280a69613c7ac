"""Acceptance criteria 1-7.

Each test records its verdict in ``conftest.ACCEPTANCE``; the terminal
summary prints one PASS/FAIL line per criterion. Run directly with
``python tests/test_acceptance.py`` or as part of the full pytest run.

Signatures of the Hermitian form are only defined up to the sign of H.
The library reports the ordered counts of the H normalized by the diagonal
pairing values, plus the counts with the larger one first. Criterion 4 is
compared the way its reference table is written (larger count first);
criterion 5 is compared literally, and its two halves contradict each other
for ordered pairs, so it is reported as FAIL with the parts that cannot hold
marked as strict xfails.
"""

import itertools
import math
import random
import sys
import time
from fractions import Fraction as F

import pytest

import conftest
from amono.catalog import (
    E36_B,
    aomoto_gelfand_e36,
    appell_f4,
    catalog,
    e36_witness_points,
    horn_g3,
    lauricella_fd,
)
from amono.cyclotomic import CycMatrix, e_of
from amono.errors import NoHomogeneityForm, NoMBBasis, ResonantParameter
from amono.linalg import matmul, transpose
from amono.polyhedral import Zonotope, _chambers_cached, enumerate_chambers, nonzero_index_sets
from amono.report import run_pipeline
from amono.spec_io import SystemSpec
from amono.system import congruent_mod_lattice, is_totally_nonresonant, validate

A_, B_ = F(1, 3), F(1, 5)


def record(key, ok, detail):
    """AND the verdict into the criterion's entry; details accumulate."""
    prev = conftest.ACCEPTANCE.get(key)
    if prev is None:
        conftest.ACCEPTANCE[key] = (ok, detail)
    else:
        conftest.ACCEPTANCE[key] = (prev[0] and ok, prev[1] + "; " + detail)


def fresh_run(spec, overrides=None):
    _chambers_cached.cache_clear()
    t = time.perf_counter()
    res = run_pipeline(spec, overrides)
    return res, time.perf_counter() - t


def family_index(res, family):
    return next(i for i, c in enumerate(res.chambers) if c.index_sets == family)


# ------------------------------------------------------------------ 1


def test_criterion_1_g3_golden_matrices():
    res, dt = fresh_run(horn_g3(A_, B_))
    ab = e_of(-A_ - B_)
    ea, eb = e_of(A_), e_of(B_)
    want = {
        (((1, 2),), 0): [[0, 1, 0], [0, 0, e_of(-B_)], [ab, 0, 0]],
        (((1, 2),), 3): [[0, 0, 1], [ab, 0, 0], [0, e_of(-A_), 0]],
        (((0, 1), (0, 3), (2, 3)), 0): [[0, 1, 0], [-ea, ea + 1, 0], [-1, 1, 1]],
        (((0, 1), (0, 3), (2, 3)), 3): [[0, 0, 1], [-1, 1, 1], [-eb, 0, 1 + eb]],
    }
    equal = 0
    for (fam, loop), M in want.items():
        _, gens = res.chamber_data[family_index(res, fam)]
        equal += gens[loop].matrix == CycMatrix(M)
    ok = equal == 4 and dt < 1.0
    record(1, ok, "%d/4 generators equal exactly, %.2f s" % (equal, dt))
    assert equal == 4
    assert dt < 1.0


# ------------------------------------------------------------------ 2


def test_criterion_2_g3_combinatorics():
    res, _ = fresh_run(horn_g3(A_, B_))
    mult = sorted((len(v) for v in res.choices_by_set.values()), reverse=True)
    Z = Zonotope.of_matrix(res.system.B)
    pts = [(F(-2, 5), F(-2, 5)), (F(-2, 5), F(3, 5)), (F(3, 5), F(-2, 5))]
    inside = [Z.contains(p) for p in pts]
    ok = len(res.choices) == 10 and mult == [3, 2, 2, 1, 1, 1] and res.D == 3 and len(res.chambers) == 4 and all(inside)
    ok = ok and res.mb is not None and set(res.mb.points) == set(pts)
    record(2, ok, "|I| = %d, multiplicities %s, D = %d, %d chambers, %d/3 points inside"
           % (len(res.choices), tuple(mult), res.D, len(res.chambers), sum(inside)))
    assert ok


# ------------------------------------------------------------------ 3


def test_criterion_3_g3_hermitian_form():
    res, dt = fresh_run(horn_g3(A_, B_))
    H = res.form.H
    ab = e_of(A_ + B_)
    P = CycMatrix([[1 + ab, -ab, -ab], [-1, 1 + ab, -e_of(A_)], [-1, -e_of(B_), 1 + ab]]) * e_of(-(A_ + B_) / 2)
    n = math.lcm(H.order, P.order)
    H, P = H.lift(n), P.lift(n)
    c = H[0, 0] / P[0, 0]
    multiple = not c.is_zero() and H == P * c
    invariant = all(g.matrix.conj_transpose().lift(n) @ H @ g.matrix.lift(n) == H for g in res.generators.generators)
    ok = multiple and invariant and dt < 5.0
    record(3, ok, "H = c * reference (c ~ %.4f%+.4fi): %s; invariant under %d generators: %s; %.2f s"
           % (complex(c).real, complex(c).imag, multiple, len(res.generators.generators), invariant, dt))
    assert multiple and invariant
    assert dt < 5.0


# ------------------------------------------------------------------ 4

E36_TUPLES = {
    0: (F(1, 12), F(1, 6), F(1, 6), F(1, 6), F(1, 3)),
    1: (F(1, 6), F(7, 12), F(7, 12), F(1, 6), F(1, 3)),
    2: (F(1, 4), F(2, 5), F(13, 20), F(13, 20), F(4, 5)),
    3: (F(19, 20), F(3, 4), F(3, 5), F(1, 2), F(2, 5)),
    4: (F(3, 4), F(19, 20), F(17, 20), F(7, 10), F(17, 20)),
}
E36_TABLE = {0: (6, 0), 1: (3, 3), 2: (4, 2), 3: (3, 3), 4: (6, 0)}


@pytest.mark.slow
def test_criterion_4_e36_structure():
    res, dt = fresh_run(aomoto_gelfand_e36())
    Z = Zonotope.of_matrix(E36_B)
    witnesses = [Z.contains(p) for p in e36_witness_points()]
    conj = res.conjecture
    ok = (
        res.D == 6 and len(res.choices) == 81 and len(res.chambers) == 108 and res.mb is not None
        and all(witnesses) and res.form is not None and res.form.uniqueness_flag
        and conj.passed and conj.pass_count == 81 and dt < 300
    )
    record(4, ok, "D = %d, %d gammas, %d chambers, %d/6 witnesses inside, unique H: %s, conjecture %d/81 (max dev %.1e), %.1f s"
           % (res.D, len(res.choices), len(res.chambers), sum(witnesses),
              res.form is not None and res.form.uniqueness_flag, conj.pass_count, conj.max_deviation, dt))
    assert ok


@pytest.mark.slow
@pytest.mark.parametrize("floor", sorted(E36_TUPLES))
def test_criterion_4_e36_signatures(floor):
    vals = E36_TUPLES[floor]
    assert math.floor(sum(vals)) == floor and all(0 < v < 1 for v in vals)
    res = run_pipeline(aomoto_gelfand_e36(*vals))
    sig = res.signature
    ok = res.conjecture.passed and sig.canonical() == E36_TABLE[floor]
    record(4, ok, "floor %d: %s (normalized H: %s)" % (floor, sig.canonical(), sig.as_tuple()))
    assert res.conjecture.passed
    assert sig.canonical() == E36_TABLE[floor]


# ------------------------------------------------------------------ 5

DENOMS = (2, 3, 4, 5, 6, 10, 12)  # all divide 60, so the fields stay small


def _rand_unit(rng):
    q = rng.choice(DENOMS)
    return F(rng.randint(1, q - 1), q)


def fd_tuples(d, count, seed):
    """(a, (b_1..b_d), b_0) with 0 < -a < 1, 0 < b_j < 1, non-resonant."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a = -_rand_unit(rng)
        bs = [_rand_unit(rng) for _ in range(d)]
        b0 = _rand_unit(rng)
        spec = lauricella_fd(d, a=a, bs=bs, b0=b0)
        if is_totally_nonresonant(validate(spec.A, spec.alpha, spec.B)):
            out.append((a, tuple(bs), b0))
    return out


def dm_tuples(d, count, seed):
    """b_0..b_d, b_{d+1} = -a, b_{d+2} all in (0, 1) with total 2."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        bs = [_rand_unit(rng) for _ in range(d + 2)]
        last = 2 - sum(bs)
        if not 0 < last < 1:
            continue
        b0, rest, a = bs[0], bs[1:d + 1], -bs[d + 1]
        spec = lauricella_fd(d, a=a, bs=rest, b0=b0)
        if is_totally_nonresonant(validate(spec.A, spec.alpha, spec.B)):
            out.append((a, tuple(rest), b0))
    return out


def fd_signature(d, a, bs, b0):
    res = run_pipeline(lauricella_fd(d, a=a, bs=bs, b0=b0))
    assert res.conjecture.passed
    return res.signature


def _formula_run(d):
    hits, wrong, up_to_sign = 0, [], True
    tuples = fd_tuples(d, 20, seed=100 + d)
    for a, bs, b0 in tuples:
        mu = math.floor(-a + b0 + sum(bs))
        want = (d + 1 - mu, mu)
        sig = fd_signature(d, a, bs, b0)
        if sig.as_tuple() == want:
            hits += 1
        else:
            wrong.append((want, sig.as_tuple()))
        up_to_sign &= sig.canonical() == (max(want), min(want))
    assert up_to_sign, "formula fails even up to the sign of H"
    return hits, len(tuples), wrong


def _dm_run(d, count=5):
    hits, got = 0, []
    for a, bs, b0 in dm_tuples(d, count, seed=200 + d):
        assert math.floor(-a + b0 + sum(bs)) == 1
        sig = fd_signature(d, a, bs, b0)
        got.append(sig.as_tuple())
        hits += sig.as_tuple() == (1, d)
    return hits, count, got


@pytest.mark.slow
def test_criterion_5_fd_formula_d2():
    hits, n, wrong = _formula_run(2)
    record(5, hits == n, "d=2 formula: %d/%d" % (hits, n))
    assert hits == n


@pytest.mark.slow
@pytest.mark.xfail(strict=True, reason="for d = 3 the normalized form has the formula's counts swapped except at mu = 2; equal up to the sign of H")
def test_criterion_5_fd_formula_d3():
    hits, n, wrong = _formula_run(3)
    record(5, hits == n, "d=3 formula: %d/%d (mismatches are swaps, e.g. want %s got %s)" % ((hits, n) + (wrong[0] if wrong else ((), ()))))
    assert hits == n


@pytest.mark.slow
@pytest.mark.xfail(strict=True, reason="Deligne-Mostow tuples force mu = 1, where the formula of the same criterion gives (d, 1), not (1, d)")
def test_criterion_5_deligne_mostow_d2():
    hits, n, got = _dm_run(2)
    record(5, hits == n, "d=2 Deligne-Mostow (1,2): %d/%d, got %s" % (hits, n, sorted(set(got))))
    assert hits == n


@pytest.mark.slow
def test_criterion_5_deligne_mostow_d3():
    hits, n, got = _dm_run(3)
    record(5, hits == n, "d=3 Deligne-Mostow (1,3): %d/%d" % (hits, n))
    assert hits == n


# ------------------------------------------------------------------ 6


def test_criterion_6_property_suite():
    from test_polyhedral import lp_zonotope_member

    checks = {}
    rng = random.Random(6)

    # chamber independence of sum Delta_I
    indep = True
    for name in ("g3", "e36", "appell_f1", "appell_f4", "gauss_2f1", "lauricella_fd(3)"):
        spec = catalog(name)
        res_sys = validate(spec.A, spec.alpha, spec.B)
        deltas = dict(nonzero_index_sets(res_sys.B))
        sums = {sum(deltas[I] for I in c.index_sets) for c in enumerate_chambers(res_sys.B)}
        indep &= len(sums) == 1
        # A . B^T = 0
        checks.setdefault("A.B^T = 0", True)
        checks["A.B^T = 0"] &= all(x == 0 for row in matmul(list(res_sys.A), transpose(list(res_sys.B))) for x in row)
    checks["sum Delta_I chamber independent"] = indep

    # gamma counts and pairwise non-L differences
    good = True
    for spec in (horn_g3(), aomoto_gelfand_e36(), lauricella_fd(3)):
        res = run_pipeline(spec, {"skip_hermitian": True})
        for I in res.index_sets:
            gs = res.choices_by_set[I.I]
            good &= len(gs) == I.delta
            good &= not any(congruent_mod_lattice(res.system, g.gamma, h.gamma) for g, h in itertools.combinations(gs, 2))
        if spec.name != "e36":
            # X^{-1} g X diagonal round trip
            rt = True
            for tm, gens in res.chamber_data:
                for k, g in enumerate(gens):
                    chi = tm.inverse @ g.matrix @ tm.matrix
                    rt &= chi.is_diagonal() and [chi[i, i] for i in range(res.D)] == [e_of(c.gamma[k], res.order) for c in tm.column_order]
            checks.setdefault("X^-1 g X round trip", True)
            checks["X^-1 g X round trip"] &= rt
    checks["gamma counts / non-L differences"] = good

    # facet criterion versus the LP oracle, 200 points
    Bz = [[1, -2, 1, 0], [0, 1, -2, 1]]
    Z = Zonotope.of_matrix(Bz)
    pts = [[F(rng.randint(-16, 16), 8) for _ in range(2)] for _ in range(200)]
    checks["zonotope facets = LP on 200 points"] = all(Z.contains(q) == lp_zonotope_member(Bz, q) for q in pts)

    # cyclotomic exponent laws, 1000 random rationals
    laws = True
    for _ in range(1000):
        x = F(rng.randint(-90, 90), rng.randint(1, 30))
        y = F(rng.randint(-90, 90), rng.randint(1, 30))
        laws &= e_of(x) * e_of(y) == e_of(x + y) and e_of(x).conj() == e_of(-x)
        laws &= abs(complex(e_of(x)) - complex(math.cos(2 * math.pi * x), math.sin(2 * math.pi * x))) < 1e-9
    checks["cyclotomic exponent laws (1000)"] = laws

    ok = all(checks.values())
    record(6, ok, ", ".join("%s: %s" % (k, "ok" if v else "FAIL") for k, v in checks.items()))
    assert ok, checks


# ------------------------------------------------------------------ 7


def test_criterion_7_negative_controls():
    got = {}
    # F4 has no Mellin-Barnes basis
    res = run_pipeline(appell_f4())
    got["F4 NoMBBasis"] = res.mb is None and res.mb_error.startswith("NoMBBasis")
    try:
        run_pipeline(appell_f4(), {"require_mb": True})
        got["F4 NoMBBasis"] = False
    except NoMBBasis:
        pass
    # integer alpha is resonant
    try:
        run_pipeline(SystemSpec(name="g3int", A=horn_g3().A, alpha=[F(-1), F(-2)]))
        got["integer alpha resonant"] = False
    except ResonantParameter:
        got["integer alpha resonant"] = True
    # no h with h(a) = 1
    try:
        run_pipeline(SystemSpec(name="nohom", A=[[1, 2]], alpha=[F(1, 2)]))
        got["NoHomogeneityForm"] = False
    except NoHomogeneityForm:
        got["NoHomogeneityForm"] = True
    ok = all(got.values())
    record(7, ok, ", ".join("%s: %s" % (k, "ok" if v else "FAIL") for k, v in got.items()))
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
