import random
from fractions import Fraction as F

from scipy.optimize import linprog

from amono.lp import max_margin, strictly_feasible


def scipy_margin(G, h, bound):
    dim = len(G[0])
    # variables (x, t); maximize t; box rows carry the margin too
    A = [list(map(float, row)) + [1.0] for row in G]
    b = [float(v) for v in h]
    for i in range(dim):
        for s in (1.0, -1.0):
            A.append([s * (j == i) for j in range(dim)] + [1.0])
            b.append(float(bound))
    c = [0.0] * dim + [-1.0]
    bounds = [(None, None)] * (dim + 1)
    r = linprog(c, A_ub=A, b_ub=b, bounds=bounds, method="highs")
    assert r.status == 0
    return -r.fun


def test_margin_matches_scipy():
    rng = random.Random(11)
    for _ in range(60):
        dim = rng.randint(1, 4)
        m = rng.randint(1, 7)
        G = [[rng.randint(-4, 4) for _ in range(dim)] for _ in range(m)]
        h = [F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(m)]
        res = max_margin(G, h, bound=2)
        ref = scipy_margin(G, h, 2)
        assert abs(float(res.margin) - ref) < 1e-9
        # the returned point attains the margin exactly
        slack = min([hi - sum(g * x for g, x in zip(row, res.point)) for row, hi in zip(G, h)]
                    + [2 - abs(x) for x in res.point])
        assert slack == res.margin


def test_strictly_feasible_simple():
    # 0 < x < 1/2 inside the unit box
    p = strictly_feasible([[1], [-1]], [F(1, 2), 0])
    assert p is not None and 0 < p[0] < F(1, 2)
    # x < 0 and x > 0 is empty
    assert strictly_feasible([[1], [-1]], [0, 0]) is None
    # touching but not open: x <= 0, x >= 0
    assert strictly_feasible([[1, 0], [-1, 0]], [0, 0]) is None
