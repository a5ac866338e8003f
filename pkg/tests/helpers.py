"""Shared oracle helpers for the unit and acceptance suites."""

import random

import numpy as np

from shadecalc.poly import BivarPoly, resultant
from shadecalc.scalars import QQ


def bp(m, n, entries):
    rows = [[0] * (n + 1) for _ in range(m + 1)]
    for (j, k), c in entries.items():
        rows[j][k] = c
    return BivarPoly(m, n, rows)


def resultant_root_product_check(cases=200, seed=20240809, rel=1e-8):
    """Resultant values against the brute-force root-product formula
    lc_f^(deg g) lc_g^(deg f) prod (beta_j - alpha_i) at random rational
    evaluation points; returns the number of verified cases."""
    rng = random.Random(seed)
    checked = 0
    while checked < cases:
        m1, n1 = rng.randint(1, 3), rng.randint(1, 3)
        m2, n2 = rng.randint(1, 3), rng.randint(1, 3)
        f = bp(m1, n1, {(j, k): rng.randint(-6, 6) for j in range(m1 + 1) for k in range(n1 + 1)})
        g = bp(m2, n2, {(j, k): rng.randint(-6, 6) for j in range(m2 + 1) for k in range(n2 + 1)})
        if f.is_zero() or g.is_zero():
            continue
        r = resultant(f, g, "w")
        z0 = QQ(rng.randint(-4, 4), rng.randint(1, 3))
        fw = [complex(sum(complex(f.rows[j][k]) * complex(z0) ** j for j in range(m1 + 1))) for k in range(n1 + 1)]
        gw = [complex(sum(complex(g.rows[j][k]) * complex(z0) ** j for j in range(m2 + 1))) for k in range(n2 + 1)]
        if abs(fw[-1]) < 1e-9 or abs(gw[-1]) < 1e-9:
            continue
        alpha = np.roots(list(reversed(fw)))
        beta = np.roots(list(reversed(gw)))
        prod = fw[-1] ** n2 * gw[-1] ** n1
        for b in beta:
            for a in alpha:
                prod *= b - a
        mine = complex(r(complex(z0)))
        scale = max(abs(prod), abs(mine), 1e-30)
        assert abs(mine - prod) <= rel * scale, (fw, gw, mine, prod)
        checked += 1
    return checked
