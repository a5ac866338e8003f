import math
import random

import pytest

from shadecalc.poly import UPoly
from shadecalc.roots import complex_roots
from shadecalc.scalars import GaussianRational as G


def centers(roots):
    return sorted((round(r.center.real, 9), round(r.center.imag, 9)) for r in roots)


class TestExamples:
    def test_pm_i(self):
        roots = complex_roots(UPoly([1, 0, 1]))
        assert centers(roots) == [(0.0, -1.0), (0.0, 1.0)]
        assert all(r.radius <= 1e-12 for r in roots)

    def test_trefoil_shade_quartic(self):
        # 3(1+t^2)^2 - 16 t^2 = rho (1 - t^4) at rho = 0:
        # (5 +- sqrt(16))/3 gives t^2 in {3, 1/3}, four real roots
        roots = complex_roots(UPoly([3, 0, -10, 0, 3]))
        assert all(r.real for r in roots)
        vals = sorted(r.center.real for r in roots)
        s3 = math.sqrt(3)
        for got, want in zip(vals, (-s3, -1 / s3, 1 / s3, s3)):
            assert abs(got - want) < 1e-10

    def test_triple_root(self):
        roots = complex_roots(UPoly([-1, 3, -3, 1]))
        assert len(roots) == 1
        assert roots[0].multiplicity == 3
        assert abs(roots[0].center - 1) < 1e-9

    def test_zero_poly_rejected(self):
        with pytest.raises(ValueError):
            complex_roots(UPoly([]))


class TestProperties:
    def test_multiplicities_and_residuals(self):
        rng = random.Random(7)
        for _ in range(25):
            deg = rng.randint(1, 8)
            cs = [G(rng.randint(-9, 9), rng.randint(-9, 9)) for _ in range(deg)] + [G(1)]
            p = UPoly(cs)
            roots = complex_roots(p)
            assert sum(r.multiplicity for r in roots) == p.degree
            norm = sum(abs(complex(c)) for c in p.coeffs)
            for r in roots:
                if r.multiplicity > 1:
                    continue
                resid = abs(p(r.center))
                bound = 1e-10 * (1 + norm * max(1.0, abs(r.center)) ** p.degree)
                assert resid < bound

    def test_disks_disjoint(self):
        p = UPoly([6, -11, 6, -1])  # roots 1, 2, 3
        roots = complex_roots(p)
        for i, a in enumerate(roots):
            for b in roots[i + 1 :]:
                assert not a.overlaps(b)

    def test_conjugation_equivariance(self):
        rng = random.Random(13)
        for _ in range(20):
            deg = rng.randint(1, 7)
            cs = [G(rng.randint(-9, 9), rng.randint(-9, 9)) for _ in range(deg)] + [G(1)]
            p = UPoly(cs)
            r1 = complex_roots(p)
            r2 = complex_roots(p.conjugate())
            got = sorted((round(r.center.real, 8), round(-r.center.imag, 8)) for r in r2)
            want = sorted((round(r.center.real, 8), round(r.center.imag, 8)) for r in r1)
            for (a, b), (c, d) in zip(got, want):
                assert abs(a - c) < 1e-7 and abs(b - d) < 1e-7

    def test_real_flags_match_sturm(self):
        # real-coefficient polynomials: flagged real roots equal the
        # exact Sturm count by construction; spot check the pairing
        p = UPoly([-2, 0, 1]) * UPoly([5, 0, 1])  # roots +-sqrt2, +-i sqrt5
        roots = complex_roots(p)
        assert sum(1 for r in roots if r.real) == 2
        assert sum(1 for r in roots if not r.real) == 2
