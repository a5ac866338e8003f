"""Exact polynomial arithmetic over Q(i).

Low-level kernels work on little-endian coefficient lists whose entries
are Gaussian integers represented as plain ``(a, b)`` int tuples; this is
where resultants, gcds and Sturm chains spend their time.  The public
classes (UPoly, BinaryForm, BivarPoly) wrap those kernels with
GaussianRational coefficients.

Coefficients stay exact through every elimination step.  Denominators are
cleared once on entry; pseudo-remainder sequences strip content to keep
sizes near-primitive.  Resultants of polynomial-entry Sylvester matrices
go through integer evaluation, fraction-free (Bareiss) determinants over
Z[i] and Newton interpolation; degrees here stay below ~80.  Sturm chains
use an even pseudo-remainder multiplier so every scale factor is positive
and sign variations survive.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .scalars import GaussianRational, QQ

__all__ = [
    "UPoly",
    "BinaryForm",
    "BivarPoly",
    "resultant",
    "saturate_factor",
    "real_roots_sturm",
    "sturm_chain",
    "sturm_count",
    "isolate_real_roots",
]


class PolynomialError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Gaussian integer helpers: values are (a, b) = a + b*i with python ints
# ---------------------------------------------------------------------------

GZERO = (0, 0)
GONE = (1, 0)


def gadd(x, y):
    return (x[0] + y[0], x[1] + y[1])


def gsub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def gneg(x):
    return (-x[0], -x[1])


def gmul(x, y):
    a, b = x
    c, d = y
    if b == 0 and d == 0:
        return (a * c, 0)
    return (a * c - b * d, a * d + b * c)


def gnorm(x):
    return x[0] * x[0] + x[1] * x[1]


def gdivexact(x, y):
    """x / y in Z[i], asserting exactness."""
    a, b = x
    c, d = y
    n = c * c + d * d
    if n == 0:
        raise ZeroDivisionError("gaussian integer division by zero")
    re = a * c + b * d
    im = b * c - a * d
    qr, rr = divmod(re, n)
    qi, ri = divmod(im, n)
    if rr or ri:
        raise ArithmeticError("inexact gaussian integer division")
    return (qr, qi)


def gdivround(x, y):
    """Nearest Gaussian integer to x / y."""
    a, b = x
    c, d = y
    n = c * c + d * d
    re = a * c + b * d
    im = b * c - a * d
    return ((2 * re + n) // (2 * n), (2 * im + n) // (2 * n))


def ggcd(x, y):
    """Euclidean gcd in Z[i], normalized only up to units."""
    while y != GZERO:
        q = gdivround(x, y)
        x, y = y, gsub(x, gmul(q, y))
    return x


def glist_gcd(values):
    g = GZERO
    for v in values:
        if v == GZERO:
            continue
        g = v if g == GZERO else ggcd(g, v)
        if gnorm(g) == 1:
            break
    return g


# ---------------------------------------------------------------------------
# zx_* kernels: univariate polynomials as little-endian lists of gints
# ---------------------------------------------------------------------------


def zx_strip(f):
    n = len(f)
    while n and f[n - 1] == GZERO:
        n -= 1
    return f[:n]


def zx_neg(f):
    return [gneg(c) for c in f]


def zx_add(f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = gadd(out[i], c)
    return zx_strip(out)


def zx_sub(f, g):
    return zx_add(f, zx_neg(g))


def zx_mul(f, g):
    if not f or not g:
        return []
    out = [GZERO] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == GZERO:
            continue
        for j, b in enumerate(g):
            if b == GZERO:
                continue
            out[i + j] = gadd(out[i + j], gmul(a, b))
    return out


def zx_diff(f):
    return zx_strip([gmul(c, (j, 0)) for j, c in enumerate(f)][1:])


def zx_content(f):
    return glist_gcd(f)


def zx_primitive(f):
    f = zx_strip(f)
    if not f:
        return f
    g = zx_content(f)
    if g == GONE or gnorm(g) == 1:
        return f
    return [gdivexact(c, g) for c in f]


def zx_prem(f, g):
    """Pseudo-remainder of f by g (one lc(g) multiplier per step)."""
    dg = len(g) - 1
    if dg < 0:
        raise ZeroDivisionError("pseudo-remainder by zero polynomial")
    lc = g[-1]
    f = list(f)
    while f and len(f) - 1 >= dg:
        df = len(f) - 1
        top = f[-1]
        f = [gmul(c, lc) for c in f]
        shift = df - dg
        for j in range(dg + 1):
            f[shift + j] = gsub(f[shift + j], gmul(top, g[j]))
        f = zx_strip(f[:df])
    return f


def zx_gcd(f, g):
    """Primitive-PRS gcd over Z[i]; result primitive, unique up to units."""
    f, g = zx_primitive(list(f)), zx_primitive(list(g))
    if not f:
        return g
    if not g:
        return f
    if len(f) < len(g):
        f, g = g, f
    while g:
        r = zx_prem(f, g)
        f, g = g, zx_primitive(r)
    return zx_primitive(f)


def _g2q(c):
    return (QQ(c[0]), QQ(c[1]))


def zx_divexact(f, g):
    """f / g asserting zero remainder (runs over exact rationals since
    quotient coefficients may transiently leave Z[i])."""
    q, r = qq_divmod([_g2q(c) for c in f], [_g2q(c) for c in g])
    if any(c[0] or c[1] for c in r):
        raise ArithmeticError("inexact polynomial division")
    out = []
    for re, im in q:
        if re.denominator != 1 or im.denominator != 1:
            raise ArithmeticError("inexact polynomial division")
        out.append((re.numerator, im.numerator))
    return zx_strip(out)


def zx_sqf_list(f):
    """Yun's squarefree decomposition: [(g1, 1), (g2, 2), ...] with
    f ~ prod gi^i up to content."""
    f = zx_primitive(f)
    if len(f) <= 1:
        return []
    d = zx_diff(f)
    a = zx_gcd(f, d)
    if len(a) == 1:
        return [(f, 1)]
    b = zx_divexact(f, a)
    c = zx_divexact(d, a)
    out = []
    i = 1
    while len(b) > 1:
        dmb = zx_sub(c, zx_diff(b))
        if not dmb:
            out.append((b, i))
            break
        g = zx_gcd(b, dmb)
        if len(g) > 1:
            out.append((g, i))
        b = zx_divexact(b, g)
        c = zx_divexact(dmb, g)
        i += 1
    return out


# qq_* helpers: coefficients as (Fraction, Fraction) pairs


def _qsub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def _qmul(x, y):
    a, b = x
    c, d = y
    return (a * c - b * d, a * d + b * c)


def _qdiv(x, y):
    a, b = x
    c, d = y
    n = c * c + d * d
    return ((a * c + b * d) / n, (b * c - a * d) / n)


def qq_strip(f):
    n = len(f)
    while n and not (f[n - 1][0] or f[n - 1][1]):
        n -= 1
    return f[:n]


def qq_divmod(f, g):
    f = qq_strip(list(f))
    g = qq_strip(list(g))
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [(QQ(0), QQ(0))] * max(0, len(f) - len(g) + 1)
    r = list(f)
    dg = len(g) - 1
    while r and len(r) - 1 >= dg:
        k = len(r) - 1 - dg
        c = _qdiv(r[-1], g[-1])
        q[k] = c
        for j in range(dg + 1):
            r[j + k] = _qsub(r[j + k], _qmul(c, g[j]))
        r = qq_strip(r[:-1])
    return q, r


# ---------------------------------------------------------------------------
# UPoly: public univariate polynomial over Q(i)
# ---------------------------------------------------------------------------


class UPoly:
    """Dense univariate polynomial with GaussianRational coefficients,
    little-endian, trailing zeros stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [c if isinstance(c, GaussianRational) else GaussianRational(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_zx(cls, f):
        return cls([GaussianRational(QQ(a), QQ(b)) for a, b in f])

    def to_zx(self):
        """Primitive Z[i] coefficient list (self up to a positive rational)."""
        if not self.coeffs:
            return []
        den = 1
        for c in self.coeffs:
            den = den * c.re.denominator // math.gcd(den, c.re.denominator)
            den = den * c.im.denominator // math.gcd(den, c.im.denominator)
        f = [(int(c.re * den), int(c.im * den)) for c in self.coeffs]
        g = glist_gcd(f)
        n = math.gcd(abs(g[0]), abs(g[1]))
        if n > 1:
            f = [(a // n, b // n) for a, b in f]
        return f

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = list(self.coeffs), list(other.coeffs)
        if len(a) < len(b):
            a, b = b, a
        for i, c in enumerate(b):
            a[i] = a[i] + c
        return UPoly(a)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return UPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return UPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UPoly([])
        out = [GaussianRational(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UPoly(out)

    __rmul__ = __mul__

    def derivative(self):
        return UPoly([c * j for j, c in enumerate(self.coeffs)][1:])

    def __call__(self, z):
        if isinstance(z, (GaussianRational, int, Fraction)):
            acc = GaussianRational(0)
            for c in reversed(self.coeffs):
                acc = acc * z + c
            return acc
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * complex(z) + complex(c)
        return acc

    def is_real(self):
        return all(c.is_real for c in self.coeffs)

    def conjugate(self):
        return UPoly([c.conjugate() for c in self.coeffs])

    def monic(self):
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return UPoly([c / lc for c in self.coeffs])

    def gcd(self, other):
        return UPoly.from_zx(zx_gcd(self.to_zx(), other.to_zx()))

    def squarefree_part(self):
        f = self.to_zx()
        g = zx_gcd(f, zx_diff(f))
        if len(g) <= 1:
            return UPoly.from_zx(f)
        return UPoly.from_zx(zx_divexact(f, g))

    def real_int_coeffs(self):
        """Integer coefficient list (self up to a positive rational);
        requires real coefficients."""
        if not self.is_real():
            raise PolynomialError("polynomial has non-real coefficients")
        return [a for a, _ in self.to_zx()]

    def __repr__(self):
        return f"UPoly({[str(c) for c in self.coeffs]})"


# ---------------------------------------------------------------------------
# Sturm machinery (real integer coefficient lists, little-endian)
# ---------------------------------------------------------------------------


def _ix_strip(f):
    n = len(f)
    while n and f[n - 1] == 0:
        n -= 1
    return f[:n]


def _ix_content_strip(f):
    g = 0
    for c in f:
        g = math.gcd(g, c)
        if g == 1:
            return f
    if g <= 1:
        return f
    return [c // g for c in f]


def _ix_prem_pos(f, g):
    """Pseudo-remainder of f by g scaled only by positive constants
    (multiplier lc(g)^2 per step), so Sturm sign patterns survive."""
    dg = len(g) - 1
    lc = g[-1]
    lc2 = lc * lc
    f = list(f)
    while f and len(f) - 1 >= dg:
        df = len(f) - 1
        top = f[-1]
        f = [c * lc2 for c in f]
        shift = df - dg
        q = top * lc
        for j in range(dg + 1):
            f[shift + j] -= q * g[j]
        f = _ix_strip(f[:df])
        f = _ix_content_strip(f)
    return f


def sturm_chain(coeffs):
    """Sturm chain of a real integer polynomial; remainders are stripped
    of positive content only."""
    f = _ix_content_strip(_ix_strip(list(coeffs)))
    if not f:
        return []
    fp = _ix_strip([c * j for j, c in enumerate(f)][1:])
    chain = [f]
    if fp:
        chain.append(_ix_content_strip(fp))
    while len(chain) >= 2 and chain[-1]:
        r = _ix_prem_pos(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _eval_sign_at_rational(f, num, den):
    """Sign of f(num/den), integer f, den > 0."""
    deg = len(f) - 1
    acc = 0
    npow = 1
    for j, c in enumerate(f):
        if c:
            acc += c * npow * den ** (deg - j)
        npow *= num
    return (acc > 0) - (acc < 0)


def _sign_variations(signs):
    v = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            v += 1
        prev = s
    return v


def sturm_var_at(chain, x):
    x = QQ(x)
    return _sign_variations(
        [_eval_sign_at_rational(f, x.numerator, x.denominator) for f in chain]
    )


def sturm_count(chain, a, b):
    """Number of distinct real roots in (a, b]."""
    return sturm_var_at(chain, QQ(a)) - sturm_var_at(chain, QQ(b))


def cauchy_root_bound(coeffs):
    """Rational B with every real root in [-B, B]."""
    f = _ix_strip(list(coeffs))
    if len(f) <= 1:
        return QQ(1)
    lc = abs(f[-1])
    m = max(abs(c) for c in f[:-1])
    return QQ(m, lc) + 1


def isolate_real_roots(coeffs, lo=None, hi=None, width=QQ(1, 2**40)):
    """Sturm isolation of the distinct real roots of an integer polynomial
    on [lo, hi]: disjoint rational intervals (a, b], one root each,
    refined below `width`.  The caller passes a squarefree polynomial when
    exact counts at multiple roots matter."""
    f = _ix_content_strip(_ix_strip(list(coeffs)))
    if len(f) <= 1:
        return []
    chain = sturm_chain(f)
    bound = cauchy_root_bound(f)
    a = QQ(lo) if lo is not None else -bound
    b = QQ(hi) if hi is not None else bound
    if a >= b:
        return []
    step = width if width < QQ(1, 64) else QQ(1, 64)
    while _eval_sign_at_rational(f, a.numerator, a.denominator) == 0:
        a -= step
    while _eval_sign_at_rational(f, b.numerator, b.denominator) == 0:
        b += step
    out = []
    stack = [(a, b, sturm_var_at(chain, a), sturm_var_at(chain, b))]
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n <= 0:
            continue
        if n == 1 and (b - a) <= width:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        while _eval_sign_at_rational(f, mid.numerator, mid.denominator) == 0:
            mid = mid + (b - a) / 1048583
        vm = sturm_var_at(chain, mid)
        stack.append((a, mid, va, vm))
        stack.append((mid, b, vm, vb))
    out.sort()
    return out


def real_roots_sturm(p: UPoly, interval=None, width=QQ(1, 2**40)):
    """Isolating intervals for the distinct real roots of a real
    polynomial on `interval` (whole line when None); squarefree part is
    taken internally, counts are exact."""
    if not p:
        raise PolynomialError("zero polynomial has no isolated roots")
    sf = p.squarefree_part()
    coeffs = sf.real_int_coeffs()
    lo, hi = (None, None) if interval is None else interval
    return isolate_real_roots(coeffs, lo, hi, width)


# ---------------------------------------------------------------------------
# BinaryForm: homogeneous polynomial in (s, t)
# ---------------------------------------------------------------------------


class BinaryForm:
    """Homogeneous form of declared degree d; coeffs[k] multiplies
    s^(d-k) t^k.  The zero form keeps its declared degree."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree, coeffs):
        if degree < 0:
            raise PolynomialError("degree must be nonnegative")
        cs = [c if isinstance(c, GaussianRational) else GaussianRational(c) for c in coeffs]
        if len(cs) != degree + 1:
            raise PolynomialError(
                f"form of degree {degree} needs {degree + 1} coefficients, got {len(cs)}"
            )
        self.degree = degree
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, degree):
        return cls(degree, [GaussianRational(0)] * (degree + 1))

    @classmethod
    def from_upoly(cls, p: UPoly, degree):
        if p.degree > degree:
            raise PolynomialError("declared degree below actual degree")
        cs = list(p.coeffs) + [GaussianRational(0)] * (degree - p.degree)
        return cls(degree, cs)

    def is_zero(self):
        return not any(self.coeffs)

    def is_real(self):
        return all(c.is_real for c in self.coeffs)

    def conjugate(self):
        return BinaryForm(self.degree, [c.conjugate() for c in self.coeffs])

    def __add__(self, other):
        if self.degree != other.degree:
            raise PolynomialError("degree mismatch in form addition")
        return BinaryForm(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if self.degree != other.degree:
            raise PolynomialError("degree mismatch in form subtraction")
        return BinaryForm(self.degree, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return BinaryForm(self.degree, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return BinaryForm(self.degree, [c * other for c in self.coeffs])
        out = [GaussianRational(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return BinaryForm(self.degree + other.degree, out)

    __rmul__ = __mul__

    def eval(self, s, t):
        """Evaluate at (s, t): exact for exact scalars, complex otherwise."""
        if isinstance(s, complex) or isinstance(t, complex):
            sv, tv = complex(s), complex(t)
            acc = 0j
            tp = 1.0 + 0j
            spows = [1.0 + 0j]
            for _ in range(self.degree):
                spows.append(spows[-1] * sv)
            for k, c in enumerate(self.coeffs):
                if c:
                    acc += complex(c) * spows[self.degree - k] * tp
                tp *= tv
            return acc
        sg = s if isinstance(s, GaussianRational) else GaussianRational(s)
        tg = t if isinstance(t, GaussianRational) else GaussianRational(t)
        if not sg and not tg:
            raise PolynomialError("(0, 0) is not a point of the parameter line")
        acc = GaussianRational(0)
        tp = GaussianRational(1)
        spows = [GaussianRational(1)]
        for _ in range(self.degree):
            spows.append(spows[-1] * sg)
        for k, c in enumerate(self.coeffs):
            if c:
                acc = acc + c * spows[self.degree - k] * tp
            tp = tp * tg
        return acc

    def d_ds(self):
        if self.degree == 0:
            return BinaryForm.zero(0)
        return BinaryForm(
            self.degree - 1,
            [self.coeffs[k] * (self.degree - k) for k in range(self.degree)],
        )

    def d_dt(self):
        if self.degree == 0:
            return BinaryForm.zero(0)
        return BinaryForm(
            self.degree - 1, [self.coeffs[k] * k for k in range(1, self.degree + 1)]
        )

    def chart_t(self) -> UPoly:
        """f(1, t) as a polynomial in t."""
        return UPoly(list(self.coeffs))

    def chart_s(self) -> UPoly:
        """f(s, 1) as a polynomial in s."""
        return UPoly(list(reversed(self.coeffs)))

    def __eq__(self, other):
        return (
            isinstance(other, BinaryForm)
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __repr__(self):
        return f"BinaryForm({self.degree}, {[str(c) for c in self.coeffs]})"


def form_gcd(forms):
    """Gcd of binary forms: the common s- and t-powers times the gcd of
    the dehomogenized cores."""
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        raise PolynomialError("gcd of zero forms")
    s_pow = None
    t_pow = None
    cores = []
    for f in forms:
        cs = list(f.coeffs)
        lead = 0
        while not cs[lead]:
            lead += 1
        trail = 0
        while not cs[len(cs) - 1 - trail]:
            trail += 1
        t_pow = lead if t_pow is None else min(t_pow, lead)
        s_pow = trail if s_pow is None else min(s_pow, trail)
        cores.append(UPoly(cs[lead : len(cs) - trail]))
    g = cores[0].to_zx()
    for c in cores[1:]:
        g = zx_gcd(g, c.to_zx())
        if len(g) == 1:
            break
    core = UPoly.from_zx(g)
    d = core.degree + s_pow + t_pow
    coeffs = [GaussianRational(0)] * (d + 1)
    for j, c in enumerate(core.coeffs):
        coeffs[t_pow + j] = c
    return BinaryForm(d, coeffs)


# ---------------------------------------------------------------------------
# BivarPoly: bihomogeneous in (s,t) x (u,v); the coefficient matrix read
# affinely is the polynomial in the chart z = t/s, w = v/u
# ---------------------------------------------------------------------------


class BivarPoly:
    """Coefficient matrix c[j][k] of s^(m-j) t^j u^(n-k) v^k for declared
    bidegree (m, n)."""

    __slots__ = ("m", "n", "rows")

    def __init__(self, m, n, rows):
        if len(rows) != m + 1 or any(len(r) != n + 1 for r in rows):
            raise PolynomialError("coefficient matrix shape mismatch")
        self.m = m
        self.n = n
        self.rows = tuple(
            tuple(c if isinstance(c, GaussianRational) else GaussianRational(c) for c in r)
            for r in rows
        )

    @classmethod
    def zero(cls, m, n):
        z = GaussianRational(0)
        return cls(m, n, [[z] * (n + 1) for _ in range(m + 1)])

    @classmethod
    def from_form_product(cls, f: BinaryForm, g: BinaryForm):
        """f(s,t) * g(u,v)."""
        rows = [[fc * gc for gc in g.coeffs] for fc in f.coeffs]
        return cls(f.degree, g.degree, rows)

    @classmethod
    def from_affine(cls, m, n, table):
        """Declared bidegree (m, n) from a (possibly smaller) dense affine
        coefficient table table[j][k] of z^j w^k."""
        z = GaussianRational(0)
        rows = [[z] * (n + 1) for _ in range(m + 1)]
        for j, row in enumerate(table):
            for k, c in enumerate(row):
                if j > m or k > n:
                    if c:
                        raise PolynomialError("affine table exceeds declared bidegree")
                    continue
                rows[j][k] = c if isinstance(c, GaussianRational) else GaussianRational(c)
        return cls(m, n, rows)

    def is_zero(self):
        return not any(any(r) for r in self.rows)

    def is_real(self):
        return all(c.is_real for r in self.rows for c in r)

    def __add__(self, other):
        if (self.m, self.n) != (other.m, other.n):
            raise PolynomialError("bidegree mismatch")
        return BivarPoly(
            self.m,
            self.n,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __sub__(self, other):
        if (self.m, self.n) != (other.m, other.n):
            raise PolynomialError("bidegree mismatch")
        return BivarPoly(
            self.m,
            self.n,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def scale(self, c):
        return BivarPoly(self.m, self.n, [[a * c for a in r] for r in self.rows])

    def eval_affine(self, z, w):
        """Value at ((1, z), (1, w)); exact scalars or complex."""
        if isinstance(z, complex) or isinstance(w, complex):
            acc = 0j
            for j in range(self.m, -1, -1):
                racc = 0j
                for k in range(self.n, -1, -1):
                    racc = racc * w + complex(self.rows[j][k])
                acc = acc * z + racc
            return acc
        acc = GaussianRational(0)
        for j in range(self.m, -1, -1):
            racc = GaussianRational(0)
            for k in range(self.n, -1, -1):
                racc = racc * w + self.rows[j][k]
            acc = acc * z + racc
        return acc

    def eval_pair(self, st, uv):
        """Complex value at projective parameters st = (s, t), uv = (u, v)."""
        s, t = complex(st[0]), complex(st[1])
        u, v = complex(uv[0]), complex(uv[1])
        acc = 0j
        spow = [s**e for e in range(self.m + 1)]
        tpow = [t**e for e in range(self.m + 1)]
        upow = [u**e for e in range(self.n + 1)]
        vpow = [v**e for e in range(self.n + 1)]
        for j in range(self.m + 1):
            stj = spow[self.m - j] * tpow[j]
            row = self.rows[j]
            for k in range(self.n + 1):
                c = row[k]
                if c:
                    acc += complex(c) * stj * upow[self.n - k] * vpow[k]
        return acc

    def swap_vars(self):
        rows = [[self.rows[j][k] for j in range(self.m + 1)] for k in range(self.n + 1)]
        return BivarPoly(self.n, self.m, rows)

    def conjugate_swap(self):
        """Coefficient conjugation composed with the variable swap; sends
        solutions (z, w) to (conj w, conj z)."""
        rows = [
            [self.rows[j][k].conjugate() for j in range(self.m + 1)] for k in range(self.n + 1)
        ]
        return BivarPoly(self.n, self.m, rows)

    def w_coeff_forms(self):
        """Coefficients of u^(n-k) v^k as BinaryForms in (s, t)."""
        return [
            BinaryForm(self.m, [self.rows[j][k] for j in range(self.m + 1)])
            for k in range(self.n + 1)
        ]

    def __repr__(self):
        return f"BivarPoly(m={self.m}, n={self.n})"


# -- gcd / exact division / saturation --------------------------------------


def _to_columns(p: BivarPoly):
    """Affine view as w-columns: cols[k] = zx poly in z, denominators
    cleared across the whole polynomial."""
    den = 1
    for r in p.rows:
        for c in r:
            den = den * c.re.denominator // math.gcd(den, c.re.denominator)
            den = den * c.im.denominator // math.gcd(den, c.im.denominator)
    cols = []
    for k in range(p.n + 1):
        col = [(int(p.rows[j][k].re * den), int(p.rows[j][k].im * den)) for j in range(p.m + 1)]
        cols.append(zx_strip(col))
    while cols and not cols[-1]:
        cols.pop()
    return cols


def _cols_poly_content(cols):
    g = []
    for col in cols:
        if not col:
            continue
        g = zx_gcd(g, col) if g else list(col)
        if len(g) == 1:
            break
    return g


def _cols_scalar_primitive(cols):
    flat = [c for col in cols for c in col]
    g = glist_gcd(flat)
    if g == GZERO or gnorm(g) == 1:
        return cols
    return [[gdivexact(c, g) for c in col] for col in cols]


def _cols_prem(f, g):
    """Pseudo-remainder in w of column lists over Z[i][z]."""
    dg = len(g) - 1
    lc = g[-1]
    f = [list(col) for col in f]
    while f and len(f) - 1 >= dg:
        df = len(f) - 1
        top = f[-1]
        f = [zx_strip(zx_mul(col, lc)) if col else [] for col in f]
        shift = df - dg
        for j in range(dg + 1):
            f[shift + j] = zx_sub(f[shift + j], zx_mul(top, g[j]))
        f = f[:df]
        while f and not f[-1]:
            f.pop()
    return f


def bivar_gcd(p: BivarPoly, q: BivarPoly) -> BivarPoly:
    """Gcd of bihomogeneous polynomials (bihomogeneous again): primitive
    PRS in the affine chart plus bookkeeping for the pure s- and u-powers
    the chart cannot see."""
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    pc = _to_columns(p)
    qc = _to_columns(q)
    p_updef = p.n + 1 - len(pc)
    q_updef = q.n + 1 - len(qc)
    p_sdef = p.m - max(len(col) - 1 for col in pc if col)
    q_sdef = q.m - max(len(col) - 1 for col in qc if col)
    ca = _cols_poly_content(pc)
    cb = _cols_poly_content(qc)
    fa = [zx_divexact(col, ca) if col else [] for col in pc] if len(ca) > 1 else pc
    fb = [zx_divexact(col, cb) if col else [] for col in qc] if len(cb) > 1 else qc
    gcont = zx_gcd(ca, cb)
    f, g = (fa, fb) if len(fa) >= len(fb) else (fb, fa)
    while g:
        r = _cols_prem(f, g)
        r = _cols_scalar_primitive(r)
        if r:
            cr = _cols_poly_content(r)
            if len(cr) > 1:
                r = [zx_divexact(col, cr) if col else [] for col in r]
        f, g = g, r
    f = _cols_scalar_primitive(f)
    cf = _cols_poly_content(f)
    if len(cf) > 1:
        f = [zx_divexact(col, cf) if col else [] for col in f]
    if len(gcont) > 1:
        f = [zx_strip(zx_mul(col, gcont)) if col else [] for col in f]
    gm = max(len(col) - 1 for col in f if col)
    gn = len(f) - 1
    m_decl = gm + min(p_sdef, q_sdef)
    n_decl = gn + min(p_updef, q_updef)
    table = [[GaussianRational(0)] * (gn + 1) for _ in range(gm + 1)]
    for k, col in enumerate(f):
        for j, c in enumerate(col):
            table[j][k] = GaussianRational(c[0], c[1])
    return BivarPoly.from_affine(m_decl, n_decl, table)


def bivar_divexact(p: BivarPoly, d: BivarPoly) -> BivarPoly:
    """p / d asserting exactness; declared bidegrees subtract.

    Long division in w over Q(i)[z]: when d divides p, every leading
    quotient step divides exactly, so a remainder at any step means the
    division is inexact.
    """
    if d.is_zero():
        raise PolynomialError("division by the zero polynomial")
    m, n = p.m - d.m, p.n - d.n
    if m < 0 or n < 0:
        raise ArithmeticError("inexact bivariate division")

    def cols_qq(poly):
        return [
            [(poly.rows[j][k].re, poly.rows[j][k].im) for j in range(poly.m + 1)]
            for k in range(poly.n + 1)
        ]

    def strip_cols(cs):
        cs = [qq_strip(c) for c in cs]
        while cs and not cs[-1]:
            cs.pop()
        return cs

    fp = strip_cols(cols_qq(p))
    fd = strip_cols(cols_qq(d))
    if not fp:
        return BivarPoly.zero(m, n)
    if not fd:
        raise PolynomialError("division by the zero polynomial")
    nq = len(fp) - len(fd)
    if nq < 0:
        raise ArithmeticError("inexact bivariate division")
    B = fd[-1]
    qcols = [None] * (nq + 1)
    rem = [list(c) for c in fp]
    for k in range(nq, -1, -1):
        top = rem[k + len(fd) - 1]
        qk, rr = qq_divmod(top, B)
        if any(c[0] or c[1] for c in rr):
            raise ArithmeticError("inexact bivariate division")
        qcols[k] = qk
        for j in range(len(fd)):
            prod_col = _qq_mul_poly(qk, fd[j])
            tgt = rem[k + j]
            for idx, val in enumerate(prod_col):
                while len(tgt) <= idx:
                    tgt.append((QQ(0), QQ(0)))
                tgt[idx] = _qsub(tgt[idx], val)
        rem[k + len(fd) - 1] = []
    if any(qq_strip(c) for c in rem):
        raise ArithmeticError("inexact bivariate division")
    table = []
    gm = max((len(qq_strip(c)) - 1 for c in qcols if qq_strip(c)), default=0)
    table = [[GaussianRational(0)] * (len(qcols)) for _ in range(gm + 1)]
    for k, col in enumerate(qcols):
        for j, c in enumerate(qq_strip(col)):
            table[j][k] = GaussianRational(c[0], c[1])
    return BivarPoly.from_affine(m, n, table)


def _qq_mul_poly(a, b):
    if not a or not b:
        return []
    out = [(QQ(0), QQ(0))] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not (x[0] or x[1]):
            continue
        for j, y in enumerate(b):
            if y[0] or y[1]:
                out[i + j] = (out[i + j][0] + _qmul(x, y)[0], out[i + j][1] + _qmul(x, y)[1])
    return out


def saturate_factor(p: BivarPoly, factor: BivarPoly):
    """Divide `factor` out of p as often as it exactly divides.

    Returns (quotient, multiplicity); multiplicity 0 hands back p itself.
    """
    if factor.is_zero():
        raise PolynomialError("saturation by the zero polynomial")
    k = 0
    while not p.is_zero():
        try:
            q = bivar_divexact(p, factor)
        except ArithmeticError:
            break
        p = q
        k += 1
    return p, k


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------


def _bareiss_det(M):
    """Fraction-free determinant of a square gint matrix (destructive)."""
    n = len(M)
    if n == 0:
        return GONE
    sign = 1
    prev = GONE
    for k in range(n - 1):
        if M[k][k] == GZERO:
            for i in range(k + 1, n):
                if M[i][k] != GZERO:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return GZERO
        pk = M[k][k]
        for i in range(k + 1, n):
            Mi = M[i]
            Mk = M[k]
            mik = Mi[k]
            for j in range(k + 1, n):
                num = gsub(gmul(pk, Mi[j]), gmul(mik, Mk[j]))
                Mi[j] = gdivexact(num, prev)
        prev = pk
    d = M[n - 1][n - 1]
    return gneg(d) if sign < 0 else d


def _sylvester_det(acoeffs, bcoeffs, na, nb):
    """det of the Sylvester matrix for coefficient sequences listed by
    descending power of the eliminated variable's first coordinate."""
    size = na + nb
    M = []
    for sh in range(nb):
        row = [GZERO] * size
        for j, c in enumerate(acoeffs):
            row[sh + j] = c
        M.append(row)
    for sh in range(na):
        row = [GZERO] * size
        for j, c in enumerate(bcoeffs):
            row[sh + j] = c
        M.append(row)
    return _bareiss_det(M)


def _interp_newton(xs, ys):
    """Interpolating coefficients (little-endian (Fraction, Fraction))
    through integer nodes xs with gint values ys."""
    n = len(xs)
    dd = [(QQ(y[0]), QQ(y[1])) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            denom = xs[i] - xs[i - j]
            dd[i] = (
                (dd[i][0] - dd[i - 1][0]) / denom,
                (dd[i][1] - dd[i - 1][1]) / denom,
            )
    coeffs = [(QQ(0), QQ(0))] * n
    for i in range(n - 1, -1, -1):
        new = [(QQ(0), QQ(0))] * n
        new[0] = dd[i]
        for j in range(n - 1):
            cj = coeffs[j]
            if cj[0] or cj[1]:
                new[j + 1] = (new[j + 1][0] + cj[0], new[j + 1][1] + cj[1])
                new[j] = (new[j][0] - xs[i] * cj[0], new[j][1] - xs[i] * cj[1])
        coeffs = new
    return coeffs


def bivar_resultant_w(p: BivarPoly, q: BivarPoly, strip_content=False) -> BinaryForm:
    """Homogeneous resultant eliminating the (u, v) pair.

    p, q are read as binary forms of their declared (u, v)-degrees with
    BinaryForm coefficients in (s, t); the result is a binary form in
    (s, t) of degree p.m*q.n + q.m*p.n.  Coefficient sequences enter the
    Sylvester matrix by ascending v-power, which matches the classical
    resultant up to the factor (-1)^(deg_f * deg_g).

    With strip_content=True the result is reduced to a primitive integer
    multiple (only root sets survive; used by the chord solver).
    """
    na, nb = p.n, q.n
    if na == 0 or nb == 0:
        raise PolynomialError("positive degree in the eliminated variable required")
    D = p.m * q.n + q.m * p.n
    den = 1
    for poly in (p, q):
        for r in poly.rows:
            for c in r:
                den = den * c.re.denominator // math.gcd(den, c.re.denominator)
                den = den * c.im.denominator // math.gcd(den, c.im.denominator)
    pa = [[(int(c.re * den), int(c.im * den)) for c in r] for r in p.rows]
    qa = [[(int(c.re * den), int(c.im * den)) for c in r] for r in q.rows]

    def w_coeffs_at(rows, m, n, zeta):
        # u^(n-k) v^k coefficient forms evaluated at (s, t) = (1, zeta),
        # listed by descending u-power (k ascending)
        out = []
        for k in range(n + 1):
            acc = GZERO
            for j in range(m, -1, -1):
                acc = gadd(gmul(acc, (zeta, 0)), rows[j][k])
            out.append(acc)
        return out

    xs, ys = [], []
    zeta = 0
    while len(xs) < D + 1:
        acoeffs = w_coeffs_at(pa, p.m, p.n, zeta)
        bcoeffs = w_coeffs_at(qa, q.m, q.n, zeta)
        ys.append(_sylvester_det(acoeffs, bcoeffs, na, nb))
        xs.append(zeta)
        zeta = -zeta + (1 if zeta <= 0 else 0)
    coeffs = _interp_newton(xs, ys)
    gs = [GaussianRational(a, b) for a, b in coeffs[: D + 1]]
    gs += [GaussianRational(0)] * (D + 1 - len(gs))
    f = BinaryForm(D, gs)
    # interpolation at integer nodes of integer determinants: the scale
    # factor den^(size) is rational, so coefficients may carry a common
    # denominator; rescale by the cleared denominator to restore the
    # honest Sylvester value of the scaled inputs, or strip to primitive
    if strip_content:
        core = f.chart_t().to_zx()
        if not core:
            return BinaryForm.zero(D)
        return BinaryForm.from_upoly(UPoly.from_zx(core), D)
    if den != 1:
        scale = QQ(1, den ** (na + nb))
        f = BinaryForm(D, [c * scale for c in f.coeffs])
    return f


def resultant(f: BivarPoly, g: BivarPoly, eliminate: str = "w") -> UPoly:
    """Sylvester resultant of bivariate polynomials, eliminating the named
    variable ("w" = second pair, "z" = first); univariate in the survivor.

    Vanishes at z0 iff f(z0, .), g(z0, .) share a root or both leading
    coefficients vanish at z0.
    """
    if f.is_zero() or g.is_zero():
        raise PolynomialError("resultant of the zero polynomial")
    if eliminate == "z":
        f, g = f.swap_vars(), g.swap_vars()
    elif eliminate != "w":
        raise PolynomialError(f"unknown variable tag {eliminate!r}")
    if f.n == 0 or g.n == 0:
        raise PolynomialError("positive degree in the eliminated variable required")
    return bivar_resultant_w(f, g).chart_t()
