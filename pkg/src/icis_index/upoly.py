"""Dense univariate polynomials over Q: Sturm sequences, quotient rings, root discs.

A univariate polynomial is a tuple of ``Fraction`` coefficients, lowest degree
first, with no trailing zeros; ``()`` is the zero polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

import mpmath

from .poly import Poly

UPoly = tuple


def trim(c: Sequence) -> UPoly:
    c = [Fraction(x) for x in c]
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def from_poly(p: Poly, var: int) -> UPoly:
    out: dict[int, Fraction] = {}
    for m, c in p.terms.items():
        if any(e for i, e in enumerate(m) if i != var):
            raise ValueError(f"{p} is not univariate in {p.vars[var]}")
        out[m[var]] = c
    if not out:
        return ()
    return trim([out.get(i, 0) for i in range(max(out) + 1)])


def to_poly(u: UPoly, vars, var: int) -> Poly:
    n = len(vars)
    terms = {}
    for i, c in enumerate(u):
        if c:
            e = [0] * n
            e[var] = i
            terms[tuple(e)] = c
    return Poly(vars, terms)


def deg(u: UPoly) -> int:
    return len(u) - 1


def add(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a: UPoly, b: UPoly) -> UPoly:
    return add(a, scale(b, -1))


def scale(a: UPoly, c) -> UPoly:
    return trim([x * c for x in a])


def mul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def divmod_(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    db = len(b) - 1
    for i in range(len(a) - len(b), -1, -1):
        c = r[i + db] / lb
        q[i] = c
        if c:
            for j, y in enumerate(b):
                r[i + j] -= c * y
    return trim(q), trim(r[:db] if db else [])


def rem(a: UPoly, b: UPoly) -> UPoly:
    return divmod_(a, b)[1]


def monic(a: UPoly) -> UPoly:
    return scale(a, 1 / a[-1]) if a else ()


def gcd(a: UPoly, b: UPoly) -> UPoly:
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def xgcd(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly, UPoly]:
    """(g, s, t) with s*a + t*b = g monic."""
    r0, r1 = a, b
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return (), s0, t0
    c = 1 / r0[-1]
    return scale(r0, c), scale(s0, c), scale(t0, c)


def derivative(a: UPoly) -> UPoly:
    return trim([i * a[i] for i in range(1, len(a))])


def evaluate(a: UPoly, x):
    v = 0
    for c in reversed(a):
        v = v * x + c
    return v


def squarefree_decomposition(a: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm: a = lc * prod s_i^i with s_i monic, squarefree, coprime."""
    if deg(a) < 1:
        return []
    out = []
    d = derivative(a)
    g = gcd(a, d)
    b = divmod_(a, g)[0]
    c = divmod_(d, g)[0]
    e = sub(c, derivative(b))
    i = 1
    while deg(b) > 0:
        s = gcd(b, e)
        b = divmod_(b, s)[0]
        c = divmod_(e, s)[0]
        e = sub(c, derivative(b))
        if deg(s) > 0:
            out.append((monic(s), i))
        i += 1
    return out


def squarefree_part(a: UPoly) -> UPoly:
    out = (Fraction(1),)
    for s, _ in squarefree_decomposition(a):
        out = mul(out, s)
    return out


# -- real roots ---------------------------------------------------------------

def sturm_sequence(a: UPoly) -> list[UPoly]:
    seq = [a, derivative(a)]
    while seq[-1]:
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(scale(r, -1))
    return seq


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_variations(seq: list[UPoly], x) -> int:
    signs = [s for s in (_sign(evaluate(p, x)) for p in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_roots(seq: list[UPoly], a, b) -> int:
    """Distinct real roots in (a, b] of the first polynomial of a Sturm sequence."""
    return sign_variations(seq, a) - sign_variations(seq, b)


def cauchy_bound(a: UPoly) -> Fraction:
    """Every complex root has modulus < this bound."""
    lc = abs(a[-1])
    return 1 + max((abs(c) / lc for c in a[:-1]), default=Fraction(0))


@dataclass
class RealRoot:
    """The unique root of the squarefree ``poly`` in (lo, hi); lo == hi when exact."""

    poly: UPoly
    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def refine(self) -> None:
        if self.exact:
            return
        mid = (self.lo + self.hi) / 2
        vm = evaluate(self.poly, mid)
        if not vm:
            self.lo = self.hi = mid
        elif _sign(evaluate(self.poly, self.lo)) != _sign(vm):
            self.hi = mid
        else:
            self.lo = mid

    def width(self) -> Fraction:
        return self.hi - self.lo


def isolate_real_roots(a: UPoly) -> list[RealRoot]:
    """Isolating intervals, in increasing order, for the real roots of squarefree ``a``."""
    if deg(a) < 1:
        return []
    seq = sturm_sequence(a)
    B = cauchy_bound(a)
    out = []
    stack = [(-B, B)]
    while stack:
        lo, hi = stack.pop()
        k = count_roots(seq, lo, hi)
        if k == 0:
            continue
        if k == 1:
            out.append(RealRoot(a, lo, hi))
            continue
        # split at a non-root so every interval endpoint stays a non-root
        for w in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(2, 5), Fraction(3, 5)):
            mid = lo + (hi - lo) * w
            if evaluate(a, mid):
                break
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort(key=lambda r: r.lo)
    return out


def sign_at_root(g: UPoly, root: RealRoot) -> int:
    """Exact sign of ``g`` at the isolated root."""
    g = rem(g, root.poly)
    if not g:
        return 0
    if root.exact:
        return _sign(evaluate(g, root.lo))
    common = gcd(root.poly, g)
    if deg(common) > 0:
        seq = sturm_sequence(common)
        if count_roots(seq, root.lo, root.hi) > 0:
            return 0
    gs = squarefree_part(g)
    seq = sturm_sequence(gs)
    while True:
        if root.exact:
            return _sign(evaluate(g, root.lo))
        if evaluate(gs, root.lo) and count_roots(seq, root.lo, root.hi) == 0:
            return _sign(evaluate(g, root.hi))
        root.refine()


# -- quotient rings Q[t]/(q) --------------------------------------------------

class QuotientRing:
    """Arithmetic and traces in Q[t]/(q)."""

    def __init__(self, q: UPoly):
        if deg(q) < 1:
            raise ValueError("modulus must have positive degree")
        self.q = monic(q)
        self.n = deg(q)
        self._t_pows = None

    def reduce(self, a: UPoly) -> UPoly:
        return rem(a, self.q)

    def mul(self, a: UPoly, b: UPoly) -> UPoly:
        return rem(mul(a, b), self.q)

    def inv(self, a: UPoly) -> UPoly:
        g, s, _ = xgcd(rem(a, self.q), self.q)
        if deg(g) != 0:
            raise ZeroDivisionError("element is not invertible modulo q")
        return rem(s, self.q)

    def is_unit(self, a: UPoly) -> bool:
        return deg(gcd(rem(a, self.q), self.q)) == 0

    def eval_poly(self, p: Poly, images: Sequence[UPoly]) -> UPoly:
        """Image of a multivariate polynomial under x_i -> images[i]."""
        cache: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = (Fraction(1),) if e == 0 else self.mul(power(i, e - 1), images[i])
            return cache[key]

        out: UPoly = ()
        for m, c in p.terms.items():
            t = (c,)
            for i, e in enumerate(m):
                if e:
                    t = self.mul(t, power(i, e))
            out = add(out, t)
        return out

    def trace(self, a: UPoly) -> Fraction:
        """Trace of multiplication by ``a``: the sum of a over the roots of q with multiplicity."""
        a = self.reduce(a)
        total = Fraction(0)
        cur = a
        for i in range(self.n):
            if i < len(cur):
                total += cur[i]
            cur = self.mul(cur, (Fraction(0), Fraction(1)))
        return total


# -- complex root discs -------------------------------------------------------

def sqrt_upper(x: Fraction, bits: int = 64) -> Fraction:
    if x < 0:
        raise ValueError("negative")
    S = 1 << bits
    num = x.numerator * x.denominator * S * S
    r = isqrt(num)
    if r * r < num:
        r += 1
    return Fraction(r, x.denominator * S)


def sqrt_lower(x: Fraction, bits: int = 64) -> Fraction:
    if x < 0:
        raise ValueError("negative")
    S = 1 << bits
    return Fraction(isqrt(x.numerator * x.denominator * S * S), x.denominator * S)


class GaussQ:
    """Complex number with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, o):
        o = o if isinstance(o, GaussQ) else GaussQ(o)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = o if isinstance(o, GaussQ) else GaussQ(o)
        return GaussQ(self.re - o.re, self.im - o.im)

    def __mul__(self, o):
        o = o if isinstance(o, GaussQ) else GaussQ(o)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __repr__(self):
        return f"GaussQ({float(self.re)}, {float(self.im)})"


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    v = Fraction(int(man)) * (Fraction(2) ** exp)
    return -v if sign else v


def taylor_at(a: UPoly, z: GaussQ) -> list[GaussQ]:
    """Coefficients of a(z + s) as a polynomial in s."""
    c = [GaussQ(x) for x in a]
    n = len(c)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            c[j] = c[j] + z * c[j + 1]
    return c


def eval_gauss(a: UPoly, z: GaussQ) -> GaussQ:
    v = GaussQ(0)
    for c in reversed(a):
        v = v * z + c
    return v


@dataclass(frozen=True)
class RootDisc:
    """A closed disc |t - center| <= sqrt(radius_sq) containing exactly one root."""

    center: GaussQ
    radius_sq: Fraction

    @property
    def is_real_candidate(self) -> bool:
        return self.center.im * self.center.im <= self.radius_sq


class RootIsolationError(RuntimeError):
    pass


def isolate_complex_roots(q: UPoly, dps: int = 40) -> list[RootDisc]:
    """Certified pairwise-disjoint discs, one around each root of squarefree ``q``.

    Approximate roots come from mpmath; each disc radius is d*|q(z)/q'(z)|,
    which always contains a root, evaluated exactly at the rational center.
    Disjointness of all d discs then forces one root per disc.
    """
    d = deg(q)
    if d < 1:
        return []
    dq = derivative(q)
    while dps <= 2000:
        with mpmath.workdps(dps):
            try:
                approx = mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator for c in reversed(q)],
                                          maxsteps=200 + 20 * d, extraprec=2 * dps)
            except mpmath.NoConvergence:
                dps *= 2
                continue
            if not isinstance(approx, list):
                approx = [approx]
            centers = [GaussQ(_mpf_to_fraction(mpmath.re(r)), _mpf_to_fraction(mpmath.im(r))) for r in approx]
        discs = []
        ok = True
        for z in centers:
            den = eval_gauss(dq, z).abs2()
            if not den:
                ok = False
                break
            discs.append(RootDisc(z, d * d * eval_gauss(q, z).abs2() / den))
        if ok:
            for i in range(d):
                for j in range(i + 1, d):
                    sep = (discs[i].center - discs[j].center).abs2()
                    if sep <= 2 * (discs[i].radius_sq + discs[j].radius_sq):
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            return discs
        dps *= 2
    raise RootIsolationError("could not separate the roots")


def modulus_bounds(a: UPoly, disc: RootDisc) -> tuple[Fraction, Fraction]:
    """Rigorous (lower, upper) bounds for |a(t)| over the disc."""
    coeffs = taylor_at(a, disc.center)
    rho = sqrt_upper(disc.radius_sq)
    centre = sqrt_upper(coeffs[0].abs2()) if coeffs else Fraction(0)
    centre_lo = sqrt_lower(coeffs[0].abs2()) if coeffs else Fraction(0)
    err = Fraction(0)
    rk = Fraction(1)
    for c in coeffs[1:]:
        rk *= rho
        err += sqrt_upper(c.abs2()) * rk
    return max(centre_lo - err, Fraction(0)), centre + err
