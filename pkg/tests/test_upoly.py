import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from helpers import XY, rationals
from icis_index import upoly as U
from icis_index.grammar import parse_poly

T = sympy.Symbol("t")
upolys = st.lists(rationals, min_size=1, max_size=7).map(U.trim)


def to_sympy(a):
    return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in a])) or [0], T)


def from_roots(roots):
    out = (Fraction(1),)
    for r in roots:
        out = U.mul(out, (Fraction(-r), Fraction(1)))
    return out


def test_trim_and_conversion():
    assert U.trim([1, 2, 0, 0]) == (1, 2)
    assert U.trim([0, 0]) == ()
    p = parse_poly("3*y^2 - 1", XY)
    assert U.from_poly(p, 1) == (-1, 0, 3)
    assert U.to_poly((-1, 0, 3), XY, 1) == p
    with pytest.raises(ValueError):
        U.from_poly(parse_poly("x*y", XY), 1)


@given(upolys, upolys)
def test_division(a, b):
    if not b:
        with pytest.raises(ZeroDivisionError):
            U.divmod_(a, b)
        return
    q, r = U.divmod_(a, b)
    assert U.add(U.mul(q, b), r) == a
    assert U.deg(r) < U.deg(b)


@given(upolys, upolys)
def test_gcd_matches_sympy(a, b):
    if not a and not b:
        return
    g = U.gcd(a, b)
    ref = sympy.gcd(to_sympy(a), to_sympy(b))
    assert U.deg(g) == ref.degree()
    d, s, t = U.xgcd(a, b)
    assert U.add(U.mul(s, a), U.mul(t, b)) == d


def test_squarefree_decomposition():
    a = U.mul(U.mul(from_roots([1, 1, 1]), from_roots([2, 2])), from_roots([Fraction(-1, 3)]))
    dec = U.squarefree_decomposition(a)
    assert {(f, k) for f, k in dec} == {(from_roots([Fraction(-1, 3)]), 1), (from_roots([2]), 2),
                                        (from_roots([1]), 3)}
    assert U.squarefree_part(a) == U.monic(from_roots([1, 2, Fraction(-1, 3)]))


def test_real_root_counts_match_sympy():
    rng = random.Random(12)
    for _ in range(60):
        a = U.trim([rng.randint(-6, 6) for _ in range(rng.randint(2, 8))])
        if U.deg(a) < 1:
            continue
        sf = U.squarefree_part(a)
        roots = U.isolate_real_roots(sf)
        assert len(roots) == len(sympy.real_roots(to_sympy(sf)))
        for r in roots:
            assert U.count_roots(U.sturm_sequence(sf), r.lo, r.hi) == 1 or r.exact
        assert all(x.hi <= y.lo for x, y in zip(roots, roots[1:]))


def test_isolation_with_rational_roots():
    a = from_roots([0, Fraction(1, 2), Fraction(-7, 3), 5])
    roots = U.isolate_real_roots(a)
    assert len(roots) == 4
    for r, true in zip(roots, sorted([0, Fraction(1, 2), Fraction(-7, 3), 5])):
        assert r.lo <= true <= r.hi


def test_sign_at_root():
    # sqrt(2) is a root of t^2 - 2
    q = (Fraction(-2), Fraction(0), Fraction(1))
    pos, = [r for r in U.isolate_real_roots(q) if r.hi > 0]
    assert U.sign_at_root((Fraction(-1), Fraction(1)), pos) == 1  # sqrt 2 - 1 > 0
    assert U.sign_at_root((Fraction(-3, 2), Fraction(1)), pos) == -1  # sqrt 2 - 3/2 < 0
    assert U.sign_at_root(U.mul(q, (1, 1)), pos) == 0
    assert U.sign_at_root((Fraction(-141421, 100000), Fraction(1)), pos) == 1


def test_quotient_ring_trace_and_inverse():
    q = from_roots([1, 2, 3])
    R = U.QuotientRing(q)
    assert R.trace((Fraction(1),)) == 3
    assert R.trace((0, 1)) == 6
    assert R.trace((0, 0, 1)) == 14
    a = (Fraction(1), Fraction(1))  # t + 1 is a unit: roots 1, 2, 3
    inv = R.inv(a)
    assert R.mul(a, inv) == (1,)
    assert R.trace(inv) == Fraction(1, 2) + Fraction(1, 3) + Fraction(1, 4)
    assert not R.is_unit((Fraction(-2), Fraction(1)))
    with pytest.raises(ZeroDivisionError):
        R.inv((Fraction(-2), Fraction(1)))


def test_trace_of_conjugate_pair_is_rational():
    # t^2 + 1: sum over +-i of 1/(t + 2) = 4/5
    R = U.QuotientRing((Fraction(1), Fraction(0), Fraction(1)))
    assert R.trace(R.inv((Fraction(2), Fraction(1)))) == Fraction(4, 5)


def test_complex_discs_contain_roots():
    rng = random.Random(3)
    for _ in range(20):
        a = U.squarefree_part(U.trim([rng.randint(-5, 5) for _ in range(rng.randint(3, 8))]))
        if U.deg(a) < 1:
            continue
        discs = U.isolate_complex_roots(a)
        assert len(discs) == U.deg(a)
        for root in sympy.Poly(to_sympy(a)).nroots(n=30):
            z = complex(root)
            near = [d for d in discs
                    if (float(d.center.re) - z.real) ** 2 + (float(d.center.im) - z.imag) ** 2
                    <= float(d.radius_sq) * 1.0001 + 1e-40]
            assert len(near) == 1


def test_modulus_bounds_enclose_value():
    a = from_roots([2, -1])
    disc, = [d for d in U.isolate_complex_roots(a) if d.center.re > 0]
    lo, hi = U.modulus_bounds((Fraction(0), Fraction(1)), disc)  # |t| at t = 2
    assert lo <= 2 <= hi and hi - lo < Fraction(1, 10 ** 6)


def test_cauchy_bound():
    a = from_roots([3, -4, Fraction(1, 2)])
    assert U.cauchy_bound(a) > 4
