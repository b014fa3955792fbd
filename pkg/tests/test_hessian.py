import random
from fractions import Fraction

import pytest

from helpers import XY, XYZ, random_poly
from icis_index import fixtures as FX
from icis_index.grammar import parse_poly
from icis_index.hessian import (ChartError, FiberChart, hessian_direct, hessian_formula, hessian_identity_report,
                                htilde_at, restriction_coefficients, verify_hessian_identity)
from icis_index.index import GermProblem
from icis_index.poly import Poly, RatFunc


def G(f, omega, vars=XY):
    return GermProblem.from_strings(vars, f, omega)


def random_germ(rng, n, k):
    """f of degree <= 3 through the origin, A of degree <= 2, with a valid default chart."""
    vars = XY if n == 2 else XYZ
    while True:
        f = tuple(random_poly(rng, vars, max_deg=3, max_terms=4, min_deg=1) for _ in range(k))
        A = tuple(random_poly(rng, vars, max_deg=2, max_terms=3) for _ in range(n))
        if not all(f):
            continue
        g = GermProblem(vars, f, A)
        try:
            FiberChart.build(g)
        except ChartError:
            continue
        return g


def mutation_is_visible(g, index, seed):
    """Does adding 1 to m_index change the chain-rule Hessian at some random point?"""
    chart = FiberChart.build(g)
    m = list(chart.m)
    m[index] = m[index] + 1
    h0, h1 = hessian_direct(chart), hessian_direct(chart.with_m(m))
    rng = random.Random(seed)
    for _ in range(10):
        P = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in g.vars)
        if chart.valid_at(P) and h0.evaluate(P) != h1.evaluate(P):
            return True
    return False


# -- worked examples --------------------------------------------------------------

def test_restriction_examples():
    c = FiberChart.build(G(["x^2 + y^2"], ["x", "0"]))
    assert c.delta == parse_poly("2*x", XY)
    assert c.m == (parse_poly("-2*x*y", XY),)
    assert restriction_coefficients(c) == [RatFunc(parse_poly("-y", XY))]
    c = FiberChart.build(G(["x^2 + y^3"], ["0", "1"]))
    assert restriction_coefficients(c) == [RatFunc(Poly.one(XY))]
    c = FiberChart.build(G([], ["x", "y"]))
    assert restriction_coefficients(c) == [RatFunc(parse_poly("x", XY)), RatFunc(parse_poly("y", XY))]


def test_restriction_relation():
    rng = random.Random(9)
    for _ in range(10):
        c = FiberChart.build(random_germ(rng, 3, 1))
        for coef, mi in zip(restriction_coefficients(c), c.m):
            assert coef * RatFunc(c.delta) - RatFunc(mi) == RatFunc(Poly.zero(c.vars))


def test_direct_hessian_examples():
    assert hessian_direct(FiberChart.build(G(["x^2 + y^2"], ["x", "0"]))) == RatFunc(Poly.const(XY, -1))
    assert hessian_direct(FiberChart.build(G(["x^2 + y^3"], ["0", "1"]))).is_zero()
    assert hessian_direct(FiberChart.build(G([], ["x", "y"]))) == RatFunc(Poly.one(XY))


def test_formula_examples():
    for g in (G(["x^2 + y^2"], ["x", "0"]), G(["x^2 + y^3"], ["3*y^2", "-2*x"])):
        c = FiberChart.build(g)
        assert hessian_formula(c) == hessian_direct(c)
    c = FiberChart.build(G([], ["3*x^2 - 3*y^2", "-6*x*y"]))
    assert hessian_formula(c) == RatFunc(parse_poly("-36*x^2 - 36*y^2", XY))


def test_chart_errors():
    with pytest.raises(ChartError):
        FiberChart.build(G(["y^2"], ["1", "0"]), (0,))
    with pytest.raises(ValueError):
        FiberChart.build(G(["x^2 + y^2"], ["1", "0"]), (0, 1))


def test_verify_examples():
    assert verify_hessian_identity(FX.CUSP_HAMILTONIAN.problem(), trials=20, seed=0)
    assert verify_hessian_identity(FX.QUADRIC3.problem(), trials=20, seed=0)
    assert not verify_hessian_identity(FX.QUADRIC3.problem(), trials=20, seed=0, mutate_index=0)
    assert not verify_hessian_identity(FX.CUSP_HAMILTONIAN.problem(), trials=5, seed=0, mutate_index=0)


def test_verify_rejects_bad_shapes():
    with pytest.raises(ValueError):
        hessian_identity_report(G([], ["x", "y"]))


def test_report_records_trials():
    rep = hessian_identity_report(FX.CUSP_DY.problem(), trials=7, seed=3)
    assert rep.holds and len(rep.trials) == 7 and all(t["ok"] for t in rep.trials)
    again = hessian_identity_report(FX.CUSP_DY.problem(), trials=7, seed=3)
    assert again.trials == rep.trials


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2)])
def test_identity_random(n, k):
    rng = random.Random(100 * n + k)
    for t in range(17):
        g = random_germ(rng, n, k)
        assert verify_hessian_identity(g, trials=20, seed=t)


def test_identity_other_charts():
    rng = random.Random(77)
    checked = 0
    for t in range(20):
        g = random_germ(rng, 3, 1)
        for e in (1, 2):
            try:
                FiberChart.build(g, (e,))
            except ChartError:
                continue
            assert verify_hessian_identity(g, trials=5, seed=t, eliminated=(e,))
            checked += 1
    assert checked >= 20


def test_mutation_detected_whenever_it_matters():
    rng = random.Random(5)
    visible = 0
    for t in range(60):
        n, k = [(2, 1), (3, 1), (3, 2)][t % 3]
        g = random_germ(rng, n, k)
        if mutation_is_visible(g, 0, t):
            visible += 1
            assert not verify_hessian_identity(g, trials=20, seed=t, mutate_index=0)
        else:
            # a constant shift of m/Delta with Delta constant along the fiber leaves h unchanged
            assert verify_hessian_identity(g, trials=20, seed=t, mutate_index=0)
    assert visible >= 20


def _zero_at(rng, vars, P):
    """A germ with omega|V vanishing at the rational point P of its fiber."""
    n = len(vars)
    f = random_poly(rng, vars, max_deg=3, max_terms=4, min_deg=1)
    B = [random_poly(rng, vars, max_deg=2, max_terms=3) for _ in vars]
    mu = Fraction(rng.randint(1, 3))
    grad = [f.diff(i).evaluate(P) for i in range(n)]
    A = tuple(b - b.evaluate(P) + mu * gi for b, gi in zip(B, grad))
    return GermProblem(vars, (f,), A) if f else None


def test_htilde_sign_chart_independent():
    rng = random.Random(31)
    compared = 0
    while compared < 30:
        vars = rng.choice([XY, XYZ])
        P = tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in vars)
        g = _zero_at(rng, vars, P)
        if g is None:
            continue
        signs = set()
        for e in range(g.n):
            try:
                c = FiberChart.build(g, (e,))
            except ChartError:
                continue
            if c.valid_at(P):
                v = htilde_at(c, P)
                signs.add((v > 0) - (v < 0))
                assert htilde_at(c, P, route="direct") == v
        if len(signs) and sum(1 for e in range(g.n) if g.f[0].diff(e).evaluate(P)) >= 2:
            compared += 1
            assert len(signs) == 1
