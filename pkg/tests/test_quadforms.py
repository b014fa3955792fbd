import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from helpers import XY, check_functional_choices, perturbed_sign_count, random_poly
from icis_index import fixtures as FX
from icis_index import upoly as U
from icis_index.index import GermProblem
from icis_index.oracle import (DiscCertificationError, bordered_minor, FiberSpec, generic_eta, real_zero_signs,
                               recovered_real_index, solve_plane_system)
from icis_index.grammar import parse_poly
from icis_index.poly import Poly, PolyMat
from icis_index.quadforms import (QuadFormError, SignatureTriple, SymMat, el_functional_smooth, fiber_functional,
                                  gram, hessian_class, real_index_smooth, real_index_smooth_report,
                                  real_index_via_fiber, real_index_via_fiber_report, signature, smooth_algebra)

F = Fraction
small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def G(f, omega):
    return GermProblem.from_strings(XY, f, omega)


def random_symmetric(rng, n, rank=None):
    """Random symmetric matrix, optionally of prescribed rank, as sum of rank-one terms."""
    rank = n if rank is None else rank
    M = [[F(0)] * n for _ in range(n)]
    for _ in range(rank):
        v = [F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
        s = rng.choice([-1, 1])
        for i in range(n):
            for j in range(n):
                M[i][j] += s * v[i] * v[j]
    return SymMat.from_rows(M)


def random_invertible(rng, n):
    while True:
        S = [[F(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)] for _ in range(n)]
        if PolyMat.from_rows(S, ()).det():
            return S


# -- signatures ---------------------------------------------------------------------

def test_signature_examples():
    assert signature(SymMat.from_rows([[1, 0], [0, -1]])) == SignatureTriple(1, 1, 0)
    assert signature(SymMat.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == SignatureTriple(3, 0, 0)
    assert signature(SymMat.from_rows([[0, 1], [1, 0]])) == SignatureTriple(1, 1, 0)
    assert signature(SymMat.from_rows([[0, 0], [0, 0]])) == SignatureTriple(0, 0, 2)
    t = signature(SymMat.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, -3]]))
    assert (t.positive, t.negative, t.zero, t.signature, t.dim) == (1, 2, 0, -1, 3)


def test_symmat_validation():
    with pytest.raises(ValueError):
        SymMat.from_rows([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        SymMat(2, ((1, 0),))


def test_signature_matches_eigenvalues():
    import numpy as np
    rng = random.Random(8)
    for _ in range(60):
        n = rng.randint(1, 6)
        m = random_symmetric(rng, n, rng.randint(0, n))
        ev = np.linalg.eigvalsh(np.array([[float(v) for v in r] for r in m.entries]))
        tol = 1e-9 * max(1.0, float(np.max(np.abs(ev))))
        t = signature(m)
        assert (t.positive, t.negative) == (int((ev > tol).sum()), int((ev < -tol).sum()))


def test_sylvester_congruence_invariance():
    rng = random.Random(9)
    for _ in range(60):
        n = rng.randint(1, 6)
        m = random_symmetric(rng, n, rng.randint(0, n))
        assert signature(m.congruent(random_invertible(rng, n))) == signature(m)


@given(st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=9, max_size=9))
def test_sylvester_property(diag, s):
    S = [s[0:3], s[3:6], s[6:9]]
    if not PolyMat.from_rows(S, ()).det():
        return
    m = SymMat.from_rows([[diag[0], 0, 0], [0, diag[1], 0], [0, 0, diag[2]]])
    assert signature(m.congruent(S)) == SignatureTriple(sum(d > 0 for d in diag), sum(d < 0 for d in diag),
                                                        sum(d == 0 for d in diag))


# -- smooth case --------------------------------------------------------------------------

def test_functional_examples():
    q = smooth_algebra(G([], ["x", "y"]))
    assert el_functional_smooth(q, hessian_class(G([], ["x", "y"]))) == (1,)
    g = GermProblem.from_strings(("x",), [], ["x^2"])
    q = smooth_algebra(g)
    ell = el_functional_smooth(q, hessian_class(g))
    assert q.basis == ((0,), (1,)) and ell == (0, 1)
    assert gram(q, ell) == SymMat.from_rows([[0, 1], [1, 0]])
    g = G([], ["3*x^2", "4*y^3"])
    q = smooth_algebra(g)
    assert hessian_class(g) == parse_poly("72*x*y^2", XY)
    ell = el_functional_smooth(q, hessian_class(g))
    assert [q.basis[i] for i, v in enumerate(ell) if v] == [(1, 2)]


def test_smooth_real_indices():
    assert real_index_smooth(G([], ["x", "y"])) == 1
    assert real_index_smooth(GermProblem.from_strings(("x",), [], ["x^2"])) == 0
    assert real_index_smooth(G([], ["3*x^2 - 3*y^2", "-6*x*y"])) == -2
    assert real_index_smooth(G([], ["3*x^2", "4*y^3"])) == 0
    rep = real_index_smooth_report(G([], ["x", "y"]))
    assert rep.gram == SymMat.from_rows([[1]])


def test_smooth_brute_force_oracle():
    rng = random.Random(6)
    for fx in FX.SMOOTH:
        if len(fx.vars) != 2:
            continue
        for _ in range(3):
            shift = (F(rng.randint(1, 9), rng.randint(90, 200)) * rng.choice([-1, 1]),
                     F(rng.randint(1, 9), rng.randint(90, 200)) * rng.choice([-1, 1]))
            assert perturbed_sign_count(fx.problem(), shift) == real_index_smooth(fx.problem()) == fx.real_index


def test_smooth_errors():
    with pytest.raises(QuadFormError):
        real_index_smooth(G([], ["x^2", "0"]))
    with pytest.raises(QuadFormError):
        real_index_smooth(G(["x^2 + y^3"], ["0", "1"]))


def _random_smooth(rng):
    while True:
        A = (Poly.monomial(XY, (rng.randint(1, 3), 0)) + random_poly(rng, XY, min_deg=1, max_deg=3),
             Poly.monomial(XY, (0, rng.randint(1, 3))) + random_poly(rng, XY, min_deg=1, max_deg=3))
        g = GermProblem(XY, (), A)
        try:
            q = smooth_algebra(g)
        except QuadFormError:
            continue
        if 1 <= q.dim <= 12 and any(q.coords(hessian_class(g))):
            return g, q


def test_functional_choice_invariance():
    rng = random.Random(10)
    for fx in FX.SMOOTH:
        g = fx.problem()
        assert check_functional_choices(g, smooth_algebra(g), rng) == fx.real_index
    for _ in range(15):
        check_functional_choices(*_random_smooth(rng), rng)


def test_smooth_gram_nondegenerate():
    rng = random.Random(12)
    for _ in range(25):
        g, q = _random_smooth(rng)
        rep = real_index_smooth_report(g)
        assert rep.inertia.zero == 0 and rep.inertia.dim == q.dim
        assert abs(rep.real_index) <= q.dim and (q.dim - rep.real_index) % 2 == 0


def test_gram_rejects_wrong_length():
    q = smooth_algebra(G([], ["x", "y"]))
    with pytest.raises(ValueError):
        gram(q, (1, 2))


# -- fiber functional ----------------------------------------------------------------------

def test_fiber_functional_single_rational_zero():
    # omega = dx - y dy on f = x: single zero (0, 0) on the fiber x = 0
    g = G(["x"], ["1", "-y"])
    sol = solve_plane_system(g.f[0], bordered_minor(g))
    ell = fiber_functional(sol, g)
    from icis_index.hessian import FiberChart, htilde_at
    h = htilde_at(FiberChart.build(g), (0, 0))
    assert ell(Poly.one(XY)) == 1 / h


def test_fiber_functional_conjugate_pair_is_rational():
    # Morse fiber x^2 + y^2 = -1/4 has no real points; its two zeros of dx are conjugate
    g = FX.MORSE_DX.problem()
    # zeros (+-i/2, 0) with h~ = -4x there: sum 1/h~ = 0 and sum x/h~ = -1/2
    sol = solve_plane_system(g.f[0] + F(1, 4), bordered_minor(g))
    assert sol.distinct_count == 2 and U.deg(sol.radical) == 2
    ell = fiber_functional(sol, g)
    assert ell(Poly.one(XY)) == 0
    assert ell(parse_poly("x", XY)) == F(-1, 2)
    assert ell(parse_poly("y", XY)) == 0


def test_fiber_examples():
    assert real_index_via_fiber(FX.CUSP_DY.problem(), F(1, 8), 1) == -1
    assert real_index_via_fiber(FX.CUSP_DY.problem(), F(-1, 8), 1) == -1
    assert real_index_via_fiber(FX.MORSE_DX.problem(), F(1, 4), 1) == 1


@pytest.mark.parametrize("fx", FX.TRACE_FIXTURES, ids=lambda f: f.name)
def test_signature_route_matches_oracle(fx):
    eta, lam = fx.eta()
    for eps, delta in fx.fibers:
        spec = FiberSpec((eps,), delta, eta, lam)
        rep = real_index_via_fiber_report(fx.problem(), spec)
        assert rep.inertia.zero == 0
        assert rep.inertia.signature == real_zero_signs(fx.problem(), spec)
        assert rep.real_index == recovered_real_index(fx.problem(), spec) == fx.real_index
        assert rep.dim == fx.complex_index == rep.zeros


def test_perturbed_six_dimensional_gram():
    g = FX.CUSP_HAMILTONIAN_NEAR.problem()
    eta = generic_eta(XY, 1)
    for eps, delta in ((F(1, 1000), F(1, 4)), (F(-1, 997), F(1, 4)), (F(1, 8), F(1))):
        spec = FiberSpec((eps,), delta, eta, F(1, 50))
        rep = real_index_via_fiber_report(g, spec)
        assert rep.dim == 6 and rep.inertia.zero == 0
        assert rep.inertia.signature in (0, 2, -2)
        assert rep.inertia.signature == real_zero_signs(g, spec)


def test_far_zeros_block_trace_route():
    with pytest.raises(DiscCertificationError):
        real_index_via_fiber(FX.CUSP_HAMILTONIAN.problem(), F(1, 1000), F(1, 4))
    with pytest.raises(DiscCertificationError):
        real_index_via_fiber(FX.E6_LINEAR.problem(), F(1, 1000), F(1, 4))


def test_degenerate_zero_needs_perturbation():
    from icis_index.oracle import DegenerateConfiguration
    with pytest.raises(DegenerateConfiguration):
        real_index_via_fiber(FX.CUSP_DX.problem(), F(1, 1000), F(1, 4))
