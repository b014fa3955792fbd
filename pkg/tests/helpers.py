"""Random generators and hypothesis strategies shared by the test modules."""
from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from icis_index.grammar import parse_poly
from icis_index.poly import Poly, PolyMat

XY = ("x", "y")
XYZ = ("x", "y", "z")


def random_poly(rng: random.Random, vars, max_deg=3, max_terms=4, min_deg=0, coeff=5) -> Poly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        m = tuple(rng.randint(0, max_deg) for _ in vars)
        if sum(m) < min_deg or sum(m) > max_deg:
            continue
        terms[m] = Fraction(rng.randint(-coeff, coeff), rng.randint(1, 3))
    return Poly(vars, terms)


def random_matrix(rng: random.Random, rows, cols, vars=(), **kw) -> PolyMat:
    if not vars:
        return PolyMat.from_rows([[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(cols)]
                                  for _ in range(rows)], ())
    return PolyMat.from_rows([[random_poly(rng, vars, **kw) for _ in range(cols)] for _ in range(rows)], vars)


def finite_ideal(rng: random.Random, vars, extra=(0, 2), max_power=4):
    """Generators x_i^a + (higher terms) for every variable, plus random extras: finite colength."""
    n = len(vars)
    gens = []
    for i in range(n):
        a = rng.randint(1, max_power)
        lead = Poly.monomial(vars, tuple(a if j == i else 0 for j in range(n)))
        gens.append(lead + random_poly(rng, vars, max_deg=a + 2, max_terms=2, min_deg=a + 1))
    gens += [random_poly(rng, vars, max_deg=3, max_terms=3, min_deg=1) for _ in range(rng.randint(*extra))]
    return [g for g in gens if g]


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def polys(draw, vars=XY, max_deg=3, max_terms=5):
    n = len(vars)
    monos = st.tuples(*[st.integers(0, max_deg)] * n).filter(lambda m: sum(m) <= max_deg)
    terms = draw(st.dictionaries(monos, rationals, max_size=max_terms))
    return Poly(vars, terms)


# -- independent oracles -------------------------------------------------------------

def pullback_index(problem, branch) -> int:
    """Real index of omega on a unibranch real curve from a parameterization t -> (x(t), y(t)).

    The pulled-back form is a(t) dt; with a(t) = c t^m + ..., the index is
    sign(c) for odd m and 0 for even m.
    """
    images = [parse_poly(s, ("t",)) for s in branch]
    for fi in problem.f:
        assert not fi.compose(images), "the parameterization must lie on the curve"
    a = Poly.zero(("t",))
    for Ai, xi in zip(problem.A, images):
        a = a + Ai.compose(images) * xi.diff(0)
    m = a.min_degree()
    c = a.coefficient((m,))
    return 0 if m % 2 == 0 else (1 if c > 0 else -1)


def perturbed_sign_count(problem, shift, radius=Fraction(1, 2), digits=40) -> int:
    """Sum of sign det(dA_i/dx_j) over the real zeros of A - shift near the origin (k = 0, n = 2)."""
    import sympy

    x, y = sympy.symbols(problem.vars)
    A = [sympy.sympify(str(a).replace("^", "**")) - sympy.Rational(s.numerator, s.denominator)
         for a, s in zip(problem.A, shift)]
    jac = sympy.Matrix(A).jacobian([x, y]).det()
    total = 0
    for sol in sympy.solve(A, [x, y], dict=True):
        px, py = (complex(sympy.N(sol[v], digits)) for v in (x, y))
        if abs(px.imag) > 1e-20 or abs(py.imag) > 1e-20:
            continue
        if px.real ** 2 + py.real ** 2 >= float(radius) ** 2:
            continue
        d = sympy.N(jac.subs({x: sol[x], y: sol[y]}), digits)
        assert abs(d) > 1e-20, "degenerate zero: choose another shift"
        total += 1 if sympy.re(d) > 0 else -1
    return total


def check_functional_choices(g, q, rng, count=5):
    """Every functional positive on the Hessian class gives the same nondegenerate signature."""
    from icis_index.quadforms import el_functional_smooth, gram, hessian_class, signature

    hc = q.coords(hessian_class(g))
    base = signature(gram(q, el_functional_smooth(q, hessian_class(g))))
    done = 0
    while done < count:
        ell = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(q.dim)]
        val = sum(a * b for a, b in zip(ell, hc))
        if val == 0:
            continue
        if val < 0:
            ell = [-v for v in ell]
        t = signature(gram(q, ell))
        assert t == base and t.zero == 0
        done += 1
    return base.signature
