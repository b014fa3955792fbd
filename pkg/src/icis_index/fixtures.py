"""Small germ problems with known answers, shared by the CLI self-test and the tests."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .index import GermProblem


@dataclass(frozen=True)
class Fixture:
    name: str
    vars: tuple
    f: tuple
    omega: tuple
    complex_index: int | None = None
    real_index: int | None = None
    # (epsilon, delta) pairs at which the fiber pipeline applies directly
    fibers: tuple = ()
    perturb: tuple | None = None  # (eta coefficients as strings, lambda)
    notes: str = ""

    def problem(self) -> GermProblem:
        return GermProblem.from_strings(self.vars, self.f, self.omega)

    def eta(self):
        if self.perturb is None:
            return None, None
        p = self.problem()
        from .grammar import parse_poly
        return tuple(parse_poly(s, p.vars) for s in self.perturb[0]), Fraction(self.perturb[1])

    def germ_text(self) -> str:
        lines = [f"vars: {', '.join(self.vars)}"]
        if self.f:
            lines.append(f"f: {', '.join(self.f)}")
        lines.append(f"omega: {', '.join(self.omega)}")
        return "\n".join(lines) + "\n"


F = Fraction
XY = ("x", "y")

CUSP_HAMILTONIAN = Fixture("cusp-hamiltonian", XY, ("x^2 + y^3",), ("3*y^2", "-2*x"), complex_index=6,
                           real_index=0,
                           fibers=((F(1, 1000), F(1, 4)), (F(-1, 997), F(1, 4)), (F(2, 2003), F(1, 4))),
                           notes="two extra zeros of the affine system tend to (+-8i/27, 4/9) as eps -> 0")
# Same complex and real index; the extra -9/2 xy dy term cancels the unit 4 - 9y in the
# bordered minor modulo f, so every zero of the affine fiber system stays near the origin.
CUSP_HAMILTONIAN_NEAR = Fixture("cusp-hamiltonian-near", XY, ("x^2 + y^3",), ("3*y^2", "-2*x - 9/2*x*y"),
                                complex_index=6, real_index=0,
                                fibers=((F(1, 1000), F(1, 4)), (F(-1, 997), F(1, 4)), (F(1, 8), F(1)),
                                        (F(-1, 8), F(1))))
CUSP_DY = Fixture("cusp-dy", XY, ("x^2 + y^3",), ("0", "1"), complex_index=3, real_index=-1,
                  fibers=((F(1, 8), F(1)), (F(-1, 8), F(1)), (F(1, 27), F(1)), (F(-1, 50), F(1))))
CUSP_DX = Fixture("cusp-dx", XY, ("x^2 + y^3",), ("1", "0"), complex_index=4, real_index=0,
                  fibers=((F(1, 1000), F(1, 4)), (F(-1, 1000), F(1, 4)), (F(1, 500), F(1, 4))),
                  perturb=(("-3", "5"), "1/20"))
MORSE_DX = Fixture("morse-dx", XY, ("x^2 + y^2",), ("1", "0"), complex_index=2, real_index=1,
                   fibers=((F(1, 4), F(1)), (F(-1, 4), F(1)), (F(1, 27), F(1))))
HYPERBOLA_DX = Fixture("hyperbola-dx", XY, ("x^2 - y^2",), ("1", "0"), complex_index=2, real_index=-1,
                       fibers=((F(1, 8), F(1)), (F(-1, 8), F(1)), (F(1, 27), F(1))))
A4_DY = Fixture("a4-dy", XY, ("x^2 + y^5",), ("0", "1"), complex_index=5, real_index=-1,
                fibers=((F(1, 8), F(1)), (F(-1, 8), F(1)), (F(1, 27), F(1))))
E6_LINEAR = Fixture("e6-linear", XY, ("x^3 + y^4",), ("2", "-3"), complex_index=8, real_index=0,
                    fibers=((F(1, 1000), F(1, 4)), (F(-1, 997), F(1, 4)), (F(2, 2003), F(1, 4))),
                    notes="one extra zero of the affine fiber system stays outside the ball")

PLANE_CURVES = (CUSP_HAMILTONIAN, CUSP_HAMILTONIAN_NEAR, CUSP_DY, CUSP_DX, MORSE_DX, HYPERBOLA_DX, A4_DY, E6_LINEAR)
FIBER_FIXTURES = tuple(fx for fx in PLANE_CURVES if fx.fibers)
# fixtures whose affine fiber system has all its zeros in the ball: the trace route applies
TRACE_FIXTURES = tuple(fx for fx in FIBER_FIXTURES if fx not in (CUSP_HAMILTONIAN, E6_LINEAR))

# smooth ambient case, k = 0
MORSE_SMOOTH = Fixture("morse-smooth", XY, (), ("x", "y"), complex_index=1, real_index=1)
FOLD_SMOOTH = Fixture("x2dx", ("x",), (), ("x^2",), complex_index=2, real_index=0)
MONKEY_SMOOTH = Fixture("monkey-saddle", XY, (), ("3*x^2 - 3*y^2", "-6*x*y"), complex_index=4, real_index=-2)
BRIESKORN_SMOOTH = Fixture("d(x3+y4)", XY, (), ("3*x^2", "4*y^3"), complex_index=6, real_index=0)
SMOOTH = (MORSE_SMOOTH, FOLD_SMOOTH, MONKEY_SMOOTH, BRIESKORN_SMOOTH)

# higher dimension
QUADRIC3 = Fixture("quadric-cyclic", ("x", "y", "z"), ("x^2 + y^2 + z^2",), ("y", "z", "x"))

ALL = {fx.name: fx for fx in (*PLANE_CURVES, *SMOOTH, QUADRIC3)}

# independent-channel reference values used by the self-test
SELFTEST_ZERO_COUNTS = (
    (CUSP_HAMILTONIAN, F(1, 1000), F(1, 4)),
    (CUSP_DY, F(1, 8), F(1)),
    (MORSE_DX, F(1, 4), F(1)),
)


@dataclass
class SelfTestResult:
    name: str
    passed: bool
    detail: str = ""
    extra: dict = field(default_factory=dict)
