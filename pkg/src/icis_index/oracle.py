"""Exact zero counting and real index recovery for plane curves (n = 2, k = 1).

The zeros of omega on the fiber {f = eps} are the common zeros of f - eps and
the bordered minor M = det[[f_x, f_y], [A_1, A_2]].  They are found through
a sheared resultant: with t = x + c*y and F monic in y, Res_y(F, G)(t)
vanishes exactly at the t-coordinates of the common zeros, each with the
intersection multiplicity of the point above it.  The first subresultant
gives y as a polynomial in t modulo the radical, so every zero becomes a
root of one univariate squarefree polynomial.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import upoly as U
from .hessian import FiberChart, htilde_function
from .index import GermProblem, complex_index
from .poly import Poly, PolyMat

log = logging.getLogger(__name__)

SHEARS = tuple(Fraction(c) for c in
               (0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2), 3, -3, Fraction(1, 3),
                Fraction(2, 3), Fraction(-3, 2), 5, Fraction(-2, 5), 7))


class OracleError(RuntimeError):
    exit_code = 3


class SharedComponent(OracleError):
    """The two curves share a component: zeros are not isolated."""


class DegenerateConfiguration(OracleError):
    """A retry with another epsilon, delta or perturbation is needed."""

    exit_code = 4


class DiscCertificationError(DegenerateConfiguration):
    """Some zero could not be certified inside the delta-disc."""


@dataclass(frozen=True)
class FiberSpec:
    epsilon: tuple
    delta: Fraction = Fraction(1)
    eta: tuple | None = None
    lam: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "epsilon", tuple(Fraction(e) for e in self.epsilon))
        object.__setattr__(self, "delta", Fraction(self.delta))
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.eta is not None:
            if self.lam is None or Fraction(self.lam) == 0:
                raise ValueError("a perturbation needs a nonzero lambda")
            object.__setattr__(self, "lam", Fraction(self.lam))

    def perturbed(self, g: GermProblem) -> GermProblem:
        if self.eta is None:
            return g
        return g.with_form([a - e.scale(self.lam) for a, e in zip(g.A, self.eta)])


def generic_eta(vars, seed: int) -> tuple:
    """A constant-coefficient 1-form with small nonzero integer coefficients."""
    rng = random.Random(seed)
    return tuple(Poly.const(vars, rng.choice([c for c in range(-5, 6) if c])) for _ in vars)


# -- resultants ---------------------------------------------------------------

def subresultant_coeffs(F: Poly, G: Poly, j: int, var: int = 1) -> list[Poly]:
    """Coefficients s_{j,0..j} of the j-th subresultant of F, G in variable ``var``.

    Determinantal definition: rows are the shifted coefficient vectors of F
    and G; keep the leading p+q-2j-1 columns and the column of y^i.
    """
    p, q = F.degree_in(var), G.degree_in(var)
    if j > min(p, q):
        raise ValueError("subresultant index too large")
    cF, cG = F.coeffs_in(var), G.coeffs_in(var)
    zero = Poly.zero(F.vars)
    width = p + q - j
    rows = []
    for a in range(q - j):
        shift = q - j - 1 - a
        rows.append([cF.get(width - 1 - col - shift, zero) for col in range(width)])
    for b in range(p - j):
        shift = p - j - 1 - b
        rows.append([cG.get(width - 1 - col - shift, zero) for col in range(width)])
    lead = p + q - 2 * j - 1
    out = []
    for i in range(j + 1):
        cols = list(range(lead)) + [width - 1 - i]
        out.append(PolyMat.from_rows([[r[c] for c in cols] for r in rows], F.vars).det())
    return out


def resultant(F: Poly, G: Poly, var: int = 1) -> Poly:
    return subresultant_coeffs(F, G, 0, var)[0]


# -- univariate representation ----------------------------------------------

@dataclass
class SolutionSet:
    """Common zeros of two plane curves as roots of a univariate polynomial.

    t = x + shear*y; ``factors`` is the squarefree decomposition of the
    resultant in t (factor, multiplicity); on the roots of ``radical``,
    y = y_param(t) and x = t - shear*y_param(t).
    """

    vars: tuple
    shear: Fraction
    resultant: U.UPoly
    factors: list
    radical: U.UPoly
    y_param: U.UPoly

    @property
    def total_count(self) -> int:
        return U.deg(self.resultant) if self.resultant else 0

    @property
    def distinct_count(self) -> int:
        return U.deg(self.radical)

    @property
    def all_simple(self) -> bool:
        return all(k == 1 for _, k in self.factors)

    def coords_mod(self, q: U.UPoly) -> tuple[U.UPoly, U.UPoly]:
        y = U.rem(self.y_param, q)
        x = U.rem(U.sub((Fraction(0), Fraction(1)), U.scale(y, self.shear)), q)
        return x, y

    def image(self, p: Poly, q: U.UPoly) -> U.UPoly:
        ring = U.QuotientRing(q)
        return ring.eval_poly(p, list(self.coords_mod(q)))


def _shear(p: Poly, c: Fraction) -> Poly:
    X, Y = Poly.gens(p.vars)
    return p.compose([X - Y.scale(c), Y])


def _binom_power(y0: U.UPoly, j: int, ring: U.QuotientRing) -> list[U.UPoly]:
    """Coefficients of (y - y0)^j in y, as elements of ``ring``."""
    out = [(Fraction(1),)]
    for _ in range(j):
        nxt = [()] * (len(out) + 1)
        for i, c in enumerate(out):
            nxt[i + 1] = U.add(nxt[i + 1], c)
            nxt[i] = U.sub(nxt[i], ring.mul(c, y0))
        out = nxt
    return out


def _y_on_roots(Fs: Poly, Gs: Poly, radical: U.UPoly) -> U.UPoly | None:
    """y as a polynomial in t on the roots of ``radical``, or None if the shear fails.

    Above a root t0 the gcd of F(t0, y) and G(t0, y) is the first subresultant
    S_j whose principal coefficient does not vanish.  When it has the single
    root y0 it equals s_jj (y - y0)^j, so y0 = -s_{j,j-1} / (j s_jj); that
    shape is verified exactly, which certifies that t separates the zeros.
    """
    rest, pieces = radical, []
    for j in range(1, min(Fs.degree_in(1), Gs.degree_in(1)) + 1):
        s = [U.from_poly(c, 0) for c in subresultant_coeffs(Fs, Gs, j)]
        common = U.monic(U.gcd(rest, s[j])) if s[j] else U.monic(rest)
        part = U.divmod_(rest, common)[0]
        if U.deg(part) > 0:
            ring = U.QuotientRing(part)
            y0 = ring.mul(U.scale(s[j - 1], Fraction(-1, j)), ring.inv(s[j]))
            expect = _binom_power(y0, j, ring)
            if any(U.rem(U.sub(s[i], ring.mul(s[j], expect[i])), part) for i in range(j + 1)):
                return None
            pieces.append((ring.q, y0))
        rest = common
        if U.deg(rest) < 1:
            break
    if U.deg(rest) > 0:
        return None
    # glue the pieces by the Chinese remainder theorem
    y, mod = (), (Fraction(1),)
    for q, y0 in pieces:
        g, a, _ = U.xgcd(mod, q)  # a*mod = g (mod q), g a nonzero constant
        k = U.rem(U.scale(U.mul(U.sub(y0, y), a), 1 / g[0]), q)
        y = U.add(y, U.mul(mod, k))
        mod = U.mul(mod, q)
    return U.rem(y, mod)


def solve_plane_system(F: Poly, G: Poly) -> SolutionSet:
    if F.nvars != 2:
        raise ValueError("plane systems only")
    if not F or not G:
        raise SharedComponent("one of the curves is the whole plane")
    for c in SHEARS:
        Fs, Gs = _shear(F, c), _shear(G, c)
        p, q = Fs.degree_in(1), Gs.degree_in(1)
        lcF, lcG = Fs.coeffs_in(1).get(p), Gs.coeffs_in(1).get(q)
        if not ((lcF is not None and lcF.is_constant()) or (lcG is not None and lcG.is_constant())):
            continue
        if min(p, q) < 1:
            # a curve without y after shearing is a union of vertical lines; try another shear
            continue
        R = U.from_poly(resultant(Fs, Gs), 0)
        if not R:
            raise SharedComponent("resultant vanishes identically: the curves share a component")
        if U.deg(R) == 0:
            return SolutionSet(F.vars, c, R, [], (Fraction(1),), ())
        factors = U.squarefree_decomposition(R)
        radical = U.monic(U.squarefree_part(R))
        y = _y_on_roots(Fs, Gs, radical)
        if y is None:
            log.debug("shear %s does not separate the zeros", c)
            continue
        return SolutionSet(F.vars, c, R, factors, radical, y)
    raise DegenerateConfiguration("no separating shear found among the candidates")


# -- disc membership ----------------------------------------------------------

@dataclass
class ZeroRecord:
    factor: int  # index into SolutionSet.factors
    multiplicity: int
    disc: U.RootDisc
    inside: bool


def _norm_bounds(sol: SolutionSet, q: U.UPoly, disc: U.RootDisc):
    x, y = sol.coords_mod(q)
    xl, xu = U.modulus_bounds(x, disc)
    yl, yu = U.modulus_bounds(y, disc)
    return xl * xl + yl * yl, xu * xu + yu * yu


def classify_zeros(sol: SolutionSet, delta: Fraction) -> list[ZeroRecord]:
    """Certify for each complex zero whether |x|^2 + |y|^2 < delta^2."""
    d2 = delta * delta
    out = []
    for fi, (q, k) in enumerate(sol.factors):
        dps = 40
        while True:
            discs = U.isolate_complex_roots(q, dps)
            recs, undecided = [], False
            for disc in discs:
                lo, hi = _norm_bounds(sol, q, disc)
                if hi < d2:
                    recs.append(ZeroRecord(fi, k, disc, True))
                elif lo > d2:
                    recs.append(ZeroRecord(fi, k, disc, False))
                else:
                    undecided = True
                    break
            if not undecided:
                out.extend(recs)
                break
            dps *= 2
            if dps > 1280:
                raise DiscCertificationError("a zero lies on (or too close to) the boundary sphere; change delta")
    return out


@dataclass
class FiberZeros:
    problem: GermProblem
    spec: FiberSpec
    solutions: SolutionSet
    zeros: list

    @property
    def count_in_disc(self) -> int:
        return sum(z.multiplicity for z in self.zeros if z.inside)

    @property
    def all_inside(self) -> bool:
        return all(z.inside for z in self.zeros)


def bordered_minor(g: GermProblem) -> Poly:
    f = g.f[0]
    return f.diff(0) * g.A[1] - f.diff(1) * g.A[0]


def _require_plane(g: GermProblem):
    if (g.n, g.k) != (2, 1):
        raise OracleError("the exact oracle handles plane curves only (n = 2, k = 1)")


def fiber_zeros(g: GermProblem, spec: FiberSpec) -> FiberZeros:
    _require_plane(g)
    gp = spec.perturbed(g)
    F = g.f[0] - spec.epsilon[0]
    sol = solve_plane_system(F, bordered_minor(gp))
    return FiberZeros(g, spec, sol, classify_zeros(sol, spec.delta))


def count_zeros_on_fiber(g: GermProblem, spec: FiberSpec) -> int:
    """Zeros of omega (or its perturbation) on f = eps inside the delta-ball, with multiplicity."""
    return fiber_zeros(g, spec).count_in_disc


def check_fiber_smooth(f: Poly, eps: Fraction, delta: Fraction) -> None:
    """Raise unless {f = eps} is nonsingular inside the delta-ball."""
    try:
        crit = solve_plane_system(f.diff(0), f.diff(1))
    except SharedComponent as exc:
        raise OracleError("f has a non-isolated critical locus") from exc
    if not crit.resultant or U.deg(crit.radical) < 1:
        return
    val = crit.image(f - eps, crit.radical)
    bad = U.gcd(crit.radical, val) if val else crit.radical
    if U.deg(bad) < 1:
        return
    sub = SolutionSet(crit.vars, crit.shear, bad, [(bad, 1)], bad, U.rem(crit.y_param, bad))
    if any(z.inside for z in classify_zeros(sub, delta)):
        raise DegenerateConfiguration(f"the fiber f = {eps} is singular inside the ball")


# -- real zeros and signs -----------------------------------------------------

@dataclass
class RealZero:
    interval: tuple
    point_interval: tuple
    multiplicity: int
    sign: int
    chart: tuple


def _real_in_disc(sol: SolutionSet, q, root: U.RealRoot, delta: Fraction) -> bool:
    x, y = sol.coords_mod(q)
    norm = U.sub(U.add(U.mul(x, x), U.mul(y, y)), (delta * delta,))
    s = U.sign_at_root(norm, root)
    if s == 0:
        raise DiscCertificationError("a real zero lies on the boundary circle; change delta")
    return s < 0


def _htilde_sign(g: GermProblem, sol: SolutionSet, q, root: U.RealRoot) -> tuple[int, tuple]:
    for elim in ((0,), (1,)):
        chart = FiberChart.build(g, elim)
        if U.sign_at_root(sol.image(chart.delta, q), root) == 0:
            continue
        ht = htilde_function(chart, route="direct")
        sn = U.sign_at_root(sol.image(ht.num, q), root)
        sd = U.sign_at_root(sol.image(ht.den, q), root)
        if sn == 0:
            raise DegenerateConfiguration("degenerate real zero: the Hessian vanishes")
        return sn * sd, elim
    raise DegenerateConfiguration("both f_x and f_y vanish at a zero: the fiber is singular")


def real_zeros(g: GermProblem, spec: FiberSpec) -> list[RealZero]:
    _require_plane(g)
    gp = spec.perturbed(g)
    F = g.f[0] - spec.epsilon[0]
    sol = solve_plane_system(F, bordered_minor(gp))
    out = []
    for q, k in sol.factors:
        for root in U.isolate_real_roots(q):
            if not _real_in_disc(sol, q, root, spec.delta):
                continue
            if k != 1:
                raise DegenerateConfiguration("a real zero is degenerate; perturb the form")
            sign, elim = _htilde_sign(gp, sol, q, root)
            x, y = sol.coords_mod(q)
            pt = tuple((U.evaluate(c, root.lo), U.evaluate(c, root.hi)) for c in (x, y))
            out.append(RealZero((root.lo, root.hi), pt, k, sign, elim))
    return out


def real_zero_signs(g: GermProblem, spec: FiberSpec) -> int:
    """Sum of sign(h * Delta^2) over the real zeros in the disc."""
    return sum(z.sign for z in real_zeros(g, spec))


# -- Euler characteristic -------------------------------------------------------

def circle_restriction(f: Poly, eps: Fraction, delta: Fraction) -> U.UPoly:
    """Numerator of f - eps on x = delta(1-t^2)/(1+t^2), y = 2 delta t/(1+t^2)."""
    d = max(f.total_degree(), 1)
    one_minus = U.trim([delta, 0, -delta])
    two_t = U.trim([0, 2 * delta])
    one_plus = U.trim([1, 0, 1])
    pows = {}

    def pw(base, e, key):
        if (key, e) not in pows:
            r = (Fraction(1),)
            for _ in range(e):
                r = U.mul(r, base)
            pows[key, e] = r
        return pows[key, e]

    N: U.UPoly = ()
    for (a, b), c in f.terms.items():
        term = U.mul(U.mul(pw(one_minus, a, "x"), pw(two_t, b, "y")), pw(one_plus, d - a - b, "w"))
        N = U.add(N, U.scale(term, c))
    return U.sub(N, U.scale(pw(one_plus, d, "w"), eps))


def euler_char_real_curve(f: Poly, eps, delta) -> int:
    """chi of {f = eps} in the closed delta-disc: half the number of boundary points."""
    eps, delta = Fraction(eps), Fraction(delta)
    N = circle_restriction(f, eps, delta)
    if not N:
        raise DegenerateConfiguration("the boundary circle lies on the fiber")
    d = max(f.total_degree(), 1)
    at_infinity = 2 * d - U.deg(N)
    if at_infinity > 1:
        raise DegenerateConfiguration("tangency with the boundary circle at (-delta, 0); change delta")
    count = at_infinity
    for q, k in U.squarefree_decomposition(N):
        n_real = len(U.isolate_real_roots(q))
        if k > 1 and n_real:
            raise DegenerateConfiguration("the fiber is tangent to the boundary circle; change delta")
        count += n_real
    if count % 2:
        raise DegenerateConfiguration("odd number of boundary points")
    return count // 2


def recovered_real_index(g: GermProblem, spec: FiberSpec) -> int:
    check_fiber_smooth(g.f[0], spec.epsilon[0], spec.delta)
    return real_zero_signs(g, spec) - euler_char_real_curve(g.f[0], spec.epsilon[0], spec.delta) + 1


@dataclass
class OracleReport:
    zeros_in_disc: int
    affine_zeros: int
    distinct_affine: int
    all_simple: bool
    real_zeros: list = field(default_factory=list)
    sign_sum: int | None = None
    euler_char: int | None = None
    recovered_index: int | None = None
    shear: Fraction = Fraction(0)
    complex_index: object = None
    diagnostics: list = field(default_factory=list)


def oracle_report(g: GermProblem, spec: FiberSpec) -> OracleReport:
    fz = fiber_zeros(g, spec)
    sol = fz.solutions
    rep = OracleReport(fz.count_in_disc, sol.total_count, sol.distinct_count, sol.all_simple, shear=sol.shear)
    rep.complex_index = complex_index(g).index
    if rep.complex_index != fz.count_in_disc:
        rep.diagnostics.append(
            f"{fz.count_in_disc} zeros in the ball but complex index {rep.complex_index}: epsilon is not small "
            "relative to delta, so the recovered index is not certified")
    try:
        check_fiber_smooth(g.f[0], spec.epsilon[0], spec.delta)
        rz = real_zeros(g, spec)
        rep.real_zeros = rz
        rep.sign_sum = sum(z.sign for z in rz)
        rep.euler_char = euler_char_real_curve(g.f[0], spec.epsilon[0], spec.delta)
        rep.recovered_index = rep.sign_sum - rep.euler_char + 1
    except DegenerateConfiguration as exc:
        rep.diagnostics.append(str(exc))
    return rep

