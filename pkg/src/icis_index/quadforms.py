"""Quadratic forms on local algebras and their exact signatures.

Smooth case (k = 0): the Eisenbud-Levine form on Q[x]_(x)/(A_1..A_n), built
from any functional that is positive on the Hessian class.

Curve case (n = 2, k = 1): on a smoothed fiber the functional is
psi -> sum over the zeros P of omega|V_eps of psi(P) / h~(P); the sum is an
exact rational computed as a trace in Q[t]/(r).  Its Gram matrix on a basis
of the local algebra at the origin has signature ind_0 + chi(V_eps) - 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import oracle as O
from . import upoly as U
from .hessian import FiberChart, htilde_function
from .index import GermProblem, complex_index
from .local import InfiniteColength, QuotAlg, quotient_algebra, standard_basis
from .poly import Poly, jacobian


class QuadFormError(ValueError):
    exit_code = 3


@dataclass(frozen=True)
class SymMat:
    dim: int
    entries: tuple  # tuple of row tuples of Fraction

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in r) for r in self.entries)
        if len(rows) != self.dim or any(len(r) != self.dim for r in rows):
            raise ValueError("entries must form a dim x dim array")
        for i in range(self.dim):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"not symmetric at ({i}, {j})")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> SymMat:
        return cls(len(rows), tuple(tuple(r) for r in rows))

    def congruent(self, S: Sequence[Sequence]) -> SymMat:
        """S^T M S."""
        n = self.dim
        MS = [[sum(self.entries[i][k] * S[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        return SymMat.from_rows([[sum(S[k][i] * MS[k][j] for k in range(n)) for j in range(n)] for i in range(n)])

    def tolist(self) -> list:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class SignatureTriple:
    positive: int
    negative: int
    zero: int

    @property
    def signature(self) -> int:
        return self.positive - self.negative

    @property
    def dim(self) -> int:
        return self.positive + self.negative + self.zero


def signature(m: SymMat) -> SignatureTriple:
    """Exact inertia by symmetric elimination with 1x1 and 2x2 pivots."""
    M = [list(r) for r in m.entries]
    idx = list(range(m.dim))
    pos = neg = 0
    while idx:
        piv = next((i for i in idx if M[i][i]), None)
        if piv is not None:
            d = M[piv][piv]
            if d > 0:
                pos += 1
            else:
                neg += 1
            idx.remove(piv)
            for r in idx:
                if M[r][piv]:
                    f = M[r][piv] / d
                    for s in idx:
                        M[r][s] -= f * M[piv][s]
            continue
        pair = next(((i, j) for i in idx for j in idx if i < j and M[i][j]), None)
        if pair is None:
            break
        # all remaining diagonal entries vanish: [[0, b], [b, 0]] has inertia (1, 1)
        i, j = pair
        b = M[i][j]
        pos += 1
        neg += 1
        idx.remove(i)
        idx.remove(j)
        rows = {r: (M[r][i], M[r][j]) for r in idx}
        for r in idx:
            ri, rj = rows[r]
            for s in idx:
                si, sj = rows[s]
                M[r][s] -= (ri * sj + rj * si) / b
    return SignatureTriple(pos, neg, m.dim - pos - neg)


def gram(q: QuotAlg, ell: Sequence) -> SymMat:
    """Q_ab = ell(phi_a * phi_b) via the multiplication table."""
    if len(ell) != q.dim:
        raise ValueError("functional dimension does not match the algebra")
    rows = []
    for a in range(q.dim):
        rows.append([sum((ell[e] * c for e, c in enumerate(q.mult_table[a][b]) if c), Fraction(0))
                     for b in range(q.dim)])
    return SymMat.from_rows(rows)


def gram_from_values(basis: Sequence[Poly], ell) -> SymMat:
    """Gram matrix of a functional given as a callable on polynomials."""
    n = len(basis)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            rows[a][b] = rows[b][a] = ell(basis[a] * basis[b])
    return SymMat.from_rows(rows)


# -- smooth case --------------------------------------------------------------

def hessian_class(g: GermProblem) -> Poly:
    return jacobian(g.A).det()


def el_functional_smooth(q: QuotAlg, hess: Poly) -> tuple:
    """Functional supported on the socle monomial of the Hessian class, with ell(hess) = dim."""
    c = q.coords(hess)
    nz = [i for i, v in enumerate(c) if v]
    if not nz:
        raise QuadFormError("the Hessian class vanishes in the local algebra (inconsistent input)")
    e = nz[-1]  # highest-degree monomial: spans the socle
    ell = [Fraction(0)] * q.dim
    ell[e] = Fraction(q.dim) / c[e]
    return tuple(ell)


@dataclass
class SmoothIndexReport:
    real_index: int
    dim: int
    basis: tuple
    functional: tuple
    gram: SymMat
    inertia: SignatureTriple


def smooth_algebra(g: GermProblem) -> QuotAlg:
    if g.k != 0:
        raise QuadFormError("the smooth-case form needs k = 0")
    try:
        return quotient_algebra(standard_basis(list(g.A)))
    except InfiniteColength as exc:
        raise QuadFormError("the zero of omega is not algebraically isolated (infinite colength)") from exc


def real_index_smooth_report(g: GermProblem) -> SmoothIndexReport:
    q = smooth_algebra(g)
    ell = el_functional_smooth(q, hessian_class(g))
    G = gram(q, ell)
    inertia = signature(G)
    return SmoothIndexReport(inertia.signature, q.dim, q.basis, ell, G, inertia)


def real_index_smooth(g: GermProblem) -> int:
    return real_index_smooth_report(g).real_index


# -- curve case -------------------------------------------------------------------

@dataclass
class _TracePart:
    ring: U.QuotientRing
    coords: tuple
    inv_htilde: U.UPoly


@dataclass
class FiberFunctional:
    """psi -> sum over all zeros P of psi(P) / h~(P), evaluated by traces."""

    parts: list

    def __call__(self, psi: Poly) -> Fraction:
        total = Fraction(0)
        for p in self.parts:
            v = p.ring.eval_poly(psi, list(p.coords))
            total += p.ring.trace(p.ring.mul(v, p.inv_htilde))
        return total


def fiber_functional(sol: O.SolutionSet, g: GermProblem) -> FiberFunctional:
    """Trace functional over the zeros in ``sol`` with h~ taken from ``g``'s charts.

    The radical is split by whether f_x vanishes; each piece uses a chart
    where Delta is invertible, so h~ is invertible exactly when every zero
    is nondegenerate.
    """
    if not sol.all_simple:
        raise O.DegenerateConfiguration("some zero of omega on the fiber is not simple; perturb the form")
    r = sol.radical
    parts = []
    if U.deg(r) < 1:
        return FiberFunctional(parts)
    dx = sol.image(g.f[0].diff(0), r)
    q_bad = U.monic(U.gcd(r, dx)) if dx else U.monic(r)
    q_good = U.divmod_(r, q_bad)[0] if U.deg(q_bad) > 0 else r
    for q, elim in ((q_good, (0,)), (q_bad, (1,))):
        if U.deg(q) < 1:
            continue
        chart = FiberChart.build(g, elim)
        ring = U.QuotientRing(q)
        if not ring.is_unit(sol.image(chart.delta, q)):
            raise O.DegenerateConfiguration("f_x and f_y vanish together at a zero: the fiber is singular")
        ht = htilde_function(chart, route="formula")
        num, den = sol.image(ht.num, q), sol.image(ht.den, q)
        if not ring.is_unit(num) or not ring.is_unit(den):
            raise O.DegenerateConfiguration("degenerate zero: h~ is not invertible modulo r")
        parts.append(_TracePart(ring, sol.coords_mod(q), ring.mul(den, ring.inv(num))))
    return FiberFunctional(parts)


@dataclass
class FiberIndexReport:
    real_index: int
    dim: int
    basis: tuple
    gram: SymMat
    inertia: SignatureTriple
    euler_char: int
    zeros: int
    diagnostics: list = field(default_factory=list)


def real_index_via_fiber_report(g: GermProblem, spec: O.FiberSpec) -> FiberIndexReport:
    O._require_plane(g)
    rep = complex_index(g)
    if not rep.is_finite:
        raise QuadFormError("infinite complex index: no finite local algebra")
    f, eps, delta = g.f[0], spec.epsilon[0], spec.delta
    O.check_fiber_smooth(f, eps, delta)
    fz = O.fiber_zeros(g, spec)
    if not fz.all_inside:
        raise O.DiscCertificationError(
            "some zeros of the fiber system lie outside the delta-ball; the trace functional needs all of "
            "them inside (use smaller epsilon or larger delta)")
    if fz.count_in_disc != rep.index:
        raise O.DegenerateConfiguration(
            f"{fz.count_in_disc} zeros on the fiber but complex index {rep.index}; epsilon is not small enough")
    ell = fiber_functional(fz.solutions, spec.perturbed(g))
    basis = [Poly.monomial(g.vars, m) for m in rep.quotient_basis]
    G = gram_from_values(basis, ell)
    inertia = signature(G)
    chi = O.euler_char_real_curve(f, eps, delta)
    return FiberIndexReport(inertia.signature - chi + 1, len(basis), rep.quotient_basis, G, inertia, chi,
                            fz.count_in_disc)


def real_index_via_fiber(g: GermProblem, epsilon, delta, eta=None, lam=None) -> int:
    eps = epsilon if isinstance(epsilon, (tuple, list)) else (epsilon,)
    return real_index_via_fiber_report(g, O.FiberSpec(tuple(eps), delta, eta, lam)).real_index
