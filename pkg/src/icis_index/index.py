"""Complex index of a holomorphic 1-form on an isolated complete intersection.

The index is the colength of the ideal generated by f_1..f_k and the
(k+1)x(k+1) minors of the Jacobian of f stacked over the row (A_1..A_n).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .grammar import parse_poly
from .local import INFINITE, LocalOrder, colength, staircase, standard_basis
from .poly import Mono, Poly, PolyMat, jacobian


class GermError(ValueError):
    """The input does not describe a germ problem at the origin."""


@dataclass(frozen=True)
class GermProblem:
    vars: tuple
    f: tuple  # k polynomials defining V
    A: tuple  # n coefficients of omega = sum A_i dx_i

    def __post_init__(self):
        n, k = len(self.vars), len(self.f)
        if n == 0:
            raise GermError("no variables")
        if not 0 <= k < n:
            raise GermError(f"need 0 <= k < n, got k={k}, n={n}")
        if len(self.A) != n:
            raise GermError(f"omega has {len(self.A)} coefficients for {n} variables")
        for p in (*self.f, *self.A):
            if p.vars != tuple(self.vars):
                raise GermError("all polynomials must share the variable context")
        for i, fi in enumerate(self.f):
            if fi.constant_term():
                raise GermError(f"f{i + 1} = {fi} does not vanish at the origin")

    @property
    def n(self) -> int:
        return len(self.vars)

    @property
    def k(self) -> int:
        return len(self.f)

    @classmethod
    def from_strings(cls, vars: Sequence[str], f: Sequence[str], omega: Sequence[str]) -> GermProblem:
        vars = tuple(vars)
        return cls(vars, tuple(parse_poly(s, vars) for s in f), tuple(parse_poly(s, vars) for s in omega))

    def with_form(self, A: Sequence[Poly]) -> GermProblem:
        return GermProblem(self.vars, self.f, tuple(A))

    def scaled(self, c) -> GermProblem:
        return self.with_form([a.scale(c) for a in self.A])

    def index_matrix(self) -> PolyMat:
        rows = jacobian(self.f).tolist() if self.f else []
        rows.append(list(self.A))
        return PolyMat.from_rows(rows, self.vars)

    def linear_change(self, J: Sequence[Sequence]) -> GermProblem:
        """Pull back along x = J x': f -> f(Jx'), A -> J^T (A o J)."""
        n = self.n
        X = Poly.gens(self.vars)
        images = [sum((X[j].scale(J[i][j]) for j in range(n)), Poly.zero(self.vars)) for i in range(n)]
        f2 = [p.compose(images) for p in self.f]
        A_sub = [a.compose(images) for a in self.A]
        A2 = [sum((A_sub[i].scale(J[i][j]) for i in range(n)), Poly.zero(self.vars)) for j in range(n)]
        return GermProblem(self.vars, tuple(f2), tuple(A2))


@dataclass(frozen=True)
class IndexReport:
    index: object  # int or INFINITE
    ideal_generators: tuple
    leading_monomials: tuple
    quotient_basis: tuple | None
    standard_basis: tuple = ()

    @property
    def is_finite(self) -> bool:
        return self.index != INFINITE


def build_index_ideal(g: GermProblem) -> list[Poly]:
    """f_1..f_k followed by the (k+1)-minors in lexicographic row/column order."""
    return list(g.f) + g.index_matrix().minors(g.k + 1)


def complex_index(g: GermProblem, order: LocalOrder | None = None) -> IndexReport:
    gens = build_index_ideal(g)
    sb = standard_basis(gens, order or LocalOrder(g.vars))
    st = staircase(sb)
    return IndexReport(
        index=INFINITE if st is None else len(st),
        ideal_generators=tuple(gens),
        leading_monomials=sb.leading_monomials,
        quotient_basis=None if st is None else tuple(st),
        standard_basis=sb.generators,
    )


def check_icis(g: GermProblem) -> bool:
    """Sufficient test that V has an isolated singular point at the origin.

    Finite colength of (f_1..f_k, all k x k Jacobian minors).
    """
    if g.k == 0:
        return True
    gens = list(g.f) + jacobian(g.f).minors(g.k)
    return colength(standard_basis(gens)) != INFINITE


def mono_str(m: Mono, vars) -> str:
    return str(Poly.monomial(vars, m))
