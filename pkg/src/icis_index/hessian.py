"""Restriction of a 1-form to the fibers of f and its Hessian in a coordinate chart.

In a chart that eliminates the variables ``e_1..e_k`` (so the remaining
variables are coordinates on the fiber) the restricted form has coefficients
m_i / Delta, where Delta is the Jacobian minor of f in the eliminated
variables and m_i the bordered minor with last row A and last column i.
The Hessian is computed twice: once by the chain rule along the fiber and
once as a single bordered determinant divided by Delta^(n-k+2).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .index import GermProblem
from .local import mora_normal_form, standard_basis
from .poly import Poly, PolyMat, RatFunc


class ChartError(ValueError):
    """Delta vanishes identically: the chosen variables do not form a chart."""


@dataclass(frozen=True)
class FiberChart:
    problem: GermProblem
    eliminated: tuple
    free: tuple
    delta: Poly
    m: tuple  # bordered minors, one per free variable

    @classmethod
    def build(cls, problem: GermProblem, eliminated: Sequence[int] | None = None) -> FiberChart:
        n, k = problem.n, problem.k
        elim = tuple(range(k)) if eliminated is None else tuple(eliminated)
        if len(elim) != k or len(set(elim)) != k or any(not 0 <= e < n for e in elim):
            raise ValueError(f"need {k} distinct eliminated variable indices, got {elim}")
        free = tuple(i for i in range(n) if i not in elim)
        vars = problem.vars
        if k == 0:
            return cls(problem, elim, free, Poly.one(vars), tuple(problem.A))
        grads = [[fi.diff(j) for j in range(n)] for fi in problem.f]
        delta = PolyMat.from_rows([[g[e] for e in elim] for g in grads], vars).det()
        if not delta:
            raise ChartError(f"Jacobian minor in variables {[vars[e] for e in elim]} vanishes identically")
        m = []
        for i in free:
            cols = list(elim) + [i]
            rows = [[g[c] for c in cols] for g in grads]
            rows.append([problem.A[c] for c in cols])
            m.append(PolyMat.from_rows(rows, vars).det())
        return cls(problem, elim, free, delta, tuple(m))

    @property
    def vars(self):
        return self.problem.vars

    def with_m(self, m: Sequence[Poly]) -> FiberChart:
        return replace(self, m=tuple(m))

    def valid_at(self, point) -> bool:
        return self.delta.evaluate(point) != 0


def restriction_coefficients(c: FiberChart) -> list[RatFunc]:
    return [RatFunc(mi, c.delta) for mi in c.m]


def _cramer_minors(c: FiberChart) -> list[list[Poly]]:
    """C[l][j] = det of J_e with column l replaced by the gradient column of x_j.

    On the fiber dx_{e_l}/dx_j = -C[l][j] / Delta.
    """
    f, vars = c.problem.f, c.vars
    out = []
    for l in range(len(c.eliminated)):
        row = []
        for j in c.free:
            cols = list(c.eliminated)
            cols[l] = j
            row.append(PolyMat.from_rows([[fi.diff(col) for col in cols] for fi in f], vars).det())
        out.append(row)
    return out


def hessian_direct(c: FiberChart) -> RatFunc:
    """det of the total derivatives d/dx_j (m_i / Delta) along the fiber."""
    d = c.delta
    C = _cramer_minors(c)
    dd = [d.diff(v) for v in range(c.problem.n)]
    rows = []
    for mi in c.m:
        dm = [mi.diff(v) for v in range(c.problem.n)]
        row = []
        for jj, j in enumerate(c.free):
            num = d * (d * dm[j] - mi * dd[j])
            for l, e in enumerate(c.eliminated):
                num = num - (d * dm[e] - mi * dd[e]) * C[l][jj]
            row.append(num)
        rows.append(row)
    r = len(c.free)
    N = PolyMat.from_rows(rows, c.vars).det() if r else Poly.one(c.vars)
    return RatFunc(N, d ** (3 * r))


def bordered_hessian_matrix(c: FiberChart) -> PolyMat:
    n = c.problem.n
    cols = list(c.eliminated) + list(c.free)
    d = c.delta
    rows = [[d] + [d.diff(j) for j in cols]]
    zero = Poly.zero(c.vars)
    for fi in c.problem.f:
        rows.append([zero] + [fi.diff(j) for j in cols])
    for mi in c.m:
        rows.append([mi] + [mi.diff(j) for j in cols])
    assert len(rows) == n + 1
    return PolyMat.from_rows(rows, c.vars)


def hessian_formula(c: FiberChart) -> RatFunc:
    """Bordered determinant over Delta^(2 + n - k); columns follow the chart order."""
    r = len(c.free)
    return RatFunc(bordered_hessian_matrix(c).det(), c.delta ** (2 + r))


def htilde_function(c: FiberChart, route: str = "formula") -> RatFunc:
    """h * Delta^2 with Delta taken as a function."""
    h = hessian_formula(c) if route == "formula" else hessian_direct(c)
    return h * RatFunc(c.delta ** 2)


def htilde_at(c: FiberChart, point, route: str = "formula") -> Fraction:
    """h(P) * Delta(P)^2 at a point where the chart is valid."""
    dP = c.delta.evaluate(point)
    if not dP:
        raise ChartError("Delta vanishes at the point; choose another chart")
    h = hessian_formula(c) if route == "formula" else hessian_direct(c)
    return h.evaluate(point) * dP * dP


@dataclass
class HessianCheck:
    holds: bool
    symbolic_zero: bool
    fiber_zero: bool
    trials: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.holds


def _random_point(rng: random.Random, n: int) -> tuple:
    return tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n))


def hessian_identity_report(g: GermProblem, trials: int = 20, seed: int = 0, *,
                            eliminated: Sequence[int] | None = None,
                            mutate_index: int | None = None) -> HessianCheck:
    """Compare the bordered-determinant formula with the chain-rule Hessian.

    ``mutate_index`` adds 1 to that bordered minor on the formula side only;
    a correct checker must then report failure.
    """
    if g.k < 1 or g.n - g.k < 1:
        raise ValueError("need k >= 1 and n - k >= 1")
    chart = FiberChart.build(g, eliminated)
    formula_chart = chart
    if mutate_index is not None:
        m = list(chart.m)
        m[mutate_index] = m[mutate_index] + 1
        formula_chart = chart.with_m(m)
    hf = hessian_formula(formula_chart)
    hd = hessian_direct(chart)
    diff = hf.num * hd.den - hd.num * hf.den
    symbolic_zero = not diff
    diags = []
    if symbolic_zero:
        fiber_zero = True
    else:
        # equality is only required on the fiber germ: test diff*Delta in (f) locally
        sb = standard_basis(list(g.f))
        fiber_zero = not mora_normal_form(diff * chart.delta, list(sb.generators), sb.order)
        diags.append("cross-multiplied difference is nonzero ambiently; reduced on the fiber")
    records = []
    for t in range(trials):
        rng = random.Random(seed * 1_000_003 + t)
        for _ in range(100):
            P = _random_point(rng, g.n)
            if chart.valid_at(P):
                break
        else:
            diags.append(f"trial {t}: no rational point with Delta != 0 found")
            continue
        a, b = hf.evaluate(P), hd.evaluate(P)
        records.append({"point": [str(x) for x in P],
                        "fiber": [str(fi.evaluate(P)) for fi in g.f],
                        "formula": str(a), "direct": str(b), "ok": a == b})
    trials_ok = all(r["ok"] for r in records)
    return HessianCheck(holds=fiber_zero and trials_ok, symbolic_zero=symbolic_zero,
                        fiber_zero=fiber_zero, trials=records, diagnostics=diags)


def verify_hessian_identity(g: GermProblem, trials: int = 20, seed: int = 0, **kw) -> bool:
    return hessian_identity_report(g, trials, seed, **kw).holds
