"""Standard bases in the local ring at the origin (Mora's tangent-cone algorithm).

We compute in the localization Q[x]_(x) of the polynomial ring rather than in
convergent power series.  For ideals generated by polynomials the leading
ideals (and hence the colengths) of the two agree.

The monomial order is the anti-graded reverse-lexicographic order ``ds``:
lower total degree is *larger*, ties are broken reverse-lexicographically.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .poly import Mono, Poly, mono_div, mono_divides, mono_lcm

log = logging.getLogger(__name__)

INFINITE = float("inf")


class StandardBasisError(RuntimeError):
    """Raised when a reduction exceeds the configured degree cap."""


class InfiniteColength(ValueError):
    pass


@dataclass(frozen=True)
class LocalOrder:
    """Anti-graded reverse-lexicographic order over a fixed variable context."""

    vars: tuple
    degree_cap: int = 64
    step_cap: int = 20000  # reductions per normal form
    height_cap: int = 4000  # bits of any numerator or denominator

    @staticmethod
    def key(m: Mono):
        # larger key <=> larger monomial; 1 is the largest monomial
        return (-sum(m), tuple(-e for e in reversed(m)))

    def leading_monomial(self, p: Poly) -> Mono:
        if not p.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(p.terms, key=self.key)

    def compare(self, a: Mono, b: Mono) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def ecart(self, p: Poly) -> int:
        return p.total_degree() - sum(self.leading_monomial(p))


@dataclass(frozen=True)
class _Elem:
    poly: Poly
    lm: Mono
    lc: Fraction
    ecart: int


def _elem(p: Poly, order: LocalOrder) -> _Elem:
    lm = order.leading_monomial(p)
    return _Elem(p, lm, p.terms[lm], p.total_degree() - sum(lm))


def _reduce_lead(h: _Elem, g: _Elem, order: LocalOrder) -> Poly:
    mono = mono_div(h.lm, g.lm)
    return h.poly - g.poly.mul_term(mono, h.lc / g.lc)


def mora_normal_form(f: Poly, basis: Sequence[Poly], order: LocalOrder, noether: int | None = None) -> Poly:
    """Weak normal form: returns h with u*f - h in the ideal for a unit u.

    h is zero or its leading monomial is divisible by no leading monomial of
    ``basis``.  Reducers are chosen by minimal ecart and the set of reducers
    grows with intermediate results (tangent-cone algorithm).  With a
    ``noether`` bound N (m^N contained in the ideal) terms of degree >= N
    are dropped as they appear.
    """
    T = [_elem(g, order) for g in basis if g]
    h = f if noether is None else f.truncate(noether)
    steps = 0
    while h:
        he = _elem(h, order)
        cands = [g for g in T if mono_divides(g.lm, he.lm)]
        if not cands:
            break
        g = min(cands, key=lambda e: (e.ecart, order.key(e.lm)))
        if g.ecart > he.ecart:
            T.append(he)
        h = _reduce_lead(he, g, order)
        if noether is not None:
            h = h.truncate(noether)
        if h.total_degree() > order.degree_cap:
            raise StandardBasisError(
                f"reduction degree {h.total_degree()} exceeds cap {order.degree_cap}")
        steps += 1
        if steps % 64 == 0:
            if steps > order.step_cap:
                raise StandardBasisError(f"normal form needs more than {order.step_cap} reductions")
            height = max(max(c.numerator.bit_length(), c.denominator.bit_length()) for c in h.terms.values()) if h else 0
            if height > order.height_cap:
                raise StandardBasisError(f"coefficient height {height} bits exceeds cap {order.height_cap}")
    return h


@dataclass(frozen=True)
class StdBasis:
    order: LocalOrder
    generators: tuple  # tuple[Poly]; leading coefficient 1, minimal leading monomials
    leading_monomials: tuple  # tuple[Mono]
    source: tuple = field(default=())

    @property
    def vars(self):
        return self.order.vars

    def is_unit_ideal(self) -> bool:
        return any(not any(m) for m in self.leading_monomials)


def _minimize(elems: list[_Elem], order: LocalOrder) -> list[_Elem]:
    elems = sorted(elems, key=lambda e: (sum(e.lm), [-k for k in order.key(e.lm)[1]]))
    keep: list[_Elem] = []
    for e in elems:
        if not any(mono_divides(k.lm, e.lm) for k in keep):
            keep.append(e)
    return keep


def monomials_of_degree(n: int, d: int):
    """All exponent vectors of length n and total degree d."""
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def noether_bound(gens: Sequence[Poly], order: LocalOrder, max_columns: int = 300) -> int | None:
    """Smallest D with m^D inside the ideal, found by linear algebra, or None.

    Modulo m^N the local ideal is spanned by the truncations of x^a * g.
    If every monomial of degree D < N is a leading monomial of that span,
    then m^D lies in I + m^(D+1), hence in I by Nakayama's lemma.  The search
    gives up once the truncated space has more than ``max_columns`` monomials
    (infinite colength never certifies).
    """
    gens = [g for g in gens if g]
    n = len(order.vars)
    N, ncols = 2, 1 + n
    while ncols <= max_columns:
        pivots: dict = {}
        for g in gens:
            o = g.min_degree()
            for d in range(N - o):
                for a in monomials_of_degree(n, d):
                    row = dict(g.mul_term(a, 1).truncate(N).terms)
                    while row:
                        lm = max(row, key=order.key)
                        piv = pivots.get(lm)
                        if piv is None:
                            c = row[lm]
                            pivots[lm] = {m: v / c for m, v in row.items()}
                            break
                        c = row[lm]
                        for m, v in piv.items():
                            w = row.get(m, 0) - c * v
                            if w:
                                row[m] = w
                            else:
                                row.pop(m, None)
        for D in range(1, N):
            if all(m in pivots for m in monomials_of_degree(n, D)):
                return D
        N += 1
        ncols = sum(1 for d in range(N) for _ in monomials_of_degree(n, d))
    return None


def standard_basis(gens: Sequence[Poly], order: LocalOrder | None = None, *,
                   product_criterion: bool = True, use_noether: bool = True) -> StdBasis:
    """Standard basis of the ideal generated by ``gens`` in the local ring.

    Buchberger's algorithm with Mora's weak normal form; the pair with the
    lowest-degree lcm is processed first, ties broken by the order.
    ``product_criterion=False`` processes every pair (used to test the criterion).

    When a Noether bound D (m^D in I) is found first, all computations are
    truncated at degree D and the degree-D monomials join the generators;
    this is the highest-corner strategy and keeps coefficients small.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    vars = gens[0].vars
    if any(g.vars != vars for g in gens):
        raise ValueError("generators over different contexts")
    order = order or LocalOrder(vars)
    source = tuple(gens)
    nonzero = [g for g in gens if g]
    if not nonzero:
        return StdBasis(order, (), (), source)
    one = Poly.one(vars)
    if any(g.constant_term() for g in nonzero):
        return StdBasis(order, (one,), ((0,) * len(vars),), source)

    noether = noether_bound(nonzero, order) if use_noether else None
    corner: list[_Elem] = []
    if noether is not None:
        # the degree-D monomials lie in I; every S-polynomial involving one of
        # them has all its terms in degree >= D and therefore vanishes
        corner = [_elem(Poly.monomial(vars, m), order) for m in monomials_of_degree(len(vars), noether)]
        log.debug("Noether bound %d", noether)

    S: list[_Elem] = []
    for g in nonzero:
        h = mora_normal_form(g, [e.poly for e in corner + S], order, noether)
        if h:
            S.append(_elem(h, order))
    pairs = [(i, j) for j in range(len(S)) for i in range(j)]

    def pair_key(ij):
        lcm = mono_lcm(S[ij[0]].lm, S[ij[1]].lm)
        return (sum(lcm), [-k for k in order.key(lcm)[1]], ij)

    while pairs:
        pairs.sort(key=pair_key)
        i, j = pairs.pop(0)
        a, b = S[i], S[j]
        lcm = mono_lcm(a.lm, b.lm)
        if sum(lcm) > order.degree_cap:
            raise StandardBasisError(f"pair lcm degree {sum(lcm)} exceeds cap {order.degree_cap}")
        # product criterion: coprime leading monomials give a trivial syzygy
        if product_criterion and all(x == 0 or y == 0 for x, y in zip(a.lm, b.lm)):
            continue
        sp = a.poly.mul_term(mono_div(lcm, a.lm), 1 / a.lc) - b.poly.mul_term(mono_div(lcm, b.lm), 1 / b.lc)
        h = mora_normal_form(sp, [e.poly for e in corner + S], order, noether)
        if not h:
            continue
        he = _elem(h, order)
        if not any(he.lm):
            return StdBasis(order, (one,), ((0,) * len(vars),), source)
        S.append(he)
        k = len(S) - 1
        pairs.extend((i2, k) for i2 in range(k))
    S = _minimize(S + corner, order)
    gens_out = tuple(e.poly.scale(1 / e.lc) for e in S)
    lms = tuple(e.lm for e in S)
    log.debug("standard basis with %d elements, leading monomials %s", len(S), lms)
    return StdBasis(order, gens_out, lms, source)


def staircase(sb: StdBasis) -> list[Mono] | None:
    """Monomials outside the leading ideal, or None if there are infinitely many."""
    n = len(sb.vars)
    lms = sb.leading_monomials
    if not lms:
        return None
    if any(not any(m) for m in lms):
        return []
    bounds = []
    for i in range(n):
        pure = [m[i] for m in lms if m[i] and all(e == 0 for k, e in enumerate(m) if k != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    out = [m for m in product(*(range(b) for b in bounds))
           if not any(mono_divides(l, m) for l in lms)]
    out.sort(key=lambda m: (sum(m), [-k for k in LocalOrder.key(m)[1]]))
    return out


def colength(sb: StdBasis):
    """dim of the local quotient; ``INFINITE`` when some variable has no pure power."""
    st = staircase(sb)
    return INFINITE if st is None else len(st)


def _truncated_mul_term(p: Poly, mono: Mono, c, N: int) -> Poly:
    d0 = sum(mono)
    return Poly(p.vars, {tuple(i + j for i, j in zip(m, mono)): v * c
                         for m, v in p.terms.items() if sum(m) + d0 < N}, _trusted=True)


def normal_form(p: Poly, sb: StdBasis) -> Poly:
    """Reduced normal form of ``p`` modulo the ideal of ``sb``.

    For finite colength L the maximal ideal satisfies m^L in I, so the
    computation runs in the truncated algebra Q[x]/m^L where full reduction
    terminates and every surviving term is a staircase monomial.  For
    infinite colength this falls back to Mora's weak normal form (leading
    term reduced only, exact up to a unit factor).
    """
    if p.vars != sb.vars:
        raise ValueError("context mismatch")
    if sb.is_unit_ideal():
        return Poly.zero(p.vars)
    st = staircase(sb)
    if st is None:
        return mora_normal_form(p, list(sb.generators), sb.order)
    N = max(len(st), 1)
    order = sb.order
    # generators living entirely in degree >= N lie in m^N and are not needed
    elems = [_elem(t, order) for t in (g.truncate(N) for g in sb.generators) if t]
    h = dict(p.truncate(N).terms)
    done = {}
    while h:
        lm = max(h, key=order.key)
        c = h.pop(lm)
        g = next((e for e in elems if mono_divides(e.lm, lm)), None)
        if g is None:
            done[lm] = c
            continue
        red = _truncated_mul_term(g.poly, mono_div(lm, g.lm), c / g.lc, N)
        for m, v in red.terms.items():
            if m == lm:
                continue
            s = h.get(m, 0) - v
            if s:
                h[m] = s
            else:
                h.pop(m, None)
    return Poly(p.vars, done, _trusted=True)


@dataclass(frozen=True)
class QuotAlg:
    """Finite-dimensional local quotient: staircase basis plus structure constants.

    ``mult_table[a][b]`` is the coordinate vector of basis[a] * basis[b].
    """

    sb: StdBasis
    basis: tuple  # tuple[Mono]
    mult_table: tuple  # tuple[tuple[tuple[Fraction, ...]]]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vars(self):
        return self.sb.vars

    def basis_polys(self) -> list[Poly]:
        return [Poly.monomial(self.vars, m) for m in self.basis]

    def coords(self, p: Poly) -> tuple:
        nf = normal_form(p, self.sb)
        index = {m: i for i, m in enumerate(self.basis)}
        v = [Fraction(0)] * self.dim
        for m, c in nf.terms.items():
            v[index[m]] = c
        return tuple(v)

    def multiply(self, u: Sequence, v: Sequence) -> tuple:
        out = [Fraction(0)] * self.dim
        for a, ua in enumerate(u):
            if not ua:
                continue
            for b, vb in enumerate(v):
                if not vb:
                    continue
                for e, c in enumerate(self.mult_table[a][b]):
                    if c:
                        out[e] += ua * vb * c
        return tuple(out)


def quotient_algebra(sb: StdBasis) -> QuotAlg:
    st = staircase(sb)
    if st is None:
        raise InfiniteColength("quotient algebra has infinite dimension")
    basis = tuple(st)
    index = {m: i for i, m in enumerate(basis)}
    vars = sb.vars
    table = []
    for a in basis:
        row = []
        for b in basis:
            prod = Poly.monomial(vars, tuple(i + j for i, j in zip(a, b)))
            nf = normal_form(prod, sb)
            v = [Fraction(0)] * len(basis)
            for m, c in nf.terms.items():
                v[index[m]] = c
            row.append(tuple(v))
        table.append(tuple(row))
    return QuotAlg(sb, basis, tuple(table))
