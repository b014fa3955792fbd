"""Exact multivariate polynomials, rational functions and polynomial matrices over Q.

Polynomials are sparse maps from exponent tuples to ``Fraction`` coefficients
over a fixed, ordered tuple of variable names (the *context*).  All values
are treated as immutable; every operation returns a new object.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

Rat = Fraction
Mono = tuple  # tuple[int, ...]


class ContextError(ValueError):
    """Operands live over different variable lists."""


def _rat(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(i + j for i, j in zip(a, b))


def mono_divides(a: Mono, b: Mono) -> bool:
    """True if the monomial ``a`` divides ``b``."""
    return all(i <= j for i, j in zip(a, b))


def mono_div(b: Mono, a: Mono) -> Mono:
    return tuple(j - i for i, j in zip(a, b))


def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(i, j) for i, j in zip(a, b))


def grlex_key(m: Mono):
    return (sum(m), m)


class Poly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms=None, *, _trusted: bool = False):
        self.vars = tuple(vars)
        if _trusted:
            self.terms = terms
        else:
            n = len(self.vars)
            clean = {}
            for m, c in (terms or {}).items():
                m = tuple(int(e) for e in m)
                if len(m) != n or any(e < 0 for e in m):
                    raise ValueError(f"bad exponent vector {m} for context {self.vars}")
                c = _rat(c)
                if c:
                    clean[m] = clean.get(m, Fraction(0)) + c
                    if not clean[m]:
                        del clean[m]
            self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, vars) -> Poly:
        return cls(vars, {}, _trusted=True)

    @classmethod
    def const(cls, vars, c) -> Poly:
        c = _rat(c)
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c} if c else {}, _trusted=True)

    @classmethod
    def one(cls, vars) -> Poly:
        return cls.const(vars, 1)

    @classmethod
    def var(cls, vars, which) -> Poly:
        vars = tuple(vars)
        i = vars.index(which) if isinstance(which, str) else int(which)
        if not 0 <= i < len(vars):
            raise IndexError(f"variable index {i} out of range")
        e = [0] * len(vars)
        e[i] = 1
        return cls(vars, {tuple(e): Fraction(1)}, _trusted=True)

    @classmethod
    def monomial(cls, vars, exps, c=1) -> Poly:
        return cls(vars, {tuple(exps): c})

    @classmethod
    def gens(cls, vars) -> list[Poly]:
        return [cls.var(vars, i) for i in range(len(vars))]

    # -- basic protocol -----------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise ContextError(f"context mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.vars, other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.vars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(self.vars, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.vars, {m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return Poly.zero(self.vars)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(i + j for i, j in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(self.vars, out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative exponent")
        result = Poly.one(self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> Poly:
        c = _rat(c)
        if not c:
            return Poly.zero(self.vars)
        return Poly(self.vars, {m: v * c for m, v in self.terms.items()}, _trusted=True)

    def mul_term(self, mono: Mono, c) -> Poly:
        """Multiply by the single term ``c * x^mono``."""
        if not c:
            return Poly.zero(self.vars)
        return Poly(
            self.vars,
            {tuple(i + j for i, j in zip(m, mono)): v * c for m, v in self.terms.items()},
            _trusted=True,
        )

    # -- inspection ---------------------------------------------------------
    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(m) for m in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    def coefficient(self, mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def coeffs_in(self, i: int) -> dict[int, Poly]:
        """Coefficients with respect to variable ``i`` (same context, x_i-free)."""
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            rest = m[:i] + (0,) + m[i + 1:]
            out.setdefault(m[i], {})[rest] = c
        return {d: Poly(self.vars, t, _trusted=True) for d, t in out.items()}

    def truncate(self, degree: int) -> Poly:
        """Drop every term of total degree >= ``degree``."""
        return Poly(self.vars, {m: c for m, c in self.terms.items() if sum(m) < degree},
                    _trusted=True)

    # -- calculus and substitution -------------------------------------------
    def diff(self, i: int) -> Poly:
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.vars}")
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                out[tuple(e)] = c * m[i]
        return Poly(self.vars, out, _trusted=True)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, context has {self.nvars}")
        pt = [_rat(p) for p in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v *= x ** e
            total += v
        return total

    def compose(self, images: Sequence[Poly]) -> Poly:
        """Substitute ``x_i -> images[i]`` simultaneously."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].vars if images else self.vars
        powers: list[dict[int, Poly]] = [{0: Poly.one(target)} for _ in images]

        def pw(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = pw(i, e - 1) * images[i]
            return cache[e]

        out = Poly.zero(target)
        for m, c in self.terms.items():
            t = Poly.const(target, c)
            for i, e in enumerate(m):
                if e:
                    t = t * pw(i, e)
            out = out + t
        return out

    def substitute(self, i: int, q: Poly) -> Poly:
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range")
        self._coerce(q)
        images = Poly.gens(self.vars)
        images[i] = q
        return self.compose(images)

    # -- exact division (global lex order) ------------------------------------
    def exact_div(self, other: Poly) -> Poly:
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_constant():
            return self.scale(1 / other.constant_term())
        lm_d = max(other.terms)
        lc_d = other.terms[lm_d]
        q: dict = {}
        r = self
        while r.terms:
            lm_r = max(r.terms)
            if not mono_divides(lm_d, lm_r):
                raise ArithmeticError("division is not exact")
            mono = mono_div(lm_r, lm_d)
            c = r.terms[lm_r] / lc_d
            q[mono] = c
            r = r - other.mul_term(mono, c)
        return Poly(self.vars, q, _trusted=True)

    # -- text -----------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: grlex_key(mc[0]), reverse=True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, vars={self.vars})"


def format_mono(m: Mono, vars: Sequence[str]) -> str:
    parts = []
    for v, e in zip(vars, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        coef = str(a)
        if any(m):
            body = format_mono(m, p.vars) if a == 1 else f"{coef}*{format_mono(m, p.vars)}"
        else:
            body = coef
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


class RatFunc:
    """A quotient ``num/den`` of polynomials; equality is cross-multiplicative."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.one(num.vars)
        num._coerce(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if den.is_constant():
            num, den = num.scale(1 / den.constant_term()), Poly.one(num.vars)
        self.num = num
        self.den = den

    @property
    def vars(self):
        return self.num.vars

    def _lift(self, other) -> RatFunc:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc(Poly.const(self.vars, other))
        return NotImplemented

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __add__(self, other) -> RatFunc:
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> RatFunc:
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other) -> RatFunc:
        return (-self) + other

    def __mul__(self, other) -> RatFunc:
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RatFunc:
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.den, self.den * o.num)

    def __pow__(self, k: int) -> RatFunc:
        if k < 0:
            return RatFunc(self.den ** -k, self.num ** -k)
        return RatFunc(self.num ** k, self.den ** k)

    def is_zero(self) -> bool:
        return not self.num

    def diff(self, i: int) -> RatFunc:
        return RatFunc(self.num.diff(i) * self.den - self.num * self.den.diff(i), self.den * self.den)

    def evaluate(self, point) -> Fraction:
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.evaluate(point) / d

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({str(self)!r})"


class PolyMat:
    """Dense row-major matrix of polynomials over one context."""

    __slots__ = ("rows", "cols", "entries", "vars")

    def __init__(self, rows: int, cols: int, entries: Iterable, vars=None):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        if vars is None:
            for e in entries:
                if isinstance(e, Poly):
                    vars = e.vars
                    break
            else:
                vars = ()
        vars = tuple(vars)
        conv = []
        for e in entries:
            if isinstance(e, Poly):
                if e.vars != vars:
                    raise ContextError("matrix entries over different contexts")
                conv.append(e)
            else:
                conv.append(Poly.const(vars, e))
        self.rows, self.cols, self.entries, self.vars = rows, cols, tuple(conv), vars

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], vars=None) -> PolyMat:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r], vars)

    @classmethod
    def identity(cls, n: int, vars=()) -> PolyMat:
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)], vars)

    @classmethod
    def block(cls, A: PolyMat, B: PolyMat, C: PolyMat, D: PolyMat) -> PolyMat:
        if A.rows != B.rows or C.rows != D.rows or A.cols != C.cols or B.cols != D.cols:
            raise ValueError("incompatible block dimensions")
        rows = [list(A.row(i)) + list(B.row(i)) for i in range(A.rows)]
        rows += [list(C.row(i)) + list(D.row(i)) for i in range(C.rows)]
        return cls.from_rows(rows, A.vars)

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def tolist(self) -> list[list[Poly]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> PolyMat:
        return PolyMat(len(rows), len(cols), [self[i, j] for i in rows for j in cols], self.vars)

    def transpose(self) -> PolyMat:
        return PolyMat(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)],
                       self.vars)

    def __matmul__(self, other: PolyMat) -> PolyMat:
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                s = Poly.zero(self.vars)
                for k in range(self.cols):
                    s = s + self[i, k] * other[k, j]
                out.append(s)
        return PolyMat(self.rows, other.cols, out, self.vars)

    def __sub__(self, other: PolyMat) -> PolyMat:
        return PolyMat(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)], self.vars)

    def scale(self, p) -> PolyMat:
        return PolyMat(self.rows, self.cols, [e * p for e in self.entries], self.vars)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolyMat) and (self.rows, self.cols) == (other.rows, other.cols)
                and self.entries == other.entries)

    __hash__ = None

    def _require_square(self):
        if self.rows != self.cols:
            raise ValueError(f"determinant of a non-square {self.rows}x{self.cols} matrix")

    def det(self) -> Poly:
        """Fraction-free (Bareiss) determinant."""
        self._require_square()
        n = self.rows
        if n == 0:
            return Poly.one(self.vars)
        m = [list(self.row(i)) for i in range(n)]
        sign = 1
        prev = Poly.one(self.vars)
        for k in range(n - 1):
            if not m[k][k]:
                for r in range(k + 1, n):
                    if m[r][k]:
                        m[k], m[r] = m[r], m[k]
                        sign = -sign
                        break
                else:
                    return Poly.zero(self.vars)
            p = m[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = m[i][j] * p - m[i][k] * m[k][j]
                    m[i][j] = num if prev == 1 else num.exact_div(prev)
                m[i][k] = Poly.zero(self.vars)
            prev = p
        d = m[n - 1][n - 1]
        return d if sign == 1 else -d

    def det_cofactor(self) -> Poly:
        """Laplace expansion along the first row; the independent test route."""
        self._require_square()
        n = self.rows
        if n == 0:
            return Poly.one(self.vars)
        if n == 1:
            return self.entries[0]
        total = Poly.zero(self.vars)
        for j in range(n):
            if self[0, j]:
                minor = self.submatrix(range(1, n), [c for c in range(n) if c != j])
                term = self[0, j] * minor.det_cofactor()
                total = total + term if j % 2 == 0 else total - term
        return total

    def minors(self, size: int) -> list[Poly]:
        """All size x size minors, row subsets outer, column subsets inner, both lexicographic."""
        if size < 0 or size > min(self.rows, self.cols):
            raise ValueError(f"minor size {size} exceeds matrix shape {self.rows}x{self.cols}")
        return [self.submatrix(rs, cs).det()
                for rs in combinations(range(self.rows), size)
                for cs in combinations(range(self.cols), size)]

    def adjugate(self) -> PolyMat:
        self._require_square()
        n = self.rows
        if n == 1:
            return PolyMat(1, 1, [1], self.vars)
        out = []
        for i in range(n):
            for j in range(n):
                # adj[i][j] = (-1)^(i+j) * M_{ji}
                minor = self.submatrix([r for r in range(n) if r != j], [c for c in range(n) if c != i]).det()
                out.append(minor if (i + j) % 2 == 0 else -minor)
        return PolyMat(n, n, out, self.vars)

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(e) for e in self.row(i)) + "]" for i in range(self.rows)) + "]"

    __repr__ = __str__


def determinant(m: PolyMat) -> Poly:
    return m.det()


def minors(m: PolyMat, size: int) -> list[Poly]:
    return m.minors(size)


def block_det_product(A: PolyMat, B: PolyMat, C: PolyMat, D: PolyMat) -> tuple[Poly, Poly]:
    """Both sides of det[[A, B], [C, D]] = det A * det(D - C A^-1 B).

    The right side is evaluated over the fraction field: with adj(A) the
    adjugate, D - C A^-1 B = (det A * D - C adj(A) B) / det A, so its
    determinant carries det(A)^m in the denominator, cleared exactly.
    """
    dA = A.det()
    if not dA:
        raise ZeroDivisionError("det A vanishes identically")
    left = PolyMat.block(A, B, C, D).det()
    m = D.rows
    N = D.scale(dA) - C @ A.adjugate() @ B
    right = N.det()
    if m >= 1:
        right = right.exact_div(dA ** (m - 1))
    else:
        right = dA
    return left, right


def bordered_minor_matrix(A: PolyMat, B: PolyMat, C: PolyMat, D: PolyMat) -> PolyMat:
    """H[i][j] = det [[A, b_j], [c^i, d_ij]] with b_j a column of B and c^i a row of C."""
    if not A.det():
        raise ZeroDivisionError("det A vanishes identically")
    m = D.rows
    out = []
    for i in range(m):
        for j in range(m):
            rows = [list(A.row(r)) + [B[r, j]] for r in range(A.rows)]
            rows.append(list(C.row(i)) + [D[i, j]])
            out.append(PolyMat.from_rows(rows, A.vars).det())
    return PolyMat(m, m, out, A.vars)


def bordered_det_identity(A: PolyMat, B: PolyMat, C: PolyMat, D: PolyMat) -> tuple[Poly, Poly]:
    """(det H, det(A)^(m-1) * det[[A, B], [C, D]]) for H the bordered minor matrix."""
    H = bordered_minor_matrix(A, B, C, D)
    m = D.rows
    return H.det(), A.det() ** (m - 1) * PolyMat.block(A, B, C, D).det()


def jacobian(polys: Sequence[Poly], cols: Sequence[int] | None = None) -> PolyMat:
    if not polys:
        raise ValueError("empty list")
    vars = polys[0].vars
    cols = range(len(vars)) if cols is None else cols
    return PolyMat.from_rows([[p.diff(j) for j in cols] for p in polys], vars)
