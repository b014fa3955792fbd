"""Command-line front end.

    icis-index index GERM
    icis-index real-index GERM [--epsilon E --delta D [--lambda L --eta ... | --eta-seed S]]
    icis-index hessian-verify GERM [--trials N --seed S]
    icis-index oracle GERM --epsilon E --delta D [--lambda L --eta ... | --eta-seed S]
    icis-index selftest

A germ file has ``vars:``, ``f:`` and ``omega:`` lines with comma-separated
entries; ``#`` starts a comment and an absent or empty ``f:`` line means k = 0.

Exit codes: 0 success, 2 parse error, 3 precondition violation,
4 degenerate configuration (retry with other epsilon/delta/perturbation).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import fixtures
from . import oracle as O
from .grammar import NAME_RE, PolySyntaxError, parse_poly, parse_rational
from .hessian import ChartError, hessian_identity_report
from .index import GermError, GermProblem, check_icis, complex_index, mono_str
from .local import INFINITE, InfiniteColength, StandardBasisError
from .quadforms import QuadFormError, real_index_smooth_report, real_index_via_fiber_report

SCHEMA = "icis-index/report/v1"
EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_DEGENERATE = 0, 2, 3, 4

log = logging.getLogger("icis_index")


class GermFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line, self.col = line, col
        where = f"line {line}" + (f", column {col}" if col else "") + ": " if line else ""
        super().__init__(where + message)


def _split_entries(body: str, start_col: int):
    """Split on commas at parenthesis depth 0, returning (text, column offset) pairs."""
    out, depth, begin = [], 0, 0
    for i, ch in enumerate(body + ","):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            out.append((body[begin:i], start_col + begin))
            begin = i + 1
    if len(out) == 1 and not out[0][0].strip():
        return []
    return out


def parse_germ_text(text: str) -> GermProblem:
    fields: dict[str, tuple[int, int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        key, sep, body = line.partition(":")
        key = key.strip().lower()
        if not sep or key not in ("vars", "f", "omega"):
            raise GermFileError("expected 'vars:', 'f:' or 'omega:'", lineno, 1)
        if key in fields:
            raise GermFileError(f"duplicate '{key}:' line", lineno, 1)
        fields[key] = (lineno, len(key) + 1, body)
    for key in ("vars", "omega"):
        if key not in fields:
            raise GermFileError(f"missing '{key}:' line")
    lineno, off, body = fields["vars"]
    vars = tuple(v for v in body.replace(",", " ").split())
    for v in vars:
        if not NAME_RE.match(v):
            raise GermFileError(f"invalid variable name {v!r}", lineno)
    if len(set(vars)) != len(vars):
        raise GermFileError("repeated variable name", lineno)

    def polys(key):
        if key not in fields:
            return ()
        ln, off, body = fields[key]
        return tuple(parse_poly(t, vars, line=ln, col_offset=c) for t, c in _split_entries(body, off))

    f, A = polys("f"), polys("omega")
    if len(A) != len(vars):
        raise GermError(f"omega has {len(A)} coefficients but there are {len(vars)} variables")
    return GermProblem(vars, f, A)


def parse_germ_file(path) -> GermProblem:
    return parse_germ_text(Path(path).read_text(encoding="utf-8"))


# -- report helpers ---------------------------------------------------------------

def jrat(x) -> int | str:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else str(x)


def jindex(v):
    return "infinite" if v == INFINITE else int(v)


def _problem_echo(g: GermProblem) -> dict:
    return {"vars": list(g.vars), "f": [str(p) for p in g.f], "omega": [str(a) for a in g.A]}


class FlagError(ValueError):
    """A command-line value is not an exact rational or polynomial."""


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise FlagError(str(exc)) from exc


def _rationals(text: str | None) -> tuple:
    if text is None:
        return ()
    return tuple(_rational(t.strip()) for t in text.split(","))


def _fiber_spec(g: GermProblem, args) -> O.FiberSpec:
    eps = _rationals(args.epsilon)
    if len(eps) != g.k:
        raise GermError(f"--epsilon needs {g.k} value(s)")
    if args.delta is None:
        raise GermError("--delta is required with --epsilon")
    eta = lam = None
    if args.lam is not None:
        lam = _rational(args.lam)
        if args.eta is not None:
            eta = tuple(parse_poly(t, g.vars) for t, _ in _split_entries(args.eta, 0))
            if len(eta) != g.n:
                raise GermError(f"--eta needs {g.n} coefficients")
        else:
            eta = O.generic_eta(g.vars, args.eta_seed)
    elif args.eta is not None:
        raise GermError("--eta requires --lambda")
    return O.FiberSpec(eps, _rational(args.delta), eta, lam)


def _spec_echo(spec: O.FiberSpec) -> dict:
    out = {"epsilon": [jrat(e) for e in spec.epsilon], "delta": jrat(spec.delta)}
    if spec.eta is not None:
        out.update(eta=[str(e) for e in spec.eta], **{"lambda": jrat(spec.lam)})
    return out


def _symmat(m) -> list:
    return [[jrat(v) for v in row] for row in m.entries]


def _inertia(t) -> dict:
    return {"positive": t.positive, "negative": t.negative, "zero": t.zero, "signature": t.signature}


# -- commands ------------------------------------------------------------------------

def cmd_index(g: GermProblem, args, diags: list) -> dict:
    rep = complex_index(g)
    if g.k and not check_icis(g):
        diags.append("V does not pass the isolated-singularity check")
    return {
        "index": jindex(rep.index),
        "generators": [str(p) for p in rep.ideal_generators],
        "standard_basis": [str(p) for p in rep.standard_basis],
        "leading_monomials": [mono_str(m, g.vars) for m in rep.leading_monomials],
        "quotient_basis": None if rep.quotient_basis is None else [mono_str(m, g.vars) for m in rep.quotient_basis],
    }


def cmd_real_index(g: GermProblem, args, diags: list) -> dict:
    if args.epsilon is None:
        if g.k:
            raise GermError("k > 0: pass --epsilon and --delta for the fiber computation")
        rep = real_index_smooth_report(g)
        return {"mode": "smooth", "real_index": rep.real_index, "dim": rep.dim,
                "basis": [mono_str(m, g.vars) for m in rep.basis],
                "functional": [jrat(v) for v in rep.functional],
                "gram": _symmat(rep.gram), "inertia": _inertia(rep.inertia)}
    spec = _fiber_spec(g, args)
    rep = real_index_via_fiber_report(g, spec)
    return {"mode": "fiber", **_spec_echo(spec), "real_index": rep.real_index, "dim": rep.dim,
            "basis": [mono_str(m, g.vars) for m in rep.basis], "zeros": rep.zeros,
            "gram": _symmat(rep.gram), "inertia": _inertia(rep.inertia), "euler_char": rep.euler_char}


def cmd_hessian(g: GermProblem, args, diags: list) -> dict:
    elim = None
    if args.eliminate:
        names = [v.strip() for v in args.eliminate.split(",")]
        bad = [v for v in names if v not in g.vars]
        if bad:
            raise GermError(f"unknown variables {bad}")
        elim = tuple(g.vars.index(v) for v in names)
    rep = hessian_identity_report(g, args.trials, args.seed, eliminated=elim, mutate_index=args.mutate)
    diags.extend(rep.diagnostics)
    return {"holds": rep.holds, "symbolic_zero": rep.symbolic_zero, "fiber_zero": rep.fiber_zero,
            "trials": rep.trials}


def cmd_oracle(g: GermProblem, args, diags: list) -> dict:
    spec = _fiber_spec(g, args)
    rep = O.oracle_report(g, spec)
    diags.extend(rep.diagnostics)
    return {**_spec_echo(spec), "zeros": rep.zeros_in_disc, "complex_index": jindex(rep.complex_index),
            "affine_zeros": rep.affine_zeros,
            "distinct_affine_zeros": rep.distinct_affine, "all_simple": rep.all_simple,
            "shear": jrat(rep.shear),
            "real_zeros": [{"t_interval": [jrat(z.interval[0]), jrat(z.interval[1])],
                            "x_range": [jrat(v) for v in z.point_interval[0]],
                            "y_range": [jrat(v) for v in z.point_interval[1]],
                            "sign": z.sign, "chart": [g.vars[i] for i in z.chart]} for z in rep.real_zeros],
            "sign_sum": rep.sign_sum, "euler_char": rep.euler_char, "recovered_index": rep.recovered_index}


def run_selftest() -> list[fixtures.SelfTestResult]:
    out = []

    def check(name, fn):
        try:
            ok, detail = fn()
        except Exception as exc:  # a self-test reports, it does not crash
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(fixtures.SelfTestResult(name, ok, detail))

    for fx in (*fixtures.PLANE_CURVES, *fixtures.SMOOTH):
        def idx(fx=fx):
            v = complex_index(fx.problem()).index
            return v == fx.complex_index, f"index {jindex(v)}, expected {fx.complex_index}"
        check(f"index {fx.name}", idx)
    for fx, e, d in fixtures.SELFTEST_ZERO_COUNTS:
        def cnt(fx=fx, e=e, d=d):
            v = O.count_zeros_on_fiber(fx.problem(), O.FiberSpec((e,), d))
            return v == fx.complex_index, f"{v} zeros at epsilon={e}, delta={d}"
        check(f"zeros {fx.name}", cnt)
    for fx in fixtures.SMOOTH:
        def sm(fx=fx):
            v = real_index_smooth_report(fx.problem()).real_index
            return v == fx.real_index, f"real index {v}, expected {fx.real_index}"
        check(f"smooth {fx.name}", sm)
    for fx in fixtures.FIBER_FIXTURES:
        def fib(fx=fx):
            e, d = fx.fibers[0]
            eta, lam = fx.eta()
            spec = O.FiberSpec((e,), d, eta, lam)
            b = O.recovered_real_index(fx.problem(), spec)
            if fx not in fixtures.TRACE_FIXTURES:
                return b == fx.real_index, f"oracle {b}, expected {fx.real_index}"
            a = real_index_via_fiber_report(fx.problem(), spec).real_index
            return a == b == fx.real_index, f"signature route {a}, oracle {b}, expected {fx.real_index}"
        check(f"fiber {fx.name}", fib)
    for fx in (fixtures.CUSP_HAMILTONIAN, fixtures.QUADRIC3):
        def hes(fx=fx):
            ok = hessian_identity_report(fx.problem(), 5, 0).holds
            bad = hessian_identity_report(fx.problem(), 5, 0, mutate_index=0).holds
            return ok and not bad, f"identity {ok}, mutated {bad}"
        check(f"hessian {fx.name}", hes)
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="icis-index", description="Exact indices of 1-forms on isolated complete "
                                "intersection singularities.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, germ=True):
        if germ:
            sp.add_argument("germ", help="germ file (vars:, f:, omega: lines)")
        out = sp.add_mutually_exclusive_group()
        out.add_argument("--json", action="store_true", help="compact JSON report")
        out.add_argument("--pretty", action="store_true", help="indented JSON report")

    def fiber(sp, required):
        sp.add_argument("--epsilon", required=required, help="fiber value(s), comma-separated rationals p/q")
        sp.add_argument("--delta", required=required, help="ball radius (rational)")
        sp.add_argument("--lambda", dest="lam", help="perturb omega to omega - lambda*eta")
        sp.add_argument("--eta", help="perturbation coefficients, comma-separated polynomials")
        sp.add_argument("--eta-seed", type=int, default=0, help="seed for a generic constant eta (default 0)")

    common(sub.add_parser("index", help="complex index as a colength"))
    sp = sub.add_parser("real-index", help="real index (smooth case, or via a smoothed fiber)")
    common(sp)
    fiber(sp, required=False)
    sp = sub.add_parser("hessian-verify", help="check the bordered-determinant Hessian formula")
    common(sp)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--eliminate", help="comma-separated dependent variables (default: the first k)")
    sp.add_argument("--mutate", type=int, default=None, help=argparse.SUPPRESS)
    sp = sub.add_parser("oracle", help="exact zero count, signs and Euler characteristic on a plane-curve fiber")
    common(sp)
    fiber(sp, required=True)
    common(sub.add_parser("selftest", help="run the embedded fixtures"), germ=False)
    return p


COMMANDS = {"index": cmd_index, "real-index": cmd_real_index, "hessian-verify": cmd_hessian, "oracle": cmd_oracle}

PRECONDITION_ERRORS = (GermError, ChartError, InfiniteColength, StandardBasisError, QuadFormError,
                       O.OracleError, ValueError)


def _emit(report: dict, args, text_lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(report, separators=(",", ":")))
    elif args.pretty:
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(text_lines))


def _text_summary(command: str, result: dict | None, diags: list) -> list[str]:
    lines = []
    if result is not None:
        for k, v in result.items():
            if isinstance(v, (list, dict)) and len(json.dumps(v)) > 100:
                v = json.dumps(v)[:97] + "..."
            lines.append(f"{k}: {v if not isinstance(v, (list, dict)) else json.dumps(v)}")
    lines.extend(f"note: {d}" for d in diags)
    return lines


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    t0 = time.perf_counter()
    diags: list[str] = []

    if args.command == "selftest":
        results = run_selftest()
        report = {"schema": SCHEMA, "command": "selftest", "inputs": {},
                  "result": {"passed": sum(r.passed for r in results), "total": len(results),
                             "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]},
                  "diagnostics": [], "timing_ms": round(1000 * (time.perf_counter() - t0), 1)}
        _emit(report, args, [f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}" for r in results])
        return EXIT_OK if all(r.passed for r in results) else 1

    inputs = {"germ": args.germ}
    code, result = EXIT_OK, None
    try:
        g = parse_germ_file(args.germ)
        inputs["problem"] = _problem_echo(g)
        result = COMMANDS[args.command](g, args, diags)
    except (PolySyntaxError, GermFileError, FlagError, OSError, UnicodeDecodeError) as exc:
        code = EXIT_PARSE
        diags.append(f"parse error: {exc}")
    except O.DegenerateConfiguration as exc:
        code = EXIT_DEGENERATE
        diags.append(f"degenerate configuration: {exc}")
    except PRECONDITION_ERRORS as exc:
        code = EXIT_PRECONDITION
        diags.append(f"precondition violated: {exc}")
    report = {"schema": SCHEMA, "command": args.command, "inputs": inputs, "result": result,
              "diagnostics": diags, "timing_ms": round(1000 * (time.perf_counter() - t0), 1)}
    if code != EXIT_OK and not (args.json or args.pretty):
        print(diags[-1], file=sys.stderr)
    else:
        _emit(report, args, _text_summary(args.command, result, diags))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
