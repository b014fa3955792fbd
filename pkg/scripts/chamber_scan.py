"""Scan fiber values epsilon for one plane-curve fixture and report zeros, chi and the recovered index.

    python3 scripts/chamber_scan.py cusp-dy --delta 1 --eps 1/8,-1/8,1/27
    python3 scripts/chamber_scan.py a4-dy --delta 1/4 --eps 1/100000,-1/997

Rows flagged '!' have a zero count different from the complex index: epsilon is
too large for the chosen ball, so the count is not the local one.
"""
import argparse
from fractions import Fraction

from icis_index import fixtures as FX
from icis_index.index import complex_index
from icis_index.oracle import FiberSpec, OracleError, oracle_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("fixture", choices=sorted(fx.name for fx in FX.PLANE_CURVES))
    ap.add_argument("--delta", type=Fraction, default=Fraction(1, 4))
    ap.add_argument("--eps", default="1/1000,-1/997,2/2003,1/27,-1/50,1/8",
                    type=lambda s: [Fraction(t) for t in s.split(",")], help="comma-separated rationals")
    args = ap.parse_args()
    fx = FX.ALL[args.fixture]
    g = fx.problem()
    eta, lam = fx.eta()
    mu = complex_index(g).index
    print(f"{fx.name}: complex index {mu}, expected real index {fx.real_index}, delta {args.delta}")
    print(f"{'epsilon':>10} {'zeros':>6} {'signs':>6} {'chi':>4} {'index':>6}")
    for eps in args.eps:
        try:
            rep = oracle_report(g, FiberSpec((eps,), args.delta, eta, lam))
        except OracleError as exc:
            print(f"{str(eps):>10}  {type(exc).__name__}: {exc}")
            continue
        flag = "" if rep.zeros_in_disc == mu else "  !"
        print(f"{str(eps):>10} {rep.zeros_in_disc:>6} {rep.sign_sum:>6} {rep.euler_char:>4} "
              f"{rep.recovered_index:>6}{flag}")


if __name__ == "__main__":
    main()
