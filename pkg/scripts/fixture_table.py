"""Print the fixture table: complex index, zero counts and real index by both routes.

    python3 scripts/fixture_table.py [--json]
"""
import argparse
import json
import time

from icis_index import fixtures as FX
from icis_index.index import complex_index
from icis_index.oracle import FiberSpec, count_zeros_on_fiber, recovered_real_index
from icis_index.quadforms import real_index_smooth, real_index_via_fiber


def row(fx):
    t0 = time.perf_counter()
    g = fx.problem()
    out = {"name": fx.name, "index": complex_index(g).index, "expected": fx.complex_index}
    if not g.k:
        out["real_index"] = real_index_smooth(g)
    elif fx.fibers:
        eta, lam = fx.eta()
        counts, oracle, trace = [], set(), set()
        for eps, delta in fx.fibers:
            spec = FiberSpec((eps,), delta, eta, lam)
            counts.append(count_zeros_on_fiber(g, FiberSpec((eps,), delta)))
            oracle.add(recovered_real_index(g, spec))
            if fx in FX.TRACE_FIXTURES:
                trace.add(real_index_via_fiber(g, (eps,), delta, eta, lam))
        out.update(zero_counts=counts, oracle=sorted(oracle), trace=sorted(trace) or None)
    out["seconds"] = round(time.perf_counter() - t0, 3)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = [row(fx) for fx in (*FX.PLANE_CURVES, *FX.SMOOTH)]
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'fixture':24} {'mu':>4} {'zeros on fibers':24} {'oracle':>8} {'trace':>8} {'smooth':>7} {'s':>6}")
    for r in rows:
        print(f"{r['name']:24} {r['index']:>4} {str(r.get('zero_counts', '')):24} "
              f"{str(r.get('oracle', '')):>8} {str(r.get('trace') or ''):>8} {str(r.get('real_index', '')):>7} "
              f"{r['seconds']:>6}")


if __name__ == "__main__":
    main()
