"""Time the exact-oracle kernels against each other.

    python benchmarks/bench_oracle.py [--repeat 3] [--with-enum]

Workloads are SAT reductions (2n candidate leaves) and random DAGs. Every
backend must return the same (value, witness); the script aborts otherwise.
"""

import argparse
import time

from pnsdag.generators import random_cnf, random_dag
from pnsdag.oracle import available_backends, exact_number, Mode
from pnsdag.sat import CnfFormula, reduce_cnf


def workloads():
    yield "sat n=9 k=12 (x20)", [reduce_cnf(random_cnf(s, 9, 12)) for s in range(20)], Mode.PROOF
    # unsatisfiable: every sign pattern over x1..x3, padded with free variables
    full = [tuple(v if (m >> (v - 1)) & 1 else -v for v in (1, 2, 3)) for m in range(8)]
    yield "unsat n=9 (x1)", [reduce_cnf(CnfFormula(9, tuple(full)))], Mode.PROOF
    yield "sat n=11 k=14 (x3)", [reduce_cnf(random_cnf(s, 11, 14)) for s in range(3)], Mode.PROOF
    yield "unsat n=12 (x1)", [reduce_cnf(CnfFormula(12, tuple(full)))], Mode.PROOF
    yield "random dag <=14 (x300)", [random_dag(s, 14) for s in range(300)], Mode.DISPROOF


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--with-enum", action="store_true", help="include the slow pure-Python enumeration kernel")
    args = ap.parse_args()
    backends = [b for b in available_backends() if args.with_enum or b != "python-enum"]
    print(f"{'workload':26}" + "".join(f"{b:>14}" for b in backends), flush=True)
    for name, graphs, mode in workloads():
        reference = None
        row = []
        for b in backends:
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                results = [exact_number(g, mode=mode, leaf_budget=24, backend=b) for g in graphs]
                best = min(best, time.perf_counter() - t0)
            if reference is None:
                reference = results
            elif results != reference:
                raise SystemExit(f"backend {b} disagrees on {name}")
            row.append(best)
        print(f"{name:26}" + "".join(f"{t * 1000:12.1f}ms" for t in row), flush=True)


if __name__ == "__main__":
    main()
