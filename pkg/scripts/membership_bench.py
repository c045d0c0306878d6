#!/usr/bin/env python3
"""Benchmark the three cube-membership routes (factorization, sigma
equations, binomial extension) on random maps and confirm they agree.

Usage: python3 scripts/membership_bench.py [--trials 20000] [--n 3]
"""

import argparse
import random
import time

from nilcube import cubegroups as cg
from nilcube import poly
from nilcube.groups import CyclicProduct, make_heisenberg, maximal_degree_k_filtration


def bench(name, filt, trials, n, seed):
    G = filt.group
    rng = random.Random(seed)
    maps = [tuple(rng.randrange(G.order) for _ in range(1 << n)) for _ in range(trials)]
    methods = [
        ("factorize", lambda v: cg.is_cube(v, filt)),
        ("equations", lambda v: cg.is_cube_by_equations(v, filt)),
        ("binomial", lambda v: poly.cube_to_binomial(v, filt) is not None),
    ]
    verdicts = []
    print(name)
    for label, fn in methods:
        t0 = time.perf_counter()
        res = [fn(v) for v in maps]
        dt = time.perf_counter() - t0
        print("  %-9s %.3fs  (%d cubes / %d maps)" % (label, dt, sum(res), trials))
        verdicts.append(res)
    assert verdicts[0] == verdicts[1] == verdicts[2], "methods disagree"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=20000)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    bench("D_1(Z/4)", maximal_degree_k_filtration(CyclicProduct((4,)), 1),
          args.trials, args.n, args.seed)
    bench("Heisenberg mod 2", make_heisenberg(2)[1], args.trials, args.n, args.seed)
    bench("Heisenberg mod 3", make_heisenberg(3)[1], args.trials, args.n, args.seed)


if __name__ == "__main__":
    main()
