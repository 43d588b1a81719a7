"""Compare the pure-Python and compiled enumeration kernels.

Usage: python benchmarks/bench_backends.py [--count 300] [--n 10]
Builds a seeded corpus, times exhaustive solving under each backend, and
prints a small table.  Build the extension first for a meaningful run:
python setup.py build_ext --inplace
"""

import argparse
import random
import statistics
import time

from degedit import _bruteforce_py
from degedit.generator import generate_random_planar_instance
from degedit.instance import CONNECTED, PLAIN
from degedit.oracle import _encode

try:
    from degedit import _bruteforce
except ImportError:
    _bruteforce = None


def corpus(count, n_hi, seed=7):
    rng = random.Random(seed)
    out = []
    attempt = 0
    while len(out) < count:
        k_v = rng.randint(0, 3)
        inst = generate_random_planar_instance(
            rng.randint(4, n_hi), k_v, rng.randint(0, 3 - k_v),
            rng.randint(0, 6), rng.choice((PLAIN, CONNECTED)),
            seed=seed + attempt)
        attempt += 1
        if inst.graph.m <= 24:
            out.append(_encode(inst)[2:] + (
                inst.k_v, inst.k_e, inst.cost_budget,
                1 if inst.connected_variant else 0, 10_000))
    return out


def bench(backend, jobs, repeats=3):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        for args in jobs:
            backend.solve_exact(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--count", type=int, default=300)
    parser.add_argument("--n", type=int, default=10)
    args = parser.parse_args()
    jobs = corpus(args.count, args.n)
    rows = [("python", bench(_bruteforce_py, jobs))]
    if _bruteforce is not None:
        rows.append(("c", bench(_bruteforce, jobs)))
    else:
        print("note: compiled backend not built; "
              "run: python setup.py build_ext --inplace")
    print(f"{args.count} instances, up to {args.n} vertices, best of 3:")
    base = rows[0][1]
    for name, t in rows:
        per = t / len(jobs) * 1e6
        print(f"  {name:<7} {t * 1e3:8.1f} ms total  {per:8.1f} us/instance"
              f"  x{base / t:.2f}")


if __name__ == "__main__":
    main()
