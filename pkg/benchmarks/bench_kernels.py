"""Compare the compiled and pure-Python Howell kernels.

Usage::

    python benchmarks/bench_kernels.py [--repeat 3]

Prints per-shape timings for the kernel itself and an end-to-end
classification workload run once per backend in a subprocess.
"""

import argparse
import os
import random
import subprocess
import sys
import time

from subpair import kernels
from subpair._pykernels import TRUNCPOLY, ZMOD

WORKLOAD = """
import random, time
from subpair.functor import classify_s2
from subpair.oracle import scramble
from subpair.pairs import labels_direct_sum, labels_s2
from subpair.ring import RingSpec
rng = random.Random(0)
t = time.perf_counter()
for _ in range(200):
    spec = RingSpec.zmod(rng.choice([2, 3]), rng.randint(1, 4))
    labels = [rng.choice(labels_s2(spec.n)) for _ in range(rng.randint(1, 4))]
    classify_s2(scramble(labels_direct_sum(spec, labels).pair, rng), witness=True)
print(time.perf_counter() - t)
"""


def random_rows(rng, p, n, r, c):
    q = p**n
    return [[rng.randrange(q) for _ in range(c)] for _ in range(r)]


def time_kernel(fn, cases, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        for rows, c, p, n, kind in cases:
            fn(rows, c, p, n, kind)
        best = min(best, time.perf_counter() - t)
    return best


def end_to_end(pure: bool) -> float:
    env = dict(os.environ)
    if pure:
        env["SUBPAIR_PURE_PYTHON"] = "1"
    else:
        env.pop("SUBPAIR_PURE_PYTHON", None)
    out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--cases", type=int, default=300)
    args = parser.parse_args()
    if kernels.BACKEND != "cython":
        print("compiled kernel not available; only the Python backend can be timed")
    rng = random.Random(1)
    shapes = [(2, 3, 4, 4), (3, 4, 8, 8), (2, 6, 16, 12), (5, 3, 12, 24)]
    print(f"{'p':>2} {'n':>2} {'rows':>4} {'cols':>4} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for p, n, r, c in shapes:
        cases = []
        for _ in range(args.cases):
            kind = rng.choice([ZMOD, TRUNCPOLY])
            cases.append((random_rows(rng, p, n, r, c), c, p, n, kind))
        tp = time_kernel(kernels.py_howell_form, cases, args.repeat)
        if kernels.BACKEND == "cython":
            tc = time_kernel(kernels.howell_form, cases, args.repeat)
            print(f"{p:>2} {n:>2} {r:>4} {c:>4} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x")
        else:
            print(f"{p:>2} {n:>2} {r:>4} {c:>4} {tp:>10.4f} {'-':>10} {'-':>8}")
    py = end_to_end(pure=True)
    print(f"end-to-end (200 classifications with witnesses): python {py:.2f} s", end="")
    if kernels.BACKEND == "cython":
        cy = end_to_end(pure=False)
        print(f", cython {cy:.2f} s ({py / cy:.1f}x)")
    else:
        print()


if __name__ == "__main__":
    main()
