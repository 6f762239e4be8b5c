"""Compare the compiled and pure-Python elimination kernels.

Run with ``python3 benchmarks/bench_rank.py``.  The matrices are the ones
the package actually eliminates: every call to the rank kernel made while
computing a few twisted de Rham and critical locus cohomologies is recorded
and then replayed through both kernels.  Random small-entry matrices are
added for reference; those grow coefficients quickly, so the compiled kernel
often overflows int64 and hands them back to Python (counted as fallbacks).
"""

import argparse
import random
import time

from curvhom import _backend, _elim_py

try:
    from curvhom import _elim
except ImportError:
    _elim = None


def record(workload):
    """Run ``workload`` and return every (rows, ncols) passed to the kernel."""
    calls = []
    inner = _backend.rank_rows

    def spy(rows, ncols):
        rows = list(rows)
        calls.append(([dict(r) for r in rows], ncols))
        return inner(rows, ncols)

    _backend.rank_rows = spy
    try:
        workload()
    finally:
        _backend.rank_rows = inner
    return calls


def package_workload():
    from curvhom.exprparse import to_element
    from curvhom.poly import Generator, TruncatedPolyAlgebra
    from curvhom.twisted import TwistedDeRham, twisted_cohomology

    alg = TruncatedPolyAlgebra([Generator("x"), Generator("y")], 24)
    for text in ("x^3 + y^3", "x^2*y + y^4", "x^4 + y^3"):
        W = to_element(text, alg)
        twisted_cohomology(TwistedDeRham(W, D=14), u_samples=2)


def random_rows(n, density, seed, height=1):
    rng = random.Random(seed)
    rows = []
    for _ in range(n):
        row = {c: rng.randint(-height, height) for c in range(n) if rng.random() < density}
        rows.append({c: v for c, v in row.items() if v})
    return rows


def replay(fn, calls, repeat):
    best = float("inf")
    ranks = None
    for _ in range(repeat):
        t = time.perf_counter()
        ranks = [fn([dict(r) for r in rows], ncols) for rows, ncols in calls]
        best = min(best, time.perf_counter() - t)
    return ranks, best


def count_fallbacks(calls):
    """Number of matrices the compiled kernel returns to the Python kernel."""
    hits = [0]
    inner = _elim_py.rank_rows

    def counting(rows, ncols):
        hits[0] += 1
        return inner(rows, ncols)

    _elim_py.rank_rows = counting
    try:
        for rows, ncols in calls:
            _elim.rank_rows([dict(r) for r in rows], ncols)
    finally:
        _elim_py.rank_rows = inner
    return hits[0]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    cases = [("twisted de Rham workload", record(package_workload))]
    for n, d in ((200, 0.03), (400, 0.01)):
        cases.append((f"random {n}x{n} entries +-1", [(random_rows(n, d, args.seed), n)]))
    cases.append(("random 200x200 entries +-9", [(random_rows(200, 0.03, args.seed, 9), 200)]))

    if _elim is None:
        print("compiled kernel not built; only the pure-Python timings are shown")
    print(f"{'case':<28} {'mats':>5} {'python s':>10} {'cython s':>10} {'speedup':>8} {'fallbacks':>10}")
    for name, calls in cases:
        r_py, t_py = replay(_elim_py.rank_rows, calls, args.repeat)
        if _elim is None:
            print(f"{name:<28} {len(calls):>5} {t_py:>10.4f}")
            continue
        r_c, t_c = replay(_elim.rank_rows, calls, args.repeat)
        if r_c != r_py:
            raise SystemExit(f"rank mismatch on {name}")
        fb = count_fallbacks(calls)
        print(f"{name:<28} {len(calls):>5} {t_py:>10.4f} {t_c:>10.4f} {t_py / t_c:>7.1f}x {fb:>10}")


if __name__ == "__main__":
    main()
