"""Time the compiled and pure-Python elimination kernels on Anzai blocks.

    python3 benchmarks/bench_snf.py [--max-n 11] [--repeat 3]
"""

import argparse
import statistics
import time

from toruskt import kernels
from toruskt.exactmat import invariant_chain
from toruskt.exterior import anzai_matrix, wedge_powers


def _time(rows, backend, repeat):
    runs, result = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = kernels.diagonal_entries(rows, backend=backend)
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-n", type=int, default=8)
    ap.add_argument("--max-n", type=int, default=11)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if kernels._kernel_c is None:
        print("compiled kernel not built; only the Python timings are shown")
    print(f"{'n':>3} {'r':>3} {'size':>5} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    tot_py = tot_c = 0.0
    for n in range(args.min_n, args.max_n + 1):
        for r, W in enumerate(wedge_powers(anzai_matrix(n))):
            if W.rows < 20:
                continue
            rows = W.minus_identity().to_lists()
            t_py, res_py = _time(rows, "python", args.repeat)
            tot_py += t_py
            if kernels._kernel_c is None:
                print(f"{n:>3} {r:>3} {W.rows:>5} {t_py:>10.4f}")
                continue
            t_c, res_c = _time(rows, "compiled", args.repeat)
            tot_c += t_c
            assert invariant_chain(res_c[0]) == invariant_chain(res_py[0])
            print(f"{n:>3} {r:>3} {W.rows:>5} {t_py:>10.4f} {t_c:>11.4f} {t_py / t_c:>7.1f}x")
    if tot_c:
        print(f"total: python {tot_py:.3f}s, compiled {tot_c:.3f}s, {tot_py / tot_c:.1f}x")


if __name__ == "__main__":
    main()
