"""Compare the numba and pure-numpy kernels on witness-sized workloads.

    python benchmarks/bench_kernels.py [--n 14] [--repeat 5]

Each kernel is called once per backend before timing, so numba compilation
is excluded. Both backends must return identical arrays.
"""

import argparse
import time

import numpy as np

from witnesslab.automata import determinize, reverse, to_mask
from witnesslab.kernels import _numba, _numpy
from witnesslab.witnesses import build_witness, witness


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def workloads(n):
    nf = reverse(build_witness(witness("U", n, "abc")))
    masks, start = nf.masks(), np.int64(to_mask(nf.initials))
    left = determinize(reverse(build_witness(witness("U", n - 4, "abc", [0, 2]))))
    right = determinize(reverse(build_witness(witness("U", n - 5, "bac", [1, 3]))))
    t1, t2 = np.ascontiguousarray(left.delta), np.ascontiguousarray(right.delta)
    _, _, prod = _numba.product_bfs(t1, t2, 0, 0)
    finals = np.zeros(prod.shape[0], dtype=np.bool_)
    finals[::3] = True
    return {
        f"subset_bfs  reverse(U_{n}) -> 2^{n}": lambda k: k.subset_bfs(masks, start, nf.n),
        f"product_bfs {left.n} x {right.n}": lambda k: k.product_bfs(t1, t2, 0, 0),
        f"refine      {prod.shape[0]} states": lambda k: k.refine_partition(prod, finals),
        f"reach_bfs   {prod.shape[0]} states": lambda k: k.reach_bfs(prod, 0),
    }


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=14, help="witness size for the subset workload (9..20)")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    print(f"{'kernel':<34} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for name, call in workloads(args.n).items():
        call(_numba)  # compile
        call(_numpy)
        t_nb, out_nb = best_of(lambda: call(_numba), args.repeat)
        t_np, out_np = best_of(lambda: call(_numpy), args.repeat)
        if not same(out_nb, out_np):
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:<34} {t_nb * 1e3:>10.2f} {t_np * 1e3:>10.2f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
