"""Compare the numba and numpy paths of the phase-sum kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints one line per kernel and problem size with the best wall time of
each path, the speedup and the max deviation between the two results.
A last block times a full inversion of 1/(p+1) at t = 0.1..5 both ways.
"""
import argparse
import os
import time

import numpy as np

from laplace_kit import _kernels as K
from laplace_kit.catalog import lookup
from laplace_kit.transform import bromwich_invert

FLAG = "LAPLACE_KIT_DISABLE_NUMBA"


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_kernel(name, numba_fn, numpy_fn, make_args, repeat):
    args = make_args()
    numba_fn(*make_args())  # compile outside the timing
    tn, rn = best_of(lambda: numba_fn(*make_args()), repeat)
    tp, rp = best_of(lambda: numpy_fn(*make_args()), repeat)
    dev = float(np.max(np.abs(rn - rp)) / max(1.0, float(np.max(np.abs(rp)))))
    ns, nt = args[0].size, args[-1].size
    print(f"{name:<20} nodes={ns:>8} times={nt:>5}  numba {tn*1e3:9.2f} ms  numpy {tp*1e3:9.2f} ms  "
          f"x{tp/tn:6.2f}  rel.dev {dev:.1e}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    opts = ap.parse_args()
    if K.numba is None:
        raise SystemExit("numba is not importable; nothing to compare")
    rng = np.random.default_rng(0)
    for ns, nt in [(4096, 8), (65536, 8), (65536, 64), (262144, 16)]:
        s = np.sort(rng.uniform(-1e4, 1e4, ns))
        wf = rng.normal(size=ns) + 1j * rng.normal(size=ns)
        t = np.linspace(0.1, 5.0, nt)

        def general():
            return s, wf, t, np.zeros(nt, complex)

        def real():
            return s, wf, t, np.zeros(nt)

        bench_kernel("phase_sum", K.phase_sum_numba, K.phase_sum_numpy, general, opts.repeat)
        bench_kernel("real_phase_sum", K.real_phase_sum_numba, K.real_phase_sum_numpy, real, opts.repeat)

        def uniform_numba():
            return K.phase_sum_uniform_numba(s, wf, 0.1, t[1] - t[0] if nt > 1 else 0.0, nt,
                                             np.zeros(nt, complex))

        def uniform_numpy():
            return K.phase_sum_uniform_numpy(s, wf, 0.1, t[1] - t[0] if nt > 1 else 0.0, nt,
                                             np.zeros(nt, complex))

        uniform_numba()
        tn, rn = best_of(uniform_numba, opts.repeat)
        tp, rp = best_of(uniform_numpy, opts.repeat)
        dev = float(np.max(np.abs(rn - rp)) / max(1.0, float(np.max(np.abs(rp)))))
        print(f"{'phase_sum_uniform':<20} nodes={ns:>8} times={nt:>5}  numba {tn*1e3:9.2f} ms  "
              f"numpy {tp*1e3:9.2f} ms  x{tp/tn:6.2f}  rel.dev {dev:.1e}")

    F = lookup("exp-decay").F
    times = [0.1, 0.5, 1.0, 2.0, 5.0]
    results = {}
    for label, value in (("numba", "0"), ("numpy", "1")):
        os.environ[FLAG] = value
        bromwich_invert(F, [1.0])
        t0 = time.perf_counter()
        res = bromwich_invert(F, times)
        results[label] = (time.perf_counter() - t0, res.values)
    os.environ.pop(FLAG, None)
    dev = float(np.max(np.abs(results["numba"][1] - results["numpy"][1])))
    print(f"full inversion exp-decay, 5 times: numba {results['numba'][0]:.2f} s  "
          f"numpy {results['numpy'][0]:.2f} s  max |diff| {dev:.1e}")


if __name__ == "__main__":
    main()
