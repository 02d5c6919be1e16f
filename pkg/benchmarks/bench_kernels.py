"""Compare the numba kernels against the pure numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--points N] [--h H] [--repeat R]
"""

import argparse
import time

import numpy as np

from hodge_psh import _kernels
from hodge_psh.chart import _pairing_matrix
from hodge_psh.hodge_core import build_model


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=20000)
    ap.add_argument("--h", type=int, default=9)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    model = build_model("Minimal", args.h)
    I, J = model.wedge.pair_arrays
    M = _pairing_matrix(model.kind, model.h)
    rng = np.random.default_rng(0)
    cplx = lambda *shape: rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    X, Y = cplx(args.points, model.dimV), cplx(args.points, model.dimV)
    E = [cplx(args.points, len(I)) for _ in range(4)]

    print(f"backend available: {_kernels.backend()}; points={args.points}, dim H={len(I)}")
    ref_w = _kernels.wedge_batch_numpy(X, Y, I, J)
    ref_p = _kernels.pairing_jets_numpy(*E, M)
    t_np_w = best_of(lambda: _kernels.wedge_batch_numpy(X, Y, I, J), args.repeat)
    t_np_p = best_of(lambda: _kernels.pairing_jets_numpy(*E, M), args.repeat)
    print(f"numpy  wedge    {t_np_w * 1e3:9.3f} ms")
    print(f"numpy  pairing  {t_np_p * 1e3:9.3f} ms")
    if not _kernels.HAVE_NUMBA:
        print("numba disabled (HODGE_PSH_NO_NUMBA set or numba missing)")
        return
    _kernels.wedge_batch(X[:2], Y[:2], I, J)
    _kernels.pairing_jets(*(e[:2] for e in E), M, use_numba=True)
    t_nb_w = best_of(lambda: _kernels.wedge_batch(X, Y, I, J), args.repeat)
    t_nb_p = best_of(lambda: _kernels.pairing_jets(*E, M, use_numba=True), args.repeat)
    err_w = np.max(np.abs(_kernels.wedge_batch(X, Y, I, J) - ref_w))
    got = _kernels.pairing_jets(*E, M, use_numba=True)
    err_p = max(float(np.max(np.abs(a - b) / (1 + np.abs(b)))) for a, b in zip(got, ref_p))
    print(f"numba  wedge    {t_nb_w * 1e3:9.3f} ms  speedup {t_np_w / t_nb_w:6.2f}x  max diff {err_w:.1e}")
    print(f"numba  pairing  {t_nb_p * 1e3:9.3f} ms  speedup {t_np_p / t_nb_p:6.2f}x  max rel diff {err_p:.1e}")


if __name__ == "__main__":
    main()
