"""Time the numpy and numba kernel paths on desk-sized inputs.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one row per kernel: best-of-N seconds for each path and the speedup.
The first numba call (compilation) is excluded.
"""
import argparse
import itertools
import timeit

import numpy as np

from powercomplex import _kernels
from powercomplex.catalog import polygon
from powercomplex.power import power_complex
from powercomplex.symmetry import wreath_subgroup


def closure_inputs(K):
    order = np.argsort(K.ranks, kind="stable").astype(np.int64)
    ptr = np.zeros(K.num_faces + 1, dtype=np.int64)
    idx = []
    for b in range(K.num_faces):
        idx += K.down[b]
        ptr[b + 1] = len(idx)
    return order, ptr, np.array(idx, dtype=np.int64)


def cases():
    P = power_complex(polygon(6), 3, validate=False)
    tuples = np.array(list(itertools.product(range(1, 4), repeat=7)), dtype=np.int64)
    free = np.array([True, False, True, False, False, True, False])
    masks = np.random.default_rng(0).random((600, 2000)) < 0.7
    W = wreath_subgroup(polygon(5), 3)
    perms = np.array(W.generators, dtype=np.int64)
    return {
        "closure (3^{6}, 2675 faces)": ("closure", closure_inputs(P)),
        "fixed_membership (3^7 tuples)": ("fixed_membership", (tuples, free)),
        "inclusion (600 x 2000 masks)": ("inclusion", (masks,)),
        "orbit_labels (wreath gens on 3^{5})": ("orbit_labels", (perms,)),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels.numba_kernels is None:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':40s} {'numpy s':>10s} {'numba s':>10s} {'speedup':>8s}")
    for label, (name, inputs) in cases().items():
        fn_np = getattr(_kernels.numpy_kernels, name)
        fn_nb = getattr(_kernels.numba_kernels, name)
        assert (fn_np(*inputs) == fn_nb(*inputs)).all(), name  # also warms up numba
        t_np = min(timeit.repeat(lambda: fn_np(*inputs), number=1, repeat=args.repeat))
        t_nb = min(timeit.repeat(lambda: fn_nb(*inputs), number=1, repeat=args.repeat))
        print(f"{label:40s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
