"""Hot numeric kernels with a numba path and a pure-numpy fallback.

Set ``POWERCOMPLEX_DISABLE_NUMBA=1`` before import to force the numpy path.
Both implementations are always importable as ``numpy_kernels`` and
``numba_kernels`` (the latter is ``None`` when numba is missing) so tests and
benchmarks can compare them directly.

Kernels:

    closure(order, ptr, idx)            reachability matrix from cover lists
    fixed_membership(tuples, free)      rows = sets F(eps) over all eps
    inclusion(masks)                    subset matrix between boolean rows
    orbit_labels(perms)                 orbit label of every point
"""
import os
from types import SimpleNamespace

import numpy as np

_FLAG = os.environ.get("POWERCOMPLEX_DISABLE_NUMBA", "").strip().lower()
DISABLED = _FLAG in ("1", "true", "yes", "on")

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def _np_closure(order, ptr, idx):
    n = len(order)
    leq = np.zeros((n, n), dtype=np.bool_)
    for b in order:
        col = leq[:, b]
        col[b] = True
        for a in idx[ptr[b]:ptr[b + 1]]:
            col |= leq[:, a]
    return leq


def _np_fixed_membership(tuples, free):
    # row e is the indicator of {t : t_i == e_i for every non-free i}
    fixed_cols = np.flatnonzero(~free)
    if len(fixed_cols) == 0:
        return np.ones((len(tuples), len(tuples)), dtype=np.bool_)
    sub = tuples[:, fixed_cols]
    # encode the fixed part as one integer key per tuple
    base = int(tuples.max()) + 1
    weights = base ** np.arange(len(fixed_cols), dtype=np.int64)
    key = sub.astype(np.int64) @ weights
    return key[:, None] == key[None, :]


def _np_inclusion(masks):
    a = masks.astype(np.int32)
    b = (~masks).astype(np.int32)
    return (a @ b.T) == 0


def _np_orbit_labels(perms):
    n_points = perms.shape[1]
    labels = np.full(n_points, -1, dtype=np.int64)
    for start in range(n_points):
        if labels[start] >= 0:
            continue
        labels[start] = start
        frontier = np.array([start])
        while len(frontier):
            images = perms[:, frontier].ravel()
            fresh = np.unique(images[labels[images] < 0])
            labels[fresh] = start
            frontier = fresh
    return labels


numpy_kernels = SimpleNamespace(
    name="numpy",
    closure=_np_closure,
    fixed_membership=_np_fixed_membership,
    inclusion=_np_inclusion,
    orbit_labels=_np_orbit_labels,
)


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

numba_kernels = None

if HAVE_NUMBA:

    @njit(cache=True)
    def _nb_closure(order, ptr, idx):
        n = order.shape[0]
        leq = np.zeros((n, n), dtype=np.bool_)
        for t in range(n):
            b = order[t]
            leq[b, b] = True
            for j in range(ptr[b], ptr[b + 1]):
                a = idx[j]
                for r in range(n):
                    if leq[r, a]:
                        leq[r, b] = True
        return leq

    @njit(cache=True)
    def _nb_fixed_membership(tuples, free):
        m, v = tuples.shape
        out = np.empty((m, m), dtype=np.bool_)
        for e in range(m):
            for t in range(m):
                ok = True
                for i in range(v):
                    if not free[i] and tuples[t, i] != tuples[e, i]:
                        ok = False
                        break
                out[e, t] = ok
        return out

    @njit(cache=True)
    def _nb_inclusion(masks):
        m, w = masks.shape
        out = np.empty((m, m), dtype=np.bool_)
        for a in range(m):
            for b in range(m):
                ok = True
                for t in range(w):
                    if masks[a, t] and not masks[b, t]:
                        ok = False
                        break
                out[a, b] = ok
        return out

    @njit(cache=True)
    def _nb_orbit_labels(perms):
        g, n_points = perms.shape
        labels = np.full(n_points, -1, dtype=np.int64)
        stack = np.empty(n_points, dtype=np.int64)
        for start in range(n_points):
            if labels[start] >= 0:
                continue
            labels[start] = start
            top = 0
            stack[top] = start
            top += 1
            while top > 0:
                top -= 1
                x = stack[top]
                for s in range(g):
                    y = perms[s, x]
                    if labels[y] < 0:
                        labels[y] = start
                        stack[top] = y
                        top += 1
        return labels

    numba_kernels = SimpleNamespace(
        name="numba",
        closure=_nb_closure,
        fixed_membership=_nb_fixed_membership,
        inclusion=_nb_inclusion,
        orbit_labels=_nb_orbit_labels,
    )


active = numba_kernels if (numba_kernels is not None and not DISABLED) else numpy_kernels


def closure(order, ptr, idx):
    return active.closure(np.ascontiguousarray(order, dtype=np.int64),
                          np.ascontiguousarray(ptr, dtype=np.int64),
                          np.ascontiguousarray(idx, dtype=np.int64))


def fixed_membership(tuples, free):
    return active.fixed_membership(np.ascontiguousarray(tuples, dtype=np.int64),
                                   np.ascontiguousarray(free, dtype=np.bool_))


def inclusion(masks):
    return active.inclusion(np.ascontiguousarray(masks, dtype=np.bool_))


def orbit_labels(perms):
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    if perms.ndim == 1:
        perms = perms[None, :]
    return active.orbit_labels(perms)
