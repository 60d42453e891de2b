"""Backtracking isomorphism search between ranked posets.

Faces of the source are visited in a fixed order in which (after the two
improper faces) every face is a cover-neighbour of an earlier one, so the
candidates for its image are the matching cover-neighbours of the image of
that earlier face.  Candidates are filtered by a (rank, up-degree,
down-degree, vertex count) signature and by agreement of the order relation
with every face already mapped.
"""
from __future__ import annotations

from collections import deque

import numpy as np

from .complex import IncidenceComplex
from .errors import SizeCapExceeded

SEARCH_CAP = 5_000_000


def signatures(K: IncidenceComplex) -> list[tuple[int, int, int, int]]:
    return [(int(K.ranks[f]), len(K.up[f]), len(K.down[f]), len(K.vertex_sets[f]))
            for f in range(K.num_faces)]


def _search_order(K: IncidenceComplex):
    """Visiting order, plus for each position the earlier neighbour to extend from."""
    n = K.num_faces
    order = [K.bottom] if n == 1 else [K.bottom, K.top]
    parent = [None] * len(order)
    seen = set(order)
    for start in range(n):
        if start in seen:
            continue
        order.append(start)
        parent.append(None)
        seen.add(start)
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in K.up[x] + K.down[x]:
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    parent.append(x)
                    queue.append(y)
    return order, parent


class _Matcher:
    def __init__(self, A: IncidenceComplex, B: IncidenceComplex, cap: int = SEARCH_CAP):
        self.A, self.B = A, B
        self.sigA, self.sigB = signatures(A), signatures(B)
        self.order, self.parent = _search_order(A)
        self.pos = {x: t for t, x in enumerate(self.order)}
        self.orderA = np.array(self.order, dtype=np.int64)
        self.by_sig: dict = {}
        for y, s in enumerate(self.sigB):
            self.by_sig.setdefault(s, []).append(y)
        self.leqA, self.leqB = A.leq, B.leq
        self.cap = cap
        self.nodes = 0

    def candidates(self, depth, img, used):
        x = self.order[depth]
        p = self.parent[depth]
        sig = self.sigA[x]
        if p is None:
            pool = self.by_sig.get(sig, [])
        elif x in self.A.up[p]:
            pool = self.B.up[img[p]]
        else:
            pool = self.B.down[img[p]]
        pool = [y for y in pool if not used[y] and self.sigB[y] == sig]
        if not pool or depth == 0:
            return pool
        ax = self.orderA[:depth]
        bx = img[ax]
        ys = np.array(pool, dtype=np.int64)
        ok = ((self.leqB[np.ix_(ys, bx)] == self.leqA[x, ax]).all(axis=1)
              & (self.leqB[np.ix_(bx, ys)].T == self.leqA[ax, x]).all(axis=1))
        return ys[ok].tolist()

    def search(self, img: np.ndarray, used: np.ndarray, depth: int):
        """Yield complete maps extending the assignment of ``order[:depth]``."""
        n = len(self.order)
        img, used = img.copy(), used.copy()
        if depth == n:
            yield img.copy()
            return
        stack = [iter(self.candidates(depth, img, used))]
        while stack:
            d = depth + len(stack) - 1
            x = self.order[d]
            if img[x] >= 0:
                used[img[x]] = False
                img[x] = -1
            y = next(stack[-1], None)
            if y is None:
                stack.pop()
                continue
            self.nodes += 1
            if self.nodes > self.cap:
                raise SizeCapExceeded(f"isomorphism search exceeded {self.cap} nodes")
            img[x] = y
            used[y] = True
            if d + 1 == n:
                yield img.copy()
            else:
                stack.append(iter(self.candidates(d + 1, img, used)))

    def first(self):
        img = np.full(self.A.num_faces, -1, dtype=np.int64)
        used = np.zeros(self.B.num_faces, dtype=bool)
        return next(self.search(img, used, 0), None)


def is_isomorphic(A: IncidenceComplex, B: IncidenceComplex, *, cap: int = SEARCH_CAP):
    """Return an isomorphism A -> B as an array of face ids, or None."""
    if A.rank != B.rank or A.num_faces != B.num_faces or A.f_vector() != B.f_vector():
        return None
    if len(A.covers) != len(B.covers):
        return None
    if sorted(signatures(A)) != sorted(signatures(B)):
        return None
    return _Matcher(A, B, cap).first()


def automorphism_chain(K: IncidenceComplex, *, cap: int = SEARCH_CAP):
    """Strong generators and order of the automorphism group of K.

    Works down a stabiliser chain along the search order: for base point
    ``order[i]`` with ``order[:i]`` fixed, every candidate image outside the
    orbit already generated is tested by one extension search.
    """
    m = _Matcher(K, K, cap)
    n = K.num_faces
    order = m.order
    gens: list[tuple[int, ...]] = []
    group_order = 1
    img = np.full(n, -1, dtype=np.int64)
    used = np.zeros(n, dtype=bool)
    for i in range(n - 1, -1, -1):
        img[:] = -1
        used[:] = False
        prefix = np.array(order[:i], dtype=np.int64)
        img[prefix] = prefix
        used[prefix] = True
        x = order[i]
        cands = m.candidates(i, img, used)
        orbit = _orbit(x, gens)
        for y in cands:
            if y in orbit:
                continue
            img[x] = y
            used[y] = True
            found = next(m.search(img, used, i + 1), None)
            img[x] = -1
            used[y] = False
            if found is not None:
                gens.append(tuple(int(t) for t in found))
                orbit = _orbit(x, gens)
        group_order *= len(orbit)
    return gens, group_order, order


def _orbit(x, gens):
    seen = {x}
    frontier = [x]
    while frontier:
        nxt = []
        for y in frontier:
            for g in gens:
                z = g[y]
                if z not in seen:
                    seen.add(z)
                    nxt.append(z)
        frontier = nxt
    return seen
