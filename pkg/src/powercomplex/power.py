"""Power complexes n^K, skeletons and vertex-figures.

A face F(eps) of n^K is stored canonically as the base face F of K together
with the coordinates of eps outside V(F); the free coordinates are never
materialised.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .complex import IncidenceComplex, is_vertex_describable, section, validate_complex
from .errors import NotVertexDescribableError, PowerComplexError, SizeCapExceeded

BOTTOM = "BOTTOM"
DEFAULT_CAP = 10**6
ORACLE_CAP = 4096


@dataclass(frozen=True)
class PowerFace:
    base: int | str
    fixed: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {"base": self.base, "fixed": {str(u): val for u, val in self.fixed}}

    @classmethod
    def from_json(cls, data: dict) -> "PowerFace":
        base = data["base"]
        base = base if base == BOTTOM else int(base)
        fixed = tuple(sorted((int(u), int(val)) for u, val in data["fixed"].items()))
        return cls(base, fixed)


class PowerComplex(IncidenceComplex):
    """n^K with provenance; ``labels`` are :class:`PowerFace` values."""

    base_complex: IncidenceComplex
    n: int
    coordinates: tuple[int, ...]

    def face_at(self, base: int, eps: Sequence[int]) -> int:
        """Id of F(eps) for a face ``base`` of K and a full vector ``eps``."""
        vs = self.base_complex.vertex_sets[base]
        fixed = tuple((u, int(x)) for u, x in zip(self.coordinates, eps) if u not in vs)
        return self.face(PowerFace(base, fixed))

    def vertex(self, eps: Sequence[int]) -> int:
        return self.face_at(self.base_complex.bottom, eps)

    def vector(self, vertex_id: int) -> tuple[int, ...]:
        lab = self.labels[vertex_id]
        if self.ranks[vertex_id] != 0:
            raise ValueError(f"face {vertex_id} is not a vertex")
        return tuple(val for _, val in lab.fixed)


def power_face_count(K: IncidenceComplex, n: int) -> int:
    v = len(K.vertices)
    return 1 + sum(n ** (v - len(s)) for s in K.vertex_sets)


def power_complex(K: IncidenceComplex, n: int, *, cap: int = DEFAULT_CAP,
                  validate: bool = True) -> PowerComplex:
    """Build n^K for a finite vertex-describable complex K.

    Covers of n^K come from covers F < F' of K: F(eps) < F'(eps), plus the
    empty face under every vertex.  With ``validate`` the result is checked
    against the incidence axioms.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not is_vertex_describable(K):
        raise NotVertexDescribableError("power complex needs a vertex-describable base")
    total = power_face_count(K, n)
    if total > cap:
        raise SizeCapExceeded(f"n^K would have {total} faces (cap {cap})")

    coords = tuple(int(u) for u in K.vertices)
    vsets = K.vertex_sets
    labels = [PowerFace(BOTTOM, ())]
    ranks = [-1]
    for f in range(K.num_faces):
        comp = [u for u in coords if u not in vsets[f]]
        r = int(K.ranks[f]) + 1
        for vals in itertools.product(range(1, n + 1), repeat=len(comp)):
            labels.append(PowerFace(f, tuple(zip(comp, vals))))
            ranks.append(r)
    index = {lab: i for i, lab in enumerate(labels)}

    covers = []
    kb = K.bottom
    for i, lab in enumerate(labels):
        if lab.base == BOTTOM:
            continue
        if lab.base == kb:
            covers.append((0, i))
        for g in K.up[lab.base]:
            vs = vsets[g]
            parent = PowerFace(g, tuple(p for p in lab.fixed if p[0] not in vs))
            covers.append((i, index[parent]))

    P = PowerComplex(ranks, covers, labels, rank=K.rank + 1)
    P.base_complex = K
    P.n = n
    P.coordinates = coords
    if validate:
        report = validate_complex(P)
        if not report.is_complex:
            raise PowerComplexError(f"power complex failed validation: {report.violations}")
    return P


def skeleton(K: IncidenceComplex, j: int) -> IncidenceComplex:
    """Faces of rank <= j under a single adjoined greatest face of rank j+1."""
    if not 0 <= j <= K.rank - 1:
        raise ValueError(f"skeleton index must lie in 0..{K.rank - 1}")
    keep = np.flatnonzero(K.ranks <= j).tolist()
    pos = {f: t for t, f in enumerate(keep)}
    top = len(keep)
    covers = [(pos[a], pos[b]) for a, b in K.covers.tolist() if a in pos and b in pos]
    covers += [(pos[f], top) for f in K.faces_of_rank(j).tolist()]
    ranks = K.ranks[keep].tolist() + [j + 1]
    labels = [K.labels[f] for f in keep] + [K.labels[K.top]]
    return IncidenceComplex(ranks, covers, labels, rank=j + 1)


def vertex_figure(P: IncidenceComplex, vertex) -> IncidenceComplex:
    """Section top/vertex; ``vertex`` is a face id or, for power complexes, a vector."""
    if isinstance(vertex, (tuple, list)):
        vertex = P.vertex(vertex)
    if P.ranks[vertex] != 0:
        raise ValueError(f"face {vertex} is not a vertex")
    return section(P, int(vertex), P.top)


def brute_force_power_oracle(K: IncidenceComplex, n: int, *, cap: int = ORACLE_CAP) -> IncidenceComplex:
    """n^K by materialising every subset F(eps) of N^v and ordering by inclusion.

    Independent of :func:`power_complex`: ranks come from chain lengths and
    covers from the transitive reduction of subset inclusion.
    """
    v = len(K.vertices)
    if n ** v > cap:
        raise SizeCapExceeded(f"oracle needs n^v = {n ** v} tuples (cap {cap})")
    verts = K.vertices.tolist()
    tuples = np.array(list(itertools.product(range(1, n + 1), repeat=v)), dtype=np.int64)
    if v == 0:
        tuples = np.zeros((1, 0), dtype=np.int64)
    rows = []
    for f in range(K.num_faces):
        free = np.array([u in K.vertex_sets[f] for u in verts], dtype=bool)
        rows.append(_kernels.fixed_membership(tuples, free))
    masks = np.unique(np.vstack(rows), axis=0)
    masks = masks[masks.any(axis=1)]
    masks = np.vstack([np.zeros((1, len(tuples)), dtype=bool), masks])

    incl = _kernels.inclusion(masks)
    strict = incl & ~np.eye(len(masks), dtype=bool)
    s = strict.astype(np.int64)
    cover = strict & ((s @ s) == 0)
    # ranks: longest chain from the empty set, processed by size
    sizes = masks.sum(axis=1)
    order = np.argsort(sizes, kind="stable")
    rank = np.full(len(masks), -1, dtype=np.int64)
    for b in order:
        below = np.flatnonzero(cover[:, b])
        if len(below):
            rank[b] = rank[below].max() + 1
    covers = [tuple(x) for x in np.argwhere(cover).tolist()]
    labels = [tuple(np.flatnonzero(m).tolist()) for m in masks]
    return IncidenceComplex(rank, covers, labels)
