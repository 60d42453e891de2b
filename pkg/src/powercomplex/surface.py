"""Euler characteristic, orientability and genus of rank-3 polytopal maps."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .complex import IncidenceComplex, validate_complex


@dataclass
class SurfaceReport:
    ok: bool
    chi: int | None = None
    orientable: bool | None = None
    genus: int | None = None
    diagnostic: str = ""

    def to_json(self) -> dict:
        return {"ok": self.ok, "chi": self.chi, "orientable": self.orientable,
                "genus": self.genus, "diagnostic": self.diagnostic}


def euler_characteristic(K: IncidenceComplex) -> int:
    v, e, f = K.f_vector()
    return v - e + f


def _boundary_walk(K: IncidenceComplex, face: int) -> dict[int, int]:
    """Orient the boundary cycle of a 2-face: edge -> the vertex it leaves from."""
    edges = set(K.down[face])
    start = K.down[face][0]
    a, b = K.down[start]
    tail = {start: a}
    edge, vertex = start, b
    while True:
        nxt = [e for e in K.up[vertex] if e in edges and e != edge]
        if len(nxt) != 1:
            raise ValueError(f"boundary of face {face} is not a cycle")
        edge = nxt[0]
        if edge == start:
            return tail
        tail[edge] = vertex
        (vertex,) = [u for u in K.down[edge] if u != vertex]


def is_orientable(K: IncidenceComplex) -> bool:
    """Walk face to face across edges; neighbours must traverse a shared edge
    in opposite directions."""
    faces = K.faces_of_rank(2).tolist()
    walks = {f: _boundary_walk(K, f) for f in faces}
    flip = {faces[0]: False}
    queue = deque([faces[0]])
    while queue:
        f = queue.popleft()
        for e, t in walks[f].items():
            tail_f = t if not flip[f] else _other(K, e, t)
            for g in K.up[e]:
                if g == f:
                    continue
                t_g = walks[g][e]
                want_flip = t_g == tail_f
                if g not in flip:
                    flip[g] = want_flip
                    queue.append(g)
                elif flip[g] != want_flip:
                    return False
    return True


def _other(K, edge, vertex):
    a, b = K.down[edge]
    return b if a == vertex else a


def map_genus(K: IncidenceComplex) -> SurfaceReport:
    """chi = V - E + F and the genus, for rank-3 polytopes (every c_i = 2)."""
    if K.rank != 3:
        return SurfaceReport(False, diagnostic=f"rank {K.rank} is not 3")
    report = validate_complex(K)
    if not report.is_complex:
        return SurfaceReport(False, diagnostic="not an incidence complex")
    if report.c != (2, 2, 2):
        return SurfaceReport(False, diagnostic=f"c = {report.c}: not a polytopal map, "
                                               "edges or faces do not form a surface")
    chi = euler_characteristic(K)
    orientable = is_orientable(K)
    genus = (2 - chi) // 2 if orientable else 2 - chi
    return SurfaceReport(True, chi, orientable, genus)
