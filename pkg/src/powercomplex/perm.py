"""Permutation groups given by generators, backed by a Schreier-Sims chain.

Permutations are tuples ``p`` acting on the right: ``x -> p[x]``.  Products
follow the same convention, ``mul(p, q)`` applies p first, then q.
"""
from __future__ import annotations

import re
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import SizeCapExceeded

ELEMENT_CAP = 10**6


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def mul(p, q):
    return tuple(q[x] for x in p)


def inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def is_identity(p) -> bool:
    return all(i == x for i, x in enumerate(p))


def cycles_str(p) -> str:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse cycle notation such as ``(0 3)(1 4 2)``; commas are allowed."""
    p = list(range(degree))
    body = text.strip()
    if body in ("", "()"):
        return tuple(p)
    if not re.fullmatch(r"(\(\s*\d+(\s*[,\s]\s*\d+)*\s*\)\s*)+", body):
        raise ValueError(f"bad cycle notation: {text!r}")
    for cyc in re.findall(r"\(([^)]*)\)", body):
        pts = [int(x) for x in re.split(r"[,\s]+", cyc.strip())]
        if len(set(pts)) != len(pts) or max(pts) >= degree:
            raise ValueError(f"bad cycle {cyc!r} for degree {degree}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            p[a] = b
    if sorted(p) != list(range(degree)):
        raise ValueError(f"cycles {text!r} overlap")
    return tuple(p)


def _transversal(point, gens):
    """Coset representatives u with point -> u[point] for the orbit of point."""
    trans = {point: identity(len(gens[0])) if gens else None}
    frontier = [point]
    while frontier:
        nxt = []
        for x in frontier:
            ux = trans[x]
            for g in gens:
                y = g[x]
                if y not in trans:
                    trans[y] = mul(ux, g)
                    nxt.append(y)
        frontier = nxt
    return trans


class PermGroup:
    """Finite permutation group on ``range(degree)``.

    The stabiliser chain is built on first use with the deterministic
    Schreier-Sims algorithm; ``base`` optionally fixes a prefix of the base.
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = (),
                 base: Sequence[int] = ()):
        self.degree = int(degree)
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if len(g) != self.degree or sorted(g) != list(range(self.degree)):
                raise ValueError("generator is not a permutation of the right degree")
            if not is_identity(g) and g not in gens:
                gens.append(g)
        self.generators = gens
        self._base_prefix = [int(b) for b in base]

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order()}, gens={len(self.generators)})"

    # -- stabiliser chain ----------------------------------------------------

    @cached_property
    def _chain(self):
        n = self.degree
        base = list(self._base_prefix)
        strong = list(self.generators)
        for g in strong:
            if all(g[b] == b for b in base):
                base.append(next(x for x in range(n) if g[x] != x))
        cache: dict = {}

        def level_gens(i):
            return [s for s in strong if all(s[b] == b for b in base[:i])]

        def trans(i):
            if i not in cache:
                gens = level_gens(i)
                cache[i] = _transversal(base[i], gens) if gens else {base[i]: identity(n)}
            return cache[i]

        def sift(h, start):
            for j in range(start, len(base)):
                t = trans(j)
                y = h[base[j]]
                if y not in t:
                    return h, j
                h = mul(h, inv(t[y]))
            return h, len(base)

        i = len(base) - 1
        while i >= 0:
            restart = None
            t_i = trans(i)
            gens_i = level_gens(i)
            for beta, u in list(t_i.items()):
                for s in gens_i:
                    h = mul(mul(u, s), inv(t_i[s[beta]]))
                    if is_identity(h):
                        continue
                    h, j = sift(h, i + 1)
                    if not is_identity(h):
                        strong.append(h)
                        if j == len(base):
                            base.append(next(x for x in range(n) if h[x] != x))
                        cache.clear()
                        restart = j
                        break
                if restart is not None:
                    break
            if restart is None:
                i -= 1
            else:
                i = restart
        transversals = [trans(i) for i in range(len(base))]
        return base, strong, transversals

    @property
    def base(self) -> list[int]:
        return self._chain[0]

    @property
    def strong_generators(self) -> list[tuple[int, ...]]:
        return self._chain[1]

    def order(self) -> int:
        out = 1
        for t in self._chain[2]:
            out *= len(t)
        return out

    def contains(self, g: Sequence[int]) -> bool:
        g = tuple(g)
        if len(g) != self.degree:
            return False
        base, _, transversals = self._chain
        for b, t in zip(base, transversals):
            y = g[b]
            if y not in t:
                return False
            g = mul(g, inv(t[y]))
        return is_identity(g)

    __contains__ = contains

    # -- orbits and stabilisers ----------------------------------------------

    def orbit(self, x: int) -> set[int]:
        seen = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g in self.generators:
                    z = g[y]
                    if z not in seen:
                        seen.add(z)
                        nxt.append(z)
            frontier = nxt
        return seen

    def orbit_labels(self) -> np.ndarray:
        """Label every point by the first point of its orbit."""
        if not self.generators:
            return np.arange(self.degree)
        return _kernels.orbit_labels(np.array(self.generators, dtype=np.int64))

    def stabilizer(self, points: int | Sequence[int]) -> "PermGroup":
        """Pointwise stabiliser of one point or a sequence of points."""
        if isinstance(points, (int, np.integer)):
            points = [int(points)]
        points = [int(p) for p in points]
        chained = PermGroup(self.degree, self.generators, base=points)
        base, strong, _ = chained._chain
        fixed = set(points)
        gens = [s for s in strong if all(s[p] == p for p in fixed)]
        return PermGroup(self.degree, gens)

    def elements(self, cap: int = ELEMENT_CAP) -> list[tuple[int, ...]]:
        if self.order() > cap:
            raise SizeCapExceeded(f"group order {self.order()} exceeds element cap {cap}")
        _, _, transversals = self._chain
        elems = [identity(self.degree)]
        for t in reversed(transversals):
            elems = [mul(g, u) for u in t.values() for g in elems]
        return elems

    def element_set(self, cap: int = ELEMENT_CAP) -> frozenset:
        return frozenset(self.elements(cap))

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)


def closure_elements(degree: int, gens: Sequence[Sequence[int]], cap: int = ELEMENT_CAP) -> set:
    """Brute-force group enumeration by multiplying out generators (test oracle)."""
    e = identity(degree)
    seen = {e}
    frontier = [e]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise SizeCapExceeded("closure exceeded cap")
        frontier = nxt
    return seen
