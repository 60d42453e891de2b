"""Finite incidence complexes as ranked posets.

Faces are dense integer ids ``0..N-1`` sorted by rank, so the least face is
always id 0 and the greatest face (when unique) is id ``N-1``.  The order is
stored as its cover relation plus a reachability matrix ``leq`` computed once.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import MalformedComplexError


class IncidenceComplex:
    """A finite ranked poset, possibly violating the incidence axioms.

    ``ranks[i]`` is the rank (-1..k) of face ``i`` and ``covers`` lists pairs
    ``(low, high)``.  Faces are renumbered by (rank, given position), so
    callers should look faces up through ``labels`` / :meth:`face` rather
    than assume their input positions survive.  Labels default to the input
    positions.
    """

    def __init__(self, ranks: Sequence[int], covers: Iterable[tuple[int, int]],
                 labels: Sequence[Hashable] | None = None, rank: int | None = None):
        ranks = np.asarray(ranks, dtype=np.int64).ravel()
        n = len(ranks)
        if n == 0:
            raise MalformedComplexError("complex has no faces")
        covers = np.asarray(list(covers), dtype=np.int64).reshape(-1, 2)
        if labels is None:
            labels = list(range(n))
        labels = list(labels)
        if len(labels) != n:
            raise MalformedComplexError("one label per face required")
        if rank is None:
            rank = int(ranks.max())
        if len(covers) and (covers.min() < 0 or covers.max() >= n):
            bad = covers[(covers < 0).any(axis=1) | (covers >= n).any(axis=1)][0]
            raise MalformedComplexError(f"dangling cover edge {tuple(int(x) for x in bad)}")
        if ranks.min() < -1 or ranks.max() > rank:
            raise MalformedComplexError(f"face ranks must lie in -1..{rank}")
        missing = sorted(set(range(-1, rank + 1)) - set(ranks.tolist()))
        if missing:
            raise MalformedComplexError(f"no faces of rank {missing}")
        if len(covers):
            low, high = ranks[covers[:, 0]], ranks[covers[:, 1]]
            if (low >= high).any():
                bad = covers[low >= high][0]
                raise MalformedComplexError(
                    f"cover {tuple(int(x) for x in bad)} does not increase rank")

        perm = np.argsort(ranks, kind="stable")
        new_id = np.empty(n, dtype=np.int64)
        new_id[perm] = np.arange(n)
        self.rank = int(rank)
        self.ranks = ranks[perm]
        self.labels = [labels[i] for i in perm]
        if len(covers):
            covers = np.unique(new_id[covers], axis=0)
        self.covers = covers
        up = [[] for _ in range(n)]
        down = [[] for _ in range(n)]
        for a, b in covers.tolist():
            up[a].append(b)
            down[b].append(a)
        self.up = [tuple(x) for x in up]
        self.down = [tuple(x) for x in down]
        self._index = None

    # -- basic queries -----------------------------------------------------

    def __len__(self):
        return len(self.ranks)

    def __repr__(self):
        return f"{type(self).__name__}(rank={self.rank}, f_vector={self.f_vector()})"

    @property
    def num_faces(self) -> int:
        return len(self.ranks)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def faces_of_rank(self, r: int) -> np.ndarray:
        return np.flatnonzero(self.ranks == r)

    @property
    def vertices(self) -> np.ndarray:
        return self.faces_of_rank(0)

    def f_vector(self) -> tuple[int, ...]:
        """Face counts for ranks 0..k-1."""
        counts = np.bincount(self.ranks + 1, minlength=self.rank + 2)
        return tuple(int(c) for c in counts[1:self.rank + 1])

    def face(self, label: Hashable) -> int:
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self.labels)}
        return self._index[label]

    @cached_property
    def leq(self) -> np.ndarray:
        """``leq[a, b]`` is True iff face a <= face b."""
        n = len(self.ranks)
        ptr = np.zeros(n + 1, dtype=np.int64)
        ptr[1:] = np.cumsum([len(d) for d in self.down])
        idx = np.fromiter(itertools.chain.from_iterable(self.down), dtype=np.int64,
                          count=int(ptr[-1]))
        return _kernels.closure(np.arange(n), ptr, idx)

    def is_leq(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    @cached_property
    def vertex_sets(self) -> list[frozenset]:
        verts = self.vertices
        sub = self.leq[verts]
        return [frozenset(verts[sub[:, f]].tolist()) for f in range(len(self.ranks))]

    @cached_property
    def flags(self) -> list[tuple[int, ...]]:
        """All maximal chains, each listed from least to greatest face."""
        out = []
        stack = [(self.bottom,)]
        while stack:
            chain = stack.pop()
            ups = self.up[chain[-1]]
            if not ups:
                out.append(chain)
            else:
                for u in reversed(ups):
                    stack.append(chain + (u,))
        out.sort()
        return out

    @cached_property
    def flag_index(self) -> dict:
        return {f: i for i, f in enumerate(self.flags)}

    @cached_property
    def adjacency_classes(self) -> list[list[tuple[int, ...]]]:
        """For each label i, the classes of mutually i-adjacent flags.

        Entry ``i`` is a list of tuples of flag indices sharing every face but
        the i-face.  Singleton classes are kept so regularity checks can count.
        """
        flags = self.flags
        out = []
        for i in range(self.rank):
            pos = i + 1
            groups: dict = {}
            for t, fl in enumerate(flags):
                if len(fl) != self.rank + 2:
                    continue
                groups.setdefault(fl[:pos] + fl[pos + 1:], []).append(t)
            out.append([tuple(g) for g in groups.values()])
        return out

    # -- convenience ---------------------------------------------------------

    def to_json(self) -> dict:
        return to_json(self)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass
class Violation:
    axiom: str
    message: str
    witness: tuple = ()

    def to_json(self):
        return {"axiom": self.axiom, "message": self.message,
                "witness": [list(w) if isinstance(w, tuple) else w for w in self.witness]}


@dataclass
class ValidationReport:
    is_complex: bool
    c: tuple[int, ...] | None = None
    violations: list[Violation] = field(default_factory=list)

    def to_json(self):
        return {"is_complex": self.is_complex,
                "c": list(self.c) if self.c is not None else None,
                "violations": [v.to_json() for v in self.violations]}


def _chains_between(P: IncidenceComplex, lo: int, hi: int) -> list[tuple[int, ...]]:
    leq_hi = P.leq[:, hi]
    out = []
    stack = [(lo,)]
    while stack:
        chain = stack.pop()
        last = chain[-1]
        if last == hi:
            out.append(chain)
            continue
        for u in P.up[last]:
            if leq_hi[u]:
                stack.append(chain + (u,))
    return out


def _flag_connected(chains: list[tuple[int, ...]]) -> bool:
    """Connectivity of a family of equal-length chains under adjacency."""
    if len(chains) <= 1:
        return True
    parent = list(range(len(chains)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    length = len(chains[0])
    for pos in range(1, length - 1):
        first: dict = {}
        for t, ch in enumerate(chains):
            key = ch[:pos] + ch[pos + 1:]
            if key in first:
                a, b = find(t), find(first[key])
                if a != b:
                    parent[a] = b
            else:
                first[key] = t
    root = find(0)
    return all(find(t) == root for t in range(len(chains)))


def strongly_flag_connected(P: IncidenceComplex) -> tuple[bool, tuple]:
    """Check (I3) through sections: every section of rank >= 2 is flag-connected.

    Returns ``(ok, witness)`` where the witness is a disconnected section
    ``(lo, hi)``.  Assumes (I1) and (I2) hold.
    """
    ranks = P.ranks
    leq = P.leq
    for lo in range(len(ranks)):
        his = np.flatnonzero(leq[lo] & (ranks >= ranks[lo] + 3))
        for hi in his.tolist():
            if not _flag_connected(_chains_between(P, lo, hi)):
                return False, (lo, hi)
    return True, ()


def strongly_flag_connected_pairwise(P: IncidenceComplex) -> bool:
    """Literal (I3): for every flag pair, a path through flags containing their meet.

    Quadratic in the number of flags; memoised per common chain.
    """
    flags = P.flags
    memo: dict = {}
    for a, b in itertools.combinations(range(len(flags)), 2):
        common = frozenset(flags[a]) & frozenset(flags[b])
        if common not in memo:
            family = [f for f in flags if common <= frozenset(f)]
            memo[common] = _flag_connected(family)
        if not memo[common]:
            return False
    return True


def validate_complex(P: IncidenceComplex) -> ValidationReport:
    """Check (I1)-(I4) and return the c-vector when they all hold."""
    k = P.rank
    ranks = P.ranks
    leq = P.leq
    violations = []

    bottoms, tops = P.faces_of_rank(-1), P.faces_of_rank(k)
    if len(bottoms) != 1:
        violations.append(Violation("I1", "least face is not unique", tuple(bottoms.tolist())))
    if len(tops) != 1:
        violations.append(Violation("I1", "greatest face is not unique", tuple(tops.tolist())))
    if not violations:
        below = np.flatnonzero(~leq[P.bottom])
        above = np.flatnonzero(~leq[:, P.top])
        if len(below):
            violations.append(Violation("I1", "face not above the least face", (int(below[0]),)))
        if len(above):
            violations.append(Violation("I1", "face not below the greatest face", (int(above[0]),)))

    for a, b in P.covers.tolist():
        if ranks[b] != ranks[a] + 1:
            violations.append(Violation("I2", "cover skips a rank, chain too short", ((a, b),)))
            break
    for f in range(len(ranks)):
        if ranks[f] > -1 and not P.down[f]:
            violations.append(Violation("I2", "face is minimal but not least", (f,)))
            break
        if ranks[f] < k and not P.up[f]:
            violations.append(Violation("I2", "face is maximal but not greatest", (f,)))
            break
    if violations:
        return ValidationReport(False, None, violations)

    ok, witness = strongly_flag_connected(P)
    if not ok:
        violations.append(Violation("I3", "section is not flag-connected", (witness,)))

    c = []
    for i in range(k):
        lows, mids, highs = P.faces_of_rank(i - 1), P.faces_of_rank(i), P.faces_of_rank(i + 1)
        a = leq[np.ix_(lows, mids)].astype(np.int64)
        b = leq[np.ix_(mids, highs)].astype(np.int64)
        counts = a @ b
        incident = leq[np.ix_(lows, highs)]
        vals = counts[incident]
        ci = int(vals[0])
        bad = np.argwhere(incident & ((counts != ci) | (counts < 2)))
        if len(bad):
            r, s = bad[0]
            violations.append(Violation(
                "I4", f"{int(counts[r, s])} faces of rank {i} between incident pair (expected {max(ci, 2)} or equal counts)",
                (int(lows[r]), int(highs[s]))))
        c.append(ci)

    if violations:
        return ValidationReport(False, None, violations)
    return ValidationReport(True, tuple(c), [])


# ---------------------------------------------------------------------------
# derived complexes and structure
# ---------------------------------------------------------------------------

def section(P: IncidenceComplex, lo: int, hi: int) -> IncidenceComplex:
    """The section hi/lo, re-ranked to -1..(rank hi - rank lo - 1)."""
    if not P.leq[lo, hi]:
        raise ValueError(f"face {lo} is not below face {hi}")
    keep = np.flatnonzero(P.leq[lo] & P.leq[:, hi])
    pos = {int(f): t for t, f in enumerate(keep)}
    covers = [(pos[a], pos[b]) for a, b in P.covers.tolist() if a in pos and b in pos]
    shift = int(P.ranks[lo]) + 1
    return IncidenceComplex(P.ranks[keep] - shift, covers,
                            labels=[P.labels[f] for f in keep],
                            rank=int(P.ranks[hi]) - shift)


def flags(P: IncidenceComplex) -> list[tuple[int, ...]]:
    return P.flags


@dataclass
class FlagGraph:
    nodes: list
    edges: list  # (flag index, flag index, label)

    def degree(self, node: int, label: int) -> int:
        return sum(1 for a, b, i in self.edges if i == label and node in (a, b))

    def to_dot(self) -> str:
        lines = ["graph flags {"]
        for t, fl in enumerate(self.nodes):
            lines.append(f'  {t} [label="{" ".join(map(str, fl))}"];')
        for a, b, i in self.edges:
            lines.append(f"  {a} -- {b} [label={i}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def flag_graph(P: IncidenceComplex) -> FlagGraph:
    edges = []
    for i, classes in enumerate(P.adjacency_classes):
        for cls in classes:
            edges.extend((a, b, i) for a, b in itertools.combinations(cls, 2))
    edges.sort()
    return FlagGraph(list(P.flags), edges)


def is_vertex_describable(P: IncidenceComplex) -> bool:
    sets = P.vertex_sets
    return len(set(sets)) == len(sets)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def to_json(P: IncidenceComplex) -> dict:
    return {
        "rank": int(P.rank),
        "faces": [{"id": i, "rank": int(r)} for i, r in enumerate(P.ranks)],
        "covers": [[int(a), int(b)] for a, b in P.covers.tolist()],
    }


def from_json(data: dict) -> IncidenceComplex:
    try:
        rank = int(data["rank"])
        faces = data["faces"]
        ids = [int(f["id"]) for f in faces]
        ranks = [int(f["rank"]) for f in faces]
        covers = [(int(a), int(b)) for a, b in data["covers"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedComplexError(f"bad complex JSON: {exc}") from exc
    if len(set(ids)) != len(ids):
        raise MalformedComplexError("duplicate face ids")
    pos = {fid: t for t, fid in enumerate(ids)}
    try:
        covers = [(pos[a], pos[b]) for a, b in covers]
    except KeyError as exc:
        raise MalformedComplexError(f"dangling cover edge references face {exc}") from None
    order = sorted(range(len(ids)), key=lambda t: (ranks[t], ids[t]))
    ranks = [ranks[t] for t in order]
    where = {t: s for s, t in enumerate(order)}
    covers = [(where[a], where[b]) for a, b in covers]
    return IncidenceComplex(ranks, covers, labels=[ids[t] for t in order], rank=rank)


def dumps(P: IncidenceComplex) -> str:
    return json.dumps(to_json(P))


def loads(text: str) -> IncidenceComplex:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedComplexError(f"invalid JSON: {exc}") from exc
    return from_json(data)
