"""Maps between complexes: classification, quotients, and the coverings of
power complexes induced by a covering K -> L together with a coordinate map
f: N -> M or g: N^l -> M."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .complex import IncidenceComplex, ValidationReport, Violation, is_vertex_describable, validate_complex
from .errors import MalformedComplexError, NotACoveringError, NotVertexDescribableError
from .perm import PermGroup
from .power import DEFAULT_CAP, PowerComplex, PowerFace, power_complex
from .symmetry import is_automorphism


@dataclass
class ComplexMap:
    source: IncidenceComplex
    target: IncidenceComplex
    face_map: np.ndarray
    relabeling: dict = field(default_factory=dict)

    def __post_init__(self):
        self.face_map = np.asarray(self.face_map, dtype=np.int64)

    def __call__(self, face: int) -> int:
        return int(self.face_map[face])

    def then(self, other: "ComplexMap") -> "ComplexMap":
        """Composition: apply self, then other."""
        return ComplexMap(self.source, other.target, other.face_map[self.face_map])

    def vertex_map(self) -> dict[int, int]:
        return {int(u): int(self.face_map[u]) for u in self.source.vertices}

    def to_json(self) -> dict:
        from .complex import to_json
        out = {"source": to_json(self.source), "target": to_json(self.target),
               "face_map": [[i, int(j)] for i, j in enumerate(self.face_map)]}
        if self.relabeling:
            out["relabeling"] = self.relabeling
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ComplexMap":
        from .complex import from_json
        try:
            src, tgt = from_json(data["source"]), from_json(data["target"])
            pairs = dict((int(a), int(b)) for a, b in data["face_map"])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedComplexError(f"bad map JSON: {exc}") from exc
        # file ids are the complexes' labels; translate to internal ids
        fmap = np.full(src.num_faces, -1, dtype=np.int64)
        for a, b in pairs.items():
            try:
                fmap[src.face(a)] = tgt.face(b)
            except KeyError:
                raise MalformedComplexError(f"face_map entry {a} -> {b} names unknown faces") from None
        return cls(src, tgt, fmap, data.get("relabeling", {}))


def map_from_vertices(K: IncidenceComplex, L: IncidenceComplex, vmap: dict[int, int]) -> ComplexMap:
    """Extend a vertex map to faces by vertex sets (both sides vertex-describable)."""
    if not (is_vertex_describable(K) and is_vertex_describable(L)):
        raise NotVertexDescribableError("faces are not determined by their vertices")
    by_set = {s: f for f, s in enumerate(L.vertex_sets)}
    fmap = np.empty(K.num_faces, dtype=np.int64)
    for f, s in enumerate(K.vertex_sets):
        image = frozenset(vmap[u] for u in s)
        if f == K.top:
            fmap[f] = L.top
        elif image not in by_set:
            raise NotACoveringError(f"face {f}: vertex image {sorted(image)} is not a face")
        else:
            fmap[f] = by_set[image]
    return ComplexMap(K, L, fmap)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass
class MapClass:
    homomorphism: bool
    rank_preserving: bool
    surjective: bool
    weak_rap: bool
    rap: bool
    witness: tuple = ()

    @property
    def weak_covering(self) -> bool:
        return self.weak_rap and self.surjective

    @property
    def covering(self) -> bool:
        return self.rap and self.surjective

    @property
    def level(self) -> str:
        if self.covering:
            return "covering"
        if self.rap:
            return "rap"
        if self.weak_covering:
            return "weak_covering"
        if self.weak_rap:
            return "weak_rap"
        if self.homomorphism:
            return "homomorphism"
        return "not_homomorphism"

    def to_json(self) -> dict:
        return {"class": self.level, "homomorphism": self.homomorphism,
                "rank_preserving": self.rank_preserving, "surjective": self.surjective,
                "weak_rap": self.weak_rap, "rap": self.rap,
                "weak_covering": self.weak_covering, "covering": self.covering,
                "witness": [list(w) if isinstance(w, tuple) else w for w in self.witness]}


def classify(phi: ComplexMap) -> MapClass:
    K, L, fm = phi.source, phi.target, phi.face_map
    if len(fm) != K.num_faces or (fm < 0).any() or (fm >= L.num_faces).any():
        raise ValueError("face map is not a total map into the target")
    surjective = len(np.unique(fm)) == L.num_faces

    cov = K.covers
    ok = L.leq[fm[cov[:, 0]], fm[cov[:, 1]]] if len(cov) else np.ones(0, bool)
    if not ok.all():
        a, b = cov[np.flatnonzero(~ok)[0]]
        return MapClass(False, False, surjective, False, False,
                        ("order", int(a), int(b)))

    moved = np.flatnonzero(L.ranks[fm] != K.ranks)
    if len(moved) or K.rank != L.rank:
        w = ("rank", int(moved[0])) if len(moved) else ("rank",)
        return MapClass(True, False, surjective, False, False, w)

    # with rank and order preserved, adjacent flags go to flags that agree off
    # the i-face, so they are adjacent or equal: only collapses can fail rap
    flags = K.flags
    for i, classes in enumerate(K.adjacency_classes):
        pos = i + 1
        for cls in classes:
            if len(cls) < 2:
                continue
            images = fm[[flags[t][pos] for t in cls]]
            if len(np.unique(images)) < len(images):
                a, b = _first_collision(cls, images)
                return MapClass(True, True, surjective, True, False,
                                ("collapse", i, flags[a], flags[b]))
    return MapClass(True, True, surjective, True, True)


def _first_collision(cls, images):
    seen = {}
    for t, y in zip(cls, images.tolist()):
        if y in seen:
            return seen[y], t
        seen[y] = t
    raise AssertionError("no collision")


# ---------------------------------------------------------------------------
# quotients
# ---------------------------------------------------------------------------

@dataclass
class Quotient:
    complex: IncidenceComplex
    report: ValidationReport
    orbit_of: np.ndarray
    projection: ComplexMap | None


def quotient(K: IncidenceComplex, sigma: PermGroup) -> Quotient:
    """Poset of Sigma-orbits of faces, orbit A <= orbit B iff some a <= b."""
    for g in sigma.generators:
        if not is_automorphism(K, g):
            raise ValueError("Sigma contains a permutation that is not an automorphism")
    labels = sigma.orbit_labels()
    reps, orbit_of = np.unique(labels, return_inverse=True)
    m = len(reps)
    ranks = K.ranks[reps]
    rel = np.zeros((m, m), dtype=bool)
    a, b = np.nonzero(K.leq)
    rel[orbit_of[a], orbit_of[b]] = True
    covers = [(int(x), int(y)) for x, y in np.argwhere(rel) if ranks[y] == ranks[x] + 1]
    Q = IncidenceComplex(ranks, covers, labels=[int(r) for r in reps], rank=K.rank)
    # Q renumbers by rank; map orbits to Q ids through the labels
    qid = np.array([Q.face(int(r)) for r in reps], dtype=np.int64)
    orbit_of = qid[orbit_of]
    report = validate_complex(Q)
    closure_ok = True
    relq = np.zeros((m, m), dtype=bool)
    relq[qid[:, None], qid[None, :]] = rel
    if not (Q.leq == relq).all():
        closure_ok = False
        report = ValidationReport(False, None, report.violations + [
            Violation("I1", "orbit relation is not the partial order generated by its covers")])
    projection = ComplexMap(K, Q, orbit_of) if report.is_complex and closure_ok else None
    return Quotient(Q, report, orbit_of, projection)


# ---------------------------------------------------------------------------
# induced coverings of power complexes
# ---------------------------------------------------------------------------

def is_equifibered(gamma: ComplexMap) -> int | None:
    """Common size l of the vertex fibres, or None when they differ."""
    K, L = gamma.source, gamma.target
    counts = {int(y): 0 for y in L.vertices}
    for u in K.vertices:
        y = int(gamma.face_map[u])
        counts[y] = counts.get(y, 0) + 1
    sizes = set(counts.values())
    return sizes.pop() if len(sizes) == 1 and 0 not in counts.values() else None


def _check_covering(gamma: ComplexMap):
    cls = classify(gamma)
    if not cls.covering:
        raise NotACoveringError(f"gamma is not a covering ({cls.level}, witness {cls.witness})")
    for X in (gamma.source, gamma.target):
        if not is_vertex_describable(X):
            raise NotVertexDescribableError("both complexes must be vertex-describable")


def _image_face(Q: PowerComplex, base: int, values: dict[int, int]) -> int:
    vs = Q.base_complex.vertex_sets[base]
    fixed = tuple((y, values[y]) for y in Q.coordinates if y not in vs)
    return Q.face(PowerFace(base, fixed))


def _full_vector(P: PowerComplex, label: PowerFace, fill: Callable[[int], int]) -> dict[int, int]:
    """A representative vector of a power face: fixed values plus ``fill`` elsewhere."""
    fixed = dict(label.fixed)
    return {u: fixed[u] if u in fixed else fill(u) for u in P.coordinates}


def _induced(gamma, P, Q, coord_value, fill):
    fmap = np.empty(P.num_faces, dtype=np.int64)
    for i, lab in enumerate(P.labels):
        if i == P.bottom:
            fmap[i] = Q.bottom
            continue
        eps = _full_vector(P, lab, fill)
        target_base = int(gamma.face_map[lab.base])
        fmap[i] = _image_face(Q, target_base, coord_value(eps))
    return fmap


def induced_covering_f(gamma: ComplexMap, n: int, m: int, f: Sequence[int], *,
                       cap: int = DEFAULT_CAP, fill: Callable[[int], int] | None = None,
                       P: PowerComplex | None = None, Q: PowerComplex | None = None) -> ComplexMap:
    """The map n^K -> m^L, F(eps) -> (F gamma)(eps_f).

    ``f`` lists the images of 1..n.  Each vertex j of L reads its coordinate
    from one chosen preimage in K (the least vertex id of its fibre); that
    choice is recorded in ``relabeling``.  ``fill`` picks the free coordinates
    of the representative vector (default: all 1) and exists to test that the
    image does not depend on it.
    """
    _check_covering(gamma)
    f = [int(x) for x in f]
    if not n >= m >= 2:
        raise ValueError("need n >= m >= 2")
    if len(f) != n or set(f) != set(range(1, m + 1)):
        raise ValueError("f must be a surjection {1..n} -> {1..m}")
    K, L = gamma.source, gamma.target
    rep = {}
    for u in sorted(int(u) for u in K.vertices):
        rep.setdefault(int(gamma.face_map[u]), u)
    if P is None:
        P = power_complex(K, n, cap=cap)
    if Q is None:
        Q = power_complex(L, m, cap=cap)
    order_L = [int(y) for y in L.vertices]
    order_K = [rep[y] for y in order_L] + sorted(set(int(u) for u in K.vertices) - set(rep.values()))

    def coord_value(eps):
        return {y: f[eps[rep[y]] - 1] for y in order_L}

    fmap = _induced(gamma, P, Q, coord_value, fill or (lambda u: 1))
    relabeling = {"source_vertices": order_K, "target_vertices": order_L}
    return ComplexMap(P, Q, fmap, relabeling)


def g_table(g, n: int, l: int) -> dict[tuple[int, ...], int]:
    """Normalise g: a callable, a dict on tuples, or a list in lexicographic order of N^l."""
    keys = list(itertools.product(range(1, n + 1), repeat=l))
    if callable(g):
        return {key: int(g(key)) for key in keys}
    if isinstance(g, dict):
        return {tuple(key): int(g[tuple(key)]) for key in keys}
    g = list(g)
    if len(g) != len(keys):
        raise ValueError(f"g needs {len(keys)} values, one per element of N^l")
    return {key: int(val) for key, val in zip(keys, g)}


def induced_covering_g(gamma: ComplexMap, n: int, m: int, g, *, cap: int = DEFAULT_CAP,
                       fill: Callable[[int], int] | None = None,
                       P: PowerComplex | None = None, Q: PowerComplex | None = None) -> ComplexMap:
    """The map n^K -> m^L, F(eps) -> (F gamma)(eps_g) for an equifibred gamma.

    The fibre of each vertex j of L, in increasing vertex id, forms the block
    of coordinates that g reads to produce coordinate j.
    """
    _check_covering(gamma)
    l = is_equifibered(gamma)
    if l is None:
        raise NotACoveringError("gamma is not equifibered")
    if n < 2 or m < 2:
        raise ValueError("need n, m >= 2")
    table = g_table(g, n, l)
    if set(table.values()) != set(range(1, m + 1)):
        raise ValueError("g must be a surjection N^l -> {1..m}")
    K, L = gamma.source, gamma.target
    blocks = {int(y): [] for y in L.vertices}
    for u in sorted(int(u) for u in K.vertices):
        blocks[int(gamma.face_map[u])].append(u)
    if P is None:
        P = power_complex(K, n, cap=cap)
    if Q is None:
        Q = power_complex(L, m, cap=cap)

    def coord_value(eps):
        return {y: table[tuple(eps[u] for u in blk)] for y, blk in blocks.items()}

    fmap = _induced(gamma, P, Q, coord_value, fill or (lambda u: 1))
    order_L = [int(y) for y in L.vertices]
    relabeling = {"source_vertices": [u for y in order_L for u in blocks[y]],
                  "target_vertices": order_L, "block_size": l}
    return ComplexMap(P, Q, fmap, relabeling)


def vertex_restriction(phi: ComplexMap) -> dict[int, int]:
    return phi.vertex_map()


def is_vertex_bijection(phi: ComplexMap) -> bool:
    vm = phi.vertex_map()
    images = set(vm.values())
    return len(images) == len(vm) == len(phi.target.vertices)
