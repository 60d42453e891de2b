"""Named complexes used as seeds: simplices, polygons, cubes, torus maps."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complex import IncidenceComplex, validate_complex
from .errors import PowerComplexError

_MIN = {
    "simplex": (1,),
    "polygon": (2,),
    "rank1": (2,),
    "cube": (1,),
    "complex_cube": (1, 2),
    "torus44": (2,),
    "torus36": (2,),
}


@dataclass(frozen=True)
class CatalogKey:
    name: str
    params: tuple[int, ...]

    def __str__(self):
        return f"{self.name}({', '.join(map(str, self.params))})"


def parse_key(name: str, *params) -> CatalogKey:
    name = name.replace("-", "_").lower()
    if name not in _MIN:
        raise ValueError(f"unknown catalog entry {name!r}; choose from {sorted(_MIN)}")
    params = tuple(int(p) for p in params)
    lows = _MIN[name]
    if len(params) != len(lows):
        raise ValueError(f"{name} takes {len(lows)} integer parameter(s)")
    for p, low in zip(params, lows):
        if p < low:
            raise ValueError(f"{name}: parameter {p} below minimum {low}")
    return CatalogKey(name, params)


def _from_labels(faces: dict, covers: list, rank: int) -> IncidenceComplex:
    labels = list(faces)
    pos = {lab: t for t, lab in enumerate(labels)}
    ranks = [faces[lab] for lab in labels]
    return IncidenceComplex(ranks, [(pos[a], pos[b]) for a, b in covers], labels, rank=rank)


def simplex(v: int) -> IncidenceComplex:
    """All subsets of {1..v}; rank v-1, so simplex(3) is the triangle."""
    faces, covers = {}, []
    for size in range(v + 1):
        for s in itertools.combinations(range(1, v + 1), size):
            faces[frozenset(s)] = size - 1
            for x in s:
                covers.append((frozenset(s) - {x}, frozenset(s)))
    return _from_labels(faces, covers, v - 1)


def polygon(q: int) -> IncidenceComplex:
    faces = {"bottom": -1}
    covers = []
    for i in range(q):
        faces[("v", i)] = 0
    for i in range(q):
        faces[("e", i)] = 1
        covers.append(("bottom", ("v", i)))
        covers.append((("v", i), ("e", i)))
        covers.append((("v", (i + 1) % q), ("e", i)))
        covers.append((("e", i), "top"))
    faces["top"] = 2
    return _from_labels(faces, covers, 2)


def rank1(v: int) -> IncidenceComplex:
    faces = {"bottom": -1, **{("v", i): 0 for i in range(v)}, "top": 1}
    covers = [("bottom", ("v", i)) for i in range(v)] + [(("v", i), "top") for i in range(v)]
    return _from_labels(faces, covers, 1)


def cube(v: int) -> IncidenceComplex:
    """The v-cube from sign vectors: entries -1/+1 fixed, 0 free."""
    faces = {"bottom": -1}
    covers = []
    for vec in itertools.product((-1, 0, 1), repeat=v):
        free = vec.count(0)
        faces[vec] = free
        if free == 0:
            covers.append(("bottom", vec))
        for i, x in enumerate(vec):
            if x == 0:
                for s in (-1, 1):
                    covers.append((vec[:i] + (s,) + vec[i + 1:], vec))
    return _from_labels(faces, covers, v)


def complex_cube(v: int, n: int) -> IncidenceComplex:
    from .power import power_complex
    return power_complex(simplex(v), n)


def torus44(s: int) -> IncidenceComplex:
    """The toroidal map {4,4}_(s,0) from the s x s grid of squares."""
    faces = {"bottom": -1}
    covers = []
    cells = list(itertools.product(range(s), repeat=2))
    for c in cells:
        faces[("v", c)] = 0
        covers.append(("bottom", ("v", c)))
    for i, j in cells:
        faces[("h", i, j)] = 1
        faces[("u", i, j)] = 1
        covers += [(("v", (i, j)), ("h", i, j)), (("v", ((i + 1) % s, j)), ("h", i, j)),
                   (("v", (i, j)), ("u", i, j)), (("v", (i, (j + 1) % s)), ("u", i, j))]
    for i, j in cells:
        sq = ("f", i, j)
        faces[sq] = 2
        covers += [(("h", i, j), sq), (("h", i, (j + 1) % s), sq),
                   (("u", i, j), sq), (("u", (i + 1) % s, j), sq), (sq, "top")]
    faces["top"] = 3
    return _from_labels(faces, covers, 3)


def torus36(b: int) -> IncidenceComplex:
    """The toroidal map {3,6}_(b,0) from the triangulated b x b grid."""
    faces = {"bottom": -1}
    covers = []
    cells = list(itertools.product(range(b), repeat=2))

    def vert(i, j):
        return ("v", (i % b, j % b))

    for i, j in cells:
        faces[vert(i, j)] = 0
        covers.append(("bottom", vert(i, j)))
    steps = {"a": (1, 0), "b": (0, 1), "c": (1, 1)}
    for i, j in cells:
        for d, (di, dj) in steps.items():
            e = (d, i, j)
            faces[e] = 1
            covers += [(vert(i, j), e), (vert(i + di, j + dj), e)]
    for i, j in cells:
        up, dn = ("up", i, j), ("down", i, j)
        faces[up] = faces[dn] = 2
        covers += [(("a", i, j), up), (("b", (i + 1) % b, j), up), (("c", i, j), up),
                   (("b", i, j), dn), (("a", i, (j + 1) % b), dn), (("c", i, j), dn),
                   (up, "top"), (dn, "top")]
    faces["top"] = 3
    return _from_labels(faces, covers, 3)


_BUILDERS = {
    "simplex": simplex,
    "polygon": polygon,
    "rank1": rank1,
    "cube": cube,
    "complex_cube": complex_cube,
    "torus44": torus44,
    "torus36": torus36,
}


def generate(key: CatalogKey | str, *params) -> IncidenceComplex:
    """Build and validate a catalog complex, e.g. ``generate("polygon", 5)``."""
    if not isinstance(key, CatalogKey):
        key = parse_key(key, *params)
    K = _BUILDERS[key.name](*key.params)
    report = validate_complex(K)
    if not report.is_complex:
        raise PowerComplexError(f"{key} failed validation: {report.violations}")
    return K
