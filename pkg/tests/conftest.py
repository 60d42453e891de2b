import itertools

import numpy as np
import pytest

from powercomplex.catalog import polygon
from powercomplex.complex import IncidenceComplex
from powercomplex.covering import map_from_vertices


def wrap_polygon(p: int, q: int):
    """The covering {p} -> {q} (q divides p) sending vertex i to i mod q."""
    K, L = polygon(p), polygon(q)
    vmap = {K.face(("v", i)): L.face(("v", i % q)) for i in range(p)}
    return map_from_vertices(K, L, vmap)


def poset(faces: dict, covers, rank: int) -> IncidenceComplex:
    """Complex from {label: rank} and label cover pairs."""
    labels = list(faces)
    pos = {lab: t for t, lab in enumerate(labels)}
    return IncidenceComplex([faces[x] for x in labels], [(pos[a], pos[b]) for a, b in covers],
                            labels, rank=rank)


def complex_from_sets(vertices, sets_by_rank, rank: int) -> IncidenceComplex:
    """Vertex-describable complex from its proper faces given as vertex sets."""
    faces = {"bottom": -1, "top": rank}
    for v in vertices:
        faces[frozenset([v])] = 0
    for r, sets in sets_by_rank.items():
        for s in sets:
            faces[frozenset(s)] = r
    covers = []
    proper = [x for x in faces if x not in ("bottom", "top")]
    for a, b in itertools.product(proper, repeat=2):
        if faces[b] == faces[a] + 1 and a < b:
            covers.append((a, b))
    covers += [("bottom", frozenset([v])) for v in vertices]
    covers += [(x, "top") for x in proper if faces[x] == rank - 1]
    return poset(faces, covers, rank)


def rap_oracle(phi) -> bool:
    """Covering test straight from flags: every pair of flags differing in
    exactly position i must map to a pair differing in exactly position i."""
    src, tgt = phi.source, phi.target
    fm = phi.face_map
    images = set()
    for fl in src.flags:
        images.add(tuple(int(fm[x]) for x in fl))
    if images != set(tgt.flags) or sorted(set(fm.tolist())) != list(range(tgt.num_faces)):
        return False
    for a, b in itertools.combinations(src.flags, 2):
        diff = [t for t in range(len(a)) if a[t] != b[t]]
        if len(diff) != 1:
            continue
        ia = [int(fm[x]) for x in a]
        ib = [int(fm[x]) for x in b]
        if [t for t in range(len(a)) if ia[t] != ib[t]] != diff:
            return False
    return True


@pytest.fixture(scope="session")
def hex_to_tri():
    return wrap_polygon(6, 3)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
