import itertools

import numpy as np
import pytest

from conftest import poset, rap_oracle, wrap_polygon
from powercomplex.catalog import cube, polygon
from powercomplex.complex import is_vertex_describable, validate_complex
from powercomplex.covering import (ComplexMap, classify, g_table, induced_covering_f,
                                   induced_covering_g, is_equifibered, is_vertex_bijection,
                                   map_from_vertices, quotient, vertex_restriction)
from powercomplex.errors import NotACoveringError, NotVertexDescribableError
from powercomplex.isomorphism import is_isomorphic
from powercomplex.perm import PermGroup
from powercomplex.power import power_complex
from powercomplex.symmetry import automorphism_group


def identity_map(K):
    return ComplexMap(K, K, np.arange(K.num_faces))


def dihedron_cover():
    """Double cover of the 3-dihedron {3,2} branched at two of its vertices.

    Over N and S there is one vertex each, over c there are two (a, b), so
    vertex fibres have sizes 1, 1, 2.
    """
    Lf = {"bot": -1, "N": 0, "S": 0, "c": 0, "NS": 1, "Nc": 1, "Sc": 1, "T": 2, "U": 2, "top": 3}
    Lc = [("bot", "N"), ("bot", "S"), ("bot", "c"), ("N", "NS"), ("S", "NS"), ("N", "Nc"),
          ("c", "Nc"), ("S", "Sc"), ("c", "Sc")]
    Lc += [(e, t) for e in ("NS", "Nc", "Sc") for t in ("T", "U")] + [("T", "top"), ("U", "top")]
    L = poset(Lf, Lc, 3)

    Kf = {"bot": -1, "N": 0, "S": 0, "a": 0, "b": 0, "e": 1, "f": 1, "Na": 1, "Sa": 1, "Nb": 1,
          "Sb": 1, "T1": 2, "T2": 2, "T3": 2, "T4": 2, "top": 3}
    tri = {"T1": ("e", "Na", "Sa"), "T2": ("f", "Na", "Sa"), "T3": ("e", "Nb", "Sb"),
           "T4": ("f", "Nb", "Sb")}
    Kc = [("bot", v) for v in "NSab"] + [("N", "e"), ("S", "e"), ("N", "f"), ("S", "f")]
    Kc += [(x, x + y) for x in "NS" for y in "ab"] + [(y, x + y) for x in "NS" for y in "ab"]
    Kc += [(e, t) for t, es in tri.items() for e in es] + [(t, "top") for t in tri]
    K = poset(Kf, Kc, 3)

    image = {"bot": "bot", "N": "N", "S": "S", "a": "c", "b": "c", "e": "NS", "f": "NS",
             "Na": "Nc", "Nb": "Nc", "Sa": "Sc", "Sb": "Sc", "T1": "T", "T2": "U", "T3": "U",
             "T4": "T", "top": "top"}
    fmap = [L.face(image[K.labels[x]]) for x in range(K.num_faces)]
    return ComplexMap(K, L, fmap)


# -- classification ---------------------------------------------------------------

def test_identity_is_covering():
    cls = classify(identity_map(cube(3)))
    assert cls.covering and cls.level == "covering" and cls.witness == ()


def test_hexagon_wraps_triangle(hex_to_tri):
    assert classify(hex_to_tri).covering
    assert rap_oracle(hex_to_tri)


def test_constant_vertex_collapse():
    K = polygon(3)
    v = int(K.vertices[0])
    fmap = np.array([v if K.ranks[f] in (0, 1) else f for f in range(K.num_faces)])
    cls = classify(ComplexMap(K, K, fmap))
    assert cls.homomorphism and not cls.rank_preserving
    assert cls.level == "homomorphism" and cls.witness[0] == "rank"


def test_order_violation():
    K = polygon(4)
    # swap two vertices only: the edges no longer lie above their vertices
    fmap = np.arange(K.num_faces)
    fmap[[1, 2]] = fmap[[2, 1]]
    cls = classify(ComplexMap(K, K, fmap))
    assert not cls.homomorphism and cls.witness[0] == "order"


def test_branched_cover_is_a_covering():
    gamma = dihedron_cover()
    assert validate_complex(gamma.source).is_complex and validate_complex(gamma.target).is_complex
    assert classify(gamma).covering and rap_oracle(gamma)


def test_classification_agrees_with_flag_oracle():
    for p, q in [(6, 3), (8, 4), (9, 3), (10, 5)]:
        phi = wrap_polygon(p, q)
        assert classify(phi).covering and rap_oracle(phi)


# -- fibres ------------------------------------------------------------------------

def test_equifibered(hex_to_tri):
    assert is_equifibered(hex_to_tri) == 2
    assert is_equifibered(identity_map(polygon(5))) == 1
    assert is_equifibered(dihedron_cover()) is None


def test_uneven_fibres_refused_by_g_route():
    gamma = dihedron_cover()
    assert not is_vertex_describable(gamma.source)
    with pytest.raises((NotACoveringError, ValueError)):
        induced_covering_g(gamma, 2, 2, [1, 2])


# -- quotients ---------------------------------------------------------------------

def _rotation(K, q, by):
    return tuple(K.face(_rot_label(K.labels[f], q, by)) for f in range(K.num_faces))


def _rot_label(lab, q, by):
    if isinstance(lab, tuple):
        return (lab[0], (lab[1] + by) % q)
    return lab


def test_hexagon_mod_central_involution():
    K = polygon(6)
    Q = quotient(K, PermGroup(K.num_faces, [_rotation(K, 6, 3)]))
    assert Q.report.is_complex
    assert is_isomorphic(Q.complex, polygon(3)) is not None
    assert classify(Q.projection).covering and rap_oracle(Q.projection)


def test_trivial_quotient():
    K = cube(3)
    Q = quotient(K, PermGroup(K.num_faces, []))
    assert is_isomorphic(Q.complex, K) is not None
    assert classify(Q.projection).covering


def test_square_mod_half_turn_is_digon():
    K = polygon(4)
    Q = quotient(K, PermGroup(K.num_faces, [_rotation(K, 4, 2)]))
    assert Q.report.is_complex and Q.complex.f_vector() == (2, 2)
    assert is_isomorphic(Q.complex, polygon(2)) is not None
    assert not is_vertex_describable(Q.complex)


def test_bad_quotient_is_reported_not_rejected():
    # a reflection of the square fixing two vertices identifies the two edges at
    # each fixed vertex: orbits form a poset that fails the axioms
    K = polygon(4)
    G = automorphism_group(K)
    refl = next(g for g in G.elements() if sum(g[v] == v for v in K.vertices) == 2)
    Q = quotient(K, PermGroup(K.num_faces, [refl]))
    assert not Q.report.is_complex and Q.projection is None


def test_quotient_needs_automorphisms():
    K = polygon(4)
    p = list(range(K.num_faces))
    p[1], p[2] = p[2], p[1]
    with pytest.raises(ValueError):
        quotient(K, PermGroup(K.num_faces, [p]))


def test_quotient_projection_composes(hex_to_tri):
    K = polygon(12)
    Q = quotient(K, PermGroup(K.num_faces, [_rotation(K, 12, 6)]))
    to_hex = Q.projection
    iso = is_isomorphic(Q.complex, hex_to_tri.source)
    relabel = ComplexMap(Q.complex, hex_to_tri.source, iso)
    total = to_hex.then(relabel).then(hex_to_tri)
    assert classify(total).covering


# -- induced coverings, f route ----------------------------------------------------

SURJECTIONS_3_2 = [f for f in itertools.product((1, 2), repeat=3) if set(f) == {1, 2}]


@pytest.fixture(scope="module")
def powers_hex_tri(hex_to_tri):
    K, L = hex_to_tri.source, hex_to_tri.target
    return {(n, X): power_complex(K if X == "K" else L, n) for n in (2, 3) for X in "KL"}


@pytest.mark.parametrize("f", SURJECTIONS_3_2)
def test_non_injective_f_gives_weak_covering(f, hex_to_tri, powers_hex_tri):
    phi = induced_covering_f(hex_to_tri, 3, 2, f, P=powers_hex_tri[3, "K"], Q=powers_hex_tri[2, "L"])
    cls = classify(phi)
    assert cls.weak_covering and not cls.covering
    kind, _, a, b = cls.witness
    fm = phi.face_map
    assert kind == "collapse" and [fm[x] for x in a] == [fm[x] for x in b]


def test_image_does_not_depend_on_representative(hex_to_tri, powers_hex_tri):
    P, Q = powers_hex_tri[3, "K"], powers_hex_tri[2, "L"]
    for f in [(1, 1, 2), (2, 1, 2)]:
        maps = [induced_covering_f(hex_to_tri, 3, 2, f, P=P, Q=Q, fill=fill).face_map
                for fill in (lambda u: 1, lambda u: 3, lambda u: 1 + u % 3)]
        assert (maps[0] == maps[1]).all() and (maps[0] == maps[2]).all()


def test_f_route_vertex_formula(hex_to_tri, powers_hex_tri):
    # vertex eps goes to (f(eps_1), f(eps_2), f(eps_3)) read at the fibre representatives
    P, Q = powers_hex_tri[3, "K"], powers_hex_tri[2, "L"]
    f = (2, 1, 1)
    phi = induced_covering_f(hex_to_tri, 3, 2, f, P=P, Q=Q)
    reps = phi.relabeling["source_vertices"][:3]
    pos = {u: t for t, u in enumerate(P.coordinates)}
    for v, w in vertex_restriction(phi).items():
        eps = P.vector(v)
        assert Q.vector(w) == tuple(f[eps[pos[u]] - 1] for u in reps)


def test_f_route_is_weak_covering_for_every_surjection(hex_to_tri, powers_hex_tri):
    P, Q = powers_hex_tri[2, "K"], powers_hex_tri[2, "L"]
    for f in [(1, 2), (2, 1)]:
        cls = classify(induced_covering_f(hex_to_tri, 2, 2, f, P=P, Q=Q))
        assert cls.weak_covering


def test_identity_gamma_and_f_gives_identity():
    K = polygon(4)
    phi = induced_covering_f(identity_map(K), 2, 2, [1, 2])
    assert (phi.face_map == np.arange(phi.source.num_faces)).all()
    assert classify(phi).covering


@pytest.mark.parametrize("f", list(itertools.permutations((1, 2, 3))))
def test_bijective_f_over_isomorphism_is_covering(f):
    K = polygon(3)
    phi = induced_covering_f(identity_map(K), 3, 3, f)
    assert classify(phi).covering


def test_wrapping_gamma_blocks_covering_even_for_bijective_f(hex_to_tri, powers_hex_tri):
    # every vertex of 2^{6} lies on 6 edges, every vertex of 2^{3} on 3, so no
    # map between them is locally bijective: covering needs gamma injective too
    P, Q = powers_hex_tri[2, "K"], powers_hex_tri[2, "L"]
    assert {len(P.up[v]) for v in P.vertices} == {6} and {len(Q.up[v]) for v in Q.vertices} == {3}
    phi = induced_covering_f(hex_to_tri, 2, 2, [1, 2], P=P, Q=Q)
    cls = classify(phi)
    assert cls.weak_covering and not cls.covering
    assert not rap_oracle(phi)


def test_f_route_rejects_bad_input(hex_to_tri):
    with pytest.raises(ValueError):
        induced_covering_f(hex_to_tri, 2, 3, [1, 2])
    with pytest.raises(ValueError):
        induced_covering_f(hex_to_tri, 3, 2, [1, 1, 1])
    K = polygon(4)
    fold = ComplexMap(K, K, np.zeros(K.num_faces, dtype=np.int64))
    with pytest.raises(NotACoveringError):
        induced_covering_f(fold, 2, 2, [1, 2])


# -- induced coverings, g route ----------------------------------------------------

@pytest.fixture(scope="module")
def pow4_tri(hex_to_tri):
    return power_complex(hex_to_tri.target, 4)


@pytest.mark.parametrize("g", list(itertools.permutations((1, 2, 3, 4)))[::5])
def test_bijective_g_is_covering_and_vertex_bijective(g, hex_to_tri, powers_hex_tri, pow4_tri):
    P = powers_hex_tri[2, "K"]
    phi = induced_covering_g(hex_to_tri, 2, 4, list(g), P=P, Q=pow4_tri)
    assert classify(phi).covering
    assert len(P.vertices) == len(pow4_tri.vertices) == 64
    assert is_vertex_bijection(phi)


def test_bijective_g_flag_oracle(hex_to_tri, powers_hex_tri, pow4_tri):
    phi = induced_covering_g(hex_to_tri, 2, 4, [1, 2, 3, 4], P=powers_hex_tri[2, "K"], Q=pow4_tri)
    assert rap_oracle(phi)


def test_projection_g_is_weak_covering(hex_to_tri, powers_hex_tri):
    phi = induced_covering_g(hex_to_tri, 2, 2, [1, 1, 2, 2], P=powers_hex_tri[2, "K"],
                             Q=powers_hex_tri[2, "L"])
    cls = classify(phi)
    assert cls.weak_covering and not cls.covering


def test_parity_g_is_a_covering_without_being_injective(hex_to_tri, powers_hex_tri):
    # g(x, y) = parity of x + y is 2-to-1, yet every vertex star maps bijectively
    phi = induced_covering_g(hex_to_tri, 2, 2, [1, 2, 2, 1], P=powers_hex_tri[2, "K"],
                             Q=powers_hex_tri[2, "L"])
    assert classify(phi).covering
    assert rap_oracle(phi)
    assert not is_vertex_bijection(phi)


def test_g_well_defined(hex_to_tri, powers_hex_tri, pow4_tri):
    P = powers_hex_tri[2, "K"]
    g = [3, 1, 4, 2]
    maps = [induced_covering_g(hex_to_tri, 2, 4, g, P=P, Q=pow4_tri, fill=fill).face_map
            for fill in (lambda u: 1, lambda u: 2, lambda u: 1 + u % 2)]
    assert (maps[0] == maps[1]).all() and (maps[0] == maps[2]).all()


def test_l1_g_route_equals_f_route():
    K = polygon(4)
    gamma = identity_map(K)
    a = induced_covering_g(gamma, 3, 3, [2, 3, 1]).face_map
    b = induced_covering_f(gamma, 3, 3, [2, 3, 1]).face_map
    assert (a == b).all()


def test_g_table_forms():
    assert g_table([1, 2, 3, 4], 2, 2) == {(1, 1): 1, (1, 2): 2, (2, 1): 3, (2, 2): 4}
    assert g_table(lambda t: t[0], 2, 2)[(2, 1)] == 2
    assert g_table({(1,): 2, (2,): 1}, 2, 1) == {(1,): 2, (2,): 1}
    with pytest.raises(ValueError):
        g_table([1, 2], 2, 2)


# -- maps as data ------------------------------------------------------------------

def test_map_json_round_trip(hex_to_tri):
    back = ComplexMap.from_json(hex_to_tri.to_json())
    assert (back.face_map == hex_to_tri.face_map).all()
    assert classify(back).covering


def test_map_from_vertices_needs_vertex_describable_target():
    with pytest.raises(NotVertexDescribableError):
        wrap_polygon(4, 2)


def test_map_from_vertices_rejects_non_faces():
    K = polygon(4)
    vmap = {K.face(("v", i)): K.face(("v", j)) for i, j in enumerate((0, 2, 1, 3))}
    with pytest.raises(NotACoveringError):
        map_from_vertices(K, K, vmap)


def test_composed_power_coverings(hex_to_tri, powers_hex_tri, pow4_tri):
    phi = induced_covering_g(hex_to_tri, 2, 4, [1, 2, 3, 4], P=powers_hex_tri[2, "K"], Q=pow4_tri)
    G = automorphism_group(hex_to_tri.target)
    g = G.generators[0]
    # lift a symmetry of the triangle to 4^{3} and follow phi by it
    lift = induced_covering_f(ComplexMap(hex_to_tri.target, hex_to_tri.target, g), 4, 4, [1, 2, 3, 4],
                              P=pow4_tri, Q=pow4_tri)
    assert classify(lift).covering
    assert classify(phi.then(lift)).covering
