"""Automorphism groups, regularity, the wreath subgroup of n^K, and the
distinguished generating subgroups of a regular complex."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import factorial

import numpy as np

from . import _kernels
from .complex import IncidenceComplex
from .errors import GroupPropertyError, NotRegularError, PowerComplexError
from .isomorphism import SEARCH_CAP, automorphism_chain
from .perm import PermGroup, mul
from .power import BOTTOM, PowerComplex, PowerFace, power_complex


def is_automorphism(K: IncidenceComplex, g) -> bool:
    """True iff g is a rank- and order-preserving face bijection of K."""
    g = np.asarray(g, dtype=np.int64)
    if len(g) != K.num_faces or sorted(g.tolist()) != list(range(K.num_faces)):
        return False
    if (K.ranks[g] != K.ranks).any():
        return False
    return bool((K.leq[np.ix_(g, g)] == K.leq).all())


def automorphism_group(K: IncidenceComplex, *, cap: int = SEARCH_CAP) -> PermGroup:
    gens, order, _ = automorphism_chain(K, cap=cap)
    G = PermGroup(K.num_faces, gens)
    if G.order() != order:
        raise PowerComplexError(f"stabiliser chain order {G.order()} != search order {order}")
    return G


def flag_permutations(K: IncidenceComplex, G: PermGroup) -> np.ndarray:
    """Action of the generators of G on the flags of K, one row per generator."""
    flags = K.flags
    index = K.flag_index
    rows = []
    for g in G.generators:
        rows.append([index[tuple(g[f] for f in fl)] for fl in flags])
    if not rows:
        return np.empty((0, len(flags)), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def flag_orbit_count(K: IncidenceComplex, G: PermGroup | None = None) -> int:
    if G is None:
        G = automorphism_group(K)
    perms = flag_permutations(K, G)
    if len(perms) == 0:
        return len(K.flags)
    return len(np.unique(_kernels.orbit_labels(perms)))


def is_regular(K: IncidenceComplex, G: PermGroup | None = None) -> bool:
    return flag_orbit_count(K, G) == 1


def wreath_subgroup(K: IncidenceComplex, n: int, P: PowerComplex | None = None) -> PermGroup:
    """The subgroup S_n wr Aut(K) of Aut(n^K), acting on the faces of n^K.

    Generators: a transposition and an n-cycle of the values at each
    coordinate, plus the lift of each generator phi of Aut(K), which sends
    F(eps) to (F phi)(eps') with eps'[u phi] = eps[u].
    """
    if P is None:
        P = power_complex(K, n)
    labels = P.labels
    gens = []

    def perm_from(fn):
        return tuple(P.face(fn(lab)) for lab in labels)

    for u in P.coordinates:
        for move in ({1: 2, 2: 1}, {x: x % n + 1 for x in range(1, n + 1)}):
            def fn(lab, u=u, move=move):
                return PowerFace(lab.base, tuple((w, move.get(val, val) if w == u else val)
                                                 for w, val in lab.fixed))
            gens.append(perm_from(fn))
    for phi in automorphism_group(K).generators:
        def fn(lab, phi=phi):
            if lab.base == BOTTOM:
                return lab
            return PowerFace(phi[lab.base], tuple(sorted((phi[w], val) for w, val in lab.fixed)))
        gens.append(perm_from(fn))
    return PermGroup(P.num_faces, gens)


def wreath_order(K: IncidenceComplex, n: int) -> int:
    return factorial(n) ** len(K.vertices) * automorphism_group(K).order()


# ---------------------------------------------------------------------------
# distinguished generating subgroups
# ---------------------------------------------------------------------------

@dataclass
class DistinguishedSystem:
    complex: IncidenceComplex
    group: PermGroup
    base_flag: tuple[int, ...]
    R: dict  # i -> PermGroup, i in -1..k
    flag_stabilizer: PermGroup

    @property
    def rank(self) -> int:
        return self.complex.rank

    @property
    def index_set(self) -> tuple[int, ...]:
        return tuple(range(-1, self.rank + 1))

    def gamma(self, I) -> PermGroup:
        """Gamma_I = <R_i : i in I>, and Gamma_{} = R_{-1}."""
        I = sorted(set(I))
        if not I:
            return self.R[-1]
        gens = [g for i in I for g in self.R[i].generators]
        return PermGroup(self.group.degree, gens)

    def c_indices(self) -> tuple[int, ...]:
        base = self.flag_stabilizer.order()
        return tuple(self.R[i].order() // base for i in range(self.rank))


def distinguished_system(K: IncidenceComplex, flag=None, G: PermGroup | None = None) -> DistinguishedSystem:
    """R_i = stabiliser of the base flag minus its i-face, for i = -1..k."""
    if G is None:
        G = automorphism_group(K)
    if not is_regular(K, G):
        raise NotRegularError("distinguished subgroups need a flag-transitive group")
    if flag is None:
        flag = K.flags[0]
    flag = tuple(int(f) for f in flag)
    R = {}
    for i in range(-1, K.rank + 1):
        R[i] = G.stabilizer([f for t, f in enumerate(flag) if t != i + 1])
    stab = G.stabilizer(list(flag))
    return DistinguishedSystem(K, G, flag, R, stab)


@dataclass
class GroupPropertiesReport:
    commutation: bool
    generation: bool
    intersection: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.commutation and self.generation and self.intersection


def _product_set(A, B):
    return frozenset(mul(a, b) for a in A for b in B)


def check_group_properties(D: DistinguishedSystem) -> GroupPropertiesReport:
    """Verify subgroup commutation, generation and the intersection property
    by element enumeration."""
    idx = D.index_set
    elems = {i: D.R[i].element_set() for i in idx}
    failures = []

    commutation = True
    for i, j in itertools.combinations(idx, 2):
        if j - i >= 2 and _product_set(elems[i], elems[j]) != _product_set(elems[j], elems[i]):
            commutation = False
            failures.append(("commutation", i, j))

    generation = D.gamma(idx).order() == D.group.order()
    if not generation:
        failures.append(("generation",))

    subsets = [frozenset(c) for r in range(len(idx) + 1) for c in itertools.combinations(idx, r)]
    gamma_elems = {I: D.gamma(I).element_set() for I in subsets}
    intersection = True
    for I, J in itertools.combinations_with_replacement(subsets, 2):
        if gamma_elems[I] & gamma_elems[J] != gamma_elems[I & J]:
            intersection = False
            failures.append(("intersection", tuple(sorted(I)), tuple(sorted(J))))
    return GroupPropertiesReport(commutation, generation, intersection, failures)


def reconstruct_from_group(G: PermGroup, D: DistinguishedSystem) -> IncidenceComplex:
    """Rebuild the complex from cosets: i-faces are right cosets of the
    subgroup generated by all R_j with j != i, ordered by nonempty
    intersection of cosets."""
    report = check_group_properties(D)
    if not report.ok:
        raise GroupPropertyError(f"group properties fail: {report.failures[:3]}")
    if D.R[-1].element_set() != D.R[D.rank].element_set():
        raise GroupPropertyError("R_{-1} and R_k differ")
    elements = G.elements()
    pos = {g: t for t, g in enumerate(elements)}
    k = D.rank
    idx = D.index_set
    # coset_of[i][t] = id of the rank-i coset containing element t
    coset_of = {}
    ranks, labels = [], []
    for i in idx:
        H = D.gamma([j for j in idx if j != i]).elements()
        ids = np.full(len(elements), -1, dtype=np.int64)
        for t, phi in enumerate(elements):
            if ids[t] >= 0:
                continue
            face = len(ranks)
            ranks.append(i)
            labels.append((i, t))
            for h in H:
                ids[pos[mul(h, phi)]] = face
        coset_of[i] = ids
    covers = set()
    for i in range(-1, k):
        covers.update(zip(coset_of[i].tolist(), coset_of[i + 1].tolist()))
    return IncidenceComplex(ranks, sorted(covers), labels, rank=k)
