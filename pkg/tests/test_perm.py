import itertools

import pytest
from hypothesis import given, settings, strategies as st

from powercomplex.perm import (PermGroup, closure_elements, cycles_str, identity, inv, mul,
                               parse_cycles)


@st.composite
def groups(draw, max_degree=7):
    n = draw(st.integers(1, max_degree))
    gens = draw(st.lists(st.permutations(range(n)), min_size=0, max_size=3))
    return n, [tuple(g) for g in gens]


@settings(max_examples=60, deadline=None)
@given(groups())
def test_order_and_elements_match_closure(case):
    n, gens = case
    G = PermGroup(n, gens)
    brute = closure_elements(n, gens)
    assert G.order() == len(brute)
    assert G.element_set() == brute


@settings(max_examples=60, deadline=None)
@given(groups(max_degree=6), st.data())
def test_membership(case, data):
    n, gens = case
    G = PermGroup(n, gens)
    brute = closure_elements(n, gens)
    p = tuple(data.draw(st.permutations(range(n))))
    assert G.contains(p) == (p in brute)


@settings(max_examples=40, deadline=None)
@given(groups(max_degree=6), st.data())
def test_pointwise_stabilizer(case, data):
    n, gens = case
    pts = data.draw(st.lists(st.integers(0, n - 1), max_size=n, unique=True))
    S = PermGroup(n, gens).stabilizer(pts)
    brute = {g for g in closure_elements(n, gens) if all(g[x] == x for x in pts)}
    assert S.element_set() == brute


@settings(max_examples=40, deadline=None)
@given(groups())
def test_orbits(case):
    n, gens = case
    G = PermGroup(n, gens)
    brute = closure_elements(n, gens)
    labels = G.orbit_labels()
    for x in range(n):
        orbit = {g[x] for g in brute}
        assert G.orbit(x) == orbit
        assert labels[x] == min(orbit)


def test_symmetric_group_order():
    s6 = PermGroup(6, [(1, 0, 2, 3, 4, 5), (1, 2, 3, 4, 5, 0)])
    assert s6.order() == 720
    assert PermGroup(6, [(1, 2, 3, 4, 5, 0)]).is_subgroup_of(s6)


def test_product_convention():
    p, q = (1, 2, 0), (1, 0, 2)
    # p first: 0 -> 1, then q: 1 -> 0
    assert mul(p, q)[0] == 0
    assert mul(p, inv(p)) == identity(3)


def test_cycle_notation_round_trip():
    for p in itertools.permutations(range(5)):
        assert parse_cycles(cycles_str(p), 5) == p
    assert parse_cycles("(0, 3)(1 4 2)", 5) == (3, 4, 1, 0, 2)


@pytest.mark.parametrize("text", ["(0 1", "(0 0)", "(0 9)", "(0 1)(1 2)", "abc"])
def test_bad_cycles(text):
    with pytest.raises(ValueError):
        parse_cycles(text, 4)


def test_bad_generator():
    with pytest.raises(ValueError):
        PermGroup(3, [(0, 0, 1)])
