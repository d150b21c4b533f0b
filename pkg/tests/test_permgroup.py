import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import gen_sets, perms
from regcomplex.errors import (DegreeMismatch, InvalidDegree, NotSubgroup, ParseError,
                               ResourceLimit)
from regcomplex.permgroup import (PermGroup, Permutation, bfs_closure, compose, conjugate,
                                  core, from_cycles, group_from_generators, identity,
                                  inverse, is_normal, product_set, product_sets_equal,
                                  right_cosets, subgroup_intersection)


def sym(n):
    if n == 1:
        return PermGroup(1)
    return PermGroup(n, [from_cycles("(0 1)", n),
                         from_cycles("(" + " ".join(map(str, range(n))) + ")", n)])


# -- permutations ------------------------------------------------------------------

def test_right_action_composition():
    p = from_cycles("(0 1)", 3)
    q = from_cycles("(1 2)", 3)
    # p first: 0 -> 1, then q: 1 -> 2
    assert (p * q)(0) == 2
    assert compose(p, q).images == oracles.tmul(p.images, q.images)


def test_cycle_notation_round_trip():
    p = from_cycles("(0 3 2)(1 4)", 6)
    assert str(p) == "(0 3 2)(1 4)"
    assert from_cycles(str(p), 6) == p
    assert str(identity(4)) == "()"
    assert from_cycles("", 4) == identity(4) == from_cycles("()", 4)
    assert from_cycles("(0,1)(2,3)", 4) == from_cycles("(0 1)(2 3)", 4)


@pytest.mark.parametrize("text", ["(0 1", "(0 7)", "(a b)", "(0 0)", "0 1)"])
def test_malformed_cycles(text):
    with pytest.raises(ParseError):
        from_cycles(text, 3)


def test_invalid_degree():
    with pytest.raises(InvalidDegree):
        identity(0)
    with pytest.raises(InvalidDegree):
        PermGroup(0)
    with pytest.raises(DegreeMismatch):
        PermGroup(3, [from_cycles("(0 1)", 4)])


@given(st.integers(1, 8).flatmap(lambda d: st.tuples(perms(d), perms(d), perms(d))))
def test_group_laws(ppp):
    p, q, r = ppp
    assert (p * q) * r == p * (q * r)
    assert (p * inverse(p)).is_identity()
    assert p ** p.order() == identity(p.degree)
    assert conjugate(p, q) == inverse(q) * p * q
    assert p ** -1 == inverse(p)


# -- groups against the closure oracle ---------------------------------------------

@given(gen_sets())
def test_order_and_elements_match_closure(ds):
    degree, gens = ds
    G = PermGroup(degree, gens)
    elems = oracles.closure(gens, degree)
    assert G.order == len(elems)
    assert {p.images for p in G.elements()} == elems
    assert {p.images for p in bfs_closure(gens, degree)} == elems


@given(gen_sets(max_degree=6), st.data())
def test_membership(ds, data):
    degree, gens = ds
    G = PermGroup(degree, gens)
    elems = oracles.closure(gens, degree)
    for _ in range(5):
        p = data.draw(perms(degree))
        assert (p in G) == (p.images in elems)


@given(gen_sets(min_degree=2, max_degree=6))
def test_table_rows_sorted_and_identity_first(ds):
    degree, gens = ds
    t = PermGroup(degree, gens).table
    assert t.elems[0].tolist() == list(range(degree))
    rows = [tuple(r) for r in t.elems.tolist()]
    assert rows == sorted(rows)
    assert np.array_equal(t.index_of(t.elems), np.arange(t.order))


@given(gen_sets(min_degree=2, max_degree=6))
def test_table_mul_and_inverses(ds):
    degree, gens = ds
    t = PermGroup(degree, gens).table
    m = t.order
    idx = np.arange(m)
    prod = t.mul_outer(idx, idx)
    for a, b in itertools.islice(itertools.product(range(m), repeat=2), 400):
        want = oracles.tmul(tuple(t.elems[a]), tuple(t.elems[b]))
        assert tuple(t.elems[prod[a, b]]) == want
    inv = t.inverses
    assert np.all(t.mul(idx, inv) == 0)


def test_lookup_rejects_non_members():
    A = PermGroup(4, [from_cycles("(0 1)", 4)])
    assert A.table.index_of(from_cycles("(2 3)", 4))[0] == -1


@given(gen_sets(min_degree=2, max_degree=6), st.data())
def test_pointwise_stabilizer(ds, data):
    degree, gens = ds
    G = PermGroup(degree, gens)
    pts = data.draw(st.lists(st.integers(0, degree - 1), max_size=3))
    S = G.pointwise_stabilizer(pts)
    want = {g for g in oracles.closure(gens, degree) if all(g[x] == x for x in pts)}
    assert {p.images for p in S.elements()} == want


def test_known_orders():
    assert sym(4).order == 24
    assert sym(7).order == 5040
    assert PermGroup(5, [from_cycles("(0 1 2 3 4)", 5)]).order == 5
    assert group_from_generators([], degree=3).order == 1
    with pytest.raises(InvalidDegree):
        group_from_generators([])


# -- cosets, products, intersections, core ----------------------------------------

@given(gen_sets(min_degree=2, max_degree=6), st.data())
def test_right_cosets_partition(ds, data):
    degree, gens = ds
    G = PermGroup(degree, gens)
    sub_gens = data.draw(st.lists(st.sampled_from(G.elements()), max_size=2))
    H = PermGroup(degree, sub_gens)
    dec = right_cosets(G, H)
    Hs = oracles.group_set(H)
    want = {oracles.right_coset(Hs, g) for g in oracles.group_set(G)}
    assert dec.index == len(want) == G.order // H.order
    for rep in dec.representatives:
        coset = oracles.right_coset(Hs, rep.images)
        assert rep.images == min(coset)
    for g in G.elements():
        assert dec.representative(g).images == min(oracles.right_coset(Hs, g.images))


def test_right_cosets_requires_subgroup():
    G = PermGroup(3, [from_cycles("(0 1)", 3)])
    H = PermGroup(3, [from_cycles("(1 2)", 3)])
    with pytest.raises(NotSubgroup):
        right_cosets(G, H)


@given(gen_sets(max_degree=5, max_gens=2), gen_sets(max_degree=5, max_gens=2))
def test_products_and_intersections(d1, d2):
    degree = max(d1[0], d2[0])
    pad = lambda g: Permutation(list(g.images) + list(range(g.degree, degree)))  # noqa: E731
    A = PermGroup(degree, [pad(g) for g in d1[1]])
    B = PermGroup(degree, [pad(g) for g in d2[1]])
    As, Bs = oracles.group_set(A), oracles.group_set(B)
    assert {p.images for p in product_set(A, B)} == oracles.product(As, Bs)
    assert product_sets_equal(A, B) == (oracles.product(As, Bs) == oracles.product(Bs, As))
    assert {p.images for p in subgroup_intersection(A, B).elements()} == As & Bs


def test_product_of_transpositions():
    a = PermGroup(3, [from_cycles("(0 1)", 3)])
    b = PermGroup(3, [from_cycles("(1 2)", 3)])
    assert len(product_set(a, b)) == 4
    assert not product_sets_equal(a, b)
    assert subgroup_intersection(a, b).is_trivial()


def test_core_and_normality():
    S4 = sym(4)
    S3 = PermGroup(4, [from_cycles("(0 1)", 4), from_cycles("(1 2)", 4)])
    assert core(S4, S3).is_trivial()
    V = PermGroup(4, [from_cycles("(0 1)(2 3)", 4), from_cycles("(0 2)(1 3)", 4)])
    D8 = PermGroup(4, [from_cycles("(0 1 2 3)", 4), from_cycles("(0 2)", 4)])
    assert is_normal(S4, V)
    assert core(S4, D8) == V


@given(gen_sets(min_degree=2, max_degree=5), st.data())
def test_core_matches_brute_force(ds, data):
    degree, gens = ds
    G = PermGroup(degree, gens)
    H = PermGroup(degree, data.draw(st.lists(st.sampled_from(G.elements()), max_size=2)))
    Gs, Hs = oracles.group_set(G), oracles.group_set(H)
    want = frozenset(h for h in Hs if all(
        oracles.tmul(oracles.tmul(oracles.tinv(g), h), g) in Hs for g in Gs))
    assert {p.images for p in core(G, H).elements()} == want


def test_element_cap(monkeypatch):
    monkeypatch.setenv("REGCOMPLEX_MAX_ELEMENTS", "100")
    with pytest.raises(ResourceLimit):
        sym(6).table
    with pytest.raises(ResourceLimit):
        bfs_closure(sym(6).generators, 6)
