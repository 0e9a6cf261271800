import pytest
from hypothesis import given, strategies as st

import oracles
from pathcat.errors import DomainMismatch, NotMonotone
from pathcat.simplex import (
    DeltaMap,
    codegeneracy,
    coface,
    compose_delta,
    enumerate_hom,
    factorize_generators,
    identity_delta,
    ordinal_sum,
    recompose,
)


@st.composite
def delta_maps(draw, dom=None, cod=None, max_size=5):
    m = draw(st.integers(0, max_size)) if dom is None else dom
    n = draw(st.integers(1 if m else 0, max_size)) if cod is None else cod
    imgs = sorted(draw(st.lists(st.integers(0, n - 1), min_size=m, max_size=m))) if m else []
    return DeltaMap(m, n, tuple(imgs))


@st.composite
def composable_triples(draw):
    f = draw(delta_maps())
    g = draw(delta_maps(dom=f.cod))
    h = draw(delta_maps(dom=g.cod))
    return h, g, f


def test_identity_composition():
    assert compose_delta(identity_delta(3), identity_delta(3)) == identity_delta(3)


def test_terminal_codomain():
    bang = DeltaMap(2, 1, (0, 0))
    for f in enumerate_hom(3, 2):
        assert compose_delta(bang, f) == DeltaMap(3, 1, (0, 0, 0))


def test_coface_after_codegeneracy_against_table():
    n = 3
    s1 = codegeneracy(n - 1, 1)
    d1 = coface(n - 1, 1)
    got = compose_delta(d1, s1)
    # pointwise composite, looked up in the brute-force list of Δ(3,3)
    pointwise = tuple(d1.images[s1.images[i]] for i in range(n))
    assert pointwise in oracles.monotone_maps(n, n)
    assert got.images == pointwise == (0, 2, 2)


def test_domain_mismatch():
    with pytest.raises(DomainMismatch):
        compose_delta(identity_delta(2), identity_delta(3))


def test_not_monotone():
    with pytest.raises(NotMonotone):
        DeltaMap(2, 2, (1, 0))


def test_ordinal_sum_examples():
    assert ordinal_sum(identity_delta(2), identity_delta(3)) == identity_delta(5)
    f = DeltaMap(3, 2, (0, 1, 1))
    assert ordinal_sum(identity_delta(0), f) == f
    got = ordinal_sum(DeltaMap(2, 1, (0, 0)), DeltaMap(3, 1, (0, 0, 0)))
    assert got.images == (0, 0, 1, 1, 1)
    assert got.images in oracles.monotone_maps(5, 2)


def test_factorize_examples():
    assert factorize_generators(identity_delta(4)) == []
    sur = DeltaMap(2, 1, (0, 0))
    assert factorize_generators(sur) == [codegeneracy(1, 0)]
    inj = DeltaMap(1, 2, (0,))
    assert factorize_generators(inj) == [coface(1, 1)]
    assert recompose(factorize_generators(inj), 1) == inj


@pytest.mark.parametrize("m,n", [(0, 0), (0, 3), (2, 2), (3, 2), (2, 3), (4, 4)])
def test_hom_sizes_against_brute_force(m, n):
    got = enumerate_hom(m, n)
    assert [u.images for u in got] == sorted(oracles.monotone_maps(m, n))
    assert len(got) == oracles.monotone_count(m, n)


def test_frozen_hom_sizes():
    assert len(enumerate_hom(0, 5)) == 1
    assert len(enumerate_hom(2, 2)) == 3
    assert len(enumerate_hom(3, 2)) == 4


@given(composable_triples())
def test_composition_associative(t):
    h, g, f = t
    assert compose_delta(h, compose_delta(g, f)) == compose_delta(compose_delta(h, g), f)


@given(delta_maps())
def test_identity_laws(f):
    assert compose_delta(f, identity_delta(f.dom)) == f
    assert compose_delta(identity_delta(f.cod), f) == f


@given(delta_maps())
def test_factorization_recomposes(f):
    gens = factorize_generators(f)
    assert recompose(gens, f.dom) == f
    # surjective part first, then injective part
    kinds = [g.cod < g.dom for g in gens]
    assert kinds == sorted(kinds, reverse=True)


@given(delta_maps(), delta_maps(), delta_maps())
def test_ordinal_sum_associative(f, g, h):
    assert ordinal_sum(ordinal_sum(f, g), h) == ordinal_sum(f, ordinal_sum(g, h))


@given(st.data())
def test_ordinal_sum_is_functorial(data):
    f1 = data.draw(delta_maps(max_size=3))
    g1 = data.draw(delta_maps(max_size=3))
    f2 = data.draw(delta_maps(dom=f1.cod, max_size=3))
    g2 = data.draw(delta_maps(dom=g1.cod, max_size=3))
    lhs = compose_delta(ordinal_sum(f2, g2), ordinal_sum(f1, g1))
    rhs = ordinal_sum(compose_delta(f2, f1), compose_delta(g2, g1))
    assert lhs == rhs
