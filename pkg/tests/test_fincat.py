import pytest
from hypothesis import given, strategies as st

import oracles
from pathcat.errors import (
    AssociativityViolation,
    CompositionNotPreserved,
    NonFunctorialAction,
    UnknownObject,
)
from pathcat.fincat import (
    SetValuedDiagram,
    coarse,
    constant_functor,
    derive,
    discrete,
    elements,
    enumerate_functors,
    find_isomorphism,
    identity_functor,
    interior,
    interval,
    nerve_level,
    preorder_category,
    terminal,
    transitive_closure,
    validate_category,
    validate_functor,
)


def test_single_object_single_identity_is_terminal():
    c = validate_category(["o"], {})
    assert len(c.objects) == 1 and len(c.arrows) == 1
    assert find_isomorphism(c, terminal()) is not None


def test_nonassociative_table_rejected():
    # one object, arrows e, f, g with a table that is closed but not associative
    arrows = {"f": ("o", "o"), "g": ("o", "o")}
    comp = {("f", "f"): "g", ("g", "f"): "f", ("f", "g"): "g", ("g", "g"): "g"}
    with pytest.raises(AssociativityViolation):
        validate_category(["o"], arrows, None, comp)


def test_interval_two_from_raw_table():
    arrows = {"a": (0, 1), "b": (1, 2), "ba": (0, 2)}
    c = validate_category([0, 1, 2], arrows, None, {("b", "a"): "ba"})
    assert (len(c.objects), len(c.arrows)) == (3, 6)
    # object triples x <= y <= z, i.e. composable pairs: 10 for [2]
    assert len(list(c.composable_pairs())) == 10
    assert sum(len(oracles.composable_sequences(c, 2, a, b)) for a in c.objects for b in c.objects) == 10
    # composable arrow triples, identities included
    assert sum(len(oracles.composable_sequences(c, 3, a, b)) for a in c.objects for b in c.objects) == 15


def test_coarse_sizes():
    assert find_isomorphism(coarse(["x"]), terminal()) is not None
    assert len(coarse("ab").arrows) == 4
    c3 = coarse("abc")
    assert len(c3.arrows) == 9 and c3.is_groupoid()


def test_interval_sizes():
    assert find_isomorphism(interval(0), terminal()) is not None
    c = interval(2)
    assert (len(c.objects), len(c.arrows)) == (3, 6)
    assert c.hom(2, 1) == ()


@pytest.mark.parametrize("n", range(5))
def test_nerve_of_terminal_is_single_chain(n):
    assert len(nerve_level(terminal(), n, "o", "o")) == 1


def test_nerve_counts_against_brute_force():
    c = coarse("abc")
    assert len(nerve_level(c, 2, "a", "b")) == 3
    assert len(nerve_level(interval(1), 1, 0, 1)) == 1
    for n in range(4):
        for a in c.objects:
            for b in c.objects:
                assert sorted(nerve_level(c, n, a, b)) == sorted(oracles.composable_sequences(c, n, a, b))


def test_nerve_unknown_object():
    with pytest.raises(UnknownObject):
        nerve_level(terminal(), 1, "o", "zzz")


def test_elements_of_constant_point():
    c = coarse("ab")
    d = SetValuedDiagram(c, {x: ("*",) for x in c.objects}, {a: {"*": "*"} for a in c.arrows})
    plain = elements(d)
    assert len(plain.arrows) == len(c.arrows)
    squashed = elements(d, posetal_quotient=True)
    assert squashed.is_posetal() and len(squashed.objects) == 2


def test_elements_of_empty_fibers():
    c = interval(1)
    d = SetValuedDiagram(c, {0: (), 1: ()}, {a: {} for a in c.arrows})
    assert elements(d).objects == ()


def test_elements_rejects_partial_action():
    c = interval(1)
    d = SetValuedDiagram(c, {0: ("p",), 1: ("q",)}, {(0, 1): {}})
    with pytest.raises(NonFunctorialAction):
        elements(d)


def test_derive_laws():
    c = interval(2)
    assert find_isomorphism(derive(derive(c, "opposite"), "opposite"), c) is not None
    assert find_isomorphism(derive(terminal(), "product", c), c) is not None
    s = derive(interval(1), "coproduct", coarse("ab"))
    assert (len(s.objects), len(s.arrows)) == (4, 3 + 4)


def test_interior():
    g = coarse("abc")
    assert len(interior(g).arrows) == len(g.arrows)
    core = interior(interval(2))
    assert len(core.arrows) == 3
    assert find_isomorphism(core, discrete([0, 1, 2])) is not None
    assert all(oracles.invertible(interval(2), a) == (a in core.arrows) for a in interval(2).arrows)


def test_functor_examples():
    c = interval(2)
    validate_functor(c, c, {x: x for x in c.objects}, {a: a for a in c.arrows})
    constant_functor(c, coarse("ab"), "a")
    # target with two parallel arrows 0 -> 2; the composite is p, not q
    t = validate_category(
        [0, 1, 2],
        {"a": (0, 1), "b": (1, 2), "p": (0, 2), "q": (0, 2)},
        None,
        {("b", "a"): "p"},
    )
    amap = {(0, 0): t.identity(0), (1, 1): t.identity(1), (2, 2): t.identity(2)}
    amap.update({(0, 1): "a", (1, 2): "b", (0, 2): "q"})
    with pytest.raises(CompositionNotPreserved):
        validate_functor(c, t, {0: 0, 1: 1, 2: 2}, amap)
    amap[(0, 2)] = "p"
    validate_functor(c, t, {0: 0, 1: 1, 2: 2}, amap)


@pytest.mark.parametrize("src,tgt", [(interval(1), coarse("ab")), (interval(2), interval(1)), (coarse("ab"), interval(2))])
def test_enumerate_functors_matches_brute_force(src, tgt):
    got = list(enumerate_functors(src, tgt))
    assert len(got) == len(oracles.functors(src, tgt))


def test_transitive_closure_small():
    rel = transitive_closure({1, 2, 3}, {(1, 2), (2, 3)})
    assert (1, 3) in rel and (3, 1) not in rel


@given(st.integers(min_value=0, max_value=4))
def test_identity_functor_valid(n):
    c = interval(n)
    f = identity_functor(c)
    assert all(f.amap[a] == a for a in c.arrows)


@given(st.lists(st.sampled_from("abcd"), min_size=1, max_size=4, unique=True))
def test_opposite_is_involution_on_coarse(xs):
    c = coarse(xs)
    assert derive(derive(c, "opposite"), "opposite") == c


@given(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=3))
def test_product_counts(m, n):
    p = derive(interval(m), "product", interval(n))
    assert len(p.objects) == (m + 1) * (n + 1)
    assert len(p.arrows) == len(interval(m).arrows) * len(interval(n).arrows)
