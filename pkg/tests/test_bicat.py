import pytest
from hypothesis import given, strategies as st

import oracles
from pathcat.bicat import (
    INF,
    STAR,
    MonoidalCategory,
    abelian_delooping,
    bool_monoidal,
    canonical_bases,
    capped_add,
    compose_colax,
    discrete_monoid,
    identity_homomorphism,
    identity_modification,
    identity_transformation,
    invertible_cells,
    monoidal_of_hom,
    quantale_monoidal,
    spread_monoidal,
    suspend_monoidal,
    unique_cell,
    validate_base,
    validate_bicategory,
    validate_modification,
    validate_transformation,
)
from pathcat.enrichment import validate_enriched, enriched_to_path
from pathcat.errors import (
    MissingInvertible,
    ModificationAxiomViolation,
    MonoidalAxiomViolation,
    ThreeForTwoViolation,
    TransformationAxiomViolation,
)
from pathcat.fincat import coarse, preorder_category, terminal


def z2_monoid():
    return discrete_monoid([0, 1], {(a, b): (a + b) % 2 for a in (0, 1) for b in (0, 1)}, 0)


def test_strict_data_validates():
    b = spread_monoidal(bool_monoidal(), "ab")
    assert validate_bicategory(b) is b
    assert len(b.objects) == 2


def test_suspensions_validate():
    for m in (bool_monoidal(), z2_monoid(), quantale_monoidal(3), quantale_monoidal(2, "le"), abelian_delooping(3)):
        b = suspend_monoidal(m)
        assert b.objects == (STAR,)


def test_quantale_hom_is_posetal():
    b = suspend_monoidal(quantale_monoidal(4))
    hom = b.hom(STAR, STAR)
    assert hom.is_posetal()
    assert len(hom.objects) == 6
    # x -> y iff x >= y: 6 + 5 + ... + 1 cells
    assert len(hom.arrows) == 21


def test_perturbed_associator_rejected():
    m = abelian_delooping(3)
    # alpha = 1 with rho = 1 keeps the triangle but breaks the pentagon
    bad = MonoidalCategory(m.category, m.tensor_obj, m.tensor_arr, "x", {("x", "x", "x"): 1}, {}, {"x": 1})
    with pytest.raises(MonoidalAxiomViolation) as err:
        suspend_monoidal(bad)
    assert "PentagonViolation" in err.value.detail


def test_hom_round_trip():
    m = quantale_monoidal(2)
    back = monoidal_of_hom(suspend_monoidal(m), STAR)
    assert back.category == m.category
    assert dict(back.tensor_obj) == dict(m.tensor_obj)
    assert dict(back.tensor_arr) == dict(m.tensor_arr)
    assert back.unit == m.unit


def test_identity_homomorphism_is_strict():
    for b in (suspend_monoidal(quantale_monoidal(2)), spread_monoidal(bool_monoidal(), "ab")):
        f = identity_homomorphism(b)
        assert f.strict


def _trivial_point(shape, n):
    """The unique enriched category over the Z/2 delooping on ``shape``'s
    objects, as a path-object."""
    b = suspend_monoidal(abelian_delooping(2))
    objs = list(shape.objects)
    e = validate_enriched(
        b,
        objs,
        {a: STAR for a in objs},
        {(a, c): "x" for a in objs for c in objs},
        {a: 0 for a in objs},
        {(a, c, d): 0 for a in objs for c in objs for d in objs},
    )
    return enriched_to_path(e, n)


def test_identity_transformation_and_modification():
    po = _trivial_point(coarse("ab"), 2)
    s = identity_transformation(po.morphism)
    identity_modification(s)
    # a modification whose components are already invertible, between equal transformations
    validate_modification(s, s, {a: 0 for a in s.comp1})


def test_incompatible_component_family_rejected():
    po = _trivial_point(coarse("ab"), 2)
    s = identity_transformation(po.morphism)
    comp2 = dict(s.comp2)
    # constant 1 on the loops at a: natural, but not compatible with concatenation
    for t in comp2:
        if t.src == t.dst == "a":
            comp2[t] = 1
    with pytest.raises(TransformationAxiomViolation):
        validate_transformation(po.morphism, po.morphism, s.comp1, comp2)


def test_mismatched_modification_component():
    po = _trivial_point(coarse("ab"), 2)
    s = identity_transformation(po.morphism)
    with pytest.raises(ModificationAxiomViolation):
        validate_modification(s, s, {"a": 1, "b": 0})


def test_canonical_bases():
    for m in (quantale_monoidal(3), quantale_monoidal(2, "le"), bool_monoidal()):
        b = suspend_monoidal(m)
        iso, every = canonical_bases(b)
        assert iso.W <= every.W
        assert every.W == frozenset(b.cells2())
    strict = suspend_monoidal(z2_monoid())
    iso, every = canonical_bases(strict)
    assert iso.W == every.W


def test_posetal_smallest_base_is_iso_pairs():
    # two objects with cells both ways: a monoidal preorder with non-identity isos
    cat = preorder_category([0, 1], {(0, 1), (1, 0)})
    to = {(x, y): max(x, y) for x in (0, 1) for y in (0, 1)}
    ta = {(p, q): (max(p[0], q[0]), max(p[1], q[1])) for p in cat.arrows for q in cat.arrows}
    b = suspend_monoidal(MonoidalCategory(cat, to, ta, 0))
    iso, _ = canonical_bases(b)
    hom = b.hom(STAR, STAR)
    assert iso.W == frozenset(a for a in hom.arrows if oracles.invertible(hom, a))
    assert len(iso.W) == 4


def test_missing_invertible_rejected():
    b = suspend_monoidal(quantale_monoidal(2))
    w = set(invertible_cells(b))
    w.discard(next(iter(sorted(w, key=str))))
    with pytest.raises(MissingInvertible):
        validate_base(b, w)


def test_three_for_two_in_a_three_chain():
    b = suspend_monoidal(quantale_monoidal(1))  # hom is the chain inf > 1 > 0
    w = set(invertible_cells(b)) | {(INF, 1), (1, 0)}
    with pytest.raises(ThreeForTwoViolation):
        validate_base(b, w)
    validate_base(b, w | {(INF, 0)})


def test_unique_cell():
    b = suspend_monoidal(quantale_monoidal(3))
    assert unique_cell(b, 3, 1) == (3, 1)
    assert unique_cell(b, 1, 3) is None
    d = suspend_monoidal(abelian_delooping(2))
    assert unique_cell(d, "x", "x") is None


def test_spread_has_one_hom_per_pair():
    b = spread_monoidal(quantale_monoidal(1), "UV")
    assert len(list(b.cells1())) == 4 * 3
    assert b.tensor1(("U", "V", 1), ("U", "U", 0)) == ("U", "V", 1)


def test_compose_with_identity():
    b = suspend_monoidal(quantale_monoidal(2))
    f = identity_homomorphism(b)
    g = compose_colax(f, f)
    assert dict(g.map1) == dict(f.map1)


@given(st.sampled_from([0, 1, 2, 3, INF]), st.sampled_from([0, 1, 2, 3, INF]), st.sampled_from([0, 1, 2, 3, INF]))
def test_capped_add_is_associative(x, y, z):
    assert capped_add(capped_add(x, y, 3), z, 3) == capped_add(x, capped_add(y, z, 3), 3)


@given(st.integers(0, 3), st.sampled_from(["ge", "le"]))
def test_every_quantale_suspends_with_both_bases(k, order):
    b = suspend_monoidal(quantale_monoidal(k, order))
    iso, every = canonical_bases(b)
    assert len(iso.W) == k + 2
