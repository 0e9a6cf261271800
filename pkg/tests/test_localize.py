import pytest
from hypothesis import given, strategies as st

import oracles
from pathcat.bicat import (
    STAR,
    canonical_bases,
    quantale_monoidal,
    spread_monoidal,
    suspend_monoidal,
    validate_bicategory,
)
from pathcat.enrichment import QuantaleBase, metric_enrichment, posetal_path_object
from pathcat.errors import NotSegal, OreViolation
from pathcat.fincat import (
    coarse,
    derive,
    enumerate_functors,
    find_isomorphism,
    interval,
    preorder_category,
    terminal,
    transitive_closure,
    validate_category,
)
from pathcat.localize import (
    check_fractions,
    check_induced_composition,
    curry_adjunction,
    default_test_targets,
    localize,
    localize_fractions,
    localize_posetal,
    product_localization_check,
    reduce_point,
    secondary_localization,
    uncurry,
    verify_universal_property,
)


def inverting_count(src, targets):
    """Functors out of ``src`` sending every arrow to an invertible one."""
    n = 0
    for t in targets:
        for om, am in oracles.functors(src, t):
            if all(oracles.invertible(t, am[a]) for a in src.arrows):
                n += 1
    return n


def test_interval_inverted_is_coarse():
    c = interval(1)
    loc = localize(c, c.arrows)
    assert loc.method == "posetal"
    assert all(len(loc.category.hom(x, y)) == 1 for x in (0, 1) for y in (0, 1))
    assert find_isomorphism(loc.category, coarse([0, 1])) is not None


def test_universal_property_of_inverted_interval():
    c = interval(1)
    loc = localize(c, c.arrows)
    targets = default_test_targets()
    rep = verify_universal_property(loc.functor, loc.S, targets)
    assert rep.tested == sum(len(oracles.functors(c, t)) for t in targets) == 27
    assert rep.inverting == inverting_count(c, targets) == 23
    # each inverting functor factors once, so they match functors out of the localization
    assert rep.inverting == sum(len(oracles.functors(loc.category, t)) for t in targets)


def idempotent_monoid():
    return validate_category(["*"], {"1": ("*", "*"), "e": ("*", "*")}, {"*": "1"}, {("e", "e"): "e"})


def test_fractions_collapse_an_idempotent():
    c = idempotent_monoid()
    sys = check_fractions(c, {"1", "e"})
    assert sys.ok
    loc = localize_fractions(sys)
    assert loc.method == "fractions"
    assert len(loc.category.arrows) == 1
    rep = verify_universal_property(loc.functor, sys.S)
    assert rep.inverting == inverting_count(c, default_test_targets())


def test_ore_failure_on_a_span():
    c = validate_category([0, 1, 2], {"f": (0, 1), "g": (0, 2)})
    sys = check_fractions(c, {"f", c.identity(0), c.identity(1), c.identity(2)})
    assert not sys.ore
    assert sys.failures[0][:2] == ("ore", "f")
    with pytest.raises(OreViolation):
        localize_fractions(sys)


def test_localizing_identities_changes_nothing():
    c = idempotent_monoid()
    loc = localize(c, [])
    assert loc.method == "identity" and loc.category is c


def test_curry_round_trip():
    c = interval(1)
    p = derive(c, "product", c)
    fs = list(enumerate_functors(p, c))
    # functors from the square to the arrow are its 6 down-sets
    assert len(fs) == len(oracles.functors(p, c)) == 6
    for f in fs:
        back = uncurry(curry_adjunction(f, c, c), p)
        assert back.omap == f.omap and back.amap == f.amap


def test_product_localization():
    c = interval(1)
    rep = product_localization_check(c, c.arrows, c, c.arrows)
    targets = default_test_targets()
    p = derive(c, "product", c)
    assert rep.tested == sum(len(oracles.functors(p, t)) for t in targets) == 134
    assert rep.inverting == inverting_count(p, targets) == 113
    singles = sum(len(oracles.functors(coarse("ab"), t)) for t in targets[:4])
    assert rep.bar_checks == singles**2 == 81


def test_secondary_localization_of_a_spread_base():
    m = spread_monoidal(quantale_monoidal(1), "UV")
    _, every = canonical_bases(m)
    sec = secondary_localization(every)
    assert validate_bicategory(sec.bicategory) is sec.bicategory
    hom = sec.bicategory.hom("U", "V")
    assert all(len(hom.hom(x, y)) == 1 for x in hom.objects for y in hom.objects)
    # 2-cells per hom: 6; pairs of homs composing: 2^3
    assert check_induced_composition(sec, m) == 6 * 6 * 8


def test_reduce_metric_point():
    d = {(x, y): (0 if x == y else 1) for x in "abc" for y in "abc"}
    res = metric_enrichment("abc", d, QuantaleBase(2), max_len=2)
    out = reduce_point(res.point)
    assert out.segal and out.strict


def test_reduce_rejects_non_segal():
    iso, _ = canonical_bases(suspend_monoidal(quantale_monoidal(5, "le")))
    po = posetal_path_object(terminal(), 2, iso, {"o": STAR}, lambda s: 0 if s.n == 0 else 2)
    # F[2] = 2 is strictly below F[1] + F[1] = 4
    assert not po.segal
    with pytest.raises(NotSegal):
        reduce_point(po)


@st.composite
def preorders_with_subsets(draw):
    objs = [0, 1, 2]
    rel = draw(st.sets(st.tuples(st.sampled_from(objs), st.sampled_from(objs))))
    closed = transitive_closure(objs, rel | {(x, x) for x in objs})
    c = preorder_category(objs, closed)
    s = draw(st.sets(st.sampled_from(sorted(c.arrows))))
    return c, s


@given(preorders_with_subsets())
def test_posetal_localization_matches_reachability(data):
    c, s = data
    loc = localize_posetal(c, s)
    rel = [c.ends(a) for a in c.arrows]
    inverted = [c.ends(a) for a in s]
    assert len(loc.category.arrows) == oracles.preorder_localization_size(c.objects, rel, inverted)
    small = default_test_targets()[:4]
    rep = verify_universal_property(loc.functor, s, small)
    want = sum(
        1
        for t in small
        for om, am in oracles.functors(c, t)
        if all(oracles.invertible(t, am[a]) for a in s)
    )
    assert rep.inverting == want
