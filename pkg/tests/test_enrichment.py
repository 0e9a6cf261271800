from itertools import product

import pytest
from hypothesis import given, strategies as st

import oracles
from pathcat.bicat import STAR, bool_monoidal, canonical_bases, quantale_monoidal, spread_monoidal, suspend_monoidal
from pathcat.enrichment import (
    QuantaleBase,
    base_change,
    coboundary,
    cocycle_check,
    collapse_to_terminal,
    cyclic_additive,
    cyclic_multiplicative,
    enriched_to_path,
    foliation,
    group_bicategory,
    group_homomorphism,
    homotopy_monoid_view,
    identity_premorphism,
    matrix_group,
    metric_enrichment,
    path_to_lax,
    posetal_path_object,
    posetal_premorphism,
    restrict,
    simplicial_correspondence,
    strict_to_enriched,
    validate_enriched,
    validate_premorphism,
    vertex_functor,
)
from pathcat.errors import (
    CellTypeMismatch,
    CocycleViolation,
    ShapeMismatch,
    TriangleViolation,
    TruncationExceeded,
    UnitViolation,
    ZeroDiagonalViolation,
)
from pathcat.fincat import coarse, constant_functor, identity_functor, nerve_level, terminal

METRIC3 = {("a", "b"): 1, ("b", "a"): 1, ("b", "c"): 2, ("c", "b"): 2, ("a", "c"): 3, ("c", "a"): 3}


def metric3():
    d = dict(METRIC3)
    d.update({(x, x): 0 for x in "abc"})
    return d


def test_metric_round_trip_is_exact():
    res = metric_enrichment("abc", metric3(), QuantaleBase(5), max_len=3)
    assert res.point.segal and res.point.strict
    back = strict_to_enriched(res.point)
    assert back.same_data(res.enriched)


def test_metric_rejections():
    d = metric3()
    d[("a", "c")] = 4  # 4 > 1 + 2
    assert not oracles.triangle_ok("abc", d)
    with pytest.raises(TriangleViolation):
        metric_enrichment("abc", d, QuantaleBase(5))
    d = metric3()
    d[("b", "b")] = 1
    with pytest.raises(ZeroDiagonalViolation):
        metric_enrichment("abc", d, QuantaleBase(5))


def test_metric_pullback_along_a_collapse():
    res = metric_enrichment("xy", metric3(), QuantaleBase(5), pullback={"x": "a", "y": "a"})
    assert set(res.distances.values()) == {0}


def test_two_element_monoid_round_trip():
    # {0, inf} under capped addition: one object, hom 0
    m = suspend_monoidal(quantale_monoidal(0))
    e = validate_enriched(m, ["o"], {"o": STAR}, {("o", "o"): 0}, {"o": (0, 0)}, {("o", "o", "o"): (0, 0)})
    po = enriched_to_path(e, 3)
    assert strict_to_enriched(po).same_data(e)
    view = homotopy_monoid_view(po)
    assert view.strict and view.segal
    assert set(view.levels.values()) == {0}


def test_bool_enriched_on_two_objects():
    m = suspend_monoidal(bool_monoidal())
    objs = ["a", "b"]

    def build(hom):
        return validate_enriched(
            m,
            objs,
            {x: STAR for x in objs},
            hom,
            {x: m.id2("true") for x in objs},
            {(x, y, z): m.id2(hom[(x, z)]) for x, y, z in product(objs, repeat=3)},
        )

    e = build({(x, y): "true" for x in objs for y in objs})
    po = enriched_to_path(e, 3)
    assert po.shape == coarse("ab")
    assert strict_to_enriched(po).same_data(e)
    # a false hom would need a cell false => true when composed with its reverse
    with pytest.raises(CellTypeMismatch):
        build({("a", "a"): "true", ("b", "b"): "true", ("a", "b"): "false", ("b", "a"): "true"})


def test_polyad_over_two_objects_round_trip():
    b = spread_monoidal(quantale_monoidal(1), "UV")
    objs = ["p", "q"]
    over = {"p": "U", "q": "V"}
    hom = {(x, y): (over[x], over[y], 0) for x in objs for y in objs}
    unit = {x: (over[x], over[x], (0, 0)) for x in objs}
    comp = {(x, y, z): (over[x], over[z], (0, 0)) for x, y, z in product(objs, repeat=3)}
    e = validate_enriched(b, objs, over, hom, unit, comp)
    po = enriched_to_path(e, 3)
    assert strict_to_enriched(po).same_data(e)
    leaf = foliation(po, "U")
    assert leaf.shape.objects == ("p",)


def test_path_to_lax_needs_length_two():
    res = metric_enrichment("ab", metric3(), QuantaleBase(5), max_len=1)
    with pytest.raises(ShapeMismatch):
        path_to_lax(res.point)


def test_cocycle_z3():
    g = cyclic_additive(3)
    f = coboundary(g, {"a": 0, "b": 1, "c": 2})
    assert oracles.cocycle_ok("abc", f, g.mult)
    res = cocycle_check("abc", g, f)
    assert res.point.strict
    bad = dict(f)
    bad[("a", "c")] = (bad[("a", "c")] + 1) % 3
    assert not oracles.cocycle_ok("abc", bad, g.mult)
    with pytest.raises(CocycleViolation):
        cocycle_check("abc", g, bad)
    bad = dict(f)
    bad[("b", "b")] = 1
    with pytest.raises(UnitViolation):
        cocycle_check("abc", g, bad)


def test_exponential_transport_preserves_the_cocycle():
    g = cyclic_additive(4)
    h, expo = cyclic_multiplicative(4)
    assert h.name == "U(5)" and expo == {0: 1, 1: 2, 2: 4, 3: 3}
    f = coboundary(g, {"a": 0, "b": 1, "c": 3})
    res = cocycle_check("abc", g, f)
    bh = group_bicategory(h)
    lmor = group_homomorphism(g, h, expo, res.bicategory, bh)
    moved = base_change(res.point, lmor, canonical_bases(bh)[0])
    back = strict_to_enriched(moved)
    assert oracles.cocycle_ok("abc", dict(back.hom), h.mult)
    assert all(back.hom[k] == expo[f[k]] for k in f)


def test_formal_powers_when_not_prime():
    h, expo = cyclic_multiplicative(5)
    assert expo[2] == "z^2" and len(h.elements) == 5


def test_matrix_groups():
    d4 = matrix_group([(0, -1, 1, 0), (1, 0, 0, -1)])
    assert len(d4.elements) == 8
    sl = matrix_group([(1, 1, 0, 1), (0, -1, 1, 0)], modulus=3)
    want = {m for m in product(range(3), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % 3 == 1}
    assert set(sl.elements) == want and len(want) == 24
    assert all(sl.mult[(x, y)] == tuple(v % 3 for v in oracles.matmul(x, y)) for x in sl.elements for y in sl.elements)
    with pytest.raises(TruncationExceeded):
        matrix_group([(1, 1, 0, 1)], limit=50)


def test_collapse_keeps_segal():
    res = metric_enrichment("abc", metric3(), QuantaleBase(5), max_len=2)
    lmor, base = collapse_to_terminal(res.point.target)
    out = base_change(res.point, lmor, base)
    assert out.segal


def test_restrict_along_a_constant():
    res = metric_enrichment("abc", metric3(), QuantaleBase(5), max_len=2)
    r = constant_functor(terminal(), coarse("abc"), "b")
    one = restrict(res.point, r)
    assert one.shape == terminal()
    assert homotopy_monoid_view(one).strict


def test_vertex_functor_correspondence():
    y = vertex_functor("ab", 4)
    corr = simplicial_correspondence(y)
    assert corr.roundtrip
    c = coarse("ab")
    for n in range(5):
        nerve = sum(len(nerve_level(c, n, a, b)) for a in "ab" for b in "ab")
        assert len(corr.simplicial.levels[n]) == nerve == 2 ** (n + 1)


def _polyads():
    b = spread_monoidal(quantale_monoidal(1), "UV")
    _, every = canonical_bases(b)
    f = posetal_path_object(terminal(), 2, every, {"o": "U"}, lambda s: ("U", "U", 0))
    g = posetal_path_object(terminal(), 2, every, {"o": "V"}, lambda s: ("V", "V", 0))
    return b, f, g


def test_premorphism_between_objects_over_different_bases():
    b, f, g = _polyads()
    sigma = identity_functor(terminal())
    comp2 = {t: ("U", "V", (0, 0)) for t in f.morphism.map1}
    pre = validate_premorphism(sigma, {"o": ("U", "V", 0)}, comp2, f, g)
    assert not pre.is_morphism
    comp2 = {t: ("U", "V", (1, 1)) for t in f.morphism.map1}
    assert not validate_premorphism(sigma, {"o": ("U", "V", 1)}, comp2, f, g).is_morphism
    # a component 2-cell whose endpoints do not match the component 1-cell
    comp2 = {t: ("U", "V", (1, 0)) for t in f.morphism.map1}
    with pytest.raises(CellTypeMismatch):
        validate_premorphism(sigma, {"o": ("U", "V", 1)}, comp2, f, g)


def test_identity_and_posetal_premorphisms():
    _, f, _ = _polyads()
    assert identity_premorphism(f).is_morphism
    assert posetal_premorphism(identity_functor(terminal()), f, f).is_morphism


@st.composite
def small_metrics(draw):
    vals = st.sampled_from([0, 1, 2, 3])
    d = {(x, y): (0 if x == y else draw(vals)) for x in "abc" for y in "abc"}
    return d


@given(small_metrics())
def test_metric_accepted_iff_triangle(d):
    if oracles.triangle_ok("abc", d):
        res = metric_enrichment("abc", d, QuantaleBase(3), max_len=2)
        assert strict_to_enriched(res.point).same_data(res.enriched)
    else:
        with pytest.raises(TriangleViolation):
            metric_enrichment("abc", d, QuantaleBase(3), max_len=2)


@given(st.lists(st.integers(0, 4), min_size=3, max_size=3))
def test_coboundaries_are_cocycles(labels):
    g = cyclic_additive(5)
    f = coboundary(g, dict(zip("abc", labels)))
    assert oracles.cocycle_ok("abc", f, g.mult)
    cocycle_check("abc", g, f, max_len=2)
