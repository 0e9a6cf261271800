import pytest
from hypothesis import given, strategies as st

from pathcat.bicat import INF, STAR, canonical_bases, quantale_monoidal, suspend_monoidal
from pathcat.bridge import (
    C_TAG,
    bimodule_actions,
    bridge_morphisms,
    bridge_of_distributor,
    distributor_of_bridge,
    identity_bimodule_morphism,
    pullback_bimodule,
    thin_bridge,
    validate_bimodule,
    validate_distributor,
    validate_rigid_bridge,
)
from pathcat.enrichment import posetal_path_object
from pathcat.errors import ActionAssociativityViolation, BoundaryMismatch, NotRigid, OrientationViolation
from pathcat.fincat import (
    FinFunctor,
    coarse,
    discrete,
    find_isomorphism,
    full_subcategory,
    identity_functor,
    interval,
    terminal,
)


def two_by_two():
    """C discrete {p, q}, D the arrow 0 -> 1; one fiber of size two."""
    c, d = discrete("pq"), interval(1)
    sets = {("p", 0): ("u", "v"), ("p", 1): ("w",), ("q", 0): (), ("q", 1): ("x", "y")}
    right = {((0, 1), "p", "u"): "w", ((0, 1), "p", "v"): "w"}
    for (a, b), vals in sets.items():
        for v in vals:
            right[(d.identity(b), a, v)] = v
    left = {(c.identity(a), b, v): v for (a, b), vals in sets.items() for v in vals}
    return validate_distributor(c, d, sets, left, right)


def test_two_by_two_round_trip():
    x = two_by_two()
    e = bridge_of_distributor(x)
    # 2 + 3 arrows on the sides plus one cross arrow per fiber element
    assert len(e.total.arrows) == 2 + 3 + 5
    assert distributor_of_bridge(e).same_data(x)
    again = bridge_of_distributor(distributor_of_bridge(e))
    assert find_isomorphism(again.total, e.total) is not None


def test_non_commuting_actions_rejected():
    c, d = interval(1), interval(1)
    sets = {(a, b): ("s", "t") for a in (0, 1) for b in (0, 1)}
    left = {(c.identity(a), b, v): v for a in (0, 1) for b in (0, 1) for v in "st"}
    right = {(d.identity(b), a, v): v for a in (0, 1) for b in (0, 1) for v in "st"}
    for b in (0, 1):
        left[((0, 1), b, "s")] = "s"
        left[((0, 1), b, "t")] = "s"
    for a in (0, 1):
        right[((0, 1), a, "s")] = "t"
        right[((0, 1), a, "t")] = "t"
    # going right then left lands on s, going left then right lands on t
    with pytest.raises(ActionAssociativityViolation):
        validate_distributor(c, d, sets, left, right)


def test_backward_arrow_is_an_orientation_violation():
    total = coarse("ab")
    left, inc_l = full_subcategory(total, ["a"])
    right, inc_r = full_subcategory(total, ["b"])
    with pytest.raises(OrientationViolation):
        validate_rigid_bridge(total, left, right, inc_l, inc_r)


def test_non_full_embedding_is_not_rigid():
    total = interval(1)
    left = discrete([0, 1])
    inc = FinFunctor(left, total, {0: 0, 1: 1}, {left.identity(0): (0, 0), left.identity(1): (1, 1)})
    right = discrete([])
    inc_r = FinFunctor(right, total, {}, {})
    # the arrow 0 -> 1 is missed, so the left side is not a full subcategory
    with pytest.raises(NotRigid):
        validate_rigid_bridge(total, left, right, inc, inc_r)


def test_thin_bridge_is_terminal():
    x = two_by_two()
    e = bridge_of_distributor(x)
    thin = thin_bridge(x.left_cat, x.right_cat)
    assert len(bridge_morphisms(e, thin)) == 1
    assert len(bridge_morphisms(thin, thin)) == 1
    # the other way round there is no morphism: (q, 0) is empty in e
    assert bridge_morphisms(thin, e) == []


def test_thin_bridge_shape():
    t = thin_bridge(terminal(), terminal())
    assert find_isomorphism(t.total, interval(1)) is not None


@st.composite
def distributors(draw):
    """C discrete {p, q}, D the arrow 0 -> 1, fibers of size at most two and
    an arbitrary right action (a nonempty fiber over 0 needs one over 1)."""
    c, d = discrete("pq"), interval(1)
    sets = {}
    for a in "pq":
        top = draw(st.integers(0, 2))
        bottom = draw(st.integers(0, 2)) if top else 0
        sets[(a, 0)] = tuple(f"{a}0{i}" for i in range(bottom))
        sets[(a, 1)] = tuple(f"{a}1{i}" for i in range(top))
    right, left = {}, {}
    for a in "pq":
        for v in sets[(a, 0)]:
            right[((0, 1), a, v)] = draw(st.sampled_from(sets[(a, 1)]))
    for (a, b), vals in sets.items():
        for v in vals:
            right[(d.identity(b), a, v)] = v
            left[(c.identity(a), b, v)] = v
    return validate_distributor(c, d, sets, left, right)


@given(distributors())
def test_distributor_bridge_round_trip(x):
    e = bridge_of_distributor(x)
    assert distributor_of_bridge(e).same_data(x)
    assert len(bridge_morphisms(e, thin_bridge(x.left_cat, x.right_cat))) == 1


def _bimodule(cross_value=1, side_value=0):
    m = suspend_monoidal(quantale_monoidal(1))
    _, every = canonical_bases(m)
    e = thin_bridge(terminal(), terminal())

    def psi_image(s):
        crossing = s.src[0] != s.dst[0]
        return cross_value if crossing else side_value

    psi = posetal_path_object(e.total, 2, every, {x: STAR for x in e.total.objects}, psi_image)
    left = posetal_path_object(terminal(), 2, every, {"o": STAR}, lambda s: side_value)
    right = posetal_path_object(terminal(), 2, every, {"o": STAR}, lambda s: side_value)
    return e, psi, left, right, every


def test_bimodule_and_identity_morphism():
    e, psi, left, right, _ = _bimodule()
    b = validate_bimodule(e, psi, left, right)
    identity_bimodule_morphism(b)
    acts = bimodule_actions(b)
    assert len(acts.left) == 1 and len(acts.right) == 1
    (key,) = acts.left
    assert key[3][0] == C_TAG
    pulled = pullback_bimodule(b, identity_functor(e.total), e)
    assert pulled.psi.segal


def test_bimodule_boundary_mismatch():
    e, psi, _, _, every = _bimodule()
    far = posetal_path_object(terminal(), 2, every, {"o": STAR}, lambda s: INF)
    with pytest.raises(BoundaryMismatch):
        validate_bimodule(e, psi, far, far)
