"""Rigid bridges between two shapes, distributors, and bimodules.

A rigid bridge from ``C`` to ``D`` is a category ``E`` on the disjoint
union of the objects, containing ``C`` and ``D`` fully, with arrows only
running from the ``C`` side to the ``D`` side.  Objects are tagged
``("C", a)`` / ``("D", b)``; arrows ``("C", f)``, ``("D", g)`` and cross
arrows ``("X", a, b, x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Any, Iterator, Mapping

from ._util import fmt, ordered
from .bicat import Bicategory, ColaxMorphism, compose_colax
from .enrichment import (
    LaxData,
    PathObject,
    Premorphism,
    check_path_object,
    path_to_lax,
    restrict,
    validate_premorphism,
)
from .errors import (
    ActionAssociativityViolation,
    BoundaryMismatch,
    NonSegalCell,
    NotRigid,
    OrientationViolation,
    PathcatError,
)
from .fincat import FinCategory, FinFunctor, enumerate_functors, identity_functor, validate_category
from .pathcat import path_functor

C_TAG, D_TAG, X_TAG = "C", "D", "X"


@dataclass(frozen=True, eq=False)
class RigidBridge:
    total: FinCategory
    left: FinCategory
    right: FinCategory
    inc_left: FinFunctor
    inc_right: FinFunctor

    def cross(self, a: Any, b: Any) -> tuple:
        """Cross arrows ``("C", a) → ("D", b)``."""
        return self.total.hom((C_TAG, a), (D_TAG, b))


def _fully_faithful(f: FinFunctor) -> bool:
    src, tgt = f.source, f.target
    for x in src.objects:
        for y in src.objects:
            imgs = {f.amap[a] for a in src.hom(x, y)}
            if len(imgs) != len(src.hom(x, y)) or imgs != set(tgt.hom(f.omap[x], f.omap[y])):
                return False
    return True


def validate_rigid_bridge(
    total: FinCategory, left: FinCategory, right: FinCategory, inc_left: FinFunctor, inc_right: FinFunctor
) -> RigidBridge:
    for name, inc in (("left", inc_left), ("right", inc_right)):
        if len(set(inc.omap.values())) != len(inc.source.objects):
            raise NotRigid(name, detail="embedding is not injective on objects")
        if not _fully_faithful(inc):
            raise NotRigid(name, detail="embedding is not fully faithful")
    lo, ro = set(inc_left.omap.values()), set(inc_right.omap.values())
    if lo & ro or lo | ro != set(total.objects):
        raise NotRigid(detail="objects are not the disjoint union of both sides")
    for a in ordered(left.objects):
        for b in ordered(right.objects):
            back = total.hom(inc_right.omap[b], inc_left.omap[a])
            if back:
                raise OrientationViolation(b, a, detail=f"{len(back)} arrow(s) point backwards")
    return RigidBridge(total, left, right, inc_left, inc_right)


@dataclass(frozen=True, eq=False)
class Distributor:
    """``X(B)(A)`` for ``A`` in ``C`` and ``B`` in ``D``, contravariant in ``A``.

    ``left[(f, b, x)]`` is ``X(b)(f)(x)`` for ``f: a → a'`` and ``x ∈ X(b)(a')``;
    ``right[(g, a, x)]`` is ``X(g)_a(x)`` for ``g: b → b'`` and ``x ∈ X(b)(a)``.
    """

    left_cat: FinCategory
    right_cat: FinCategory
    sets: Mapping[tuple, tuple]
    left: Mapping[tuple, Any]
    right: Mapping[tuple, Any]

    def same_data(self, other: "Distributor") -> bool:
        return (
            {k: set(v) for k, v in self.sets.items()} == {k: set(v) for k, v in other.sets.items()}
            and dict(self.left) == dict(other.left)
            and dict(self.right) == dict(other.right)
        )


def validate_distributor(c: FinCategory, d: FinCategory, sets: Mapping, left: Mapping, right: Mapping) -> Distributor:
    """Check totality, functoriality of both actions and that they commute."""
    xs = {(a, b): tuple(sets.get((a, b), ())) for a in c.objects for b in d.objects}
    for f in c.arrows:
        a, a2 = c.ends(f)
        for b in d.objects:
            for x in xs[(a2, b)]:
                if left.get((f, b, x)) not in xs[(a, b)]:
                    raise ActionAssociativityViolation(f, b, x, detail="left action missing or out of range")
    for g in d.arrows:
        b, b2 = d.ends(g)
        for a in c.objects:
            for x in xs[(a, b)]:
                if right.get((g, a, x)) not in xs[(a, b2)]:
                    raise ActionAssociativityViolation(g, a, x, detail="right action missing or out of range")
    for (a, b), vals in xs.items():
        for x in vals:
            if left[(c.identity(a), b, x)] != x or right[(d.identity(b), a, x)] != x:
                raise ActionAssociativityViolation(a, b, x, detail="identity does not act trivially")
    for f2, f in c.composable_pairs():
        a = c.src(f)
        a3 = c.dst(f2)
        for b in d.objects:
            for x in xs[(a3, b)]:
                if left[(f, b, left[(f2, b, x)])] != left[(c.compose(f2, f), b, x)]:
                    raise ActionAssociativityViolation(f2, f, x, detail="left action not functorial")
    for g2, g in d.composable_pairs():
        b = d.src(g)
        for a in c.objects:
            for x in xs[(a, b)]:
                if right[(g2, a, right[(g, a, x)])] != right[(d.compose(g2, g), a, x)]:
                    raise ActionAssociativityViolation(g2, g, x, detail="right action not functorial")
    for f in c.arrows:
        a, a2 = c.ends(f)
        for g in d.arrows:
            b, b2 = d.ends(g)
            for x in xs[(a2, b)]:
                if right[(g, a, left[(f, b, x)])] != left[(f, b2, right[(g, a2, x)])]:
                    raise ActionAssociativityViolation(f, g, x, detail="actions do not commute")
    return Distributor(c, d, xs, dict(left), dict(right))


def bridge_of_distributor(x: Distributor) -> RigidBridge:
    """``E(A, B) = X(B)(A)``; composition with ``C`` and ``D`` arrows is the
    left and right action."""
    c, d = x.left_cat, x.right_cat
    objects = [(C_TAG, a) for a in c.objects] + [(D_TAG, b) for b in d.objects]
    arrows: dict = {}
    for f in c.arrows:
        arrows[(C_TAG, f)] = ((C_TAG, c.src(f)), (C_TAG, c.dst(f)))
    for g in d.arrows:
        arrows[(D_TAG, g)] = ((D_TAG, d.src(g)), (D_TAG, d.dst(g)))
    for (a, b), vals in x.sets.items():
        for v in vals:
            arrows[(X_TAG, a, b, v)] = ((C_TAG, a), (D_TAG, b))
    comp = {}
    for f2, f in c.composable_pairs():
        comp[((C_TAG, f2), (C_TAG, f))] = (C_TAG, c.compose(f2, f))
    for g2, g in d.composable_pairs():
        comp[((D_TAG, g2), (D_TAG, g))] = (D_TAG, d.compose(g2, g))
    for (a2, b), vals in x.sets.items():
        for v in vals:
            for f in c.into(a2):
                a = c.src(f)
                comp[((X_TAG, a2, b, v), (C_TAG, f))] = (X_TAG, a, b, x.left[(f, b, v)])
            for g in d.out_of(b):
                comp[((D_TAG, g), (X_TAG, a2, b, v))] = (X_TAG, a2, d.dst(g), x.right[(g, a2, v)])
    ids = {(C_TAG, a): (C_TAG, c.identity(a)) for a in c.objects}
    ids.update({(D_TAG, b): (D_TAG, d.identity(b)) for b in d.objects})
    try:
        total = validate_category(objects, arrows, ids, comp)
    except PathcatError as e:
        raise ActionAssociativityViolation(*e.where, detail=f"{e.code}: {e.detail}") from e
    inc_c = FinFunctor(c, total, {a: (C_TAG, a) for a in c.objects}, {f: (C_TAG, f) for f in c.arrows})
    inc_d = FinFunctor(d, total, {b: (D_TAG, b) for b in d.objects}, {g: (D_TAG, g) for g in d.arrows})
    return validate_rigid_bridge(total, c, d, inc_c, inc_d)


def _cross_label(arrow: Any) -> Any:
    if isinstance(arrow, tuple) and len(arrow) == 4 and arrow[0] == X_TAG:
        return arrow[3]
    return arrow


def distributor_of_bridge(e: RigidBridge) -> Distributor:
    """``X(B)(A) = E(A, B)``, acted on by pre- and post-composition."""
    c, d, t = e.left, e.right, e.total
    ic, id_ = e.inc_left, e.inc_right
    sets, label, arrow_of = {}, {}, {}
    for a in c.objects:
        for b in d.objects:
            arrs = t.hom(ic.omap[a], id_.omap[b])
            sets[(a, b)] = tuple(_cross_label(x) for x in arrs)
            for x in arrs:
                label[x] = _cross_label(x)
                arrow_of[(a, b, label[x])] = x
    left, right = {}, {}
    for f in c.arrows:
        a, a2 = c.ends(f)
        for b in d.objects:
            for v in sets[(a2, b)]:
                left[(f, b, v)] = label[t.compose(arrow_of[(a2, b, v)], ic.amap[f])]
    for g in d.arrows:
        b, b2 = d.ends(g)
        for a in c.objects:
            for v in sets[(a, b)]:
                right[(g, a, v)] = label[t.compose(id_.amap[g], arrow_of[(a, b, v)])]
    return validate_distributor(c, d, sets, left, right)


def constant_distributor(c: FinCategory, d: FinCategory, value: tuple | None = None) -> Distributor:
    """Every ``X(B)(A)`` equal to ``value`` with trivial actions; ``None``
    means the singleton ``{(A, B)}`` (whose actions are forced)."""
    sets, left, right = {}, {}, {}
    for a in c.objects:
        for b in d.objects:
            sets[(a, b)] = ((a, b),) if value is None else tuple(value)
    for f in c.arrows:
        a, a2 = c.ends(f)
        for b in d.objects:
            for v in sets[(a2, b)]:
                left[(f, b, v)] = (a, b) if value is None else v
    for g in d.arrows:
        b, b2 = d.ends(g)
        for a in c.objects:
            for v in sets[(a, b)]:
                right[(g, a, v)] = (a, b2) if value is None else v
    return validate_distributor(c, d, sets, left, right)


def thin_bridge(c: FinCategory, d: FinCategory) -> RigidBridge:
    """``C ≺ D``: exactly one cross arrow ``(A, B)`` for each pair."""
    return bridge_of_distributor(constant_distributor(c, d))


def bridge_morphisms(e: RigidBridge, g: RigidBridge) -> list[FinFunctor]:
    """Functors ``E → G`` that commute with both embeddings."""
    if e.left != g.left or e.right != g.right:
        return []
    fo, fa = {}, {}
    for inc_e, inc_g in ((e.inc_left, g.inc_left), (e.inc_right, g.inc_right)):
        for x, y in inc_e.omap.items():
            fo[y] = inc_g.omap[x]
        for x, y in inc_e.amap.items():
            fa[y] = inc_g.amap[x]
    return list(enumerate_functors(e.total, g.total, fo, fa))


# ----------------------------------------------------------------------
# bimodules


@dataclass(frozen=True, eq=False)
class Bimodule:
    bridge: RigidBridge
    psi: PathObject
    left: PathObject
    right: PathObject


def _restriction(psi: PathObject, inc: FinFunctor, side: PathObject) -> ColaxMorphism:
    pi = path_functor(inc, psi.max_len, side.paths, psi.paths)
    return compose_colax(psi.morphism, pi, check=False)


def _compare(side: str, got: ColaxMorphism, want: ColaxMorphism) -> None:
    for part in ("omap", "map1", "map2", "phi", "phi0"):
        g, w = getattr(got, part), getattr(want, part)
        for key in ordered(set(g) | set(w)):
            if g.get(key) != w.get(key):
                raise BoundaryMismatch(side, key, detail=f"{part}: {fmt(g.get(key))} vs {fmt(w.get(key))}")


def validate_bimodule(
    bridge: RigidBridge,
    psi: PathObject | ColaxMorphism,
    left: PathObject,
    right: PathObject,
    require_segal: bool = True,
) -> Bimodule:
    """Check that ``Ψ`` restricts to ``left`` along ``C ↪ E`` and to
    ``right`` along ``D ↪ E`` (componentwise equality)."""
    if not isinstance(psi, PathObject):
        psi = check_path_object(psi, left.base)
    if psi.shape is not bridge.total and psi.shape != bridge.total:
        raise BoundaryMismatch("shape", detail="Ψ is not defined on the bridge")
    if require_segal:
        for po in (psi, left, right):
            if not po.segal:
                raise NonSegalCell(*po.offenders[0])
    _compare("left", _restriction(psi, bridge.inc_left, left), left.morphism)
    _compare("right", _restriction(psi, bridge.inc_right, right), right.morphism)
    return Bimodule(bridge, psi, left, right)


def _identity_component(m: Bicategory, x: Any) -> Any:
    return m.vcomp(m.inverse2(m.runit(x)), m.lunit(x))


def _check_identity_on(side: str, pre: Premorphism, sigma_inc: FinFunctor, boundary: PathObject, total_paths) -> None:
    m = boundary.target
    pmap = path_functor(sigma_inc, boundary.max_len, boundary.paths, total_paths)
    comp2 = pre.transformation.comp2
    for t in ordered(boundary.paths.chains()):
        want = _identity_component(m, boundary.morphism.map1[t])
        if comp2[pmap.map1[t]] != want:
            raise BoundaryMismatch(side, t, detail="morphism is not the identity on the boundary")


def validate_bimodule_morphism(
    b1: Bimodule,
    b2: Bimodule,
    comp1: Mapping,
    comp2: Mapping,
    sigma: FinFunctor | None = None,
) -> Premorphism:
    """An ``M``-morphism ``Ψ1 → Ψ2`` over ``Σ`` (default the identity of a
    common bridge) that is the identity on both boundaries."""
    sigma = sigma or identity_functor(b1.bridge.total)
    pre = validate_premorphism(sigma, comp1, comp2, b1.psi, b2.psi, require_morphism=True)
    _check_identity_on("left", pre, b1.bridge.inc_left, b1.left, b1.psi.paths)
    _check_identity_on("right", pre, b1.bridge.inc_right, b1.right, b1.psi.paths)
    return pre


def identity_bimodule_morphism(b: Bimodule) -> Premorphism:
    m = b.psi.target
    f = b.psi.morphism
    comp1 = {a: m.unit(f.omap[a]) for a in b.bridge.total.objects}
    comp2 = {t: _identity_component(m, x) for t, x in f.map1.items()}
    return validate_bimodule_morphism(b, b, comp1, comp2)


def pullback_bimodule(b: Bimodule, sigma: FinFunctor, along: RigidBridge) -> Bimodule:
    """``Σ*Ψ`` for a bridge morphism ``Σ: along → b.bridge`` (precomposition)."""
    return validate_bimodule(along, restrict(b.psi, sigma), b.left, b.right)


@dataclass(frozen=True)
class BimoduleActions:
    """``left[(P, Q, R, f, x)]: Ψ(x) ⊗ F(f) ⇒ Ψ(x∘f)`` for ``f: P → Q`` in
    ``C`` and a cross arrow ``x: Q → R``; ``right[(Q, R, S, x, g)]:
    G(g) ⊗ Ψ(x) ⇒ Ψ(g∘x)`` for ``g: R → S`` in ``D``."""

    lax: LaxData
    left: Mapping[tuple, Any]
    right: Mapping[tuple, Any]


def bimodule_actions(b: Bimodule) -> BimoduleActions:
    """Classical action cells read off a bimodule with invertible
    comparison cells; associativity and unit laws are checked exhaustively."""
    lax = path_to_lax(b.psi)
    e = b.bridge
    t = e.total
    left, right = {}, {}
    for g, f in t.composable_pairs():
        sg, sf = t.src(g), t.src(f)
        if f[0] == C_TAG and g[0] == X_TAG:
            left[(sf[1], sg[1], t.dst(g)[1], f, g)] = lax.comp[(g, f)]
        elif f[0] == X_TAG and g[0] == D_TAG:
            right[(sf[1], sg[1], t.dst(g)[1], f, g)] = lax.comp[(g, f)]
    return BimoduleActions(lax, left, right)


def cross_pairs(e: RigidBridge) -> Iterator[tuple]:
    for a, b in product(ordered(e.left.objects), ordered(e.right.objects)):
        yield a, b, e.cross(a, b)


__all__ = [
    "Bimodule",
    "BimoduleActions",
    "Distributor",
    "RigidBridge",
    "bimodule_actions",
    "bridge_morphisms",
    "bridge_of_distributor",
    "constant_distributor",
    "cross_pairs",
    "distributor_of_bridge",
    "identity_bimodule_morphism",
    "pullback_bimodule",
    "thin_bridge",
    "validate_bimodule",
    "validate_bimodule_morphism",
    "validate_distributor",
    "validate_rigid_bridge",
]
