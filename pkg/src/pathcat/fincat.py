"""Finite categories, functors and the elementary constructions on them.

Objects and arrows are identified by hashable ids (strings when they come
from the text format, tuples when a construction builds structured ids).
Every category stores its identities explicitly together with a total
composition table on composable pairs.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import product as _cartesian
from types import MappingProxyType
from typing import Any, Hashable, Iterable, Iterator, Mapping, Sequence

from ._util import fmt, order_key, ordered
from .errors import (
    AssociativityViolation,
    BadComposite,
    CompositionNotPreserved,
    EmptySet,
    EndpointNotPreserved,
    IdentityNotPreserved,
    IdentityViolation,
    MissingComposite,
    NonFunctorialAction,
    NotComposable,
    UnknownArrow,
    UnknownObject,
)

Obj = Hashable
Arrow = Hashable


def default_identity_id(obj: Obj) -> Arrow:
    """Name given to a synthesized identity arrow."""
    return f"1_{obj}" if isinstance(obj, str) else ("1", obj)


class FinCategory:
    """A finite category with an explicit, total composition table.

    The constructor trusts its input (it only fills in identity
    composites).  Use :func:`validate_category` for untrusted data.
    """

    def __init__(
        self,
        objects: Iterable[Obj],
        arrows: Mapping[Arrow, tuple[Obj, Obj]],
        identities: Mapping[Obj, Arrow],
        comp: Mapping[tuple[Arrow, Arrow], Arrow],
        name: str = "",
    ) -> None:
        self.name = name
        self._objects = tuple(ordered(set(objects)))
        self._arrows = MappingProxyType({a: tuple(arrows[a]) for a in arrows})
        self._ids = MappingProxyType(dict(identities))
        table = dict(comp)
        for a, (s, d) in self._arrows.items():
            table.setdefault((a, self._ids[s]), a)
            table.setdefault((self._ids[d], a), a)
        self._comp = MappingProxyType(table)
        homs: dict[tuple[Obj, Obj], list[Arrow]] = defaultdict(list)
        out: dict[Obj, list[Arrow]] = defaultdict(list)
        inc: dict[Obj, list[Arrow]] = defaultdict(list)
        for a in ordered(self._arrows):
            s, d = self._arrows[a]
            homs[(s, d)].append(a)
            out[s].append(a)
            inc[d].append(a)
        self._homs = {k: tuple(v) for k, v in homs.items()}
        self._out = {k: tuple(v) for k, v in out.items()}
        self._in = {k: tuple(v) for k, v in inc.items()}
        self._idset = frozenset(self._ids.values())
        self._arrow_list = tuple(ordered(self._arrows))

    # -- basic access -------------------------------------------------
    @property
    def objects(self) -> tuple:
        return self._objects

    @property
    def arrows(self) -> tuple:
        return self._arrow_list

    @property
    def identities(self) -> Mapping[Obj, Arrow]:
        return self._ids

    @property
    def comp_table(self) -> Mapping[tuple[Arrow, Arrow], Arrow]:
        return self._comp

    def has_object(self, x: Obj) -> bool:
        return x in self._ids

    def has_arrow(self, a: Arrow) -> bool:
        return a in self._arrows

    def src(self, a: Arrow) -> Obj:
        try:
            return self._arrows[a][0]
        except KeyError:
            raise UnknownArrow(a) from None

    def dst(self, a: Arrow) -> Obj:
        try:
            return self._arrows[a][1]
        except KeyError:
            raise UnknownArrow(a) from None

    def ends(self, a: Arrow) -> tuple[Obj, Obj]:
        try:
            return self._arrows[a]
        except KeyError:
            raise UnknownArrow(a) from None

    def identity(self, x: Obj) -> Arrow:
        try:
            return self._ids[x]
        except KeyError:
            raise UnknownObject(x) from None

    def is_identity(self, a: Arrow) -> bool:
        return a in self._idset

    def hom(self, x: Obj, y: Obj) -> tuple:
        return self._homs.get((x, y), ())

    def out_of(self, x: Obj) -> tuple:
        return self._out.get(x, ())

    def into(self, y: Obj) -> tuple:
        return self._in.get(y, ())

    def compose(self, g: Arrow, f: Arrow) -> Arrow:
        """``g ∘ f`` (f first)."""
        try:
            return self._comp[(g, f)]
        except KeyError:
            if self.dst(f) != self.src(g):
                raise NotComposable(g, f) from None
            raise MissingComposite(g, f) from None

    def compose_path(self, arrows: Sequence[Arrow]) -> Arrow:
        """Composite of ``arrows`` listed in order of traversal."""
        if not arrows:
            raise ValueError("empty path has no composite without an object")
        acc = arrows[0]
        for a in arrows[1:]:
            acc = self.compose(a, acc)
        return acc

    def composable_pairs(self) -> Iterator[tuple[Arrow, Arrow]]:
        for f in self._arrow_list:
            for g in self.out_of(self.dst(f)):
                yield g, f

    # -- derived predicates ------------------------------------------
    def inverse(self, f: Arrow) -> Arrow | None:
        s, d = self.ends(f)
        for g in self.hom(d, s):
            if self._comp[(g, f)] == self._ids[s] and self._comp[(f, g)] == self._ids[d]:
                return g
        return None

    def is_invertible(self, f: Arrow) -> bool:
        return self.inverse(f) is not None

    def is_posetal(self) -> bool:
        return all(len(v) <= 1 for v in self._homs.values())

    def is_groupoid(self) -> bool:
        return all(self.is_invertible(a) for a in self._arrow_list)

    def __len__(self) -> int:
        return len(self._arrows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (
            self._objects == other._objects
            and dict(self._arrows) == dict(other._arrows)
            and dict(self._ids) == dict(other._ids)
            and dict(self._comp) == dict(other._comp)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<FinCategory{label}: {len(self._objects)} objects, {len(self._arrows)} arrows>"


def _arrow_dict(arrows: Mapping | Iterable) -> dict:
    if isinstance(arrows, Mapping):
        return {a: tuple(e) for a, e in arrows.items()}
    out = {}
    for a, s, d in arrows:
        out[a] = (s, d)
    return out


def validate_category(
    objects: Iterable[Obj],
    arrows: Mapping | Iterable,
    identities: Mapping[Obj, Arrow] | None = None,
    comp: Mapping[tuple[Arrow, Arrow], Arrow] | None = None,
    name: str = "",
) -> FinCategory:
    """Check raw category data and return the category.

    ``arrows`` maps id to ``(src, dst)`` (or is an iterable of triples).
    Identity arrows are synthesized when ``identities`` is omitted, and
    composites involving an identity never need to be listed.
    """
    objs = list(dict.fromkeys(objects))
    objset = set(objs)
    arr = _arrow_dict(arrows)
    for a in ordered(arr):
        s, d = arr[a]
        if s not in objset:
            raise UnknownObject(s, detail=f"source of arrow {fmt(a)}")
        if d not in objset:
            raise UnknownObject(d, detail=f"target of arrow {fmt(a)}")
    ids = dict(identities) if identities is not None else {}
    for x in ordered(objs):
        if x not in ids:
            if identities is not None:
                raise IdentityViolation(x, detail="no identity arrow")
            ids[x] = default_identity_id(x)
        i = ids[x]
        if i in arr and arr[i] != (x, x):
            raise IdentityViolation(x, detail="identity is not an endo-arrow")
        arr[i] = (x, x)
    idset = set(ids.values())
    id_of = {i: x for x, i in ids.items()}
    table: dict[tuple[Arrow, Arrow], Arrow] = {}
    for (g, f), h in (comp or {}).items():
        for a in (g, f, h):
            if a not in arr:
                raise UnknownArrow(a)
        if arr[f][1] != arr[g][0] or arr[h] != (arr[f][0], arr[g][1]):
            raise BadComposite(g, f, detail=f"listed as {fmt(h)}")
        if f in idset and h != g:
            raise IdentityViolation(id_of[f])
        if g in idset and h != f:
            raise IdentityViolation(id_of[g])
        table[(g, f)] = h
    cat = FinCategory(objs, arr, ids, table, name=name)
    comp_full = cat.comp_table
    for g, f in cat.composable_pairs():
        if (g, f) not in comp_full:
            raise MissingComposite(g, f)
    for f in cat.arrows:
        if f in idset:
            continue
        for g in cat.out_of(cat.dst(f)):
            if g in idset:
                continue
            gf = comp_full[(g, f)]
            for h in cat.out_of(cat.dst(g)):
                if h in idset:
                    continue
                if comp_full[(h, gf)] != comp_full[(comp_full[(h, g)], f)]:
                    raise AssociativityViolation(h, g, f)
    return cat


# ----------------------------------------------------------------------
# functors


@dataclass(frozen=True, eq=False)
class FinFunctor:
    source: FinCategory
    target: FinCategory
    omap: Mapping[Obj, Obj]
    amap: Mapping[Arrow, Arrow]

    def ob(self, x: Obj) -> Obj:
        return self.omap[x]

    def ar(self, a: Arrow) -> Arrow:
        return self.amap[a]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and dict(self.omap) == dict(other.omap)
            and dict(self.amap) == dict(other.amap)
        )

    __hash__ = None  # type: ignore[assignment]


def validate_functor(
    source: FinCategory,
    target: FinCategory,
    omap: Mapping[Obj, Obj],
    amap: Mapping[Arrow, Arrow],
) -> FinFunctor:
    """Check that the maps define a functor; identity images may be omitted."""
    om = {}
    for x in source.objects:
        if x not in omap:
            raise UnknownObject(x, detail="object map is not total")
        if not target.has_object(omap[x]):
            raise UnknownObject(omap[x], detail="image not in target")
        om[x] = omap[x]
    am = {}
    for a in source.arrows:
        if a in amap:
            img = amap[a]
        elif source.is_identity(a):
            img = target.identity(om[source.src(a)])
        else:
            raise UnknownArrow(a, detail="arrow map is not total")
        if not target.has_arrow(img):
            raise UnknownArrow(img, detail="image not in target")
        s, d = source.ends(a)
        if target.ends(img) != (om[s], om[d]):
            raise EndpointNotPreserved(a)
        am[a] = img
    for x in source.objects:
        if am[source.identity(x)] != target.identity(om[x]):
            raise IdentityNotPreserved(x)
    for g, f in source.composable_pairs():
        if am[source.compose(g, f)] != target.compose(am[g], am[f]):
            raise CompositionNotPreserved(g, f)
    return FinFunctor(source, target, MappingProxyType(om), MappingProxyType(am))


def identity_functor(c: FinCategory) -> FinFunctor:
    return FinFunctor(c, c, {x: x for x in c.objects}, {a: a for a in c.arrows})


def compose_functors(g: FinFunctor, f: FinFunctor) -> FinFunctor:
    """``g ∘ f``."""
    return FinFunctor(
        f.source,
        g.target,
        {x: g.omap[f.omap[x]] for x in f.source.objects},
        {a: g.amap[f.amap[a]] for a in f.source.arrows},
    )


def constant_functor(c: FinCategory, target: FinCategory, obj: Obj) -> FinFunctor:
    i = target.identity(obj)
    return FinFunctor(c, target, {x: obj for x in c.objects}, {a: i for a in c.arrows})


def enumerate_functors(
    source: FinCategory,
    target: FinCategory,
    fixed_objects: Mapping[Obj, Obj] | None = None,
    fixed_arrows: Mapping[Arrow, Arrow] | None = None,
) -> Iterator[FinFunctor]:
    """All functors ``source → target`` (optionally pinned on some data)."""
    fixed_objects = dict(fixed_objects or {})
    fixed_arrows = dict(fixed_arrows or {})
    objs = source.objects
    free = [a for a in source.arrows if not source.is_identity(a)]
    index = {a: i for i, a in enumerate(free)}
    checks: list[list[tuple]] = [[] for _ in free]
    for g, f in source.composable_pairs():
        if source.is_identity(g) or source.is_identity(f):
            continue
        h = source.compose(g, f)
        last = max(index[g], index[f], index.get(h, -1))
        checks[last].append((g, f, h))
    choices = [fixed_objects[x] if x in fixed_objects else None for x in objs]
    obj_options = [[c] if c is not None else list(target.objects) for c in choices]
    for images in _cartesian(*obj_options):
        om = dict(zip(objs, images))
        am = {source.identity(x): target.identity(om[x]) for x in objs}

        def assign(i: int) -> Iterator[dict]:
            if i == len(free):
                yield dict(am)
                return
            a = free[i]
            s, d = source.ends(a)
            cands = target.hom(om[s], om[d])
            if a in fixed_arrows:
                cands = tuple(c for c in cands if c == fixed_arrows[a])
            for c in cands:
                am[a] = c
                if all(am[h] == target.compose(am[g], am[f]) for g, f, h in checks[i]):
                    yield from assign(i + 1)
                del am[a]

        for full in assign(0):
            yield FinFunctor(source, target, dict(om), full)


# ----------------------------------------------------------------------
# set-valued diagrams and elements


@dataclass(frozen=True, eq=False)
class SetValuedDiagram:
    base: FinCategory
    fiber: Mapping[Obj, tuple]
    action: Mapping[Arrow, Mapping[Any, Any]]


def validate_diagram(d: SetValuedDiagram) -> SetValuedDiagram:
    c = d.base
    for a in c.arrows:
        s, t = c.ends(a)
        act = d.action.get(a)
        if act is None and c.is_identity(a):
            continue
        if act is None or set(act) != set(d.fiber[s]):
            raise NonFunctorialAction(a, detail="action not total on the fiber")
        if any(v not in set(d.fiber[t]) for v in act.values()):
            raise NonFunctorialAction(a, detail="action leaves the target fiber")
    for x in c.objects:
        act = d.action.get(c.identity(x))
        if act is not None and any(act[e] != e for e in d.fiber[x]):
            raise NonFunctorialAction(c.identity(x))
    for g, f in c.composable_pairs():
        h = c.compose(g, f)
        for e in d.fiber[c.src(f)]:
            if _act(d, h, e) != _act(d, g, _act(d, f, e)):
                raise NonFunctorialAction(g, f)
    return d


def _act(d: SetValuedDiagram, a: Arrow, e: Any) -> Any:
    act = d.action.get(a)
    return e if act is None else act[e]


def elements(d: SetValuedDiagram, posetal_quotient: bool = False) -> FinCategory:
    """The category of elements.

    Objects are pairs ``(A, s)`` with ``s`` in the fiber over ``A``.  Without
    the quotient an arrow is ``(u, s)`` for a base arrow ``u`` out of ``A``;
    with it, arrows are the pairs ``((A, s), (B, t))`` realized by at least
    one base arrow.
    """
    validate_diagram(d)
    c = d.base
    objs = [(x, e) for x in c.objects for e in d.fiber[x]]
    if not posetal_quotient:
        arrows = {}
        for a in c.arrows:
            s, t = c.ends(a)
            for e in d.fiber[s]:
                arrows[(a, e)] = ((s, e), (t, _act(d, a, e)))
        ids = {(x, e): (c.identity(x), e) for x, e in objs}
        comp = {}
        for g, f in c.composable_pairs():
            for e in d.fiber[c.src(f)]:
                comp[((g, _act(d, f, e)), (f, e))] = (c.compose(g, f), e)
        return FinCategory(objs, arrows, ids, comp)
    rel = set()
    for a in c.arrows:
        s, t = c.ends(a)
        for e in d.fiber[s]:
            rel.add(((s, e), (t, _act(d, a, e))))
    return preorder_category(objs, rel)


def preorder_category(objects: Iterable[Obj], relation: Iterable[tuple[Obj, Obj]]) -> FinCategory:
    """Thin category on ``objects``; ``relation`` must be reflexive and transitive."""
    objs = list(objects)
    rel = set(relation) | {(x, x) for x in objs}
    arrows = {p: p for p in rel}
    ids = {x: (x, x) for x in objs}
    comp = {}
    by_src: dict[Obj, list] = defaultdict(list)
    for p in rel:
        by_src[p[0]].append(p)
    for f in rel:
        for g in by_src[f[1]]:
            comp[(g, f)] = (f[0], g[1])
    return FinCategory(objs, arrows, ids, comp)


def transitive_closure(objects: Iterable[Obj], relation: Iterable[tuple[Obj, Obj]]) -> set:
    objs = list(objects)
    succ: dict[Obj, set] = {x: {x} for x in objs}
    for a, b in relation:
        succ[a].add(b)
    changed = True
    while changed:
        changed = False
        for x in objs:
            new = set().union(*(succ[y] for y in succ[x]))
            if new != succ[x]:
                succ[x] = new
                changed = True
    return {(x, y) for x in objs for y in succ[x]}


# ----------------------------------------------------------------------
# constructions


def terminal() -> FinCategory:
    return coarse(["o"])


def coarse(xs: Iterable[Obj]) -> FinCategory:
    """One arrow ``(A, B)`` for every ordered pair of elements."""
    objs = list(dict.fromkeys(xs))
    if not objs:
        raise EmptySet()
    return preorder_category(objs, {(a, b) for a in objs for b in objs})


def interval(n: int) -> FinCategory:
    """The chain ``0 ≤ 1 ≤ … ≤ n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return preorder_category(range(n + 1), {(i, j) for i in range(n + 1) for j in range(i, n + 1)})


def discrete(xs: Iterable[Obj]) -> FinCategory:
    objs = list(dict.fromkeys(xs))
    return preorder_category(objs, set())


def nerve_level(c: FinCategory, n: int, a: Obj, b: Obj) -> tuple[tuple, ...]:
    """All composable sequences of ``n`` arrows from ``a`` to ``b``.

    Sequences are listed in traversal order.  For ``n = 0`` the result is the
    single empty sequence when ``a == b`` and nothing otherwise.
    """
    for x in (a, b):
        if not c.has_object(x):
            raise UnknownObject(x)
    if n < 0:
        raise ValueError("n must be non-negative")
    out: list[tuple] = []

    def walk(x: Obj, k: int, acc: tuple) -> None:
        if k == 0:
            if x == b:
                out.append(acc)
            return
        for f in c.out_of(x):
            walk(c.dst(f), k - 1, acc + (f,))

    walk(a, n, ())
    return tuple(out)


def derive(c: FinCategory, mode: str, d: FinCategory | None = None) -> FinCategory:
    """Product, coproduct (with ``d``) or opposite of ``c``; result re-validated."""
    if mode == "opposite":
        arrows = {a: (c.dst(a), c.src(a)) for a in c.arrows}
        comp = {(f, g): h for (g, f), h in c.comp_table.items()}
        return validate_category(c.objects, arrows, dict(c.identities), comp)
    if d is None:
        raise ValueError(f"mode {mode!r} needs a second category")
    if mode == "product":
        objs = [(x, y) for x in c.objects for y in d.objects]
        arrows = {
            (f, g): ((c.src(f), d.src(g)), (c.dst(f), d.dst(g))) for f in c.arrows for g in d.arrows
        }
        ids = {(x, y): (c.identity(x), d.identity(y)) for x, y in objs}
        comp = {}
        for g1, f1 in c.composable_pairs():
            h1 = c.compose(g1, f1)
            for g2, f2 in d.composable_pairs():
                comp[((g1, g2), (f1, f2))] = (h1, d.compose(g2, f2))
        return validate_category(objs, arrows, ids, comp)
    if mode == "coproduct":
        objs = [(0, x) for x in c.objects] + [(1, y) for y in d.objects]
        arrows = {}
        ids = {}
        comp = {}
        for tag, e in ((0, c), (1, d)):
            for a in e.arrows:
                arrows[(tag, a)] = ((tag, e.src(a)), (tag, e.dst(a)))
            for x in e.objects:
                ids[(tag, x)] = (tag, e.identity(x))
            for (g, f), h in e.comp_table.items():
                comp[((tag, g), (tag, f))] = (tag, h)
        return validate_category(objs, arrows, ids, comp)
    raise ValueError(f"unknown mode {mode!r}")


def product_functor(f: FinFunctor, g: FinFunctor, source: FinCategory, target: FinCategory) -> FinFunctor:
    """``f × g`` between given product categories (as built by :func:`derive`)."""
    return FinFunctor(
        source,
        target,
        {(x, y): (f.omap[x], g.omap[y]) for x, y in source.objects},
        {(a, b): (f.amap[a], g.amap[b]) for a, b in source.arrows},
    )


def interior(c: FinCategory) -> FinCategory:
    """The wide subcategory of invertible arrows."""
    keep = {a for a in c.arrows if c.is_invertible(a)}
    arrows = {a: c.ends(a) for a in keep}
    comp = {(g, f): h for (g, f), h in c.comp_table.items() if g in keep and f in keep}
    return FinCategory(c.objects, arrows, dict(c.identities), comp)


def full_subcategory(c: FinCategory, objs: Iterable[Obj]) -> tuple[FinCategory, FinFunctor]:
    """Full subcategory on ``objs`` and its inclusion functor."""
    keep = set(objs)
    arrows = {a: c.ends(a) for a in c.arrows if c.src(a) in keep and c.dst(a) in keep}
    comp = {(g, f): h for (g, f), h in c.comp_table.items() if g in arrows and f in arrows}
    sub = FinCategory(keep, arrows, {x: c.identity(x) for x in keep}, comp)
    inc = FinFunctor(sub, c, {x: x for x in sub.objects}, {a: a for a in sub.arrows})
    return sub, inc


def is_isomorphic_via(f: FinFunctor) -> bool:
    """Whether ``f`` is bijective on objects and arrows."""
    return (
        len(set(f.omap.values())) == len(f.source.objects) == len(f.target.objects)
        and len(set(f.amap.values())) == len(f.source.arrows) == len(f.target.arrows)
    )


def find_isomorphism(c: FinCategory, d: FinCategory) -> FinFunctor | None:
    """Brute-force search for an isomorphism of categories (small inputs only)."""
    if len(c.objects) != len(d.objects) or len(c.arrows) != len(d.arrows):
        return None
    for f in enumerate_functors(c, d):
        if is_isomorphic_via(f):
            return f
    return None


__all__ = [
    "FinCategory",
    "FinFunctor",
    "SetValuedDiagram",
    "coarse",
    "compose_functors",
    "constant_functor",
    "default_identity_id",
    "derive",
    "discrete",
    "elements",
    "enumerate_functors",
    "find_isomorphism",
    "full_subcategory",
    "identity_functor",
    "interior",
    "interval",
    "nerve_level",
    "order_key",
    "preorder_category",
    "product_functor",
    "terminal",
    "transitive_closure",
    "validate_category",
    "validate_diagram",
    "validate_functor",
]

