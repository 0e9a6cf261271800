"""Path-objects over a base of enrichment and the classical structures they encode.

A path-object is a colax morphism ``F: P_C → M`` from the path 2-category
of a finite shape ``C``.  It is *Segal* when every comparison cell lies in
the chosen class ``W``.  This module converts between path-objects and

* enriched categories (and, more generally, lax functors ``C → M``),
* truncated colax monoidal functors ``Δ → M`` (shape ``1``),
* truncated simplicial sets (via colax functors ``Δ → (FinSet, ×, 1)``),

and provides premorphisms, base change, restriction, foliation and two
families of worked examples: group-valued cocycles and quantale metrics.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Any, Callable, Iterable, Mapping

from ._util import fmt, ordered
from .bicat import (
    STAR,
    BaseOfEnrichment,
    Bicategory,
    ColaxMorphism,
    FinBicategory,
    Transformation,
    canonical_bases,
    capped_add,
    compose_colax,
    discrete_monoid,
    quantale_carrier,
    quantale_monoidal,
    suspend_monoidal,
    unique_cell,
    validate_base,
    validate_colax,
    validate_transformation,
)
from .errors import (
    CellTypeMismatch,
    CocycleViolation,
    EmptyLeaf,
    EnrichedAxiomViolation,
    GroupAxiomViolation,
    M1Violation,
    M2Violation,
    MissingCellImage,
    NonInvertibleColaxity,
    NonInvertibleStructureCell,
    NonNaturalColaxity,
    NotCartesianTarget,
    ObjectNotOverSameBase,
    ShapeMismatch,
    ShapeNotTerminal,
    SimplicialViolation,
    TriangleViolation,
    TruncationExceeded,
    UnitViolation,
    WNotPreserved,
    ZeroDiagonalViolation,
)
from .fincat import FinCategory, FinFunctor, coarse, full_subcategory, identity_functor
from .pathcat import Chain, Path2Category, act, delta_identification, empty_chain, path_functor
from .simplex import DeltaMap, codegeneracy, coface, enumerate_hom, factorize_generators

Cell = Any


def _inv(m: Bicategory, a: Cell) -> Cell:
    b = m.inverse2(a)
    if b is None:
        raise NonInvertibleStructureCell(a)
    return b


# ----------------------------------------------------------------------
# path-objects


@dataclass(frozen=True, eq=False)
class PathObject:
    shape: FinCategory
    max_len: int
    base: BaseOfEnrichment
    morphism: ColaxMorphism
    segal: bool
    offenders: tuple = ()

    @property
    def paths(self) -> Path2Category:
        return self.morphism.source

    @property
    def target(self) -> Bicategory:
        return self.base.bicategory

    @property
    def strict(self) -> bool:
        return self.morphism.strict


def _same(x: Any, y: Any) -> bool:
    return x is y or x == y


def check_path_object(
    f: ColaxMorphism | Mapping,
    base: BaseOfEnrichment,
    shape: FinCategory | None = None,
    max_len: int | None = None,
    revalidate: bool = True,
) -> PathObject:
    """Validate ``f`` as a colax morphism out of ``P_shape`` and classify its
    comparison cells against ``base.W``.

    ``f`` is either a :class:`ColaxMorphism` or a mapping with keys
    ``omap, map1, map2, phi, phi0`` (then ``shape`` and ``max_len`` are
    required).  The Segal report lists every comparison cell outside ``W``.
    """
    if not isinstance(f, ColaxMorphism):
        if shape is None or max_len is None:
            raise ShapeMismatch(detail="raw data needs a shape and a truncation")
        p = Path2Category(shape, max_len)
        f = validate_colax(p, base.bicategory, f["omap"], f["map1"], f["map2"], f["phi"], f["phi0"])
    elif revalidate:
        f = validate_colax(f.source, f.target, f.omap, f.map1, f.map2, f.phi, f.phi0, f.orientation)
    p = f.source
    if not isinstance(p, Path2Category):
        raise ShapeMismatch(detail="source is not a path 2-category")
    if shape is not None and not _same(p.base, shape):
        raise ShapeMismatch(detail="source is the path category of a different shape")
    if max_len is not None and p.max_len != max_len:
        raise ShapeMismatch(p.max_len, max_len, detail="truncation differs")
    if not _same(f.target, base.bicategory):
        raise ShapeMismatch(detail="target is not the base bicategory")
    offenders = []
    for (t, s) in ordered(f.phi):
        if f.phi[(t, s)] not in base.W:
            offenders.append(("phi", t, s))
    for u in ordered(f.phi0):
        if f.phi0[u] not in base.W:
            offenders.append(("unit", u))
    return PathObject(p.base, p.max_len, base, f, not offenders, tuple(offenders))


def posetal_path_object(
    shape: FinCategory,
    max_len: int,
    base: BaseOfEnrichment,
    omap: Mapping[Any, Any],
    image: Mapping[Chain, Cell] | Callable[[Chain], Cell],
) -> PathObject:
    """Path-object whose 2-cell data is forced: every hom of the target is
    a preorder, so only the chain images need to be given."""
    m = base.bicategory
    p = Path2Category(shape, max_len)
    get = image if callable(image) else image.__getitem__
    map1 = {}
    for s in p.chains():
        try:
            map1[s] = get(s)
        except KeyError:
            raise MissingCellImage(s, detail="chain image") from None

    def forced(x: Cell, y: Cell, where: tuple, what: str) -> Cell:
        cell = unique_cell(m, x, y)
        if cell is None:
            raise MissingCellImage(*where, detail=f"no {what} {fmt(x)} => {fmt(y)}")
        return cell

    for s, x in map1.items():
        if m.ends1(x) != (omap[s.src], omap[s.dst]):
            raise CellTypeMismatch(s, detail="chain image lies over the wrong objects")
    map2 = {(s, t): forced(map1[s], map1[t], (s, t), "2-cell") for s, t in p.relations()}
    phi = {
        (t, s): forced(map1[p.tensor1(t, s)], m.tensor1(map1[t], map1[s]), (t, s), "colaxity cell")
        for t, s in p.composable1()
    }
    phi0 = {a: forced(map1[empty_chain(a)], m.unit(omap[a]), (a,), "unit colaxity cell") for a in shape.objects}
    f = validate_colax(p, m, dict(omap), map1, map2, phi, phi0)
    return check_path_object(f, base, revalidate=False)


def with_base(po: PathObject, base: BaseOfEnrichment) -> PathObject:
    """The same morphism classified against a different ``W``."""
    return check_path_object(po.morphism, base, revalidate=False)


# ----------------------------------------------------------------------
# lax functors C → M and enriched categories


@dataclass(frozen=True, eq=False)
class LaxData:
    """A normal-free lax functor ``C → M`` given arrow by arrow.

    ``unit[A]: I_{FA} ⇒ cell1[1_A]`` and ``comp[(g, f)]: cell1[g] ⊗ cell1[f] ⇒ cell1[g∘f]``.
    """

    shape: FinCategory
    base: Bicategory
    omap: Mapping[Any, Any]
    cell1: Mapping[Any, Cell]
    unit: Mapping[Any, Cell]
    comp: Mapping[tuple, Cell]


def _check_cell(m: Bicategory, a: Cell, src: Cell, dst: Cell, where: tuple, what: str) -> None:
    if a is None:
        raise MissingCellImage(*where, detail=what)
    try:
        got = (m.src2(a), m.dst2(a))
    except Exception:
        raise CellTypeMismatch(*where, detail=f"{what} is not a 2-cell") from None
    if got != (src, dst):
        raise CellTypeMismatch(*where, detail=f"{what} goes {fmt(got[0])} => {fmt(got[1])}")


def validate_lax_data(
    shape: FinCategory,
    base: Bicategory,
    omap: Mapping,
    cell1: Mapping,
    unit: Mapping,
    comp: Mapping,
) -> LaxData:
    m, c = base, shape
    for a in c.objects:
        if a not in omap or omap[a] not in m.objects:
            raise MissingCellImage(a, detail="object image")
    for f in c.arrows:
        if f not in cell1:
            raise MissingCellImage(*c.ends(f), detail="hom 1-cell")
        if m.ends1(cell1[f]) != (omap[c.src(f)], omap[c.dst(f)]):
            raise CellTypeMismatch(*c.ends(f), detail="hom 1-cell lies over the wrong objects")
    for a in c.objects:
        _check_cell(m, unit.get(a), m.unit(omap[a]), cell1[c.identity(a)], (a,), "unit cell")
    for g, f in c.composable_pairs():
        x = m.tensor1(cell1[g], cell1[f])
        _check_cell(m, comp.get((g, f)), x, cell1[c.compose(g, f)], (c.src(f), c.dst(f), c.dst(g)), "composition cell")
    for g, f in c.composable_pairs():
        g_, f_ = cell1[g], cell1[f]
        for h in c.out_of(c.dst(g)):
            h_ = cell1[h]
            lhs = m.seq(m.wr(comp[(h, g)], f_), comp[(c.compose(h, g), f)])
            rhs = m.seq(m.assoc(h_, g_, f_), m.wl(h_, comp[(g, f)]), comp[(h, c.compose(g, f))])
            if lhs != rhs:
                raise EnrichedAxiomViolation(
                    c.src(f), c.dst(f), c.dst(g), c.dst(h), detail="associativity"
                )
    for f in c.arrows:
        a, b = c.ends(f)
        x = cell1[f]
        if m.seq(m.wr(unit[b], x), comp[(c.identity(b), f)]) != m.lunit(x):
            raise EnrichedAxiomViolation(a, b, detail="left unit")
        if m.seq(m.wl(x, unit[a]), comp[(f, c.identity(a))]) != m.runit(x):
            raise EnrichedAxiomViolation(a, b, detail="right unit")
    return LaxData(c, m, dict(omap), dict(cell1), dict(unit), dict(comp))


@dataclass(frozen=True, eq=False)
class EnrichedCategory:
    """Objects over objects of ``base``; ``hom[(A, B)]: over[A] → over[B]``,
    ``unit[A]: I ⇒ hom[(A, A)]`` and ``comp[(A, B, C)]: hom[(B, C)] ⊗ hom[(A, B)] ⇒ hom[(A, C)]``."""

    base: Bicategory
    objects: tuple
    over: Mapping[Any, Any]
    hom: Mapping[tuple, Cell]
    unit: Mapping[Any, Cell]
    comp: Mapping[tuple, Cell]

    def shape(self) -> FinCategory:
        return coarse(self.objects)

    def as_lax(self) -> LaxData:
        c = self.shape()
        comp = {((b, d), (a, b)): self.comp[(a, b, d)] for a in self.objects for b in self.objects for d in self.objects}
        return LaxData(c, self.base, dict(self.over), dict(self.hom), dict(self.unit), comp)

    def same_data(self, other: "EnrichedCategory") -> bool:
        return (
            set(self.objects) == set(other.objects)
            and dict(self.over) == dict(other.over)
            and dict(self.hom) == dict(other.hom)
            and dict(self.unit) == dict(other.unit)
            and dict(self.comp) == dict(other.comp)
        )


def validate_enriched(
    base: Bicategory,
    objects: Iterable[Any],
    over: Mapping,
    hom: Mapping,
    unit: Mapping,
    comp: Mapping,
) -> EnrichedCategory:
    objs = tuple(ordered(set(objects)))
    e = EnrichedCategory(base, objs, dict(over), dict(hom), dict(unit), dict(comp))
    c = e.shape()
    comp2 = {}
    for a, b, d in product(objs, repeat=3):
        if (a, b, d) in e.comp:
            comp2[((b, d), (a, b))] = e.comp[(a, b, d)]
    validate_lax_data(c, base, e.over, e.hom, e.unit, comp2)
    return e


def _nest(m: Bicategory, facs: list) -> Cell:
    acc = facs[0]
    for x in facs[1:]:
        acc = m.tensor1(acc, x)
    return acc


def _whisker(m: Bicategory, a: Cell, rest: list) -> Cell:
    for x in rest:
        a = m.wr(a, x)
    return a


def lax_to_path(data: LaxData, max_len: int, p: Path2Category | None = None) -> ColaxMorphism:
    """The path-object of a lax functor.

    A chain ``A0 → … → An`` goes to ``((F s_n ⊗ F s_{n-1}) ⊗ …) ⊗ F s_1``
    (parentheses opened at the front), ``[0,A]`` to ``I_FA``.  Each
    generator of a rewrite becomes a whiskered composition cell (for a
    codegeneracy) or a whiskered unit insertion (for a coface); comparison
    cells are re-bracketings.
    """
    m, c = data.base, data.shape
    p = p or Path2Category(c, max_len)
    omap, cell1 = data.omap, data.cell1

    def factors(s: Chain) -> list:
        return [cell1[a] for a in reversed(s.arrows)]

    def image(s: Chain) -> Cell:
        return m.unit(omap[s.src]) if s.n == 0 else _nest(m, factors(s))

    def step(cur: Chain, facs: list, g: DeltaMap) -> tuple[Cell, list]:
        n = cur.n
        if g.cod < g.dom:
            pos = next(i for i in range(g.dom - 1) if g.images[i] == g.images[i + 1])
            x, y = cur.arrows[pos], cur.arrows[pos + 1]
            q = n - 2 - pos
            cell = data.comp[(y, x)]
            if q > 0:
                pre = _nest(m, facs[:q])
                cell = m.vcomp(m.wl(pre, cell), m.assoc(pre, facs[q], facs[q + 1]))
            cell = _whisker(m, cell, facs[q + 2 :])
            return cell, facs[:q] + [cell1[c.compose(y, x)]] + facs[q + 2 :]
        i = next(j for j in range(g.cod) if j not in g.images)
        obj = cur.src if i == 0 else c.dst(cur.arrows[i - 1])
        e, ins = cell1[c.identity(obj)], data.unit[obj]
        if n == 0:
            return ins, [e]
        q = n - i
        if q == 0:
            whole = _nest(m, facs)
            return m.vcomp(m.wr(ins, whole), _inv(m, m.lunit(whole))), [e] + facs
        pre = _nest(m, facs[:q])
        cell = m.vcomp(m.wl(pre, ins), _inv(m, m.runit(pre)))
        return _whisker(m, cell, facs[q:]), facs[:q] + [e] + facs[q:]

    map1 = {s: image(s) for s in p.chains()}
    map2 = {}
    for u_ in p.objects:
        for v_ in p.objects:
            ph = p.path_hom(u_, v_)
            for (s, t), w in ph.witness.items():
                cur, facs, cell = s, factors(s), m.id2(map1[s])
                for g in factorize_generators(w):
                    st, facs = step(cur, facs, g)
                    cell = m.vcomp(st, cell)
                    cur = act(c, g, cur)
                assert cur == t
                map2[(s, t)] = cell
    phi = {}
    for t, s in p.composable1():
        if s.n == 0 and t.n == 0:
            phi[(t, s)] = _inv(m, m.lunit(map1[t]))
        elif s.n == 0:
            phi[(t, s)] = _inv(m, m.runit(map1[t]))
        elif t.n == 0:
            phi[(t, s)] = _inv(m, m.lunit(map1[s]))
        else:
            x = map1[t]
            fs = factors(s)
            cell = m.id2(m.tensor1(x, fs[0]))
            for k in range(1, len(fs)):
                cell = m.vcomp(m.assoc(x, _nest(m, fs[:k]), fs[k]), m.wr(cell, fs[k]))
            phi[(t, s)] = cell
    phi0 = {a: m.id2(m.unit(omap[a])) for a in c.objects}
    return validate_colax(p, m, dict(omap), map1, map2, phi, phi0)


def enriched_to_path(e: EnrichedCategory, max_len: int, base: BaseOfEnrichment | None = None) -> PathObject:
    """Path-object of an enriched category over the coarse shape on its objects."""
    f = lax_to_path(e.as_lax(), max_len)
    base = base or canonical_bases(e.base)[0]
    return check_path_object(f, base, revalidate=False)


def path_to_lax(po: PathObject | ColaxMorphism, strict: bool = True) -> LaxData:
    """Read a lax functor off a path-object with invertible comparison cells.

    ``cell1[f] = F[1,f]``, ``unit[A] = F([0,A] → [1,1_A]) ∘ φ_A⁻¹`` and
    ``comp[(g,f)] = F([2,f.g] → [1,gf]) ∘ φ([1,g],[1,f])⁻¹``.  With
    ``strict=True`` every comparison cell must be invertible, otherwise only
    the ones that are used.
    """
    f = po.morphism if isinstance(po, PathObject) else po
    p, m = f.source, f.target
    c = p.base
    if p.max_len < 2:
        raise ShapeMismatch(p.max_len, detail="truncation must be at least 2")

    def one(a: Any) -> Chain:
        return Chain(c.src(a), c.dst(a), (a,))

    used = {(one(g), one(fa)) for g, fa in c.composable_pairs()}
    for key in ordered(f.phi):
        if (strict or key in used) and not m.is_invertible2(f.phi[key]):
            raise NonInvertibleColaxity(*key)
    for a in ordered(f.phi0):
        if not m.is_invertible2(f.phi0[a]):
            raise NonInvertibleColaxity(a, detail="unit")
    cell1 = {a: f.map1[one(a)] for a in c.arrows}
    unit = {}
    for a in c.objects:
        rel = (empty_chain(a), one(c.identity(a)))
        unit[a] = m.vcomp(f.map2[rel], m.inverse2(f.phi0[a]))
    comp = {}
    for g, fa in c.composable_pairs():
        two = Chain(c.src(fa), c.dst(g), (fa, g))
        rel = (two, one(c.compose(g, fa)))
        comp[(g, fa)] = m.vcomp(f.map2[rel], m.inverse2(f.phi[(one(g), one(fa))]))
    return validate_lax_data(c, m, f.omap, cell1, unit, comp)


def strict_to_enriched(po: PathObject, strict: bool = True) -> EnrichedCategory:
    """The enriched category of a path-object over a coarse shape."""
    c = po.shape
    for a in c.objects:
        for b in c.objects:
            if len(c.hom(a, b)) != 1:
                raise ShapeMismatch(a, b, detail="shape is not coarse; use path_to_lax")
    lax = path_to_lax(po, strict)
    objs = tuple(ordered(c.objects))
    hom = {c.ends(a): x for a, x in lax.cell1.items()}
    unit = dict(lax.unit)
    comp = {}
    for (g, f), cell in lax.comp.items():
        comp[(c.src(f), c.dst(f), c.dst(g))] = cell
    return validate_enriched(lax.base, objs, lax.omap, hom, unit, comp)


# ----------------------------------------------------------------------
# shape 1: homotopy monoids


@dataclass(frozen=True, eq=False)
class HomotopyMonoid:
    """A truncated colax monoidal functor ``Δ → M(U, U)``."""

    max_len: int
    levels: Mapping[int, Cell]
    action: Mapping[DeltaMap, Cell]
    structure: Mapping[tuple[int, int], Cell]
    unit: Cell
    in_w: Mapping[tuple, bool]
    strict: bool

    @property
    def segal(self) -> bool:
        return all(self.in_w.values())


def _is_terminal(c: FinCategory) -> bool:
    return len(c.objects) == 1 and len(c.arrows) == 1


def homotopy_monoid_view(po: PathObject) -> HomotopyMonoid:
    if not _is_terminal(po.shape):
        raise ShapeNotTerminal(len(po.shape.objects), len(po.shape.arrows))
    f, m = po.morphism, po.target
    ident = delta_identification(po.paths)
    ch = ident.chain_of_length
    levels = {n: f.map1[ch[n]] for n in ch}
    action = {}
    for (n, k), us in ident.witnesses.items():
        for u in us:
            action[u] = f.map2[(ch[n], ch[k])]
    structure = {}
    in_w: dict[tuple, bool] = {}
    for a in ch:
        for b in ch:
            if a + b <= po.max_len:
                cell = f.phi[(ch[a], ch[b])]
                structure[(a, b)] = cell
                in_w[("phi", a, b)] = cell in po.base.W
    (obj,) = po.shape.objects
    unit = f.phi0[obj]
    in_w[("unit",)] = unit in po.base.W
    strict = all(m.is_id2(x) for x in structure.values()) and m.is_id2(unit)
    return HomotopyMonoid(po.max_len, levels, action, structure, unit, in_w, strict)


# ----------------------------------------------------------------------
# colax functors Δ → FinSet and simplicial sets


@dataclass(frozen=True)
class ColaxSetFunctor:
    """Truncated colax monoidal ``Y: Δ → (FinSet, ×, 1)``.

    ``act[u]`` maps ``Y(u.dom) → Y(u.cod)``; ``phi[(m, n)]`` maps
    ``Y(m+n) → Y(m) × Y(n)``.
    """

    max_len: int
    levels: Mapping[int, tuple]
    act: Mapping[DeltaMap, Mapping]
    phi: Mapping[tuple[int, int], Mapping]
    target: str = "set"


@dataclass(frozen=True)
class SimplicialObject:
    """Truncated simplicial set: ``maps[θ]: X_l → X_k`` for ``θ: [k] → [l]``,
    with ``θ`` stored as a monotone map ``k+1 → l+1``."""

    max_len: int
    levels: Mapping[int, tuple]
    maps: Mapping[DeltaMap, Mapping]

    def face(self, n: int, i: int) -> Mapping:
        """``d_i: X_n → X_{n-1}``."""
        return self.maps[DeltaMap(n, n + 1, tuple(j if j < i else j + 1 for j in range(n)))]

    def degeneracy(self, n: int, i: int) -> Mapping:
        """``s_i: X_n → X_{n+1}``."""
        return self.maps[DeltaMap(n + 2, n + 1, tuple(j if j <= i else j - 1 for j in range(n + 2)))]


def _sum_map(f: DeltaMap, g: DeltaMap) -> DeltaMap:
    return DeltaMap(f.dom + g.dom, f.cod + g.cod, f.images + tuple(i + f.cod for i in g.images))


def _check_map(d: Mapping, dom: Iterable, cod: set, where: tuple) -> None:
    for x in dom:
        if x not in d:
            raise SimplicialViolation(*where, detail=f"undefined on {fmt(x)}")
        if d[x] not in cod:
            raise SimplicialViolation(*where, detail=f"value {fmt(d[x])} outside the level")


def _is_id(u: DeltaMap) -> bool:
    return u.dom == u.cod and u.images == tuple(range(u.dom))


def _generators_from(k: int, top: int) -> list[DeltaMap]:
    """Cofaces and codegeneracies out of ``k`` with codomain at most ``top``."""
    out = []
    if k + 1 <= top:
        out.extend(coface(k, i) for i in range(k + 1))
    if k >= 2:
        out.extend(codegeneracy(k - 1, i) for i in range(k - 1))
    return out


def validate_colax_set_functor(y: ColaxSetFunctor) -> ColaxSetFunctor:
    if y.target != "set":
        raise NotCartesianTarget(y.target)
    n_max = y.max_len
    lv = {n: set(y.levels[n]) for n in range(n_max + 1) if n in y.levels}
    if len(lv) != n_max + 1:
        raise SimplicialViolation(detail="missing levels")
    for n in range(n_max + 1):
        for k in range(n_max + 1):
            for u in enumerate_hom(n, k):
                if u not in y.act:
                    raise SimplicialViolation(u, detail="missing action")
                _check_map(y.act[u], lv[n], lv[k], (u,))
        idn = DeltaMap(n, n, tuple(range(n)))
        if any(y.act[idn][x] != x for x in lv[n]):
            raise SimplicialViolation(idn, detail="identity not preserved")
    # composites with a generator on the left determine all composites
    for n, k in product(range(n_max + 1), repeat=2):
        for u in enumerate_hom(n, k):
            for v in _generators_from(k, n_max):
                j = v.cod
                vu = DeltaMap(n, j, tuple(v.images[i] for i in u.images))
                au, av, avu = y.act[u], y.act[v], y.act[vu]
                if any(av[au[x]] != avu[x] for x in lv[n]):
                    raise SimplicialViolation(v, u, detail="composition not preserved")
    for a in range(n_max + 1):
        for b in range(n_max + 1 - a):
            if (a, b) not in y.phi:
                raise SimplicialViolation(a, b, detail="missing colaxity")
            cod = set(product(lv[a], lv[b]))
            _check_map(y.phi[(a, b)], lv[a + b], cod, (a, b))
    # naturality in each variable separately; the mixed case follows
    for a, b in y.phi:
        for a2 in range(n_max + 1):
            for b2 in range(n_max + 1 - a2):
                if a2 != a and b2 != b:
                    continue
                for u in enumerate_hom(a, a2):
                    for v in enumerate_hom(b, b2):
                        if (a2 != a and not _is_id(v)) or (b2 != b and not _is_id(u)):
                            continue
                        uv = _sum_map(u, v)
                        for x in lv[a + b]:
                            p, q = y.phi[(a, b)][x]
                            if y.phi[(a2, b2)][y.act[uv][x]] != (y.act[u][p], y.act[v][q]):
                                raise NonNaturalColaxity(a, b, detail=f"along {fmt(u)}+{fmt(v)}")
    for a in range(n_max + 1):
        for b in range(n_max + 1 - a):
            for c in range(n_max + 1 - a - b):
                for x in lv[a + b + c]:
                    p, rest = y.phi[(a, b + c)][x]
                    q, r = y.phi[(b, c)][rest]
                    pq, r2 = y.phi[(a + b, c)][x]
                    if y.phi[(a, b)][pq] != (p, q) or r2 != r:
                        raise M1Violation(a, b, c)
    for n in range(n_max + 1):
        for x in lv[n]:
            if y.phi[(0, n)][x][1] != x or y.phi[(n, 0)][x][0] != x:
                raise M2Violation(n, detail=f"counit fails at {fmt(x)}")
    return y


def _delta_plus(k: int, l: int) -> tuple[DeltaMap, ...]:
    return enumerate_hom(k + 1, l + 1)


def interval_to_delta(theta: DeltaMap) -> DeltaMap:
    """``θ: [k] → [l]`` ↦ ``u: (θ(k)−θ(0)) → k`` in ``Δ``."""
    k = theta.dom - 1
    base = theta.images[0]
    length = theta.images[-1] - base
    imgs = tuple(max(i for i in range(k) if theta.images[i] - base <= j) for j in range(length))
    return DeltaMap(length, k, imgs)


def delta_to_interval(u: DeltaMap) -> DeltaMap:
    """``u: n → m`` ↦ ``θ: [m] → [n]`` with ``θ(i) = min{j : u(j) ≥ i}``."""
    n, m = u.dom, u.cod
    imgs = tuple(next((j for j in range(n) if u.images[j] >= i), n) for i in range(m + 1))
    return DeltaMap(m + 1, n + 1, imgs)


def to_simplicial(y: ColaxSetFunctor) -> SimplicialObject:
    if y.target != "set":
        raise NotCartesianTarget(y.target)
    n_max = y.max_len
    levels = {n: tuple(y.levels[n]) for n in range(n_max + 1)}

    def restrict(a: int, b: int, l_: int, x: Any) -> Any:
        tail = y.phi[(a, l_ - a)][x][1]
        return y.phi[(b - a, l_ - b)][tail][0]

    maps = {}
    for k in range(n_max + 1):
        for l_ in range(n_max + 1):
            for th in _delta_plus(k, l_):
                u = interval_to_delta(th)
                a, b = th.images[0], th.images[-1]
                maps[th] = {x: y.act[u][restrict(a, b, l_, x)] for x in levels[l_]}
    return SimplicialObject(n_max, levels, maps)


def validate_simplicial(x: SimplicialObject) -> SimplicialObject:
    n_max = x.max_len
    lv = {n: set(x.levels[n]) for n in range(n_max + 1)}
    for k in range(n_max + 1):
        for l_ in range(n_max + 1):
            for th in _delta_plus(k, l_):
                if th not in x.maps:
                    raise SimplicialViolation(th, detail="missing structure map")
                _check_map(x.maps[th], lv[l_], lv[k], (th,))
    for k, l_ in product(range(n_max + 1), repeat=2):
        for th in _delta_plus(k, l_):
            for th2 in _generators_from(l_ + 1, n_max + 1):
                if th2.cod == 0:
                    continue
                p = th2.cod - 1
                comp = DeltaMap(k + 1, p + 1, tuple(th2.images[i] for i in th.images))
                if any(x.maps[th][x.maps[th2][z]] != x.maps[comp][z] for z in lv[p]):
                    raise SimplicialViolation(th2, th, detail="not contravariantly functorial")
    return x


def from_simplicial(x: SimplicialObject) -> ColaxSetFunctor:
    n_max = x.max_len
    levels = {n: tuple(x.levels[n]) for n in range(n_max + 1)}
    act_ = {}
    for n in range(n_max + 1):
        for k in range(n_max + 1):
            for u in enumerate_hom(n, k):
                act_[u] = dict(x.maps[delta_to_interval(u)])
    phi = {}
    for a in range(n_max + 1):
        for b in range(n_max + 1 - a):
            first = DeltaMap(a + 1, a + b + 1, tuple(range(a + 1)))
            second = DeltaMap(b + 1, a + b + 1, tuple(range(a, a + b + 1)))
            fa, fb = x.maps[first], x.maps[second]
            phi[(a, b)] = {z: (fa[z], fb[z]) for z in levels[a + b]}
    return ColaxSetFunctor(n_max, levels, act_, phi)


@dataclass(frozen=True)
class Correspondence:
    simplicial: SimplicialObject
    recovered: ColaxSetFunctor
    roundtrip: bool


def simplicial_correspondence(y: ColaxSetFunctor, check: bool = True) -> Correspondence:
    """Simplicial set of ``y`` and the colax functor recovered from it."""
    if y.target != "set":
        raise NotCartesianTarget(y.target)
    if check:
        validate_colax_set_functor(y)
    x = to_simplicial(y)
    if check:
        validate_simplicial(x)
    back = from_simplicial(x)
    ok = dict(back.levels) == dict(y.levels) and dict(back.act) == dict(y.act) and dict(back.phi) == dict(y.phi)
    return Correspondence(x, back, ok)


def vertex_functor(points: Iterable[Any], max_len: int) -> ColaxSetFunctor:
    """``Y(n) = S^{n+1}`` (vertex sequences) with projection colaxity; its
    simplicial set is the nerve of the coarse category on ``S``."""
    pts = tuple(ordered(set(points)))
    levels = {n: tuple(product(pts, repeat=n + 1)) for n in range(max_len + 1)}
    act_ = {}
    for n in range(max_len + 1):
        for k in range(max_len + 1):
            for u in enumerate_hom(n, k):
                th = delta_to_interval(u)
                act_[u] = {v: tuple(v[i] for i in th.images) for v in levels[n]}
    phi = {}
    for a in range(max_len + 1):
        for b in range(max_len + 1 - a):
            phi[(a, b)] = {v: (v[: a + 1], v[a:]) for v in levels[a + b]}
    return ColaxSetFunctor(max_len, levels, act_, phi)


# ----------------------------------------------------------------------
# premorphisms, base change, restriction, foliation


@dataclass(frozen=True, eq=False)
class Premorphism:
    sigma: FinFunctor
    transformation: Transformation
    is_morphism: bool


def validate_premorphism(
    sigma: FinFunctor,
    comp1: Mapping[Any, Cell],
    comp2: Mapping[Cell, Cell],
    f: PathObject,
    g: PathObject,
    require_morphism: bool = False,
) -> Premorphism:
    """``σ: F ⇒ G ∘ P_Σ``; the morphism flag holds when every ``σ_A`` is a unit."""
    if f.max_len != g.max_len:
        raise ShapeMismatch(f.max_len, g.max_len, detail="truncations differ")
    if not _same(f.target, g.target):
        raise ShapeMismatch(detail="path-objects live over different bases")
    ps = path_functor(sigma, f.max_len, f.paths, g.paths)
    gp = compose_colax(g.morphism, ps, check=False)
    tr = validate_transformation(f.morphism, gp, comp1, comp2)
    m = f.target
    flag = True
    for a in ordered(f.shape.objects):
        if f.morphism.omap[a] != gp.omap[a] or comp1[a] != m.unit(f.morphism.omap[a]):
            flag = False
            if require_morphism:
                raise ObjectNotOverSameBase(a)
    return Premorphism(sigma, tr, flag)


def identity_premorphism(f: PathObject) -> Premorphism:
    m = f.target
    comp1 = {a: m.unit(f.morphism.omap[a]) for a in f.shape.objects}
    comp2 = {t: m.vcomp(_inv(m, m.runit(x)), m.lunit(x)) for t, x in f.morphism.map1.items()}
    return validate_premorphism(identity_functor(f.shape), comp1, comp2, f, f)


def posetal_premorphism(sigma: FinFunctor, f: PathObject, g: PathObject, require_morphism: bool = True) -> Premorphism:
    """Premorphism with unit components, for targets whose homs are posets.

    Each ``σ_t`` is the unique 2-cell ``I ⊗ Ft ⇒ G(Σt) ⊗ I``; raises
    :class:`MissingCellImage` when it does not exist.
    """
    m = f.target
    comp1 = {a: m.unit(f.morphism.omap[a]) for a in f.shape.objects}
    comp2 = {}
    for t in ordered(f.morphism.map1):
        a, b = t.src, t.dst
        gt = g.morphism.map1[Chain(sigma.omap[a], sigma.omap[b], tuple(sigma.amap[x] for x in t.arrows))]
        lo = m.tensor1(comp1[b], f.morphism.map1[t])
        hi = m.tensor1(gt, comp1[a])
        cell = unique_cell(m, lo, hi)
        if cell is None:
            raise MissingCellImage(t, detail=f"no 2-cell {fmt(lo)} => {fmt(hi)}")
        comp2[t] = cell
    return validate_premorphism(sigma, comp1, comp2, f, g, require_morphism)


def base_change(po: PathObject, lmor: ColaxMorphism, new_base: BaseOfEnrichment) -> PathObject:
    """``L ∘ F`` for a homomorphism ``L`` carrying ``W1`` into ``W2``."""
    if not _same(lmor.source, po.target):
        raise ShapeMismatch(detail="L does not start at the base of F")
    if not _same(lmor.target, new_base.bicategory):
        raise ShapeMismatch(detail="L does not land in the new base")
    m2 = new_base.bicategory
    for key in ordered(lmor.phi):
        if not m2.is_invertible2(lmor.phi[key]):
            raise NonInvertibleColaxity(*key, detail="L is not a homomorphism")
    for u in ordered(lmor.phi0):
        if not m2.is_invertible2(lmor.phi0[u]):
            raise NonInvertibleColaxity(u, detail="L is not a homomorphism")
    for a in ordered(po.base.W):
        if lmor.map2[a] not in new_base.W:
            raise WNotPreserved(a)
    out = check_path_object(compose_colax(lmor, po.morphism), new_base, revalidate=False)
    if po.segal and not out.segal:
        raise WNotPreserved(*out.offenders[0], detail="Segal property lost")
    return out


def restrict(po: PathObject, r: FinFunctor) -> PathObject:
    """``F ∘ P_r`` for ``r: D → C``."""
    pr = path_functor(r, po.max_len, None, po.paths)
    return check_path_object(compose_colax(po.morphism, pr), po.base, revalidate=False)


def foliation(po: PathObject, u: Any) -> PathObject:
    """The leaf over ``u``: restriction to objects over ``u``, viewed as a
    path-object of the endo-base ``(M(u,u), W(u,u))``."""
    f = po.morphism
    objs = [a for a in ordered(po.shape.objects) if f.omap[a] == u]
    if not objs:
        raise EmptyLeaf(u)
    sub, inc = full_subcategory(po.shape, objs)
    leaf = restrict(po, inc)
    m = po.target
    if not isinstance(m, FinBicategory):
        raise ShapeMismatch(detail="foliation needs a finite bicategory target")
    endo = m.restricted([u])
    lf = leaf.morphism
    g = validate_colax(lf.source, endo, lf.omap, lf.map1, lf.map2, lf.phi, lf.phi0)
    base = validate_base(endo, [a for a in endo.cells2() if a in po.base.W])
    return check_path_object(g, base, revalidate=False)


# ----------------------------------------------------------------------
# finite groups and cocycles


@dataclass(frozen=True, eq=False)
class FinGroup:
    elements: tuple
    mult: Mapping[tuple, Any]
    e: Any
    name: str = ""

    def inv(self, x: Any) -> Any:
        return next(y for y in self.elements if self.mult[(x, y)] == self.e)


def validate_group(elements: Iterable[Any], mult: Mapping, e: Any, name: str = "") -> FinGroup:
    els = tuple(dict.fromkeys(elements))
    s = set(els)
    if e not in s:
        raise GroupAxiomViolation(e, detail="identity is not an element")
    for x, y in product(els, repeat=2):
        if mult.get((x, y)) not in s:
            raise GroupAxiomViolation(x, y, detail="product missing or outside the group")
    for x in els:
        if mult[(e, x)] != x or mult[(x, e)] != x:
            raise GroupAxiomViolation(x, detail="identity law")
        if not any(mult[(x, y)] == e and mult[(y, x)] == e for y in els):
            raise GroupAxiomViolation(x, detail="no inverse")
    for x, y, z in product(els, repeat=3):
        if mult[(mult[(x, y)], z)] != mult[(x, mult[(y, z)])]:
            raise GroupAxiomViolation(x, y, z, detail="associativity")
    return FinGroup(els, dict(mult), e, name)


def cyclic_additive(n: int) -> FinGroup:
    els = tuple(range(n))
    return validate_group(els, {(x, y): (x + y) % n for x in els for y in els}, 0, f"Z/{n}")


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def primitive_root(p: int) -> int:
    return next(g for g in range(1, p) if len({pow(g, k, p) for k in range(p - 1)}) == p - 1)


def cyclic_multiplicative(n: int) -> tuple[FinGroup, dict]:
    """A multiplicative cyclic group of order ``n`` and the exponential
    ``k ↦ g^k`` from ``Z/n``.

    When ``n + 1`` is prime this is the unit group mod ``n + 1`` with a
    primitive root; otherwise the formal powers ``z^k``.
    """
    p = n + 1
    if _is_prime(p):
        g = primitive_root(p)
        els = tuple(range(1, p))
        grp = validate_group(els, {(x, y): x * y % p for x in els for y in els}, 1, f"U({p})")
        return grp, {k: pow(g, k, p) for k in range(n)}
    els = tuple(f"z^{k}" for k in range(n))
    mult = {(f"z^{a}", f"z^{b}"): f"z^{(a + b) % n}" for a in range(n) for b in range(n)}
    return validate_group(els, mult, "z^0", f"mu{n}"), {k: f"z^{k}" for k in range(n)}


def matrix_group(generators: Iterable[tuple], modulus: int | None = None, limit: int = 10000) -> FinGroup:
    """Group of 2×2 matrices ``(a, b, c, d)`` generated by ``generators``.

    Entries are reduced mod ``modulus`` when one is given; otherwise they are
    plain integers and the generated group must be finite (at most ``limit``
    elements).
    """
    q = modulus

    def red(x: int) -> int:
        return x % q if q else x

    def mul(x: tuple, y: tuple) -> tuple:
        a, b, c, d = x
        e_, f, g, h = y
        return (red(a * e_ + b * g), red(a * f + b * h), red(c * e_ + d * g), red(c * f + d * h))

    e = (1, 0, 0, 1)
    gens = [tuple(red(x) for x in g) for g in generators]
    els = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in els:
                    els.add(y)
                    nxt.append(y)
        if len(els) > limit:
            raise TruncationExceeded(len(els), detail="generated matrix group is too large")
        frontier = nxt
    ordered_els = tuple(ordered(els))
    name = f"GL2({q})" if q else "GL2(Z)"
    return validate_group(ordered_els, {(x, y): mul(x, y) for x in ordered_els for y in ordered_els}, e, name)


def group_bicategory(g: FinGroup) -> FinBicategory:
    """``BG``: one object, elements as 1-cells, only identity 2-cells.

    ``t ⊗ s`` (``s`` first) is the product ``s·t``, so a chain goes to the
    product of its labels in traversal order.
    """
    mult = {(x, y): g.mult[(y, x)] for x in g.elements for y in g.elements}
    return suspend_monoidal(discrete_monoid(g.elements, mult, g.e), name=f"B{g.name}")


def group_homomorphism(g: FinGroup, h: FinGroup, hmap: Mapping, bg: FinBicategory, bh: FinBicategory) -> ColaxMorphism:
    """The strict homomorphism ``BG → BH`` of a group homomorphism."""
    for x, y in product(g.elements, repeat=2):
        if hmap[g.mult[(x, y)]] != h.mult[(hmap[x], hmap[y])]:
            raise GroupAxiomViolation(x, y, detail="not a homomorphism")
    hg, hh = bg.hom(STAR, STAR), bh.hom(STAR, STAR)
    map1 = {x: hmap[x] for x in g.elements}
    map2 = {hg.identity(x): hh.identity(hmap[x]) for x in g.elements}
    phi = {(t, s): bh.id2(bh.tensor1(map1[t], map1[s])) for t, s in bg.composable1()}
    return validate_colax(bg, bh, {STAR: STAR}, map1, map2, phi, {STAR: bh.id2(bh.unit(STAR))})


def collapse_to_terminal(m: Bicategory) -> tuple[ColaxMorphism, BaseOfEnrichment]:
    """The homomorphism onto the one-cell bicategory, with its only base."""
    term = suspend_monoidal(discrete_monoid(["e"], {("e", "e"): "e"}, "e"), name="terminal")
    i = term.id2("e")
    lmor = validate_colax(
        m,
        term,
        {u: STAR for u in m.objects},
        {x: "e" for x in m.cells1()},
        {a: i for a in m.cells2()},
        {(t, s): i for t, s in m.composable1()},
        {u: i for u in m.objects},
    )
    return lmor, validate_base(term, term.cells2())


@dataclass(frozen=True, eq=False)
class CocycleResult:
    group: FinGroup
    bicategory: FinBicategory
    enriched: EnrichedCategory
    point: PathObject


def cocycle_enriched(points: Iterable[Any], g: FinGroup, f: Mapping[tuple, Any], bg: FinBicategory | None = None) -> EnrichedCategory:
    """Enriched data over ``BG`` induced by ``f`` with identity structure
    cells; validation fails exactly when ``f`` is not a normalized cocycle."""
    bg = bg or group_bicategory(g)
    pts = tuple(ordered(set(points)))
    hom = {(a, b): f[(a, b)] for a in pts for b in pts}
    hc = bg.hom(STAR, STAR)
    unit = {a: hc.identity(f[(a, a)]) for a in pts}
    comp = {(a, b, c): hc.identity(f[(a, c)]) for a, b, c in product(pts, repeat=3)}
    return validate_enriched(bg, pts, {a: STAR for a in pts}, hom, unit, comp)


def cocycle_check(
    points: Iterable[Any], g: FinGroup, f: Mapping[tuple, Any], max_len: int = 3, bg: FinBicategory | None = None
) -> CocycleResult:
    """Check ``f(a,a) = e`` and ``f(a,b)·f(b,c) = f(a,c)``, then build the
    strict path-object over ``BG``."""
    pts = tuple(ordered(set(points)))
    for a, b in product(pts, repeat=2):
        if (a, b) not in f or f[(a, b)] not in g.elements:
            raise MissingCellImage(a, b, detail="value is not a group element")
    for a in pts:
        if f[(a, a)] != g.e:
            raise UnitViolation(a)
    for a, b, c in product(pts, repeat=3):
        if g.mult[(f[(a, b)], f[(b, c)])] != f[(a, c)]:
            raise CocycleViolation(a, b, c)
    bg = bg or group_bicategory(g)
    e = cocycle_enriched(pts, g, f, bg)
    return CocycleResult(g, bg, e, enriched_to_path(e, max_len))


def coboundary(g: FinGroup, labels: Mapping[Any, Any]) -> dict:
    """``f(a, b) = h(a)⁻¹ · h(b)``, always a cocycle."""
    return {(a, b): g.mult[(g.inv(labels[a]), labels[b])] for a in labels for b in labels}


# ----------------------------------------------------------------------
# quantale metrics


@lru_cache(maxsize=None)
def _quantale_bicategory(k: int, order: str) -> FinBicategory:
    return suspend_monoidal(quantale_monoidal(k, order), name=f"Q{k}")


@dataclass(frozen=True)
class QuantaleBase:
    """``({0..K, ∞}, +, 0)`` ordered by ``≥`` (or ``≤``), suspended."""

    k: int
    order: str = "ge"

    @property
    def carrier(self) -> tuple:
        return quantale_carrier(self.k)

    @property
    def bicategory(self) -> FinBicategory:
        return _quantale_bicategory(self.k, self.order)

    def add(self, x: float, y: float) -> float:
        return capped_add(x, y, self.k)

    def bases(self) -> tuple[BaseOfEnrichment, BaseOfEnrichment]:
        return _quantale_bases(self.k, self.order)


@lru_cache(maxsize=None)
def _quantale_bases(k: int, order: str) -> tuple[BaseOfEnrichment, BaseOfEnrichment]:
    return canonical_bases(_quantale_bicategory(k, order))


@dataclass(frozen=True, eq=False)
class MetricResult:
    distances: Mapping[tuple, float]
    enriched: EnrichedCategory
    point: PathObject


def pullback_distances(points: Iterable[Any], d: Mapping[tuple, float], f: Mapping[Any, Any]) -> dict:
    pts = list(points)
    return {(a, b): d[(f[a], f[b])] for a in pts for b in pts}


def metric_enrichment(
    points: Iterable[Any],
    d: Mapping[tuple, float],
    q: QuantaleBase,
    pullback: Mapping[Any, Any] | None = None,
    max_len: int = 3,
    all_cells: bool = True,
) -> MetricResult:
    """Distance table as a category enriched in the quantale.

    With ``pullback`` the table is ``d(f a, f b)``.  Classified against all
    2-cells (``all_cells``) or against the isomorphisms.
    """
    pts = tuple(ordered(set(points)))
    dist = pullback_distances(pts, d, pullback) if pullback is not None else {(a, b): d[(a, b)] for a in pts for b in pts}
    carrier = set(q.carrier)
    for key in ordered(dist):
        if dist[key] not in carrier:
            raise MissingCellImage(*key, detail=f"distance {fmt(dist[key])} outside the carrier")
    for a in pts:
        if dist[(a, a)] != 0:
            raise ZeroDiagonalViolation(a)
    m = q.bicategory
    comp = {}
    for a, b, c in product(pts, repeat=3):
        cell = unique_cell(m, q.add(dist[(b, c)], dist[(a, b)]), dist[(a, c)])
        if cell is None:
            raise TriangleViolation(a, b, c)
        comp[(a, b, c)] = cell
    unit = {a: m.id2(0) for a in pts}
    e = validate_enriched(m, pts, {a: STAR for a in pts}, dist, unit, comp)
    iso, every = q.bases()
    po = enriched_to_path(e, max_len, every if all_cells else iso)
    return MetricResult(dist, e, po)


__all__ = [
    "CocycleResult",
    "ColaxSetFunctor",
    "Correspondence",
    "EnrichedCategory",
    "FinGroup",
    "HomotopyMonoid",
    "LaxData",
    "MetricResult",
    "PathObject",
    "Premorphism",
    "QuantaleBase",
    "SimplicialObject",
    "base_change",
    "check_path_object",
    "coboundary",
    "cocycle_check",
    "cocycle_enriched",
    "collapse_to_terminal",
    "cyclic_additive",
    "cyclic_multiplicative",
    "delta_to_interval",
    "enriched_to_path",
    "foliation",
    "from_simplicial",
    "group_bicategory",
    "group_homomorphism",
    "homotopy_monoid_view",
    "identity_premorphism",
    "interval_to_delta",
    "lax_to_path",
    "matrix_group",
    "metric_enrichment",
    "path_to_lax",
    "posetal_path_object",
    "posetal_premorphism",
    "primitive_root",
    "pullback_distances",
    "restrict",
    "simplicial_correspondence",
    "strict_to_enriched",
    "to_simplicial",
    "validate_colax_set_functor",
    "validate_enriched",
    "validate_group",
    "validate_lax_data",
    "validate_premorphism",
    "validate_simplicial",
    "vertex_functor",
    "with_base",
]
