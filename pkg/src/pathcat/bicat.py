"""Finite bicategories, colax morphisms, transformations, modifications and
bases of enrichment.

Conventions: for 1-cells ``s: A → B`` and ``t: B → C`` the horizontal
composite is written ``t ⊗ s``.  The associator is
``a(h, g, f): (h ⊗ g) ⊗ f → h ⊗ (g ⊗ f)`` and the unitors are
``l(f): I_B ⊗ f → f`` and ``r(f): f ⊗ I_A → f``.  1-cell and 2-cell ids are
required to be unique across hom-categories, so a cell determines its
endpoints.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Hashable, Iterable, Iterator, Mapping

from ._util import fmt, ordered
from .errors import (
    AmbiguousCell,
    CellTypeMismatch,
    CompositionNotPreserved,
    IdentityNotPreserved,
    M1Violation,
    M2Violation,
    MissingCellImage,
    MissingInvertible,
    ModificationAxiomViolation,
    MonoidalAxiomViolation,
    HorizontalClosureViolation,
    NonInvertibleStructureCell,
    NonNaturalAssociator,
    NonNaturalColaxity,
    NonNaturalComponent,
    PathcatError,
    PentagonViolation,
    ThreeForTwoViolation,
    TransformationAxiomViolation,
    TriangleViolation,
    UnitAxiomViolation,
    UnknownObject,
)
from .fincat import FinCategory, preorder_category, discrete

Cell = Hashable


class Bicategory(ABC):
    """Read-only interface shared by finite bicategories and truncated path
    2-categories.  ``tensor1``/``tensor2`` return ``None`` where a composite
    is not available (truncation)."""

    @property
    @abstractmethod
    def objects(self) -> tuple: ...

    @abstractmethod
    def hom(self, u: Any, v: Any) -> FinCategory: ...

    @abstractmethod
    def ends1(self, x: Cell) -> tuple: ...

    @abstractmethod
    def ends2(self, a: Cell) -> tuple: ...

    @abstractmethod
    def unit(self, u: Any) -> Cell: ...

    @abstractmethod
    def tensor1(self, t: Cell, s: Cell) -> Cell | None: ...

    @abstractmethod
    def tensor2(self, b: Cell, a: Cell) -> Cell | None: ...

    @abstractmethod
    def assoc(self, h: Cell, g: Cell, f: Cell) -> Cell: ...

    @abstractmethod
    def lunit(self, f: Cell) -> Cell: ...

    @abstractmethod
    def runit(self, f: Cell) -> Cell: ...

    # -- derived helpers ------------------------------------------------
    def hom_of2(self, a: Cell) -> FinCategory:
        return self.hom(*self.ends2(a))

    def hom_of1(self, x: Cell) -> FinCategory:
        return self.hom(*self.ends1(x))

    def src2(self, a: Cell) -> Cell:
        return self.hom_of2(a).src(a)

    def dst2(self, a: Cell) -> Cell:
        return self.hom_of2(a).dst(a)

    def id2(self, x: Cell) -> Cell:
        return self.hom_of1(x).identity(x)

    def is_id2(self, a: Cell) -> bool:
        return self.hom_of2(a).is_identity(a)

    def vcomp(self, b: Cell, a: Cell) -> Cell:
        """``b ∘ a`` (vertical)."""
        return self.hom_of2(a).compose(b, a)

    def seq(self, *cells: Cell) -> Cell:
        """Vertical composite of ``cells`` in order of application."""
        acc = cells[0]
        for c in cells[1:]:
            acc = self.vcomp(c, acc)
        return acc

    def inverse2(self, a: Cell) -> Cell | None:
        return self.hom_of2(a).inverse(a)

    def is_invertible2(self, a: Cell) -> bool:
        return self.inverse2(a) is not None

    def wl(self, x: Cell, a: Cell) -> Cell | None:
        """Left whiskering ``x ⊗ a``."""
        return self.tensor2(self.id2(x), a)

    def wr(self, a: Cell, x: Cell) -> Cell | None:
        """Right whiskering ``a ⊗ x``."""
        return self.tensor2(a, self.id2(x))

    def cells1_between(self, u: Any, v: Any) -> tuple:
        return self.hom(u, v).objects

    def cells1(self) -> Iterator[Cell]:
        for u in self.objects:
            for v in self.objects:
                yield from self.hom(u, v).objects

    def cells2(self) -> Iterator[Cell]:
        for u in self.objects:
            for v in self.objects:
                yield from self.hom(u, v).arrows

    def composable1(self) -> Iterator[tuple[Cell, Cell]]:
        """Pairs ``(t, s)`` with ``t ⊗ s`` available."""
        for a in self.objects:
            for b in self.objects:
                for s in self.hom(a, b).objects:
                    for c in self.objects:
                        for t in self.hom(b, c).objects:
                            if self.tensor1(t, s) is not None:
                                yield t, s

    def composable3(self) -> Iterator[tuple[Cell, Cell, Cell]]:
        for g, f in self.composable1():
            gf = self.tensor1(g, f)
            c = self.ends1(g)[1]
            for d in self.objects:
                for h in self.hom(c, d).objects:
                    hg = self.tensor1(h, g)
                    if hg is None or self.tensor1(hg, f) is None or self.tensor1(h, gf) is None:
                        continue
                    yield h, g, f


# ----------------------------------------------------------------------
# finite bicategories


class FinBicategory(Bicategory):
    """Explicit finite bicategory; build through :func:`validate_bicategory`.

    Missing associator or unitor components default to the identity when
    source and target already coincide.
    """

    def __init__(
        self,
        objects: Iterable[Any],
        homs: Mapping[tuple, FinCategory],
        units: Mapping[Any, Cell],
        tensor1: Mapping[tuple[Cell, Cell], Cell],
        tensor2: Mapping[tuple[Cell, Cell], Cell],
        assoc: Mapping[tuple[Cell, Cell, Cell], Cell] | None = None,
        lunit: Mapping[Cell, Cell] | None = None,
        runit: Mapping[Cell, Cell] | None = None,
        name: str = "",
    ) -> None:
        self.name = name
        self._objects = tuple(ordered(set(objects)))
        empty = FinCategory([], {}, {}, {})
        self._homs = {}
        for u in self._objects:
            for v in self._objects:
                self._homs[(u, v)] = homs.get((u, v), empty)
        self._ends1: dict[Cell, tuple] = {}
        self._ends2: dict[Cell, tuple] = {}
        for key in ordered(self._homs):
            h = self._homs[key]
            for x in h.objects:
                if x in self._ends1:
                    raise AmbiguousCell(x, detail="1-cell id used in two hom-categories")
                self._ends1[x] = key
            for a in h.arrows:
                if a in self._ends2:
                    raise AmbiguousCell(a, detail="2-cell id used in two hom-categories")
                self._ends2[a] = key
        self._units = MappingProxyType(dict(units))
        self._t1 = MappingProxyType(dict(tensor1))
        self._t2 = MappingProxyType(dict(tensor2))
        self._assoc = dict(assoc or {})
        self._lunit = dict(lunit or {})
        self._runit = dict(runit or {})

    @property
    def objects(self) -> tuple:
        return self._objects

    @property
    def homs(self) -> Mapping[tuple, FinCategory]:
        return MappingProxyType(self._homs)

    @property
    def units(self) -> Mapping:
        return self._units

    @property
    def tensor1_table(self) -> Mapping:
        return self._t1

    @property
    def tensor2_table(self) -> Mapping:
        return self._t2

    def hom(self, u: Any, v: Any) -> FinCategory:
        try:
            return self._homs[(u, v)]
        except KeyError:
            raise UnknownObject((u, v)) from None

    def ends1(self, x: Cell) -> tuple:
        try:
            return self._ends1[x]
        except KeyError:
            raise MissingCellImage(x, detail="unknown 1-cell") from None

    def ends2(self, a: Cell) -> tuple:
        try:
            return self._ends2[a]
        except KeyError:
            raise MissingCellImage(a, detail="unknown 2-cell") from None

    def has_cell1(self, x: Cell) -> bool:
        return x in self._ends1

    def has_cell2(self, a: Cell) -> bool:
        return a in self._ends2

    def unit(self, u: Any) -> Cell:
        return self._units[u]

    def tensor1(self, t: Cell, s: Cell) -> Cell | None:
        return self._t1.get((t, s))

    def tensor2(self, b: Cell, a: Cell) -> Cell | None:
        return self._t2.get((b, a))

    def assoc(self, h: Cell, g: Cell, f: Cell) -> Cell:
        got = self._assoc.get((h, g, f))
        if got is not None:
            return got
        src = self._t1[(self._t1[(h, g)], f)]
        dst = self._t1[(h, self._t1[(g, f)])]
        if src != dst:
            raise MissingCellImage((h, g, f), detail="associator component missing")
        return self.id2(src)

    def lunit(self, f: Cell) -> Cell:
        got = self._lunit.get(f)
        if got is not None:
            return got
        src = self._t1[(self._units[self.ends1(f)[1]], f)]
        if src != f:
            raise MissingCellImage(f, detail="left unitor component missing")
        return self.id2(f)

    def runit(self, f: Cell) -> Cell:
        got = self._runit.get(f)
        if got is not None:
            return got
        src = self._t1[(f, self._units[self.ends1(f)[0]])]
        if src != f:
            raise MissingCellImage(f, detail="right unitor component missing")
        return self.id2(f)

    def restricted(self, objs: Iterable[Any]) -> "FinBicategory":
        """Locally full sub-bicategory on ``objs``."""
        keep = set(objs)
        homs = {k: v for k, v in self._homs.items() if k[0] in keep and k[1] in keep}
        c1 = {x for h in homs.values() for x in h.objects}
        c2 = {a for h in homs.values() for a in h.arrows}
        return FinBicategory(
            keep,
            homs,
            {u: self._units[u] for u in keep},
            {k: v for k, v in self._t1.items() if k[0] in c1 and k[1] in c1},
            {k: v for k, v in self._t2.items() if k[0] in c2 and k[1] in c2},
            {k: v for k, v in self._assoc.items() if all(x in c1 for x in k)},
            {k: v for k, v in self._lunit.items() if k in c1},
            {k: v for k, v in self._runit.items() if k in c1},
            name=self.name,
        )

    def __repr__(self) -> str:
        n1 = len(self._ends1)
        n2 = len(self._ends2)
        return f"<FinBicategory {self.name}: {len(self._objects)} objects, {n1} 1-cells, {n2} 2-cells>"


def _expect(b: Bicategory, a: Cell, src: Cell, dst: Cell, where: tuple, what: str) -> None:
    try:
        ok = b.src2(a) == src and b.dst2(a) == dst
    except PathcatError:
        ok = False
    if not ok:
        raise CellTypeMismatch(*where, detail=f"{what} must go {fmt(src)} => {fmt(dst)}")


def validate_bicategory(b: FinBicategory) -> FinBicategory:
    """Exhaustively check functoriality of composition, naturality and
    invertibility of the structure cells, the pentagon and the triangle."""
    for u in b.objects:
        if b.unit(u) not in b.hom(u, u).objects:
            raise CellTypeMismatch(u, detail="unit is not an endo 1-cell")
    for t, s in _pairs(b):
        ts = b.tensor1(t, s)
        if ts is None:
            raise MissingCellImage(t, s, detail="horizontal composite of 1-cells missing")
        if not b.has_cell1(ts) or b.ends1(ts) != (b.ends1(s)[0], b.ends1(t)[1]):
            raise CellTypeMismatch(t, s, detail="horizontal composite has wrong endpoints")
    for t, s in _pairs(b):
        ht, hs = b.hom_of1(t), b.hom_of1(s)
        for beta in ht.out_of(t):
            for alpha in hs.out_of(s):
                ba = b.tensor2(beta, alpha)
                if ba is None:
                    raise MissingCellImage(beta, alpha, detail="horizontal composite of 2-cells missing")
                _expect(
                    b, ba, b.tensor1(t, s), b.tensor1(ht.dst(beta), hs.dst(alpha)), (beta, alpha), "tensor"
                )
        if b.tensor2(b.id2(t), b.id2(s)) != b.id2(b.tensor1(t, s)):
            raise IdentityNotPreserved(t, s, detail="horizontal composition")
    # interchange law
    for u, v, w in _obj_triples(b):
        hvw, huv = b.hom(v, w), b.hom(u, v)
        for b2, b1 in hvw.composable_pairs():
            for a2, a1 in huv.composable_pairs():
                lhs = b.tensor2(hvw.compose(b2, b1), huv.compose(a2, a1))
                rhs = b.vcomp(b.tensor2(b2, a2), b.tensor2(b1, a1))
                if lhs != rhs:
                    raise CompositionNotPreserved((b2, a2), (b1, a1), detail="interchange law")
    # structure cells: types and invertibility
    for h, g, f in b.composable3():
        a = b.assoc(h, g, f)
        _expect(b, a, b.tensor1(b.tensor1(h, g), f), b.tensor1(h, b.tensor1(g, f)), (h, g, f), "associator")
        if not b.is_invertible2(a):
            raise NonInvertibleStructureCell(h, g, f, detail="associator")
    for f in b.cells1():
        u, v = b.ends1(f)
        lf, rf = b.lunit(f), b.runit(f)
        _expect(b, lf, b.tensor1(b.unit(v), f), f, (f,), "left unitor")
        _expect(b, rf, b.tensor1(f, b.unit(u)), f, (f,), "right unitor")
        for c in (lf, rf):
            if not b.is_invertible2(c):
                raise NonInvertibleStructureCell(f, detail="unitor")
    # naturality, one variable at a time
    for h, g, f in b.composable3():
        a = b.assoc
        for x in b.hom_of1(f).out_of(f):
            f2 = b.dst2(x)
            lhs = b.vcomp(a(h, g, f2), b.wl(b.tensor1(h, g), x))
            rhs = b.vcomp(b.wl(h, b.wl(g, x)), a(h, g, f))
            if lhs != rhs:
                raise NonNaturalAssociator(h, g, f, detail=f"in the third variable along {fmt(x)}")
        for x in b.hom_of1(g).out_of(g):
            g2 = b.dst2(x)
            lhs = b.vcomp(a(h, g2, f), b.wr(b.wl(h, x), f))
            rhs = b.vcomp(b.wl(h, b.wr(x, f)), a(h, g, f))
            if lhs != rhs:
                raise NonNaturalAssociator(h, g, f, detail=f"in the second variable along {fmt(x)}")
        for x in b.hom_of1(h).out_of(h):
            h2 = b.dst2(x)
            lhs = b.vcomp(a(h2, g, f), b.wr(b.wr(x, g), f))
            rhs = b.vcomp(b.wr(x, b.tensor1(g, f)), a(h, g, f))
            if lhs != rhs:
                raise NonNaturalAssociator(h, g, f, detail=f"in the first variable along {fmt(x)}")
    for f in b.cells1():
        u, v = b.ends1(f)
        for x in b.hom_of1(f).out_of(f):
            f2 = b.dst2(x)
            if b.vcomp(b.lunit(f2), b.wl(b.unit(v), x)) != b.vcomp(x, b.lunit(f)):
                raise NonNaturalAssociator(f, detail=f"left unitor along {fmt(x)}")
            if b.vcomp(b.runit(f2), b.wr(x, b.unit(u))) != b.vcomp(x, b.runit(f)):
                raise NonNaturalAssociator(f, detail=f"right unitor along {fmt(x)}")
    # pentagon
    for h, g, f in b.composable3():
        d = b.ends1(h)[1]
        for e in b.objects:
            for k in b.hom(d, e).objects:
                a = b.assoc
                kh, hg, gf = b.tensor1(k, h), b.tensor1(h, g), b.tensor1(g, f)
                lhs = b.vcomp(a(k, h, gf), a(kh, g, f))
                rhs = b.seq(b.wr(a(k, h, g), f), a(k, hg, f), b.wl(k, a(h, g, f)))
                if lhs != rhs:
                    raise PentagonViolation(k, h, g, f)
    # triangle
    for g, f in _pairs(b):
        i = b.unit(b.ends1(f)[1])
        lhs = b.vcomp(b.wl(g, b.lunit(f)), b.assoc(g, i, f))
        rhs = b.wr(b.runit(g), f)
        if lhs != rhs:
            raise TriangleViolation(g, f)
    return b


def _pairs(b: Bicategory) -> Iterator[tuple[Cell, Cell]]:
    for u, v, w in _obj_triples(b):
        for s in b.hom(u, v).objects:
            for t in b.hom(v, w).objects:
                yield t, s


def _obj_triples(b: Bicategory) -> Iterator[tuple]:
    for u in b.objects:
        for v in b.objects:
            for w in b.objects:
                yield u, v, w


# ----------------------------------------------------------------------
# the 2-cell dual (reverses 2-cells); used for lax inputs


def _opposite(c: FinCategory) -> FinCategory:
    arrows = {a: (c.dst(a), c.src(a)) for a in c.arrows}
    comp = {(f, g): h for (g, f), h in c.comp_table.items()}
    return FinCategory(c.objects, arrows, dict(c.identities), comp)


class CoDual(Bicategory):
    """``M^co``: same objects and 1-cells, every 2-cell reversed."""

    def __init__(self, inner: Bicategory) -> None:
        self.inner = inner
        self._cache: dict[tuple, FinCategory] = {}

    @property
    def objects(self) -> tuple:
        return self.inner.objects

    def hom(self, u: Any, v: Any) -> FinCategory:
        if (u, v) not in self._cache:
            self._cache[(u, v)] = _opposite(self.inner.hom(u, v))
        return self._cache[(u, v)]

    def ends1(self, x: Cell) -> tuple:
        return self.inner.ends1(x)

    def ends2(self, a: Cell) -> tuple:
        return self.inner.ends2(a)

    def unit(self, u: Any) -> Cell:
        return self.inner.unit(u)

    def tensor1(self, t: Cell, s: Cell) -> Cell | None:
        return self.inner.tensor1(t, s)

    def tensor2(self, b: Cell, a: Cell) -> Cell | None:
        return self.inner.tensor2(b, a)

    def _inv(self, a: Cell) -> Cell:
        inv = self.inner.inverse2(a)
        if inv is None:
            raise NonInvertibleStructureCell(a)
        return inv

    def assoc(self, h: Cell, g: Cell, f: Cell) -> Cell:
        return self._inv(self.inner.assoc(h, g, f))

    def lunit(self, f: Cell) -> Cell:
        return self._inv(self.inner.lunit(f))

    def runit(self, f: Cell) -> Cell:
        return self._inv(self.inner.runit(f))


# ----------------------------------------------------------------------
# monoidal categories and suspension


@dataclass(frozen=True, eq=True)
class MonoidalCategory:
    category: FinCategory
    tensor_obj: Mapping[tuple, Any]
    tensor_arr: Mapping[tuple, Any]
    unit: Any
    alpha: Mapping[tuple, Any] = field(default_factory=dict)
    lam: Mapping[Any, Any] = field(default_factory=dict)
    rho: Mapping[Any, Any] = field(default_factory=dict)

    def normalized(self) -> "MonoidalCategory":
        """Fill identity defaults so that every component is explicit."""
        c, to = self.category, self.tensor_obj
        alpha = {}
        for x in c.objects:
            for y in c.objects:
                for z in c.objects:
                    key = (x, y, z)
                    alpha[key] = self.alpha[key] if key in self.alpha else c.identity(to[(to[(x, y)], z)])
        lam = {x: self.lam[x] if x in self.lam else c.identity(to[(self.unit, x)]) for x in c.objects}
        rho = {x: self.rho[x] if x in self.rho else c.identity(to[(x, self.unit)]) for x in c.objects}
        return MonoidalCategory(c, dict(to), dict(self.tensor_arr), self.unit, alpha, lam, rho)


STAR = "*"


def suspend_monoidal(m: MonoidalCategory, obj: Any = STAR, name: str = "") -> FinBicategory:
    """The one-object bicategory whose hom is ``m``; raises
    :class:`MonoidalAxiomViolation` when the monoidal axioms fail."""
    m = m.normalized()
    b = FinBicategory(
        [obj],
        {(obj, obj): m.category},
        {obj: m.unit},
        m.tensor_obj,
        m.tensor_arr,
        m.alpha,
        m.lam,
        m.rho,
        name=name,
    )
    try:
        return validate_bicategory(b)
    except PathcatError as e:
        raise MonoidalAxiomViolation(*e.where, detail=f"{e.code}: {e.detail}".rstrip(": ")) from e


def spread_monoidal(m: MonoidalCategory, objects: Iterable[Any], name: str = "") -> FinBicategory:
    """Copy ``m`` onto every hom of a bicategory with the given objects.

    1-cells and 2-cells of ``m`` are tagged ``(u, v, x)`` so that each
    hom-category keeps its own ids; tensor and structure cells are those of
    ``m`` on the untagged labels.
    """
    m = m.normalized()
    objs = ordered(set(objects))
    c = m.category
    homs, units = {}, {}
    for u in objs:
        units[u] = (u, u, m.unit)
        for v in objs:
            homs[(u, v)] = FinCategory(
                [(u, v, x) for x in c.objects],
                {(u, v, a): ((u, v, c.src(a)), (u, v, c.dst(a))) for a in c.arrows},
                {(u, v, x): (u, v, c.identity(x)) for x in c.objects},
                {((u, v, g), (u, v, f)): (u, v, c.compose(g, f)) for g, f in c.composable_pairs()},
            )
    t1, t2, assoc, lunit, runit = {}, {}, {}, {}, {}
    for u in objs:
        for v in objs:
            for x in c.objects:
                lunit[(u, v, x)] = (u, v, m.lam[x])
                runit[(u, v, x)] = (u, v, m.rho[x])
            for w in objs:
                for x in c.objects:
                    for y in c.objects:
                        t1[((v, w, x), (u, v, y))] = (u, w, m.tensor_obj[(x, y)])
                for a in c.arrows:
                    for b in c.arrows:
                        t2[((v, w, a), (u, v, b))] = (u, w, m.tensor_arr[(a, b)])
                for z in objs:
                    for x in c.objects:
                        for y in c.objects:
                            for q in c.objects:
                                assoc[((w, z, x), (v, w, y), (u, v, q))] = (u, z, m.alpha[(x, y, q)])
    return validate_bicategory(FinBicategory(objs, homs, units, t1, t2, assoc, lunit, runit, name=name))


def abelian_delooping(n: int) -> MonoidalCategory:
    """One object ``x`` whose automorphisms form ``Z/n``; tensor adds.

    Parallel 2-cells make it a target in which coherence cells can be
    perturbed without changing their endpoints.
    """
    cat = FinCategory(
        ["x"],
        {k: ("x", "x") for k in range(n)},
        {"x": 0},
        {(g, f): (g + f) % n for g in range(n) for f in range(n)},
    )
    ta = {(a, b): (a + b) % n for a in range(n) for b in range(n)}
    return MonoidalCategory(cat, {("x", "x"): "x"}, ta, "x")


def monoidal_of_hom(b: Bicategory, u: Any) -> MonoidalCategory:
    """The monoidal category ``b(u, u)``."""
    c = b.hom(u, u)
    objs = c.objects
    to = {(x, y): b.tensor1(x, y) for x in objs for y in objs}
    ta = {(p, q): b.tensor2(p, q) for p in c.arrows for q in c.arrows}
    alpha = {(x, y, z): b.assoc(x, y, z) for x in objs for y in objs for z in objs}
    return MonoidalCategory(
        c, to, ta, b.unit(u), alpha, {x: b.lunit(x) for x in objs}, {x: b.runit(x) for x in objs}
    )


INF = float("inf")


def quantale_carrier(k: int) -> tuple:
    return tuple(range(k + 1)) + (INF,)


def capped_add(x: float, y: float, k: int) -> float:
    s = x + y
    return INF if s > k else s


def quantale_monoidal(k: int, order: str = "ge") -> MonoidalCategory:
    """Truncated tropical quantale ``({0..k, ∞}, +, 0)``.

    With ``order="ge"`` there is a 2-cell ``x → y`` iff ``x ≥ y``; with
    ``order="le"`` iff ``x ≤ y``.
    """
    vals = quantale_carrier(k)
    if order == "ge":
        rel = {(x, y) for x in vals for y in vals if x >= y}
    elif order == "le":
        rel = {(x, y) for x in vals for y in vals if x <= y}
    else:
        raise ValueError(f"unknown order {order!r}")
    cat = preorder_category(vals, rel)
    to = {(x, y): capped_add(x, y, k) for x in vals for y in vals}
    ta = {
        (p, q): (capped_add(p[0], q[0], k), capped_add(p[1], q[1], k)) for p in cat.arrows for q in cat.arrows
    }
    return MonoidalCategory(cat, to, ta, 0)


def bool_monoidal() -> MonoidalCategory:
    """``({true, false}, ∧, true)`` as a discrete monoidal category."""
    vals = ("false", "true")
    cat = discrete(vals)
    to = {(x, y): "true" if x == y == "true" else "false" for x in vals for y in vals}
    ta = {(cat.identity(x), cat.identity(y)): cat.identity(to[(x, y)]) for x in vals for y in vals}
    return MonoidalCategory(cat, to, ta, "true")


def discrete_monoid(elements: Iterable[Any], mult: Mapping[tuple, Any], unit: Any) -> MonoidalCategory:
    """A monoid viewed as a discrete monoidal category (tensor ``x ⊗ y = mult(x, y)``)."""
    vals = list(elements)
    cat = discrete(vals)
    ta = {(cat.identity(x), cat.identity(y)): cat.identity(mult[(x, y)]) for x in vals for y in vals}
    return MonoidalCategory(cat, dict(mult), ta, unit)


# ----------------------------------------------------------------------
# colax morphisms


@dataclass(frozen=True, eq=False)
class ColaxMorphism:
    source: Bicategory
    target: Bicategory
    omap: Mapping[Any, Any]
    map1: Mapping[Cell, Cell]
    map2: Mapping[Cell, Cell]
    phi: Mapping[tuple[Cell, Cell], Cell]
    phi0: Mapping[Any, Cell]
    strict: bool = False
    orientation: str = "colax"

    def ob(self, u: Any) -> Any:
        return self.omap[u]

    def c1(self, x: Cell) -> Cell:
        return self.map1[x]

    def c2(self, a: Cell) -> Cell:
        return self.map2[a]

    def same_data(self, other: "ColaxMorphism") -> bool:
        return (
            dict(self.omap) == dict(other.omap)
            and dict(self.map1) == dict(other.map1)
            and dict(self.map2) == dict(other.map2)
            and dict(self.phi) == dict(other.phi)
            and dict(self.phi0) == dict(other.phi0)
        )


def validate_colax(
    source: Bicategory,
    target: Bicategory,
    omap: Mapping[Any, Any],
    map1: Mapping[Cell, Cell],
    map2: Mapping[Cell, Cell],
    phi: Mapping[tuple[Cell, Cell], Cell],
    phi0: Mapping[Any, Cell],
    orientation: str = "colax",
) -> ColaxMorphism:
    """Check the colax-morphism axioms exhaustively (up to truncation).

    ``phi[(t, s)]: F(t ⊗ s) → Ft ⊗ Fs`` and ``phi0[A]: F(I_A) → I_FA``.
    With ``orientation="lax"`` the comparison cells point the other way and
    the data is checked as a colax morphism between the 2-cell duals.
    """
    if orientation == "lax":
        got = validate_colax(CoDual(source), CoDual(target), omap, map1, map2, phi, phi0)
        return ColaxMorphism(source, target, got.omap, got.map1, got.map2, got.phi, got.phi0, got.strict, "lax")
    if orientation != "colax":
        raise ValueError(f"unknown orientation {orientation!r}")
    S, T = source, target
    for u in S.objects:
        if u not in omap or omap[u] not in T.objects:
            raise MissingCellImage(u, detail="object image")
    for x in S.cells1():
        if x not in map1:
            raise MissingCellImage(x, detail="1-cell image")
        u, v = S.ends1(x)
        if T.ends1(map1[x]) != (omap[u], omap[v]):
            raise CellTypeMismatch(x, detail="1-cell image has wrong endpoints")
    for a in S.cells2():
        if a not in map2:
            raise MissingCellImage(a, detail="2-cell image")
        _expect(T, map2[a], map1[S.src2(a)], map1[S.dst2(a)], (a,), "2-cell image")
    for u in S.objects:
        for v in S.objects:
            h = S.hom(u, v)
            for x in h.objects:
                if map2[h.identity(x)] != T.id2(map1[x]):
                    raise IdentityNotPreserved(x)
            for g, f in h.composable_pairs():
                if map2[h.compose(g, f)] != T.vcomp(map2[g], map2[f]):
                    raise CompositionNotPreserved(g, f)
    pairs = list(S.composable1())
    for t, s in pairs:
        if (t, s) not in phi:
            raise MissingCellImage(t, s, detail="colaxity cell")
        ts = S.tensor1(t, s)
        _expect(T, phi[(t, s)], map1[ts], T.tensor1(map1[t], map1[s]), (t, s), "colaxity cell")
    for u in S.objects:
        if u not in phi0:
            raise MissingCellImage(u, detail="unit colaxity cell")
        _expect(T, phi0[u], map1[S.unit(u)], T.unit(omap[u]), (u,), "unit colaxity cell")
    # (M.1), colax form
    for h, g, f in S.composable3():
        hg, gf = S.tensor1(h, g), S.tensor1(g, f)
        Fh, Fg, Ff = map1[h], map1[g], map1[f]
        lhs = T.seq(phi[(hg, f)], T.wr(phi[(h, g)], Ff), T.assoc(Fh, Fg, Ff))
        rhs = T.seq(map2[S.assoc(h, g, f)], phi[(h, gf)], T.wl(Fh, phi[(g, f)]))
        if lhs != rhs:
            raise M1Violation(h, g, f)
    # (M.2), colax form
    for f in S.cells1():
        u, v = S.ends1(f)
        Ff = map1[f]
        right = T.seq(phi[(f, S.unit(u))], T.wl(Ff, phi0[u]), T.runit(Ff))
        if right != map2[S.runit(f)]:
            raise M2Violation(f, detail="right unit")
        left = T.seq(phi[(S.unit(v), f)], T.wr(phi0[v], Ff), T.lunit(Ff))
        if left != map2[S.lunit(f)]:
            raise M2Violation(f, detail="left unit")
    # naturality in each variable (the mixed case follows by interchange)
    for t, s in pairs:
        p = phi[(t, s)]
        for x in S.hom_of1(s).out_of(s):
            s2 = S.dst2(x)
            if S.tensor1(t, s2) is None:
                continue
            lhs = T.vcomp(T.wl(map1[t], map2[x]), p)
            rhs = T.vcomp(phi[(t, s2)], map2[S.wl(t, x)])
            if lhs != rhs:
                raise NonNaturalColaxity(t, s, detail=f"along {fmt(x)}")
        for x in S.hom_of1(t).out_of(t):
            t2 = S.dst2(x)
            if S.tensor1(t2, s) is None:
                continue
            lhs = T.vcomp(T.wr(map2[x], map1[s]), p)
            rhs = T.vcomp(phi[(t2, s)], map2[S.wr(x, s)])
            if lhs != rhs:
                raise NonNaturalColaxity(t, s, detail=f"along {fmt(x)}")
    strict = all(T.is_id2(c) for c in phi.values()) and all(T.is_id2(c) for c in phi0.values())
    return ColaxMorphism(
        S,
        T,
        MappingProxyType(dict(omap)),
        MappingProxyType(dict(map1)),
        MappingProxyType(dict(map2)),
        MappingProxyType(dict(phi)),
        MappingProxyType(dict(phi0)),
        strict,
    )


def revalidate(f: ColaxMorphism) -> ColaxMorphism:
    return validate_colax(f.source, f.target, f.omap, f.map1, f.map2, f.phi, f.phi0, f.orientation)


def identity_homomorphism(b: Bicategory) -> ColaxMorphism:
    return validate_colax(
        b,
        b,
        {u: u for u in b.objects},
        {x: x for x in b.cells1()},
        {a: a for a in b.cells2()},
        {(t, s): b.id2(b.tensor1(t, s)) for t, s in b.composable1()},
        {u: b.id2(b.unit(u)) for u in b.objects},
    )


def compose_colax(g: ColaxMorphism, f: ColaxMorphism, check: bool = True) -> ColaxMorphism:
    """``g ∘ f`` with comparison cells ``φ_g(Ft, Fs) ∘ G(φ_f(t, s))``."""
    S, T = f.source, g.target
    map1 = {x: g.map1[y] for x, y in f.map1.items()}
    map2 = {a: g.map2[b] for a, b in f.map2.items()}
    phi = {(t, s): T.vcomp(g.phi[(f.map1[t], f.map1[s])], g.map2[c]) for (t, s), c in f.phi.items()}
    phi0 = {u: T.vcomp(g.phi0[f.omap[u]], g.map2[c]) for u, c in f.phi0.items()}
    omap = {u: g.omap[v] for u, v in f.omap.items()}
    if check:
        return validate_colax(S, T, omap, map1, map2, phi, phi0)
    strict = all(T.is_id2(c) for c in phi.values()) and all(T.is_id2(c) for c in phi0.values())
    return ColaxMorphism(S, T, omap, map1, map2, phi, phi0, strict)


# ----------------------------------------------------------------------
# transformations and modifications


@dataclass(frozen=True, eq=False)
class Transformation:
    source: ColaxMorphism
    target: ColaxMorphism
    comp1: Mapping[Any, Cell]
    comp2: Mapping[Cell, Cell]


def validate_transformation(
    f: ColaxMorphism, g: ColaxMorphism, comp1: Mapping[Any, Cell], comp2: Mapping[Cell, Cell]
) -> Transformation:
    """``σ: F → G`` with ``σ_A: FA → GA`` and ``σ_t: σ_B ⊗ Ft → Gt ⊗ σ_A``."""
    S, T = f.source, f.target
    for u in S.objects:
        if u not in comp1:
            raise MissingCellImage(u, detail="component 1-cell")
        if T.ends1(comp1[u]) != (f.omap[u], g.omap[u]):
            raise CellTypeMismatch(u, detail="component 1-cell has wrong endpoints")
    for t in S.cells1():
        a, b = S.ends1(t)
        if t not in comp2:
            raise MissingCellImage(t, detail="component 2-cell")
        _expect(
            T,
            comp2[t],
            T.tensor1(comp1[b], f.map1[t]),
            T.tensor1(g.map1[t], comp1[a]),
            (t,),
            "component 2-cell",
        )
    for t in S.cells1():
        a, b = S.ends1(t)
        for x in S.hom_of1(t).out_of(t):
            t2 = S.dst2(x)
            lhs = T.vcomp(T.wr(g.map2[x], comp1[a]), comp2[t])
            rhs = T.vcomp(comp2[t2], T.wl(comp1[b], f.map2[x]))
            if lhs != rhs:
                raise NonNaturalComponent(t, detail=f"along {fmt(x)}")
    for t, s in S.composable1():
        a, b = S.ends1(s)
        c = S.ends1(t)[1]
        sa, sb, sc = comp1[a], comp1[b], comp1[c]
        Ft, Fs, Gt, Gs = f.map1[t], f.map1[s], g.map1[t], g.map1[s]
        ts = S.tensor1(t, s)
        lhs = T.vcomp(T.wr(g.phi[(t, s)], sa), comp2[ts])
        rhs = T.seq(
            T.wl(sc, f.phi[(t, s)]),
            _inv(T, T.assoc(sc, Ft, Fs)),
            T.wr(comp2[t], Fs),
            T.assoc(Gt, sb, Fs),
            T.wl(Gt, comp2[s]),
            _inv(T, T.assoc(Gt, Gs, sa)),
        )
        if lhs != rhs:
            raise TransformationAxiomViolation(t, s)
    for u in S.objects:
        su = comp1[u]
        i = S.unit(u)
        lhs = T.vcomp(T.wr(g.phi0[u], su), comp2[i])
        rhs = T.seq(T.wl(su, f.phi0[u]), T.runit(su), _inv(T, T.lunit(su)))
        if lhs != rhs:
            raise UnitAxiomViolation(u)
    return Transformation(f, g, MappingProxyType(dict(comp1)), MappingProxyType(dict(comp2)))


def _inv(b: Bicategory, a: Cell) -> Cell:
    inv = b.inverse2(a)
    if inv is None:
        raise NonInvertibleStructureCell(a)
    return inv


def identity_transformation(f: ColaxMorphism) -> Transformation:
    """``σ_A = I_FA`` and ``σ_t = r⁻¹ ∘ l``."""
    T = f.target
    comp1 = {u: T.unit(f.omap[u]) for u in f.source.objects}
    comp2 = {t: T.vcomp(_inv(T, T.runit(f.map1[t])), T.lunit(f.map1[t])) for t in f.source.cells1()}
    return validate_transformation(f, f, comp1, comp2)


@dataclass(frozen=True, eq=False)
class Modification:
    source: Transformation
    target: Transformation
    components: Mapping[Any, Cell]


def validate_modification(s1: Transformation, s2: Transformation, gamma: Mapping[Any, Cell]) -> Modification:
    """Components ``Γ_A: σ1_A ⇒ σ2_A`` with
    ``(Gt ⊗ Γ_A) ∘ σ1_t = σ2_t ∘ (Γ_B ⊗ Ft)`` for every 1-cell ``t``."""
    f, g = s1.source, s1.target
    S, T = f.source, f.target
    for u in S.objects:
        if u not in gamma:
            raise MissingCellImage(u, detail="modification component")
        _expect(T, gamma[u], s1.comp1[u], s2.comp1[u], (u,), "modification component")
    for t in S.cells1():
        a, b = S.ends1(t)
        lhs = T.vcomp(T.wl(g.map1[t], gamma[a]), s1.comp2[t])
        rhs = T.vcomp(s2.comp2[t], T.wr(gamma[b], f.map1[t]))
        if lhs != rhs:
            raise ModificationAxiomViolation(t)
    return Modification(s1, s2, MappingProxyType(dict(gamma)))


def identity_modification(s: Transformation) -> Modification:
    T = s.source.target
    return validate_modification(s, s, {u: T.id2(x) for u, x in s.comp1.items()})


# ----------------------------------------------------------------------
# bases of enrichment


@dataclass(frozen=True, eq=False)
class BaseOfEnrichment:
    bicategory: Bicategory
    W: frozenset

    def __contains__(self, a: Cell) -> bool:
        return a in self.W


def validate_base(m: Bicategory, w: Iterable[Cell]) -> BaseOfEnrichment:
    W = frozenset(w)
    for u in m.objects:
        for v in m.objects:
            h = m.hom(u, v)
            for a in h.arrows:
                if a not in W and h.is_invertible(a):
                    raise MissingInvertible(a)
            for b2, a1 in h.composable_pairs():
                c = h.compose(b2, a1)
                if (a1 in W) + (b2 in W) + (c in W) == 2:
                    raise ThreeForTwoViolation(a1, b2)
    for u, v, x in _obj_triples(m):
        for a in m.hom(u, v).arrows:
            if a not in W:
                continue
            for b in m.hom(v, x).arrows:
                if b not in W:
                    continue
                c = m.tensor2(b, a)
                if c is not None and c not in W:
                    raise HorizontalClosureViolation(a, b)
    return BaseOfEnrichment(m, W)


def unique_cell(b: Bicategory, x: Cell, y: Cell) -> Cell | None:
    """The 2-cell ``x ⇒ y`` when exactly one exists, else ``None``."""
    u, v = b.ends1(x)
    if b.ends1(y) != (u, v):
        return None
    h = b.hom(u, v)
    cells = [a for a in h.out_of(x) if h.dst(a) == y]
    return cells[0] if len(cells) == 1 else None


def invertible_cells(m: Bicategory) -> frozenset:
    return frozenset(a for a in m.cells2() if m.is_invertible2(a))


def canonical_bases(m: Bicategory) -> tuple[BaseOfEnrichment, BaseOfEnrichment]:
    """``(M, 2-Iso)`` and ``(M, all 2-cells)``."""
    return validate_base(m, invertible_cells(m)), validate_base(m, m.cells2())


__all__ = [
    "BaseOfEnrichment",
    "Bicategory",
    "CoDual",
    "ColaxMorphism",
    "FinBicategory",
    "INF",
    "Modification",
    "MonoidalCategory",
    "STAR",
    "abelian_delooping",
    "Transformation",
    "bool_monoidal",
    "canonical_bases",
    "capped_add",
    "compose_colax",
    "discrete_monoid",
    "identity_homomorphism",
    "identity_modification",
    "identity_transformation",
    "invertible_cells",
    "monoidal_of_hom",
    "quantale_carrier",
    "quantale_monoidal",
    "revalidate",
    "spread_monoidal",
    "suspend_monoidal",
    "validate_base",
    "validate_bicategory",
    "validate_colax",
    "validate_modification",
    "validate_transformation",
    "unique_cell",
]
