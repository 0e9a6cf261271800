"""The truncated path 2-category of a finite category.

A 1-cell ``A → B`` is a chain of composable arrows (possibly empty, written
``[0,A]``).  A 2-cell ``s → t`` exists when some monotone map ``u`` of the
simplex category rewrites ``s`` into ``t``: the arrows of ``s`` sent to the
same position are composed, positions hit by nothing receive identities.
Hom-categories are posetal (one 2-cell per realizable pair), horizontal
composition is concatenation, and every chain has length at most ``N``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from ._util import fmt, order_key, ordered
from .bicat import Bicategory, ColaxMorphism, validate_colax
from .errors import (
    BaseNotTerminal,
    EndpointMismatch,
    IsoFailure,
    NonComposableImage,
    TruncationExceeded,
    UnknownObject,
)
from .fincat import FinCategory, FinFunctor, derive, nerve_level, preorder_category
from .simplex import DeltaMap, compose_delta, enumerate_hom, ordinal_sum


@dataclass(frozen=True)
class Chain:
    """``[n, s]``: ``arrows`` listed in traversal order from ``src`` to ``dst``."""

    src: Any
    dst: Any
    arrows: tuple = ()

    @property
    def n(self) -> int:
        return len(self.arrows)

    def order_key(self) -> tuple:
        return (len(self.arrows), order_key(self.src), order_key(self.dst), order_key(self.arrows))

    def fmt(self) -> str:
        if not self.arrows:
            return f"[0,{fmt(self.src)}]"
        return f"[{len(self.arrows)}," + ".".join(fmt(a) for a in self.arrows) + "]"

    def __repr__(self) -> str:
        return self.fmt()


def empty_chain(a: Any) -> Chain:
    return Chain(a, a, ())


def chain_of(c: FinCategory, arrows: Iterable[Any]) -> Chain:
    arrows = tuple(arrows)
    if not arrows:
        raise ValueError("use empty_chain for [0,A]")
    for f, g in zip(arrows, arrows[1:]):
        if c.dst(f) != c.src(g):
            raise EndpointMismatch(f, g)
    return Chain(c.src(arrows[0]), c.dst(arrows[-1]), arrows)


def concat_chains(t: Chain, s: Chain, max_len: int | None = None) -> Chain:
    """``t ⊗ s``: ``s`` followed by ``t``."""
    if s.dst != t.src:
        raise EndpointMismatch(t, s)
    if max_len is not None and t.n + s.n > max_len:
        raise TruncationExceeded(t, s, detail=f"length {t.n + s.n} > {max_len}")
    return Chain(s.src, t.dst, s.arrows + t.arrows)


def act(c: FinCategory, u: DeltaMap, s: Chain) -> Chain | None:
    """Rewrite ``s`` along ``u``; ``None`` when ``u`` does not apply."""
    if u.dom != s.n:
        return None
    if u.cod == 0:
        return s if s.src == s.dst else None
    out = []
    obj = s.src
    i = 0
    for j in range(u.cod):
        block = []
        while i < s.n and u.images[i] == j:
            block.append(s.arrows[i])
            i += 1
        if block:
            f = c.compose_path(block)
            out.append(f)
            obj = c.dst(f)
        else:
            out.append(c.identity(obj))
    return Chain(s.src, s.dst, tuple(out))


class PathHom:
    """Chains ``A → B`` up to the truncation, with the realizability order."""

    def __init__(self, base: FinCategory, a: Any, b: Any, chains: tuple, witness: Mapping) -> None:
        self.base = base
        self.source = a
        self.target = b
        self.chains = chains
        self.witness = dict(witness)
        self.category = preorder_category(chains, self.witness)

    def relations(self) -> tuple:
        return tuple(ordered(self.witness))


class Path2Category(Bicategory):
    """``P_C`` truncated at ``max_len``; a strict 2-category whose horizontal
    composition is defined when lengths add up to at most ``max_len``."""

    def __init__(self, base: FinCategory, max_len: int) -> None:
        if max_len < 1:
            raise ValueError("truncation must be at least 1")
        self.base = base
        self.max_len = max_len
        self._homs: dict[tuple, PathHom] = {}
        for a in base.objects:
            for b in base.objects:
                chains = []
                for n in range(max_len + 1):
                    for seq in nerve_level(base, n, a, b):
                        chains.append(Chain(a, b, seq))
                witness: dict[tuple, DeltaMap] = {}
                for s in chains:
                    for m in range(max_len + 1):
                        for u in enumerate_hom(s.n, m):
                            t = act(base, u, s)
                            if t is not None and (s, t) not in witness:
                                witness[(s, t)] = u
                self._homs[(a, b)] = PathHom(base, a, b, tuple(ordered(chains)), witness)

    @property
    def objects(self) -> tuple:
        return self.base.objects

    def path_hom(self, a: Any, b: Any) -> PathHom:
        try:
            return self._homs[(a, b)]
        except KeyError:
            raise UnknownObject((a, b)) from None

    def hom(self, a: Any, b: Any) -> FinCategory:
        return self.path_hom(a, b).category

    def ends1(self, x: Chain) -> tuple:
        return (x.src, x.dst)

    def ends2(self, a: tuple) -> tuple:
        return (a[0].src, a[0].dst)

    def unit(self, a: Any) -> Chain:
        return empty_chain(a)

    def tensor1(self, t: Chain, s: Chain) -> Chain | None:
        if s.dst != t.src or t.n + s.n > self.max_len:
            return None
        return Chain(s.src, t.dst, s.arrows + t.arrows)

    def tensor2(self, b: tuple, a: tuple) -> tuple | None:
        lo = self.tensor1(b[0], a[0])
        hi = self.tensor1(b[1], a[1])
        if lo is None or hi is None:
            return None
        return (lo, hi)

    def assoc(self, h: Chain, g: Chain, f: Chain) -> tuple:
        x = self.tensor1(self.tensor1(h, g), f)
        return (x, x)

    def lunit(self, f: Chain) -> tuple:
        return (f, f)

    def runit(self, f: Chain) -> tuple:
        return (f, f)

    def chains(self) -> list[Chain]:
        return [x for h in self._homs.values() for x in h.chains]

    def relations(self) -> list[tuple]:
        return [r for h in self._homs.values() for r in h.relations()]

    def witnesses(self, s: Chain, t: Chain) -> tuple[DeltaMap, ...]:
        """Every ``u`` rewriting ``s`` into ``t`` (before the posetal quotient)."""
        return tuple(u for u in enumerate_hom(s.n, t.n) if act(self.base, u, s) == t)

    def __repr__(self) -> str:
        return f"<Path2Category N={self.max_len}: {len(self.chains())} chains, {len(self.relations())} 2-cells>"


def build_path_category(c: FinCategory, max_len: int) -> Path2Category:
    return Path2Category(c, max_len)


def hom_witness(hom: PathHom, s: Chain, t: Chain) -> DeltaMap | None:
    """First monotone map (lexicographic) rewriting ``s`` into ``t``."""
    return hom.witness.get((s, t))


# ----------------------------------------------------------------------
# P_1 and the simplex category


@dataclass(frozen=True)
class DeltaIdentification:
    chain_of_length: Mapping[int, Chain]
    witnesses: Mapping[tuple[int, int], tuple[DeltaMap, ...]]
    max_len: int

    def morphism_count(self, n: int, m: int) -> int:
        return len(self.witnesses[(n, m)])


def delta_identification(p: Path2Category) -> DeltaIdentification:
    """Match ``P_1`` truncated at ``N`` with the simplex category.

    Checks: one chain per length; witnesses between lengths ``n`` and ``m``
    are exactly the monotone maps ``n → m``; composing witnesses is composing
    maps; concatenation is ordinal sum on lengths and on witnesses.
    """
    c = p.base
    if len(c.objects) != 1 or len(c.arrows) != 1:
        raise BaseNotTerminal(detail=f"base has {len(c.objects)} objects and {len(c.arrows)} arrows")
    o = c.objects[0]
    hom = p.path_hom(o, o)
    by_len: dict[int, Chain] = {}
    for s in hom.chains:
        if s.n in by_len:
            raise IsoFailure(s, detail="two chains of the same length")
        by_len[s.n] = s
    if sorted(by_len) != list(range(p.max_len + 1)):
        raise IsoFailure(detail="lengths do not cover 0..N")
    wit: dict[tuple[int, int], tuple] = {}
    for n, s in by_len.items():
        for m, t in by_len.items():
            got = p.witnesses(s, t)
            if set(got) != set(enumerate_hom(n, m)):
                raise IsoFailure(s, t, detail="witnesses differ from the monotone maps")
            if bool(got) != ((s, t) in hom.witness):
                raise IsoFailure(s, t, detail="order relation disagrees with witnesses")
            wit[(n, m)] = got
    wit_sets = {k: set(v) for k, v in wit.items()}
    for (n, m), us in wit.items():
        for u in us:
            for k in range(p.max_len + 1):
                for v in wit[(m, k)]:
                    if compose_delta(v, u) not in wit_sets[(n, k)]:
                        raise IsoFailure(u.fmt(), v.fmt(), detail="witnesses not closed under composition")
    for n in by_len:
        for m in by_len:
            if n + m > p.max_len:
                continue
            if concat_chains(by_len[m], by_len[n]) != by_len[n + m]:
                raise IsoFailure(n, m, detail="concatenation is not ordinal sum")
            for n2 in by_len:
                for m2 in by_len:
                    if n2 + m2 > p.max_len:
                        continue
                    for u in wit[(n, n2)]:
                        for v in wit[(m, m2)]:
                            if ordinal_sum(u, v) not in wit_sets[(n + m, n2 + m2)]:
                                raise IsoFailure(u.fmt(), v.fmt(), detail="sum of witnesses is not a witness")
    return DeltaIdentification(by_len, wit, p.max_len)


# ----------------------------------------------------------------------
# functoriality


def path_functor(
    f: FinFunctor, max_len: int, source: Path2Category | None = None, target: Path2Category | None = None
) -> ColaxMorphism:
    """The strict homomorphism ``P_F``, applied arrow-wise to chains."""
    ps = source or Path2Category(f.source, max_len)
    pt = target or Path2Category(f.target, max_len)
    map1 = {s: Chain(f.omap[s.src], f.omap[s.dst], tuple(f.amap[a] for a in s.arrows)) for s in ps.chains()}
    map2 = {r: (map1[r[0]], map1[r[1]]) for r in ps.relations()}
    phi = {(t, s): pt.id2(map1[ps.tensor1(t, s)]) for t, s in ps.composable1()}
    phi0 = {a: pt.id2(empty_chain(f.omap[a])) for a in ps.objects}
    return validate_colax(ps, pt, dict(f.omap), map1, map2, phi, phi0)


@dataclass(frozen=True)
class EmbedCompress:
    """``i: C → P_C`` (arrow ↦ length-one chain) and ``comp: P_C → C``."""

    base: FinCategory
    max_len: int
    i_arrows: Mapping[Any, Chain]
    comp: Mapping[Chain, Any]


def embed_and_compress(c: FinCategory, max_len: int, p: Path2Category | None = None) -> EmbedCompress:
    """Build ``i`` and ``comp`` and check ``comp ∘ i = Id`` and that ``comp``
    turns concatenation into composition and ``[0,A]`` into ``Id_A``."""
    p = p or Path2Category(c, max_len)
    i_arr = {f: Chain(c.src(f), c.dst(f), (f,)) for f in c.arrows}
    comp = {}
    for s in p.chains():
        comp[s] = c.identity(s.src) if s.n == 0 else c.compose_path(s.arrows)
    for f, s in i_arr.items():
        if comp[s] != f:
            raise IsoFailure(f, detail="comp ∘ i is not the identity")
    for t, s in p.composable1():
        if comp[p.tensor1(t, s)] != c.compose(comp[t], comp[s]):
            raise IsoFailure(t, s, detail="comp does not preserve composition")
    for r in p.relations():
        if comp[r[0]] != comp[r[1]]:
            raise IsoFailure(r[0], r[1], detail="comp does not send 2-cells to identities")
    return EmbedCompress(c, max_len, i_arr, comp)


def free_lift(
    c: FinCategory,
    max_len: int,
    m: Bicategory,
    omap: Mapping[Any, Any],
    amap: Mapping[Any, Any],
    p: Path2Category | None = None,
) -> ColaxMorphism:
    """Extend a functor ``G: C → M_{≤1}`` to a strict homomorphism ``P_C → M``.

    A chain goes to the composite of its images (front-parenthesized) and
    ``[0,A]`` to ``I_GA``.  Raises :class:`NonComposableImage` when ``G`` does
    not preserve composition or identities strictly.
    """
    p = p or Path2Category(c, max_len)
    for a in c.objects:
        if amap.get(c.identity(a), m.unit(omap[a])) != m.unit(omap[a]):
            raise NonComposableImage(c.identity(a), detail="identity not sent to the unit")
    img = dict(amap)
    for a in c.objects:
        img.setdefault(c.identity(a), m.unit(omap[a]))
    for g, f in c.composable_pairs():
        if m.tensor1(img[g], img[f]) != img[c.compose(g, f)]:
            raise NonComposableImage(g, f)
    map1 = {}
    for s in p.chains():
        if s.n == 0:
            map1[s] = m.unit(omap[s.src])
            continue
        acc = img[s.arrows[-1]]
        for a in reversed(s.arrows[:-1]):
            acc = m.tensor1(acc, img[a])
            if acc is None:
                raise NonComposableImage(s)
        map1[s] = acc
    map2 = {}
    for r in p.relations():
        if map1[r[0]] != map1[r[1]]:
            raise NonComposableImage(r[0], r[1], detail="2-cell endpoints differ")
        map2[r] = m.id2(map1[r[0]])
    phi = {}
    for t, s in p.composable1():
        x = map1[p.tensor1(t, s)]
        if m.tensor1(map1[t], map1[s]) != x:
            raise NonComposableImage(t, s, detail="target is not strictly associative")
        phi[(t, s)] = m.id2(x)
    phi0 = {a: m.id2(m.unit(omap[a])) for a in c.objects}
    return validate_colax(p, m, dict(omap), map1, map2, phi, phi0)


# ----------------------------------------------------------------------
# structural isomorphisms


@dataclass(frozen=True)
class IsoReport:
    mode: str
    max_len: int
    chain_map: Mapping[Any, Any] = field(repr=False)
    relation_map: Mapping[Any, Any] = field(repr=False)
    n_chains: int = 0
    n_relations: int = 0


def _untag(s: Chain) -> tuple[int, Chain]:
    tag = s.src[0]
    return tag, Chain(s.src[1], s.dst[1], tuple(a[1] for a in s.arrows))


def _reverse(u: DeltaMap) -> DeltaMap:
    n, m = u.dom, u.cod
    return DeltaMap(n, m, tuple(m - 1 - u.images[n - 1 - i] for i in range(n)))


def structural_isos(mode: str, c: FinCategory, d: FinCategory | None = None, max_len: int = 3) -> IsoReport:
    """Construct both sides of a structural isomorphism and check an explicit
    bijection on chains and on 2-cells.

    ``coproduct``: ``P_{C⊔D} ≅ P_C ⊔ P_D``; ``opposite``: ``(P_C)^op ≅ P_{C^op}``
    (1-cells reversed, 2-cells kept); ``fiber_product``:
    ``P_{C×D} ≅ P_C ×_{P_1} P_D`` (pairs of equal-length chains, 2-cells a
    common witness).
    """
    n = max_len
    if mode == "coproduct":
        assert d is not None
        whole = Path2Category(derive(c, "coproduct", d), n)
        parts = (Path2Category(c, n), Path2Category(d, n))
        chain_map = {s: _untag(s) for s in whole.chains()}
        expected = {(k, s) for k, pk in enumerate(parts) for s in pk.chains()}
        rel_map = {r: (_untag(r[0])[0], (_untag(r[0])[1], _untag(r[1])[1])) for r in whole.relations()}
        expected_rel = {(k, r) for k, pk in enumerate(parts) for r in pk.relations()}
    elif mode == "opposite":
        pop = Path2Category(derive(c, "opposite"), n)
        p = Path2Category(c, n)

        def rev(s: Chain) -> Chain:
            return Chain(s.dst, s.src, tuple(reversed(s.arrows)))

        chain_map = {s: rev(s) for s in pop.chains()}
        expected = set(p.chains())
        rel_map = {r: (rev(r[0]), rev(r[1])) for r in pop.relations()}
        expected_rel = set(p.relations())
        for r in pop.relations():
            u = pop.path_hom(r[0].src, r[0].dst).witness[r]
            if act(c, _reverse(u), rev(r[0])) != rev(r[1]):
                raise IsoFailure(*r, detail="reversed witness does not act")
    elif mode == "fiber_product":
        assert d is not None
        whole = Path2Category(derive(c, "product", d), n)
        pc, pd = Path2Category(c, n), Path2Category(d, n)

        def split(s: Chain) -> tuple[Chain, Chain]:
            return (
                Chain(s.src[0], s.dst[0], tuple(a[0] for a in s.arrows)),
                Chain(s.src[1], s.dst[1], tuple(a[1] for a in s.arrows)),
            )

        chain_map = {s: split(s) for s in whole.chains()}
        expected = {(x, y) for x in pc.chains() for y in pd.chains() if x.n == y.n}
        rel_map = {r: (split(r[0]), split(r[1])) for r in whole.relations()}
        expected_rel = set()
        for a, b in expected:
            for a2, b2 in expected:
                if (a.src, a.dst, b.src, b.dst) != (a2.src, a2.dst, b2.src, b2.dst):
                    continue
                if set(pc.witnesses(a, a2)) & set(pd.witnesses(b, b2)):
                    expected_rel.add(((a, b), (a2, b2)))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    _check_bijection(chain_map, expected, "chain")
    _check_bijection(rel_map, expected_rel, "2-cell")
    return IsoReport(mode, n, chain_map, rel_map, len(chain_map), len(rel_map))


def _check_bijection(mapping: Mapping, expected: set, what: str) -> None:
    image = list(mapping.values())
    if len(set(image)) != len(image):
        raise IsoFailure(detail=f"{what} map is not injective")
    missing = expected - set(image)
    extra = set(image) - expected
    if missing:
        raise IsoFailure(ordered(missing)[0], detail=f"{what} present on one side only")
    if extra:
        raise IsoFailure(ordered(extra)[0], detail=f"{what} present on one side only")


__all__ = [
    "Chain",
    "DeltaIdentification",
    "EmbedCompress",
    "IsoReport",
    "Path2Category",
    "PathHom",
    "act",
    "build_path_category",
    "chain_of",
    "concat_chains",
    "delta_identification",
    "embed_and_compress",
    "empty_chain",
    "free_lift",
    "hom_witness",
    "path_functor",
    "structural_isos",
]
