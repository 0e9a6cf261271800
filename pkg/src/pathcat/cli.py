"""Command-line front end and the text format for categories, bases and
path-objects.

The format is line oriented.  A block starts at column 0 with
``<kind> <name>``; its declarations follow on indented lines.  ``#`` starts
a comment and ``include <file>`` pulls in another file.  Identities are
implicit everywhere.

Machine-readable output goes to stdout, one line per check::

    STAT max_len=4
    PASS delta-iso
    FAIL NonSegalCell phi,[1,(o,o)],[1,(o,o)]

Timings and human-oriented details go to stderr, so stdout is byte-for-byte
reproducible.  Exit status: 0 pass, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Iterable, Mapping

from ._util import fmt, ordered
from .bicat import (
    BaseOfEnrichment,
    FinBicategory,
    MonoidalCategory,
    abelian_delooping,
    bool_monoidal,
    canonical_bases,
    identity_modification,
    identity_transformation,
    invertible_cells,
    quantale_monoidal,
    spread_monoidal,
    suspend_monoidal,
    validate_base,
    validate_bicategory,
)
from .bridge import (
    Bimodule,
    RigidBridge,
    bimodule_actions,
    bridge_morphisms,
    bridge_of_distributor,
    constant_distributor,
    distributor_of_bridge,
    identity_bimodule_morphism,
    thin_bridge,
    validate_bimodule,
    validate_distributor,
)
from .enrichment import (
    EnrichedCategory,
    FinGroup,
    PathObject,
    QuantaleBase,
    base_change,
    check_path_object,
    cocycle_check,
    cyclic_additive,
    cyclic_multiplicative,
    enriched_to_path,
    foliation,
    group_bicategory,
    group_homomorphism,
    homotopy_monoid_view,
    matrix_group,
    metric_enrichment,
    posetal_path_object,
    restrict,
    simplicial_correspondence,
    strict_to_enriched,
    vertex_functor,
    with_base,
)
from .errors import (
    EmptyLeaf,
    InputError,
    MissingArgument,
    ParseError,
    PathcatError,
    UnknownCommand,
    DuplicateName,
    UnresolvedReference,
    VerificationFailure,
)
from .fincat import (
    FinCategory,
    FinFunctor,
    SetValuedDiagram,
    coarse,
    derive,
    discrete,
    elements,
    enumerate_functors,
    interior,
    interval,
    nerve_level,
    terminal,
    validate_category,
    validate_functor,
)
from .localize import (
    check_fractions,
    curry_adjunction,
    default_test_targets,
    localize,
    localize_fractions,
    localize_posetal,
    product_localization_check,
    reduce_point,
    secondary_localization,
    check_induced_composition,
    uncurry,
    verify_universal_property,
)
from .pathcat import (
    Chain,
    Path2Category,
    act,
    build_path_category,
    chain_of,
    concat_chains,
    delta_identification,
    embed_and_compress,
    empty_chain,
    free_lift,
    hom_witness,
    path_functor,
    structural_isos,
)
from .simplex import compose_delta, enumerate_hom, factorize_generators, recompose

DEFAULT_MAX_LEN = 4
ENV_MAX_LEN = "PATHCAT_MAX_LEN"

# ----------------------------------------------------------------------
# the document model


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    col: int
    source: str = ""

    def where(self) -> str:
        return f"{self.source}:{self.line}:{self.col}"


@dataclass
class Decl:
    keyword: str
    args: tuple[Token, ...]
    line: int


@dataclass
class Block:
    kind: str
    name: str
    decls: list[Decl]
    line: int
    source: str

    def all(self, keyword: str) -> list[Decl]:
        return [d for d in self.decls if d.keyword == keyword]

    def one(self, keyword: str) -> Decl | None:
        got = self.all(keyword)
        if len(got) > 1:
            d = got[1]
            raise ParseError(d.line, 1, detail=f"{keyword} given twice in {self.kind} {self.name}")
        return got[0] if got else None


KINDS = ("category", "monoidal", "bicategory", "base", "pathobject", "distributor", "metric", "cocycle")

# keyword -> (minimum, maximum) argument count, not counting any '='; None = unbounded
GRAMMAR: dict[str, dict[str, tuple[int, int | None]]] = {
    "category": {"object": (1, 1), "arrow": (3, 3), "compose": (3, 3), "preset": (1, None)},
    "monoidal": {
        "preset": (1, 3),
        "category": (1, 1),
        "tensor-obj": (3, 3),
        "tensor-arr": (3, 3),
        "unit": (1, 1),
    },
    "bicategory": {"suspend": (1, 1), "spread": (3, None), "group": (2, None)},
    "base": {"bicategory": (1, 1), "w": (1, 1), "wcell": (1, 1)},
    "pathobject": {
        "shape": (1, 3),
        "base": (1, 1),
        "max-len": (1, 1),
        "object-image": (2, 2),
        "chain-image": (2, 2),
        "arrow-image": (2, 2),
        "colax": (4, 4),
    },
    "distributor": {
        "left": (1, 1),
        "right": (1, 1),
        "thin": (0, 0),
        "element": (3, 3),
        "left-act": (4, 4),
        "right-act": (4, 4),
    },
    "metric": {"quantale": (1, 2), "point": (1, None), "distance": (3, 3), "max-len": (1, 1), "cells": (1, 1)},
    "cocycle": {"group": (2, None), "point": (1, None), "value": (3, 3), "max-len": (1, 1), "transport": (1, 1)},
}

# declarations of the form ``keyword ... = value``: position of the ``=``
EQUALS_AT = {
    "compose": 2,
    "tensor-obj": 2,
    "tensor-arr": 2,
    "object-image": 1,
    "chain-image": 1,
    "arrow-image": 1,
    "colax": 3,
    "left-act": 3,
    "right-act": 3,
    "distance": 2,
    "value": 2,
}


@dataclass
class SpecDocument:
    """Named blocks of a parsed file, with lazily built values."""

    path: str
    blocks: dict[tuple[str, str], Block] = field(default_factory=dict)
    order: list[tuple[str, str]] = field(default_factory=list)
    _built: dict[tuple[str, str], Any] = field(default_factory=dict, repr=False)

    def names(self, kind: str) -> list[str]:
        return [n for k, n in self.order if k == kind]

    def block(self, kind: str, name: str, where: Token | None = None) -> Block:
        key = (kind, name)
        if key not in self.blocks:
            detail = f"no {kind} named {name}"
            if where is not None:
                detail += f" ({where.where()})"
            raise UnresolvedReference(name, detail=detail)
        return self.blocks[key]

    def build(self, kind: str, name: str, where: Token | None = None) -> Any:
        key = (kind, name)
        if key not in self._built:
            if kind == "category":
                builtin = builtin_category(name)
                if builtin is not None and key not in self.blocks:
                    self._built[key] = builtin
                    return builtin
            blk = self.block(kind, name, where)
            self._built[key] = BUILDERS[kind](self, blk)
        return self._built[key]

    def category(self, tok: Token) -> FinCategory:
        return self.build("category", tok.text, tok)


def _tokens(line: str, lineno: int, source: str) -> list[Token]:
    return [Token(m.group(0), lineno, m.start() + 1, source) for m in re.finditer(r"\S+", line)]


def _fixture_dir() -> Path:
    return Path(str(resources.files("pathcat") / "fixtures"))


def resolve_path(name: str, relative_to: Path | None = None) -> Path:
    """A file on disk, else one of the shipped fixtures of that name."""
    p = Path(name)
    candidates = [p]
    if relative_to is not None and not p.is_absolute():
        candidates.insert(0, relative_to / p)
    candidates.append(_fixture_dir() / p.name)
    for c in candidates:
        if c.is_file():
            return c
    raise UnresolvedReference(name, detail="file not found")


def parse_text(text: str, source: str = "<string>", doc: SpecDocument | None = None, _stack: tuple = ()) -> SpecDocument:
    doc = doc if doc is not None else SpecDocument(source)
    current: Block | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        toks = _tokens(line, lineno, source)
        indented = line[0].isspace()
        head = toks[0]
        if not indented:
            if head.text == "include":
                if len(toks) != 2:
                    raise ParseError(lineno, head.col, detail="include takes one file name")
                base_dir = Path(source).parent if source and not source.startswith("<") else None
                target = resolve_path(toks[1].text, base_dir)
                key = str(target.resolve())
                if key in _stack:
                    raise ParseError(lineno, toks[1].col, detail=f"include cycle through {toks[1].text}")
                parse_text(target.read_text(encoding="utf-8"), str(target), doc, _stack + (key,))
                current = None
                continue
            if head.text not in KINDS:
                raise ParseError(lineno, head.col, detail=f"unknown block kind {head.text!r}")
            if len(toks) != 2:
                raise ParseError(lineno, head.col, detail="block header is '<kind> <name>'")
            key = (head.text, toks[1].text)
            if key in doc.blocks:
                raise DuplicateName(head.text, toks[1].text)
            current = Block(head.text, toks[1].text, [], lineno, source)
            doc.blocks[key] = current
            doc.order.append(key)
            continue
        if current is None:
            raise ParseError(lineno, head.col, detail="declaration outside a block")
        grammar = GRAMMAR[current.kind]
        if head.text not in grammar:
            raise ParseError(lineno, head.col, detail=f"{head.text!r} is not valid in a {current.kind} block")
        args = tuple(toks[1:])
        lo, hi = grammar[head.text]
        eq = EQUALS_AT.get(head.text)
        if eq is not None:
            if len(args) <= eq or args[eq].text != "=":
                col = args[eq].col if len(args) > eq else len(line) + 1
                raise ParseError(lineno, col, detail=f"expected '=' in {head.text}")
            args = args[:eq] + args[eq + 1 :]
        if len(args) < lo or (hi is not None and len(args) > hi):
            raise ParseError(lineno, head.col, detail=f"wrong number of arguments to {head.text}")
        current.decls.append(Decl(head.text, args, lineno))
    if not _stack:
        _resolve(doc)
    return doc


def parse_spec(path: str | os.PathLike) -> SpecDocument:
    """Read, parse and reference-check a spec file."""
    target = resolve_path(str(path))
    doc = SpecDocument(str(target))
    parse_text(target.read_text(encoding="utf-8"), str(target), doc, (str(target.resolve()),))
    _resolve(doc)
    return doc


# ----------------------------------------------------------------------
# reference checks (names between blocks, ids inside a block)


def _ref_category(doc: SpecDocument, tok: Token) -> None:
    if ("category", tok.text) not in doc.blocks and builtin_category(tok.text) is None:
        raise UnresolvedReference(tok.text, detail=f"no category named {tok.text} ({tok.where()})")


def _need(doc: SpecDocument, kind: str, tok: Token) -> None:
    doc.block(kind, tok.text, tok)


def _resolve(doc: SpecDocument) -> None:
    for key in doc.order:
        blk = doc.blocks[key]
        kind = blk.kind
        if kind == "category":
            if blk.one("preset") is not None:
                continue
            objs = {d.args[0].text for d in blk.all("object")}
            arrows = {d.args[0].text for d in blk.all("arrow")}
            ids = {f"1_{o}" for o in objs}
            for d in blk.all("arrow"):
                for t in d.args[1:]:
                    if t.text not in objs:
                        raise UnresolvedReference(t.text, detail=f"unknown object ({t.where()})")
            for d in blk.all("compose"):
                for t in d.args:
                    if t.text not in arrows | ids:
                        raise UnresolvedReference(t.text, detail=f"unknown arrow ({t.where()})")
        elif kind == "monoidal":
            d = blk.one("category")
            if d is not None:
                _ref_category(doc, d.args[0])
            elif blk.one("preset") is None:
                raise ParseError(blk.line, 1, detail=f"monoidal {blk.name} needs a preset or a category")
        elif kind == "bicategory":
            for kw in ("suspend", "spread"):
                for d in blk.all(kw):
                    _need(doc, "monoidal", d.args[0])
            if not (blk.all("suspend") or blk.all("spread") or blk.all("group")):
                raise ParseError(blk.line, 1, detail=f"bicategory {blk.name} has no construction")
        elif kind == "base":
            d = blk.one("bicategory")
            if d is None:
                raise ParseError(blk.line, 1, detail=f"base {blk.name} needs a bicategory")
            _need(doc, "bicategory", d.args[0])
        elif kind == "pathobject":
            d = blk.one("shape")
            if d is None:
                raise ParseError(blk.line, 1, detail=f"pathobject {blk.name} needs a shape")
            a = d.args
            if a[0].text == "thin" and len(a) == 3:
                _ref_category(doc, a[1])
                _ref_category(doc, a[2])
            elif a[0].text == "bridge" and len(a) == 2:
                _need(doc, "distributor", a[1])
            elif len(a) == 1:
                _ref_category(doc, a[0])
            else:
                raise ParseError(d.line, a[0].col, detail="shape is a category, 'thin C D' or 'bridge X'")
            b = blk.one("base")
            if b is None:
                raise ParseError(blk.line, 1, detail=f"pathobject {blk.name} needs a base")
            _need(doc, "base", b.args[0])
        elif kind == "distributor":
            for side in ("left", "right"):
                d = blk.one(side)
                if d is None:
                    raise ParseError(blk.line, 1, detail=f"distributor {blk.name} needs a {side} category")
                _ref_category(doc, d.args[0])
        elif kind in ("metric", "cocycle"):
            pts = {t.text for d in blk.all("point") for t in d.args}
            for d in blk.all("distance" if kind == "metric" else "value"):
                for t in d.args[:2]:
                    if t.text not in pts:
                        raise UnresolvedReference(t.text, detail=f"unknown point ({t.where()})")


# ----------------------------------------------------------------------
# builders


def builtin_category(name: str) -> FinCategory | None:
    """``One``, ``Two``, ``interval:n``, ``coarse:a,b,...``, ``discrete:a,b,...``."""
    if name == "One":
        return terminal()
    if name == "Two":
        return interval(1)
    kind, _, rest = name.partition(":")
    if not rest:
        return None
    if kind == "interval" and rest.isdigit():
        return interval(int(rest))
    if kind in ("coarse", "discrete"):
        items = [x for x in rest.split(",") if x]
        return coarse(items) if kind == "coarse" else discrete(items)
    return None


def lookup(items: Iterable[Any], tok: Token, what: str) -> Any:
    table = {fmt(x): x for x in items}
    if tok.text not in table:
        raise UnresolvedReference(tok.text, detail=f"unknown {what} ({tok.where()})")
    return table[tok.text]


def _nat(tok: Token) -> int:
    if not tok.text.isdigit():
        raise ParseError(tok.line, tok.col, detail=f"expected a natural number, got {tok.text!r}")
    return int(tok.text)


def parse_chain(tok: Token, shape: FinCategory) -> Chain:
    """``[0,A]`` or ``[n,f1.f2...fn]`` with arrows in traversal order."""
    m = re.fullmatch(r"\[(\d+),(.+)\]", tok.text)
    if m is None:
        raise ParseError(tok.line, tok.col, detail=f"malformed chain {tok.text!r}")
    n, body = int(m.group(1)), m.group(2)
    if n == 0:
        return empty_chain(lookup(shape.objects, Token(body, tok.line, tok.col, tok.source), "object"))
    parts = body.split(".")
    if len(parts) != n:
        raise ParseError(tok.line, tok.col, detail=f"chain {tok.text} has {len(parts)} arrows, not {n}")
    arrows = [lookup(shape.arrows, Token(p, tok.line, tok.col, tok.source), "arrow") for p in parts]
    try:
        return chain_of(shape, arrows)
    except PathcatError as e:
        raise ParseError(tok.line, tok.col, detail=f"arrows of {tok.text} do not compose") from e


def _build_category(doc: SpecDocument, blk: Block) -> FinCategory:
    pre = blk.one("preset")
    if pre is not None:
        kind = pre.args[0].text
        rest = [t.text for t in pre.args[1:]]
        if kind == "One" and not rest:
            return terminal()
        if kind == "Two" and not rest:
            return interval(1)
        if kind == "interval" and len(rest) == 1:
            return interval(_nat(pre.args[1]))
        if kind == "coarse" and rest:
            return coarse(rest)
        if kind == "discrete" and rest:
            return discrete(rest)
        raise ParseError(pre.line, pre.args[0].col, detail="unknown category preset")
    objects = [d.args[0].text for d in blk.all("object")]
    arrows = {d.args[0].text: (d.args[1].text, d.args[2].text) for d in blk.all("arrow")}
    comp = {(d.args[0].text, d.args[1].text): d.args[2].text for d in blk.all("compose")}
    return validate_category(objects, arrows, None, comp, name=blk.name)


def _build_monoidal(doc: SpecDocument, blk: Block) -> MonoidalCategory:
    pre = blk.one("preset")
    if pre is not None:
        kind, rest = pre.args[0].text, pre.args[1:]
        if kind == "quantale" and rest:
            order = rest[1].text if len(rest) > 1 else "ge"
            if order not in ("ge", "le"):
                raise ParseError(pre.line, rest[1].col, detail="order is 'ge' or 'le'")
            return quantale_monoidal(_nat(rest[0]), order)
        if kind == "bool" and not rest:
            return bool_monoidal()
        if kind == "delooping" and len(rest) == 1:
            return abelian_delooping(_nat(rest[0]))
        raise ParseError(pre.line, pre.args[0].col, detail="unknown monoidal preset")
    cref = blk.one("category")
    c = doc.category(cref.args[0])
    to, ta = {}, {}
    for d in blk.all("tensor-obj"):
        x, y, z = (lookup(c.objects, t, "object") for t in d.args)
        to[(x, y)] = z
    for d in blk.all("tensor-arr"):
        x, y, z = (lookup(c.arrows, t, "arrow") for t in d.args)
        ta[(x, y)] = z
    for x in c.objects:
        for y in c.objects:
            if (x, y) not in to:
                raise UnresolvedReference(fmt((x, y)), detail=f"tensor of objects missing in monoidal {blk.name}")
            ix, iy = c.identity(x), c.identity(y)
            ta.setdefault((ix, iy), c.identity(to[(x, y)]))
    u = blk.one("unit")
    if u is None:
        raise ParseError(blk.line, 1, detail=f"monoidal {blk.name} needs a unit")
    return MonoidalCategory(c, to, ta, lookup(c.objects, u.args[0], "object"))


def parse_group(args: tuple[Token, ...]) -> FinGroup:
    """``cyclic N`` | ``units N`` | ``matrices [mod Q] (a,b,c,d) ...``."""
    kind, rest = args[0], args[1:]
    if kind.text == "cyclic" and len(rest) == 1:
        return cyclic_additive(_nat(rest[0]))
    if kind.text == "units" and len(rest) == 1:
        return cyclic_multiplicative(_nat(rest[0]))[0]
    if kind.text == "matrices":
        modulus = None
        if len(rest) >= 2 and rest[0].text == "mod":
            modulus = _nat(rest[1])
            rest = rest[2:]
        gens = []
        for t in rest:
            m = re.fullmatch(r"\((-?\d+),(-?\d+),(-?\d+),(-?\d+)\)", t.text)
            if m is None:
                raise ParseError(t.line, t.col, detail=f"malformed matrix {t.text!r}")
            gens.append(tuple(int(v) for v in m.groups()))
        if not gens:
            raise ParseError(kind.line, kind.col, detail="matrices needs at least one generator")
        return matrix_group(gens, modulus)
    raise ParseError(kind.line, kind.col, detail="unknown group")


def _build_bicategory(doc: SpecDocument, blk: Block) -> FinBicategory:
    d = blk.one("suspend")
    if d is not None:
        return suspend_monoidal(doc.build("monoidal", d.args[0].text, d.args[0]), name=blk.name)
    d = blk.one("spread")
    if d is not None:
        if d.args[1].text != "over":
            raise ParseError(d.line, d.args[1].col, detail="spread M over U V ...")
        objs = [t.text for t in d.args[2:]]
        return spread_monoidal(doc.build("monoidal", d.args[0].text, d.args[0]), objs, name=blk.name)
    d = blk.one("group")
    return group_bicategory(parse_group(d.args))


def _build_base(doc: SpecDocument, blk: Block) -> BaseOfEnrichment:
    ref = blk.one("bicategory").args[0]
    m = doc.build("bicategory", ref.text, ref)
    iso, every = canonical_bases(m)
    w = blk.one("w")
    cells = blk.all("wcell")
    if w is not None:
        if cells:
            raise ParseError(cells[0].line, 1, detail="use either 'w' or 'wcell'")
        if w.args[0].text == "iso":
            return iso
        if w.args[0].text == "all":
            return every
        raise ParseError(w.line, w.args[0].col, detail="w is 'iso' or 'all'")
    extra = {lookup(m.cells2(), d.args[0], "2-cell") for d in cells}
    return validate_base(m, set(invertible_cells(m)) | extra)


@dataclass(frozen=True)
class Shape:
    category: FinCategory
    bridge: RigidBridge | None = None


def _build_shape(doc: SpecDocument, blk: Block) -> Shape:
    a = blk.one("shape").args
    if a[0].text == "thin" and len(a) == 3:
        e = thin_bridge(doc.category(a[1]), doc.category(a[2]))
        return Shape(e.total, e)
    if a[0].text == "bridge" and len(a) == 2:
        e = bridge_of_distributor(doc.build("distributor", a[1].text, a[1]))
        return Shape(e.total, e)
    return Shape(doc.category(a[0]))


def _max_len_decl(blk: Block) -> int | None:
    d = blk.one("max-len")
    return _nat(d.args[0]) if d is not None else None


@dataclass(frozen=True)
class BuiltPathObject:
    shape: Shape
    po: PathObject


def _build_pathobject(doc: SpecDocument, blk: Block, max_len: int | None = None) -> BuiltPathObject:
    shape = _build_shape(doc, blk)
    c = shape.category
    bref = blk.one("base").args[0]
    base = doc.build("base", bref.text, bref)
    m = base.bicategory
    n = max_len if max_len is not None else _max_len_decl(blk)
    if n is None:
        n = env_max_len()
    omap = {}
    for d in blk.all("object-image"):
        omap[lookup(c.objects, d.args[0], "object")] = lookup(m.objects, d.args[1], "base object")
    for x in c.objects:
        if x not in omap:
            if len(m.objects) != 1:
                raise UnresolvedReference(fmt(x), detail=f"object-image missing in pathobject {blk.name}")
            omap[x] = m.objects[0]
    arrow_images = blk.all("arrow-image")
    if arrow_images:
        amap = {}
        for d in arrow_images:
            amap[lookup(c.arrows, d.args[0], "arrow")] = lookup(m.cells1(), d.args[1], "1-cell")
        for f in c.arrows:
            if f not in amap:
                if not c.is_identity(f):
                    raise UnresolvedReference(fmt(f), detail=f"arrow-image missing in pathobject {blk.name}")
                amap[f] = m.unit(omap[c.src(f)])
        morphism = free_lift(c, n, m, omap, amap)
        po = check_path_object(morphism, base, revalidate=False)
    else:
        images: dict[Chain, Any] = {}
        default = None
        for d in blk.all("chain-image"):
            value = lookup(m.cells1(), d.args[1], "1-cell")
            if d.args[0].text == "default":
                default = value
            else:
                images[parse_chain(d.args[0], c)] = value

        def image(s: Chain) -> Any:
            if s in images:
                return images[s]
            if default is None:
                raise KeyError(s)
            return default

        po = posetal_path_object(c, n, base, omap, image)
    overrides = blk.all("colax")
    if overrides:
        f = po.morphism
        phi = dict(f.phi)
        for d in overrides:
            triple = re.fullmatch(r"\((.+),(.+),(.+)\)", d.args[0].text)
            if triple is None:
                raise ParseError(d.line, d.args[0].col, detail="triple is (A,B,C)")
            t, s = parse_chain(d.args[1], c), parse_chain(d.args[2], c)
            ends = (fmt(s.src), fmt(s.dst), fmt(t.dst))
            if triple.groups() != ends or t.src != s.dst:
                raise ParseError(d.line, d.args[0].col, detail="triple does not match the chains")
            phi[(t, s)] = lookup(m.cells2(), d.args[3], "2-cell")
        raw = {"omap": f.omap, "map1": f.map1, "map2": f.map2, "phi": phi, "phi0": f.phi0}
        po = check_path_object(raw, base, shape=c, max_len=n)
    return BuiltPathObject(shape, po)


def _build_distributor(doc: SpecDocument, blk: Block):
    lt, rt = blk.one("left").args[0], blk.one("right").args[0]
    c, dd = doc.category(lt), doc.category(rt)
    if blk.one("thin") is not None:
        return constant_distributor(c, dd)
    sets: dict[tuple, list] = {}
    for d in blk.all("element"):
        a = lookup(c.objects, d.args[0], "object")
        b = lookup(dd.objects, d.args[1], "object")
        sets.setdefault((a, b), []).append(d.args[2].text)
    left, right = {}, {}
    for d in blk.all("left-act"):
        f = lookup(c.arrows, d.args[0], "arrow")
        b = lookup(dd.objects, d.args[1], "object")
        left[(f, b, d.args[2].text)] = d.args[3].text
    for d in blk.all("right-act"):
        g = lookup(dd.arrows, d.args[0], "arrow")
        a = lookup(c.objects, d.args[1], "object")
        right[(g, a, d.args[2].text)] = d.args[3].text
    for (a, b), xs in sets.items():
        for x in xs:
            left.setdefault((c.identity(a), b, x), x)
            right.setdefault((dd.identity(b), a, x), x)
    return validate_distributor(c, dd, sets, left, right)


def _quantale_of(blk: Block) -> QuantaleBase:
    d = blk.one("quantale")
    if d is None:
        raise ParseError(blk.line, 1, detail=f"metric {blk.name} needs a quantale")
    order = d.args[1].text if len(d.args) > 1 else "ge"
    if order not in ("ge", "le"):
        raise ParseError(d.line, d.args[1].col, detail="order is 'ge' or 'le'")
    return QuantaleBase(_nat(d.args[0]), order)


def _points(blk: Block) -> list[str]:
    return [t.text for d in blk.all("point") for t in d.args]


@dataclass(frozen=True)
class MetricSpec:
    points: tuple
    distances: Mapping[tuple, Any]
    quantale: QuantaleBase
    max_len: int | None
    all_cells: bool


def _build_metric(doc: SpecDocument, blk: Block) -> MetricSpec:
    q = _quantale_of(blk)
    pts = _points(blk)
    d = {(a, b): (0 if a == b else q.carrier[-1]) for a in pts for b in pts}
    for decl in blk.all("distance"):
        d[(decl.args[0].text, decl.args[1].text)] = lookup(q.carrier, decl.args[2], "quantale value")
    cells = blk.one("cells")
    all_cells = True
    if cells is not None:
        if cells.args[0].text not in ("iso", "all"):
            raise ParseError(cells.line, cells.args[0].col, detail="cells is 'iso' or 'all'")
        all_cells = cells.args[0].text == "all"
    return MetricSpec(tuple(pts), d, q, _max_len_decl(blk), all_cells)


@dataclass(frozen=True)
class CocycleSpec:
    points: tuple
    group: FinGroup
    values: Mapping[tuple, Any]
    max_len: int | None
    transport: str | None


def _build_cocycle(doc: SpecDocument, blk: Block) -> CocycleSpec:
    g = parse_group(blk.one("group").args)
    pts = _points(blk)
    values = {}
    for d in blk.all("value"):
        values[(d.args[0].text, d.args[1].text)] = lookup(g.elements, d.args[2], "group element")
    tr = blk.one("transport")
    if tr is not None and tr.args[0].text != "exponential":
        raise ParseError(tr.line, tr.args[0].col, detail="the only transport is 'exponential'")
    return CocycleSpec(tuple(pts), g, values, _max_len_decl(blk), tr.args[0].text if tr else None)


BUILDERS: dict[str, Callable[[SpecDocument, Block], Any]] = {
    "category": _build_category,
    "monoidal": _build_monoidal,
    "bicategory": _build_bicategory,
    "base": _build_base,
    "pathobject": _build_pathobject,
    "distributor": _build_distributor,
    "metric": _build_metric,
    "cocycle": _build_cocycle,
}


# ----------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Finding:
    code: str
    location: str
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.code == "PASS"

    def line(self) -> str:
        if self.ok:
            return f"PASS {self.location}".rstrip()
        return f"FAIL {self.code} {self.location}".rstrip()


@dataclass
class Report:
    command: str
    findings: list[Finding] = field(default_factory=list)
    stats: dict[str, Any] = field(default_factory=dict)
    input_error: bool = False

    @property
    def status(self) -> str:
        return "pass" if all(f.ok for f in self.findings) and self.findings else "fail"

    @property
    def exit_code(self) -> int:
        if self.input_error:
            return 2
        return 0 if self.status == "pass" else 1

    def ok(self, label: str) -> None:
        self.findings.append(Finding("PASS", label))

    def fail(self, e: PathcatError, prefix: str = "") -> None:
        loc = e.location
        if prefix:
            loc = f"{prefix} {loc}".rstrip()
        self.findings.append(Finding(e.code, loc, e.detail))

    def check(self, label: str, fn: Callable[[], Any]) -> Any:
        """Run ``fn``; record PASS or the verification failure it raises."""
        try:
            out = fn()
        except VerificationFailure as e:
            self.fail(e, label)
            return None
        self.ok(label)
        return out

    def stat(self, key: str, value: Any) -> None:
        self.stats[key] = value

    def machine_lines(self) -> list[str]:
        out = [f"STAT {k}={fmt(v) if not isinstance(v, str) else v}" for k, v in self.stats.items()]
        out += [f.line() for f in self.findings]
        return out


def env_max_len() -> int:
    raw = os.environ.get(ENV_MAX_LEN)
    if raw is None or raw == "":
        return DEFAULT_MAX_LEN
    if not raw.isdigit():
        raise MissingArgument(ENV_MAX_LEN, detail=f"not a natural number: {raw!r}")
    return int(raw)


def _max_len(args: argparse.Namespace, declared: int | None = None) -> int:
    if getattr(args, "max_len", None) is not None:
        return args.max_len
    if declared is not None:
        return declared
    return env_max_len()


def _require(args: argparse.Namespace, *names: str) -> None:
    for n in names:
        if getattr(args, n, None) in (None, ""):
            raise MissingArgument("--" + n.replace("_", "-"))


def _pick(doc: SpecDocument, kinds: tuple[str, ...], name: str | None) -> tuple[str, str]:
    """The block called ``name`` (or the only block) among ``kinds``."""
    keys = [k for k in doc.order if k[0] in kinds]
    if name is not None:
        keys = [k for k in keys if k[1] == name]
    if not keys:
        raise UnresolvedReference(name or "/".join(kinds), detail=f"no matching block in {doc.path}")
    if len(keys) > 1 and name is None:
        raise MissingArgument("--name", detail="the file has several candidate blocks")
    return keys[0]


def _category_arg(args: argparse.Namespace, attr: str = "category") -> FinCategory:
    name = getattr(args, attr)
    doc = parse_spec(args.spec) if getattr(args, "spec", None) else SpecDocument("<cli>")
    return doc.category(Token(name, 0, 0, "<cli>"))


def _pathobject(doc: SpecDocument, name: str, n: int | None) -> BuiltPathObject:
    blk = doc.block("pathobject", name)
    return _build_pathobject(doc, blk, n)


# ----------------------------------------------------------------------
# commands


def cmd_validate(args: argparse.Namespace) -> Report:
    _require(args, "spec")
    r = Report("validate")
    doc = parse_spec(args.spec)
    for kind, name in doc.order:
        if args.name is not None and name != args.name:
            continue
        label = f"{kind}:{name}"
        blk = doc.blocks[(kind, name)]
        if kind == "category":
            c = r.check(label, lambda: doc.build(kind, name))
            if c is not None:
                r.stat(f"{label}.arrows", len(c.arrows))
                r.stat(f"{label}.core_arrows", len(interior(c).arrows))
        elif kind == "monoidal":
            r.check(label, lambda: suspend_monoidal(doc.build(kind, name)))
        elif kind == "bicategory":
            m = r.check(label, lambda: validate_bicategory(doc.build(kind, name)))
            if m is not None:
                r.check(f"{label}.bases", lambda: [validate_base(m, b.W) for b in canonical_bases(m)])
        elif kind == "base":
            r.check(label, lambda: doc.build(kind, name))
        elif kind == "pathobject":
            n = _max_len(args, _max_len_decl(blk))
            got = r.check(label, lambda: _pathobject(doc, name, n))
            if got is not None:
                r.stat(f"{label}.max_len", n)
                r.stat(f"{label}.segal", got.po.segal)
        elif kind == "distributor":
            r.check(label, lambda: doc.build(kind, name))
        elif kind == "metric":
            spec = doc.build(kind, name)
            n = _max_len(args, spec.max_len)
            res = r.check(label, lambda: metric_enrichment(spec.points, spec.distances, spec.quantale, max_len=n, all_cells=spec.all_cells))
            if res is not None:
                r.stat(f"{label}.max_len", n)
                r.stat(f"{label}.segal", res.point.segal)
        elif kind == "cocycle":
            spec = doc.build(kind, name)
            _cocycle_checks(r, label, spec, _max_len(args, spec.max_len))
    if not r.findings:
        raise UnresolvedReference(args.name or doc.path, detail="nothing to validate")
    return r


def _cocycle_checks(r: Report, label: str, spec: CocycleSpec, n: int) -> None:
    res = r.check(label, lambda: cocycle_check(spec.points, spec.group, spec.values, max_len=n))
    r.stat(f"{label}.max_len", n)
    r.stat(f"{label}.entries", len(spec.values))
    if res is None or spec.transport is None:
        return
    h, exp = cyclic_multiplicative(len(spec.group.elements))
    bh = group_bicategory(h)

    def transport() -> None:
        lmor = group_homomorphism(spec.group, h, exp, res.bicategory, bh)
        moved = base_change(res.point, lmor, canonical_bases(bh)[0])
        e = strict_to_enriched(moved)
        for (a, b), x in spec.values.items():
            if e.hom[(a, b)] != exp[x]:
                raise VerificationFailure(a, b, detail="transported hom differs from the exponential")
        cocycle_check(spec.points, h, {k: exp[v] for k, v in spec.values.items()}, max_len=n, bg=bh)

    r.check(f"{label}.exponential", transport)
    r.stat(f"{label}.target", h.name)


def cmd_path(args: argparse.Namespace) -> Report:
    _require(args, "category", "check")
    r = Report("path")
    n = _max_len(args)
    r.stat("max_len", n)
    c = _category_arg(args)
    check = args.check
    if check == "delta-iso":
        p = build_path_category(c, n)
        ident = r.check("delta-iso", lambda: delta_identification(p))
        if ident is not None:
            r.stat("chains", len(ident.chain_of_length))
            r.stat("relations", sum(len(v) for v in ident.witnesses.values()))
    elif check in ("coproduct", "fiber-product", "opposite"):
        d = None
        if check != "opposite":
            _require(args, "with_")
            d = _category_arg(args, "with_")
        mode = check.replace("-", "_")
        rep = r.check(check, lambda: structural_isos(mode, c, d, n))
        if rep is not None:
            r.stat("chains", rep.n_chains)
            r.stat("relations", rep.n_relations)
    elif check == "embed":
        p = build_path_category(c, n)
        r.check("embed", lambda: embed_and_compress(c, n, p))
        f = validate_functor(c, c, {x: x for x in c.objects}, {a: a for a in c.arrows})
        r.check("identity-lift", lambda: _check_identity_lift(f, n, p))
    elif check == "counts":
        p = build_path_category(c, n)
        r.check("counts", lambda: _check_counts(c, p))
        r.check("witnesses", lambda: _check_witnesses(c, p))
        r.stat("chains", len(p.chains()))
        r.stat("relations", len(p.relations()))
    elif check == "elements":
        p = build_path_category(c, n)
        for x in c.objects:
            el = r.check(f"elements {fmt(x)}", lambda: elements(_hom_diagram(p, x, n)))
            if el is not None:
                r.stat(f"elements.{fmt(x)}.objects", len(el.objects))
                r.stat(f"elements.{fmt(x)}.arrows", len(el.arrows))
    else:
        raise MissingArgument("--check", detail=f"unknown check {check!r}")
    return r


def _check_identity_lift(f: FinFunctor, n: int, p: Path2Category) -> None:
    lifted = path_functor(f, n, p, p)
    for s in p.chains():
        if lifted.map1[s] != s:
            raise VerificationFailure(s, detail="lift of the identity moves a chain")


def _check_counts(c: FinCategory, p: Path2Category) -> None:
    for a in c.objects:
        for b in c.objects:
            got: dict[int, int] = {}
            for s in p.path_hom(a, b).chains:
                got[s.n] = got.get(s.n, 0) + 1
            for k in range(p.max_len + 1):
                want = len(nerve_level(c, k, a, b))
                if got.get(k, 0) != want:
                    raise VerificationFailure(a, b, k, detail=f"{got.get(k, 0)} chains, nerve has {want}")


def _check_witnesses(c: FinCategory, p: Path2Category) -> None:
    """Stored witnesses act as claimed and factor into generators; chains are
    closed under concatenation within the truncation."""
    for a in c.objects:
        for b in c.objects:
            hom = p.path_hom(a, b)
            for s in hom.chains:
                for t in hom.chains:
                    u = hom_witness(hom, s, t)
                    if u is None:
                        continue
                    if act(c, u, s) != t:
                        raise VerificationFailure(s, t, detail="witness does not rewrite the chain")
                    if recompose(factorize_generators(u), u.dom) != u:
                        raise VerificationFailure(s, t, detail="witness does not factor into generators")
    chains = set(p.chains())
    for t, s in p.composable1():
        if concat_chains(t, s, p.max_len) not in chains:
            raise VerificationFailure(t, s, detail="concatenation leaves the chains")


def delta_category(n: int) -> FinCategory:
    """Finite ordinals ``0..n`` (as sizes) with all monotone maps."""
    objs = list(range(n + 1))
    arrows = {u: (u.dom, u.cod) for a in objs for b in objs for u in enumerate_hom(a, b)}
    comp = {(g, f): compose_delta(g, f) for f in arrows for g in arrows if f.cod == g.dom}
    ids = {a: next(u for u in enumerate_hom(a, a) if u.images == tuple(range(a))) for a in objs}
    return FinCategory(objs, arrows, ids, comp)


def _hom_diagram(p: Path2Category, x: Any, n: int) -> SetValuedDiagram:
    """``P(x, x)`` as a functor on ordinals: chains with ``k`` arrows sit over
    ``k`` and a monotone map composes or inserts arrows."""
    d = delta_category(n)
    hom = p.path_hom(x, x)
    fiber = {k: tuple(s for s in hom.chains if s.n == k) for k in d.objects}
    action = {u: {s: act(p.base, u, s) for s in fiber[u.dom]} for u in d.arrows}
    return SetValuedDiagram(d, fiber, action)


def cmd_segal_check(args: argparse.Namespace) -> Report:
    _require(args, "pathobject")
    r = Report("segal-check")
    doc = parse_spec(args.pathobject)
    _, name = _pick(doc, ("pathobject",), args.name)
    blk = doc.block("pathobject", name)
    n = _max_len(args, _max_len_decl(blk))
    r.stat("max_len", n)
    built = _pathobject(doc, name, n)
    po = built.po
    if args.base in ("iso", "all"):
        iso, every = canonical_bases(po.target)
        po = with_base(po, iso if args.base == "iso" else every)
    r.stat("base", args.base)
    r.stat("offenders", len(po.offenders))
    for u in po.target.objects:
        try:
            leaf = foliation(po, u)
        except EmptyLeaf:
            r.stat(f"leaf.{fmt(u)}", 0)
            continue
        r.stat(f"leaf.{fmt(u)}", len(leaf.shape.objects))
    if po.segal:
        r.ok("segal")
    else:
        r.findings.append(Finding("NonSegalCell", ",".join(fmt(x) for x in po.offenders[0])))
    return r


def _enriched_source(args: argparse.Namespace, r: Report) -> tuple[EnrichedCategory, int, Any]:
    doc = parse_spec(args.enriched)
    kind, name = _pick(doc, ("metric", "cocycle"), args.name)
    spec = doc.build(kind, name)
    n = _max_len(args, spec.max_len)
    if kind == "metric":
        res = metric_enrichment(spec.points, spec.distances, spec.quantale, max_len=n, all_cells=spec.all_cells)
        return res.enriched, n, res.point.base
    res = cocycle_check(spec.points, spec.group, spec.values, max_len=n)
    return res.enriched, n, res.point.base


def cmd_roundtrip(args: argparse.Namespace) -> Report:
    _require(args, "enriched")
    r = Report("roundtrip")
    try:
        e, n, base = _enriched_source(args, r)
    except VerificationFailure as err:
        r.stat("max_len", _max_len(args))
        r.fail(err, "input")
        return r
    r.stat("max_len", n)
    po = r.check("enriched-to-path", lambda: enriched_to_path(e, n, base))
    if po is None:
        return r
    back = r.check("path-to-enriched", lambda: strict_to_enriched(po))
    if back is None:
        return r
    same = back.same_data(e)
    r.stat("roundtrip", "exact" if same else "differs")
    if same:
        r.ok("roundtrip")
    else:
        r.findings.append(Finding("IsoFailure", "roundtrip"))
    return r


def cmd_monoid(args: argparse.Namespace) -> Report:
    _require(args, "pathobject")
    r = Report("monoid")
    doc = parse_spec(args.pathobject)
    _, name = _pick(doc, ("pathobject",), args.name)
    blk = doc.block("pathobject", name)
    n = _max_len(args, _max_len_decl(blk))
    r.stat("max_len", n)
    po = _pathobject(doc, name, n).po
    if args.object is not None:
        x = lookup(po.shape.objects, Token(args.object, 0, 0, "<cli>"), "object")
        one = terminal()
        (o,) = one.objects
        r_fun = validate_functor(one, po.shape, {o: x}, {one.identity(o): po.shape.identity(x)})
        po = restrict(po, r_fun)
    view = r.check("monoid", lambda: homotopy_monoid_view(po))
    if view is not None:
        for k, v in sorted(view.levels.items()):
            r.stat(f"level.{k}", v)
        r.stat("strict", view.strict)
        r.stat("segal", view.segal)
    return r


def cmd_simplicial(args: argparse.Namespace) -> Report:
    _require(args, "points")
    r = Report("simplicial")
    pts = [x for x in args.points.split(",") if x]
    if not pts:
        raise MissingArgument("--points")
    n = _max_len(args)
    r.stat("max_len", n)
    y = vertex_functor(pts, n)
    corr = r.check("correspondence", lambda: simplicial_correspondence(y))
    if corr is None:
        return r
    r.stat("roundtrip", "exact" if corr.roundtrip else "differs")
    if not corr.roundtrip:
        r.findings.append(Finding("SimplicialViolation", "roundtrip"))
    c = coarse(pts)
    for k in range(n + 1):
        size = len(corr.simplicial.levels[k])
        want = sum(len(nerve_level(c, k, a, b)) for a in c.objects for b in c.objects)
        r.stat(f"level.{k}", size)
        if size != want:
            r.findings.append(Finding("SimplicialViolation", f"level {k}", f"{size} != {want}"))
    if all(f.ok for f in r.findings):
        r.ok("levels")
    return r


def cmd_bridge(args: argparse.Namespace) -> Report:
    r = Report("bridge")
    if args.distributor is not None:
        doc = parse_spec(args.distributor)
        _, name = _pick(doc, ("distributor",), args.name)
        x = doc.build("distributor", name)
        c, d = x.left_cat, x.right_cat
    else:
        _require(args, "left", "right")
        doc = parse_spec(args.spec) if args.spec else SpecDocument("<cli>")
        c = doc.category(Token(args.left, 0, 0, "<cli>"))
        d = doc.category(Token(args.right, 0, 0, "<cli>"))
        x = constant_distributor(c, d)
    thin = r.check("thin", lambda: thin_bridge(c, d))
    e = r.check("bridge-of-distributor", lambda: bridge_of_distributor(x))
    if e is None or thin is None:
        return r
    back = distributor_of_bridge(e)
    if back.same_data(x):
        r.ok("distributor-roundtrip")
    else:
        r.findings.append(Finding("IsoFailure", "distributor-roundtrip"))
    again = bridge_of_distributor(back)
    if again.total == e.total:
        r.ok("bridge-roundtrip")
    else:
        r.findings.append(Finding("IsoFailure", "bridge-roundtrip"))
    count = len(bridge_morphisms(e, thin))
    r.stat("objects", len(e.total.objects))
    r.stat("arrows", len(e.total.arrows))
    r.stat("morphisms_to_thin", count)
    if count == 1:
        r.ok("thin-terminal")
    else:
        r.findings.append(Finding("IsoFailure", "thin-terminal", f"{count} morphisms"))
    return r


def cmd_bimodule(args: argparse.Namespace) -> Report:
    _require(args, "spec", "psi", "left", "right")
    r = Report("bimodule")
    doc = parse_spec(args.spec)
    blk = doc.block("pathobject", args.psi)
    n = _max_len(args, _max_len_decl(blk))
    r.stat("max_len", n)
    psi = _pathobject(doc, args.psi, n)
    if psi.shape.bridge is None:
        raise UnresolvedReference(args.psi, detail="the shape of psi is not a bridge")
    left = _pathobject(doc, args.left, n).po
    right = _pathobject(doc, args.right, n).po
    b: Bimodule | None = r.check("bimodule", lambda: validate_bimodule(psi.shape.bridge, psi.po, left, right))
    if b is None:
        return r
    acts = bimodule_actions(b)
    r.stat("left_actions", len(acts.left))
    r.stat("right_actions", len(acts.right))
    pre = r.check("identity-morphism", lambda: identity_bimodule_morphism(b))
    if pre is not None:
        t = pre.transformation
        r.check("identity-modification", lambda: identity_modification(t))
    return r


def _arrow_list(c: FinCategory, spec: str, where: str) -> list:
    if spec == "all":
        return list(c.arrows)
    if spec == "none":
        return []
    return [lookup(c.arrows, Token(t, 0, 0, where), "arrow") for t in spec.split(";") if t]


def cmd_localize(args: argparse.Namespace) -> Report:
    _require(args, "category", "invert")
    r = Report("localize")
    c = _category_arg(args)
    s = _arrow_list(c, args.invert, "--invert")
    sys_ = check_fractions(c, list(s) + [c.identity(x) for x in c.objects])
    r.stat("fractions", sys_.ok)
    if args.method == "fractions":
        loc = r.check("localize", lambda: localize_fractions(sys_))
    elif args.method == "posetal":
        loc = r.check("localize", lambda: localize_posetal(c, list(s) + [c.identity(x) for x in c.objects]))
    else:
        loc = r.check("localize", lambda: localize(c, s))
    if loc is None:
        return r
    lc = loc.category
    r.stat("method", loc.method)
    r.stat("objects", len(lc.objects))
    r.stat("arrows", len(lc.arrows))
    r.stat("singleton_homs", all(len(lc.hom(a, b)) <= 1 for a in lc.objects for b in lc.objects))
    rep = r.check("universal", lambda: verify_universal_property(loc.functor, s))
    if rep is not None:
        r.stat("targets", rep.targets)
        r.stat("tested", rep.tested)
        r.stat("inverting", rep.inverting)
    if args.product is not None:
        d = _category_arg(args, "product")
        t = _arrow_list(d, args.invert_right or "all", "--invert-right")
        pr = r.check("product", lambda: product_localization_check(c, s, d, t))
        if pr is not None:
            r.stat("product_tested", pr.tested)
            r.stat("bar_checks", pr.bar_checks)
        curried = r.check("curry", lambda: _check_currying(c, d))
        if curried is not None:
            r.stat("curried", curried)
    return r


def _check_currying(c: FinCategory, d: FinCategory) -> int:
    """Curry and uncurry every functor ``C × D → E`` over small targets."""
    p = derive(c, "product", d)
    n = 0
    for e in default_test_targets()[:4]:
        for f in enumerate_functors(p, e):
            back = uncurry(curry_adjunction(f, c, d), p)
            if back.omap != f.omap or back.amap != f.amap:
                raise VerificationFailure(e, detail="uncurrying does not recover the functor")
            n += 1
    return n


def cmd_reduce(args: argparse.Namespace) -> Report:
    _require(args, "pathobject")
    r = Report("reduce")
    doc = parse_spec(args.pathobject)
    kind, name = _pick(doc, ("pathobject", "metric"), args.name)
    if kind == "metric":
        spec = doc.build(kind, name)
        n = _max_len(args, spec.max_len)
        po = metric_enrichment(spec.points, spec.distances, spec.quantale, max_len=n, all_cells=spec.all_cells).point
    else:
        n = _max_len(args, _max_len_decl(doc.block(kind, name)))
        po = _pathobject(doc, name, n).po
    r.stat("max_len", n)
    sec = r.check("secondary-localization", lambda: secondary_localization(po.base))
    if sec is None:
        return r
    r.stat("induced_compositions", check_induced_composition(sec, po.base.bicategory))
    red = r.check("reduce", lambda: reduce_point(po, sec))
    if red is not None:
        r.stat("strict", red.morphism.strict)
        r.stat("segal", red.segal)
    return r


REPORT_PLAN: tuple[tuple[str, ...], ...] = (
    ("validate", "--spec", "metric3.spec"),
    ("validate", "--spec", "cocycle_z3.spec"),
    ("validate", "--spec", "transport.spec"),
    ("validate", "--spec", "exponential.spec"),
    ("validate", "--spec", "bimodule2.spec"),
    ("path", "--category", "One", "--check", "delta-iso"),
    ("path", "--category", "coarse:a,b", "--check", "coproduct", "--with", "Two", "--max-len", "3"),
    ("roundtrip", "--enriched", "metric3.spec"),
    ("roundtrip", "--enriched", "cocycle_z3.spec"),
    ("segal-check", "--pathobject", "transport.spec", "--base", "iso", "--max-len", "3"),
    ("monoid", "--pathobject", "bad.spec", "--max-len", "3"),
    ("simplicial", "--points", "a,b"),
    ("bridge", "--left", "Two", "--right", "One"),
    ("bimodule", "--spec", "bimodule2.spec", "--psi", "Psi", "--left", "L", "--right", "R"),
    ("localize", "--category", "Two", "--invert", "all"),
    ("reduce", "--pathobject", "metric3.spec"),
)


def cmd_report(args: argparse.Namespace) -> Report:
    """Run a fixed battery over the shipped fixtures."""
    r = Report("report")
    for argv in REPORT_PLAN:
        sub = run_command(list(argv))
        label = " ".join(argv)
        if sub.exit_code == 0:
            r.ok(label)
        else:
            first = next(f for f in sub.findings if not f.ok)
            r.findings.append(Finding(first.code, f"[{label}] {first.location}", first.detail))
    r.stat("runs", len(REPORT_PLAN))
    return r


# Which module operations each command reaches.  Kept honest by a test that
# traces the calls made while running each command.
DISPATCH: dict[str, tuple[Callable[[argparse.Namespace], Report], tuple[str, ...]]] = {
    "validate": (
        cmd_validate,
        ("parse_spec", "validate_category", "interior", "validate_bicategory", "suspend_monoidal", "validate_base",
         "canonical_bases", "check_path_object", "validate_distributor", "metric_enrichment", "cocycle_check",
         "base_change", "strict_to_enriched", "enriched_to_path", "validate_colax"),
    ),
    "path": (
        cmd_path,
        ("coarse", "interval", "build_path_category", "delta_identification", "enumerate_hom", "compose_delta",
         "ordinal_sum", "structural_isos", "derive", "embed_and_compress", "path_functor", "validate_functor",
         "nerve_level", "elements", "factorize_generators", "hom_witness", "concat_chains"),
    ),
    "segal-check": (cmd_segal_check, ("parse_spec", "check_path_object", "canonical_bases", "foliation")),
    "roundtrip": (cmd_roundtrip, ("enriched_to_path", "strict_to_enriched", "metric_enrichment", "cocycle_check")),
    "monoid": (cmd_monoid, ("homotopy_monoid_view", "restrict", "delta_identification")),
    "simplicial": (cmd_simplicial, ("simplicial_correspondence", "nerve_level", "coarse")),
    "bridge": (cmd_bridge, ("thin_bridge", "bridge_of_distributor", "distributor_of_bridge")),
    "bimodule": (
        cmd_bimodule,
        ("validate_bimodule", "validate_premorphism", "validate_transformation", "validate_modification"),
    ),
    "localize": (
        cmd_localize,
        ("check_fractions", "localize_fractions", "localize_posetal", "curry_adjunction", "uncurry",
         "product_localization_check", "verify_universal_property"),
    ),
    "reduce": (cmd_reduce, ("secondary_localization", "reduce_point")),
    "report": (cmd_report, ("run_command",)),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pathcat", description="Check path-object constructions on finite data.")
    sub = p.add_subparsers(dest="command")

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--max-len", type=int, default=None, help=f"truncation N (default ${ENV_MAX_LEN} or {DEFAULT_MAX_LEN})")
        return sp

    sp = add("validate", "build and check every block of a spec file")
    sp.add_argument("--spec", nargs="?")
    sp.add_argument("spec_pos", nargs="?", metavar="SPEC")
    sp.add_argument("--name")
    sp = add("path", "checks on the path 2-category of a category")
    sp.add_argument("--category")
    sp.add_argument("--spec")
    sp.add_argument("--check", choices=["delta-iso", "coproduct", "fiber-product", "opposite", "embed", "counts", "elements"])
    sp.add_argument("--with", dest="with_")
    sp = add("segal-check", "classify the comparison cells of a path-object")
    sp.add_argument("--pathobject")
    sp.add_argument("--name")
    sp.add_argument("--base", choices=["iso", "all", "declared"], default="declared")
    sp = add("roundtrip", "enriched category -> path-object -> enriched category")
    sp.add_argument("--enriched")
    sp.add_argument("--name")
    sp = add("monoid", "homotopy-monoid view of a path-object over the point")
    sp.add_argument("--pathobject")
    sp.add_argument("--name")
    sp.add_argument("--object")
    sp = add("simplicial", "colax functor on the points <-> simplicial object")
    sp.add_argument("--points")
    sp = add("bridge", "distributor <-> bridge round trip and thin-bridge terminality")
    sp.add_argument("--left")
    sp.add_argument("--right")
    sp.add_argument("--spec")
    sp.add_argument("--distributor")
    sp.add_argument("--name")
    sp = add("bimodule", "check a bimodule between two path-objects")
    sp.add_argument("--spec")
    sp.add_argument("--psi")
    sp.add_argument("--left")
    sp.add_argument("--right")
    sp = add("localize", "localize a category and check the universal property")
    sp.add_argument("--category")
    sp.add_argument("--spec")
    sp.add_argument("--invert", help="'all', 'none' or arrows separated by ';'")
    sp.add_argument("--product")
    sp.add_argument("--invert-right")
    sp.add_argument("--method", choices=["auto", "fractions", "posetal"], default="auto")
    sp = add("reduce", "reduce a Segal path-object by localizing its base")
    sp.add_argument("--pathobject")
    sp.add_argument("--name")
    add("report", "run the fixture battery")
    return p


def _argument_error(message: str) -> None:
    raise MissingArgument(detail=message)


def run_command(argv: list[str]) -> Report:
    """Parse ``argv`` (without the program name) and run the command."""
    if not argv or argv[0] not in DISPATCH:
        cmd = argv[0] if argv else ""
        r = Report(cmd, input_error=True)
        r.fail(UnknownCommand(cmd))
        return r
    parser = build_parser()
    for action in parser._subparsers._group_actions:  # route usage errors to MissingArgument
        for sp in action.choices.values():
            sp.error = _argument_error  # type: ignore[method-assign]
    cmd = argv[0]
    try:
        args = parser.parse_args(argv)
        if cmd == "validate" and args.spec is None:
            args.spec = args.spec_pos
        fn, _ = DISPATCH[cmd]
        return fn(args)
    except InputError as e:
        r = Report(cmd, input_error=True)
        r.fail(e)
        return r
    except VerificationFailure as e:
        r = Report(cmd)
        r.fail(e)
        return r


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] in ("-h", "--help"):
        build_parser().print_help()
        return 0
    start = time.perf_counter()
    report = run_command(argv)
    for line in report.machine_lines():
        print(line)
    for f in report.findings:
        if f.detail:
            print(f"{f.code}: {f.detail}", file=sys.stderr)
    print(f"runtime {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
