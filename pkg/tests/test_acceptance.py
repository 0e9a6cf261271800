"""End-to-end acceptance checks, one per headline property of the library.

Run under pytest (one PASS/FAIL line per criterion is printed) or directly
with ``python tests/test_acceptance.py``.
"""

import itertools
import os
import random
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import oracles  # noqa: E402
from pathcat import cli  # noqa: E402
from pathcat.bicat import (  # noqa: E402
    INF,
    STAR,
    FinBicategory,
    abelian_delooping,
    canonical_bases,
    invertible_cells,
    quantale_monoidal,
    spread_monoidal,
    suspend_monoidal,
    validate_base,
    validate_bicategory,
    validate_colax,
)
from pathcat.bridge import (  # noqa: E402
    bridge_morphisms,
    bridge_of_distributor,
    distributor_of_bridge,
    thin_bridge,
    validate_distributor,
)
from pathcat.enrichment import (  # noqa: E402
    QuantaleBase,
    base_change,
    coboundary,
    cocycle_check,
    cyclic_additive,
    cyclic_multiplicative,
    enriched_to_path,
    group_bicategory,
    group_homomorphism,
    metric_enrichment,
    simplicial_correspondence,
    strict_to_enriched,
    validate_enriched,
    vertex_functor,
)
from pathcat.errors import (  # noqa: E402
    ActionAssociativityViolation,
    CocycleViolation,
    M1Violation,
    M2Violation,
    ThreeForTwoViolation,
)
from pathcat.fincat import coarse, interval, nerve_level, terminal  # noqa: E402
from pathcat.localize import (  # noqa: E402
    default_test_targets,
    localize,
    product_localization_check,
    reduce_point,
    secondary_localization,
    verify_universal_property,
)
from pathcat.pathcat import build_path_category, delta_identification, structural_isos  # noqa: E402

FIXTURES = ("metric3.spec", "cocycle_z3.spec", "transport.spec", "exponential.spec", "bad.spec", "bimodule2.spec")
METRIC3 = {
    **{(x, x): 0 for x in "abc"},
    ("a", "b"): 1,
    ("b", "a"): 1,
    ("b", "c"): 2,
    ("c", "b"): 2,
    ("a", "c"): 3,
    ("c", "a"): 3,
}


def _require(cond, what):
    if not cond:
        raise AssertionError(what)


def delta_identification_at_five():
    ident = delta_identification(build_path_category(terminal(), 5))
    _require(ident.morphism_count(2, 2) == 3, "|Δ(2,2)| should be 3")
    _require(ident.morphism_count(3, 2) == 4, "|Δ(3,2)| should be 4")
    for n in range(6):
        for m in range(6):
            _require(ident.morphism_count(n, m) == len(oracles.monotone_maps(n, m)), f"witnesses {n}->{m}")


def structural_isomorphisms():
    c, d = coarse("ab"), interval(1)
    co = structural_isos("coproduct", c, d, 3)
    _require(co.n_chains == 30 + 14, "coproduct chain count")
    fp = structural_isos("fiber_product", c, d, 3)
    want = sum(
        1
        for s in build_path_category(c, 3).chains()
        for t in build_path_category(d, 3).chains()
        if s.n == t.n
    )
    _require(fp.n_chains == want, "fiber product chain count")


def enrichment_round_trips():
    # a two-element monoid {0, inf}
    m = suspend_monoidal(quantale_monoidal(0))
    e = validate_enriched(m, ["o"], {"o": STAR}, {("o", "o"): 0}, {"o": (0, 0)}, {("o", "o", "o"): (0, 0)})
    _require(strict_to_enriched(enriched_to_path(e, 3)).same_data(e), "monoid round trip")
    # a three-point metric
    res = metric_enrichment("abc", METRIC3, QuantaleBase(5), max_len=3)
    _require(strict_to_enriched(res.point).same_data(res.enriched), "metric round trip")
    # two objects over two different base objects
    b = spread_monoidal(quantale_monoidal(1), "UV")
    over = {"p": "U", "q": "V"}
    objs = list(over)
    e = validate_enriched(
        b,
        objs,
        over,
        {(x, y): (over[x], over[y], 0) for x in objs for y in objs},
        {x: (over[x], over[x], (0, 0)) for x in objs},
        {(x, y, z): (over[x], over[z], (0, 0)) for x, y, z in itertools.product(objs, repeat=3)},
    )
    _require(strict_to_enriched(enriched_to_path(e, 3)).same_data(e), "two-base round trip")


def colaxity_mutants_rejected(count=20, seed=7):
    b = suspend_monoidal(abelian_delooping(2))
    objs = ["a", "b"]
    e = validate_enriched(
        b,
        objs,
        {x: STAR for x in objs},
        {(x, y): "x" for x in objs for y in objs},
        {x: 0 for x in objs},
        {k: 0 for k in itertools.product(objs, repeat=3)},
    )
    f = enriched_to_path(e, 3).morphism
    validate_colax(f.source, f.target, f.omap, f.map1, f.map2, f.phi, f.phi0)
    pairs = sorted(f.phi, key=lambda k: (k[0].order_key(), k[1].order_key()))
    picks = random.Random(seed).sample(pairs, count)
    for key in picks:
        phi = dict(f.phi)
        phi[key] = (phi[key] + 1) % 2
        try:
            validate_colax(f.source, f.target, f.omap, f.map1, f.map2, phi, f.phi0)
        except (M1Violation, M2Violation):
            continue
        raise AssertionError(f"mutant at {key} accepted")


def canonical_bases_and_three_for_two():
    for name in FIXTURES:
        doc = cli.parse_spec(name)
        for bname in doc.names("bicategory"):
            bic = doc.build("bicategory", bname)
            iso, every = canonical_bases(bic)
            _require(iso.W <= every.W, f"{name}:{bname} bases")
    q = suspend_monoidal(quantale_monoidal(1))
    w = set(invertible_cells(q)) | {(INF, 1), (1, 0)}
    try:
        validate_base(q, w)
    except ThreeForTwoViolation:
        return
    raise AssertionError("missing composite accepted")


def simplicial_correspondence_round_trip():
    corr = simplicial_correspondence(vertex_functor("ab", 4))
    _require(corr.roundtrip, "round trip")
    c = coarse("ab")
    for n in range(5):
        nerve = sum(len(nerve_level(c, n, x, y)) for x in "ab" for y in "ab")
        _require(len(corr.simplicial.levels[n]) == nerve, f"level {n}")


def cocycles_and_transport():
    g = cyclic_additive(3)
    f = coboundary(g, {"a": 0, "b": 1, "c": 2})
    _require(oracles.cocycle_ok("abc", f, g.mult), "coboundary is a cocycle")
    cocycle_check("abc", g, f)
    bad = dict(f)
    bad[("a", "b")] = 2
    try:
        cocycle_check("abc", g, bad)
        raise AssertionError("perturbed table accepted")
    except CocycleViolation:
        pass
    _require(len(list(itertools.product("abc", repeat=3))) == 27, "triples")
    # Z/3 -> mu3 (formal powers) and Z/4 -> U(5) (a primitive root mod 5)
    for n, labels in ((3, {"a": 0, "b": 1, "c": 2}), (4, {"a": 0, "b": 1, "c": 3})):
        gn = cyclic_additive(n)
        h, expo = cyclic_multiplicative(n)
        fn = coboundary(gn, labels)
        res = cocycle_check("abc", gn, fn)
        bh = group_bicategory(h)
        lmor = group_homomorphism(gn, h, expo, res.bicategory, bh)
        back = strict_to_enriched(base_change(res.point, lmor, canonical_bases(bh)[0]))
        _require(oracles.cocycle_ok("abc", dict(back.hom), h.mult), f"transported Z/{n} table is a cocycle")
        _require(all(back.hom[k] == expo[fn[k]] for k in fn), f"Z/{n} values carried by the exponential")


def interval_localization():
    c = interval(1)
    loc = localize(c, c.arrows)
    lc = loc.category
    _require(all(len(lc.hom(x, y)) == 1 for x in lc.objects for y in lc.objects), "singleton homs")
    targets = default_test_targets()
    _require(all(len(t.objects) <= 3 for t in targets), "small targets")
    rep = verify_universal_property(loc.functor, loc.S, targets)
    _require(rep.tested == sum(len(oracles.functors(c, t)) for t in targets), "every functor tested")


def product_localization():
    c = interval(1)
    rep = product_localization_check(c, c.arrows, c, c.arrows)
    _require((rep.tested, rep.inverting, rep.bar_checks) == (134, 113, 81), "product counts")


def secondary_localization_and_reduction():
    m = spread_monoidal(quantale_monoidal(1), "UV")
    sec = secondary_localization(canonical_bases(m)[1])
    _require(isinstance(validate_bicategory(sec.bicategory), FinBicategory), "localized base")
    res = metric_enrichment("abc", METRIC3, QuantaleBase(5), max_len=3)
    out = reduce_point(res.point)
    _require(out.segal and out.strict, "reduced point is strict-Segal")
    _require(out.base.W == canonical_bases(out.target)[0].W, "classified against the isomorphisms")


def distributor_bridge_round_trips():
    c = d = interval(1)
    up = (0, 1)
    keys = [(a, b) for a in (0, 1) for b in (0, 1)]
    valid = agreed = 0
    for sizes in itertools.product(range(3), repeat=4):
        sets = {k: tuple(f"{k[0]}{k[1]}{i}" for i in range(n)) for k, n in zip(keys, sizes)}
        # left action of 0 -> 1 maps X(b)(1) to X(b)(0); right action maps X(a)(0) to X(a)(1)
        slots = [("L", b, v, sets[(0, b)]) for b in (0, 1) for v in sets[(1, b)]]
        slots += [("R", a, v, sets[(a, 1)]) for a in (0, 1) for v in sets[(a, 0)]]
        if any(not s[3] for s in slots):
            continue
        for choice in itertools.product(*[s[3] for s in slots]):
            left = {(c.identity(a), b, v): v for (a, b), vals in sets.items() for v in vals}
            right = {(d.identity(b), a, v): v for (a, b), vals in sets.items() for v in vals}
            for s, y in zip(slots, choice):
                (left if s[0] == "L" else right)[(up, s[1], s[2])] = y
            commutes = all(right[(up, 0, left[(up, 0, x)])] == left[(up, 1, right[(up, 1, x)])] for x in sets[(1, 0)])
            try:
                x = validate_distributor(c, d, sets, left, right)
            except ActionAssociativityViolation:
                _require(not commutes, "commuting actions rejected")
                continue
            _require(commutes, "non-commuting actions accepted")
            valid += 1
            e = bridge_of_distributor(x)
            _require(distributor_of_bridge(e).same_data(x), "distributor round trip")
            _require(len(bridge_morphisms(e, thin_bridge(c, d))) == 1, "unique map to the thin bridge")
            agreed += 1
    _require(valid == agreed == 249, f"{valid} distributors")


CRITERIA = [
    ("delta-identification", delta_identification_at_five),
    ("structural-isomorphisms", structural_isomorphisms),
    ("enrichment-round-trips", enrichment_round_trips),
    ("colaxity-mutants", colaxity_mutants_rejected),
    ("bases-and-three-for-two", canonical_bases_and_three_for_two),
    ("simplicial-correspondence", simplicial_correspondence_round_trip),
    ("cocycles-and-transport", cocycles_and_transport),
    ("interval-localization", interval_localization),
    ("product-localization", product_localization),
    ("secondary-localization", secondary_localization_and_reduction),
    ("distributor-bridge", distributor_bridge_round_trips),
]


def run_criterion(i, name, fn):
    start = time.perf_counter()
    try:
        fn()
    except Exception as exc:  # report every failure kind the same way
        return False, f"FAIL {i} {name}: {type(exc).__name__}: {exc} ({time.perf_counter() - start:.2f}s)"
    return True, f"PASS {i} {name} ({time.perf_counter() - start:.2f}s)"


@pytest.mark.parametrize("i,name,fn", [(i, n, f) for i, (n, f) in enumerate(CRITERIA, 1)], ids=[n for n, _ in CRITERIA])
def test_criterion(i, name, fn, capsys):
    ok, line = run_criterion(i, name, fn)
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


if __name__ == "__main__":
    t0 = time.perf_counter()
    results = [run_criterion(i, n, f) for i, (n, f) in enumerate(CRITERIA, 1)]
    for _, line in results:
        print(line)
    print(f"total {time.perf_counter() - t0:.2f}s")
    sys.exit(0 if all(ok for ok, _ in results) else 1)
