import os
import subprocess
import sys

import pytest

from pathcat import cli
from pathcat.errors import ParseError, UnresolvedReference

SAMPLES = {
    "validate": [
        ["validate", "--spec", f]
        for f in ("metric3.spec", "cocycle_z3.spec", "transport.spec", "exponential.spec", "bimodule2.spec", "bad.spec")
    ],
    "path": [
        ["path", "--category", "One", "--check", "delta-iso"],
        ["path", "--category", "coarse:a,b", "--check", "coproduct", "--with", "Two", "--max-len", "3"],
        ["path", "--category", "Two", "--check", "fiber-product", "--with", "Two", "--max-len", "2"],
        ["path", "--category", "Two", "--check", "opposite", "--max-len", "2"],
        ["path", "--category", "coarse:a,b", "--check", "embed", "--max-len", "2"],
        ["path", "--category", "Two", "--check", "counts", "--max-len", "3"],
        ["path", "--category", "Two", "--check", "elements", "--max-len", "2"],
    ],
    "segal-check": [
        ["segal-check", "--pathobject", "transport.spec", "--base", "iso", "--max-len", "3"],
        ["segal-check", "--pathobject", "bad.spec", "--base", "iso"],
    ],
    "roundtrip": [["roundtrip", "--enriched", "metric3.spec"], ["roundtrip", "--enriched", "cocycle_z3.spec"]],
    "monoid": [
        ["monoid", "--pathobject", "bad.spec", "--max-len", "3"],
        ["monoid", "--pathobject", "transport.spec", "--object", "a", "--max-len", "3"],
    ],
    "simplicial": [["simplicial", "--points", "a,b"]],
    "bridge": [["bridge", "--left", "Two", "--right", "One"]],
    "bimodule": [["bimodule", "--spec", "bimodule2.spec", "--psi", "Psi", "--left", "L", "--right", "R"]],
    "localize": [
        ["localize", "--category", "Two", "--invert", "all"],
        ["localize", "--category", "Two", "--invert", "all", "--product", "Two"],
        ["localize", "--category", "Two", "--invert", "all", "--method", "fractions"],
    ],
    "reduce": [["reduce", "--pathobject", "metric3.spec"]],
    "report": [["report"]],
}

# every named operation of the library that the command line must reach
LIBRARY_OPS = """
validate_category coarse interval nerve_level elements derive interior validate_functor compose_delta
ordinal_sum factorize_generators enumerate_hom validate_bicategory suspend_monoidal validate_colax
validate_transformation validate_modification validate_base canonical_bases build_path_category
concat_chains hom_witness delta_identification path_functor embed_and_compress structural_isos
check_path_object strict_to_enriched enriched_to_path homotopy_monoid_view simplicial_correspondence
validate_premorphism base_change restrict foliation cocycle_check metric_enrichment thin_bridge
bridge_of_distributor distributor_of_bridge validate_bimodule check_fractions localize_fractions
curry_adjunction product_localization_check secondary_localization reduce_point parse_spec run_command
""".split()


def run(argv):
    rep = cli.run_command(argv)
    return rep.exit_code, "\n".join(rep.machine_lines())


def test_exit_codes():
    assert run(["roundtrip", "--enriched", "metric3.spec"])[0] == 0
    code, out = run(["segal-check", "--pathobject", "bad.spec", "--base", "iso"])
    assert code == 1
    assert "FAIL NonSegalCell phi,[1,(o,o)],[1,(o,o)]" in out
    assert run(["no-such-command"])[0] == 2
    code, out = run(["path", "--check", "delta-iso"])
    assert code == 2 and "MissingArgument" in out
    assert run(["validate", "--spec", "does-not-exist.spec"])[0] == 2


def test_stdout_is_repeatable():
    argv = ["localize", "--category", "Two", "--invert", "all", "--product", "Two"]
    first = run(argv)
    assert first == run(argv)
    assert first[1].splitlines()[0].startswith("STAT ")


def test_console_script_streams(tmp_path):
    env = dict(os.environ, PATHCAT_MAX_LEN="2")
    proc = subprocess.run(
        [sys.executable, "-m", "pathcat", "path", "--category", "One", "--check", "delta-iso"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == 0
    assert "STAT max_len=2" in proc.stdout and "PASS delta-iso" in proc.stdout
    assert "runtime" in proc.stderr and "runtime" not in proc.stdout


def test_max_len_precedence(monkeypatch):
    monkeypatch.setenv("PATHCAT_MAX_LEN", "2")
    assert "STAT max_len=2" in run(["path", "--category", "One", "--check", "delta-iso"])[1]
    assert "STAT max_len=3" in run(["path", "--category", "One", "--check", "delta-iso", "--max-len", "3"])[1]
    # a block value beats the environment, the flag beats both
    assert "STAT max_len=3" in run(["reduce", "--pathobject", "metric3.spec"])[1]
    assert "STAT max_len=2" in run(["reduce", "--pathobject", "metric3.spec", "--max-len", "2"])[1]
    monkeypatch.delenv("PATHCAT_MAX_LEN")
    assert "STAT max_len=4" in run(["path", "--category", "One", "--check", "delta-iso"])[1]


def test_parse_minimal_category():
    doc = cli.parse_text("category One\n  object o\n")
    c = doc.build("category", "One")
    assert len(c.objects) == 1 and len(c.arrows) == 1


def test_parse_explicit_category():
    text = "category C\n  object a\n  object b\n  object c\n  arrow f a b\n  arrow g b c\n  arrow h a c\n  compose g f = h\n"
    c = cli.parse_text(text).build("category", "C")
    assert len(c.arrows) == 6
    assert c.compose("g", "f") == "h"


def test_parse_unknown_object():
    with pytest.raises(UnresolvedReference):
        cli.parse_text("category C\n  object a\n  arrow f a zz\n")


def test_parse_errors_carry_a_line():
    with pytest.raises(ParseError) as err:
        cli.parse_text("category C\n  object a\n  wobble a\n")
    assert err.value.where[0] == 3
    with pytest.raises(ParseError):
        cli.parse_text("  object a\n")


def test_parse_cocycle_fixture():
    doc = cli.parse_spec("cocycle_z3.spec")
    blk = doc.block("cocycle", "Z3")
    assert len(blk.all("value")) == 9
    spec = doc.build("cocycle", "Z3")
    assert spec.values[("a", "c")] == 2 and spec.max_len == 3


def test_report_passes():
    code, out = run(["report"])
    assert code == 0
    assert f"STAT runs={len(cli.REPORT_PLAN)}" in out
    assert "FAIL" not in out


def test_dispatch_covers_library_ops():
    listed = set().union(*(ops for _, ops in cli.DISPATCH.values()))
    assert set(LIBRARY_OPS) <= listed
    assert set(SAMPLES) == set(cli.DISPATCH)


def _record_calls(monkeypatch, names, seen):
    """Wrap each named function wherever a pathcat module refers to it, so
    calls through any import path are recorded."""
    for mod in [m for k, m in sys.modules.items() if k == "pathcat" or k.startswith("pathcat.")]:
        for name in names:
            fn = getattr(mod, name, None)
            if not callable(fn) or getattr(fn, "_recorded", False):
                continue

            def wrapper(*a, _fn=fn, _name=name, **kw):
                seen.add(_name)
                return _fn(*a, **kw)

            wrapper._recorded = True
            monkeypatch.setattr(mod, name, wrapper)


@pytest.mark.parametrize("command", sorted(set(SAMPLES) - {"report"}))
def test_dispatch_entries_are_reached(command, monkeypatch):
    """Every operation listed for a command in the dispatch table actually
    runs during the sample invocations of that command."""
    seen = set()
    listed = cli.DISPATCH[command][1]
    _record_calls(monkeypatch, listed, seen)
    for argv in SAMPLES[command]:
        assert cli.run_command(argv).exit_code in (0, 1), argv
    assert [op for op in listed if op not in seen] == []


def test_report_reaches_run_command():
    assert cli.DISPATCH["report"][1] == ("run_command",)
    assert all(argv[0] in cli.DISPATCH for argv in cli.REPORT_PLAN)
