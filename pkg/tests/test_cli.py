import io
import subprocess
import sys

import pytest

from endspace.cli import main
from endspace.closedsets import ClosedSetSpec
from endspace.graph import FiniteMultigraph
from endspace.specfile import BuiltinRef, SpecError, format_spec, parse_spec
from endspace.surfaces import PantsComplex


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


# ---------------------------------------------------------------- spec files

def test_parse_spec_kinds():
    g = parse_spec("graph g root=0\nv 0\nv 1\ne 0 0 1")
    assert isinstance(g, FiniteMultigraph) and len(g.vertices) == 2 and g.degree(0) == 1
    assert parse_spec("closedset full") == ClosedSetSpec.full()
    pc = parse_spec("pants 0 legs=1\nglue 0.1 0.2\nbase 0")
    assert isinstance(pc, PantsComplex) and pc.genus() == 1
    assert parse_spec("builtin loch_ness") == BuiltinRef("loch_ness")
    assert parse_spec("# comment\nrank=inf ends=1 loopends=1").rank == float("inf")


@pytest.mark.parametrize("text", [
    "graph g root=0\nv 0\nv 1\ne 0 0 1\n",
    "closedset dfa 3 0:0>1,0:1>2,1:0>1,2:1>2 0,1,2\n",
    "closedset cylinders - 01\n",
    "descriptor rank=2 endpair=omega+1:0\n",
    "pants a legs=2\npants b legs=0\npants c legs=0\npants d legs=0\nglue a.1 b.1\nglue a.2 c.1\nglue a.3 d.1\nbase a\n",
    "builtin gamma5:full\n",
])
def test_roundtrip(text):
    s = parse_spec(text)
    assert format_spec(parse_spec(format_spec(s))) == format_spec(s)
    assert parse_spec(format_spec(s)) == s or isinstance(s, (FiniteMultigraph, PantsComplex))


@pytest.mark.parametrize("text,loc", [
    ("graph g root=0 colour=red\nv 0", (1, 16)),
    ("graph g\nv 0\nedge 1 0 0", (3, 1)),
    ("graph g\nv 0\nv 0", (3, 3)),
    ("", (1, 1)),
    ("closedset full\nclosedset full", (2, 1)),
    ("frobnicate", (1, 1)),
    ("pants a legs=1\nglue a.1 a.2\nbogus a", (3, 1)),
])
def test_parse_errors_have_locations(text, loc):
    with pytest.raises(SpecError) as exc:
        parse_spec(text)
    assert (exc.value.line, exc.value.col) == loc
    assert str(exc.value).startswith(f"line {loc[0]}, column {loc[1]}: ")


# ---------------------------------------------------------------------- CLI

def test_dist():
    code, out = run("dist", "--a", "loch_ness", "--b", "tree3", "--budget", "10")
    assert code == 0 and out.startswith("exact 2^-1/2 ")


def test_phe_descriptor_vs_builtin():
    code, out = run("phe", "--a", "rank=inf ends=1 loopends=1", "--b", "loch_ness")
    assert code == 0 and out.splitlines()[0] == "equivalent"
    code, out = run("phe", "--a", "fig4_first", "--b", "fig4_middle")
    assert out.splitlines()[0] == "not equivalent"


def test_generic_is_byte_stable(tmp_path):
    args = ["generic", "--k", "3", "--N", "50", "--n", "2", "--R", "5", "--trials", "10", "--seed", "1"]
    a, b = run(*args), run(*args)
    assert a == b and a[0] == 0 and len(a[1].splitlines()) == 11
    f = tmp_path / "out.csv"
    assert run(*args, "--csv", str(f))[0] == 0
    assert f.read_text() == a[1]


def test_generic_requires_seed(capsys):
    code, _ = run("generic", "--k", "3", "--N", "50", "--n", "2", "--R", "5", "--trials", "10")
    assert code == 2
    err = capsys.readouterr().err
    assert err.startswith("error: ") and err.count("\n") == 1


def test_ball_formats():
    code, out = run("ball", "--spec", "ray", "--radius", "5/2", "--format", "dot")
    assert code == 0 and "dashed" in out and out.count("stub:") == 2
    code, out = run("ball", "--spec", "tree3", "--radius", "1", "--format", "json")
    assert code == 0 and '"rank": 0' in out
    code, out = run("ball", "--spec", "graph g root=0\nv 0\ne 0 0 0", "--radius", "1")
    assert out.splitlines()[0].endswith("rank=1")


def test_ends_and_rank():
    code, out = run("ends", "--spec", "tree3", "--depth", "2", "--horizon", "10")
    assert code == 0 and "components 1 3 6" in out
    assert run("ends", "--spec", "tree3", "--depth", "2", "--horizon", "4", "--format", "json")[0] == 0
    code, out = run("rank", "--spec", "loch_ness", "--radius", "5")
    assert "rank_lower_bound radius=5 4" in out


def test_reduce(tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("closedset cylinders 000 001 01 10 111\n")
    code, out = run("reduce", "--closed-set", str(f), "--k", "7", "--emit-ball", "3", "--check-regular", "10")
    assert code == 0 and "regular k=7 radius=10 yes" in out
    code, out = run("reduce", "--closed-set", str(f), "--k", "4", "--emit-ball", "2", "--format", "dot")
    assert out.startswith('graph "gamma4"')


def test_surface(tmp_path):
    f = tmp_path / "torus.pants"
    f.write_text("pants 0 legs=1\nglue 0.1 0.2\nbase 0\n")
    g = tmp_path / "sphere.pants"
    g.write_text("pants a legs=0\npants b legs=0\nglue a.1 b.1\nbase a\n")
    assert run("surface", "--file", str(f), "--genus")[1].startswith("genus 1 euler_characteristic 0")
    assert "--" in run("surface", "--file", str(f), "--to-graph", "--format", "dot")[1]
    assert run("surface", "--homeo", str(f), str(f))[1] == "homeomorphic\n"
    assert run("surface", "--homeo", str(f), str(g))[1] == "not homeomorphic\n"


@pytest.mark.parametrize("argv,code", [
    (["dist", "--a", "nope", "--b", "ray", "--budget", "3"], 1),
    (["reduce", "--closed-set", "closedset table - 0 1 01 10 11", "--k", "3"], 1),
    (["ball", "--spec", "ray", "--radius", "-1"], 2),
    (["frobnicate"], 2),
    (["surface"], 2),
    (["phe", "--a", "rank=2 ends=1 loopends=1", "--b", "ray"], 1),
])
def test_error_paths(argv, code, capsys):
    assert run(*argv)[0] == code
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1 and err[0].startswith("error: ")


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "endspace.cli", "dist", "--a", "ray", "--b", "ray",
                          "--budget", "4"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "upper 2^-2 0.25\n"
