import io as _io
import json
import subprocess
import sys

import numpy as np
import pytest

from conftest import FIXTURE_DIR
from ternary_jordan import fixtures as fx
from ternary_jordan.algebra import BinaryAlgebra, TernaryAlgebra, validate_binary, validate_ternary
from ternary_jordan.cli import main
from ternary_jordan.errors import BadField, IndexOutOfRange, ParseError, SymmetryConflict
from ternary_jordan.io import (emit_algebra, load_algebra, parse_algebra, parse_extras)

DOCS = sorted(p for p in FIXTURE_DIR.glob("*.json")
              if p.name not in ("broken.json", "F2_F2_extras.json"))


def cli(*argv):
    out, err = _io.StringIO(), _io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def fixture(name):
    return str(FIXTURE_DIR / name)


def test_parse_examples():
    A = parse_algebra('{"field":"Q","kind":"ternary","dim":1,'
                      '"products":[{"args":[0,0,0],"value":[[0,"1"]]}]}')
    assert A == fx.get("F2")
    B = parse_algebra('{"field":"Q","kind":"ternary","dim":2,"products":[],"symmetrize":true}')
    assert B == fx.get("F1")


def test_parse_rationals_and_gf():
    A = parse_algebra('{"field":"Q","kind":"ternary","dim":1,'
                      '"products":[{"args":[0,0,0],"value":[[0,"-3/6"]]}]}')
    assert str(A.tensor[0, 0, 0, 0]) == "-1/2"
    B = parse_algebra('{"field":"GF(5)","kind":"ternary","dim":1,'
                      '"products":[{"args":[0,0,0],"value":[[0,7]]}]}')
    assert B.tensor[0, 0, 0, 0] == 2


def test_symmetry_conflict():
    with pytest.raises(SymmetryConflict):
        load_algebra(fixture("broken.json"))
    # with symmetrize false a single entry lacking its orbit is also a conflict
    with pytest.raises(SymmetryConflict):
        parse_algebra('{"field":"Q","kind":"ternary","dim":2,"symmetrize":false,'
                      '"products":[{"args":[0,0,1],"value":[[0,"2"]]}]}')


@pytest.mark.parametrize("text, err", [
    ('{"field":"Q","kind":"ternary","dim":1,"products":[{"args":[0,0],"value":[]}]}', ParseError),
    ('{"field":"Q","kind":"ternary","dim":1,"products":[{"args":[0,0,3],"value":[]}]}',
     IndexOutOfRange),
    ('{"field":"R","kind":"ternary","dim":1}', BadField),
    ('{"field":"GF(4)","kind":"ternary","dim":1}', BadField),
    ('{"field":"Q","kind":"ternary","dim":1,"products":[{"args":[0,0,0],"value":[[0,0.5]]}]}',
     ParseError),
    ('{"field":"Q","kind":"ternary","dim":1,"products":[{"args":[0,0,0],"value":[[0,"1"]]},'
     '{"args":[0,0,0],"value":[[0,"1"]]}]}', ParseError),
    ('{"field":"Q","kind":"quaternary","dim":1}', ParseError),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_algebra(text)


def test_parse_error_positions():
    with pytest.raises(ParseError) as e:
        parse_algebra('{"field": "Q",, }')
    assert e.value.position == 14
    with pytest.raises(ParseError) as e:
        parse_algebra('{"field":"Q","kind":"ternary","dim":1,'
                      '"products":[{"args":[0,0,0],"value":[[0,"x"]]}]}')
    assert e.value.position == "$.products[0].value[0]"


@pytest.mark.parametrize("path", DOCS, ids=lambda p: p.name)
def test_round_trip(path):
    A = load_algebra(path)
    text = emit_algebra(A)
    B = parse_algebra(text)
    assert A == B and type(A) is type(B)
    assert emit_algebra(B) == text
    assert path.read_text() == text   # shipped files are in emitted form


def test_fixture_files_match_library():
    pairs = {"F1.json": "F1", "F2.json": "F2", "F3.json": "F3", "F2_F2.json": "F2+F2",
             "F1_F2.json": "F1+F2", "tilde_F2.json": "tilde(F2)",
             "F2_tensor_unital2.json": "F2*unital2", "F4_ternary.json": "F4",
             "nonassoc2.json": "nonassoc2", "J3.json": "J3", "unital2.json": "unital2"}
    for f, name in pairs.items():
        assert load_algebra(fixture(f)) == fx.get(name)


def test_binary_documents():
    C = load_algebra(fixture("nonassoc2.json"))
    assert isinstance(C, BinaryAlgebra) and C.is_commutative
    N = parse_algebra('{"field":"Q","kind":"binary","dim":2,"symmetrize":false,'
                      '"products":[{"args":[0,1],"value":[[0,"1"]]}]}')
    assert not N.is_commutative
    assert parse_algebra(emit_algebra(N)) == N


def test_extras():
    A = fx.get("F2+F2")
    ex = parse_extras((FIXTURE_DIR / "F2_F2_extras.json").read_text(), A)
    assert [S.dim for S in ex["ideals"]] == [1, 1]
    with pytest.raises(ParseError):
        parse_extras('{"unknown": 1}', A)


# ---------------------------------------------------------------------------
# command line
# ---------------------------------------------------------------------------

def test_cli_spaces_f2_json():
    code, out, _ = cli("spaces", fixture("F2.json"), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert {k: doc[k] for k in ("Der", "QDer", "GDer", "ZDer", "Centroid", "QCentroid")} == \
        {"Der": 0, "QDer": 1, "GDer": 1, "ZDer": 0, "Centroid": 1, "QCentroid": 1}
    assert doc["Delta"] == 3 and doc["bases"]["QDer"] == [["1"]]


def test_cli_verify_f1():
    code, out, _ = cli("verify", fixture("F1.json"), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["fail"] == 0
    assert {c["status"] for c in doc["checks"]} <= {"pass", "skipped"}


def test_cli_check_broken():
    code, out, err = cli("check", fixture("broken.json"))
    assert code == 2 and "SymmetryConflict" in err and out == ""


def test_cli_exit_codes():
    assert cli("check", fixture("F2.json"))[0] == 0
    assert cli("check", fixture("F3.json"))[0] == 1          # not Jordan
    assert cli("check", fixture("missing.json"))[0] == 2
    assert cli("spaces", fixture("F3.json"))[0] == 2         # invalid input refused
    assert cli("spaces", fixture("F3.json"), "--allow-invalid")[0] == 0
    assert cli("spaces", fixture("F4_ternary.json"))[0] == 2
    assert cli("spaces", fixture("F4_ternary.json"), "--allow-char-3")[0] == 0
    assert cli("verify", fixture("F2.json"), "--checks", "NoSuchCheck")[0] == 2
    assert cli("bogus")[0] == 2


def test_cli_verify_failure_exit_1(tmp_path):
    ex = tmp_path / "ex.json"
    ex.write_text('{"psi": [["1", "1"], ["0", "0"]]}')
    code, out, _ = cli("verify", fixture("F2_F2.json"), "--checks", "P7_3",
                       "--extras", str(ex))
    assert code == 1 and "fail" in out


def test_cli_flags_either_side():
    a = cli("--format", "json", "spaces", fixture("F2.json"))
    b = cli("spaces", fixture("F2.json"), "--format", "json")
    assert a == b


def test_cli_deterministic_and_jobs():
    args = ("verify", fixture("F2_F2.json"), "--format", "json", "--seed", "3")
    a, b = cli(*args), cli(*args)
    c = cli(*args, "--jobs", "3")
    assert a[1] == b[1] == c[1] and a[0] == 0


@pytest.mark.parametrize("argv, check", [
    (("j-alpha", "unital2.json", "--alpha", "[0, 0]"), validate_ternary),
    (("slice", "tilde_F2.json", "--z0", "[0, 1, 0]"), validate_binary),
    (("hom-binary", "F4_truncated.json", "--map", json.dumps(fx.F4_D), "--mode", "delta"),
     validate_binary),
    (("tensor", "F2.json", "unital2.json"), validate_ternary),
    (("tilde", "F2.json"), validate_ternary),
    (("direct-sum", "F2.json", "F1.json"), validate_ternary),
    (("quotient", "F1_F2.json", "--ideal", "[[1, 0, 0], [0, 1, 0]]"), validate_ternary),
])
def test_cli_construct_outputs_reparse(argv, check, tmp_path):
    recipe, *rest = argv
    rest = [fixture(a) if a.endswith(".json") else a for a in rest]
    target = tmp_path / "out.json"
    code, out, err = cli("--allow-char-3", "construct", recipe, *rest, "-o", str(target))
    assert code == 0, err
    B = load_algebra(target)
    assert check(B).valid
    assert emit_algebra(B) == target.read_text()


def test_cli_construct_refuses_non_jordan():
    code, _, err = cli("construct", "j-alpha", fixture("J3.json"), "--alpha", "[0, 1]")
    assert code == 2 and "NotJordan" in err
    code, out, _ = cli("construct", "j-alpha", fixture("J3.json"), "--alpha", "[0, 1]",
                       "--allow-invalid")
    assert code == 0 and parse_algebra(out) == fx.get("F3")


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "ternary_jordan", "check", fixture("F2.json"),
                        "--format", "json"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["validation"]["valid"] is True
