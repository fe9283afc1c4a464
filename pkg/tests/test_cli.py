import json

import pytest

from sympsum.cli import main

from conftest import MANIFESTS


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", str(MANIFESTS / "cp2_blowup_10.json"))
    assert code == 0
    assert "valid" in out
    assert "sympsum" in out and "bound" in out  # reproducibility header


def test_validate_domain_error(capsys, tmp_path):
    p = tmp_path / "asym.json"
    p.write_text(
        json.dumps(
            {
                "name": "asym",
                "basis": ["a", "b"],
                "gram": [[0, 1], [2, 0]],
                "K": [0, 0],
                "euler": 4,
                "signature": 0,
            }
        )
    )
    code, out, _ = run(capsys, "validate", str(p))
    assert code == 2
    assert "symmetric" in out


def test_validate_parse_error(capsys, tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{oops")
    code, _, err = run(capsys, "validate", str(p))
    assert code == 3
    assert "parse error" in err


def test_enumerate_tables(capsys):
    code, out, _ = run(capsys, "enumerate", "--table", "rational")
    assert code == 0 and out.count("a=") == 6
    code, out, _ = run(capsys, "enumerate", "--table", "ruled")
    assert code == 0 and out.count("(a1..a4)=") == 5


def test_enumerate_square(capsys):
    code, out, _ = run(
        capsys, "enumerate", str(MANIFESTS / "cp2_blowup_10.json"), "--square", "-1", "--bound", "1"
    )
    assert code == 0
    assert "sphere class(es)" in out


def test_minimality_kummer(capsys):
    code, out, _ = run(
        capsys, "minimality", str(MANIFESTS / "kummer_blown.json"), "--cap", "cp2_2h"
    )
    assert code == 0
    assert "NotMinimal" in out and "witness" in out


def test_minimality_incompatible(capsys):
    code, _, err = run(
        capsys, "minimality", str(MANIFESTS / "kummer_blown.json"), "--cap", "cp2_h"
    )
    assert code == 2
    assert "incompatible" in err


def test_gwdim(capsys):
    code, out, _ = run(
        capsys,
        "gwdim",
        str(MANIFESTS / "cp2_conic.json"),
        "--class", "1", "--genus", "0", "--contacts", "1,1",
    )
    assert code == 0
    assert "degree (real): 4" in out and "not_excluded" in out


def test_gwdim_contact_mismatch(capsys):
    code, _, err = run(
        capsys,
        "gwdim",
        str(MANIFESTS / "cp2_conic.json"),
        "--class", "1", "--contacts", "1",
    )
    assert code == 2


def test_json_output_round_trips(capsys):
    for argv in (
        ("validate", str(MANIFESTS / "cp2.json")),
        ("enumerate", "--table", "rational"),
        ("minimality", str(MANIFESTS / "kummer_blown.json"), "--cap", "cp2_2h"),
        ("gwdim", str(MANIFESTS / "cp2_conic.json"), "--class", "1", "--contacts", "2"),
    ):
        code, out, _ = run(capsys, *argv, "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert json.loads(json.dumps(data)) == data
        assert data["header"]["tool"] == "sympsum"
        assert data["header"]["bound"] == 4


def test_env_bound(capsys, monkeypatch):
    monkeypatch.setenv("SYMPSUM_BOUND", "2")
    code, out, _ = run(capsys, "validate", str(MANIFESTS / "cp2.json"), "--format", "json")
    assert code == 0
    assert json.loads(out)["header"]["bound"] == 2
    # explicit flag wins over the environment
    code, out, _ = run(
        capsys, "validate", str(MANIFESTS / "cp2.json"), "--bound", "3", "--format", "json"
    )
    assert json.loads(out)["header"]["bound"] == 3


def test_second_manifest_as_cap(capsys, tmp_path):
    # a conic pair written as a manifest can serve as the second summand
    p = tmp_path / "conic.json"
    p.write_text(
        json.dumps(
            {
                "name": "conic",
                "basis": ["H"],
                "gram": [[1]],
                "K": [-3],
                "V": {"vector": [2], "genus": 0},
                "euler": 3,
                "signature": 1,
                "flags": {"rational": True, "ruled": False, "closed": True},
            }
        )
    )
    code, out, _ = run(capsys, "minimality", str(MANIFESTS / "kummer_blown.json"), str(p))
    assert code == 0
    assert "NotMinimal" in out
