import json
import subprocess
import sys

import pytest

from coverwreath import certs
from coverwreath.cli import main
from coverwreath.embed import construct_embedding, make_instance, obstruction_witness


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decide(capsys):
    code, out, _ = run(capsys, "decide", "--n", "3", "--q", "4", "--r", "3")
    assert code == 0 and "embeds" in out and "(q-1)/d = 1" in out
    code, out, _ = run(capsys, "decide", "--n", "2", "--q", "5", "--r", "2")
    assert code == 3 and "does not embed" in out and "d = gcd(n, q-1) = 2" in out
    code, _, err = run(capsys, "decide", "--n", "2", "--q", "7", "--r", "3")
    assert code == 2 and "InvalidInstance" in err


def test_decide_json(capsys):
    code, out, _ = run(capsys, "decide", "--n", "2", "--q", "7", "--r", "2", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"instance": {"n": 2, "q": 7, "r": 2}, "d": 2, "(q-1)/d": 3,
                               "r_divides": False, "embeds": True}


def test_usage_errors(capsys):
    assert run(capsys, "decide", "--n", "x", "--q", "5", "--r", "2")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "sweep", "--instances", "2,5")[0] == 2
    assert run(capsys, "sweep", "--routes", "nope")[0] == 2


def test_certify_embedding(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, _, _ = run(capsys, "certify", "--n", "2", "--q", "7", "--r", "2", "-o", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["schema"] == "coverwreath-cert/1" and doc["kind"] == "embedding"
    assert len(doc["generators"]) == 2
    assert all(len(g["vector"]) == 8 for g in doc["generators"])
    assert doc["verified"] is True and doc["witness"] is None
    assert run(capsys, "verify", str(path))[0] == 0


def test_certify_obstruction(capsys, tmp_path):
    path = tmp_path / "o.json"
    assert run(capsys, "certify", "--n", "2", "--q", "5", "--r", "2", "-o", str(path))[0] == 3
    doc = json.loads(path.read_text())
    assert doc["kind"] == "obstruction" and doc["witness"]["s"] == [[2, 0], [0, 3]]
    assert run(capsys, "verify", str(path))[0] == 0
    # no enumeration needed here: the cover has order ~ 6.9 million
    path = tmp_path / "o19.json"
    assert run(capsys, "certify", "--n", "3", "--q", "19", "--r", "3", "-o", str(path))[0] == 3
    assert run(capsys, "verify", str(path))[0] == 0


def test_certify_budget(capsys, monkeypatch):
    assert run(capsys, "certify", "--n", "3", "--q", "7", "--r", "3")[0] == 4
    assert run(capsys, "certify", "--n", "2", "--q", "7", "--r", "2", "--budget", "10")[0] == 4
    monkeypatch.setenv("COVERWREATH_BUDGET", "10")
    assert run(capsys, "certify", "--n", "2", "--q", "11", "--r", "2")[0] == 4


def test_verify_tampered_vector(capsys, tmp_path):
    doc = certs.to_json(construct_embedding(make_instance(2, 7, 2)))
    doc["generators"][0]["vector"][2] ^= 1
    path = tmp_path / "bad.json"
    path.write_text(certs.dumps(doc))
    code, _, err = run(capsys, "verify", str(path))
    assert code == 1
    assert "closure identity psi(g)*psi(s_" in err


def test_verify_wrong_order(capsys, tmp_path):
    doc = certs.to_json(obstruction_witness(make_instance(2, 9, 2)))
    doc["witness"]["order_s"] = 8
    path = tmp_path / "bad.json"
    path.write_text(certs.dumps(doc))
    code, _, err = run(capsys, "verify", str(path))
    assert code == 1 and "|s|" in err


@pytest.mark.parametrize("mutate,needle", [
    (lambda d: d["central_image"].update(coefficient=0), "coefficient is zero"),
    (lambda d: d["generators"][0].update(element=[[1, 0], [0, 1]]), "generator 0"),
    (lambda d: d["generators"][1]["vector"].pop(), "entries"),
    (lambda d: d["field"].update(modulus=[1, 1]), "modulus"),
])
def test_verify_other_failures(tmp_path, mutate, needle):
    doc = certs.to_json(construct_embedding(make_instance(2, 7, 2)))
    mutate(doc)
    with pytest.raises(certs.CertificateError, match=needle):
        certs.verify(doc)


def test_verify_parse_failures(capsys, tmp_path):
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "verify", str(bad))[0] == 2
    bad.write_text(json.dumps({"schema": "other/9", "kind": "embedding"}))
    assert run(capsys, "verify", str(bad))[0] == 2


@pytest.mark.parametrize("triple", [(2, 7, 2), (2, 11, 2), (2, 5, 2), (4, 9, 2)])
def test_round_trip_byte_identical(triple):
    inst = make_instance(*triple)
    cert = construct_embedding(inst) if triple[1] % 4 == 3 else obstruction_witness(inst)
    text = certs.dumps(certs.to_json(cert))
    assert certs.dumps(json.loads(text)) == text
    # deterministic across runs
    again = construct_embedding(inst) if triple[1] % 4 == 3 else obstruction_witness(inst)
    assert certs.dumps(certs.to_json(again)) == text


def test_sweep_n2(capsys):
    code, out, _ = run(capsys, "sweep", "--n", "2", "--q", "5", "7", "9", "11", "13", "--r", "2",
                       "--format", "json")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["criterion"] for r in rows] == ["no", "yes", "no", "yes", "no"]
    assert all(r["status"] == "CONSISTENT" for r in rows)


def test_sweep_mixed_and_errors(capsys):
    code, out, _ = run(capsys, "sweep", "--instances", "3,4,3", "4,5,2", "2,7,3",
                       "--routes", "arithmetic,witness")
    lines = out.splitlines()
    assert code == 2       # the invalid row is recorded, the sweep continues
    assert lines[1].split()[1] == "yes" and lines[2].split()[1] == "yes"
    assert "ERROR: InvalidInstance" in lines[3]


def test_sweep_empty(capsys):
    code, out, _ = run(capsys, "sweep")
    assert code == 0 and len(out.splitlines()) == 1
    code, out, _ = run(capsys, "sweep", "--format", "json")
    assert code == 0 and json.loads(out) == {"rows": []}


def test_report(capsys):
    code, out, _ = run(capsys, "report", "--n", "2", "--q", "5", "--r", "2", "--oracle",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["h1"]["V"] == 1 and doc["kerphi_dim"] == 0
    assert all(row["agree"] for row in doc["oracle"].values())


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "coverwreath", "decide", "--n", "2", "--q", "11",
                          "--r", "2"], capture_output=True, text=True)
    assert out.returncode == 0 and "embeds" in out.stdout
