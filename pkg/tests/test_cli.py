import json
import os

import pytest

from fbpath.cli import main, parse_transform_script
from fbpath.cli import CliError
from fbpath.qseries import QPolynomial


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- enumerate -----------------------------------------------------------------

def test_enumerate_unique_path(capsys):
    code, out, err = run(capsys, "enumerate", "1", "3", "1", "1", "2", "4")
    assert code == 0
    lines = [l for l in out.splitlines() if l.strip()]
    assert lines == ["1,2,1,2,1"]
    assert "1 paths" in err


def test_enumerate_weights_jsonl(capsys):
    code, out, _ = run(
        capsys, "enumerate", "3", "11", "5", "3", "4", "6",
        "--weights", "--format", "jsonl",
    )
    assert code == 0
    records = [json.loads(l) for l in out.splitlines()]
    # every record is a valid path of the family and weights are consistent
    from fbpath.paths import validate, wt

    assert len(records) == len({tuple(r["heights"]) for r in records})
    for r in records:
        path = validate(3, 11, 5, 3, 4, r["heights"])
        assert wt(path) == r["wt"]


def test_enumerate_noncoprime_exits_2(capsys):
    code, _, err = run(capsys, "enumerate", "4", "8", "1", "1", "2", "4")
    assert code == 2
    assert "coprime" in err


def test_enumerate_sector_labels_restricted(capsys):
    code, _, err = run(
        capsys, "enumerate", "3", "8", "2", "2", "3", "4", "--sectors"
    )
    assert code == 2
    assert "ground family" in err


# -- char / limit -----------------------------------------------------------------

@pytest.mark.parametrize(
    "method", ["bruteforce", "recurrence", "bosonic", "fermionic-m",
               "fermionic-lambda", "dki"]
)
def test_char_methods_agree(capsys, method):
    code, out, _ = run(
        capsys, "char", "2", "5", "2", "2", "3", "6", "--method", method
    )
    assert code == 0
    want = "1 + q + q^2 + q^3 + 2*q^4 + 2*q^5 + 2*q^6 + q^7 + q^8 + q^9"
    assert out.strip() == want


def test_char_json_is_reparseable(capsys):
    code, out, _ = run(
        capsys, "char", "3", "8", "3", "3", "4", "6", "--method", "bosonic",
        "--json",
    )
    assert code == 0
    doc = json.loads(out)
    poly = QPolynomial.from_json_pairs(doc["coefficients"])
    code2, out2, _ = run(capsys, "char", "3", "8", "3", "3", "4", "6")
    assert QPolynomial.from_text(out2.strip()) == poly


def test_char_fermionic_requires_ground_family(capsys):
    code, _, err = run(
        capsys, "char", "3", "8", "2", "2", "3", "4", "--method", "fermionic-m"
    )
    assert code == 2
    assert "ground family" in err


def test_limit_rocha_equals_fermionic(capsys):
    code, out1, _ = run(
        capsys, "limit", "3", "8", "--method", "rocha", "--degree", "20"
    )
    code2, out2, _ = run(
        capsys, "limit", "3", "8", "--method", "fermionic", "--degree", "20"
    )
    assert code == code2 == 0
    assert out1 == out2


def test_limit_gordon_needs_p2(capsys):
    code, _, err = run(capsys, "limit", "3", "7", "--method", "gordon")
    assert code == 2
    assert "gordon" in err


# -- transform / bijection -----------------------------------------------------------

def test_parse_transform_script():
    steps = parse_transform_script("b:3:[2,1];d;b:1:[]")
    assert steps == [("b", 3, (2, 1)), ("d",), ("b", 1, ())]
    with pytest.raises(CliError):
        parse_transform_script("x:1")
    with pytest.raises(CliError):
        parse_transform_script("")


def test_transform_pipeline(tmp_path, capsys):
    doc = {"p": 1, "p'": 3, "a": 1, "b": 1, "c": 2, "L": 2,
           "heights": [1, 2, 1]}
    src = tmp_path / "path.json"
    src.write_text(json.dumps(doc))
    code, out, _ = run(
        capsys, "transform", "--path", str(src), "--script", "b:1:[1];d",
        "--json",
    )
    assert code == 0
    records = json.loads(out)
    assert [r["step"] for r in records] == ["input", "b(k=1,[1])", "d"]
    assert [r["wt"] for r in records] == [1, 6, 3]
    assert records[1]["delta"] == 5
    # duality complement: wt + dual wt = L^2/4
    assert records[1]["wt"] + records[2]["wt"] == 36 // 4


def test_transform_rejects_bad_script(tmp_path, capsys):
    src = tmp_path / "path.json"
    src.write_text(json.dumps({"p": 1, "p'": 3, "a": 1, "b": 1, "c": 2,
                               "L": 0, "heights": [1]}))
    code, _, err = run(capsys, "transform", "--path", str(src), "--script", "q")
    assert code == 2


def test_bijection_roundtrip_via_files(tmp_path, capsys):
    from importlib import resources

    doc = json.loads(
        resources.files("fbpath.data")
        .joinpath("golden_bijection_a3.json")
        .read_text()
    )
    pathfile = tmp_path / "p.json"
    pathfile.write_text(json.dumps(doc["path"]))
    code, out, _ = run(capsys, "bijection", "--path", str(pathfile), "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["partition"]["parts"] == [6, 6, 6, 6, 3, 2, 1, 1]
    assert (payload["N"], payload["M"]) == (7, 8)
    assert (payload["alpha"], payload["beta"]) == (2, 1)
    assert payload["weight"] == 31

    mufile = tmp_path / "mu.json"
    mufile.write_text(json.dumps(payload["partition"]))
    code, out, _ = run(
        capsys, "bijection", "--partition", str(mufile),
        "--labels", "3,8,4,3,2,15", "--json",
    )
    assert code == 0
    assert json.loads(out)["path"]["heights"] == doc["path"]["heights"]


def test_bijection_needs_exactly_one_input(capsys):
    code, _, err = run(capsys, "bijection")
    assert code == 2


# -- mnsystem / verify ------------------------------------------------------------

def test_mnsystem_golden(capsys):
    from importlib import resources

    code, out, _ = run(capsys, "mnsystem", "9", "31")
    assert code == 0
    want = (
        resources.files("fbpath.data")
        .joinpath("golden_mnsystem_9_31.txt")
        .read_text()
    )
    assert out == want


def test_verify_subset_and_outputs(tmp_path, capsys):
    outdir = tmp_path / "report"
    code, out, _ = run(
        capsys, "verify", "--only", "golden", "--only", "cf-laws",
        "--out", str(outdir),
    )
    assert code == 0
    assert "[PASS]" in out and "FAIL" not in out
    assert (outdir / "report.csv").exists()
    assert (outdir / "report.txt").exists()
    assert (outdir / "summary.png").exists()
    header = (outdir / "report.csv").read_text().splitlines()[0]
    assert header == "group,name,passed,detail"


def test_verify_deterministic_report(tmp_path, capsys):
    args = ["verify", "--only", "golden", "--pairs", "2,5", "--json"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_verify_inject_error_exits_1(capsys):
    code, out, _ = run(
        capsys, "verify", "--only", "char-agreement", "--pairs", "2,5",
        "--max-l", "4", "--inject-error",
    )
    assert code == 1
    assert "FAIL" in out and "mismatch" in out


def test_verify_only_gordon_subset(capsys):
    code, out, _ = run(
        capsys, "verify", "--only", "limits", "--degree", "12"
    )
    assert code == 0
    assert "gordon family" in out
