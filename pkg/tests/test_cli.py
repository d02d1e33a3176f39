"""Command line behavior: formats, exit codes, and error reporting."""

import json

import pytest

import artinfib.cli as cli
from artinfib.cli import _parse_degrees, main
from artinfib.complexes import WellFilteredResult, dump_family, koszul_family
from artinfib.domains import QQ
from artinfib.errors import NotStabilized, NotWellFiltered
from artinfib.homology import DegreeShift, ShiftReport
from artinfib.laurent import parse_poly


def run_cli(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cohomology_json_a2(capsys):
    code, out, err = run_cli(capsys, "cohomology", "--type", "A2",
                             "--format", "json")
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["command"] == "cohomology"
    assert doc["coeff"] == "Q"
    assert doc["input"] == {"type": "A2"}
    groups = doc["results"]["Q"]["groups"]
    assert groups == [
        {"degree": 0, "free_rank": 0, "torsion": []},
        {"degree": 1, "free_rank": 0, "torsion": ["q - 1"]},
        {"degree": 2, "free_rank": 0, "torsion": ["q^2 - q + 1"]},
    ]
    # byte-identical on a second run
    code2, out2, _ = run_cli(capsys, "cohomology", "--type", "A2",
                             "--format", "json")
    assert code2 == 0 and out2 == out


def test_cohomology_pretty(capsys):
    code, out, err = run_cli(capsys, "cohomology", "--type", "A2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "Laurent cohomology of type A2 over Q"
    assert lines[1:] == ["  H^0 = 0", "  H^1 = R/(q - 1)",
                         "  H^2 = R/(q^2 - q + 1)"]


def test_cohomology_csv_and_degrees(capsys):
    code, out, _ = run_cli(capsys, "cohomology", "--type", "B2",
                           "--format", "csv", "--degrees", "1:2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "domain,degree,free_rank,torsion"
    assert lines[1] == "Q,1,0,q - 1"
    assert lines[2] == "Q,2,0,q^3 - q^2 + q - 1"
    assert len(lines) == 3


def test_coeff_zp_and_z(capsys):
    code, out, _ = run_cli(capsys, "cohomology", "--type", "A2",
                           "--format", "json", "--coeff", "Zp:3")
    assert code == 0
    doc = json.loads(out)
    assert list(doc["results"]) == ["Z/3"]
    assert doc["results"]["Z/3"]["groups"][2]["torsion"] == ["q^2 + 2*q + 1"]

    code, out, _ = run_cli(capsys, "cohomology", "--type", "A2",
                           "--format", "json", "--coeff", "Z",
                           "--primes", "2,3")
    assert code == 0
    doc = json.loads(out)
    assert sorted(doc["results"]) == ["Q", "Z/2", "Z/3"]


def test_out_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "cohomology", "--type", "A1",
                           "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["results"]["Q"]["groups"][1]["torsion"] == ["q - 1"]


def test_verify_pretty_and_csv(capsys):
    code, out, _ = run_cli(capsys, "verify", "--type", "A2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "verify type A2 over Q"
    assert lines[1] == "  well filtered: yes"
    assert any("degree 1: M-side 2, shifted torsion 2" in ln
               for ln in lines)
    assert lines[-1] == "  shift verification: ok"

    code, out, _ = run_cli(capsys, "verify", "--type", "A2",
                           "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("domain,well_filtered,degree,m_dim")
    assert lines[1] == "Q,True,0,1,1,0,0,16,True,"


def test_milnor_json_a2(capsys):
    code, out, _ = run_cli(capsys, "milnor", "--type", "A2",
                           "--format", "json")
    assert code == 0
    doc = json.loads(out)
    entry = doc["results"]["Q"]
    assert entry["irreducible"] is True
    assert entry["degrees"] == [
        {"degree": 0, "betti": 1, "charpoly": "q - 1",
         "eigenvalues": [{"multiplicity": 1, "order": 1}],
         "non_cyclotomic": None},
        {"degree": 1, "betti": 2, "charpoly": "q^2 - q + 1",
         "eigenvalues": [{"multiplicity": 1, "order": 6}],
         "non_cyclotomic": None},
    ]
    assert entry["shift"]["ok"] is True
    assert set(entry["provenance"]) == {"betti", "charpoly", "eigenvalues",
                                        "verification"}


def test_milnor_dihedral_eigenvalues(capsys):
    code, out, _ = run_cli(capsys, "milnor", "--type", "I2(12)",
                           "--format", "json")
    assert code == 0
    doc = json.loads(out)
    row = doc["results"]["Q"]["degrees"][1]
    assert [e["order"] for e in row["eigenvalues"]] == [1, 3, 4, 6, 12]


def test_milnor_reducible_warning(capsys):
    code, out, _ = run_cli(capsys, "milnor", "--type", "A1xA1")
    assert code == 0
    assert "warning: reducible type" in out
    code, out, _ = run_cli(capsys, "milnor", "--type", "A1xA1",
                           "--format", "json")
    assert json.loads(out)["results"]["Q"]["irreducible"] is False


def write_family(tmp_path, text, name="fam.txt"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_family_pipeline(capsys, tmp_path):
    f = parse_poly("1 - q", QQ)
    path = write_family(tmp_path,
                        dump_family(koszul_family((1, 2), [f, f], QQ)))
    code, out, _ = run_cli(capsys, "family", "--family", path,
                           "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["input"] == {"family": path}
    entry = doc["results"]["Q"]
    assert entry["rank"] == 2
    assert entry["well_filtered"] == {"ok": True}
    assert entry["groups"][1]["torsion"] == ["q - 1"]
    assert entry["shift"]["ok"] is True


def test_family_not_well_filtered_still_exits_zero(capsys, tmp_path):
    # zero connecting scalar: outside the theorem, reported, not an error
    zero = parse_poly("0", QQ)
    f = parse_poly("1 - q", QQ)
    path = write_family(tmp_path,
                        dump_family(koszul_family((1, 2), [zero, f], QQ)))
    code, out, _ = run_cli(capsys, "family", "--family", path)
    assert code == 0
    assert "well filtered: NO: condition (c)" in out
    code, out, _ = run_cli(capsys, "family", "--family", path,
                           "--format", "json")
    assert code == 0
    wf = json.loads(out)["results"]["Q"]["well_filtered"]
    assert wf["ok"] is False and wf["condition"] == "c"
    assert "shift" not in json.loads(out)["results"]["Q"]


def test_family_cocycle_violation(capsys, tmp_path):
    path = write_family(tmp_path,
                        "- ; 1 ; 1\n- ; 2 ; 1\n1 ; 2 ; 1\n2 ; 1 ; 1\n")
    code, out, err = run_cli(capsys, "family", "--family", path)
    assert code == 2 and out == ""
    assert "cocycle relation fails" in err and "lines [1, 2, 3, 4]" in err


def test_family_syntax_and_totality_errors(capsys, tmp_path):
    path = write_family(tmp_path, "- ; 1 ; q^\n")
    code, _, err = run_cli(capsys, "family", "--family", path)
    assert code == 2 and "line 1" in err

    path = write_family(tmp_path, "- ; 1 ; 1\n- ; 2 ; 1\n1 ; 2 ; 1\n")
    code, _, err = run_cli(capsys, "family", "--family", path)
    assert code == 2 and "no entry" in err


def test_family_coefficients_must_parse_in_domain(capsys, tmp_path):
    path = write_family(tmp_path, "- ; 1 ; 1/2\n")
    code, _, _ = run_cli(capsys, "family", "--family", path)
    assert code == 0
    code, _, err = run_cli(capsys, "family", "--family", path,
                           "--coeff", "Zp:2")
    assert code == 2 and "line 1" in err


def test_missing_or_conflicting_sources(capsys, tmp_path):
    code, _, err = run_cli(capsys, "cohomology")
    assert code == 2 and "exactly one of --type or --family" in err
    path = write_family(tmp_path, "- ; 1 ; 1\n")
    code, _, err = run_cli(capsys, "cohomology", "--type", "A1",
                           "--family", path)
    assert code == 2
    code, _, err = run_cli(capsys, "milnor")
    assert code == 2 and "--type" in err
    code, _, err = run_cli(capsys, "family")
    assert code == 2 and "--family" in err


def test_bad_inputs_exit_two(capsys, tmp_path):
    code, _, err = run_cli(capsys, "cohomology", "--type", "Q5")
    assert code == 2 and "error:" in err
    code, _, err = run_cli(capsys, "family", "--family",
                           str(tmp_path / "absent.txt"))
    assert code == 2
    code, _, err = run_cli(capsys, "cohomology", "--type", "A1",
                           "--coeff", "Zp:6")
    assert code == 2
    code, _, err = run_cli(capsys, "verify", "--type", "A2",
                           "--degrees", "3:1")
    assert code == 2 and "empty degree range" in err
    code, _, err = run_cli(capsys, "verify", "--type", "A2",
                           "--window-radius", "3")
    assert code == 2


def test_shift_mismatch_exits_one(capsys, monkeypatch):
    def doctored(C, policy, progress=None):
        bad = DegreeShift(degree=0, m_dim=1, shifted_torsion_dim=2,
                          free_rank_here=0, free_rank_above=0, radius=8,
                          match=False)
        if progress is not None:
            progress(bad)
        return ShiftReport(degrees=(bad,))

    monkeypatch.setattr(cli, "verify_shift_theorem", doctored)
    code, out, _ = run_cli(capsys, "verify", "--type", "A2")
    assert code == 1
    assert "MISMATCH" in out
    code, _, _ = run_cli(capsys, "milnor", "--type", "A2")
    assert code == 1


def test_salvetti_well_filtered_failure_exits_one(capsys, monkeypatch):
    forced = WellFilteredResult(ok=False, path=(1,), condition="b",
                                message="forced for the test")
    monkeypatch.setattr(cli, "is_well_filtered", lambda C: forced)
    code, out, _ = run_cli(capsys, "verify", "--type", "A2")
    assert code == 1
    assert "NO: condition (b) fails at quotient path [1]" in out


def test_milnor_not_well_filtered_exits_one(capsys, monkeypatch):
    def raising(C, policy, progress=None):
        raise NotWellFiltered("forced for the test")

    monkeypatch.setattr(cli, "verify_shift_theorem", raising)
    code, out, _ = run_cli(capsys, "milnor", "--type", "A2")
    assert code == 1 and "forced for the test" in out


def test_not_stabilized_exits_two(capsys, monkeypatch):
    def never_stable(C, policy, progress=None):
        raise NotStabilized("still moving", radius=64)

    monkeypatch.setattr(cli, "verify_shift_theorem", never_stable)
    code, _, err = run_cli(capsys, "verify", "--type", "A2")
    assert code == 2
    assert "did not stabilize" in err and "64" in err


def test_parse_degrees():
    assert _parse_degrees("0:3") == frozenset({0, 1, 2, 3})
    assert _parse_degrees("1,2") == frozenset({1, 2})
    assert _parse_degrees("0,2:4") == frozenset({0, 2, 3, 4})
    with pytest.raises(ValueError):
        _parse_degrees("3:1")
    with pytest.raises(ValueError):
        _parse_degrees(",")
    with pytest.raises(ValueError):
        _parse_degrees("x")


def test_argparse_contract(capsys):
    with pytest.raises(SystemExit):
        main(["cohomology", "--format", "xml"])
    with pytest.raises(SystemExit):
        main(["unknown-command"])
    with pytest.raises(SystemExit):
        main(["milnor", "--family", "x.txt"])
    capsys.readouterr()
