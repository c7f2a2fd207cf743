import json

import pytest

from golden_cases import CASES, FIELD_INDEPENDENT, GOLDEN, INPUTS, field_normalized, render, run_cli
from tstrx.report import Report


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    assert render(name) == (GOLDEN / f"{name}.json").read_text(encoding="utf-8")


@pytest.mark.parametrize("name", FIELD_INDEPENDENT)
def test_field_three_matches_field_two(name):
    assert field_normalized(name, 2) == field_normalized(name, 3)


def test_inds_rows():
    code, out, _ = run_cli(["inds", "A3:RR", "--format", "json"])
    assert code == 0 and json.loads(out)["data"]["count"] == 6


def test_parse_error_exit_code():
    code, out, err = run_cli(["inds", "A3:RQ"])
    assert code == 2 and "invalid flag 'Q'" in err and out == ""


def test_bad_chain_file(tmp_path):
    path = tmp_path / "bad.chain"
    path.write_text("quiver A2:R\nwindow 1 1\nT 1 = 1,0,1\n")
    code, _, err = run_cli(["tstruct", str(path), "validate"])
    assert code == 2 and "not the dimension vector" in err


def test_missing_file():
    code, _, err = run_cli(["distance", "no/such/file.chain", "compute"])
    assert code == 2


def test_precondition_exit_code():
    code, _, err = run_cli(["distance", "A2:R", "construct", "S=", "2"])
    assert code == 2 and "non-trivial" in err


def test_internal_inconsistency_exit_code(monkeypatch):
    import tstrx.cli as cli
    from tstrx.errors import InternalInconsistency

    def boom(ts):
        raise InternalInconsistency("routes disagree")

    monkeypatch.setattr(cli, "compute_distance", boom)
    code, _, err = run_cli(["distance", str(INPUTS / "hrs.chain"), "compute"])
    assert code == 3 and "internal inconsistency" in err


def test_out_and_chain_out(tmp_path):
    out = tmp_path / "r.json"
    chain = tmp_path / "c.chain"
    code, stdout, _ = run_cli(["distance", "A2:R", "construct", "S=0,1", "3", "--format", "json",
                               "--out", str(out), "--chain-out", str(chain)])
    assert code == 0 and stdout == ""
    rep = Report.from_json(out.read_text())
    assert rep.data["distance"]["d"] == 3
    code, stdout, _ = run_cli(["distance", str(chain), "compute", "--format", "json"])
    assert json.loads(stdout)["data"]["d"] == 3


def test_text_format_and_timings():
    code, out, _ = run_cli(["tstruct", str(INPUTS / "hrs.chain"), "truncate", "1:1,1"])
    assert "aisle_part: 1:0,1" in out and "coaisle_part: 1:1,0" in out
    code, out, _ = run_cli(["inds", "A2:R", "--format", "json", "--timings"])
    assert "seconds" in json.loads(out)["timings"]


def test_non_accepted_distance_reports_verdict():
    code, out, _ = run_cli(["distance", str(INPUTS / "nonsplit_width2.chain"), "compute", "--format", "json"])
    assert code == 0 and json.loads(out)["verdict"] == "rejected"


def test_enumerate_from_chain_file():
    code, out, _ = run_cli(["tstruct", str(INPUTS / "hrs.chain"), "enumerate", "1", "1", "--format", "json"])
    assert json.loads(out)["data"]["count"] == 5


def test_usage_errors():
    assert run_cli(["tstruct", "A2:R", "enumerate", "1"])[0] == 2
    assert run_cli(["torsion", "A2:R", "check"])[0] == 2
    with pytest.raises(SystemExit) as exc:
        run_cli(["nope"])
    assert exc.value.code == 2
