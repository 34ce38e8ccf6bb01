import json

from click.testing import CliRunner

from nilgelfand.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_show_row():
    res = run("show", "--table", "jaw", "--row", "1", "--rank", "1", "--format", "json")
    assert res.exit_code == 0, res.output
    info = json.loads(res.output)
    assert info["params"] == {"n": 3} and info["dim_v"] == 3 and info["dimension_problems"] == []


def test_show_algebra_row():
    res = run("show", "--table", "indIpms", "--row", "1")
    assert res.exit_code == 0
    assert "algebra" in res.output


def test_pfaffian_heisenberg():
    res = run("pfaffian", "--heisenberg", "3", "--t", "2", "--format", "json")
    assert res.exit_code == 0
    info = json.loads(res.output)
    assert info["pfaffian"] == "8" and info["pf_squared_is_det"] is True


def test_pfaffian_split_row():
    res = run("pfaffian", "--table", "ipms", "--row", "1", "--format", "json")
    assert res.exit_code == 0, res.output
    assert json.loads(res.output)["independent_of_t2"] is True


def test_pfaffian_usage_errors():
    assert run("pfaffian").exit_code == 2
    assert run("pfaffian", "--heisenberg", "2", "--t", "1", "--t", "2").exit_code == 2


def test_chain_heisenberg_and_rows():
    res = run("chain", "--heisenberg", "3", "--format", "json")
    assert res.exit_code == 0 and json.loads(res.output)["aligned"] is True
    assert run("chain", "--row", "1", "--t", "1/2", "--t", "3").exit_code == 0
    res = run("chain", "--row", "5a")
    assert res.exit_code == 1 and "FAIL" in res.output


def test_fock_command():
    res = run("fock", "--n", "1", "--t", "2", "--format", "json")
    assert res.exit_code == 0
    assert json.loads(res.output)["passed"] is True


def test_verify_subset(tmp_path):
    out = tmp_path / "report.json"
    res = run("verify", "--table", "kac", "--row", "1", "--row", "2", "--check", "mf", "--workers", "1",
              "--output", str(out))
    assert res.exit_code == 0, res.output
    assert "2/2 jobs passed" in res.output
    doc = json.loads(out.read_text())
    assert [r["job_id"] for r in doc["reports"]] == ["mf:kac:1", "mf:kac:2"]


def test_verify_failure_exit_code():
    res = run("verify", "--table", "jaw", "--row", "5a", "--check", "chain", "--workers", "1", "--format", "json")
    assert res.exit_code == 1
    assert json.loads(res.output)["passed"] is False
