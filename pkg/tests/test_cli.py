import json

import pytest
from click.testing import CliRunner

from workbench.cli import cli
from workbench.core_semigroup import build_cyclic_group
from workbench.ordered_groupoid import build_connected_groupoid
from workbench.tables import read_groupoid, write_groupoid


@pytest.fixture
def runner():
    return CliRunner()


def lines(result) -> list[str]:
    return result.stdout.splitlines()


Z2_ARROWS = [{"dom": 0, "ran": 0, "inv": 0}, {"dom": 0, "ran": 0, "inv": 1}]
Z2_COMPOSE = [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]]


def groupoid_document(path, arrows=Z2_ARROWS, compose=Z2_COMPOSE):
    path.write_text(json.dumps({"arrows": arrows, "compose": compose}), encoding="utf-8")
    return path


def test_build(runner, tmp_path):
    path = tmp_path / "z3.json"
    result = runner.invoke(cli, ["build", "Z3", str(path)])
    assert result.exit_code == 0
    assert lines(result) == [f"Saved: {path}", "Rows: 3 | Cols: 3"]
    assert json.loads(path.read_text(encoding="utf-8"))["names"] == ["0", "1", "2"]


class TestVerify:
    def test_pass(self, runner, semigroup_file):
        result = runner.invoke(cli, ["verify", str(semigroup_file("I2"))])
        assert result.exit_code == 0, result.output
        assert "elements: 7" in lines(result)
        assert lines(result)[-1] == "passed: True"

    def test_not_associative(self, runner, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"names": ["0", "1"], "mul": [[1, 0], [0, 0]]}', encoding="utf-8")
        result = runner.invoke(cli, ["verify", str(path)])
        assert result.exit_code == 1
        assert "witness: [0, 0, 1]" in result.stdout
        assert any(line.startswith("[FAIL] associative") for line in lines(result))

    def test_not_inverse(self, runner, tmp_path):
        path = tmp_path / "band.json"
        path.write_text('{"names": ["x", "y"], "mul": [[0, 0], [1, 1]]}', encoding="utf-8")
        result = runner.invoke(cli, ["verify", str(path)])
        assert result.exit_code == 1
        assert any(line.startswith("[FAIL] inverse") for line in lines(result))

    def test_parse_error(self, runner, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"names": ', encoding="utf-8")
        result = runner.invoke(cli, ["verify", str(path)])
        assert result.exit_code == 2
        assert "Parse error" in result.stderr

    def test_missing_file(self, runner, tmp_path):
        result = runner.invoke(cli, ["verify", str(tmp_path / "nope.json")])
        assert result.exit_code == 2
        assert "No existe" in result.stderr

    def test_groupoid(self, runner, tmp_path):
        path = write_groupoid(tmp_path / "g.json", build_connected_groupoid(2, build_cyclic_group(2)))
        result = runner.invoke(cli, ["verify", str(path)])
        assert result.exit_code == 0, result.output
        assert "arrows: 8" in lines(result)

    def test_dump(self, runner, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"names": ["0", "1"], "mul": [[1, 0], [0, 0]]}', encoding="utf-8")
        dump = tmp_path / "report.json"
        result = runner.invoke(cli, ["verify", str(path), "--dump", str(dump)])
        assert result.exit_code == 1
        data = json.loads(dump.read_text(encoding="utf-8"))
        assert data["passed"] is False
        assert data["checks"][0]["name"] == "associative"

    def test_size_cap(self, runner, semigroup_file):
        result = runner.invoke(cli, ["verify", str(semigroup_file("I2")), "--cap-size", "5"])
        assert result.exit_code == 2


class TestHolAndSha:
    def test_hol(self, runner, semigroup_file):
        result = runner.invoke(cli, ["hol", str(semigroup_file("Z3"))])
        assert result.exit_code == 0, result.output
        assert "hol: 9" in lines(result)
        assert "units: 6" in lines(result)
        assert "prem: 3" in lines(result)

    def test_hol_with_end(self, runner, semigroup_file):
        result = runner.invoke(cli, ["hol", str(semigroup_file("chain2")), "--end"])
        assert result.exit_code == 0, result.output
        assert "hol: 3" in lines(result)
        assert any(line.startswith("[PASS] end.same_elements") for line in lines(result))

    def test_json(self, runner, semigroup_file):
        result = runner.invoke(cli, ["hol", str(semigroup_file("Z2")), "--format", "json"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["stats"]["hol"] == 4
        assert data["header"]["subcommand"] == "hol"
        assert data["passed"] is True

    def test_reruns_are_identical(self, runner, semigroup_file):
        path = str(semigroup_file("I2"))
        first = runner.invoke(cli, ["hol", path])
        second = runner.invoke(cli, ["hol", path])
        assert first.stdout == second.stdout

    def test_dump(self, runner, semigroup_file, tmp_path):
        dump = tmp_path / "hol.json"
        result = runner.invoke(cli, ["hol", str(semigroup_file("Z2")), "--dump", str(dump)])
        assert result.exit_code == 0
        records = json.loads(dump.read_text(encoding="utf-8"))
        assert records["kind"] == "hol"
        assert len(records["records"]) == 4

    def test_budget(self, runner, semigroup_file):
        result = runner.invoke(cli, ["hol", str(semigroup_file("S3")), "--budget", "5"])
        assert result.exit_code == 3
        assert "Budget exceeded" in result.stderr

    def test_sha(self, runner, semigroup_file):
        result = runner.invoke(cli, ["sha", str(semigroup_file("Z3"))])
        assert result.exit_code == 0, result.output
        assert "sha: 9" in lines(result)


class TestGroupoidCommands:
    def test_flows(self, runner, tmp_path):
        path = write_groupoid(tmp_path / "g.json", build_connected_groupoid(2, build_cyclic_group(2)))
        result = runner.invoke(cli, ["flows", str(path)])
        assert result.exit_code == 0, result.output
        assert "flows: 16" in lines(result)

    def test_flows_through_esn(self, runner, semigroup_file):
        result = runner.invoke(cli, ["flows", str(semigroup_file("Z2"))])
        assert result.exit_code == 0, result.output
        assert "flows: 2" in lines(result)

    def test_flows_validate(self, runner, tmp_path):
        path = groupoid_document(tmp_path / "z2.json")
        result = runner.invoke(cli, ["flows", str(path), "--validate"])
        assert result.exit_code == 0, result.output
        assert "flows: 2" in lines(result)
        assert "groupoid.arrows: 2" in lines(result)
        assert any(line.startswith("[PASS] groupoid.OG3") for line in lines(result))

    def test_flows_missing_composite(self, runner, tmp_path):
        path = groupoid_document(tmp_path / "z2.json", compose=Z2_COMPOSE[:3])
        result = runner.invoke(cli, ["flows", str(path)])
        assert result.exit_code == 2
        assert "Error: no composite for composable pair [1, 1]" in result.stderr
        checked = runner.invoke(cli, ["verify", str(path)])
        assert checked.exit_code == 1
        assert any(line.startswith("[FAIL] well_formed") for line in lines(checked))

    def test_flows_refuses_invalid_groupoid(self, runner, tmp_path):
        arrows = [Z2_ARROWS[0], {"dom": 0, "ran": 0, "inv": 0}]
        path = groupoid_document(tmp_path / "z2.json", arrows=arrows)
        result = runner.invoke(cli, ["flows", str(path)])
        assert result.exit_code == 2
        assert "inverses fails" in result.stderr
        validated = runner.invoke(cli, ["flows", str(path), "--validate"])
        assert validated.exit_code == 1
        assert "[FAIL] inverses | witness: 1" in lines(validated)

    def test_flows_dump(self, runner, semigroup_file, tmp_path):
        dump = tmp_path / "flows.json"
        result = runner.invoke(cli, ["flows", str(semigroup_file("Z2")), "--dump", str(dump)])
        assert result.exit_code == 0, result.output
        records = json.loads(dump.read_text(encoding="utf-8"))
        assert records["kind"] == "flows"
        assert len(records["records"]) == 2

    def test_esn(self, runner, semigroup_file, tmp_path):
        dump = tmp_path / "esn.json"
        result = runner.invoke(cli, ["esn", str(semigroup_file("I2")), "--dump", str(dump)])
        assert result.exit_code == 0, result.output
        assert any(line.startswith("[PASS] round_trip") for line in lines(result))
        assert read_groupoid(dump).size == 7


class TestPoly:
    def test_expression(self, runner):
        result = runner.invoke(cli, ["poly", "(ab)^-1 a * b^-1 1", "a a^-1"])
        assert result.exit_code == 0
        assert "(ab)^-1 a * b^-1 1: 0" in lines(result)
        assert "a a^-1: 1" in lines(result)

    def test_bad_letter(self, runner):
        result = runner.invoke(cli, ["poly", "c"])
        assert result.exit_code == 2
        assert "column 1" in result.stderr or "position 1" in result.stderr

    def test_bicyclic(self, runner):
        result = runner.invoke(cli, ["poly", "--check", "bicyclic", "--alphabet", "1"])
        assert result.exit_code == 0, result.output
        assert "maxlen: 6" in lines(result)

    def test_arithmetic(self, runner):
        result = runner.invoke(cli, ["poly", "--check", "arithmetic", "--maxlen", "2"])
        assert result.exit_code == 0, result.output
        assert "arithmetic.elements: 50" in lines(result)

    def test_endo_sigma(self, runner):
        result = runner.invoke(cli, ["poly", "--check", "endo", "--sigma", "ab,b", "--maxlen", "2"])
        assert result.exit_code == 0, result.output
        assert "endo.meet_preserving: False" in lines(result)

    def test_dump(self, runner, tmp_path):
        dump = tmp_path / "poly.json"
        result = runner.invoke(cli, ["poly", "--check", "bicyclic", "--alphabet", "1", "--dump", str(dump)])
        assert result.exit_code == 0, result.output
        data = json.loads(dump.read_text(encoding="utf-8"))
        assert data["header"]["subcommand"] == "poly"
        assert data["passed"] is True
        assert all(c["name"].startswith("bicyclic.") for c in data["checks"])

    def test_no_jobs_option(self, runner):
        result = runner.invoke(cli, ["poly", "--check", "bicyclic", "--alphabet", "1", "--jobs", "2"])
        assert result.exit_code == 2
        assert "--jobs" in result.stderr

    def test_endo_sigma_wrong_length(self, runner):
        result = runner.invoke(cli, ["poly", "--check", "endo", "--sigma", "a"])
        assert result.exit_code == 2


def test_missing_config(runner, semigroup_file):
    result = runner.invoke(cli, ["--config", "does-not-exist.toml", "verify", str(semigroup_file("Z2"))])
    assert result.exit_code == 2


def test_config_file(runner, semigroup_file, tmp_path):
    config = tmp_path / "workbench.toml"
    config.write_text("[workbench]\nnode_budget = 5\n", encoding="utf-8")
    result = runner.invoke(cli, ["--config", str(config), "verify", str(semigroup_file("Z2"))])
    assert result.exit_code == 0
