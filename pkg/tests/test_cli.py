import json
from fractions import Fraction

import pytest

from simpson_nd.cli import cli, run
from simpson_nd.models.rule import CubatureRule, cr4
from simpson_nd.models.scalar import scalar_from_dict


def test_verify_cr3_in_three_dimensions(runner):
    result = runner.invoke(cli, ["verify", "--rule", "CR3", "--dim", "3"])
    assert result.exit_code == 0
    assert "CR3(3): exact to degree 3" in result.output
    assert "first failure x1^4" in result.output


def test_verify_reports_the_failing_monomial_as_json(runner):
    result = runner.invoke(cli, ["--format", "json", "verify", "--rule", "CR4", "--max-degree", "5"])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["degree"] == 3
    assert report["failing"] == [4, 0]
    assert scalar_from_dict(report["residual"]) == Fraction(1, 120)


def test_verify_a_rule_file(runner, tmp_path):
    path = tmp_path / "cr4.json"
    path.write_text(json.dumps(cr4().to_dict()), encoding="utf-8")
    result = runner.invoke(cli, ["verify", "--rule-file", str(path)])
    assert result.exit_code == 0
    assert "exact to degree 3" in result.output


def test_moments_of_the_trapezoid(runner):
    result = runner.invoke(cli, ["moments", "--region", "trapezoid"])
    assert result.exit_code == 0
    assert "x*y = 17/24" in result.output
    assert "y^2 = 5/4" in result.output


def test_moments_of_the_named_trapezoid(runner):
    result = runner.invoke(cli, ["moments", "--region", "trapezoid-paper", "--degree", "2"])
    assert result.exit_code == 0
    assert "x*y = 17/24" in result.output


def test_moments_as_csv(runner):
    result = runner.invoke(cli, ["--format", "csv", "moments", "--region", "simplex:2", "--degree", "1"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "monomial,value,decimal"
    assert lines[1].startswith("1,1/2,")


def test_derive_lambda_for_the_triangle(runner):
    result = runner.invoke(cli, ["derive", "--region", "simplex:2"])
    assert result.exit_code == 0
    assert "unique: lambda = 3/4" in result.output


def test_derive_on_the_hexagon_is_infeasible_but_succeeds(runner):
    result = runner.invoke(cli, ["derive", "--region", "hexagon", "--targets", "x^2, y^2"])
    assert result.exit_code == 0
    assert "infeasible" in result.output


def test_derive_on_the_named_hexagon(runner):
    result = runner.invoke(cli, ["derive", "--region", "hexagon-paper", "--targets", "deg2"])
    assert result.exit_code == 0
    assert "infeasible" in result.output


@pytest.mark.parametrize("targets", ["deg2,-xy", "deg2, -x*y"])
def test_derive_trapezoid_targets_drop_xy(runner, targets):
    nodes = "5/9,7/9; 0,0; 1,0; 0,1; 1,2"
    result = runner.invoke(cli, ["derive", "--region", "trapezoid-paper", "--targets", targets, "--nodes", nodes])
    assert result.exit_code == 0
    assert "unique: weights = 81/80, 23/240, 17/120, 29/240, 31/240" in result.output


def test_derive_trapezoid_weights_without_xy(runner):
    nodes = "5/9,7/9; 0,0; 1,0; 0,1; 1,2"
    result = runner.invoke(
        cli, ["--format", "json", "derive", "--region", "trapezoid", "--targets", "deg2,-x*y", "--nodes", nodes]
    )
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["kind"] == "unique"
    assert "x*y" not in payload["targets"]
    assert scalar_from_dict(payload["values"][0]) == Fraction(81, 80)


def test_family_selector_roots(runner):
    result = runner.invoke(cli, ["family", "triangle"])
    assert result.exit_code == 0
    assert "triangle selector roots: 0, 1/2" in result.output


def test_family_square_member(runner):
    result = runner.invoke(cli, ["family", "square", "--param", "1/2"])
    assert result.exit_code == 0
    assert "lambda = 1/3" in result.output
    assert "all residuals vanish" in result.output


def test_family_simplex3_needs_parameters(runner):
    result = runner.invoke(cli, ["family", "simplex3"])
    assert result.exit_code == 2


def test_family_simplex3_search(runner):
    result = runner.invoke(cli, ["family", "simplex3", "--search"])
    assert result.exit_code == 0
    assert "lambda = 4/5" in result.output


def test_compound_csv_header(runner):
    args = ["--format", "csv", "compound", "--rule", "CR4", "--expr", "exp(x+y)", "--levels", "1..3"]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "level,cells,estimate,error,ratio"
    assert [line.split(",")[0] for line in lines[1:]] == ["1", "2", "3"]


def test_compound_text_reports_the_order(runner):
    args = ["compound", "--rule", "CR4", "--expr", "exp(x+y)", "--levels", "1..4", "--reference", "2.9524924420125593"]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0
    assert "fitted order" in result.output


@pytest.mark.parametrize("name", ["CR1", "CR3"])
def test_compound_on_the_unit_interval(runner, name):
    args = ["--format", "json", "compound", "--rule", name, "--dim", "1", "--expr", "exp(x)", "--levels", "1..5"]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert [row["cells"] for row in payload["rows"]] == [2, 4, 8, 16, 32]
    assert payload["order"] == pytest.approx(4.0, abs=0.1)


def test_catalog_as_json(runner):
    result = runner.invoke(cli, ["--format", "json", "catalog"])
    assert result.exit_code == 0
    entries = json.loads(result.output)
    assert [e["label"] for e in entries][:3] == ["CR1(2)", "CR2(2)", "CR3(2)"]


def test_rule_json_loads_back(runner):
    result = runner.invoke(cli, ["--format", "json", "rule", "--name", "CR5"])
    assert result.exit_code == 0
    rule = CubatureRule.from_dict(json.loads(result.output))
    assert rule.label == "CR5"
    assert len(rule) == 5


def test_apply_polynomial_is_exact(runner):
    result = runner.invoke(cli, ["apply", "--rule", "CR4", "--expr", "x^4"])
    assert result.exit_code == 0
    assert "CR4(x^4) = 5/24" in result.output
    assert "(integral 1/5)" in result.output


def test_apply_other_expressions_in_floating_point(runner):
    result = runner.invoke(cli, ["apply", "--rule", "CR4", "--expr", "exp(x)"])
    assert result.exit_code == 0
    assert "≈" in result.output


def test_unknown_rule_is_a_domain_error(runner):
    result = runner.invoke(cli, ["verify", "--rule", "CR9"])
    assert result.exit_code == 1
    assert "error:" in result.output


def test_bad_expression_is_a_domain_error(runner):
    result = runner.invoke(cli, ["apply", "--rule", "CR4", "--expr", "x^^2"])
    assert result.exit_code == 1
    assert "offset 2" in result.output


def test_unknown_format_is_a_usage_error(runner):
    result = runner.invoke(cli, ["--format", "xml", "catalog"])
    assert result.exit_code == 2


def test_format_from_the_environment(runner, monkeypatch):
    monkeypatch.setenv("SIMPSON_ND_FORMAT", "json")
    result = runner.invoke(cli, ["rule", "--name", "CR4"])
    assert result.exit_code == 0
    assert json.loads(result.output)["label"] == "CR4"


def test_verify_as_csv(runner):
    result = runner.invoke(cli, ["--format", "csv", "verify", "--rule", "CR4"])
    assert result.exit_code == 0
    assert result.output.splitlines()[0] == "label,degree,failing,residual,tested"


def test_run_returns_exit_statuses(monkeypatch, capsys):
    monkeypatch.delenv("SIMPSON_ND_FORMAT", raising=False)
    assert run(["rule", "--name", "CR4"]) == 0
    assert run(["rule", "--name", "CR9"]) == 1
    assert run(["--format", "xml", "catalog"]) == 2
    assert run(["verify"]) == 2
    captured = capsys.readouterr()
    assert "error:" in captured.err
