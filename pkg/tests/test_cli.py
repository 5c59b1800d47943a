"""End-to-end tests for the command-line interface.

Everything goes through click's CliRunner: exact stdout fixtures for the
happy paths, exit code 1 for domain errors, exit code 2 when the
conformance suite reports a failure.
"""

import json

import pytest
from click.testing import CliRunner

from foresthopf import verify
from foresthopf.cli import main
from foresthopf.verify import CheckFailure, CheckReport


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args, **kwargs):
    return runner.invoke(main, list(args), **kwargs)


# ---------------------------------------------------------------------------
# coproduct
# ---------------------------------------------------------------------------

class TestCoprod:
    def test_single_operator_vertex(self, runner):
        result = invoke(runner, "coprod", "a")
        assert result.exit_code == 0
        assert result.output == "a⊗1 + 1⊗a\n"

    def test_empty_forest(self, runner):
        result = invoke(runner, "coprod", "1", "--lambda", "0")
        assert result.exit_code == 0
        assert result.output == "1⊗1\n"

    def test_x_leaf_is_symbolic_by_default(self, runner):
        result = invoke(runner, "coprod", "x")
        assert result.output == "x⊗1 + 1⊗x + L x⊗x\n"

    def test_ascii_separator(self, runner):
        result = invoke(runner, "coprod", "x", "--ascii")
        assert result.output == "x(x)1 + 1(x)x + L x(x)x\n"

    def test_specialize_lambda(self, runner):
        at_two = invoke(runner, "coprod", "x", "--lambda", "2")
        assert at_two.output == "x⊗1 + 1⊗x + 2 x⊗x\n"
        at_zero = invoke(runner, "coprod", "x", "--lambda", "0")
        assert at_zero.output == "x⊗1 + 1⊗x\n"

    def test_json_output(self, runner):
        result = invoke(runner, "coprod", "x", "--output", "json")
        payload = json.loads(result.output)
        from foresthopf import DecorationRegistry, parse_forest
        from foresthopf.algebra import coproduct

        reg = DecorationRegistry(["x", "y"], ["a", "b", "c"])
        expected = coproduct(parse_forest("x", reg)).to_json_obj()
        assert payload == expected

    def test_custom_registry(self, runner):
        result = invoke(runner, "coprod", "q", "--x", "q", "--omega", "w")
        assert result.exit_code == 0
        assert result.output == "q⊗1 + 1⊗q + L q⊗q\n"

    def test_parse_error_exits_1(self, runner):
        result = invoke(runner, "coprod", "a[")
        assert result.exit_code == 1
        assert "Error" in result.output

    def test_unknown_decoration_exits_1(self, runner):
        result = invoke(runner, "coprod", "z")
        assert result.exit_code == 1
        assert "Error" in result.output

    def test_bad_lambda_value(self, runner):
        result = invoke(runner, "coprod", "a", "--lambda", "two")
        assert result.exit_code == 1
        assert 'must be "sym" or an integer' in result.output


# ---------------------------------------------------------------------------
# antipode / star / star-lambda / phi
# ---------------------------------------------------------------------------

class TestLinearOps:
    def test_antipode_fixture(self, runner):
        result = invoke(runner, "antipode", "x a[y]")
        assert result.exit_code == 0
        assert result.output == "-a y x + a[y] x - y a x\n"

    def test_antipode_rejects_nonzero_lambda(self, runner):
        result = invoke(runner, "antipode", "a", "--lambda", "2")
        assert result.exit_code == 1
        assert "antipode requires λ=0 (got --lambda 2)" in result.output

    def test_antipode_accepts_zero_and_sym(self, runner):
        for lam in ("0", "sym"):
            result = invoke(runner, "antipode", "a", "--lambda", lam)
            assert result.exit_code == 0
            assert result.output == "-a\n"

    def test_star_fixture(self, runner):
        result = invoke(runner, "star", "a", "b[c]")
        assert result.exit_code == 0
        assert (
            result.output
            == "a b[c] + a[b[c]] + b[a c] + b[a[c]] + b[c a] + b[c[a]] + b[c] a\n"
        )

    def test_star_rejects_nonzero_lambda(self, runner):
        result = invoke(runner, "star", "a", "b", "--lambda", "3")
        assert result.exit_code == 1
        assert "star requires λ=0" in result.output

    def test_star_lambda_fixture(self, runner):
        result = invoke(
            runner, "star-lambda", "x", "a[x]", "--x", "x", "--omega", "a"
        )
        assert result.exit_code == 0
        assert result.output == "L a[x] + 2 a[x x] + a[x] x + x a[x]\n"

    def test_star_lambda_at_zero_matches_star(self, runner):
        deformed = invoke(
            runner, "star-lambda", "x", "a[x]", "--lambda", "0",
            "--x", "x", "--omega", "a",
        )
        plain = invoke(runner, "star", "x", "a[x]", "--x", "x", "--omega", "a")
        assert deformed.exit_code == 0
        assert deformed.output == plain.output

    def test_phi_specialized(self, runner):
        result = invoke(runner, "phi", "a[x x]", "--lambda", "2")
        assert result.output == "4 a[x x]\n"

    def test_phi_symbolic(self, runner):
        result = invoke(runner, "phi", "a[x x]")
        assert result.output == "L^2 a[x x]\n"


# ---------------------------------------------------------------------------
# encode / decode
# ---------------------------------------------------------------------------

class TestCodec:
    def test_encode_fixture(self, runner):
        result = invoke(runner, "encode", "a[x]")
        assert result.exit_code == 0
        assert result.output == "a = h\nx 0 =\n"

    def test_encode_json(self, runner):
        result = invoke(runner, "encode", "a x", "--output", "json")
        payload = json.loads(result.output)
        assert payload == {"n": 2, "rows": [["a", "=", "r"], ["x", "0", "="]]}

    def test_decode_from_stdin(self, runner):
        result = invoke(runner, "decode", input="a = h\nx 0 =\n")
        assert result.exit_code == 0
        assert result.output == "a[x]\n"

    def test_decode_from_file(self, runner, tmp_path):
        path = tmp_path / "m.txt"
        path.write_text("a = r\nx 0 =\n", encoding="utf-8")
        result = invoke(runner, "decode", str(path))
        assert result.exit_code == 0
        assert result.output == "a x\n"

    def test_decode_json_output(self, runner):
        result = invoke(
            runner, "decode", "--output", "json", input="a = h\nx 0 =\n"
        )
        assert json.loads(result.output) == {"forest": "a[x]"}

    def test_encode_decode_round_trip(self, runner):
        encoded = invoke(runner, "encode", "a[b[x y] c] x")
        decoded = invoke(runner, "decode", input=encoded.output)
        assert decoded.output == "a[b[x y] c] x\n"

    def test_decode_rejects_non_representable(self, runner):
        # leaf-only decoration with a child: representability condition (e)
        result = invoke(runner, "decode", input="x = h\nb 0 =\n")
        assert result.exit_code == 1
        assert "Error" in result.output


# ---------------------------------------------------------------------------
# enumerate / stats
# ---------------------------------------------------------------------------

class TestEnumerateStats:
    def test_enumerate_weight_two(self, runner):
        result = invoke(runner, "enumerate", "2", "--x", "x", "--omega", "a")
        assert result.exit_code == 0
        assert result.output.splitlines() == [
            "a a", "a x", "a[a]", "a[x]", "x a", "x x",
        ]

    def test_enumerate_json(self, runner):
        result = invoke(
            runner, "enumerate", "1", "--x", "x", "--omega", "a",
            "--output", "json",
        )
        assert json.loads(result.output) == ["a", "x"]

    def test_stats_text(self, runner):
        result = invoke(runner, "stats", "a[x b]")
        assert result.output.splitlines() == [
            "weight: 3",
            "breadth: 1",
            "depth: 2",
            "x_leaves: 1",
            "1 a -",
            "2 x 1",
            "3 b 1",
        ]

    def test_stats_json(self, runner):
        result = invoke(runner, "stats", "a[x b]", "--output", "json")
        payload = json.loads(result.output)
        assert payload["weight"] == 3
        assert payload["depth"] == 2
        assert payload["vertices"][1] == {
            "index": 2, "decoration": "x", "parent": 1,
        }


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

class TestVerify:
    def test_all_green_exit_0(self, runner):
        result = invoke(
            runner, "verify", "--max-weight", "2", "--x", "x", "--omega", "a"
        )
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert len(lines) == 12
        assert all(line.startswith("ok ") for line in lines)

    def test_json_reports(self, runner):
        result = invoke(
            runner, "verify", "--max-weight", "1", "--x", "x", "--omega", "a",
            "--output", "json",
        )
        payload = json.loads(result.output)
        assert len(payload) == 12
        assert all(obj["failures"] == [] for obj in payload)

    def test_check_subset_order(self, runner):
        result = invoke(
            runner, "verify", "--max-weight", "1", "--checks", "counit,phi",
            "--x", "x", "--omega", "a",
        )
        names = [line.split()[1] for line in result.output.splitlines()]
        assert names == ["counit", "phi"]

    def test_bad_max_weight_exit_1(self, runner):
        result = invoke(runner, "verify", "--max-weight", "9")
        assert result.exit_code == 1
        assert "max_weight" in result.output

    def test_hopf_checks_need_zero_exit_1(self, runner):
        result = invoke(
            runner, "verify", "--lambda", "1", "--checks", "antipode",
            "--max-weight", "1",
        )
        assert result.exit_code == 1
        assert "require λ=0" in result.output

    def test_failing_check_exit_2(self, runner, monkeypatch):
        def broken_counit(cfg, backend):
            failure = CheckFailure(input="a", lhs="0", rhs="a", weight=1)
            return CheckReport("counit", 1, [failure])

        # the CLI resolves check names through the shared registry dict
        monkeypatch.setitem(verify.ALL_CHECKS, "counit", broken_counit)
        result = invoke(
            runner, "verify", "--checks", "counit", "--max-weight", "1",
            "--x", "x", "--omega", "a",
        )
        assert result.exit_code == 2
        assert "FAIL counit" in result.output
        assert "witness: a" in result.output


def test_version_flag(runner):
    result = invoke(runner, "--version")
    assert result.exit_code == 0
    assert result.output == "foresthopf, version 0.1.0\n"
