import json

import pytest

from app.exceptions import NonConvergenceError, ParseError
from app.main import EXCEPTION_HANDLERS, create_app, handle_engine_error, run


class TestEval:
    def test_exact_value(self, capsys):
        assert run(["eval", "--op", "D", "--alpha", "0.5", "--expr", "t^0.5", "--t", "1"]) == 0
        assert capsys.readouterr().out.strip() == "0.88622692545276"

    def test_several_points(self, capsys):
        assert run(["eval", "--op", "J", "--alpha", "1", "--expr", "1", "--t", "1", "2"]) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines == ["1 1", "2 2"]

    def test_symbolic(self, capsys):
        assert run(["eval", "--op", "J", "--alpha", "0.5", "--expr", "t", "--symbolic"]) == 0
        out = capsys.readouterr().out.strip()
        assert out.startswith("0.752252778")
        assert out.endswith("*t^1.5")

    def test_numeric_grid_csv(self, capsys):
        argv = ["eval", "--op", "J", "--alpha", "1", "--expr", "1", "--grid", "1", "4", "--format", "csv"]
        assert run(argv) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines[0] == "t,value"
        assert len(lines) == 6
        t, value = (float(x) for x in lines[-1].split(","))
        assert (t, value) == (1.0, pytest.approx(1.0, rel=1e-14))

    def test_json(self, capsys):
        argv = ["eval", "--op", "Dc", "--alpha", "0.5", "--expr", "1", "--t", "2", "--format", "json"]
        assert run(argv) == 0
        records = json.loads(capsys.readouterr().out)
        assert records == [{"t": 2.0, "value": 0.0}]

    def test_csv_input(self, capsys, tmp_path):
        path = tmp_path / "ones.csv"
        path.write_text("t,value\n0,1\n0.25,1\n0.5,1\n0.75,1\n1,1\n")
        assert run(["eval", "--op", "J", "--alpha", "1", "--csv", str(path)]) == 0
        last = capsys.readouterr().out.strip().split("\n")[-1]
        assert [float(x) for x in last.split()] == [1.0, pytest.approx(1.0, rel=1e-14)]

    def test_liouville_expression(self, capsys):
        assert run(["eval", "--op", "J", "--alpha", "0.5", "--expr", "exp(2*t)"]) == 0
        out = capsys.readouterr().out.strip()
        assert out.startswith("0.70710678118654")
        assert out.endswith("*exp(2*t)")

    def test_weyl_flag(self, capsys):
        argv = ["eval", "--op", "J", "--alpha", "0.5", "--expr", "abs(t)^-2", "--weyl", "--t", "1"]
        assert run(argv) == 0
        assert float(capsys.readouterr().out.split()[-1]) == pytest.approx(0.886226925452758)


class TestOtherCommands:
    def test_word(self, capsys):
        assert run(["word", "--word", "D:1.5,D:0.5", "--expr", "t^0.5", "--t", "1"]) == 0
        assert capsys.readouterr().out.split() == ["1", "-0.25"]

    def test_word_steps(self, capsys):
        assert run(["word", "--word", "D:0.5,D:0.5", "--expr", "t^-0.5", "--steps"]) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines[0] == "input 1*t^-0.5"
        assert lines[-1].endswith(" 0")

    def test_classify(self, capsys):
        assert run(["classify", "--expr", "abs(t)^-2", "--alpha", "0.5"]) == 0
        assert capsys.readouterr().out.strip() == "Liouville"

    def test_laplace_image(self, capsys):
        assert run(["laplace", "--expr", "1"]) == 0
        assert capsys.readouterr().out.strip() == "1*s^-1"

    def test_laplace_rule_cross_check(self, capsys):
        argv = ["laplace", "--expr", "t", "--op", "J", "--alpha", "0.5", "--s", "1", "2", "--format", "json"]
        assert run(argv) == 0
        rows = json.loads(capsys.readouterr().out)
        assert [row["s"] for row in rows] == [1.0, 2.0]
        assert all(row["abs_diff"] <= 1e-8 for row in rows)

    def test_table_plain(self, capsys):
        assert run(["table"]) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert len(lines) == 6
        assert lines[0].startswith("D^0.5 t^0.5 at t=1: 0.886226925452")
        assert all(line.endswith(" ok") for line in lines)

    def test_table_csv(self, capsys):
        assert run(["table", "--format", "csv"]) == 0
        assert capsys.readouterr().out.startswith("example,result,expected,error,ok")

    def test_verify_suite(self, capsys):
        assert run(["verify", "--suite", "null-space", "--cases", "5", "--seed", "1"]) == 0
        assert "null-space" in capsys.readouterr().out


class TestErrors:
    def test_parse_error_exit_code(self, capsys):
        assert run(["eval", "--op", "J", "--alpha", "0.5", "--expr", "t^", "--t", "1"]) == 2
        assert "error: expected number" in capsys.readouterr().err

    def test_domain_error_exit_code(self, capsys):
        assert run(["eval", "--op", "J", "--alpha", "0.5", "--expr", "t^-1.5", "--t", "1"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_invalid_order(self, capsys):
        assert run(["eval", "--op", "J", "--alpha", "-1", "--expr", "t", "--t", "1"]) == 2
        assert "alpha" in capsys.readouterr().err

    def test_missing_arguments(self):
        assert run(["eval"]) == 2

    def test_numeric_failures_exit_one(self):
        assert handle_engine_error(NonConvergenceError("no")) == 1
        assert handle_engine_error(ParseError("bad")) == 2

    def test_handler_order(self):
        types = [exc_type for exc_type, _ in EXCEPTION_HANDLERS]
        assert types[-1] is Exception
        assert types.index(ValueError) > 0

    def test_commands_registered(self):
        parser = create_app()
        for command in ("eval", "word", "laplace", "classify", "verify", "table"):
            args = parser.parse_args(
                {
                    "eval": ["eval", "--op", "J", "--alpha", "1"],
                    "word": ["word", "--word", "J:1", "--expr", "t"],
                    "laplace": ["laplace", "--expr", "t"],
                    "classify": ["classify", "--expr", "t"],
                    "verify": ["verify"],
                    "table": ["table"],
                }[command]
            )
            assert args.command == command
            assert callable(args.handler)
