import json

import pytest

from psl2colmez import cli
from psl2colmez.utils import verification


def test_no_arguments_prints_usage(capsys):
    assert cli.run([]) == 2
    assert "usage: psl2colmez" in capsys.readouterr().err


def test_census(capsys):
    assert cli.run(["census", "--q", "7"]) == 0
    assert "q=7: 1,1,1,3,1,1,1" in capsys.readouterr().out


def test_census_reference_range(capsys):
    assert cli.run(["census", "--max-q", "9"]) == 0
    out = capsys.readouterr().out
    assert "q=7: 1,1,1,3,1,1,1" in out
    assert "q=9: 1,1,2,3,4,3,2" in out


def test_census_csv_to_folder(tmp_path, capsys):
    assert cli.run(["census", "--q", "7", "--format", "csv", "--out-folder", str(tmp_path)]) == 0
    assert capsys.readouterr().out.startswith("q,eps=1")
    assert (tmp_path / "census.csv").exists()


def test_bad_q_is_a_usage_error(capsys):
    assert cli.run(["census", "--q", "8"]) == 2
    assert "usage" in capsys.readouterr().err


def test_height_json(capsys):
    assert cli.run(["height", "--q", "7", "--epsilon", "2", "--disc=-7", "--format", "json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["coefficients"] == {"ZetaQ": "-1/4", "ChiK": "-1/28", "ChiEF": "-3/112"}
    assert document["schema_version"] == "1.0"


def test_height_pretty(capsys):
    assert cli.run(["height", "--q", "7", "--epsilon", "2", "--disc=-4"]) == 0
    out = capsys.readouterr().out
    assert "ChiK: -1/28" in out
    assert "Z(0,chi_E/F)" in out


def test_height_rejects_non_fundamental_discriminant():
    assert cli.run(["height", "--q", "7", "--epsilon", "2", "--disc=-12"]) == 2


def test_aphi_with_decomposition(capsys):
    assert cli.run(["aphi", "--q", "5", "--cm-type", "110100", "--decompose"]) == 0
    out = capsys.readouterr().out
    assert "signature 3" in out
    assert "chi1(x)sgn" in out
    assert "1/20" in out


def test_aphi_json(capsys):
    assert cli.run(["aphi", "--q", "5", "--cm-type", "011000", "--format", "json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["cm_type"] == "011000"
    assert all(row["value"] == row["closed_form"] for row in document["rows"])


def test_aphi_wrong_length():
    assert cli.run(["aphi", "--q", "7", "--cm-type", "110100"]) == 2


def test_table(capsys):
    assert cli.run(["table", "--q", "5"]) == 0
    assert "chi0" in capsys.readouterr().out
    assert cli.run(["table", "--q", "3"]) == 2


def test_stabilizer(capsys):
    assert cli.run(["stabilizer", "--q", "7", "--cm-type", "11100000"]) == 0
    assert "stabilizer of order 3" in capsys.readouterr().out


def test_verify_pass(capsys):
    assert cli.run(["verify", "--q", "7", "--suite", "census"]) == 0
    assert "PASS census q=7: 1,1,1,3,1,1,1" in capsys.readouterr().out


def test_verify_failure_exit_code(monkeypatch, capsys):
    def wrong(q):
        raise AssertionError("wrong count")

    monkeypatch.setitem(verification.SUITES, "census", wrong)
    assert cli.run(["verify", "--q", "7", "--suite", "census"]) == 1
    assert "FAIL census q=7" in capsys.readouterr().out


def test_unknown_suite_is_a_usage_error():
    assert cli.run(["verify", "--suite", "nope"]) == 2


def test_unknown_command():
    assert cli.run(["frobnicate"]) == 2


def test_help_exits_cleanly():
    assert cli.run(["census", "--help"]) == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["table", "--q", "7", "--format", "xml"],
        ["census", "--q", "7", "--format", "xml"],
        ["aphi", "--q", "5", "--cm-type", "110100", "--format", "xml"],
        ["height", "--q", "7", "--epsilon", "2", "--disc=-4", "--format", "csv"],
    ],
)
def test_unknown_format_is_a_usage_error(argv, capsys):
    assert cli.run(argv) == 2
    assert "usage: psl2colmez" in capsys.readouterr().err


def test_height_rejects_positive_discriminant():
    assert cli.run(["height", "--q", "7", "--epsilon", "2", "--disc", "5"]) == 2
