import json

import pandas as pd
import pytest

from psl2colmez.cmtypes.cmtypes import census
from psl2colmez.groups.psl2 import make_group
from psl2colmez.reports.reports import (
    UnknownFormatError,
    census_dataframe,
    check_format,
    render,
    save_df_format,
    to_json_document,
    verification_dataframe,
)
from psl2colmez.utils.verification import SuiteResult


@pytest.fixture
def census_df():
    rows = [census(make_group(q), max_epsilon=7, exhaustive=False) for q in (5, 7)]
    return census_dataframe(rows)


def test_census_dataframe(census_df):
    assert list(census_df.columns) == ["q"] + [f"eps={e}" for e in range(1, 8)] + ["middle_with_rho"]
    q7 = census_df[census_df.q == 7].iloc[0]
    assert [int(q7[f"eps={e}"]) for e in range(1, 8)] == [1, 1, 1, 3, 1, 1, 1]
    q5 = census_df[census_df.q == 5].iloc[0]
    assert pd.isna(q5["eps=7"])


def test_json_is_deterministic():
    first = to_json_document({"b": 1, "a": [1, 2]})
    second = to_json_document({"a": [1, 2], "b": 1})
    assert first == second
    assert json.loads(first)["schema_version"] == "1.0"


def test_render_formats(census_df):
    assert "eps=4" in render(census_df, "pretty")
    assert render(census_df, "csv").splitlines()[0].startswith("q,eps=1")
    document = json.loads(render(census_df, "json", source="test"))
    assert document["source"] == "test"
    assert len(document["rows"]) == 2
    with pytest.raises(UnknownFormatError):
        render(census_df, "xml")


def test_save(census_df, tmp_path):
    path = save_df_format(census_df, tmp_path / "out", "census", "csv")
    assert path.name == "census.csv"
    assert path.read_text().startswith("q,")
    path = save_df_format(census_df, tmp_path / "out", "census", "json", q="5,7")
    assert json.loads(path.read_text())["q"] == "5,7"
    with pytest.raises(UnknownFormatError):
        save_df_format(census_df, tmp_path / "out", "census", "xml")


def test_verification_dataframe():
    df = verification_dataframe([SuiteResult("census", 7, True, "1,1,1,3,1,1,1")])
    assert df.to_dict("records") == [{"suite": "census", "q": 7, "passed": True, "detail": "1,1,1,3,1,1,1"}]


def test_unknown_format_is_a_value_error():
    assert check_format("csv") == "csv"
    with pytest.raises(ValueError):
        check_format("xml")
    with pytest.raises(UnknownFormatError):
        check_format("csv", ("pretty", "json"))
