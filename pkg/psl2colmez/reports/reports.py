import json
from pathlib import Path

import pandas as pd

from ..cmtypes.cmtypes import CensusRow
from ..references.references import DEFAULTS


######### -------------------- Custom Errors ######### --------------------
class UnknownFormatError(ValueError):
    pass


FORMATS = ("pretty", "csv", "json")


def check_format(out_format: str, allowed=FORMATS) -> str:
    if out_format not in allowed:
        raise UnknownFormatError(f"Unknown format {out_format!r}. Choose between: {', '.join(allowed)}")
    return out_format


def census_dataframe(rows: list[CensusRow], max_epsilon: int = DEFAULTS["census_max_epsilon"]) -> pd.DataFrame:
    """
    One row per q, one column per eps = 1 .. max_epsilon.
    """
    records = []
    for row in rows:
        record = {"q": row.q}
        for epsilon in range(1, max_epsilon + 1):
            record[f"eps={epsilon}"] = row.counts[epsilon] if epsilon < len(row.counts) else None
        record["middle_with_rho"] = row.middle_with_rho
        records.append(record)
    df = pd.DataFrame(records)
    counts = [c for c in df.columns if c != "q"]
    df[counts] = df[counts].astype("Int64")
    return df


def verification_dataframe(results) -> pd.DataFrame:
    return pd.DataFrame([r.as_record() for r in results], columns=["suite", "q", "passed", "detail"])


def to_json_document(payload: dict) -> str:
    """
    JSON with a schema version and sorted keys, so equal inputs give equal bytes.
    """
    document = {"schema_version": DEFAULTS["schema_version"], **payload}
    return json.dumps(document, sort_keys=True, indent=2, default=str)


def dataframe_document(df: pd.DataFrame, **metadata) -> str:
    records = json.loads(df.to_json(orient="records"))
    return to_json_document({**metadata, "rows": records})


def render(df: pd.DataFrame, out_format: str = "pretty", **metadata) -> str:
    if out_format == "pretty":
        return df.to_string(index=False)
    if out_format == "csv":
        return df.to_csv(index=False)
    if out_format == "json":
        return dataframe_document(df, **metadata)
    raise UnknownFormatError(f"Unknown format {out_format!r}. Choose between: {', '.join(FORMATS)}")


def save_df_format(df: pd.DataFrame, out_folder: str, name: str, out_format: str, **metadata) -> Path:
    """
    Writes df to out_folder/name.csv or out_folder/name.json.
    """
    if not (out_folder := Path(out_folder)).exists():
        out_folder.mkdir(parents=True)
    out_name = out_folder / name
    if out_format == "csv":
        path = out_name.with_suffix(".csv")
        df.to_csv(path, index=False)
    elif out_format == "json":
        path = out_name.with_suffix(".json")
        path.write_text(dataframe_document(df, **metadata))
    else:
        raise UnknownFormatError(f"Unknown format {out_format!r}. Choose between: csv, json")
    return path
