import logging
import sys

import fire
import pandas as pd
from colorama import Fore as f, init
from fire.core import FireExit

from psl2colmez import __version__
from psl2colmez.characters.chartable import CharacterTable, UnsupportedQError
from psl2colmez.cmtypes.cmtypes import CensusMismatchError, CMType, census as census_row, stabilizer as stabilizer_of
from psl2colmez.colmez.a_phi import (
    VerificationFailure,
    a_phi0_dataframe,
    decompose_a_phi0,
    make_extended,
    theorem61_rhs,
)
from psl2colmez.colmez.identities import IdentityFailure
from psl2colmez.fields.finite_field import field_of_order
from psl2colmez.groups.psl2 import make_group
from psl2colmez.heights.heights import ConsistencyFailure, height_report
from psl2colmez.references.references import DEFAULTS, REFERENCE_CENSUS
from psl2colmez.reports.reports import (
    census_dataframe,
    check_format,
    render,
    save_df_format,
    to_json_document,
    verification_dataframe,
)
from psl2colmez.utils.utils import setup_logging
from psl2colmez.utils.verification import SUITES, SuiteFailure, run_suites

# from colorama
init(autoreset=True)


BANNER = f"{f.CYAN}psl2colmez {__version__}: PSL2(F_q) CM types and Colmez class functions"

USAGE = """usage: psl2colmez <command> [flags]

commands:
  table       --q Q [--numeric] [--format pretty|csv|json]
  census      [--q Q] [--max-epsilon 7] [--max-q Q] [--format pretty|csv|json]
  aphi        --q Q --cm-type BITS [--method cosets|convolution] [--decompose]
  verify      [--q Q] [--suite NAME|all] [--max-q Q] [--samples N] [--seed S]
  height      --q Q --epsilon E --disc D [--format pretty|json]
  stabilizer  --q Q --cm-type BITS

flags common to all commands: --log-folder DIR, --out-folder DIR
"""

VERIFICATION_ERRORS = (
    VerificationFailure,
    IdentityFailure,
    ConsistencyFailure,
    CensusMismatchError,
    SuiteFailure,
)


def _start(command: str, log_folder: str | None, **parameters) -> None:
    print(BANNER, file=sys.stderr)
    setup_logging(log_folder)
    listed = "\n".join(f"        {k.replace('_', ' ').capitalize()}: {v}" for k, v in parameters.items())
    INFO = f"""
    Runned command:
    {' '.join(sys.argv)}

    Running psl2colmez {command} with following parameters:
{listed}
    """
    logging.info(INFO)


def _emit(df: pd.DataFrame, format: str, out_folder: str | None, name: str, **metadata) -> None:
    print(render(df, format, **metadata))
    if out_folder is not None:
        path = save_df_format(df, out_folder, name, "json" if format == "json" else "csv", **metadata)
        logging.info(f"Saved {path}")


def _cm_type(q: int, cm_type) -> CMType:
    # fire turns bit strings without a leading zero into ints
    phi = CMType.from_bitstring(str(cm_type))
    if phi.q != q:
        raise ValueError(f"CM type {phi} has {len(phi.bits)} bits, q = {q} needs {q + 1}")
    return phi


######### -------------------- Commands ######### --------------------
def table(
    q: int,
    numeric: bool = False,
    format: str = "pretty",
    out_folder: str | None = None,
    log_folder: str | None = None,
) -> None:
    _start("table", log_folder, q=q, numeric=numeric, format=format, out_folder=out_folder)
    check_format(format)
    if q < 5:
        raise UnsupportedQError(f"The character table needs q >= 5, got q = {q}")
    chartable = CharacterTable(make_group(q))
    df = chartable.as_dataframe(numeric=numeric)
    if numeric:
        columns = [c for c in df.columns if c not in ("character", "degree")]
        for column in columns:
            df[column] = df[column].map(lambda z: f"{z.real:.12g}{z.imag:+.12g}j")
    _emit(df, format, out_folder, f"chartable_q{q}", **chartable.metadata())


def census(
    q: int | None = None,
    max_epsilon: int = DEFAULTS["census_max_epsilon"],
    max_q: int | None = None,
    format: str = "pretty",
    out_folder: str | None = None,
    log_folder: str | None = None,
) -> None:
    _start("census", log_folder, q=q, max_epsilon=max_epsilon, max_q=max_q, format=format)
    check_format(format)
    if q is None:
        qs = [v for v in REFERENCE_CENSUS if max_q is None or v <= max_q]
    else:
        qs = [q]
    rows = [census_row(make_group(v), max_epsilon=min(max_epsilon, v + 1)) for v in qs]

    if format == "pretty":
        for row in rows:
            print(f"q={row.q}: " + ",".join(map(str, row.row(1, max_epsilon))))
            if row.middle_differs:
                print(f"  with complementation at eps={(row.q + 1) // 2}: {row.middle_with_rho}")
        if out_folder is None:
            return
    _emit(census_dataframe(rows, max_epsilon), format, out_folder, "census", columns="eps = 1 ..")


def aphi(
    q: int,
    cm_type: str,
    method: str = "cosets",
    decompose: bool = False,
    format: str = "pretty",
    out_folder: str | None = None,
    log_folder: str | None = None,
) -> None:
    _start("aphi", log_folder, q=q, cm_type=cm_type, method=method, decompose=decompose, format=format)
    check_format(format)
    ext = make_extended(q)
    phi = _cm_type(q, cm_type)
    df = a_phi0_dataframe(ext, phi, method)

    rhs = theorem61_rhs(ext, phi.signature)
    df["closed_form"] = [str(rhs[c.label]) for c in ext.classes]
    metadata = {"q": q, "cm_type": phi.bitstring(), "signature": phi.signature, "index_order": "inf,0,1,..."}
    if format == "pretty":
        print(f"CM type {phi.bitstring()} (inf first), signature {phi.signature}")
    _emit(df, format, out_folder, f"aphi0_q{q}_{phi.bitstring()}", **metadata)

    if decompose:
        coefficients = decompose_a_phi0(ext, phi)
        decomposition = pd.DataFrame(
            [{"character": name, "coefficient": str(a)} for name, a in coefficients if not a.is_zero()]
        )
        _emit(decomposition, format, out_folder, f"aphi0_decomposition_q{q}_{phi.bitstring()}", **metadata)


def verify(
    q: int | None = None,
    suite: str = "all",
    max_q: int | None = None,
    samples: int | None = None,
    seed: int = DEFAULTS["seed"],
    format: str = "pretty",
    out_folder: str | None = None,
    log_folder: str | None = None,
) -> None:
    _start("verify", log_folder, q=q, suite=suite, max_q=max_q, samples=samples, seed=seed, format=format)
    check_format(format)
    # fire hands "a,b" over as a tuple
    if isinstance(suite, (list, tuple)):
        names = [str(s) for s in suite]
    elif suite == "all":
        names = list(SUITES)
    else:
        names = [s.strip() for s in str(suite).split(",")]
    results = run_suites(names, qs=None if q is None else [q], max_q=max_q, samples=samples, seed=seed)

    df = verification_dataframe(results)
    if format == "pretty":
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            where = "" if r.q is None else f" q={r.q}"
            print(f"{status} {r.suite}{where}: {r.detail}")
        if out_folder is not None:
            save_df_format(df, out_folder, "verification", "csv")
    else:
        _emit(df, format, out_folder, "verification", seed=seed)

    failed = [r for r in results if not r.passed]
    if failed:
        raise SuiteFailure(f"{len(failed)} of {len(results)} suite runs failed")


def height(
    q: int,
    epsilon: int,
    disc: int,
    format: str = "pretty",
    log_folder: str | None = None,
) -> None:
    _start("height", log_folder, q=q, epsilon=epsilon, disc=disc, format=format)
    check_format(format, ("pretty", "json"))
    field_of_order(q)
    report = height_report(q, epsilon, disc)
    if format == "json":
        print(to_json_document(report))
        return
    coefficients = report["coefficients"]
    print(report["label"])
    print(f"q={q}, eps={epsilon}, d={disc}")
    for symbol, value in coefficients.items():
        print(f"  {symbol}: {value}")
    print(f"  = {report['numeric_part']:.15g} + {report['symbolic_remainder']}")


def stabilizer(q: int, cm_type: str, log_folder: str | None = None) -> None:
    _start("stabilizer", log_folder, q=q, cm_type=cm_type)
    group = make_group(q)
    phi = _cm_type(q, cm_type)
    members = stabilizer_of(group, phi)
    print(f"CM type {phi.bitstring()} (inf first): stabilizer of order {len(members)}")
    for g in members:
        print(f"  {g}")


COMMANDS = {
    "table": table,
    "census": census,
    "aphi": aphi,
    "verify": verify,
    "height": height,
    "stabilizer": stabilizer,
}


def run(argv: list[str] | None = None) -> int:
    """
    Run the command-line interface using Fire and return the exit code.
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv:
        print(USAGE, file=sys.stderr)
        return 2
    try:
        fire.Fire(COMMANDS, command=argv, name="psl2colmez")
    except FireExit as e:
        return e.code if isinstance(e.code, int) else 2
    except VERIFICATION_ERRORS as e:
        logging.error(f"{f.RED}{e}")
        return 1
    except ValueError as e:
        logging.error(f"{f.RED}{e}")
        print(USAGE, file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())
