"""
Verification suites. Each suite checks one family of exact statements for a
single q and reports instead of raising, so a sweep runs to the end.
"""

import logging
from dataclasses import dataclass, field
from math import log, pi

from colorama import Fore as f

from ..characters.chartable import STEINBERG, TRIVIAL, CharacterTable, fixed_point_character
from ..cmtypes.cmtypes import CMType, act, census, equivalent, orbit, stabilizer
from ..colmez.a_phi import verify_theorem61
from ..colmez.identities import lemma_identities, multiset_checks
from ..groups.psl2 import make_group
from ..heights.heights import average_height_check
from ..heights.l_functions import (
    QuadraticCharacter,
    is_fundamental,
    l_deriv_at_0,
    l_deriv_finite_difference,
    l_value_at_0,
    z0_zeta_q,
)
from ..heights.quadratic_forms import class_number, unit_count
from ..references.references import DEFAULTS, REFERENCE_CENSUS, TOLERANCES, VERIFY_SUITES
from .utils import parallel_map


######### -------------------- Custom Errors ######### --------------------
class SuiteFailure(Exception):
    pass


@dataclass
class SuiteResult:
    suite: str
    q: int | None
    passed: bool
    detail: str = ""
    checks: dict = field(default_factory=dict)

    def as_record(self) -> dict:
        return {
            "suite": self.suite,
            "q": self.q,
            "passed": self.passed,
            "detail": self.detail,
        }


def make_suite_result(suite: str, q: int | None, check, **kwargs) -> SuiteResult:
    """
    Runs check(q, **kwargs), which returns (detail, checks), and turns any
    exception into a failed result.
    """
    try:
        detail, checks = check(q, **kwargs)
        return SuiteResult(suite=suite, q=q, passed=True, detail=detail, checks=checks)

    except Exception as e:
        logging.error(
            f"""{f.RED}Following suite did not work: {suite} (q={q})
        Reason: {e}
        """
        )

        return SuiteResult(suite=suite, q=q, passed=False, detail=f"{type(e).__name__}: {e}")


######### -------------------- Suites ######### --------------------
def check_census(q: int) -> tuple[str, dict]:
    group = make_group(q)
    row = census(group, max_epsilon=q + 1)
    counts = row.counts
    n = q + 1
    if counts[0] != 1 or counts[n] != 1:
        raise AssertionError(f"counts at eps = 0 and q+1 are {counts[0]}, {counts[n]}")
    if any(counts[e] != counts[n - e] for e in range(n + 1)):
        raise AssertionError(f"counts are not symmetric: {counts}")
    if counts[2] != 1:
        raise AssertionError(f"{counts[2]} orbits at eps = 2")
    expected_three = 1 if q % 4 == 3 else 2
    if counts[3] != expected_three:
        raise AssertionError(f"{counts[3]} orbits at eps = 3, expected {expected_three}")
    if q in REFERENCE_CENSUS and row.row(1, 7) != REFERENCE_CENSUS[q]:
        raise AssertionError(f"row {row.row(1, 7)} != published {REFERENCE_CENSUS[q]}")
    detail = ",".join(map(str, row.row(1, min(7, n))))
    return detail, {"exhaustive": row.exhaustive_checked, "middle_with_rho": row.middle_with_rho}


def check_chartable(q: int) -> tuple[str, dict]:
    table = CharacterTable(make_group(q))
    group = table.group
    if len(table.rows) != len(group.classes) or len(group.classes) != (q + 5) // 2:
        raise AssertionError(f"{len(table.rows)} characters for {len(group.classes)} classes")
    if sum(d * d for d in table.degrees) != group.order:
        raise AssertionError("sum of squared degrees differs from |G|")
    if defects := table.orthonormality_defects():
        raise AssertionError(f"row orthonormality fails at {defects[:3]}")
    if defects := table.column_defects():
        raise AssertionError(f"column orthogonality fails at {defects[:3]}")
    ind_b = fixed_point_character(group)
    if ind_b != table.character(TRIVIAL) + table.character(STEINBERG):
        raise AssertionError("Ind_B(1) != chi0 + chi1")
    return f"{len(table.rows)} characters", {"conductor": table.conductor}


def check_theorem61(q: int, samples: int, seed: int, exhaustive_max_q: int) -> tuple[str, dict]:
    group = make_group(q)
    report = verify_theorem61(group, exhaustive=q <= exhaustive_max_q, samples=samples, seed=seed)
    return report.summary(), {"mode": report.mode}


def check_identities(q: int) -> tuple[str, dict]:
    group = make_group(q)
    checks = multiset_checks(group)
    checks.update(lemma_identities(group))
    return f"{len(checks)} identities", checks


def check_stabilizer(q: int) -> tuple[str, dict]:
    group = make_group(q)
    F = group.field

    def point(v: int):
        return group.point(F.element(v))

    phi = CMType.from_points(group, [point(0), group.point(), point(1)])
    order = len(stabilizer(group, phi))
    expected = 6 if q % 4 == 1 else 3
    if order != expected:
        raise AssertionError(f"stabilizer of {{0, inf, 1}} has order {order}, expected {expected}")
    if order * len(orbit(group, phi)) != group.order:
        raise AssertionError("orbit-stabilizer product differs from |G|")

    # n_-(i) B sits at the point 1/i
    other = CMType.from_points(group, [point(0), group.point(), point(F.inv(group.delta.value))])
    same = equivalent(group, phi, other)
    if same != (q % 4 == 3):
        raise AssertionError(f"{{wB, B, n_-(1)B}} ~ {{wB, B, n_-(Delta)B}} is {same}")

    # diag(x) conjugates n_-(i) to n_-(i / x^2) and fixes B and wB
    x = F.generator().value
    moved = act(group, group.diagonal(F.element(x)), phi)
    if moved != CMType.from_points(group, [point(0), group.point(), point(F.mul(x, x))]):
        raise AssertionError("diag(x) does not move n_-(1) B to n_-(1/x^2) B")
    return f"|Stab| = {order}", {"equivalent_to_delta_type": same}


def check_heights(q: int) -> tuple[str, dict]:
    average = average_height_check(q)
    return str(average), {}


def check_lfunctions(q: None, discriminants, class_number_bound: int) -> tuple[str, dict]:
    checked = 0
    for d in range(-1, -class_number_bound - 1, -1):
        if not is_fundamental(d):
            continue
        expected = 2 * class_number(d)
        value = l_value_at_0(QuadraticCharacter(d))
        if value * unit_count(d) != expected:
            raise AssertionError(f"L(0, chi_{d}) = {value}, class number formula gives {expected}/{unit_count(d)}")
        checked += 1
    for d in discriminants:
        chi = QuadraticCharacter(d)
        gap = abs(l_deriv_at_0(chi) - l_deriv_finite_difference(chi))
        if gap > TOLERANCES["l_derivative"]:
            raise AssertionError(f"L'(0, chi_{d}) methods differ by {gap}")
    if abs(z0_zeta_q() - log(2 * pi)) > TOLERANCES["zeta_q"]:
        raise AssertionError("Z(0, zeta_Q) != log 2 pi")
    return f"{checked} discriminants", {}


SUITES = {
    "census": check_census,
    "chartable": check_chartable,
    "identities": check_identities,
    "theorem61": check_theorem61,
    "stabilizer": check_stabilizer,
    "heights": check_heights,
    "lfunctions": check_lfunctions,
}


def _suite_qs(name: str, qs, max_q: int | None) -> list[int | None]:
    if name == "lfunctions":
        return [None]
    if qs is None:
        qs = VERIFY_SUITES[name]["qs"]
    qs = [q for q in qs if max_q is None or q <= max_q]
    if name in ("chartable", "census"):
        qs = [q for q in qs if q >= 5]
    if name == "stabilizer":
        qs = [q for q in qs if q >= 5]
    return qs


def _suite_kwargs(name: str, samples: int | None, seed: int) -> dict:
    settings = VERIFY_SUITES[name]
    if name == "theorem61":
        return {
            "samples": samples or settings["samples"],
            "seed": seed,
            "exhaustive_max_q": settings["exhaustive_max_q"],
        }
    if name == "lfunctions":
        return {
            "discriminants": settings["discriminants"],
            "class_number_bound": settings["class_number_bound"],
        }
    return {}


def _run_item(item: tuple) -> SuiteResult:
    name, q, kwargs = item
    return make_suite_result(name, q, SUITES[name], **kwargs)


def run_suites(
    names,
    qs=None,
    max_q: int | None = None,
    samples: int | None = None,
    seed: int = DEFAULTS["seed"],
) -> list[SuiteResult]:
    """
    Runs every named suite over its q range; results sorted by (suite, q).
    """
    items = []
    for name in names:
        if name not in SUITES:
            raise ValueError(f"Unknown suite {name!r}. Choose between: {', '.join(SUITES)}, all")
        kwargs = _suite_kwargs(name, samples, seed)
        for q in _suite_qs(name, qs, max_q):
            items.append((name, q, kwargs))

    results = parallel_map(_run_item, items)
    results.sort(key=lambda r: (list(SUITES).index(r.suite), r.q or 0))

    failed = [r for r in results if not r.passed]
    if failed:
        logging.warning(f"{f.YELLOW}Following suites failed: {', '.join(f'{r.suite}(q={r.q})' for r in failed)}")
    return results
