"""
The conjectural Faltings height of the CM types of a fixed signature as a
rational combination of Z(0, zeta_Q), Z(0, chi_k) and Z(0, chi_{E/F}).

Z(0, zeta_k) is expanded into Z(0, zeta_Q) + Z(0, chi_k). The E/F part is
never evaluated: F is not constructed, so its term stays symbolic.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from ..references.references import DEFAULTS
from .l_functions import EvenCharacterError, QuadraticCharacter, z0, z0_zeta_q

ZETA_Q = "ZetaQ"
CHI_K = "ChiK"
CHI_EF = "ChiEF"
SYMBOLS = (ZETA_Q, CHI_K, CHI_EF)

HEIGHT_LABEL = "conjectural Faltings height (Colmez normalization)"


######### -------------------- Custom Errors ######### --------------------
class ConsistencyFailure(Exception):
    pass


@dataclass(frozen=True)
class HeightExpression:
    coefficients: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        unknown = set(self.coefficients) - set(SYMBOLS)
        if unknown:
            raise KeyError(f"Unknown symbols {sorted(unknown)}; choose from {SYMBOLS}")
        full = {s: Fraction(self.coefficients.get(s, 0)) for s in SYMBOLS}
        object.__setattr__(self, "coefficients", full)

    def __getitem__(self, symbol: str) -> Fraction:
        return self.coefficients[symbol]

    def __add__(self, other: "HeightExpression") -> "HeightExpression":
        return HeightExpression({s: self[s] + other[s] for s in SYMBOLS})

    def __mul__(self, scalar) -> "HeightExpression":
        return HeightExpression({s: self[s] * scalar for s in SYMBOLS})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeightExpression):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(tuple(self.coefficients[s] for s in SYMBOLS))

    def numeric_part(self, chi: QuadraticCharacter | None = None) -> float:
        """
        The ZetaQ and ChiK terms evaluated; the ChiK term needs chi unless
        its coefficient is 0.
        """
        value = float(self[ZETA_Q]) * z0_zeta_q()
        if self[CHI_K]:
            if chi is None:
                raise ValueError("The chi_k term needs a discriminant to evaluate")
            value += float(self[CHI_K]) * z0(chi)
        return value

    def symbolic_remainder(self) -> str:
        return f"{self[CHI_EF]}*Z(0,chi_E/F)"

    def as_strings(self) -> dict[str, str]:
        return {s: str(self[s]) for s in SYMBOLS}

    def __str__(self) -> str:
        terms = [f"{self[s]}*Z(0,{s})" for s in SYMBOLS if self[s]]
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def colmez_constant(q: int, epsilon: int) -> Fraction:
    """
    eps(q+1-eps) / (q(q+1)).
    """
    if not 0 <= epsilon <= q + 1:
        raise ValueError(f"Signature must lie in [0, {q + 1}], got {epsilon}")
    return Fraction(epsilon * (q + 1 - epsilon), q * (q + 1))


def theorem72_height(q: int, epsilon: int, d: int | None = None) -> HeightExpression:
    """
    -1/4 Z(0, zeta_k) + c Z(0, chi_k) - c/(q+1) Z(0, chi_{E/F}), written over
    the three symbols. Passing d validates it as a negative fundamental
    discriminant.
    """
    if d is not None and not QuadraticCharacter(d).is_odd:
        raise EvenCharacterError(f"The imaginary quadratic field needs d < 0, got {d}")
    c = colmez_constant(q, epsilon)
    return HeightExpression(
        {
            ZETA_Q: Fraction(-1, 4),
            CHI_K: Fraction(-1, 4) + c,
            CHI_EF: -c / (q + 1),
        }
    )


def average_height(q: int) -> HeightExpression:
    """
    Binomially weighted average of theorem72_height over all 2^(q+1) CM types.
    """
    n = q + 1
    total = HeightExpression()
    for epsilon in range(n + 1):
        total = total + theorem72_height(q, epsilon) * comb(n, epsilon)
    return total * Fraction(1, 2**n)


def average_height_check(q: int) -> HeightExpression:
    """
    The average must be -1/4 Z(0, zeta_Q) - 1/(4(q+1)) Z(0, chi_{E/F}), with
    no chi_k term.
    """
    average = average_height(q)
    expected = HeightExpression({ZETA_Q: Fraction(-1, 4), CHI_EF: Fraction(-1, 4 * (q + 1))})
    if average != expected:
        raise ConsistencyFailure(f"q={q}: average height {average} != {expected}")

    # mean of eps(q+1-eps) under the binomial weights
    n = q + 1
    mean = Fraction(sum(comb(n, e) * e * (n - e) for e in range(n + 1)), 2**n)
    if mean != Fraction(q * (q + 1), 4):
        raise ConsistencyFailure(f"q={q}: E[eps(q+1-eps)] = {mean}")

    logging.info(f"q={q}: average height {average}")
    return average


def height_report(q: int, epsilon: int, d: int) -> dict:
    chi = QuadraticCharacter(d)
    expression = theorem72_height(q, epsilon, d)
    return {
        "schema_version": DEFAULTS["schema_version"],
        "label": HEIGHT_LABEL,
        "q": q,
        "epsilon": epsilon,
        "discriminant": d,
        "coefficients": expression.as_strings(),
        "numeric_part": expression.numeric_part(chi),
        "symbolic_remainder": expression.symbolic_remainder(),
    }
