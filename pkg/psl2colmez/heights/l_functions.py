"""
Quadratic Dirichlet characters and their L-functions near s = 0.

L(s, chi) = f^-s sum_{a=1}^{f-1} chi(a) zeta_H(s, a/f), so with
zeta_H(0, x) = 1/2 - x and d/ds zeta_H(0, x) = log Gamma(x) - 1/2 log 2 pi:

    L(0, chi)  = -(1/f) sum a chi(a)
    L'(0, chi) = -log f L(0, chi) + sum chi(a) log Gamma(a/f)
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial

import numpy as np
from scipy.special import bernoulli, gammaln
from sympy import factorint
from sympy.ntheory import jacobi_symbol

from ..references.references import TOLERANCES


######### -------------------- Custom Errors ######### --------------------
class NotFundamentalError(ValueError):
    pass


class EvenCharacterError(ValueError):
    pass


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(abs(n)).values())


def is_fundamental(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def kronecker(d: int, n: int) -> int:
    """
    Kronecker symbol (d / n) for n >= 1.
    """
    if n < 1:
        raise ValueError(f"Kronecker symbol needs n >= 1, got {n}")
    result = 1
    while n % 2 == 0:
        if d % 2 == 0:
            return 0
        result *= 1 if d % 8 in (1, 7) else -1
        n //= 2
    if n == 1:
        return result
    return result * jacobi_symbol(d % n, n)


@dataclass(frozen=True)
class QuadraticCharacter:
    d: int

    def __post_init__(self) -> None:
        if not is_fundamental(self.d):
            raise NotFundamentalError(f"{self.d} is not a fundamental discriminant")

    @property
    def conductor(self) -> int:
        return abs(self.d)

    f = conductor

    @property
    def is_odd(self) -> bool:
        return self.d < 0

    def __call__(self, n: int) -> int:
        return kronecker(self.d, n % self.conductor or self.conductor)

    @cached_property
    def values(self) -> np.ndarray:
        """
        chi(a) for a = 1, ..., f-1.
        """
        return np.array([self(a) for a in range(1, self.conductor)], dtype=np.int64)

    def _require_odd(self) -> None:
        if not self.is_odd:
            raise EvenCharacterError(f"chi_{self.d} is even; L(0, chi) vanishes")

    def __str__(self) -> str:
        return f"chi_{self.d}"


######### -------------------- L at s = 0 ######### --------------------
def l_value_at_0(chi: QuadraticCharacter) -> Fraction:
    chi._require_odd()
    f = chi.conductor
    return -Fraction(sum(a * int(c) for a, c in enumerate(chi.values, start=1)), f)


def l_deriv_at_0(chi: QuadraticCharacter) -> float:
    chi._require_odd()
    f = chi.conductor
    a = np.arange(1, f)
    return float(-np.log(f) * float(l_value_at_0(chi)) + np.dot(chi.values, gammaln(a / f)))


######### -------------------- Euler-Maclaurin ######### --------------------
_EM_TERMS = 10
_EM_SHIFT = 12
_BERNOULLI = bernoulli(2 * _EM_TERMS)


def hurwitz_zeta(s: float, x: float) -> float:
    """
    zeta_H(s, x) for real s != 1 and x > 0 by Euler-Maclaurin summation
    after shifting x by _EM_SHIFT.
    """
    if s == 1:
        raise ValueError("zeta_H has a pole at s = 1")
    n = np.arange(_EM_SHIFT)
    y = _EM_SHIFT + x
    total = np.sum((n + x) ** -s) + y ** (1 - s) / (s - 1) + 0.5 * y**-s
    for k in range(1, _EM_TERMS + 1):
        rising = np.prod(s + np.arange(2 * k - 1))
        total += _BERNOULLI[2 * k] / factorial(2 * k) * rising * y ** (-s - 2 * k + 1)
    return float(total)


def l_function(chi: QuadraticCharacter, s: float) -> float:
    f = chi.conductor
    terms = [c * hurwitz_zeta(s, a / f) for a, c in enumerate(chi.values, start=1) if c]
    return float(f**-s * np.sum(terms))


def l_deriv_finite_difference(chi: QuadraticCharacter, step: float | None = None) -> float:
    """
    Central difference of the Euler-Maclaurin L(s, chi) at s = 0.
    """
    chi._require_odd()
    h = step or TOLERANCES["finite_difference_step"]
    return (l_function(chi, h) - l_function(chi, -h)) / (2 * h)


######### -------------------- Z(0, chi) ######### --------------------
def z0(chi: QuadraticCharacter) -> float:
    """
    L'(0, chi) / L(0, chi) + 1/2 log f.
    """
    return l_deriv_at_0(chi) / float(l_value_at_0(chi)) + 0.5 * np.log(chi.conductor)


def z0_zeta_q() -> float:
    """
    zeta'(0) / zeta(0) = log 2 pi, the conductor being 1.
    """
    return float(np.log(2 * np.pi))
