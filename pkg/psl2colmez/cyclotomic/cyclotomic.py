"""
Exact arithmetic in cyclotomic fields Q(zeta_m).

A CycloNumber is a dense vector of phi(m) rational coordinates in the power
basis 1, zeta_m, ..., zeta_m^{phi(m)-1}. Mixed-conductor operations first push
both operands into Q(zeta_lcm) through zeta_m = zeta_lcm^(lcm/m).
"""

from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np
import sympy

Rational = Fraction


######### -------------------- Polynomials ######### --------------------
def _poly_mul(a, b) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _trim(a) -> list:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a, b) -> tuple[list, list]:
    """
    Division with remainder of coefficient lists (constant term first) over Q.
    """
    a = [Fraction(x) for x in a]
    b = _trim(b)
    lead = Fraction(b[-1])
    if len(a) < len(b):
        return [Fraction(0)], _trim(a)
    quotient = [Fraction(0)] * (len(a) - len(b) + 1)
    for shift in range(len(a) - len(b), -1, -1):
        coef = a[shift + len(b) - 1] / lead
        quotient[shift] = coef
        if coef:
            for i, y in enumerate(b):
                a[shift + i] -= coef * y
    return quotient, _trim(a[: len(b) - 1] or [Fraction(0)])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """
    Phi_m as integer coefficients, constant term first: x^m - 1 divided by
    Phi_d for every proper divisor d of m.
    """
    if m < 1:
        raise ValueError(f"Conductor must be positive, got {m}")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in sympy.divisors(m)[:-1]:
        poly, remainder = _poly_divmod(poly, cyclotomic_polynomial(d))
        if any(remainder):
            raise ArithmeticError(f"Phi_{d} does not divide x^{m} - 1")
    return tuple(int(c) for c in poly)


@lru_cache(maxsize=None)
def _degree(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """
    Coordinates of zeta_m^j for j = 0, ..., m-1.
    """
    phi = cyclotomic_polynomial(m)
    n = len(phi) - 1
    rows = []
    current = [Fraction(0)] * n
    current[0] = Fraction(1)
    for _ in range(m):
        rows.append(tuple(current))
        # multiply by zeta: shift, then fold the x^n term back
        top = current[-1]
        current = [Fraction(0)] + current[:-1]
        if top:
            for i in range(n):
                current[i] -= top * phi[i]
    return tuple(rows)


def _reduce(coeffs, m: int) -> list[Fraction]:
    """
    Reduce a polynomial in zeta_m (any length) to power-basis coordinates.
    """
    n = _degree(m)
    table = _power_table(m)
    out = [Fraction(0)] * n
    for exponent, c in enumerate(coeffs):
        if c:
            row = table[exponent % m]
            for i in range(n):
                if row[i]:
                    out[i] += c * row[i]
    return out


######### -------------------- Numbers ######### --------------------
class CycloNumber:
    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs) -> None:
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != _degree(m):
            raise ValueError(f"Q(zeta_{m}) has degree {_degree(m)}, got {len(coeffs)} coordinates")
        if m > 1 and not any(coeffs[1:]):
            m, coeffs = 1, coeffs[:1]
        self.m = m
        self.coeffs = tuple(coeffs)

    # ---------------------------------------------------------------
    # constructors
    # ---------------------------------------------------------------
    @classmethod
    def rational(cls, value) -> "CycloNumber":
        return cls(1, [Fraction(value)])

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CycloNumber":
        return cls(m, _power_table(m)[k % m])

    @classmethod
    def from_exponents(cls, m: int, coefficients) -> "CycloNumber":
        """
        sum_j coefficients[j] * zeta_m^j for a sequence or a mapping j -> c.
        """
        if isinstance(coefficients, dict):
            dense = [0] * m
            for j, c in coefficients.items():
                dense[j % m] += c
            coefficients = dense
        return cls(m, _reduce(coefficients, m))

    @staticmethod
    def coerce(value) -> "CycloNumber":
        if isinstance(value, CycloNumber):
            return value
        if isinstance(value, (int, Fraction)):
            return CycloNumber.rational(value)
        raise TypeError(f"Cannot interpret {value!r} as a cyclotomic number")

    # ---------------------------------------------------------------
    # structure
    # ---------------------------------------------------------------
    def lift(self, n: int) -> "CycloNumber":
        """
        The same number written in Q(zeta_n), for m | n.
        """
        if n == self.m:
            return self
        if n % self.m:
            raise ValueError(f"Q(zeta_{self.m}) is not contained in Q(zeta_{n})")
        step = n // self.m
        dense = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            dense[i * step] = c
        out = object.__new__(CycloNumber)
        out.m = n
        out.coeffs = tuple(_reduce(dense, n))
        return out

    def is_rational(self) -> bool:
        return self.m == 1

    def as_rational(self) -> Fraction:
        if self.m != 1:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return self.m == 1 and self.coeffs[0] == 0

    def _common(self, other) -> tuple[int, tuple, tuple]:
        other = CycloNumber.coerce(other)
        n = lcm(self.m, other.m)
        return n, self.lift(n).coeffs, other.lift(n).coeffs

    # ---------------------------------------------------------------
    # arithmetic
    # ---------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, (CycloNumber, int, Fraction)):
            return NotImplemented
        n, a, b = self._common(other)
        return CycloNumber(n, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> "CycloNumber":
        return CycloNumber(self.m, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, (CycloNumber, int, Fraction)):
            return NotImplemented
        return self + (-CycloNumber.coerce(other))

    def __rsub__(self, other):
        return CycloNumber.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNumber(self.m, [c * other for c in self.coeffs])
        if not isinstance(other, CycloNumber):
            return NotImplemented
        if other.m == 1:
            return self * other.coeffs[0]
        if self.m == 1:
            return other * self.coeffs[0]
        n, a, b = self._common(other)
        return CycloNumber(n, _reduce(_poly_mul(a, b), n))

    __rmul__ = __mul__

    def invert(self) -> "CycloNumber":
        if self.is_zero():
            raise ZeroDivisionError("0 has no inverse")
        if self.m == 1:
            return CycloNumber.rational(1 / self.coeffs[0])

        # extended Euclid: u * a + v * Phi_m = 1
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.m)]
        r0, r1 = phi, _trim(self.coeffs)
        u0, u1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] != 0:
            quotient, remainder = _poly_divmod(r0, r1)
            r0, r1 = r1, remainder
            u0, u1 = u1, _poly_sub(u0, _poly_mul(quotient, u1))
        # r0 is a nonzero constant since Phi_m is irreducible
        scale = 1 / r0[0]
        return CycloNumber(self.m, _reduce([c * scale for c in u0], self.m))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        return CycloNumber.coerce(other) * self.invert()

    def __pow__(self, exponent: int) -> "CycloNumber":
        if exponent < 0:
            return self.invert() ** (-exponent)
        result = CycloNumber.rational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "CycloNumber":
        """
        Complex conjugation zeta_m -> zeta_m^{-1}.
        """
        if self.m == 1:
            return self
        dense = [Fraction(0)] * self.m
        for i, c in enumerate(self.coeffs):
            dense[-i % self.m] += c
        return CycloNumber(self.m, _reduce(dense, self.m))

    def __eq__(self, other) -> bool:
        if not isinstance(other, (CycloNumber, int, Fraction)):
            return NotImplemented
        _, a, b = self._common(other)
        return a == b

    __hash__ = None

    def to_complex(self) -> complex:
        powers = np.exp(2j * np.pi * np.arange(len(self.coeffs)) / self.m)
        return complex(np.dot(np.array([float(c) for c in self.coeffs]), powers))

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            root = f"z_{self.m}" if i == 1 else f"z_{self.m}^{i}"
            if c == 1:
                terms.append(root)
            elif c == -1:
                terms.append(f"-{root}")
            else:
                terms.append(f"{c}*{root}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"CycloNumber({self})"


def _poly_sub(a, b) -> list:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def conj(value):
    """
    Complex conjugate of a rational or cyclotomic value.
    """
    if isinstance(value, CycloNumber):
        return value.conjugate()
    return value


def gauss_sum(field) -> CycloNumber:
    """
    sum over x != 0 of chi_2(x) zeta_p^Tr(x); its square is chi_2(-1) q.
    """
    p = field.p
    counts = [0] * p
    for x in range(1, field.q):
        counts[field.trace_value(x)] += 1 if field.is_square_value(x) else -1
    return CycloNumber.from_exponents(p, counts)


def exact_sum(values) -> "CycloNumber | Fraction":
    """
    Sum of rationals and cyclotomic numbers, adding within each conductor
    before moving to a common field.
    """
    rational = Fraction(0)
    by_conductor: dict[int, CycloNumber] = {}
    for value in values:
        if isinstance(value, CycloNumber):
            if value.m == 1:
                rational += value.coeffs[0]
            elif value.m in by_conductor:
                by_conductor[value.m] = by_conductor[value.m] + value
            else:
                by_conductor[value.m] = value
        else:
            rational += value
    if not by_conductor:
        return rational
    total = CycloNumber.rational(rational)
    for m in sorted(by_conductor):
        total = total + by_conductor[m]
    return total
