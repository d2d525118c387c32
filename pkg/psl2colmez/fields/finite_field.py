"""
Exact arithmetic in F_q for odd prime powers q = p^k and in F_q(sqrt(Delta)).

Elements are stored as integers v = c_0 + c_1 p + ... + c_{k-1} p^{k-1}. The
integer order on v is the element order used everywhere for canonical choices,
which is the lexicographic order on (c_{k-1}, ..., c_0).
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import sympy

from ..references.references import DEFAULTS


######### -------------------- Custom Errors ######### --------------------
class NotPrimeError(ValueError):
    pass


class EvenCharacteristicError(ValueError):
    pass


class BoundExceededError(ValueError):
    pass


class ZeroInputError(ValueError):
    pass


class FieldMismatchError(ValueError):
    pass


class RepresentativeSetError(ValueError):
    pass


######### -------------------- Helpers ######### --------------------
def _digits(value: int, p: int, k: int) -> tuple[int, ...]:
    digits = []
    for _ in range(k):
        value, c = divmod(value, p)
        digits.append(c)
    return tuple(digits)


def first_irreducible_modulus(p: int, k: int) -> tuple[int, ...]:
    """
    Lexicographically first monic irreducible polynomial of degree k over F_p,
    as coefficients from the constant term up to the leading 1.
    """
    if k == 1:
        return (0, 1)

    x = sympy.Symbol("x")
    for value in range(p**k):
        low = _digits(value, p, k)
        poly = sympy.Poly([1, *reversed(low)], x, modulus=p)
        if poly.is_irreducible:
            return (*low, 1)

    raise RuntimeError(f"No irreducible polynomial of degree {k} over F_{p}")


def split_prime_power(q: int) -> tuple[int, int]:
    """
    Returns (p, k) with q = p^k, p odd.
    """
    if q < 3:
        raise NotPrimeError(f"{q} is not an odd prime power")
    factors = sympy.factorint(q)
    if len(factors) != 1:
        raise NotPrimeError(f"{q} is not a prime power")
    ((p, k),) = factors.items()
    if p == 2:
        raise EvenCharacteristicError(f"{q} has characteristic 2")
    return p, k


######### -------------------- Field ######### --------------------
class FieldConfig:
    """
    The finite field F_q = F_p[x]/(modulus).

    All arithmetic is exposed twice: on raw integer encodings (add, mul, neg,
    inv, power), which the group code uses in its inner loops, and on
    FieldElement objects, which wrap the same tables.
    """

    def __init__(self, p: int, k: int = 1, max_q: int | None = None) -> None:
        max_q = max_q or DEFAULTS["max_q"]
        if p == 2:
            raise EvenCharacteristicError("Characteristic 2 is not supported")
        if p < 2 or not sympy.isprime(p):
            raise NotPrimeError(f"{p} is not a prime")
        if k < 1:
            raise ValueError(f"Exponent must be positive, got {k}")
        if p**k > max_q:
            raise BoundExceededError(f"q = {p}^{k} exceeds the bound {max_q}")

        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = first_irreducible_modulus(p, k)

        self._digit_table = [_digits(v, p, k) for v in range(self.q)]
        self._neg_table = [
            self._encode([(-c) % p for c in digits]) for digits in self._digit_table
        ]
        self._exp, self._log = self._build_log_tables()
        logging.debug(f"Built {self}")

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FieldConfig):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __str__(self) -> str:
        return f"F_{self.q} (p={self.p}, k={self.k}, modulus={self.modulus_string()})"

    def __repr__(self) -> str:
        return f"FieldConfig(p={self.p}, k={self.k})"

    def modulus_string(self) -> str:
        return _poly_string(self.modulus)

    # ---------------------------------------------------------------
    # table construction
    # ---------------------------------------------------------------
    def _encode(self, digits) -> int:
        value = 0
        for c in reversed(digits):
            value = value * self.p + c
        return value

    def _mul_slow(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p

        x, y = self._digit_table[a], self._digit_table[b]
        prod = [0] * (2 * self.k - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] += xi * yj

        # x^k = -(m_0 + m_1 x + ... + m_{k-1} x^{k-1})
        for deg in range(len(prod) - 1, self.k - 1, -1):
            coef = prod[deg] % self.p
            if coef:
                for i, m in enumerate(self.modulus[:-1]):
                    prod[deg - self.k + i] -= coef * m
            prod[deg] = 0

        return self._encode([c % self.p for c in prod[: self.k]])

    def _build_log_tables(self) -> tuple[list[int], list[int]]:
        order = self.q - 1
        for g in range(2, self.q):
            powers = [1]
            value = g
            while value != 1:
                powers.append(value)
                value = self._mul_slow(value, g)
            if len(powers) == order:
                log = [0] * self.q
                for exponent, v in enumerate(powers):
                    log[v] = exponent
                return powers, log

        raise RuntimeError(f"No primitive element found in F_{self.q}")

    # ---------------------------------------------------------------
    # arithmetic on integer encodings
    # ---------------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        da, db = self._digit_table[a], self._digit_table[b]
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        return self._neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg_table[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[-self._log[a] % (self.q - 1)]

    def power(self, a: int, exponent: int) -> int:
        if a == 0:
            if exponent > 0:
                return 0
            if exponent == 0:
                return 1
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[(self._log[a] * exponent) % (self.q - 1)]

    def is_square_value(self, a: int) -> bool:
        if a == 0:
            raise ZeroInputError("is_square is undefined at 0")
        return self.power(a, (self.q - 1) // 2) == 1

    def sqrt_value(self, a: int) -> int:
        if a == 0:
            return 0
        if not self.is_square_value(a):
            raise ValueError(f"{self.element(a)} is not a square in F_{self.q}")
        return self._exp[self._log[a] // 2]

    def log_value(self, a: int) -> int:
        """
        Discrete logarithm to the base of the field's primitive element.
        """
        if a == 0:
            raise ZeroInputError("log is undefined at 0")
        return self._log[a]

    def trace_value(self, a: int) -> int:
        """
        Absolute trace F_q -> F_p, returned as an integer in [0, p).
        """
        total, conj = 0, a
        for _ in range(self.k):
            total = self.add(total, conj)
            conj = self.power(conj, self.p)
        return total

    def digits(self, a: int) -> tuple[int, ...]:
        return self._digit_table[a]

    # ---------------------------------------------------------------
    # element level API
    # ---------------------------------------------------------------
    def element(self, value: int) -> "FieldElement":
        if not 0 <= value < self.q:
            raise ValueError(f"{value} is not an element encoding of F_{self.q}")
        return FieldElement(self, value)

    def from_int(self, n: int) -> "FieldElement":
        return FieldElement(self, n % self.p)

    def __call__(self, n: "int | FieldElement") -> "FieldElement":
        if isinstance(n, FieldElement):
            if n.field != self:
                raise FieldMismatchError(f"{n} does not belong to {self}")
            return n
        return self.from_int(n)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, v) for v in range(self.q)]

    def nonzero_elements(self) -> list["FieldElement"]:
        return [FieldElement(self, v) for v in range(1, self.q)]

    def generator(self) -> "FieldElement":
        return FieldElement(self, self._exp[1] if self.q > 2 else 1)

    def basis(self) -> list["FieldElement"]:
        """
        The F_p-basis 1, x, ..., x^{k-1}.
        """
        return [FieldElement(self, self.p**i) for i in range(self.k)]

    def is_square(self, x: "FieldElement") -> bool:
        return self.is_square_value(self(x).value)

    def sqrt(self, x: "FieldElement") -> "FieldElement":
        return FieldElement(self, self.sqrt_value(self(x).value))

    def trace(self, x: "FieldElement") -> int:
        return self.trace_value(self(x).value)

    def squares(self) -> list["FieldElement"]:
        return [x for x in self.nonzero_elements() if self.is_square_value(x.value)]

    @cached_property
    def delta_value(self) -> int:
        for v in range(1, self.q):
            if not self.is_square_value(v):
                return v
        raise RuntimeError("Every element is a square")

    def fixed_nonsquare(self) -> "FieldElement":
        """
        The first non-square in element order.
        """
        return FieldElement(self, self.delta_value)

    @cached_property
    def sqrt_minus_one(self) -> "FieldElement | None":
        """
        A square root of -1, or None when q = 3 (mod 4).
        """
        if self.q % 4 != 1:
            return None
        return self.sqrt(self.from_int(-1))

    def representative_set_A(self) -> "RepSetA":
        return self._rep_set

    @cached_property
    def _rep_set(self) -> "RepSetA":
        if self.q % 4 == 3:
            values = [v for v in range(1, self.q) if self.is_square_value(v)]
        else:
            chosen = {min(v, self.neg(v)) for v in range(1, self.q)}
            if 1 not in chosen:
                chosen.discard(self.neg(1))
                chosen.add(1)
            values = sorted(chosen)
        return RepSetA.from_values(self, values)

    # ---------------------------------------------------------------
    # quadratic extension F_q(sqrt(Delta))
    # ---------------------------------------------------------------
    def quad(self, re: "int | FieldElement", im: "int | FieldElement" = 0) -> "QuadExtElement":
        return QuadExtElement(self(re), self(im))

    @cached_property
    def norm_one_elements(self) -> tuple["QuadExtElement", ...]:
        """
        All q+1 elements of norm 1 in F_q(sqrt(Delta)), sorted.
        """
        found = set()
        for y in range(self.q):
            rhs = self.add(1, self.mul(self.delta_value, self.mul(y, y)))
            if rhs == 0:
                found.add((0, y))
            elif self.is_square_value(rhs):
                x = self.sqrt_value(rhs)
                found.add((x, y))
                found.add((self.neg(x), y))
        return tuple(
            QuadExtElement(FieldElement(self, x), FieldElement(self, y))
            for x, y in sorted(found)
        )

    def norm_one_subgroup(self) -> tuple["QuadExtElement", ...]:
        """
        Representatives of the norm one torus modulo +-1, the lex-smaller of
        {z, -z} for each pair.
        """
        return self._norm_one_reps

    @cached_property
    def _norm_one_reps(self) -> tuple["QuadExtElement", ...]:
        reps = {z.canonical_pm() for z in self.norm_one_elements}
        return tuple(sorted(reps, key=QuadExtElement.sort_key))

    @cached_property
    def _torus_tables(self) -> tuple["QuadExtElement", dict]:
        order = self.q + 1
        for candidate in self.norm_one_elements:
            powers = [self.quad(1, 0)]
            value = candidate
            while not value.is_one():
                powers.append(value)
                value = value * candidate
            if len(powers) == order:
                log = {z.sort_key(): exponent for exponent, z in enumerate(powers)}
                return candidate, log
        raise RuntimeError(f"Norm one torus of F_{self.q}^2 is not cyclic")

    def torus_generator(self) -> "QuadExtElement":
        return self._torus_tables[0]

    def torus_log(self, z: "QuadExtElement") -> int:
        """
        Exponent of z with respect to torus_generator(), in [0, q+1).
        """
        return self._torus_tables[1][z.sort_key()]


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1, max_q: int | None = None) -> FieldConfig:
    return FieldConfig(p, k, max_q=max_q)


def field_of_order(q: int, max_q: int | None = None) -> FieldConfig:
    p, k = split_prime_power(q)
    return make_field(p, k, max_q=max_q)


def _poly_string(coeffs, var: str = "x") -> str:
    terms = []
    for deg in range(len(coeffs) - 1, -1, -1):
        c = coeffs[deg]
        if c == 0:
            continue
        if deg == 0:
            terms.append(str(c))
            continue
        mono = var if deg == 1 else f"{var}^{deg}"
        terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


######### -------------------- Elements ######### --------------------
class FieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field: FieldConfig, value: int) -> None:
        self.field = field
        self.value = value

    def _coerce(self, other) -> int | None:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatchError(f"{other.field!r} != {self.field!r}")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return None

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.digits(self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def is_square(self) -> bool:
        return self.field.is_square_value(self.value)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __add__(self, other):
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.value, value))

    __radd__ = __add__

    def __sub__(self, other):
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.value, value))

    def __rsub__(self, other):
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(value, self.value))

    def __mul__(self, other):
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(value)))

    def __rtruediv__(self, other):
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(value, self.field.inv(self.value)))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, exponent: int) -> "FieldElement":
        return FieldElement(self.field, self.field.power(self.value, exponent))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.value == other.value and (
                self.field is other.field or self.field == other.field
            )
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.field.q))

    def __lt__(self, other: "FieldElement") -> bool:
        return self.value < other.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        if self.field.k == 1:
            return str(self.value)
        return _poly_string(self.coeffs)

    def __repr__(self) -> str:
        return f"FieldElement({self}, q={self.field.q})"


@dataclass(frozen=True)
class QuadExtElement:
    """
    re + sqrt(Delta) * im in F_q(sqrt(Delta)).
    """

    re: FieldElement
    im: FieldElement

    @property
    def field(self) -> FieldConfig:
        return self.re.field

    def sort_key(self) -> tuple[int, int]:
        return (self.re.value, self.im.value)

    def __mul__(self, other: "QuadExtElement") -> "QuadExtElement":
        F = self.field
        a, b = self.re.value, self.im.value
        c, d = other.re.value, other.im.value
        re = F.add(F.mul(a, c), F.mul(F.delta_value, F.mul(b, d)))
        im = F.add(F.mul(a, d), F.mul(b, c))
        return QuadExtElement(FieldElement(F, re), FieldElement(F, im))

    def __neg__(self) -> "QuadExtElement":
        return QuadExtElement(-self.re, -self.im)

    def __pow__(self, exponent: int) -> "QuadExtElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = QuadExtElement(self.field.one, self.field.zero)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "QuadExtElement":
        return QuadExtElement(self.re, -self.im)

    def norm(self) -> FieldElement:
        return self.re * self.re - self.field.fixed_nonsquare() * self.im * self.im

    def inverse(self) -> "QuadExtElement":
        n = self.norm()
        if n.is_zero():
            raise ZeroDivisionError("0 has no inverse")
        n_inv = n.inverse()
        return QuadExtElement(self.re * n_inv, -self.im * n_inv)

    def is_one(self) -> bool:
        return self.re.value == 1 and self.im.value == 0

    def canonical_pm(self) -> "QuadExtElement":
        other = -self
        return self if self.sort_key() <= other.sort_key() else other

    def __str__(self) -> str:
        return f"{self.re}+{self.im}*r"


@dataclass(frozen=True)
class RepSetA:
    """
    A set of representatives of F_q^* / {+-1} containing 1.
    """

    elements: tuple[FieldElement, ...]
    values: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", frozenset(x.value for x in self.elements))

    @classmethod
    def from_values(cls, field_config: FieldConfig, values) -> "RepSetA":
        F = field_config
        values = sorted(set(values))
        if len(values) != (F.q - 1) // 2:
            raise RepresentativeSetError(f"Expected {(F.q - 1) // 2} representatives")
        if 1 not in values or F.neg(1) in values:
            raise RepresentativeSetError("Representatives must contain 1 and not -1")
        if 0 in values or len({min(v, F.neg(v)) for v in values}) != len(values):
            raise RepresentativeSetError("Representatives must pick one of each {x, -x}")
        return cls(tuple(FieldElement(F, v) for v in values))

    def __contains__(self, x) -> bool:
        if isinstance(x, FieldElement):
            x = x.value
        return x in self.values

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)
