"""
Class functions and the character table of PSL2(F_q), q >= 5.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm
from typing import Callable, Iterable, Mapping

import pandas as pd

from ..cyclotomic.cyclotomic import CycloNumber, conj, exact_sum, gauss_sum
from ..groups.psl2 import PSL2, ClassKind, make_group


######### -------------------- Custom Errors ######### --------------------
class UnsupportedQError(ValueError):
    pass


class NotSubgroupError(ValueError):
    pass


######### -------------------- Class functions ######### --------------------
class ClassFunction:
    """
    A function on the conjugacy classes of a finite group.

    The group only needs `classes` (objects with `label` and `size`) and
    `order`, so the same class serves PSL2(F_q) and PSL2(F_q) x Z/2. Values
    are Fractions or CycloNumbers; classes left out of `values` are 0.
    """

    def __init__(self, group, values: Mapping) -> None:
        self.group = group
        labels = [cls.label for cls in group.classes]
        unknown = set(values) - set(labels)
        if unknown:
            raise KeyError(f"Not classes of {group}: {sorted(map(str, unknown))}")
        self.values = {label: values.get(label, Fraction(0)) for label in labels}

    @classmethod
    def indicator(cls, group, label) -> "ClassFunction":
        return cls(group, {label: Fraction(1)})

    @classmethod
    def constant(cls, group, value) -> "ClassFunction":
        return cls(group, {c.label: value for c in group.classes})

    @classmethod
    def from_rule(cls, group, rule: Callable) -> "ClassFunction":
        """
        Builds the function C -> rule(C) over the group's class objects.
        """
        return cls(group, {c.label: rule(c) for c in group.classes})

    def __getitem__(self, label):
        return self.values[label]

    def items(self):
        return self.values.items()

    def _same_group(self, other: "ClassFunction") -> None:
        if [c.label for c in other.group.classes] != [c.label for c in self.group.classes]:
            raise ValueError("Class functions live on different groups")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._same_group(other)
        return type(self)(self.group, {k: v + other.values[k] for k, v in self.values.items()})

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        self._same_group(other)
        return type(self)(self.group, {k: v - other.values[k] for k, v in self.values.items()})

    def __neg__(self) -> "ClassFunction":
        return type(self)(self.group, {k: -v for k, v in self.values.items()})

    def __mul__(self, scalar) -> "ClassFunction":
        if isinstance(scalar, ClassFunction):
            return NotImplemented
        return type(self)(self.group, {k: v * scalar for k, v in self.values.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        if self.values.keys() != other.values.keys():
            return False
        return all(v == other.values[k] for k, v in self.values.items())

    __hash__ = None

    def differences(self, other: "ClassFunction") -> list:
        """
        Labels where self and other disagree.
        """
        return [k for k, v in self.values.items() if not v == other.values[k]]

    def weighted_sum(self):
        return exact_sum(c.size * self.values[c.label] for c in self.group.classes)

    def __str__(self) -> str:
        return ", ".join(f"{label}: {value}" for label, value in self.values.items())

    def __repr__(self) -> str:
        return f"ClassFunction({self})"


def inner_product(f: ClassFunction, g: ClassFunction) -> CycloNumber:
    """
    (1/|G|) sum over classes of |C| f(C) conj(g(C)).
    """
    f._same_group(g)
    group = f.group
    total = exact_sum(
        c.size * f.values[c.label] * conj(g.values[c.label]) for c in group.classes
    )
    return CycloNumber.coerce(total) * Fraction(1, group.order)


def induce_from_subgroup(
    group,
    subgroup: Iterable,
    psi: Callable | None = None,
    check_closure: bool = True,
) -> ClassFunction:
    """
    Frobenius induction of psi (default: trivial character) from a subgroup,
    evaluated once per class as |G| / (|C| |H|) * sum of psi over H n C.
    """
    members = list(subgroup)
    if check_closure:
        member_set = set(members)
        for x in members:
            for y in members:
                if group.multiply(x, y) not in member_set:
                    raise NotSubgroupError(f"{x} * {y} leaves the subgroup")

    totals: dict = {}
    for h in members:
        value = Fraction(1) if psi is None else psi(h)
        label = group.classify(h)
        totals[label] = totals[label] + value if label in totals else value

    values = {}
    for cls in group.classes:
        if cls.label in totals:
            values[cls.label] = totals[cls.label] * Fraction(group.order, cls.size * len(members))
    return ClassFunction(group, values)


def fixed_point_character(group: PSL2) -> ClassFunction:
    """
    Number of fixed points on P1 of each class.
    """
    return ClassFunction.from_rule(
        group, lambda c: Fraction(group.fixed_point_count(c.representative))
    )


######### -------------------- Character table ######### --------------------
class CharKind(str, Enum):
    TRIVIAL = "Trivial"
    STEINBERG = "Steinberg"
    PRINCIPAL_SERIES = "PrincipalSeries"
    CUSPIDAL = "Cuspidal"
    OSCILLATOR_PLUS = "OscillatorPlus"
    OSCILLATOR_MINUS = "OscillatorMinus"


@dataclass(frozen=True)
class CharLabel:
    kind: CharKind
    index: int = 0

    def __str__(self) -> str:
        if self.kind == CharKind.TRIVIAL:
            return "chi0"
        if self.kind == CharKind.STEINBERG:
            return "chi1"
        if self.kind == CharKind.PRINCIPAL_SERIES:
            return f"chi_alpha[{self.index}]"
        if self.kind == CharKind.CUSPIDAL:
            return f"pi_eta[{self.index}]"
        return "omega+" if self.kind == CharKind.OSCILLATOR_PLUS else "omega-"


TRIVIAL = CharLabel(CharKind.TRIVIAL)
STEINBERG = CharLabel(CharKind.STEINBERG)
OSCILLATOR_PLUS = CharLabel(CharKind.OSCILLATOR_PLUS)
OSCILLATOR_MINUS = CharLabel(CharKind.OSCILLATOR_MINUS)


@dataclass
class CharacterRow:
    label: CharLabel
    degree: int
    character: ClassFunction
    symbols: dict


class CharacterTable:
    """
    Irreducible characters of PSL2(F_q): the trivial and Steinberg
    characters, the principal series chi_alpha induced from non-quadratic
    characters alpha of the split torus mod +-1, the cuspidal pi(eta) for
    non-quadratic characters eta of the norm one torus mod +-1, and the two
    halves omega+- of the reducible quadratic member of one family.

    alpha and eta are powers of fixed generators; alpha_j = zeta^(j log x)
    with j < n - j, so each {alpha, alpha^-1} pair appears once.
    """

    def __init__(self, group: PSL2, flip_characters: bool = False) -> None:
        if group.q < 5:
            raise UnsupportedQError(f"The character table needs q >= 5, got q = {group.q}")

        self.group = group
        self.field = group.field
        self.q = group.q
        self.split_order = (self.q - 1) // 2
        self.torus_order = (self.q + 1) // 2
        self.gauss = gauss_sum(self.field)
        self.gauss_symbol = f"sqrt({self.q})" if self.q % 4 == 1 else f"sqrt(-{self.q})"
        self.flip_characters = flip_characters

        self.rows = self._build_rows()
        logging.info(f"Built character table of {group} with {len(self.rows)} rows")

    # ---------------------------------------------------------------
    # torus characters
    # ---------------------------------------------------------------
    def _split_exponent(self, x: int) -> int:
        return self.field.log_value(x) % self.split_order

    def _torus_exponent(self, x: int, y: int) -> int:
        z = self.field.quad(self.field.element(x), self.field.element(y))
        return self.field.torus_log(z) % self.torus_order

    def _alpha(self, j: int, exponent: int) -> CycloNumber:
        if self.flip_characters:
            j = -j
        return CycloNumber.zeta(self.split_order, j * exponent)

    def _eta(self, j: int, exponent: int) -> CycloNumber:
        if self.flip_characters:
            j = -j
        return CycloNumber.zeta(self.torus_order, j * exponent)

    @cached_property
    def _trace_zero_split_exponent(self) -> int:
        return self._split_exponent(self.field.sqrt_minus_one.value)

    @cached_property
    def _trace_zero_torus_exponent(self) -> int:
        z0 = next(z for z in self.field.norm_one_elements if z.re.value == 0)
        return self._torus_exponent(z0.re.value, z0.im.value)

    def _indices(self, n: int) -> list[int]:
        return list(range(1, (n - 1) // 2 + 1))

    # ---------------------------------------------------------------
    # rows
    # ---------------------------------------------------------------
    def _row(self, label: CharLabel, degree: int, rule: Callable) -> CharacterRow:
        values, symbols = {}, {}
        for cls in self.group.classes:
            value, symbol = rule(cls.label)
            values[cls.label] = value
            symbols[cls.label] = symbol if symbol is not None else str(value)
        return CharacterRow(label, degree, ClassFunction(self.group, values), symbols)

    def _build_rows(self) -> list[CharacterRow]:
        q = self.q
        one_mod_four = q % 4 == 1
        U_KINDS = (ClassKind.UNIPOTENT_SQUARE, ClassKind.UNIPOTENT_NONSQUARE)

        def trivial(label):
            return Fraction(1), None

        def steinberg(label):
            kind = label.kind
            if kind == ClassKind.IDENTITY:
                return Fraction(q), None
            if kind in U_KINDS:
                return Fraction(0), None
            if kind == ClassKind.SPLIT:
                return Fraction(1), None
            if kind == ClassKind.NONSPLIT:
                return Fraction(-1), None
            return Fraction(1 if one_mod_four else -1), None

        def principal(j):
            def rule(label):
                kind = label.kind
                if kind == ClassKind.IDENTITY:
                    return Fraction(q + 1), None
                if kind in U_KINDS:
                    return Fraction(1), None
                if kind == ClassKind.SPLIT:
                    e = self._split_exponent(label.parameter[0])
                    return self._alpha(j, e) + self._alpha(j, -e), None
                if kind == ClassKind.NONSPLIT or not one_mod_four:
                    return Fraction(0), None
                return self._alpha(j, self._trace_zero_split_exponent) * 2, None

            return rule

        def cuspidal(j):
            def rule(label):
                kind = label.kind
                if kind == ClassKind.IDENTITY:
                    return Fraction(q - 1), None
                if kind in U_KINDS:
                    return Fraction(-1), None
                if kind == ClassKind.NONSPLIT:
                    e = self._torus_exponent(*label.parameter)
                    return -(self._eta(j, e) + self._eta(j, -e)), None
                if kind == ClassKind.SPLIT or one_mod_four:
                    return Fraction(0), None
                return self._eta(j, self._trace_zero_torus_exponent) * -2, None

            return rule

        def oscillator(sign):
            g, g_sym = self.gauss, self.gauss_symbol
            base = 1 if one_mod_four else -1

            def unipotent(s):
                value = (g * s + base) * Fraction(1, 2)
                op = "+" if s > 0 else "-"
                return value, f"({base}{op}{g_sym})/2"

            def rule(label):
                kind = label.kind
                if kind == ClassKind.IDENTITY:
                    return Fraction(q + 1 if one_mod_four else q - 1, 2), None
                if kind == ClassKind.UNIPOTENT_SQUARE:
                    return unipotent(sign)
                if kind == ClassKind.UNIPOTENT_NONSQUARE:
                    return unipotent(-sign)
                if one_mod_four:
                    # alpha_0 is the quadratic character of F_q^* / +-1
                    if kind == ClassKind.SPLIT:
                        e = self._split_exponent(label.parameter[0])
                        return Fraction((-1) ** e), None
                    if kind == ClassKind.NONSPLIT:
                        return Fraction(0), None
                    return Fraction((-1) ** self._trace_zero_split_exponent), None
                # eta_0 is the quadratic character of the norm one torus / +-1
                if kind == ClassKind.SPLIT:
                    return Fraction(0), None
                if kind == ClassKind.NONSPLIT:
                    e = self._torus_exponent(*label.parameter)
                    return Fraction(-((-1) ** e)), None
                return Fraction(-((-1) ** self._trace_zero_torus_exponent)), None

            return rule

        rows = [
            self._row(TRIVIAL, 1, trivial),
            self._row(STEINBERG, q, steinberg),
        ]
        for j in self._indices(self.split_order):
            label = CharLabel(CharKind.PRINCIPAL_SERIES, j)
            rows.append(self._row(label, q + 1, principal(j)))
        for j in self._indices(self.torus_order):
            label = CharLabel(CharKind.CUSPIDAL, j)
            rows.append(self._row(label, q - 1, cuspidal(j)))

        half_degree = (q + 1) // 2 if one_mod_four else (q - 1) // 2
        rows.append(self._row(OSCILLATOR_PLUS, half_degree, oscillator(1)))
        rows.append(self._row(OSCILLATOR_MINUS, half_degree, oscillator(-1)))
        return rows

    # ---------------------------------------------------------------
    # access
    # ---------------------------------------------------------------
    @property
    def classes(self):
        return self.group.classes

    @property
    def labels(self) -> list[CharLabel]:
        return [row.label for row in self.rows]

    @property
    def degrees(self) -> list[int]:
        return [row.degree for row in self.rows]

    @property
    def conductor(self) -> int:
        m = 1
        for row in self.rows:
            for value in row.character.values.values():
                if isinstance(value, CycloNumber):
                    m = lcm(m, value.m)
        return m

    def row(self, label: CharLabel) -> CharacterRow:
        for row in self.rows:
            if row.label == label:
                return row
        raise KeyError(f"No character {label} in the table of {self.group}")

    def character(self, label: CharLabel) -> ClassFunction:
        return self.row(label).character

    # ---------------------------------------------------------------
    # orthogonality and decomposition
    # ---------------------------------------------------------------
    def orthonormality_defects(self) -> list[tuple[CharLabel, CharLabel]]:
        defects = []
        for i, a in enumerate(self.rows):
            for b in self.rows[i:]:
                expected = 1 if a.label == b.label else 0
                if not inner_product(a.character, b.character) == expected:
                    defects.append((a.label, b.label))
        return defects

    def column_defects(self) -> list[tuple]:
        defects = []
        classes = self.classes
        for i, c1 in enumerate(classes):
            for c2 in classes[i:]:
                total = exact_sum(
                    row.character[c1.label] * conj(row.character[c2.label]) for row in self.rows
                )
                expected = Fraction(self.group.order, c1.size) if c1.label == c2.label else 0
                if not total == expected:
                    defects.append((c1.label, c2.label))
        return defects

    def decompose(self, f: ClassFunction) -> list[tuple[CharLabel, CycloNumber]]:
        return [(row.label, inner_product(f, row.character)) for row in self.rows]

    def reconstruct(self, coefficients) -> ClassFunction:
        total = ClassFunction(self.group, {})
        for label, a in coefficients:
            total = total + self.character(label) * a
        return total

    # ---------------------------------------------------------------
    # export
    # ---------------------------------------------------------------
    def as_dataframe(self, numeric: bool = False) -> pd.DataFrame:
        """
        Rows are characters, columns are classes. Symbolic entries by default,
        complex floats with numeric=True.
        """
        columns = [str(c.label) for c in self.classes]
        records = []
        for row in self.rows:
            if numeric:
                values = [
                    CycloNumber.coerce(row.character[c.label]).to_complex() for c in self.classes
                ]
            else:
                values = [row.symbols[c.label] for c in self.classes]
            records.append([str(row.label), row.degree, *values])
        df = pd.DataFrame(records, columns=["character", "degree", *columns])
        return df

    def metadata(self) -> dict:
        return {
            "q": self.q,
            "class_sizes": {str(c.label): c.size for c in self.classes},
            "gauss_sum": self.gauss_symbol,
            "column_convention": (
                "split(x): x is the least of +-x, +-1/x in element order; "
                "nonsplit(x,y): z = x + y*sqrt(Delta) is the least of +-z, +-1/z"
            ),
            "delta": str(self.field.fixed_nonsquare()),
            "modulus": self.field.modulus_string(),
        }


@lru_cache(maxsize=None)
def build_table(q: int) -> CharacterTable:
    if q < 5:
        raise UnsupportedQError(f"The character table needs q >= 5, got q = {q}")
    return CharacterTable(make_group(q))
