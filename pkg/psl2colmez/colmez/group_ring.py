"""
The Galois group G = PSL2(F_q) x Z/2 of E^c/Q, its rational group ring and
class functions on it.
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from ..characters.chartable import ClassFunction
from ..cmtypes.cmtypes import CMType, check_same_q
from ..groups.psl2 import PSL2, ConjClassLabel, ConjugacyClass, ProjectiveMatrix


@dataclass(frozen=True)
class GalElement:
    """
    (g, r) with r the rho component; (g, r)(h, s) = (gh, r xor s).
    """

    g: ProjectiveMatrix
    r: int = 0

    def __str__(self) -> str:
        return f"{self.g}" if self.r == 0 else f"rho*{self.g}"


@dataclass(frozen=True)
class ExtClassLabel:
    label: ConjClassLabel
    r: int

    def sort_key(self) -> tuple:
        return (self.label.sort_key(), self.r)

    def __lt__(self, other: "ExtClassLabel") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return f"({self.label},{self.r})"


class ExtendedGroup:
    """
    PSL2(F_q) x Z/2. Its classes are C x {r} for the classes C of PSL2.
    """

    def __init__(self, base: PSL2) -> None:
        self.base = base
        self.q = base.q
        self.order = 2 * base.order
        self.identity = GalElement(base.identity, 0)
        self.rho = GalElement(base.identity, 1)

    def __str__(self) -> str:
        return f"{self.base} x Z/2"

    __repr__ = __str__

    @cached_property
    def classes(self) -> tuple[ConjugacyClass, ...]:
        return tuple(
            ConjugacyClass(ExtClassLabel(cls.label, r), cls.size, GalElement(cls.representative, r))
            for cls in self.base.classes
            for r in (0, 1)
        )

    def multiply(self, x: GalElement, y: GalElement) -> GalElement:
        return GalElement(self.base.multiply(x.g, y.g), x.r ^ y.r)

    def invert(self, x: GalElement) -> GalElement:
        return GalElement(self.base.invert(x.g), x.r)

    def classify(self, x: GalElement) -> ExtClassLabel:
        return ExtClassLabel(self.base.classify(x.g), x.r)

    def elements(self) -> list[GalElement]:
        return [GalElement(g, r) for g in self.base.elements for r in (0, 1)]


class ExtClassFunction(ClassFunction):
    """
    Class function on PSL2(F_q) x Z/2.
    """

    @classmethod
    def lift(cls, ext: ExtendedGroup, f: ClassFunction, r: int = 0) -> "ExtClassFunction":
        """
        f placed on the r-part, 0 on the other.
        """
        return cls(ext, {ExtClassLabel(label, r): value for label, value in f.items()})

    @classmethod
    def tensor(cls, ext: ExtendedGroup, f: ClassFunction, sign: bool = False) -> "ExtClassFunction":
        """
        f (x) trivial, or f (x) sgn with sgn(r) = (-1)^r.
        """
        values = {}
        for label, value in f.items():
            values[ExtClassLabel(label, 0)] = value
            values[ExtClassLabel(label, 1)] = -value if sign else value
        return cls(ext, values)

    @classmethod
    def trace_to_k(cls, ext: ExtendedGroup) -> "ExtClassFunction":
        """
        tr_{E^c/k}: the indicator of r = 0.
        """
        return cls(ext, {c.label: Fraction(1) for c in ext.classes if c.label.r == 0})

    @classmethod
    def chi_k(cls, ext: ExtendedGroup) -> "ExtClassFunction":
        """
        The quadratic character (g, r) -> (-1)^r of k/Q.
        """
        return cls(ext, {c.label: Fraction((-1) ** c.label.r) for c in ext.classes})

    def rho_twist(self) -> "ExtClassFunction":
        """
        ((1 - rho) f)(g, r) = f(g, r) - f(g, r + 1).
        """
        values = {}
        for label, value in self.values.items():
            other = self.values[ExtClassLabel(label.label, 1 - label.r)]
            values[label] = value - other
        return ExtClassFunction(self.group, values)

    def restrict(self, r: int) -> dict:
        return {label.label: value for label, value in self.values.items() if label.r == r}


######### -------------------- Group ring ######### --------------------
class GroupRingElement:
    """
    Sparse element of Q[G]; zero coefficients are never stored.
    """

    def __init__(self, ext: ExtendedGroup, coefficients: dict | None = None) -> None:
        self.ext = ext
        self.coefficients = {k: Fraction(v) for k, v in (coefficients or {}).items() if v}

    @classmethod
    def delta(cls, ext: ExtendedGroup, x: GalElement) -> "GroupRingElement":
        return cls(ext, {x: 1})

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, x: GalElement) -> Fraction:
        return self.coefficients.get(x, Fraction(0))

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        out = dict(self.coefficients)
        for x, c in other.coefficients.items():
            out[x] = out.get(x, 0) + c
        return GroupRingElement(self.ext, out)

    def __mul__(self, scalar) -> "GroupRingElement":
        if isinstance(scalar, GroupRingElement):
            return self.convolve(scalar)
        return GroupRingElement(self.ext, {x: c * scalar for x, c in self.coefficients.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.coefficients == other.coefficients

    __hash__ = None

    def convolve(self, other: "GroupRingElement") -> "GroupRingElement":
        base = self.ext.base
        out: dict = defaultdict(Fraction)
        for x, a in self.coefficients.items():
            for y, b in other.coefficients.items():
                out[GalElement(base.multiply(x.g, y.g), x.r ^ y.r)] += a * b
        return GroupRingElement(self.ext, out)

    def reflex(self) -> "GroupRingElement":
        """
        The coefficient of x becomes the coefficient of x^-1.
        """
        return GroupRingElement(
            self.ext, {self.ext.invert(x): c for x, c in self.coefficients.items()}
        )

    def class_average(self) -> ExtClassFunction:
        """
        Projection onto class functions: the average of the coefficients over
        each conjugacy class, which is (1/|G|) sum_s s X s^-1.
        """
        totals: dict = defaultdict(Fraction)
        for x, c in self.coefficients.items():
            totals[self.ext.classify(x)] += c
        values = {
            cls.label: totals[cls.label] / cls.size
            for cls in self.ext.classes
            if cls.label in totals
        }
        return ExtClassFunction(self.ext, values)


def extend_cm_type(ext: ExtendedGroup, phi: CMType) -> GroupRingElement:
    """
    Phi^c: the full coset h B in the slot of every point x = h * inf, carrying
    the slot's bit as rho component.
    """
    base = ext.base
    check_same_q(base, phi)
    borel = base.borel_elements()
    coefficients = {}
    for index, h in base.coset_rep_for_point.items():
        r = phi.bits[index]
        for b in borel:
            coefficients[GalElement(base.multiply(h, b), r)] = 1
    return GroupRingElement(ext, coefficients)
