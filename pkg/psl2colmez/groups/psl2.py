"""
The group PSL2(F_q) and its action on P1(F_q).
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache

import networkx as nx
import numpy as np

from ..fields.finite_field import (
    FieldConfig,
    FieldElement,
    FieldMismatchError,
    QuadExtElement,
    RepSetA,
    field_of_order,
)


######### -------------------- Custom Errors ######### --------------------
class BadDeterminantError(ValueError):
    pass


######### -------------------- Labels ######### --------------------
class ClassKind(str, Enum):
    IDENTITY = "Identity"
    UNIPOTENT_SQUARE = "UnipotentSquare"
    UNIPOTENT_NONSQUARE = "UnipotentNonsquare"
    SPLIT = "Split"
    NONSPLIT = "NonSplit"
    TRACE_ZERO = "TraceZero"


_KIND_ORDER = {kind: i for i, kind in enumerate(ClassKind)}
_KIND_SHORT = {
    ClassKind.IDENTITY: "Id",
    ClassKind.UNIPOTENT_SQUARE: "U_sq",
    ClassKind.UNIPOTENT_NONSQUARE: "U_nsq",
    ClassKind.SPLIT: "split",
    ClassKind.NONSPLIT: "nonsplit",
    ClassKind.TRACE_ZERO: "tr0",
}


@dataclass(frozen=True)
class ConjClassLabel:
    """
    Conjugacy class label. Split classes carry the canonical eigenvalue x of
    {+-x, +-1/x}; non-split classes carry (re, im) of the canonical eigenvalue
    re + sqrt(Delta) im of {+-z, +-1/z}. Both as integer encodings.
    """

    kind: ClassKind
    parameter: tuple[int, ...] = ()

    def sort_key(self) -> tuple:
        return (_KIND_ORDER[self.kind], self.parameter)

    def __lt__(self, other: "ConjClassLabel") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        short = _KIND_SHORT[self.kind]
        if self.parameter:
            return f"{short}({','.join(str(v) for v in self.parameter)})"
        return short


IDENTITY = ConjClassLabel(ClassKind.IDENTITY)
UNIPOTENT_SQUARE = ConjClassLabel(ClassKind.UNIPOTENT_SQUARE)
UNIPOTENT_NONSQUARE = ConjClassLabel(ClassKind.UNIPOTENT_NONSQUARE)
TRACE_ZERO = ConjClassLabel(ClassKind.TRACE_ZERO)


@dataclass(frozen=True)
class ConjugacyClass:
    label: object
    size: int
    representative: object


@dataclass(frozen=True, order=True)
class P1Point:
    """
    A point of P1(F_q). Index 0 is infinity, index 1 + v the affine point with
    encoding v.
    """

    index: int

    @classmethod
    def infinity(cls) -> "P1Point":
        return cls(0)

    @classmethod
    def affine(cls, x: FieldElement) -> "P1Point":
        return cls(1 + x.value)

    @property
    def is_infinity(self) -> bool:
        return self.index == 0

    @property
    def coordinate(self) -> int | None:
        return None if self.index == 0 else self.index - 1

    def __str__(self) -> str:
        return "inf" if self.index == 0 else str(self.index - 1)


######### -------------------- Matrices ######### --------------------
class ProjectiveMatrix:
    """
    Sign-canonical determinant one matrix [[a, b], [c, d]] standing for its
    class in PSL2(F_q).
    """

    __slots__ = ("group", "key")

    def __init__(self, group: "PSL2", key: tuple[int, int, int, int]) -> None:
        self.group = group
        self.key = key

    @property
    def a(self) -> FieldElement:
        return FieldElement(self.group.field, self.key[0])

    @property
    def b(self) -> FieldElement:
        return FieldElement(self.group.field, self.key[1])

    @property
    def c(self) -> FieldElement:
        return FieldElement(self.group.field, self.key[2])

    @property
    def d(self) -> FieldElement:
        return FieldElement(self.group.field, self.key[3])

    @property
    def trace(self) -> FieldElement:
        return self.a + self.d

    def __mul__(self, other: "ProjectiveMatrix") -> "ProjectiveMatrix":
        return self.group.multiply(self, other)

    def inverse(self) -> "ProjectiveMatrix":
        return self.group.invert(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectiveMatrix):
            return NotImplemented
        return self.key == other.key and self.group.field == other.group.field

    def __hash__(self) -> int:
        return hash(self.key)

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"

    __repr__ = __str__


######### -------------------- Group ######### --------------------
class PSL2:
    """
    PSL2(F_q) with its Borel subgroup B (upper triangular), unipotent subgroup
    U, coset representatives {1, w, n_-(i)} of G/B and the Mobius action on
    P1(F_q).

    Element lists, action tables and class data are built lazily and then
    shared read-only.
    """

    def __init__(self, field: FieldConfig, rep_set: RepSetA | None = None) -> None:
        self.field = field
        self.q = field.q
        self.rep_set = rep_set or field.representative_set_A()
        self._rep_values = self.rep_set.values
        self.order = self.q * (self.q**2 - 1) // 2
        self.delta = field.fixed_nonsquare()

        self._two = field.add(1, 1)
        self._minus_two = field.neg(self._two)
        self._four = field.add(self._two, self._two)
        self._half = field.inv(self._two)

        self.identity = self.matrix(1, 0, 0, 1)
        self.w = self.matrix(0, 1, -1, 0)
        logging.debug(f"Built PSL2(F_{self.q}) of order {self.order}")

    def __str__(self) -> str:
        return f"PSL2(F_{self.q})"

    __repr__ = __str__

    # ---------------------------------------------------------------
    # construction
    # ---------------------------------------------------------------
    def _canonical_key(self, key: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
        for entry in key:
            if entry:
                if entry in self._rep_values:
                    return key
                neg = self.field.neg
                return (neg(key[0]), neg(key[1]), neg(key[2]), neg(key[3]))
        raise BadDeterminantError("The zero matrix is not invertible")

    def canonicalize(self, a, b, c, d) -> ProjectiveMatrix:
        F = self.field
        a, b, c, d = (F(x).value for x in (a, b, c, d))
        det = F.sub(F.mul(a, d), F.mul(b, c))
        if det != 1:
            raise BadDeterminantError(f"Determinant is {F.element(det)}, not 1")
        return ProjectiveMatrix(self, self._canonical_key((a, b, c, d)))

    matrix = canonicalize

    def _from_key(self, key: tuple[int, int, int, int]) -> ProjectiveMatrix:
        return ProjectiveMatrix(self, self._canonical_key(key))

    def n_minus(self, i) -> ProjectiveMatrix:
        return self.matrix(1, 0, i, 1)

    def n_plus(self, b) -> ProjectiveMatrix:
        return self.matrix(1, b, 0, 1)

    def diagonal(self, x) -> ProjectiveMatrix:
        x = self.field(x)
        return self.matrix(x, 0, 0, x.inverse())

    # ---------------------------------------------------------------
    # group law
    # ---------------------------------------------------------------
    def _check(self, g: ProjectiveMatrix) -> None:
        if g.group is not self and g.group.field != self.field:
            raise FieldMismatchError(f"{g} is not an element of {self}")

    def multiply(self, g: ProjectiveMatrix, h: ProjectiveMatrix) -> ProjectiveMatrix:
        self._check(g)
        self._check(h)
        add, mul = self.field.add, self.field.mul
        a1, b1, c1, d1 = g.key
        a2, b2, c2, d2 = h.key
        key = (
            add(mul(a1, a2), mul(b1, c2)),
            add(mul(a1, b2), mul(b1, d2)),
            add(mul(c1, a2), mul(d1, c2)),
            add(mul(c1, b2), mul(d1, d2)),
        )
        return self._from_key(key)

    def invert(self, g: ProjectiveMatrix) -> ProjectiveMatrix:
        self._check(g)
        neg = self.field.neg
        a, b, c, d = g.key
        return self._from_key((d, neg(b), neg(c), a))

    def conjugate(self, g: ProjectiveMatrix, x: ProjectiveMatrix) -> ProjectiveMatrix:
        """
        x g x^-1
        """
        return self.multiply(self.multiply(x, g), self.invert(x))

    # ---------------------------------------------------------------
    # elements and subgroups
    # ---------------------------------------------------------------
    @cached_property
    def elements(self) -> tuple[ProjectiveMatrix, ...]:
        """
        All q(q^2-1)/2 elements, enumerated directly in canonical form.
        """
        F = self.field
        q = self.q
        reps = sorted(self._rep_values)
        elements = []
        for a in reps:
            a_inv = F.inv(a)
            for b in range(q):
                for c in range(q):
                    d = F.mul(F.add(1, F.mul(b, c)), a_inv)
                    elements.append(ProjectiveMatrix(self, (a, b, c, d)))
        for b in reps:
            c = F.neg(F.inv(b))
            for d in range(q):
                elements.append(ProjectiveMatrix(self, (0, b, c, d)))
        return tuple(elements)

    @cached_property
    def element_index(self) -> dict[tuple[int, int, int, int], int]:
        return {g.key: i for i, g in enumerate(self.elements)}

    def index_of(self, g: ProjectiveMatrix) -> int:
        return self.element_index[g.key]

    def random_element(self, rng: np.random.Generator) -> ProjectiveMatrix:
        return self.elements[int(rng.integers(len(self.elements)))]

    def borel_elements(self) -> list[ProjectiveMatrix]:
        F = self.field
        return [
            ProjectiveMatrix(self, (a, b, 0, F.inv(a)))
            for a in sorted(self._rep_values)
            for b in range(self.q)
        ]

    def unipotent_elements(self) -> list[ProjectiveMatrix]:
        return [ProjectiveMatrix(self, (1, b, 0, 1)) for b in range(self.q)]

    def coset_reps(self) -> list[tuple[P1Point, ProjectiveMatrix]]:
        """
        (h * inf, h) for h = 1, w, n_-(i) with i != 0.
        """
        reps = [self.identity, self.w]
        reps += [self.n_minus(i) for i in self.field.nonzero_elements()]
        return [(self.mobius_act(h, P1Point.infinity()), h) for h in reps]

    @cached_property
    def coset_rep_for_point(self) -> dict[int, ProjectiveMatrix]:
        return {point.index: h for point, h in self.coset_reps()}

    def generators(self) -> list[ProjectiveMatrix]:
        """
        n_+(e) and n_-(e) for e in an F_p-basis of F_q.
        """
        basis = self.field.basis()
        return [self.n_plus(e) for e in basis] + [self.n_minus(e) for e in basis]

    # ---------------------------------------------------------------
    # action on P1
    # ---------------------------------------------------------------
    @cached_property
    def points(self) -> tuple[P1Point, ...]:
        return tuple(P1Point(i) for i in range(self.q + 1))

    def point(self, x=None) -> P1Point:
        if x is None:
            return P1Point.infinity()
        return P1Point.affine(self.field(x))

    def _act_index(self, key: tuple[int, int, int, int], index: int) -> int:
        F = self.field
        a, b, c, d = key
        if index == 0:
            return 0 if c == 0 else 1 + F.mul(a, F.inv(c))
        z = index - 1
        den = F.add(F.mul(c, z), d)
        if den == 0:
            return 0
        return 1 + F.mul(F.add(F.mul(a, z), b), F.inv(den))

    def mobius_act(self, g: ProjectiveMatrix, x: P1Point) -> P1Point:
        """
        z -> (az + b) / (cz + d).
        """
        self._check(g)
        return P1Point(self._act_index(g.key, x.index))

    def permutation(self, g: ProjectiveMatrix) -> tuple[int, ...]:
        """
        Image of every point index under g.
        """
        return tuple(self._act_index(g.key, i) for i in range(self.q + 1))

    def fixed_point_count(self, g: ProjectiveMatrix) -> int:
        return sum(1 for i, j in enumerate(self.permutation(g)) if i == j)

    @cached_property
    def action_table(self) -> np.ndarray:
        """
        action_table[n, x] is the index of elements[n] * x.
        """
        return np.array([self.permutation(g) for g in self.elements], dtype=np.intp)

    @cached_property
    def generator_permutations(self) -> list[tuple[int, ...]]:
        return [self.permutation(g) for g in self.generators()]

    # ---------------------------------------------------------------
    # conjugacy classes
    # ---------------------------------------------------------------
    def _split_parameter(self, lam: int) -> int:
        F = self.field
        inv = F.inv(lam)
        return min(lam, F.neg(lam), inv, F.neg(inv))

    def _nonsplit_parameter(self, x: int, y: int) -> tuple[int, int]:
        neg = self.field.neg
        return min((x, y), (x, neg(y)), (neg(x), neg(y)), (neg(x), y))

    def classify(self, g: ProjectiveMatrix) -> ConjClassLabel:
        F = self.field
        a, b, c, d = g.key
        if g.key == self.identity.key:
            return IDENTITY

        t = F.add(a, d)
        if t == self._two or t == self._minus_two:
            # normalise to trace 2, then [1, t; 0, 1] with t = b, or -c when b = 0
            if t == self._minus_two:
                b, c = F.neg(b), F.neg(c)
            entry = b if b != 0 else F.neg(c)
            return UNIPOTENT_SQUARE if F.is_square_value(entry) else UNIPOTENT_NONSQUARE

        if t == 0:
            return TRACE_ZERO

        disc = F.sub(F.mul(t, t), self._four)
        if F.is_square_value(disc):
            lam = F.mul(F.add(t, F.sqrt_value(disc)), self._half)
            return ConjClassLabel(ClassKind.SPLIT, (self._split_parameter(lam),))

        s = F.sqrt_value(F.mul(disc, F.inv(self.delta.value)))
        x, y = F.mul(t, self._half), F.mul(s, self._half)
        return ConjClassLabel(ClassKind.NONSPLIT, self._nonsplit_parameter(x, y))

    def trace_fiber(self, g: ProjectiveMatrix) -> tuple[str, int]:
        """
        Coarse classification by trace up to sign, with the trace +-2 fibre
        split into identity and the two unipotent classes.
        """
        label = self.classify(g)
        if label.kind in (ClassKind.SPLIT, ClassKind.NONSPLIT):
            F = self.field
            t = F.add(g.key[0], g.key[3])
            return ("trace", min(t, F.neg(t)))
        return (label.kind.value, 0)

    @cached_property
    def classes(self) -> tuple[ConjugacyClass, ...]:
        F = self.field
        q = self.q
        minus_one = F.neg(1)
        unipotent_size = (q * q - 1) // 2

        classes = [
            ConjugacyClass(IDENTITY, 1, self.identity),
            ConjugacyClass(UNIPOTENT_SQUARE, unipotent_size, self.n_plus(1)),
            ConjugacyClass(UNIPOTENT_NONSQUARE, unipotent_size, self.n_plus(self.delta)),
        ]

        split = sorted(
            {
                self._split_parameter(x)
                for x in range(1, q)
                if F.mul(x, x) not in (1, minus_one)
            }
        )
        for x in split:
            label = ConjClassLabel(ClassKind.SPLIT, (x,))
            classes.append(ConjugacyClass(label, q * (q + 1), self.diagonal(F.element(x))))

        nonsplit = sorted(
            {
                self._nonsplit_parameter(z.re.value, z.im.value)
                for z in F.norm_one_elements
                if z.re.value != 0 and z.im.value != 0
            }
        )
        delta = self.delta.value
        for x, y in nonsplit:
            label = ConjClassLabel(ClassKind.NONSPLIT, (x, y))
            rep = self.matrix(F.element(x), F.element(F.mul(delta, y)), F.element(y), F.element(x))
            classes.append(ConjugacyClass(label, q * (q - 1), rep))

        trace_zero_size = q * (q - 1) // 2 if q % 4 == 3 else q * (q + 1) // 2
        classes.append(ConjugacyClass(TRACE_ZERO, trace_zero_size, self.w))

        logging.debug(f"{self}: {len(classes)} conjugacy classes")
        return tuple(classes)

    def conjugacy_classes(self) -> tuple[ConjugacyClass, ...]:
        return self.classes

    @cached_property
    def class_position(self) -> dict[ConjClassLabel, int]:
        return {cls.label: i for i, cls in enumerate(self.classes)}

    def class_of(self, label: ConjClassLabel) -> ConjugacyClass:
        return self.classes[self.class_position[label]]

    @cached_property
    def class_index(self) -> np.ndarray:
        """
        class_index[n] is the position in classes of the class of elements[n].
        """
        position = self.class_position
        return np.array([position[self.classify(g)] for g in self.elements], dtype=np.intp)

    @cached_property
    def class_sizes(self) -> np.ndarray:
        return np.array([cls.size for cls in self.classes], dtype=np.int64)

    def brute_force_classes(self) -> list[set[ProjectiveMatrix]]:
        """
        Connected components of the graph joining g to s g s^-1 for each
        generator s. These are exactly the conjugacy classes.
        """
        graph = nx.Graph()
        graph.add_nodes_from(self.elements)
        generators = self.generators()
        for g in self.elements:
            for s in generators:
                graph.add_edge(g, self.conjugate(g, s))
        return [set(component) for component in nx.connected_components(graph)]


@lru_cache(maxsize=None)
def make_group(q: int) -> PSL2:
    """
    PSL2(F_q) with the default representative set, shared per q.
    """
    return PSL2(field_of_order(q))
