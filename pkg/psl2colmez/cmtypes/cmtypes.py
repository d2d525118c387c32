"""
CM types as 0/1 assignments on P1(F_q) = PSL2(F_q)/B, the action of
PSL2(F_q) on them, and orbit counting.

Slot x of a CM type is the coset h B with h * inf = x (so inf is B, 0 is wB
and 1/i is n_-(i) B). A 1 bit puts the rho-twisted embedding in that slot.
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import networkx as nx
import numpy as np

from ..groups.psl2 import PSL2, P1Point, ProjectiveMatrix
from ..references.references import DEFAULTS


######### -------------------- Custom Errors ######### --------------------
class CMTypeError(ValueError):
    pass


class CensusMismatchError(Exception):
    pass


######### -------------------- CM types ######### --------------------
@dataclass(frozen=True, order=True)
class CMType:
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.bits) < 4 or any(b not in (0, 1) for b in self.bits):
            raise CMTypeError(f"Not a CM type bit sequence: {self.bits}")

    @classmethod
    def from_bitstring(cls, text: str) -> "CMType":
        text = str(text).strip()
        if not text or set(text) - {"0", "1"}:
            raise CMTypeError(f"CM types are written as 0/1 strings, got {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def from_points(cls, group: PSL2, points) -> "CMType":
        bits = [0] * (group.q + 1)
        for point in points:
            bits[point.index] = 1
        return cls(tuple(bits))

    @classmethod
    def from_cosets(cls, group: PSL2, reps) -> "CMType":
        """
        The CM type with bit 1 on the cosets h B for h in reps.
        """
        infinity = P1Point.infinity()
        return cls.from_points(group, [group.mobius_act(h, infinity) for h in reps])

    @classmethod
    def with_signature(cls, q: int, epsilon: int) -> "CMType":
        """
        The type with 1 bits on the first epsilon slots.
        """
        if not 0 <= epsilon <= q + 1:
            raise CMTypeError(f"Signature must lie in [0, {q + 1}], got {epsilon}")
        return cls(tuple([1] * epsilon + [0] * (q + 1 - epsilon)))

    @property
    def q(self) -> int:
        return len(self.bits) - 1

    @property
    def signature(self) -> int:
        return sum(self.bits)

    def complement(self) -> "CMType":
        return CMType(tuple(1 - b for b in self.bits))

    def support(self) -> list[int]:
        return [i for i, b in enumerate(self.bits) if b]

    def bitstring(self) -> str:
        return "".join(str(b) for b in self.bits)

    def __str__(self) -> str:
        return self.bitstring()


def check_same_q(group: PSL2, phi: CMType) -> None:
    if phi.q != group.q:
        raise CMTypeError(f"CM type of length {len(phi.bits)} does not match q = {group.q}")


def _permute(bits: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    new = [0] * len(bits)
    for x, bit in enumerate(bits):
        new[perm[x]] = bit
    return tuple(new)


def act(group: PSL2, g: ProjectiveMatrix, phi: CMType) -> CMType:
    """
    Transport of bits along the action: the new bit at g*x is the old bit at x.
    """
    check_same_q(group, phi)
    return CMType(_permute(phi.bits, group.permutation(g)))


def orbit(group: PSL2, phi: CMType) -> set[tuple[int, ...]]:
    check_same_q(group, phi)
    perms = group.generator_permutations
    seen = {phi.bits}
    queue = deque([phi.bits])
    while queue:
        bits = queue.popleft()
        for perm in perms:
            image = _permute(bits, perm)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return seen


def canonical_form(group: PSL2, phi: CMType) -> CMType:
    """
    Lexicographically least bit sequence in the orbit of phi.
    """
    return CMType(min(orbit(group, phi)))


def equivalent(group: PSL2, phi1: CMType, phi2: CMType, include_rho: bool = False) -> bool:
    check_same_q(group, phi1)
    check_same_q(group, phi2)
    targets = {phi2.bits}
    if include_rho:
        targets.add(phi2.complement().bits)
    if not any(sum(t) == phi1.signature for t in targets):
        return False
    return not orbit(group, phi1).isdisjoint(targets)


def stabilizer(group: PSL2, phi: CMType) -> list[ProjectiveMatrix]:
    check_same_q(group, phi)
    bits = np.array(phi.bits, dtype=np.int8)
    fixed = np.all(bits[group.action_table] == bits[None, :], axis=1)
    return [g for g, keep in zip(group.elements, fixed) if keep]


######### -------------------- Orbit counting ######### --------------------
def cycle_type(perm: tuple[int, ...]) -> list[int]:
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        lengths.append(length)
    return sorted(lengths)


@lru_cache(maxsize=None)
def class_cycle_types(group: PSL2) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """
    (class size, cycle lengths on P1) for every conjugacy class.
    """
    return tuple(
        (cls.size, tuple(cycle_type(group.permutation(cls.representative))))
        for cls in group.classes
    )


def _subset_polynomial(cycles) -> list[int]:
    """
    Coefficients of prod over cycles of (1 + x^length).
    """
    poly = [1]
    for length in cycles:
        shifted = [0] * length + poly
        poly = [a + b for a, b in zip(poly + [0] * length, shifted)]
    return poly


def count_orbits_burnside(group: PSL2, epsilon: int, include_rho: bool = False) -> int:
    """
    Number of orbits on epsilon-subsets of P1, as the average number of fixed
    subsets over the group. With include_rho, complementation is added to the
    group; it only merges orbits when 2 epsilon = q + 1.
    """
    n = group.q + 1
    if not 0 <= epsilon <= n:
        raise CMTypeError(f"Signature must lie in [0, {n}], got {epsilon}")

    total = 0
    for size, cycles in class_cycle_types(group):
        total += size * _subset_polynomial(cycles)[epsilon]
    if total % group.order:
        raise ArithmeticError(f"Burnside sum {total} is not divisible by {group.order}")

    if not include_rho or 2 * epsilon != n:
        return total // group.order

    # g composed with complementation fixes S iff S alternates along every cycle of g
    twisted = 0
    for size, cycles in class_cycle_types(group):
        if all(length % 2 == 0 for length in cycles):
            twisted += size * 2 ** len(cycles)
    return (total + twisted) // (2 * group.order)


def exhaustive_orbit_counts(group: PSL2, include_rho: bool = False) -> list[int]:
    """
    Orbit counts per signature from the connected components of the graph on
    all 2^(q+1) bit masks, with one edge per generator (and complementation
    when include_rho). With include_rho, signatures eps and q+1-eps report
    the same count.
    """
    n = group.q + 1
    full = (1 << n) - 1
    perms = group.generator_permutations

    graph = nx.Graph()
    graph.add_nodes_from(range(1 << n))
    for mask in range(1 << n):
        for perm in perms:
            image = 0
            for x in range(n):
                if mask >> x & 1:
                    image |= 1 << perm[x]
            graph.add_edge(mask, image)
        if include_rho:
            graph.add_edge(mask, full ^ mask)

    counts = [0] * (n + 1)
    sizes = [0] * (n + 1)
    for component in nx.connected_components(graph):
        epsilon = bin(next(iter(component))).count("1")
        if include_rho:
            # complementation joins signature eps to q+1-eps
            epsilon = min(epsilon, n - epsilon)
        counts[epsilon] += 1
        sizes[epsilon] += len(component)

    for epsilon in range(n + 1):
        expected = comb(n, epsilon)
        if include_rho:
            if 2 * epsilon > n:
                counts[epsilon] = counts[n - epsilon]
                continue
            if 2 * epsilon < n:
                expected += comb(n, n - epsilon)
        if sizes[epsilon] != expected:
            raise CensusMismatchError(f"Orbits of size-{epsilon} subsets do not partition them")
    return counts


@dataclass(frozen=True)
class CensusRow:
    q: int
    counts: tuple[int, ...]
    middle_with_rho: int | None = None
    exhaustive_checked: bool = False

    def row(self, start: int = 1, stop: int | None = None) -> tuple[int, ...]:
        stop = self.q + 1 if stop is None else min(stop, self.q + 1)
        return self.counts[start : stop + 1]

    @property
    def middle_differs(self) -> bool:
        if self.middle_with_rho is None:
            return False
        return self.middle_with_rho != self.counts[(self.q + 1) // 2]


def census(group: PSL2, max_epsilon: int | None = None, exhaustive: bool | None = None) -> CensusRow:
    """
    Burnside orbit counts for epsilon = 0 .. max_epsilon, cross-checked
    against exhaustive enumeration for small q.
    """
    q = group.q
    n = q + 1
    max_epsilon = n if max_epsilon is None else min(max_epsilon, n)
    if exhaustive is None:
        exhaustive = q <= DEFAULTS["exhaustive_census_max_q"]

    counts = tuple(count_orbits_burnside(group, epsilon) for epsilon in range(max_epsilon + 1))

    middle = n // 2
    middle_with_rho = None
    if max_epsilon >= middle:
        middle_with_rho = count_orbits_burnside(group, middle, include_rho=True)

    if exhaustive:
        brute = exhaustive_orbit_counts(group)
        if tuple(brute[: max_epsilon + 1]) != counts:
            raise CensusMismatchError(
                f"q={q}: Burnside counts {counts} != exhaustive counts {tuple(brute)}"
            )

    row = CensusRow(q, counts, middle_with_rho, exhaustive)
    if row.middle_differs:
        logging.warning(
            f"q={q}: at signature {middle} complementation merges orbits "
            f"({counts[middle]} -> {middle_with_rho})"
        )
    logging.info(f"Census q={q}: {counts[1:]}")
    return row
