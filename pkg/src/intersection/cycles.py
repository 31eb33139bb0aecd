"""
Degenerate cycles D_{I,J,K,...} and the reduction

    l_i * D_{I,J,K,...} = D_{(IJ),K,...} + D_{(IK),J,...} - D_{I,(JK),...},   i in I

which takes any top-degree monomial in the l_i down to 3-part cycles, each of
them a point or empty.
"""
import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .partitions import Partition
from cohomology.ring import Monomial
from geometry.weights import WeightVector, is_short, require_smooth
from utils.errors import TooFewParts, WrongDegree

logger = logging.getLogger(__name__)

# (partition, index of the part holding i, indices of the other parts) -> (J, K)
PartChooser = Callable[[Partition, int, Sequence[int]], Tuple[int, int]]


def smallest_minima(partition: Partition, own: int, others: Sequence[int]) -> Tuple[int, int]:
    """Default rule: the two other parts with the smallest minima."""
    return others[0], others[1]


class CycleSum:
    """Integer combination of partitions. Treated as immutable."""

    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Dict[Partition, int]] = None):
        self._terms = {p: int(c) for p, c in (terms or {}).items() if c}

    @classmethod
    def fundamental(cls, n: int) -> "CycleSum":
        return cls({Partition.singletons(n): 1})

    def items(self) -> List[Tuple[Partition, int]]:
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def coefficient(self, partition: Partition) -> int:
        return self._terms.get(partition, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def part_counts(self) -> set:
        return {len(p) for p in self._terms}

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "CycleSum") -> "CycleSum":
        terms = dict(self._terms)
        for p, c in other._terms.items():
            terms[p] = terms.get(p, 0) + c
        return CycleSum(terms)

    def scale(self, factor: int) -> "CycleSum":
        return CycleSum({p: c * factor for p, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, CycleSum) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def render(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for partition, coeff in self.items():
            body = f"D{partition.render()}" if abs(coeff) == 1 else f"{abs(coeff)}*D{partition.render()}"
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.render()


def stability_of_partition(m: WeightVector, partition: Partition) -> bool:
    """False when the cycle vanishes: fewer than 3 parts, or a part that is not Short."""
    if len(partition) < 3:
        return False
    return all(is_short(m, part) for part in partition.parts)


def point_count(m: WeightVector, partition: Partition) -> int:
    """1 if the three part masses satisfy the strict triangle inequality, else 0."""
    if len(partition) < 3:
        raise TooFewParts(len(partition), 3)
    if len(partition) > 3:
        raise ValueError(f"point_count needs a 3-part partition, got {partition}")
    masses = [m.integer_mass(part) for part in partition.parts]
    return 1 if 2 * max(masses) < sum(masses) else 0


def multiply_l_into_cycle(m: WeightVector, i: int, cycles: CycleSum,
                          chooser: Optional[PartChooser] = None) -> CycleSum:
    """
    Multiply l_i (1-based) into every cycle of the sum, dropping unstable results.

    Raises:
        TooFewParts: If some partition has fewer than 4 parts
    """
    chooser = chooser or smallest_minima
    result: Dict[Partition, int] = {}
    for partition, coeff in cycles.items():
        if len(partition) < 4:
            raise TooFewParts(len(partition), 4)
        own = partition.part_index(i - 1)
        others = [index for index in range(len(partition)) if index != own]
        j, k = chooser(partition, own, others)
        if len({own, j, k}) != 3:
            raise ValueError(f"chooser returned parts {j}, {k} for own part {own}")
        for glued, sign in ((partition.merge(own, j), 1),
                            (partition.merge(own, k), 1),
                            (partition.merge(j, k), -1)):
            if stability_of_partition(m, glued):
                result[glued] = result.get(glued, 0) + sign * coeff
    return CycleSum(result)


def count_points(m: WeightVector, cycles: CycleSum) -> int:
    return sum(coeff * point_count(m, partition) for partition, coeff in cycles.items())


def reduction_sequence(monomial: Monomial, gamma: int = 1) -> List[int]:
    """Indices to multiply in: J ascending, then gamma twice for each factor of p."""
    return list(monomial.indices) + [gamma] * (2 * monomial.p_pow)


def evaluate_monomial_by_cycles(m: WeightVector, monomial: Monomial, gamma: int = 1,
                                chooser: Optional[PartChooser] = None) -> int:
    """
    Top intersection number of l_J p^k by cycle reduction from the fundamental class.

    Raises:
        NotSmooth: If m lies on a wall
        WrongDegree: Unless |J| + 2k = n - 3
    """
    require_smooth(m)
    top = m.n - 3
    if monomial.degree != top:
        raise WrongDegree(monomial.degree, top)
    if monomial.l_set >> m.n:
        raise ValueError(f"monomial {monomial} uses an index above {m.n}")
    if not 1 <= gamma <= m.n:
        raise ValueError(f"gamma {gamma} outside 1..{m.n}")

    cycles = CycleSum.fundamental(m.n)
    for i in reduction_sequence(monomial, gamma):
        cycles = multiply_l_into_cycle(m, i, cycles, chooser)
        if cycles.is_zero():
            return 0
    value = count_points(m, cycles)
    logger.debug(f"cycles: {monomial} on {m} = {value}")
    return value


def degree_on_cycle(m: WeightVector, i: int, partition: Partition,
                    chooser: Optional[PartChooser] = None) -> int:
    """l_i evaluated on a 4-part cycle (a curve)."""
    if len(partition) != 4:
        raise ValueError(f"degree_on_cycle needs a 4-part partition, got {partition}")
    return count_points(m, multiply_l_into_cycle(m, i, CycleSum({partition: 1}), chooser))
