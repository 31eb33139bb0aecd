"""
Quadrangle degenerations D_{IJKL}: the curves of the polygon space.

For a smooth vector with all four parts Short, exactly one pair-sum of each
complementary pairing is Long, so the three Long pairs form either a
triangle on three parts (the fourth part is distinguished) or a star at one
part (the center).
"""
import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from geometry.weights import (
    WeightVector,
    format_rational,
    is_long,
    is_short,
    iter_bits,
    render_subset,
    require_smooth,
)
from intersection.partitions import Partition, set_partitions
from utils.errors import InternalFault

logger = logging.getLogger(__name__)

PAIRS = tuple(itertools.combinations(range(4), 2))


class QuadrangleKind(Enum):
    TRIANGLE = "triangle"
    STAR = "star"


@dataclass(frozen=True)
class Quadrangle:
    """A nonzero 4-part cycle with its type; ``part`` indexes the distinguished part or center."""

    partition: Partition
    kind: QuadrangleKind
    part: int

    @property
    def special(self) -> int:
        return self.partition.parts[self.part]

    def render(self) -> str:
        label = "center" if self.kind is QuadrangleKind.STAR else "distinguished"
        return f"{self.kind.name} {label}={render_subset(self.special)} parts={self.partition.render()}"

    def __str__(self) -> str:
        return self.render()

    def to_json(self) -> dict:
        return {
            'kind': self.kind.value,
            'special': list(i + 1 for i in iter_bits(self.special)),
            'parts': self.partition.to_json(),
        }


@dataclass(frozen=True)
class DivisorCoefficients:
    """Coefficients a_1..a_n of D = sum a_i l_i."""

    a: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, 'a', tuple(Fraction(x) for x in self.a))

    @classmethod
    def ones(cls, n: int) -> "DivisorCoefficients":
        return cls((Fraction(1),) * n)

    @classmethod
    def of(cls, values: Sequence[Union[int, Fraction]], n: int) -> "DivisorCoefficients":
        if len(values) != n:
            raise ValueError(f"expected {n} coefficients, got {len(values)}")
        return cls(tuple(values))

    @property
    def n(self) -> int:
        return len(self.a)

    def mass(self, bits: int) -> Fraction:
        """a_I."""
        return sum((self.a[i] for i in iter_bits(bits)), Fraction(0))

    def __str__(self) -> str:
        return ",".join(format_rational(x) for x in self.a)


def classify_quadrangle(m: WeightVector, partition: Partition) -> Optional[Quadrangle]:
    """
    Type of a 4-part cycle, or None when the cycle vanishes.

    Raises:
        InternalFault: If the Long pair-sums are not one per pairing
    """
    if len(partition) != 4:
        raise ValueError(f"quadrangles have 4 parts, got {partition}")
    parts = partition.parts
    if not all(is_short(m, part) for part in parts):
        return None

    long_pairs = [(a, b) for a, b in PAIRS if is_long(m, parts[a] | parts[b])]
    pairings = {frozenset(((a, b), _complement(a, b))) for a, b in long_pairs}
    if len(long_pairs) != 3 or len(pairings) != 3:
        raise InternalFault(f"{partition} has Long pair-sums {long_pairs}, expected one per pairing")

    degree = [0] * 4
    for a, b in long_pairs:
        degree[a] += 1
        degree[b] += 1
    if 3 in degree:
        return Quadrangle(partition, QuadrangleKind.STAR, degree.index(3))
    return Quadrangle(partition, QuadrangleKind.TRIANGLE, degree.index(0))


def _complement(a: int, b: int) -> Tuple[int, int]:
    rest = tuple(x for x in range(4) if x not in (a, b))
    return rest[0], rest[1]


def quadrangles(m: WeightVector) -> List[Quadrangle]:
    """All nonzero quadrangles in canonical partition order."""
    require_smooth(m)
    found = []
    for partition in set_partitions(m.n, 4):
        quadrangle = classify_quadrangle(m, partition)
        if quadrangle is not None:
            found.append(quadrangle)
    logger.debug(f"{len(found)} quadrangles for {m}")
    return found


def quadrangle_l_degrees(quadrangle: Quadrangle) -> Tuple[int, ...]:
    """
    l_i . D_{IJKL} for i = 1..n: 2 on the distinguished part of a triangle and
    0 elsewhere; -1 on the center of a star and +1 elsewhere.
    """
    special = quadrangle.special
    n = quadrangle.partition.n
    if quadrangle.kind is QuadrangleKind.TRIANGLE:
        return tuple(2 if special >> i & 1 else 0 for i in range(n))
    return tuple(-1 if special >> i & 1 else 1 for i in range(n))


def divisor_degree(quadrangle: Quadrangle, coefficients: DivisorCoefficients) -> Fraction:
    """(sum a_i l_i) . D_{IJKL}."""
    degrees = quadrangle_l_degrees(quadrangle)
    if len(degrees) != coefficients.n:
        raise ValueError(f"{coefficients.n} coefficients for n = {len(degrees)}")
    return sum((a * d for a, d in zip(coefficients.a, degrees)), Fraction(0))
