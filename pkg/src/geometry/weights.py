"""
Weight vectors of polygon spaces and the Short/Long/Wall classification of subsets.

Indices are 1-based everywhere a user sees them and 0-based bit positions
internally. All comparisons are exact: weights are rescaled to the primitive
integer vector proportional to them, so ``2*m_I`` against ``m`` is an integer
comparison.
"""
import itertools
import logging
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property, reduce
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from utils.config import HARD_MAX_N, default_max_n
from utils.errors import (
    NonPositiveEntry,
    NotSmooth,
    PolygonInequalityViolated,
    TooFewSides,
    TooManySides,
    WeightParseError,
)

logger = logging.getLogger(__name__)

Number = Union[int, str, Fraction]

_RATIONAL = re.compile(r"^\s*(\d+)(?:\s*/\s*(\d+))?\s*$")


def popcount(bits: int) -> int:
    return bin(bits).count("1")


def iter_bits(bits: int) -> Iterator[int]:
    """Yield the 0-based positions of the set bits in ascending order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def indices_of(bits: int) -> Tuple[int, ...]:
    """1-based indices of a bitmask."""
    return tuple(i + 1 for i in iter_bits(bits))


def mask_of(indices: Iterable[int], n: int) -> int:
    """Bitmask of 1-based indices, each checked against ``1..n``."""
    bits = 0
    for i in indices:
        if not 1 <= i <= n:
            raise ValueError(f"index {i} outside 1..{n}")
        bits |= 1 << (i - 1)
    return bits


def render_subset(bits: int) -> str:
    return "{" + " ".join(str(i) for i in indices_of(bits)) + "}"


def parse_rational(text: str) -> Fraction:
    """Parse ``a`` or ``a/b`` with positive decimal integers."""
    match = _RATIONAL.match(text)
    if match is None:
        raise WeightParseError(text, "expected a or a/b with decimal integers")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise WeightParseError(text, "zero denominator")
    return Fraction(numerator, denominator)


def parse_weights(text: str) -> List[Fraction]:
    """Parse the comma-separated weight format, e.g. ``1,1,1,3/2``."""
    if not text or not text.strip():
        raise WeightParseError(text, "empty weight list")
    return [parse_rational(part) for part in text.split(",")]


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_weights(entries: Iterable[Fraction]) -> str:
    return ",".join(format_rational(e) for e in entries)


class SubsetClass(Enum):
    SHORT = "short"
    LONG = "long"
    WALL = "wall"

    def opposite(self) -> "SubsetClass":
        if self is SubsetClass.SHORT:
            return SubsetClass.LONG
        if self is SubsetClass.LONG:
            return SubsetClass.SHORT
        return SubsetClass.WALL


@dataclass(frozen=True)
class WeightVector:
    """Side lengths m_1..m_n of a polygon space, validated on construction."""

    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        entries = tuple(_coerce(e) for e in self.entries)
        object.__setattr__(self, 'entries', entries)
        n = len(entries)
        if n < 3:
            raise TooFewSides(n)
        if n > HARD_MAX_N:
            raise TooManySides(n, HARD_MAX_N)
        for i, value in enumerate(entries, start=1):
            if value <= 0:
                raise NonPositiveEntry(i, format_rational(value))
        total = sum(entries, Fraction(0))
        for i, value in enumerate(entries, start=1):
            if not 2 * value < total:
                raise PolygonInequalityViolated(i)

    @property
    def n(self) -> int:
        return len(self.entries)

    @cached_property
    def total(self) -> Fraction:
        return sum(self.entries, Fraction(0))

    @cached_property
    def primitive(self) -> Tuple[int, ...]:
        """The primitive positive integer vector proportional to the weights."""
        scale = reduce(_lcm, (e.denominator for e in self.entries), 1)
        scaled = [e.numerator * (scale // e.denominator) for e in self.entries]
        divisor = reduce(math.gcd, scaled)
        return tuple(s // divisor for s in scaled)

    @cached_property
    def primitive_total(self) -> int:
        return sum(self.primitive)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def mass(self, bits: int) -> Fraction:
        """Exact mass m_I of a subset."""
        return sum((self.entries[i] for i in iter_bits(bits)), Fraction(0))

    def integer_mass(self, bits: int) -> int:
        """Mass in primitive integer units."""
        w = self.primitive
        return sum(w[i] for i in iter_bits(bits))

    @cached_property
    def _half_tables(self) -> Tuple[int, List[int], List[int], List[int], List[int]]:
        low_bits = self.n // 2
        w = self.primitive
        low_mass, low_pop = _subset_table(w[:low_bits])
        high_mass, high_pop = _subset_table(w[low_bits:])
        return low_bits, low_mass, low_pop, high_mass, high_pop

    def subset_records(self, lo: int = 0, hi: Optional[int] = None) -> Iterator[Tuple[int, int, int]]:
        """
        Yield ``(bits, cardinality, integer mass)`` for bits in ``range(lo, hi)``.

        Masses are looked up in two tables over the low and high halves of
        the index set instead of being summed bit by bit.
        """
        if hi is None:
            hi = 1 << self.n
        low_bits, low_mass, low_pop, high_mass, high_pop = self._half_tables
        low_mask = (1 << low_bits) - 1
        for bits in range(lo, hi):
            low = bits & low_mask
            high = bits >> low_bits
            yield bits, low_pop[low] + high_pop[high], low_mass[low] + high_mass[high]

    @cached_property
    def wall(self) -> Optional[int]:
        """Smallest Wall subset in canonical order, or None for a smooth vector."""
        half = 1 << (self.n - 1)
        total = self.primitive_total
        if total % 2:
            return None
        # the smaller of a wall and its complement avoids the top index
        for bits, _, mass in self.subset_records(1, half):
            if 2 * mass == total:
                logger.debug(f"wall {render_subset(bits)} for {format_weights(self.entries)}")
                return bits
        return None

    def __str__(self) -> str:
        return format_weights(self.entries)

    @classmethod
    def from_text(cls, text: str, max_n: Optional[int] = None) -> "WeightVector":
        return new_weight_vector(parse_weights(text), max_n=max_n)


def _coerce(value: Number) -> Fraction:
    if isinstance(value, bool):
        raise TypeError("weights must be rationals, not booleans")
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("weights must be exact rationals; pass a Fraction or string")
    return Fraction(value)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _subset_table(weights: Sequence[int]) -> Tuple[List[int], List[int]]:
    masses = [0] * (1 << len(weights))
    pops = [0] * (1 << len(weights))
    for bits in range(1, len(masses)):
        low = bits & -bits
        rest = bits ^ low
        masses[bits] = masses[rest] + weights[low.bit_length() - 1]
        pops[bits] = pops[rest] + 1
    return masses, pops


@dataclass(frozen=True)
class SubsetMask:
    """A subset I of {1..n} together with its cardinality and mass m_I."""

    bits: int
    cardinality: int
    mass: Fraction

    @classmethod
    def of(cls, m: WeightVector, bits: int) -> "SubsetMask":
        _check_bits(m, bits)
        return cls(bits=bits, cardinality=popcount(bits), mass=m.mass(bits))

    @classmethod
    def from_indices(cls, m: WeightVector, indices: Iterable[int]) -> "SubsetMask":
        return cls.of(m, mask_of(indices, m.n))

    @property
    def indices(self) -> Tuple[int, ...]:
        return indices_of(self.bits)

    def complement(self, m: WeightVector) -> "SubsetMask":
        return SubsetMask.of(m, m.full_mask ^ self.bits)

    def __str__(self) -> str:
        return render_subset(self.bits)


def _check_bits(m: WeightVector, bits: int) -> None:
    if bits < 0 or bits >> m.n:
        raise ValueError(f"subset {bits:#x} is not contained in 1..{m.n}")


def _as_bits(m: WeightVector, subset: Union[SubsetMask, int]) -> int:
    bits = subset.bits if isinstance(subset, SubsetMask) else int(subset)
    _check_bits(m, bits)
    return bits


def new_weight_vector(entries: Sequence[Number], max_n: Optional[int] = None) -> WeightVector:
    """
    Validate a list of rationals as a weight vector.

    Args:
        entries: the weights m_1..m_n (ints, Fractions or ``a/b`` strings)
        max_n: side cap; defaults to ``POLYSPACE_MAX_N`` or 62

    Raises:
        TooFewSides, TooManySides, NonPositiveEntry, PolygonInequalityViolated
    """
    cap = default_max_n() if max_n is None else max_n
    if len(entries) > cap:
        raise TooManySides(len(entries), cap)
    return WeightVector(tuple(entries))


def _class_of_doubled(doubled: int, total: int) -> SubsetClass:
    if doubled < total:
        return SubsetClass.SHORT
    if doubled > total:
        return SubsetClass.LONG
    return SubsetClass.WALL


def classify_bits(m: WeightVector, bits: int) -> SubsetClass:
    return _class_of_doubled(2 * m.integer_mass(bits), m.primitive_total)


def classify_subset(m: WeightVector, subset: Union[SubsetMask, int]) -> SubsetClass:
    """Short iff 2*m_I < m, Long iff 2*m_I > m, Wall otherwise."""
    return classify_bits(m, _as_bits(m, subset))


def is_short(m: WeightVector, bits: int) -> bool:
    return 2 * m.integer_mass(bits) < m.primitive_total


def is_long(m: WeightVector, bits: int) -> bool:
    return 2 * m.integer_mass(bits) > m.primitive_total


def is_smooth(m: WeightVector) -> bool:
    """True iff no subset has exactly half the total mass."""
    return m.wall is None


def signed_sums_vanish(m: WeightVector) -> bool:
    """Brute force over the 2^(n-1) signed sums m_1 ± m_2 ± ... ± m_n."""
    w = m.primitive
    for signs in itertools.product((1, -1), repeat=m.n - 1):
        if w[0] + sum(s * x for s, x in zip(signs, w[1:])) == 0:
            return True
    return False


def require_smooth(m: WeightVector) -> None:
    """Raise NotSmooth naming a wall subset unless m is off every wall."""
    if m.wall is not None:
        raise NotSmooth(indices_of(m.wall))


@dataclass(frozen=True)
class MassiveReport:
    """Massive-point structure: one massive point gives P^(n-3), three give (P^1)^(n-3)."""

    one: Tuple[int, ...] = ()
    three: Tuple[Tuple[int, int, int], ...] = ()

    @property
    def is_generic(self) -> bool:
        return not self.one and not self.three

    def labels(self) -> List[str]:
        if self.is_generic:
            return ["Generic"]
        labels = [f"OneMassive({i})" for i in self.one]
        labels.extend(f"ThreeMassive({i},{j},{k})" for i, j, k in self.three)
        return labels


def massive_points(m: WeightVector) -> MassiveReport:
    require_smooth(m)
    w = m.primitive
    total = m.primitive_total
    n = m.n

    def heavy(i: int, j: int) -> bool:
        return 2 * (w[i] + w[j]) > total

    one = tuple(
        i + 1 for i in range(n)
        if all(heavy(i, j) for j in range(n) if j != i)
    )
    three = tuple(
        (i + 1, j + 1, k + 1)
        for i, j, k in itertools.combinations(range(n), 3)
        if heavy(i, j) and heavy(j, k) and heavy(i, k)
    )
    return MassiveReport(one=one, three=three)


def _subsets_of_class(m: WeightVector, wanted: SubsetClass) -> Iterator[SubsetMask]:
    total = m.primitive_total
    for bits, card, mass in m.subset_records():
        if _class_of_doubled(2 * mass, total) is not wanted:
            continue
        yield SubsetMask(bits=bits, cardinality=card, mass=Fraction(mass * m.total, total))


def long_subsets(m: WeightVector) -> Iterator[SubsetMask]:
    """Long subsets in ascending bitmask order."""
    return _subsets_of_class(m, SubsetClass.LONG)


def short_subsets(m: WeightVector) -> Iterator[SubsetMask]:
    return _subsets_of_class(m, SubsetClass.SHORT)


def subset_census(m: WeightVector) -> Dict[SubsetClass, int]:
    census = {cls: 0 for cls in SubsetClass}
    total = m.primitive_total
    for _, _, mass in m.subset_records():
        doubled = 2 * mass
        if doubled < total:
            census[SubsetClass.SHORT] += 1
        elif doubled > total:
            census[SubsetClass.LONG] += 1
        else:
            census[SubsetClass.WALL] += 1
    return census


@dataclass(frozen=True)
class ChamberSignature:
    """Canonical encoding of a chamber: n and the sorted list of Short subsets."""

    n: int
    short_sets: Tuple[int, ...]
    _lookup: frozenset = field(default=frozenset(), init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, '_lookup', frozenset(self.short_sets))

    def is_short(self, bits: int) -> bool:
        return bits in self._lookup

    def relabel(self, images: Sequence[int]) -> "ChamberSignature":
        """
        Rename index i to ``images[i-1]`` (1-based permutation).

        If m2 is m with side i moved to position images[i-1], then
        ``chamber_signature(m2) == chamber_signature(m).relabel(images)``.
        """
        if sorted(images) != list(range(1, self.n + 1)):
            raise ValueError(f"{list(images)} is not a permutation of 1..{self.n}")
        shifts = [image - 1 for image in images]
        moved = []
        for bits in self.short_sets:
            target = 0
            for i in iter_bits(bits):
                target |= 1 << shifts[i]
            moved.append(target)
        return ChamberSignature(n=self.n, short_sets=tuple(sorted(moved)))

    def to_json(self) -> dict:
        return {
            'n': self.n,
            'short': [list(indices_of(bits)) for bits in self.short_sets],
        }


def chamber_signature(m: WeightVector) -> ChamberSignature:
    require_smooth(m)
    total = m.primitive_total
    shorts = tuple(bits for bits, _, mass in m.subset_records() if 2 * mass < total)
    logger.debug(f"chamber of {m}: {len(shorts)} short sets")
    return ChamberSignature(n=m.n, short_sets=shorts)


def crossed_walls(m: WeightVector, other: WeightVector) -> List[SubsetMask]:
    """
    Walls separating the chambers of two smooth vectors with the same n.

    Each wall is reported once, by the side that is Short for ``m``.
    An empty list means both vectors lie in the same chamber.
    """
    if m.n != other.n:
        raise ValueError(f"cannot compare chambers with n={m.n} and n={other.n}")
    require_smooth(m)
    require_smooth(other)
    walls = []
    full = m.full_mask
    for bits in range(1 << (m.n - 1)):
        if is_short(m, bits) != is_short(other, bits):
            side = bits if is_short(m, bits) else full ^ bits
            walls.append(SubsetMask.of(m, side))
    return sorted(walls, key=lambda subset: subset.bits)
