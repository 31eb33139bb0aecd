"""
The Chow ring of a smooth polygon space.

Generators l_1..l_n and p with l_i^2 = p, and for every Long set I the
relation

    sum over 2k + r = |I| - 1 of p^k * sigma_r(l_i : i in I) = 0.

Elements are kept in normal form: rational combinations of monomials
l_J * p^k with J squarefree. Products rewrite l_i * l_i to p but are not
reduced modulo the Long-set relations; graded dimensions of the quotient
come from exact linear algebra degree by degree.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Set, Tuple, Union

from .linalg import rank
from geometry.weights import (
    WeightVector,
    indices_of,
    iter_bits,
    long_subsets,
    popcount,
    require_smooth,
    format_rational,
)
from utils.errors import DegreeOutOfRange

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


@dataclass(frozen=True, order=False)
class Monomial:
    """l_J * p^k with J a squarefree set of generator indices."""

    l_set: int
    p_pow: int = 0

    def __post_init__(self):
        if self.l_set < 0 or self.p_pow < 0:
            raise ValueError(f"invalid monomial l-set {self.l_set} p-power {self.p_pow}")

    @classmethod
    def of(cls, indices: Iterable[int] = (), p_pow: int = 0) -> "Monomial":
        bits = 0
        for i in indices:
            if i < 1:
                raise ValueError(f"generator index {i} must be positive")
            if bits & (1 << (i - 1)):
                raise ValueError(f"l{i} repeated; write p for l{i}^2")
            bits |= 1 << (i - 1)
        return cls(bits, p_pow)

    @property
    def degree(self) -> int:
        return popcount(self.l_set) + 2 * self.p_pow

    @property
    def indices(self) -> Tuple[int, ...]:
        return indices_of(self.l_set)

    def sort_key(self) -> Tuple[int, int, int]:
        return self.degree, self.p_pow, self.l_set

    def __mul__(self, other: "Monomial") -> "Monomial":
        # each shared index contributes l_i^2 = p
        return Monomial(self.l_set ^ other.l_set, self.p_pow + other.p_pow + popcount(self.l_set & other.l_set))

    def render(self) -> str:
        factors = [f"l{i}" for i in self.indices]
        if self.p_pow == 1:
            factors.append("p")
        elif self.p_pow > 1:
            factors.append(f"p^{self.p_pow}")
        return "*".join(factors) if factors else "1"

    def __str__(self) -> str:
        return self.render()


ONE = Monomial(0, 0)


class RingElement:
    """Finite rational combination of normal-form monomials. Treated as immutable."""

    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        cleaned: Dict[Monomial, Fraction] = {}
        for monomial, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                cleaned[monomial] = coeff
        self._terms = cleaned

    @classmethod
    def zero(cls) -> "RingElement":
        return cls()

    @classmethod
    def one(cls) -> "RingElement":
        return cls({ONE: 1})

    @classmethod
    def l(cls, i: int) -> "RingElement":
        return cls({Monomial.of((i,)): 1})

    @classmethod
    def p(cls, power: int = 1) -> "RingElement":
        return cls({Monomial(0, power): 1})

    @classmethod
    def of_monomial(cls, monomial: Monomial, coeff: Scalar = 1) -> "RingElement":
        return cls({monomial: coeff})

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms in monomial order: degree, then p-power, then l-set."""
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self._terms.get(monomial, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> Set[int]:
        return {monomial.degree for monomial in self._terms}

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    @property
    def max_index(self) -> int:
        return max((monomial.l_set.bit_length() for monomial in self._terms), default=0)

    def __add__(self, other: "RingElement") -> "RingElement":
        terms = dict(self._terms)
        for monomial, coeff in other._terms.items():
            terms[monomial] = terms.get(monomial, 0) + coeff
        return RingElement(terms)

    def __neg__(self) -> "RingElement":
        return RingElement({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def scale(self, factor: Scalar) -> "RingElement":
        factor = Fraction(factor)
        return RingElement({m: c * factor for m, c in self._terms.items()})

    def __mul__(self, other: Union["RingElement", Scalar]) -> "RingElement":
        if not isinstance(other, RingElement):
            return self.scale(other)
        product: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                monomial = m1 * m2
                product[monomial] = product.get(monomial, 0) + c1 * c2
        return RingElement(product)

    def __rmul__(self, other: Scalar) -> "RingElement":
        return self.scale(other)

    def __pow__(self, exponent: int) -> "RingElement":
        if exponent < 0:
            raise ValueError("negative powers are not defined")
        result = RingElement.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, RingElement):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == RingElement.one().scale(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def render(self) -> str:
        """``l1*l2 + p``, ``1/2*l1 - 1/2*l2``; ``0`` for the zero element."""
        if not self._terms:
            return "0"
        pieces = []
        for monomial, coeff in self.items():
            magnitude = abs(coeff)
            body = monomial.render()
            if magnitude != 1:
                body = format_rational(magnitude) if monomial == ONE else f"{format_rational(magnitude)}*{body}"
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"RingElement({self.render()!r})"

    def to_json(self) -> List[dict]:
        return [
            {'coeff': format_rational(coeff),
             'l': list(monomial.indices),
             'p': monomial.p_pow}
            for monomial, coeff in self.items()
        ]

    @classmethod
    def from_json(cls, payload: Iterable[dict]) -> "RingElement":
        terms: Dict[Monomial, Fraction] = {}
        for term in payload:
            monomial = Monomial.of(term['l'], int(term['p']))
            terms[monomial] = terms.get(monomial, 0) + Fraction(term['coeff'])
        return cls(terms)


def multiply(a: RingElement, b: RingElement) -> RingElement:
    """Product with l_i * l_i rewritten to p; no reduction by Long-set relations."""
    return a * b


def monomials_of_degree(n: int, degree: int) -> List[Monomial]:
    """Normal-form monomials of one degree, in monomial order."""
    result = []
    for p_pow in range(degree // 2 + 1):
        size = degree - 2 * p_pow
        if size > n:
            continue
        sets = sorted(sum(1 << i for i in combo) for combo in itertools.combinations(range(n), size))
        result.extend(Monomial(bits, p_pow) for bits in sets)
    return result


def relation_for_long_set(bits: int) -> RingElement:
    """sum over 2k + r = |I| - 1 of p^k sigma_r(l_I), expanded."""
    members = list(iter_bits(bits))
    size = len(members)
    terms: Dict[Monomial, int] = {}
    for r in range(size - 1, -1, -2):
        p_pow = (size - 1 - r) // 2
        for combo in itertools.combinations(members, r):
            terms[Monomial(sum(1 << i for i in combo), p_pow)] = 1
    return RingElement(terms)


@dataclass(frozen=True)
class RingPresentation:
    """Generators l_1..l_n, p; implicit l_i^2 = p; one relation per Long set."""

    n: int
    long_sets: Tuple[int, ...]
    relations: Tuple[RingElement, ...]

    def __len__(self) -> int:
        return len(self.relations)

    def pairs(self) -> Iterator[Tuple[int, RingElement]]:
        return zip(self.long_sets, self.relations)

    def to_json(self) -> List[dict]:
        return [
            {'set': list(indices_of(bits)), 'degree': popcount(bits) - 1, 'relation': relation.to_json()}
            for bits, relation in self.pairs()
        ]


def presentation(m: WeightVector) -> RingPresentation:
    require_smooth(m)
    long_sets = tuple(subset.bits for subset in long_subsets(m))
    relations = tuple(relation_for_long_set(bits) for bits in long_sets)
    logger.debug(f"presentation of {m}: {len(relations)} relations")
    return RingPresentation(n=m.n, long_sets=long_sets, relations=relations)


def graded_dimension(m: WeightVector, degree: int,
                     ring_presentation: Optional[RingPresentation] = None) -> int:
    """
    Dimension of the degree-d part of the quotient ring.

    Ambient normal monomials of degree d, minus the rank of all products
    relation * monomial landing in degree d.

    Raises:
        NotSmooth: If m lies on a wall
        DegreeOutOfRange: Unless 0 <= d <= n - 3
    """
    require_smooth(m)
    top = m.n - 3
    if not 0 <= degree <= top:
        raise DegreeOutOfRange(degree, top)
    ring_presentation = ring_presentation or presentation(m)

    basis = monomials_of_degree(m.n, degree)
    column = {monomial: index for index, monomial in enumerate(basis)}

    def rows() -> Iterator[Dict[int, Fraction]]:
        for bits, relation in ring_presentation.pairs():
            shift = degree - (popcount(bits) - 1)
            if shift < 0:
                continue
            for monomial in monomials_of_degree(m.n, shift):
                product = relation * RingElement.of_monomial(monomial)
                yield {column[mono]: coeff for mono, coeff in product.items()}

    relation_rank = rank(rows(), len(basis))
    logger.debug(f"degree {degree} of {m}: {len(basis)} monomials, relation rank {relation_rank}")
    return len(basis) - relation_rank


def hilbert_function(m: WeightVector) -> List[int]:
    """All graded dimensions 0..n-3."""
    ring_presentation = presentation(m)
    return [graded_dimension(m, d, ring_presentation) for d in range(m.n - 2)]


def monomial_from_indices(indices: Iterable[int], p_pow: int, n: int) -> Monomial:
    indices = list(indices)
    outside = [i for i in indices if not 1 <= i <= n]
    if outside:
        raise ValueError(f"indices {outside} are not inside 1..{n}")
    return Monomial.of(indices, p_pow)
