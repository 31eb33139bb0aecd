"""
Ampleness of divisors sum a_i l_i and the two Fano tests.

A divisor is ample when it is positive on every quadrangle curve. The
anticanonical class is c_1 = sum l_i, so Fano is ampleness of (1, ..., 1);
the second test reads the same answer off the maximal degenerations.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from .quadrangles import (
    DivisorCoefficients,
    Quadrangle,
    QuadrangleKind,
    divisor_degree,
    quadrangles,
)
from cohomology.ring import RingElement
from geometry.weights import (
    SubsetMask,
    WeightVector,
    format_rational,
    iter_bits,
    popcount,
    require_smooth,
)
from intersection.divisors import divisor_class
from intersection.pairing import evaluate
from utils.errors import InternalFault

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AmpleVerdict:
    ample: bool
    certificate: Optional[Quadrangle] = None
    degree: Optional[Fraction] = None

    def __bool__(self) -> bool:
        return self.ample

    def to_json(self) -> dict:
        return {
            'ample': self.ample,
            'certificate': self.certificate.render() if self.certificate else None,
            'degree': format_rational(self.degree) if self.degree is not None else None,
        }


@dataclass(frozen=True)
class MaximalDegeneration:
    """A Short set I that turns Long when any outside index is added; M_I is P^dimension."""

    subset: SubsetMask
    dimension: int

    def render(self) -> str:
        return f"{self.subset} dim={self.dimension}"

    def __str__(self) -> str:
        return self.render()


@dataclass
class FanoVerdict:
    fano: bool
    method_quadrangle: bool
    method_maximal: bool
    quadrangle_witnesses: List[Quadrangle] = field(default_factory=list)
    maximal_witnesses: List[MaximalDegeneration] = field(default_factory=list)

    @property
    def witnesses(self) -> List[str]:
        rendered = [q.render() for q in self.quadrangle_witnesses]
        rendered.extend(f"MAXIMAL {d.render()}" for d in self.maximal_witnesses)
        return rendered

    def to_json(self) -> dict:
        return {
            'fano': self.fano,
            'method_quadrangle': self.method_quadrangle,
            'method_maximal': self.method_maximal,
            'witnesses': self.witnesses,
        }


def is_ample(m: WeightVector, a: DivisorCoefficients) -> AmpleVerdict:
    """
    Test sum a_i l_i against every quadrangle in canonical order.

    Triangle with distinguished part I needs a_I > 0; star with center I
    needs a_I < a_J + a_K + a_L. The first failure is returned as certificate.

    Raises:
        NotSmooth: If m lies on a wall
    """
    require_smooth(m)
    if a.n != m.n:
        raise ValueError(f"{a.n} coefficients for n = {m.n}")
    for quadrangle in quadrangles(m):
        degree = divisor_degree(quadrangle, a)
        if degree <= 0:
            logger.debug(f"{a} not ample on {m}: {quadrangle} has degree {degree}")
            return AmpleVerdict(False, quadrangle, degree)
    return AmpleVerdict(True)


def first_chern_class(n: int) -> RingElement:
    if n < 4:
        raise ValueError(f"c_1 needs n >= 4, got {n}")
    total = RingElement.zero()
    for i in range(1, n + 1):
        total = total + RingElement.l(i)
    return total


def first_chern_class_consecutive(n: int) -> RingElement:
    """c_1 as the sum of D_{i,i+1} with indices mod n."""
    if n < 4:
        raise ValueError(f"c_1 needs n >= 4, got {n}")
    total = RingElement.zero()
    for i in range(1, n + 1):
        total = total + divisor_class(i, i % n + 1)
    return total


def star_violations(m: WeightVector) -> List[Quadrangle]:
    """Stars whose center I has |I| >= n - |I|; empty iff c_1 is ample."""
    n = m.n
    return [
        q for q in quadrangles(m)
        if q.kind is QuadrangleKind.STAR and 2 * popcount(q.special) >= n
    ]


def is_fano_quadrangle(m: WeightVector) -> bool:
    return is_ample(m, DivisorCoefficients.ones(m.n)).ample


def maximal_degenerations(m: WeightVector) -> List[MaximalDegeneration]:
    """
    Short sets I with m_I + m_s > m/2 for every s outside I, in subset order.

    Raises:
        NotSmooth: If m lies on a wall
    """
    require_smooth(m)
    n = m.n
    w = m.primitive
    total = m.primitive_total
    found = []
    for bits, card, mass in m.subset_records():
        if card > n - 2 or 2 * mass >= total:
            continue
        lightest = min(w[s] for s in range(n) if not bits >> s & 1)
        if 2 * (mass + lightest) > total:
            found.append(MaximalDegeneration(SubsetMask.of(m, bits), n - card - 2))
    found.sort(key=lambda d: (d.subset.cardinality, tuple(iter_bits(d.subset.bits))))
    logger.debug(f"{len(found)} maximal degenerations for {m}")
    return found


def _maximal_violations(m: WeightVector) -> List[MaximalDegeneration]:
    threshold = Fraction(m.n - 4, 2)
    return [
        d for d in maximal_degenerations(m)
        if d.dimension != 0 and not d.dimension > threshold
    ]


def is_fano_maximal(m: WeightVector) -> bool:
    """Every maximal degeneration is a point or has dimension strictly above (n - 4)/2."""
    return not _maximal_violations(m)


def fano_verdict(m: WeightVector) -> FanoVerdict:
    """
    Both Fano tests with their witnesses.

    Raises:
        NotSmooth: If m lies on a wall
        InternalFault: If the two tests disagree
    """
    require_smooth(m)
    quadrangle_witnesses = star_violations(m)
    maximal_witnesses = _maximal_violations(m)
    by_quadrangle = is_fano_quadrangle(m)
    by_maximal = not maximal_witnesses
    if by_quadrangle != by_maximal or by_quadrangle == bool(quadrangle_witnesses):
        raise InternalFault(
            f"Fano tests disagree on {m}: quadrangle={by_quadrangle}, maximal={by_maximal}"
        )
    return FanoVerdict(
        fano=by_quadrangle,
        method_quadrangle=by_quadrangle,
        method_maximal=by_maximal,
        quadrangle_witnesses=quadrangle_witnesses,
        maximal_witnesses=maximal_witnesses,
    )


def anticanonical_degree(m: WeightVector, oracle: str = "signs", workers: int = 1) -> Fraction:
    """c_1^(n-3) on the fundamental class."""
    return evaluate(m, first_chern_class(m.n) ** (m.n - 3), oracle=oracle, workers=workers)
