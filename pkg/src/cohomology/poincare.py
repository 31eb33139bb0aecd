"""
Poincaré polynomials and Betti numbers of smooth polygon spaces.

The closed form

    P(q) * q * (q - 1) = (1 + q)^(n-1) - sum over I with m_I <= m/2 of q^|I|

is evaluated with exact integer polynomials; q stands for t^2, odd Betti
numbers vanish.
"""
import logging
from functools import lru_cache
from typing import List, Tuple

from .polynomial import IntPolynomial, histogram_polynomial, projective_space
from geometry.weights import WeightVector, require_smooth
from utils.errors import NonExactDivision
from utils.parallel import map_ranges

logger = logging.getLogger(__name__)


def short_histogram(m: WeightVector, workers: int = 1) -> Tuple[int, ...]:
    """
    Count subsets with m_I <= m/2 by cardinality, one pass over all 2^n subsets.

    Results are cached per primitive integer vector, so rescaled weights
    share an entry.
    """
    return _cached_histogram(m.primitive, max(1, workers))


@lru_cache(maxsize=512)
def _cached_histogram(primitive: Tuple[int, ...], workers: int) -> Tuple[int, ...]:
    m = WeightVector(primitive)
    n = m.n
    total = m.primitive_total

    def count(lo: int, hi: int) -> List[int]:
        counts = [0] * (n + 1)
        for _, card, mass in m.subset_records(lo, hi):
            if 2 * mass <= total:
                counts[card] += 1
        return counts

    histogram = [0] * (n + 1)
    for partial in map_ranges(count, 1 << n, workers):
        for card, value in enumerate(partial):
            histogram[card] += value
    logger.debug(f"histogram for {m}: {histogram}")
    return tuple(histogram)


def poincare_polynomial(m: WeightVector, workers: int = 1) -> IntPolynomial:
    """
    Poincaré polynomial of the smooth polygon space M_n(m).

    Raises:
        NotSmooth: If m lies on a wall
        NonExactDivision: If the numerator is not divisible by q or by q - 1
    """
    require_smooth(m)
    n = m.n
    numerator = IntPolynomial.binomial_power(n - 1) - histogram_polynomial(short_histogram(m, workers))

    by_q, remainder = numerator.divide_by_linear(0)
    if remainder:
        raise NonExactDivision("q", remainder)
    result, remainder = by_q.divide_by_linear(1)
    if remainder:
        raise NonExactDivision("q - 1", remainder)

    if result.degree != n - 3 or result.coefficient(0) != 1:
        raise NonExactDivision("q(q - 1)", 0) from ValueError(
            f"quotient {result} has degree {result.degree} and constant term {result.coefficient(0)}"
        )
    return result


def betti_numbers(m: WeightVector, workers: int = 1) -> List[int]:
    """Even Betti numbers b_0, b_2, ..., b_2(n-3)."""
    return list(poincare_polynomial(m, workers).coefficients)


def euler_characteristic(m: WeightVector, workers: int = 1) -> int:
    return poincare_polynomial(m, workers)(1)


def wall_crossing_delta(short_size: int, long_size: int) -> IntPolynomial:
    """
    Change of the Poincaré polynomial when a wall I is crossed so that I
    turns from Short to Long, where |I| = short_size and its complement has
    long_size elements: a P^(l-2) is traded for a P^(k-2).
    """
    return projective_space(short_size - 2) - projective_space(long_size - 2)
