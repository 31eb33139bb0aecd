import logging
from fractions import Fraction
from typing import Dict

from .cycles import evaluate_monomial_by_cycles
from .signs import top_intersection
from cohomology.ring import Monomial, RingElement
from geometry.weights import WeightVector, require_smooth
from utils.errors import InternalFault, NotHomogeneousTop, RouteMismatch

logger = logging.getLogger(__name__)

ORACLES = ("signs", "cycles", "both")


def intersect_monomial(m: WeightVector, monomial: Monomial, oracle: str = "signs",
                       workers: int = 1) -> int:
    """
    Top intersection number of one monomial by the chosen route.

    ``both`` runs the sign sum and the cycle reduction and raises
    RouteMismatch if they differ.
    """
    if oracle not in ORACLES:
        raise ValueError(f"oracle must be one of {', '.join(ORACLES)}, got {oracle!r}")
    if oracle == "cycles":
        return evaluate_monomial_by_cycles(m, monomial)
    signs = top_intersection(m, monomial.l_set, monomial.p_pow, workers=workers)
    if oracle == "both":
        cycles = evaluate_monomial_by_cycles(m, monomial)
        if cycles != signs:
            raise RouteMismatch(monomial.render(), signs, cycles, extra=f"m = {m}")
    return signs


def evaluate(m: WeightVector, element: RingElement, oracle: str = "signs",
             workers: int = 1) -> Fraction:
    """
    Pair a top-degree class with the fundamental class.

    Raises:
        NotSmooth: If m lies on a wall
        NotHomogeneousTop: Unless every monomial has degree n - 3
    """
    require_smooth(m)
    top = m.n - 3
    if element.is_zero():
        return Fraction(0)
    degrees = element.degrees()
    if degrees != {top}:
        raise NotHomogeneousTop(degrees, top)
    if element.max_index > m.n:
        raise ValueError(f"class {element} uses an index above {m.n}")

    cache: Dict[Monomial, int] = {}
    total = Fraction(0)
    for monomial, coeff in element.items():
        if monomial not in cache:
            cache[monomial] = intersect_monomial(m, monomial, oracle, workers)
        total += coeff * cache[monomial]

    if element.has_integer_coefficients() and total.denominator != 1:
        raise InternalFault(f"integer class {element} evaluated to {total}")
    return total
