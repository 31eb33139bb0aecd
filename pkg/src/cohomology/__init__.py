from .polynomial import IntPolynomial
from .poincare import betti_numbers, euler_characteristic, poincare_polynomial
from .ring import (
    Monomial,
    RingElement,
    RingPresentation,
    graded_dimension,
    multiply,
    presentation,
    relation_for_long_set,
)
