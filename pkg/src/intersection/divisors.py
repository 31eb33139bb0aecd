"""
Divisor dictionary in terms of the natural classes l_i.

    D_ij  = (l_i + l_j) / 2        configurations with p_i = p_j
    D-_ij = (l_i - l_j) / 2        antiparallel sides i, j, oriented by p_j
    D_I^eps = 2^(1-|I|) * prod over i in I \\ {i0} of (l_i0 + eps_i l_i)
"""
from fractions import Fraction
from typing import Dict, Iterable, Set, Tuple

from .signs import SignVector, sign_vectors
from cohomology.ring import Monomial, RingElement
from geometry.weights import indices_of, iter_bits, popcount
from utils.errors import BadCenter, EqualIndices

HALF = Fraction(1, 2)


def divisor_class(i: int, j: int) -> RingElement:
    if i == j:
        raise EqualIndices(i)
    return (RingElement.l(i) + RingElement.l(j)).scale(HALF)


def antidivisor_class(i: int, j: int) -> RingElement:
    if i == j:
        raise EqualIndices(i)
    return (RingElement.l(i) - RingElement.l(j)).scale(HALF)


def natural_class(i: int, j: int, k: int) -> RingElement:
    """l_i written as D_ij + D_ik - D_jk; the result does not depend on j, k."""
    if len({i, j, k}) != 3:
        raise EqualIndices(i if i in (j, k) else j)
    return divisor_class(i, j) + divisor_class(i, k) - divisor_class(j, k)


def expand_d_epsilon(support: int, eps: SignVector, center: int) -> RingElement:
    """
    D_I^eps for the star centred at ``center`` (1-based), expanded to normal form.

    Raises:
        BadCenter: If the center is outside I or eps_center is not +1
    """
    if eps.support != support:
        raise ValueError(f"sign vector lives on {indices_of(eps.support)}, expected {indices_of(support)}")
    if not support >> (center - 1) & 1:
        raise BadCenter(center, f"not in {indices_of(support)}")
    if eps.sign(center) != 1:
        raise BadCenter(center, "sign at the center must be +1")

    hub = RingElement.l(center)
    product = RingElement.one()
    for i in iter_bits(support):
        if i == center - 1:
            continue
        product = product * (hub + RingElement.l(i + 1).scale(eps.sign(i + 1)))
    return product.scale(Fraction(1, 2 ** (popcount(support) - 1)))


def sign_identity_sum(support: int, j_bits: int, center: int) -> RingElement:
    """
    Sum over sign vectors of eps_J * D_I^eps.

    For J inside I with |I \\ J| = 2k + 1 this is exactly l_J p^k.
    """
    if j_bits & ~support:
        raise ValueError("J must lie inside I")
    total = RingElement.zero()
    for eps in sign_vectors(support, center - 1):
        total = total + expand_d_epsilon(support, eps, center).scale(eps.product(j_bits))
    return total


def glued_class(edges: Iterable[Tuple[int, int]]) -> RingElement:
    """
    Product of D_ij over the edges of a tree: the cycle where all points of
    the tree's vertex set coincide. Independent of the tree chosen.
    """
    edges = list(edges)
    vertices: Set[int] = {v for edge in edges for v in edge}
    if len(edges) != len(vertices) - 1 or not _connected(vertices, edges):
        raise ValueError(f"edges {edges} do not form a tree")
    product = RingElement.one()
    for i, j in edges:
        product = product * divisor_class(i, j)
    return product


def _connected(vertices: Set[int], edges) -> bool:
    if not vertices:
        return False
    neighbours: Dict[int, Set[int]] = {v: set() for v in vertices}
    for i, j in edges:
        neighbours[i].add(j)
        neighbours[j].add(i)
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        for nxt in neighbours[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen == vertices


def monomial_class(indices: Iterable[int], p_pow: int = 0) -> RingElement:
    return RingElement.of_monomial(Monomial.of(indices, p_pow))
