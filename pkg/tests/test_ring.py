from fractions import Fraction

import pytest

from cohomology.linalg import EchelonBasis, integer_row, rank
from cohomology.poincare import poincare_polynomial
from cohomology.ring import (
    Monomial,
    RingElement,
    graded_dimension,
    hilbert_function,
    monomial_from_indices,
    monomials_of_degree,
    presentation,
    relation_for_long_set,
)
from geometry.weights import WeightVector, mask_of
from intersection.pairing import evaluate
from utils.errors import DegreeOutOfRange, NotSmooth


def test_integer_row_clears_denominators():
    assert integer_row({0: Fraction(1, 2), 3: Fraction(-3, 4)}) == {0: 2, 3: -3}
    assert integer_row({2: Fraction(-4), 5: Fraction(6)}) == {2: 2, 5: -3}
    assert integer_row({1: Fraction(0)}) == {}


def test_rank_of_dependent_rows():
    rows = [{0: 1, 1: 2}, {0: 2, 1: 4}, {1: 1, 2: 1}, {0: 1, 1: 3, 2: 1}]
    assert rank(rows) == 2


def test_echelon_basis_reports_independence():
    basis = EchelonBasis(columns=2)
    assert basis.add({0: 3, 1: 1})
    assert not basis.add({0: 6, 1: 2})
    assert basis.add({1: 5})
    assert basis.full


def test_monomial_products_use_l_squared_equals_p():
    l1 = Monomial.of([1])
    assert l1 * l1 == Monomial(0, 1)
    assert Monomial.of([1, 2]) * Monomial.of([2, 3], 1) == Monomial.of([1, 3], 2)
    with pytest.raises(ValueError):
        Monomial.of([1, 1])


def test_element_arithmetic_and_rendering():
    x = RingElement.l(1) + RingElement.l(2)
    square = x * x
    assert square == RingElement.p().scale(2) + (RingElement.l(1) * RingElement.l(2)).scale(2)
    assert square.render() == "2*l1*l2 + 2*p"
    half = (RingElement.l(1) - RingElement.l(2)).scale(Fraction(1, 2))
    assert half.render() == "1/2*l1 - 1/2*l2"
    assert RingElement.from_json(half.to_json()) == half
    assert (x - x).is_zero()
    assert x ** 0 == RingElement.one()


def test_monomials_of_degree_counts():
    # degree d normal monomials: sum over k of C(n, d - 2k)
    assert len(monomials_of_degree(5, 0)) == 1
    assert len(monomials_of_degree(5, 1)) == 5
    assert len(monomials_of_degree(5, 2)) == 11
    ordered = monomials_of_degree(4, 2)
    assert [m.sort_key() for m in ordered] == sorted(m.sort_key() for m in ordered)


def test_relation_for_long_triple():
    # |I| = 3: sigma_2(l_I) + p
    relation = relation_for_long_set(mask_of([1, 2, 3], 5))
    assert relation.render() == "l1*l2 + l1*l3 + l2*l3 + p"


def test_pentagon_presentation(pentagon):
    ring = presentation(pentagon)
    assert len(ring) == 16
    assert hilbert_function(pentagon) == [1, 5, 1]


def test_graded_dimension_bounds(pentagon):
    with pytest.raises(DegreeOutOfRange):
        graded_dimension(pentagon, 3)
    with pytest.raises(NotSmooth):
        graded_dimension(WeightVector((1, 1, 1, 1)), 0)


def test_graded_dimensions_match_poincare(small_chambers, medium_chambers):
    for m in small_chambers + medium_chambers:
        assert hilbert_function(m) == list(poincare_polynomial(m).coefficients), str(m)


def test_relations_pair_to_zero(small_chambers):
    # relation(I) * l_J p^k lies in the ideal, so it evaluates to 0 in top degree
    for m in small_chambers[::6]:
        top = m.n - 3
        for bits, relation in presentation(m).pairs():
            shift = top - (bin(bits).count("1") - 1)
            if shift < 0:
                continue
            for monomial in monomials_of_degree(m.n, shift):
                product = relation * RingElement.of_monomial(monomial)
                assert evaluate(m, product) == 0


def test_monomial_from_indices_checks_range():
    assert monomial_from_indices([1, 3], 1, 4) == Monomial.of([1, 3], 1)
    with pytest.raises(ValueError):
        monomial_from_indices([5], 0, 4)
    with pytest.raises(ValueError, match="repeated"):
        monomial_from_indices([1, 1], 0, 4)


def random_element(rng, n=6, terms=4):
    element = RingElement.zero()
    for _ in range(terms):
        monomial = Monomial(int(rng.integers(0, 1 << n)), int(rng.integers(0, 3)))
        coeff = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))
        element = element + RingElement.of_monomial(monomial, coeff)
    return element


def test_multiplication_is_commutative_and_associative(rng):
    for _ in range(50):
        a, b, c = (random_element(rng) for _ in range(3))
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def relabel_element(element, images):
    terms = {}
    for monomial, coeff in element.items():
        moved = Monomial.of([images[i - 1] for i in monomial.indices], monomial.p_pow)
        terms[moved] = coeff
    return RingElement(terms)


@pytest.mark.parametrize("members", [[1, 2, 3], [1, 3, 4, 6], [2, 3, 4, 5, 7]])
def test_relation_is_symmetric_under_relabelling(members, rng):
    n = 7
    relation = relation_for_long_set(mask_of(members, n))
    for _ in range(5):
        images = [int(i) + 1 for i in rng.permutation(n)]
        moved = mask_of([images[i - 1] for i in members], n)
        assert relabel_element(relation, images) == relation_for_long_set(moved)
