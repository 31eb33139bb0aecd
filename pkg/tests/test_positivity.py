from fractions import Fraction

import pytest

from geometry.sampling import sample_chambers
from geometry.weights import WeightVector
from intersection.cycles import degree_on_cycle
from intersection.pairing import evaluate
from positivity.fano import (
    anticanonical_degree,
    fano_verdict,
    first_chern_class,
    first_chern_class_consecutive,
    is_ample,
    is_fano_maximal,
    is_fano_quadrangle,
    maximal_degenerations,
)
from positivity.quadrangles import (
    DivisorCoefficients,
    QuadrangleKind,
    divisor_degree,
    quadrangle_l_degrees,
    quadrangles,
)
from utils.errors import NotSmooth


def test_star_example():
    m = WeightVector((1, 1, 1, 1, 1, 2))
    found = {q.partition.render(): q for q in quadrangles(m)}
    star = found["{1 2 3|4|5|6}"]
    assert star.kind is QuadrangleKind.STAR
    assert star.render() == "STAR center={1 2 3} parts={1 2 3|4|5|6}"


def test_massive_point_quadrangle_is_star_at_heavy_side():
    m = WeightVector((3, 1, 1, 1, 1))
    found = {q.partition.render(): q for q in quadrangles(m)}
    quadrangle = found["{1|2|3|4 5}"]
    assert quadrangle.kind is QuadrangleKind.STAR
    assert quadrangle.special == 0b1


def test_pentagon_quadrangles(pentagon):
    found = quadrangles(pentagon)
    # every 4-part partition of five points has one doubleton, which is the star center
    assert len(found) == 10
    assert all(q.kind is QuadrangleKind.STAR for q in found)
    assert all(bin(q.special).count("1") == 2 for q in found)


def test_quadrangle_requires_smooth():
    with pytest.raises(NotSmooth):
        quadrangles(WeightVector((1, 1, 1, 1)))


def test_quadrangle_vectors_match_cycle_calculus(small_chambers):
    for m in small_chambers[::3]:
        for quadrangle in quadrangles(m):
            expected = quadrangle_l_degrees(quadrangle)
            actual = tuple(degree_on_cycle(m, i, quadrangle.partition) for i in range(1, m.n + 1))
            assert actual == expected, f"{m}: {quadrangle}"
            if quadrangle.kind is QuadrangleKind.TRIANGLE:
                assert set(expected) <= {0, 2}
            else:
                assert set(expected) <= {-1, 1}


def test_is_ample_certificate():
    m = WeightVector((1, 1, 1, 1, 1, 2))
    verdict = is_ample(m, DivisorCoefficients.ones(6))
    assert not verdict.ample
    assert verdict.certificate.kind is QuadrangleKind.STAR
    assert verdict.certificate.render() == "STAR center={1 2 3} parts={1 2 3|4|5|6}"
    assert verdict.degree == 0


def test_pentagon_anticanonical_ample(pentagon):
    assert is_ample(pentagon, DivisorCoefficients.ones(5))


def test_polarization_is_ample(small_chambers, fano_chambers):
    for m in small_chambers + fano_chambers:
        assert is_ample(m, DivisorCoefficients(m.entries)).ample, str(m)


def test_negative_divisor_is_not_ample(pentagon):
    a = DivisorCoefficients.of([-1, 0, 0, 0, 0], 5)
    verdict = is_ample(pentagon, a)
    assert not verdict.ample
    assert divisor_degree(verdict.certificate, a) == verdict.degree
    with pytest.raises(ValueError):
        DivisorCoefficients.of([1, 1], 5)


def test_first_chern_class_forms():
    assert first_chern_class(4).render() == "l1 + l2 + l3 + l4"
    for n in (4, 5, 6, 7):
        assert first_chern_class_consecutive(n) == first_chern_class(n)
    with pytest.raises(ValueError):
        first_chern_class(3)


def test_anticanonical_degree_of_small_spaces(pentagon):
    assert evaluate(WeightVector((1, 1, 1, 2)), first_chern_class(4)) == 2
    assert anticanonical_degree(pentagon) == 5


@pytest.mark.parametrize("weights, fano", [
    ((1, 1, 1, 2), True),
    ((1, 1, 1, 1, 1), True),
    ((1, 1, 1, 1, 1, 2), False),
    ((1, 1, 1, 1, 1, 1, 1), True),
])
def test_fano_examples(weights, fano):
    m = WeightVector(weights)
    assert is_fano_quadrangle(m) is fano
    assert is_fano_maximal(m) is fano


def test_maximal_degenerations_examples(pentagon):
    found = maximal_degenerations(pentagon)
    assert len(found) == 10
    assert all(d.subset.cardinality == 2 and d.dimension == 1 for d in found)

    small = maximal_degenerations(WeightVector((1, 1, 1, 2)))
    assert [(d.subset.indices, d.dimension) for d in small] == [
        ((4,), 1), ((1, 2), 0), ((1, 3), 0), ((2, 3), 0),
    ]

    six = maximal_degenerations(WeightVector((1, 1, 1, 1, 1, 2)))
    assert ((1, 2, 3), 1) in [(d.subset.indices, d.dimension) for d in six]


def test_fano_verdict_json():
    verdict = fano_verdict(WeightVector((1, 1, 1, 1, 1, 2)))
    payload = verdict.to_json()
    assert list(payload) == ['fano', 'method_quadrangle', 'method_maximal', 'witnesses']
    assert payload['fano'] is False
    assert payload['witnesses'][0] == "STAR center={1 2 3} parts={1 2 3|4|5|6}"
    assert any(w.startswith("MAXIMAL {1 2 3}") for w in payload['witnesses'])


def test_fano_criteria_agree(fano_chambers):
    assert {m.n for m in fano_chambers} == set(range(4, 10))
    for m in fano_chambers:
        assert is_fano_quadrangle(m) == is_fano_maximal(m), str(m)


def test_small_n_always_fano():
    for m in sample_chambers([4, 5], count=20, seed=5):
        verdict = fano_verdict(m)
        assert verdict.fano and verdict.method_maximal


def test_fano_has_positive_anticanonical_degree(fano_chambers):
    for m in fano_chambers:
        if m.n <= 7 and is_fano_quadrangle(m):
            assert anticanonical_degree(m) > 0, str(m)


def test_rational_coefficients():
    m = WeightVector((1, 1, 1, 2))
    a = DivisorCoefficients.of([Fraction(1, 2), Fraction(1, 3), 1, Fraction(1, 5)], 4)
    assert is_ample(m, a).ample is all(
        divisor_degree(q, a) > 0 for q in quadrangles(m)
    )
