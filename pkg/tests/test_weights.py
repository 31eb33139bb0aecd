from fractions import Fraction

import numpy as np
import pytest

from geometry.sampling import random_smooth_weights, sample_chambers
from geometry.weights import (
    SubsetClass,
    SubsetMask,
    WeightVector,
    chamber_signature,
    classify_subset,
    crossed_walls,
    format_weights,
    is_smooth,
    long_subsets,
    mask_of,
    massive_points,
    new_weight_vector,
    parse_weights,
    render_subset,
    require_smooth,
    short_subsets,
    signed_sums_vanish,
    subset_census,
)
from utils.errors import (
    NonPositiveEntry,
    NotSmooth,
    PolygonInequalityViolated,
    TooFewSides,
    TooManySides,
    WeightParseError,
)


def test_parse_weights_accepts_fractions():
    assert parse_weights("1,1,1,3/2") == [1, 1, 1, Fraction(3, 2)]
    assert format_weights(parse_weights(" 2 , 1/3 ,4")) == "2,1/3,4"


@pytest.mark.parametrize("text", ["", "1,,2", "1,-2,3", "1,2/0,3", "a,b,c", "1.5,1,1"])
def test_parse_weights_rejects_malformed(text):
    with pytest.raises(WeightParseError):
        parse_weights(text)


def test_validation_errors():
    with pytest.raises(TooFewSides):
        WeightVector((1, 1))
    with pytest.raises(NonPositiveEntry) as excinfo:
        WeightVector((1, 0, 1))
    assert excinfo.value.index == 2
    with pytest.raises(PolygonInequalityViolated) as excinfo:
        WeightVector((1, 1, 2))
    assert excinfo.value.index == 3
    with pytest.raises(TooManySides):
        new_weight_vector([1] * 8, max_n=7)


def test_max_n_from_environment(monkeypatch):
    monkeypatch.setenv("POLYSPACE_MAX_N", "5")
    with pytest.raises(TooManySides):
        new_weight_vector([1] * 6)
    assert new_weight_vector([1] * 5).n == 5


def test_primitive_rescaling():
    m = WeightVector((Fraction(1, 2), Fraction(1, 2), 1, Fraction(3, 2)))
    assert m.primitive == (1, 1, 2, 3)
    assert m.primitive_total == 7
    assert m.total == Fraction(7, 2)
    assert m.mass(mask_of([3, 4], 4)) == Fraction(5, 2)


def test_classification_of_pentagon(pentagon):
    assert classify_subset(pentagon, mask_of([1, 2], 5)) is SubsetClass.SHORT
    assert classify_subset(pentagon, mask_of([1, 2, 3], 5)) is SubsetClass.LONG
    census = subset_census(pentagon)
    assert census[SubsetClass.SHORT] == 16
    assert census[SubsetClass.LONG] == 16
    assert census[SubsetClass.WALL] == 0


def test_complement_flips_class(small_chambers):
    for m in small_chambers[:10]:
        for bits in range(1 << m.n):
            assert classify_subset(m, bits).opposite() is classify_subset(m, m.full_mask ^ bits)


def test_wall_detection_names_smallest_subset():
    m = WeightVector((1, 1, 1, 1))
    assert not is_smooth(m)
    assert signed_sums_vanish(m)
    with pytest.raises(NotSmooth) as excinfo:
        require_smooth(m)
    assert excinfo.value.wall == (1, 2)
    assert "{1,2}" in str(excinfo.value)


def test_odd_total_is_always_smooth():
    m = WeightVector((1, 1, 1, 2, 2))
    assert m.primitive_total % 2 == 1
    assert is_smooth(m)


def test_subset_enumeration_matches_census(pentagon):
    shorts = list(short_subsets(pentagon))
    longs = list(long_subsets(pentagon))
    assert len(shorts) == len(longs) == 16
    assert all(2 * s.mass < pentagon.total for s in shorts)
    assert [s.bits for s in longs] == sorted(s.bits for s in longs)


def test_subset_mask_helpers(pentagon):
    subset = SubsetMask.from_indices(pentagon, [2, 4])
    assert subset.indices == (2, 4)
    assert subset.cardinality == 2
    assert subset.complement(pentagon).indices == (1, 3, 5)
    assert str(subset) == render_subset(subset.bits) == "{2 4}"


@pytest.mark.parametrize("weights, labels", [
    ((3, 1, 1, 1, 1), ["OneMassive(1)"]),
    ((3, 3, 3, 1, 1), ["ThreeMassive(1,2,3)"]),
    ((1, 1, 1, 1, 1), ["Generic"]),
])
def test_massive_points(weights, labels):
    assert massive_points(WeightVector(weights)).labels() == labels


def test_chamber_signature_relabel():
    m = WeightVector((5, 1, 2, 3, 4))
    images = (3, 1, 5, 2, 4)
    moved = [None] * 5
    for i, image in enumerate(images):
        moved[image - 1] = m.entries[i]
    assert chamber_signature(WeightVector(tuple(moved))) == chamber_signature(m).relabel(images)


def test_scaling_keeps_chamber():
    m = WeightVector((2, 3, 3, 4, 5))
    scaled = WeightVector(tuple(Fraction(x, 7) for x in m.entries))
    assert chamber_signature(m) == chamber_signature(scaled)
    assert crossed_walls(m, scaled) == []


def test_crossed_walls_single_wall():
    before = WeightVector((1, 1, 1, 1, 1))
    after = WeightVector((2, 2, 1, 1, 1))
    walls = crossed_walls(before, after)
    assert [w.indices for w in walls] == [(1, 2)]


def test_random_smooth_weights_are_smooth(rng):
    for n in (4, 5, 6, 7):
        m = random_smooth_weights(n, rng)
        assert m.n == n
        assert is_smooth(m)


def test_sample_is_reproducible_and_distinct():
    first = sample_chambers([5, 6], count=6, seed=11)
    second = sample_chambers([5, 6], count=6, seed=11)
    assert first == second
    signatures = [chamber_signature(m) for m in first]
    assert len(set(signatures)) == len(signatures)


def test_sampling_uses_numpy_generator():
    rng = np.random.default_rng(3)
    sample = sample_chambers([4], count=3, seed=0, rng=rng)
    assert all(m.n == 4 for m in sample)


def test_smoothness_matches_signed_sums(rng):
    checked = 0
    for _ in range(400):
        n = int(rng.integers(3, 13))
        entries = tuple(int(x) for x in rng.integers(1, 8, size=n))
        try:
            m = WeightVector(entries)
        except PolygonInequalityViolated:
            continue
        assert is_smooth(m) != signed_sums_vanish(m), str(m)
        checked += 1
    assert checked > 100


def test_subset_enumeration_agrees_with_classification(small_chambers):
    for m in small_chambers[::4]:
        by_class = {SubsetClass.SHORT: [], SubsetClass.LONG: []}
        for bits in range(1 << m.n):
            by_class[classify_subset(m, bits)].append(bits)
        assert [s.bits for s in short_subsets(m)] == by_class[SubsetClass.SHORT]
        assert [s.bits for s in long_subsets(m)] == by_class[SubsetClass.LONG]
        assert all(s.mass == m.mass(s.bits) for s in long_subsets(m))
