from fractions import Fraction
from math import comb

import pytest

from submodgreedy.core import (AdditiveInstance, ConcaveCardinalityInstance, CoverageInstance,
                               TableInstance, coerce_values, elements_of, evaluate, format_value,
                               mask_of, marginal_gain, parse_rat, subsets_of_size, tabulate)
from submodgreedy.errors import ElementPresent, InvalidArgument, InvalidMask, ModeMismatch, ResourceLimit
from submodgreedy.instances import tight_instance, tight_params

from oracles import coverage_value, tight_value

C4_SETS = [[0, 1, 2], [0, 1], [2, 3], [3]]


def test_evaluate_coverage_against_set_oracle(c4):
    for mask in range(16):
        expected = coverage_value(C4_SETS, [1, 1, 1, 1], elements_of(mask))
        assert evaluate(c4, mask) == expected
    assert evaluate(c4, mask_of([0])) == 3


def test_evaluate_empty_is_zero(c4):
    assert evaluate(c4, 0) == 0
    assert evaluate(AdditiveInstance([5, 1, 2]), 0) == 0
    assert evaluate(tight_instance(tight_params(4, 3, 1)), 0) == 0


def test_evaluate_tight_family_example():
    inst = tight_instance(tight_params(4, 3, 1))
    # element 0 is a1, element 1 is b1
    assert evaluate(inst, mask_of([0, 1])) == Fraction(5, 3)
    assert evaluate(inst, mask_of([0, 1])) == tight_value(1, 3, 3, 1, [1], 1)


def test_invalid_mask(c4):
    with pytest.raises(InvalidMask):
        evaluate(c4, 1 << 4)
    with pytest.raises(InvalidMask):
        evaluate(c4, -1)


def test_marginal_gain_examples(c4):
    assert marginal_gain(c4, mask_of([0]), 2) == 1
    assert marginal_gain(AdditiveInstance([5, 1, 2]), mask_of([0]), 2) == 2
    t = tight_instance(tight_params(7, 4, 1))
    assert t.params.r == 3
    assert marginal_gain(t, mask_of([0, 1, 2]), 3) == Fraction(27, 64)


def test_marginal_gain_element_present(c4):
    with pytest.raises(ElementPresent):
        marginal_gain(c4, mask_of([0]), 0)


def test_subsets_of_size_examples():
    assert list(subsets_of_size(3, 0)) == [0]
    assert list(subsets_of_size(3, 2)) == [0b011, 0b101, 0b110]
    assert sum(1 for _ in subsets_of_size(10, 5)) == 252 == comb(10, 5)
    with pytest.raises(InvalidArgument):
        list(subsets_of_size(3, 4))


@pytest.mark.parametrize("n", range(13))
def test_subsets_of_size_counts(n):
    for k in range(n + 1):
        masks = list(subsets_of_size(n, k))
        assert len(masks) == comb(n, k)
        assert masks == sorted(set(masks))
        assert all(bin(m).count("1") == k for m in masks)


def test_parse_and_format_rationals():
    assert parse_rat("7/9") == Fraction(7, 9)
    assert parse_rat("3") == 3
    assert format_value(Fraction(4)) == "4/1"
    assert format_value(Fraction(-6, 4)) == "-3/2"
    with pytest.raises(InvalidArgument):
        parse_rat("1/0")
    with pytest.raises(InvalidArgument):
        parse_rat(0.5)


def test_mode_mixing_rejected():
    with pytest.raises(ModeMismatch):
        coerce_values(["1/2", 0.5])
    with pytest.raises(ModeMismatch):
        AdditiveInstance(["1/2", 0.25])
    vals, exact = coerce_values([1, 0.5])
    assert not exact and vals == [1.0, 0.5]
    vals, exact = coerce_values([1, "1/2"])
    assert exact and vals == [1, Fraction(1, 2)]


def test_table_instance_validation():
    with pytest.raises(InvalidArgument):
        TableInstance(2, ["0", "1", "1"])
    with pytest.raises(InvalidArgument):
        TableInstance(1, ["1", "1"])
    with pytest.raises(ResourceLimit):
        TableInstance(21, [])


def test_concave_cardinality_validation():
    inst = ConcaveCardinalityInstance([0, 1, 1.5, 1.75])
    assert evaluate(inst, 0b101) == evaluate(inst, 0b011) == 1.5
    with pytest.raises(InvalidArgument):
        ConcaveCardinalityInstance([0, 1, 3])
    with pytest.raises(InvalidArgument):
        ConcaveCardinalityInstance([0, 2, 1])


def test_tabulate_matches_oracle(c4):
    t = tabulate(c4)
    assert all(t.evaluate(m) == c4.evaluate(m) for m in range(16))


def test_coverage_rejects_bad_universe_index():
    with pytest.raises(InvalidArgument):
        CoverageInstance([1, 1], [[0, 2]])


def test_evaluate_is_deterministic(c4):
    t = tight_instance(tight_params(6, 4, "3/4"))
    for m in range(64):
        assert t.evaluate(m) == t.evaluate(m)
