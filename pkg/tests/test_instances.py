from fractions import Fraction
from itertools import combinations

import pytest

from submodgreedy.bounds import g_cc, g_tilde
from submodgreedy.core import elements_of, full_mask, mask_of
from submodgreedy.errors import InvalidArgument, UnsupportedCase
from submodgreedy.greedy import run_greedy
from submodgreedy.instances import (FunctionZooSpec, TightFamilyParams, default_r, geometric_sum,
                                    geometric_sum_closed, geometric_sum_direct, make_zoo_instance,
                                    predicted_values, tight_instance, tight_params)
from submodgreedy.verify import brute_force_opt, check_monotone, check_submodular, overlap, total_curvature

from oracles import tight_value


def _oracle_value(inst, mask):
    p = inst.params
    xs = elements_of(mask)
    a_idx = [x + 1 for x in xs if x < p.r]
    b_cnt = sum(1 for x in xs if p.r <= x < p.r + p.k)
    return tight_value(p.r, p.k, p.k, p.alpha, a_idx, b_cnt)


def test_tight_instance_examples():
    inst = tight_instance(tight_params(4, 3, 1))
    assert inst.evaluate(mask_of([1, 2, 3])) == 3
    assert inst.evaluate(mask_of([0])) == 1 == inst.evaluate(mask_of([1]))
    small = tight_instance(TightFamilyParams(2, 1, Fraction(1), 1))
    assert small.evaluate(mask_of([0, 1])) == 1


@pytest.mark.parametrize("n,T,alpha", [(4, 3, 1), (7, 4, "1/2"), (6, 5, "3/4"), (9, 5, "1/4")])
def test_tight_family_matches_formula_oracle(n, T, alpha):
    inst = tight_instance(tight_params(n, T, alpha))
    assert inst.params.k == T and inst.params.padding == 0
    for mask in range(1 << n):
        assert inst.evaluate(mask) == _oracle_value(inst, mask)


def test_tight_params_validation():
    with pytest.raises(InvalidArgument):
        TightFamilyParams(7, 4, Fraction(1), 4)  # r > n/2
    with pytest.raises(InvalidArgument):
        TightFamilyParams(7, 4, Fraction(1), 0)
    with pytest.raises(InvalidArgument):
        TightFamilyParams(7, 4, Fraction(3, 2), 3)
    with pytest.raises(InvalidArgument):
        TightFamilyParams(7, 4, 0.5, 3)
    with pytest.raises(InvalidArgument):
        TightFamilyParams(8, 2, Fraction(1), 3)  # r > T


def test_default_r():
    assert default_r(7, 4) == 3
    assert default_r(4, 2) == 2
    assert default_r(2, 1) == 1
    assert default_r(5, 5) == 1
    assert default_r(9, 3) == 3


def test_default_r_convention_case_ratio_by_brute_force():
    # T <= n/2 is a convention; check the ratio only by brute force
    inst = tight_instance(tight_params(4, 2, 1))
    assert inst.params.r == 2
    opt = brute_force_opt(inst, 2)
    ratio = run_greedy(inst, 2).value / opt.best_value
    assert ratio == Fraction(3, 4) == g_cc(2, 1)


@pytest.mark.parametrize("n,T", [(5, 2), (8, 3), (9, 4), (10, 1), (6, 3)])
@pytest.mark.parametrize("alpha", ["1", "1/2"])
def test_small_T_convention_with_padding(n, T, alpha):
    inst = tight_instance(tight_params(n, T, alpha))
    assert inst.params.padding == n - 2 * T
    assert check_monotone(inst) and check_submodular(inst)
    assert total_curvature(inst) == Fraction(alpha)
    opt = brute_force_opt(inst, T)
    ratio = run_greedy(inst, T).value / opt.best_value
    assert ratio == g_tilde(T, Fraction(alpha), n) == g_cc(T, Fraction(alpha))


def test_predicted_values_examples():
    assert predicted_values(tight_params(4, 3, 1)) == (3, Fraction(7, 3), Fraction(7, 9))
    assert predicted_values(tight_params(7, 4, 1)) == (4, Fraction(175, 64), Fraction(175, 256))
    assert predicted_values(tight_params(2, 2, "1/2"))[2] == 1
    with pytest.raises(UnsupportedCase):
        predicted_values(tight_params(4, 2, 1))


@pytest.mark.parametrize("n,T,alpha", [(4, 3, 1), (7, 4, 1), (7, 5, "3/4"), (10, 6, "1/4")])
def test_predicted_values_match_brute_force(n, T, alpha):
    params = tight_params(n, T, alpha)
    inst = tight_instance(params)
    opt, greedy, ratio = predicted_values(params)
    tr = run_greedy(inst, T)
    bf = brute_force_opt(inst, T)
    assert bf.best_value == opt and tr.value == greedy
    assert [overlap(tr.mask, s) for s in bf.optima] == [2 * T - n]


def test_geometric_sum_examples():
    assert geometric_sum(0, 5, 1) == 0
    assert geometric_sum(2, 2, 1) == Fraction(3, 2)
    assert geometric_sum(3, 4, "1/2") == Fraction(169, 64)


def test_geometric_sum_forms_agree_on_grid():
    for a in ("1", "3/4", "1/2", "1/10"):
        for T in (1, 2, 5, 17, 64):
            for l in (0, 1, 3, 20, 64):
                assert geometric_sum_direct(l, T, a) == geometric_sum_closed(l, T, a)


def test_zoo_examples():
    c4 = make_zoo_instance(FunctionZooSpec("weighted-coverage", 4,
                                           params={"sets": [[0, 1, 2], [0, 1], [2, 3], [3]]}))
    assert c4.evaluate(full_mask(4)) == 4
    cc = make_zoo_instance(FunctionZooSpec("concave-cardinality", 3, params={"g": [0, 1, 1.5, 1.75]}))
    for k in range(4):
        assert {cc.evaluate(m) for m in range(8) if bin(m).count("1") == k} == {[0, 1, 1.5, 1.75][k]}
    add = make_zoo_instance(FunctionZooSpec("additive", 3, params={"weights": [5, 1, 2]}))
    assert add.evaluate(full_mask(3)) == 8
    with pytest.raises(InvalidArgument):
        make_zoo_instance(FunctionZooSpec("matroid-rank", 3))


@pytest.mark.parametrize("kind", ["weighted-coverage", "concave-cardinality", "additive"])
@pytest.mark.parametrize("exact", [False, True])
def test_zoo_instances_are_monotone_submodular(kind, exact):
    for seed in range(10):
        inst = make_zoo_instance(FunctionZooSpec(kind, 8, seed=seed, exact=exact))
        assert inst.exact == exact
        assert check_monotone(inst) and check_submodular(inst)


def test_tight_family_marginal_formulas():
    # a-marginal (1 - alpha u/T) q^(i-1) and b-marginal 1 - (alpha/T) sum q^(i_k - 1)
    p = tight_params(7, 4, "1/2")
    inst = tight_instance(p)
    q = 1 - p.alpha / p.T
    bs = list(range(p.r, p.r + p.k))
    for s_a in range(p.r + 1):
        for a_set in combinations(range(p.r), s_a):
            for u in range(p.k):
                S = mask_of(list(a_set) + bs[:u])
                got = inst.marginal_gain(S, bs[u])
                assert got == 1 - p.alpha / p.T * sum(q ** i for i in a_set)
                for i in range(p.r):
                    if i not in a_set:
                        assert inst.marginal_gain(S, i) == (1 - p.alpha * u / p.T) * q ** i
