from fractions import Fraction

import pytest

from submodgreedy.bounds import g, g_cc, g_nwf
from submodgreedy.errors import InvalidArgument, LPInfeasible, LPUnbounded
from submodgreedy.lp import (B, LinearProgram, build_dual, build_primal, certificate_report,
                             check_B_monotonicity, dual_closed_form, partial_sums,
                             partial_sums_closed, simplex_solve, suffix)

from oracles import lp_by_vertices

F = Fraction


def _oracle(lp):
    return lp_by_vertices(lp.sense, lp.objective, lp.rows, lp.rhs, lp.row_sense)


def test_build_primal_examples():
    lp = build_primal(1, F(1, 2), set())
    assert lp.rows == [[1]] and lp.sense == "min"
    assert simplex_solve(lp)[0] == 1
    lp = build_primal(2, 1, {2})
    assert lp.rows == [[2, 0], [1, 2]]
    value, x = simplex_solve(lp)
    assert value == F(3, 4) and x == [F(1, 2), F(1, 4)]
    assert simplex_solve(build_primal(3, 1, {3}))[0] == F(19, 27) == g(3, 1, 1)


def test_build_primal_coefficients():
    lp = build_primal(4, F(1, 2), {2, 3})
    assert lp.rows == [
        [4, 0, 0, 0],
        [F(1, 2), 4, 0, 0],
        [F(1, 2), 1, 3, 0],
        [F(1, 2), 1, 1, 2],
    ]
    with pytest.raises(InvalidArgument):
        build_primal(3, 1, {4})


def test_build_dual_examples():
    lp = build_dual(1, F(1, 3), 0)
    assert lp.rows == [[1]]
    assert simplex_solve(lp)[0] == 1
    lp = build_dual(2, 1, 0)
    assert lp.rows == [[2, 1], [0, 2]]
    value, x = simplex_solve(lp)
    assert value == F(3, 4) and x == [F(1, 4), F(1, 2)]
    assert simplex_solve(build_dual(3, 1, 1))[0] >= F(19, 27)
    with pytest.raises(InvalidArgument):
        build_dual(3, 1, 3)


def test_dual_is_transpose_of_suffix_primal():
    for T in range(1, 7):
        for m in range(T):
            for a in (F(1), F(1, 2)):
                P = build_primal(T, a, suffix(T - m + 1, T))
                D = build_dual(T, a, m)
                assert D.rows == [list(col) for col in zip(*P.rows)]


def test_dual_closed_form_examples():
    cert = dual_closed_form(3, 1, 1)
    assert cert.c == [F(4, 27), F(2, 9), F(1, 3)]
    assert cert.objective == F(19, 27) == g(3, 1, 1) and cert.feasible
    cert = dual_closed_form(2, 1, 0)
    assert cert.c == [F(1, 4), F(1, 2)] and cert.objective == F(3, 4) == g_nwf(2)
    cert = dual_closed_form(1, F(2, 5), 0)
    assert cert.c == [1] and cert.objective == 1 == g(1, F(2, 5), 0)
    with pytest.raises(InvalidArgument):
        dual_closed_form(3, 1, 3)


def test_partial_sums_examples():
    cert = dual_closed_form(3, 1, 1)
    assert partial_sums(cert, 3, 1, 1) == (F(10, 27), F(1, 3))
    cert = dual_closed_form(4, F(1, 2), 0)
    head, tail = partial_sums(cert, 4, F(1, 2), 0)
    assert head == 2 * (1 - F(7, 8) ** 4) == g_cc(4, F(1, 2)) and tail == 0
    cert = dual_closed_form(2, 1, 1)
    assert partial_sums(cert, 2, 1, 1) == (F(1, 4), F(1, 2))
    assert sum(partial_sums(cert, 2, 1, 1)) == g(2, 1, 1) == F(3, 4)
    assert partial_sums_closed(3, 1, 1) == (F(10, 27), F(1, 3))


def test_simplex_matches_vertex_oracle():
    for T in range(1, 5):
        for a in (F(1), F(1, 2), F(1, 3)):
            for m in range(T):
                for lp in (build_primal(T, a, suffix(T - m + 1, T)), build_dual(T, a, m)):
                    assert simplex_solve(lp)[0] == _oracle(lp)
            for U in ({1}, {1, 3}, {2}, set()):
                U = {i for i in U if i <= T}
                lp = build_primal(T, a, U)
                assert simplex_solve(lp)[0] == _oracle(lp)


def test_simplex_mixed_rows_and_outcomes():
    # max x + y s.t. x + 2y <= 4, x - y >= -1 (negative rhs gets flipped), x == 2
    lp = LinearProgram("max", [F(1), F(1)], [[1, 2], [1, -1], [1, 0]],
                       [F(4), F(-1), F(2)], ["<=", ">=", "=="])
    value, x = simplex_solve(lp)
    assert value == 3 and x == [2, 1] and lp.is_feasible(x)
    with pytest.raises(LPInfeasible):
        simplex_solve(LinearProgram("min", [F(1)], [[1], [1]], [F(2), F(1)], [">=", "<="]))
    with pytest.raises(LPUnbounded):
        simplex_solve(LinearProgram("max", [F(1)], [[1]], [F(1)], [">="]))


def test_simplex_degenerate_redundant_equalities():
    # duplicated equality rows leave an artificial at zero level that must be dropped
    lp = LinearProgram("min", [F(1), F(2)], [[1, 1], [1, 1], [2, 2]],
                       [F(1), F(1), F(2)], ["==", "==", "=="])
    assert simplex_solve(lp) == (F(1), [F(1), F(0)])


def test_B_examples():
    assert B(3, 1, {1}) >= B(3, 1, {2, 3})
    assert B(3, 1, {2, 3}) >= B(3, 1, {3})
    assert B(2, 1, {2}) == B(2, 1, set())


def test_check_B_monotonicity_report():
    rep = check_B_monotonicity(5, F(1, 2), trials=10, seed=7)
    assert rep["passed"] and rep["reduce_checks"] == 10 and rep["suffix_checks"] == 4
    assert rep == check_B_monotonicity(5, F(1, 2), trials=10, seed=7)
    with pytest.raises(InvalidArgument):
        check_B_monotonicity(9, 1)


def test_certificate_report():
    rep = certificate_report(4, F(3, 4), 2)
    assert rep["passed"] and rep["first_rows_tight"]
    assert rep["simplex"]["weak_duality"]
    assert rep["g"] == "{0}/{1}".format(*g(4, F(3, 4), 2).as_integer_ratio())


def test_certificate_tight_in_every_row():
    for a in (F(1), F(3, 4), F(1, 2), F(1, 4), F(1, 10), F(2, 7)):
        for T in range(1, 16):
            for m in range(T):
                assert dual_closed_form(T, a, m).tight_rows() == list(range(1, T + 1))


def test_primal_optimum_equals_certificate_small_T():
    # observed strong duality: the certificate is an optimal dual solution
    for a in (F(1), F(1, 2), F(3, 4)):
        for T in range(1, 7):
            for m in range(T):
                assert B(T, a, suffix(T - m + 1, T)) == dual_closed_form(T, a, m).objective
