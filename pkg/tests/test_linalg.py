from fractions import Fraction

import pytest

from bgg import linalg
from bgg.errors import LinAlgError

F = Fraction


def test_int_rank_matches_fraction_rank():
    m = [[2, 4, 6], [1, 2, 3], [0, 1, 1]]
    assert linalg.rank(m) == 2
    mf = [[F(x, 3) for x in row] for row in m]
    assert linalg.rank(mf) == 2


def test_rank_empty():
    assert linalg.rank([]) == 0
    assert linalg.rank([[]]) == 0


def test_nullspace_basic():
    basis = linalg.nullspace([[F(1), F(2), F(3)]], 3)
    assert len(basis) == 2
    for v in basis:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0
    # deterministic: one vector per free column, unit there
    assert basis[0][1] == 1 and basis[1][2] == 1


def test_nullspace_full_rank():
    assert linalg.nullspace([[F(1), F(0)], [F(0), F(1)]], 2) == []


def test_solve_columns():
    a = [[F(1), F(1)], [F(0), F(1)], [F(1), F(0)]]
    b = [[F(3)], [F(2)], [F(1)]]
    x = linalg.solve_columns(a, b, 2, 1)
    assert x == [[F(1)], [F(2)]]


def test_solve_columns_inconsistent():
    a = [[F(1)], [F(1)]]
    b = [[F(1)], [F(2)]]
    with pytest.raises(LinAlgError):
        linalg.solve_columns(a, b, 1, 1)


def test_in_column_span():
    a = [[F(1), F(0)], [F(0), F(1)], [F(1), F(1)]]
    assert linalg.in_column_span(a, [F(2), F(3), F(5)])
    assert not linalg.in_column_span(a, [F(2), F(3), F(4)])


def test_mat_mul_and_zero():
    a = [[F(1), F(2)], [F(0), F(1)]]
    b = [[F(1)], [F(-1)]]
    assert linalg.mat_mul(a, b) == [[F(-1)], [F(-1)]]
    assert linalg.mat_is_zero([[F(0), F(0)]])
    assert not linalg.mat_is_zero([[F(0), F(1)]])


def test_gf2_solve_parity():
    # x0 + x1 = 1, x1 + x2 = 0, x0 + x2 = 1
    sol = linalg.gf2_solve(3, [((0, 1), 1), ((1, 2), 0), ((0, 2), 1)])
    assert sol is not None
    assert (sol[0] + sol[1]) % 2 == 1
    assert (sol[1] + sol[2]) % 2 == 0
    assert (sol[0] + sol[2]) % 2 == 1


def test_gf2_solve_free_vars_zero():
    sol = linalg.gf2_solve(3, [((0, 1), 1)])
    assert sol == [1, 0, 0] or sol == [0, 1, 0]
    # deterministic choice: lowest index becomes the pivot
    assert sol == [1, 0, 0]


def test_gf2_solve_inconsistent():
    assert linalg.gf2_solve(2, [((0,), 0), ((0,), 1)]) is None


def test_gf2_repeated_index_cancels():
    # x0 appears twice in one constraint: cancels over GF(2)
    sol = linalg.gf2_solve(2, [((0, 0, 1), 1)])
    assert sol == [0, 1]
