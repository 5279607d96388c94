import numpy as np
import pytest

from triflag.exactlin import (FullFlag, GuardExceeded, Subspace, as_field, det, enumerate_full_flags,
                              enumerate_subspaces, gaussian_binomial, intersect, inverse, is_prime,
                              null_space, rank, rref, solve_left, subspace_sum)
from triflag.qcount import exact_div, inversions, psi, q_factorial, q_int


def test_field_validation():
    assert is_prime(7) and not is_prime(9)
    with pytest.raises(ValueError):
        as_field(4)
    with pytest.raises(ValueError):
        as_field(2).require_odd()
    f = as_field(7)
    assert all(a * f.inv(a) % 7 == 1 for a in range(1, 7))


def test_rref_rank_inverse():
    m = np.array([[1, 2, 0], [2, 4, 1], [0, 0, 1]])
    assert rank(m, 5) == 2
    red, rk = rref(m, 5)
    assert rk == 2 and red[0].tolist() == [1, 2, 0]
    g = np.array([[1, 2], [3, 4]])
    assert (inverse(g, 5) @ g % 5 == np.eye(2, dtype=np.int64)).all()
    assert det(g, 5) == (4 - 6) % 5


def test_null_space_and_solve():
    a = np.array([[1, 1, 0], [0, 1, 1]])
    ns = null_space(a, 3)
    assert ns.shape[0] == 1 and not (a @ ns.T % 3).any()
    a2 = np.array([[1, 0, 1], [0, 1, 1]])
    x = solve_left(a2, np.array([1, 2, 0]), 3)
    assert (x @ a2 % 3).tolist() == [1, 2, 0]
    assert solve_left(a2, np.array([0, 0, 1]), 3) is None


def test_subspace_lattice():
    a = Subspace.coordinate([1, 2], 4, 3)
    b = Subspace.coordinate([2, 3], 4, 3)
    assert intersect(a, b).dim == 1
    assert subspace_sum(a, b).dim == 3
    assert a.contains([2, 1, 0, 0]) and not a.contains([0, 0, 1, 0])
    assert Subspace.span([[1, 0, 0, 0], [2, 0, 0, 0]], 3).dim == 1


@pytest.mark.parametrize("n,k,p", [(3, 1, 2), (4, 2, 3), (4, 2, 2)])
def test_subspace_counts(n, k, p):
    assert len(list(enumerate_subspaces(n, k, p))) == gaussian_binomial(n, k, p)


@pytest.mark.parametrize("n,p", [(3, 2), (3, 3), (4, 2)])
def test_full_flag_count(n, p):
    flags = list(enumerate_full_flags(n, p))
    assert len(flags) == q_factorial(n, p)
    assert len({f.key for f in flags}) == len(flags)


def test_flag_round_trip():
    f = FullFlag.from_rows([[1, 1, 0], [0, 1, 2], [0, 0, 1]], 3)
    assert f.space(1).dim == 1 and f.space(3).dim == 3
    assert FullFlag.from_rows(f.rows, 3).key == f.key
    g = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert f.image(g).image(g).key == f.key


def test_guard():
    with pytest.raises(GuardExceeded):
        list(enumerate_full_flags(6, 5, guard=1000))


def test_qcount_basics():
    assert q_int(3, 2) == 7
    assert q_factorial(3, 2) == 21
    assert inversions([3, 1, 2]) == 2
    assert exact_div(12, 4) == 3
    with pytest.raises(ArithmeticError):
        exact_div(7, 2)
    assert psi(0, 0, 3) == 1
