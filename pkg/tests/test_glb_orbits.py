import random
from itertools import islice

import numpy as np
import pytest

from triflag import glb_orbits as g
from triflag.cases import calculus
from triflag.exactlin import enumerate_full_flags
from triflag.forms import random_word
from triflag.qcount import q_factorial


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2)])
def test_sp_cmatrix_symmetric_permutation(n, p):
    for f in islice(enumerate_full_flags(2 * n, p), 400):
        c = g.sp_cmatrix(f)
        assert np.array_equal(c, c.T)
        assert not np.diag(c).any()
        assert (c.sum(axis=0) == 1).all()


def test_counts_closed_vs_enumerated():
    assert [g.sp_count(n) for n in range(1, 5)] == [1, 3, 15, 105]
    assert [g.q_count(n) for n in range(1, 5)] == [2, 18, 200, 2730]
    assert [g.one_sp_count(n) for n in range(1, 6)] == [1, 6, 55, 665, 9891]
    for n in range(1, 5):
        assert g.sp_count_formula(n) == len(g.sp_symbols(n))
        assert g.q_count_formula(n) == len(g.q_symbols(n))
    assert g.levi_count_formula(2, 1) == len(g.levi_symbols(2, 1)) == 6
    assert len(g.levi_symbols(2, 2)) == 21


@pytest.mark.parametrize("text,kind", [("ABBA", "sp"), ("YXAA", "q"), ("AAX", "one_sp"), ("+aa−", "levi")])
def test_symbol_text_round_trip(text, kind):
    sym = g.parse_symbol(kind, text)
    assert sym.render() == text


def test_levi_ascii_minus():
    sym = g.parse_symbol("levi", "+aa-")
    assert sym.render(ascii=True) == "+aa-"
    assert sym.render() == "+aa−"


@pytest.mark.parametrize("case,n,mp", [("sp", 2, None), ("q", 2, None), ("one-sp", 2, None), ("levi", 3, 1)])
def test_representatives_have_their_symbol(case, n, mp):
    calc = calculus(case, n, mp)
    for p in (2, 3):
        for sym in calc.symbols():
            assert calc.symbol(calc.representative(sym, p)) == sym


@pytest.mark.parametrize("case,n,mp", [("sp", 2, None), ("q", 2, None), ("one-sp", 2, None), ("levi", 4, 2)])
def test_symbol_invariant_under_group(case, n, mp):
    calc = calculus(case, n, mp)
    rng = random.Random(7)
    gens = calc.gens(3)
    for sym in calc.symbols():
        f = calc.representative(sym, 3)
        for _ in range(3):
            assert calc.symbol(f.image(random_word(gens, 3, rng))) == sym


@pytest.mark.parametrize("case,n,mp", [("sp", 3, None), ("q", 3, None), ("one-sp", 3, None), ("levi", 5, 2)])
def test_partition_of_unity(case, n, mp):
    calc = calculus(case, n, mp)
    for r in (2, 3, 5):
        assert sum(calc.size(s, r) for s in calc.symbols()) == q_factorial(calc.ambient, r)


def test_sp_sizes_n2_p2():
    assert sorted((g.sp_orbit_size(s, 2) for s in g.sp_symbols(2)), reverse=True) == [180, 90, 45]


def test_sp_inversion_identity():
    from triflag.qcount import inversions
    for n in range(1, 6):
        for s in g.sp_symbols(n):
            assert inversions(s.tau) == n + 2 * s.ell
            assert g.tau_of_cmatrix(s.cmatrix()) == s.tau


def test_levi_inversion_corrected():
    # the relation that actually holds for the Levi calculus
    from triflag.qcount import inversions
    for mp in range(5):
        for mm in range(5 - mp):
            n = mp + mm
            for s in g.levi_symbols(mp, mm):
                assert inversions(s.tau) == s.s * (2 * n - 2 * s.s - 1) - 2 * s.ell


def test_adapted_bases_are_adapted():
    for p in (2, 3):
        for sym in g.sp_symbols(2):
            f = g.sp_representative(sym, p)
            basis = g.sp_adapted_basis(f)
            assert basis.shape == (4, 4)
        for sym in g.levi_symbols(2, 1):
            f = g.levi_representative(sym, p)
            assert g.levi_adapted_basis(f, 2, 1).shape == (3, 3)


def test_orbit_dimension():
    dims = sorted(g.orbit_dimension("sp", s) for s in g.sp_symbols(2))
    assert dims == [4, 5, 6]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_q_m_formula_matches_flags(n):
    for sym in g.q_symbols(n) + g.one_sp_symbols(n):
        flag = g.q_representative(sym.extended(), 3)
        assert g.q_m(flag) == sym.m
