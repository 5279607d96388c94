import random

import pytest

from triflag import t0_words as t
from triflag.forms import generators, random_word
from triflag.qcount import m_count, q_factorial


def test_counting_functions():
    assert [t.xi(k) for k in range(5)] == [1, 1, 4, 9, 42]
    assert [t.count_t0(n) for n in range(1, 5)] == [5, 28, 169, 1082]
    assert [t.count_gl_on_M0(n) for n in range(1, 5)] == [3, 12, 53, 258]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_matches_count(n):
    words = t.enumerate_words(n)
    assert len(words) == t.count_t0(n)
    assert len({w.render() for w in words}) == len(words)


def test_n1_words_and_sizes():
    words = {w.render() for w in t.enumerate_words(1)}
    assert words == {"α", "β", "+", "−", "X"}
    assert sum(t.t0_orbit_size(w, 3) for w in words) == 4 ** 3 * 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_size_sum(n):
    for r in (3, 5):
        total = sum(t.t0_orbit_size(w, r) for w in t.enumerate_words(n))
        assert total == m_count(n, r) ** 3 * q_factorial(n, r)


@pytest.mark.parametrize("n,p", [(2, 3), (2, 5), (3, 3)])
def test_realizing_flag_round_trip(n, p):
    for w in t.enumerate_words(n):
        f = t.realizing_flag(w, p)
        assert t.is_standard(f, w.label)
        assert t.word_symbol(f, w.label) == w


def test_ascii_parse_round_trip():
    for w in t.enumerate_words(3):
        assert t.WordSymbol.parse(w.render(ascii=True)) == w
        assert t.WordSymbol.parse(w.render()) == w


def test_standardize_random_translates():
    rng = random.Random(5)
    n, p = 2, 3
    for w in t.enumerate_words(n):
        f = t.realizing_flag(w, p)
        gens = generators("r-d", n, p, d=w.d)
        # R(t) also fixes the representative V; keep only words that do
        moved = None
        for _ in range(40):
            g = random_word(gens, p, rng, length=15)
            if f.image(g).space(n).key == f.space(n).key:
                moved = f.image(g)
                break
        if moved is None:
            continue
        g, std = t.standardize_flag(moved, w.label)
        assert t.is_standard(std, w.label)
        assert t.word_symbol(std, w.label) == w


def test_classify_invariant_under_rd():
    rng = random.Random(9)
    n, p = 2, 3
    flags = t.isotropic_flags(n, p)
    for d in range(n + 1):
        gens = generators("r-d", n, p, d=d)
        for f in rng.sample(flags, 15):
            g = random_word(gens, p, rng)
            assert t.classify_flag(f.image(g), d) == t.classify_flag(f, d)


def test_guard():
    from triflag.exactlin import GuardExceeded
    with pytest.raises((GuardExceeded, ValueError)):
        t.enumerate_words(9)
