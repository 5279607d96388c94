import random

import pytest

from triflag import so_triple as s
from triflag.forms import generators, in_group, random_word
from triflag.qcount import m_count


def test_counts():
    assert [s.count_orbits_formula(n) for n in range(1, 5)] == [5, 16, 39, 81]
    assert [len(s.labels(n)) for n in range(1, 5)] == [5, 16, 39, 81]


def test_label_validation():
    with pytest.raises(ValueError):
        s.TripleLabel(2, 0, 0, 0, 0, 1, 0)  # odd c0 needs eps = 1
    with pytest.raises(ValueError):
        s.TripleLabel(2, 1, 0, 0, 0, 0, 1)
    lab = s.TripleLabel.parse("0,0,1,0,1,1")
    assert lab.serialize() == "0,0,1,0,1,1" and lab.n == 2 and lab.d == 2


@pytest.mark.parametrize("n", [1, 2, 3])
def test_partition_of_unity(n):
    for r in (3, 5, 7):
        assert sum(s.orbit_size(lab, r) for lab in s.labels(n)) == m_count(n, r) ** 3


@pytest.mark.parametrize("n", [1, 2, 3])
def test_representatives_classify_to_their_label(n):
    for p in (3, 5):
        u0 = s.u_d(n, 0, p)
        for lab in s.labels(n):
            ud = s.u_d(n, lab.d, p)
            assert s.triple_invariants(u0, ud, s.representative(lab, p)) == lab


def test_maximal_isotropic_count():
    assert len(s.maximal_isotropics(2, 3)) == m_count(2, 3) == 40


def test_standardize_random_translates():
    rng = random.Random(11)
    n, p = 2, 3
    gens = generators("so-odd", n, p)
    for lab in s.labels(n):
        triple = [s.u_d(n, 0, p), s.u_d(n, lab.d, p), s.representative(lab, p)]
        g = random_word(gens, p, rng, length=20)
        moved = [v.image(g) for v in triple]
        assert s.triple_invariants(*moved) == lab
        h, got = s.standardize_triple(*moved)
        assert got == lab
        assert in_group(h, "so-odd", n, p)
        assert [v.image(h).key for v in moved] == [v.key for v in triple]
