import pytest

from triflag import so_even as e
from triflag.so_triple import TripleLabel, u_d


def test_count_tables():
    assert [e.even_counts(n)["triples"] for n in range(2, 6)] == [11, 24, 46, 80]
    assert [e.even_counts(n)["t0"] for n in range(2, 6)] == [18, 88, 460, 2544]
    assert [e.even_word_counts(n) for n in range(2, 6)] == [6, 20, 76, 312]


@pytest.mark.parametrize("n", range(1, 8))
def test_component_splits_add_up(n):
    c = e.even_counts(n)
    # one component pattern where all agree, three where they do not
    assert c["triples_same"] + 3 * c["triples_mixed"] == c["triples"]
    assert 2 * (c["t0_same"] + c["t0_mixed"]) == c["t0"]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_partition_of_unity(n):
    for r in (3, 5):
        total = sum(e.even_orbit_size(lab, r) for lab in e.even_labels(n))
        assert total == e.mprime_size(n, r) ** 3


def test_mprime_enumeration():
    spaces = e.mprime_spaces(2, 3)
    assert len(spaces) == e.mprime_size(2, 3) == 8
    comps = [e.component(v).nu for v in spaces]
    assert comps.count(0) == comps.count(1) == 4


def test_components_of_u0_u1():
    assert e.component(u_d(3, 0, 3)).nu == 0
    assert e.component(e.u_one(3, 3)).nu == 1


def test_labels_have_eps_zero():
    assert all(lab.eps == 0 and lab.c0 % 2 == 0 for lab in e.even_labels(4))
    with pytest.raises(ValueError):
        e.even_orbit_size(TripleLabel(2, 0, 0, 0, 0, 2, 1), 3)
