import pytest

from triflag import glb_orbits as g
from triflag.cases import calculus, hasse
from triflag.exactlin import enumerate_full_flags
from triflag.oracle import (FIGURES, HasseEdge, compare_partitions, count_adapted_bases, edges_to_dot,
                            load_figure, orbit_partition, partition_witness)


def test_sp4_f2_partition():
    calc = calculus("sp", 2, None)
    flags = list(enumerate_full_flags(4, 2))
    part = orbit_partition([flags], calc.gens(2))
    assert part.count == 3
    assert sorted(part.sizes().tolist(), reverse=True) == [180, 90, 45]
    names = [str(calc.symbol(f)) for f in flags]
    assert compare_partitions(names, part).equal
    assert partition_witness(names, part) is None


def test_witness_for_coarse_invariant():
    calc = calculus("sp", 2, None)
    flags = list(enumerate_full_flags(4, 2))
    part = orbit_partition([flags], calc.gens(2))
    assert partition_witness(["same"] * len(flags), part) is not None


@pytest.mark.parametrize("case,n,mp,kind", [("sp", 1, None, "sp"), ("sp", 2, None, "sp"), ("q", 1, None, "q"),
                                            ("q", 2, None, "q"), ("levi", 2, 1, "levi"), ("levi", 2, 2, "levi")])
def test_basis_counts(case, n, mp, kind):
    calc = calculus(case, n, mp)
    for r in (2, 3):
        for sym in calc.symbols():
            assert count_adapted_bases(calc.representative(sym, r), case, mp) == g.adapted_basis_count(kind, sym, r)


def test_figure_loading_and_dot():
    assert len(FIGURES) == 6
    edges = load_figure("fig2")
    assert edges == sorted(edges) and len(edges) == 3
    dot = edges_to_dot([HasseEdge("ABBA", 1, "ABAB")])
    assert dot.startswith("digraph hasse {") and '"ABBA" -> "ABAB" [label="1"];' in dot
    with pytest.raises(ValueError):
        load_figure("fig9")


def test_sp_n2_hasse_matches_fixture():
    assert edges_to_dot(hasse("sp", 2, 3)) == edges_to_dot(load_figure("fig2"))
