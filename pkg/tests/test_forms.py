import random

import numpy as np
import pytest

from triflag.exactlin import Subspace
from triflag.forms import (alternating_form, closure, generators, group_order, in_group,
                           is_maximal_isotropic, perp, random_word, symmetric_form)


@pytest.mark.parametrize("which,n,p", [("so-odd", 1, 3), ("sp", 1, 3), ("sp", 2, 2), ("q2n", 2, 2),
                                       ("one-sp", 2, 3), ("gl", 2, 3)])
def test_generator_closure_orders(which, n, p):
    elems = closure(generators(which, n, p), p)
    assert len(elems) == group_order(which, n, p)


@pytest.mark.parametrize("which,n,p", [("so-odd", 2, 3), ("sp", 2, 3), ("q2n", 2, 3), ("one-sp", 3, 3),
                                       ("so-even-tilde", 2, 3)])
def test_generators_preserve(which, n, p):
    gens = generators(which, n, p)
    rng = random.Random(4)
    for _ in range(5):
        assert in_group(random_word(gens, p, rng), which, n, p)


def test_so3_order():
    # SO_3(F_3) has r(r^2 - 1) = 24 elements
    assert len(closure(generators("so-odd", 1, 3), 3)) == 24


def test_forms_and_perp():
    form = symmetric_form(2, 3)
    u0 = Subspace.coordinate([1, 2], 5, 3)
    assert is_maximal_isotropic(u0, form)
    assert perp(u0, form).dim == 3
    alt = alternating_form(2, 5)
    assert np.array_equal(alt.gram, (-alt.gram.T) % 5)
