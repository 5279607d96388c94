import numpy as np

from triflag import _kernels as K


def test_backends_agree():
    rng = np.random.default_rng(1)
    for p in (2, 3, 7):
        stack = []
        while len(stack) < 200:
            m = rng.integers(0, p, size=(5, 5), dtype=np.int64)
            if K.rref_inplace_numpy(m.copy(), p) == 5:
                stack.append(m)
        stack = np.stack(stack)
        assert np.array_equal(K.batch_flag_canon(stack, p), K.batch_flag_canon_numpy(stack, p))
        for m in stack[:20]:
            a, b = m.copy(), m.copy()
            assert K.rref_inplace(a, p) == K.rref_inplace_numpy(b, p)
            assert np.array_equal(a, b)


def test_backend_name():
    assert K.backend_name() in ("numba", "numpy")
