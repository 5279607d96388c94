"""Row-reduction kernels over Z/p.

Two interchangeable backends: loop kernels compiled with numba, and a
vectorised numpy path.  Set ``TRIFLAG_DISABLE_JIT=1`` to force numpy (also
used automatically when numba is missing).  Both return identical arrays.
"""

from __future__ import annotations

import os

import numpy as np

_WANT_JIT = os.environ.get("TRIFLAG_DISABLE_JIT", "").lower() not in ("1", "true", "yes")

try:
    import numba as _nb
except ImportError:  # pragma: no cover - numba is a declared dependency
    _nb = None

JIT_ACTIVE = _WANT_JIT and _nb is not None


def _inv_mod_loop(a, p):
    # extended Euclid; a is nonzero mod p
    t, new_t = 0, 1
    r, new_r = p, a % p
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    return t % p


def _rref_loop(a, p):
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        piv = -1
        for r in range(rank, rows):
            if a[r, c] % p != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(cols):
                tmp = a[piv, k]
                a[piv, k] = a[rank, k]
                a[rank, k] = tmp
        inv = _inv_mod_loop(a[rank, c], p)
        for k in range(cols):
            a[rank, k] = (a[rank, k] * inv) % p
        for r in range(rows):
            if r != rank:
                f = a[r, c] % p
                if f != 0:
                    for k in range(cols):
                        a[r, k] = (a[r, k] - f * a[rank, k]) % p
        rank += 1
    return rank


def _flag_canon_loop(a, p, out):
    # out[i] = row of rref(span(a[0..i])) whose pivot is new at step i
    k, cols = a.shape
    work = np.zeros((k, cols), dtype=np.int64)
    pivots = np.full(k, -1, dtype=np.int64)
    for i in range(k):
        for c in range(cols):
            work[i, c] = a[i, c] % p
        for j in range(i):
            pc = pivots[j]
            f = work[i, pc]
            if f != 0:
                for c in range(cols):
                    work[i, c] = (work[i, c] - f * work[j, c]) % p
        lead = -1
        for c in range(cols):
            if work[i, c] != 0:
                lead = c
                break
        if lead < 0:
            return False
        inv = _inv_mod_loop(work[i, lead], p)
        for c in range(cols):
            work[i, c] = (work[i, c] * inv) % p
        for j in range(i):
            f = work[j, lead]
            if f != 0:
                for c in range(cols):
                    work[j, c] = (work[j, c] - f * work[i, c]) % p
        pivots[i] = lead
        for c in range(cols):
            out[i, c] = work[i, c]
    return True


def _batch_flag_canon_loop(stack, p, out):
    ok = True
    for t in range(stack.shape[0]):
        if not _flag_canon_loop(stack[t], p, out[t]):
            ok = False
    return ok


def _rref_numpy(a, p):
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        a[rank] = (a[rank] * pow(int(a[rank, c]), -1, p)) % p
        f = a[:, c].copy()
        f[rank] = 0
        a -= np.outer(f, a[rank])
        a %= p
        rank += 1
    return rank


def _flag_canon_numpy(a, p, out):
    k, cols = a.shape
    work = np.zeros((k, cols), dtype=np.int64)
    pivots = []
    for i in range(k):
        row = a[i] % p
        for j, pc in enumerate(pivots):
            if row[pc]:
                row = (row - row[pc] * work[j]) % p
        nz = np.nonzero(row)[0]
        if nz.size == 0:
            return False
        lead = int(nz[0])
        row = (row * pow(int(row[lead]), -1, p)) % p
        if i:
            f = work[:i, lead].copy()
            work[:i] = (work[:i] - np.outer(f, row)) % p
        work[i] = row
        pivots.append(lead)
        out[i] = row
    return True


def _batch_flag_canon_numpy(stack, p, out):
    ok = True
    for t in range(stack.shape[0]):
        ok = _flag_canon_numpy(stack[t], p, out[t]) and ok
    return ok


if JIT_ACTIVE:
    _inv_mod_loop = _nb.njit(cache=True)(_inv_mod_loop)
    _rref_kernel = _nb.njit(cache=True)(_rref_loop)
    _flag_canon_loop = _nb.njit(cache=True)(_flag_canon_loop)
    _batch_kernel = _nb.njit(cache=True)(_batch_flag_canon_loop)
else:
    _rref_kernel = _rref_numpy
    _batch_kernel = _batch_flag_canon_numpy


def rref_inplace(a: np.ndarray, p: int) -> int:
    """Row-reduce the int64 array ``a`` in place; return its rank."""
    return int(_rref_kernel(a, p))


def batch_flag_canon(stack: np.ndarray, p: int) -> np.ndarray:
    """Canonical flag bases for every ``stack[t]`` (rows = ordered basis)."""
    stack = np.ascontiguousarray(stack, dtype=np.int64)
    out = np.zeros_like(stack)
    if not _batch_kernel(stack, p, out):
        raise ValueError("dependent rows in a flag basis")
    return out


def backend_name() -> str:
    return "numba" if JIT_ACTIVE else "numpy"


# pure-numpy entry points, always available for benchmarking and cross-checks
def rref_inplace_numpy(a: np.ndarray, p: int) -> int:
    return _rref_numpy(a, p)


def batch_flag_canon_numpy(stack: np.ndarray, p: int) -> np.ndarray:
    stack = np.ascontiguousarray(stack, dtype=np.int64)
    out = np.zeros_like(stack)
    if not _batch_flag_canon_numpy(stack, p, out):
        raise ValueError("dependent rows in a flag basis")
    return out
