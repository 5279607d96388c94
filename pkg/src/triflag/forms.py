"""Bilinear forms, orthogonal complements, group membership and generators.

Coordinates are 1-based in docstrings and 0-based in code.  The odd symmetric
form on F^{2n+1} pairs e_i with e_{2n+2-i}; the alternating form on F^{2n}
pairs e_i with e_{2n+1-i}, with sign +1 when i <= n.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .exactlin import (GuardExceeded, Subspace, as_field, det, inverse,
                       mat_mul, null_space)


def anti_identity(k: int) -> np.ndarray:
    return np.fliplr(np.eye(k, dtype=np.int64))


def sym_gram(n: int) -> np.ndarray:
    """Gram matrix J_{2n+1} of the split symmetric form on F^{2n+1}."""
    return anti_identity(2 * n + 1)


def alt_gram(n: int, p: int) -> np.ndarray:
    """Gram matrix of the standard alternating form on F^{2n}."""
    g = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for i in range(2 * n):
        g[i, 2 * n - 1 - i] = 1 if i < n else p - 1
    return g % p


@dataclass(frozen=True)
class Form:
    """A bilinear form given by its Gram matrix (entries mod p)."""

    gram: np.ndarray
    p: int
    kind: str

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    def pair(self, u, v) -> int:
        return int(np.asarray(u, dtype=np.int64) @ self.gram @ np.asarray(v, dtype=np.int64) % self.p)

    def pairing_matrix(self, rows_a, rows_b) -> np.ndarray:
        return mat_mul(mat_mul(rows_a, self.gram, self.p), np.asarray(rows_b).T, self.p)


def symmetric_form(n: int, p: int) -> Form:
    field = as_field(p)
    field.require_odd()
    return Form(sym_gram(n), field.p, "symmetric")


def alternating_form(n: int, p: int) -> Form:
    p = as_field(p).p
    return Form(alt_gram(n, p), p, "alternating")


def perp(v: Subspace, form: Form) -> Subspace:
    """Ambient orthogonal complement {x : (v, x) = 0 for all v in V}."""
    if v.dim == 0:
        return Subspace.whole(v.ambient, v.p)
    return Subspace(v.p, v.ambient, null_space(mat_mul(v.basis, form.gram, v.p), v.p).copy())


def is_isotropic(v: Subspace, form: Form) -> bool:
    if v.dim == 0:
        return True
    return not form.pairing_matrix(v.basis, v.basis).any()


def is_maximal_isotropic(v: Subspace, form: Form) -> bool:
    return v.dim == form.dim // 2 and is_isotropic(v, form)


def preserves(g, form: Form) -> bool:
    g = np.asarray(g, dtype=np.int64)
    return np.array_equal(mat_mul(mat_mul(g.T, form.gram, form.p), g, form.p), form.gram % form.p)


# ---------------------------------------------------------------- block elements

def h_block(a, p: int) -> np.ndarray:
    """h[A] = diag(A, 1, J A^{-T} J) on F^{2n+1}."""
    a = np.asarray(a, dtype=np.int64) % p
    n = a.shape[0]
    j = anti_identity(n)
    g = np.zeros((2 * n + 1, 2 * n + 1), dtype=np.int64)
    g[:n, :n] = a
    g[n, n] = 1
    g[n + 1:, n + 1:] = j @ inverse(a, p).T @ j
    return g % p


def embed_block(block, offset: int, size: int) -> np.ndarray:
    g = np.eye(size, dtype=np.int64)
    k = block.shape[0]
    g[offset:offset + k, offset:offset + k] = block
    return g


def complete_z(x, z_known: dict, m: int, p: int) -> np.ndarray:
    """Solve Z + J Z^T J = -J X^T J X, keeping prescribed entries.

    ``z_known`` maps 0-based (i, j) to values.  Unprescribed entries in the
    strictly upper-left triangle are set to zero; the rest are forced.
    """
    x = np.asarray(x, dtype=np.int64) % p
    k = x.shape[0]
    jm, jk = anti_identity(m), anti_identity(k)
    rhs = (-(jm @ x.T @ jk @ x)) % p
    z = np.zeros((m, m), dtype=np.int64)
    known = dict(z_known)
    half = pow(2, -1, p)
    for i in range(m):
        for j in range(m):
            mi, mj = m - 1 - j, m - 1 - i   # partner entry of (i, j)
            if (i, j) == (mi, mj):
                z[i, j] = rhs[i, j] * half % p
            elif (i, j) in known:
                z[i, j] = known[(i, j)] % p
            elif (mi, mj) in known:
                z[i, j] = (rhs[i, j] - known[(mi, mj)]) % p
            elif i + j < m - 1:
                z[i, j] = 0
            else:
                z[i, j] = (rhs[i, j] - z[mi, mj]) % p
    for (i, j), val in known.items():
        if z[i, j] != val % p:
            raise ValueError("prescribed Z entries violate the isotropy relation")
    return z


def g_xz(x, z, n: int, d: int, p: int) -> np.ndarray:
    """Unipotent g(X, Z) of N_{W_0}, with m = n - d."""
    m = n - d
    k = 2 * d + 1
    x = np.asarray(x, dtype=np.int64) % p
    z = np.asarray(z, dtype=np.int64) % p
    g = np.eye(2 * n + 1, dtype=np.int64)
    g[:m, m:m + k] = -(anti_identity(m) @ x.T @ anti_identity(k))
    g[:m, m + k:] = z
    g[m:m + k, m + k:] = x
    return g % p


def weyl_flip(n: int, p: int) -> np.ndarray:
    """e_i -> e_{2n+2-i} with a sign on e_{n+1} making the determinant 1."""
    g = anti_identity(2 * n + 1).copy()
    g[n, n] = 1 if n % 2 == 0 else p - 1
    return g % p


def double_swap(n: int) -> np.ndarray:
    """Swap e_{n-1} <-> e_{n+3} and e_n <-> e_{n+2}; fixes e_{n+1}."""
    g = np.eye(2 * n + 1, dtype=np.int64)
    for a, b in ((n - 2, n + 2), (n - 1, n + 1)):
        g[[a, b]] = g[[b, a]]
    return g


def middle_flip(n: int, p: int) -> np.ndarray:
    """e_{n+1} -> -e_{n+1}, e_n <-> e_{n+2}: an element of the G-normaliser of M'."""
    g = np.eye(2 * n + 1, dtype=np.int64)
    g[[n - 1, n + 1]] = g[[n + 1, n - 1]]
    g[n, n] = p - 1
    return g % p


def transvection(v, gram, p: int) -> np.ndarray:
    """x -> x + <x, v> v, with <x, v> = x^T G v."""
    v = np.asarray(v, dtype=np.int64)
    # column vector action: t = I + v (G v)^T with <x,v> = x^T G v
    return (np.eye(len(v), dtype=np.int64) + np.outer(v, gram @ v)) % p


def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    phi = p - 1
    factors = {q for q in range(2, phi + 1) if phi % q == 0 and all(q % r for r in range(2, q))}
    for g in range(2, p):
        if all(pow(g, phi // q, p) != 1 for q in factors):
            return g
    raise AssertionError("no primitive root")


def gl_generators(k: int, p: int) -> list[np.ndarray]:
    if k == 0:
        return []
    gens = []
    w = primitive_root(p)
    if w != 1:
        d = np.eye(k, dtype=np.int64)
        d[0, 0] = w
        gens.append(d)
    if k >= 2:
        t = np.eye(k, dtype=np.int64)
        t[0, 1] = 1
        gens.append(t)
        s = np.eye(k, dtype=np.int64)
        s[[0, 1]] = s[[1, 0]]
        gens.append(s)
        c = np.roll(np.eye(k, dtype=np.int64), 1, axis=0)
        gens.append(c)
    return gens


def _block_diag(*blocks) -> np.ndarray:
    size = sum(b.shape[0] for b in blocks)
    g = np.zeros((size, size), dtype=np.int64)
    o = 0
    for b in blocks:
        k = b.shape[0]
        g[o:o + k, o:o + k] = b
        o += k
    return g


def antisym_z_generators(m: int, p: int) -> list[np.ndarray]:
    """Z with Z + J Z^T J = 0, one per free position."""
    out = []
    for i in range(m):
        for j in range(m):
            if i + j < m - 1:
                z = np.zeros((m, m), dtype=np.int64)
                z[i, j] = 1
                z[m - 1 - j, m - 1 - i] = p - 1
                out.append(z)
    return out


def radical_generators(n: int, d: int, p: int) -> list[np.ndarray]:
    """Generators of N_{W_0} for the pair (U_0, U_d)."""
    m, k = n - d, 2 * d + 1
    gens = []
    for r in range(k):
        for c in range(m):
            x = np.zeros((k, m), dtype=np.int64)
            x[r, c] = 1
            gens.append(g_xz(x, complete_z(x, {}, m, p), n, d, p))
    for z in antisym_z_generators(m, p):
        gens.append(g_xz(np.zeros((k, m), dtype=np.int64), z, n, d, p))
    return gens


def levi_w0_element(a, n: int, d: int, p: int) -> np.ndarray:
    """diag(A, I_{2d+1}, J A^{-T} J) for A in GL_{n-d}."""
    a = np.asarray(a, dtype=np.int64) % p
    m = n - d
    j = anti_identity(m)
    g = np.eye(2 * n + 1, dtype=np.int64)
    g[:m, :m] = a
    g[m + 2 * d + 1:, m + 2 * d + 1:] = j @ inverse(a, p).T @ j
    return g % p


def w1_element(block, n: int, d: int) -> np.ndarray:
    """Embed a (2d+1)-square block acting on W_1 = span(e_{m+1}..e_{n+d+1})."""
    return embed_block(np.asarray(block, dtype=np.int64), n - d, 2 * n + 1)


GROUP_NAMES = ("so-odd", "so-even-split", "so-even-tilde", "sp", "q2n", "one-sp",
               "gl", "gl-levi", "r-n", "r-d", "p-u0")


def generators(which: str, n: int, p: int, **kw) -> list[np.ndarray]:
    """Generator list for the named group (see ``GROUP_NAMES``).

    ``n`` is the rank parameter: SO_{2n+1}, Sp_{2n}, Q_{2n}, 1 x Sp_{2n-2}
    (acting on F^{2n-1}).  For ``gl`` and ``gl-levi`` it is the matrix size;
    ``gl-levi`` also takes ``m_plus``.  ``r-d`` takes ``d``.
    """
    p = as_field(p).p
    if which in ("so-odd", "so-even-split", "so-even-tilde", "r-n", "r-d", "p-u0"):
        as_field(p).require_odd()
    if which == "so-odd":
        gens = [h_block(a, p) for a in gl_generators(n, p)]
        gens += radical_generators(n, 0, p)
        gens.append(weyl_flip(n, p))
        return gens
    if which in ("so-even-split", "so-even-tilde"):
        gens = [h_block(a, p) for a in gl_generators(n, p)]
        gens += [g_xz(np.zeros((1, n), dtype=np.int64), z, n, 0, p)
                 for z in antisym_z_generators(n, p)]
        if n >= 2:
            gens.append(double_swap(n))
        if which == "so-even-tilde":
            gens.append(middle_flip(n, p))
        return gens
    if which == "p-u0":
        return generators("r-d", n, p, d=0)
    if which == "r-d":
        d = kw["d"]
        m = n - d
        gens = [levi_w0_element(a, n, d, p) for a in gl_generators(m, p)]
        gens += radical_generators(n, d, p)
        gens += [w1_element(h_block(a, p), n, d) for a in gl_generators(d, p)]
        return gens
    if which == "r-n":
        return [h_block(a, p) for a in gl_generators(n, p)]
    if which == "sp":
        g = alt_gram(n, p)
        return [transvection(v, g, p) for v in _transvection_vectors(2 * n, range(2 * n))]
    if which == "q2n":
        g = alt_gram(n, p)
        return [transvection(v, g, p) for v in _transvection_vectors(2 * n, range(1, 2 * n))]
    if which == "one-sp":
        inner = generators("sp", n - 1, p) if n >= 2 else []
        return [_block_diag(np.eye(1, dtype=np.int64), t) for t in inner] or [np.eye(2 * n - 1, dtype=np.int64)]
    if which == "gl":
        return gl_generators(n, p)
    if which == "gl-levi":
        mp = kw["m_plus"]
        mm = n - mp
        gens = [_block_diag(a, np.eye(mm, dtype=np.int64)) for a in gl_generators(mp, p)]
        gens += [_block_diag(np.eye(mp, dtype=np.int64), a) for a in gl_generators(mm, p)]
        return gens or [np.eye(n, dtype=np.int64)]
    raise ValueError(f"unknown group {which!r}")


def _transvection_vectors(size: int, support: Iterable[int]) -> list[np.ndarray]:
    support = list(support)
    vecs = []
    for i in support:
        v = np.zeros(size, dtype=np.int64)
        v[i] = 1
        vecs.append(v)
    for a in range(len(support)):
        for b in range(a + 1, len(support)):
            v = np.zeros(size, dtype=np.int64)
            v[support[a]] = v[support[b]] = 1
            vecs.append(v)
    return vecs


def in_group(g, which: str, n: int, p: int, **kw) -> bool:
    """Exact membership test for the named group."""
    g = np.asarray(g, dtype=np.int64) % p
    size = g.shape[0]
    if g.shape != (size, size):
        raise ValueError("group elements are square matrices")
    if which in ("gl", "gl-levi"):
        if size != n:
            raise ValueError("size mismatch")
        if det(g, p) == 0:
            return False
        if which == "gl-levi":
            mp = kw["m_plus"]
            return not g[:mp, mp:].any() and not g[mp:, :mp].any()
        return True
    if which in ("sp", "q2n"):
        if size != 2 * n:
            raise ValueError("size mismatch")
        ok = preserves(g, alternating_form(n, p))
        if which == "q2n":
            ok = ok and np.array_equal(g[:, -1], np.eye(2 * n, dtype=np.int64)[-1])
        return ok
    if which == "one-sp":
        if size != 2 * n - 1:
            raise ValueError("size mismatch")
        e0 = np.eye(size, dtype=np.int64)[0]
        if not np.array_equal(g[:, 0], e0) or not np.array_equal(g[0], e0):
            return False
        return n == 1 or preserves(g[1:, 1:], alternating_form(n - 1, p))
    if size != 2 * n + 1:
        raise ValueError("size mismatch")
    form = symmetric_form(n, p)
    if not preserves(g, form) or det(g, p) != 1:
        return False
    mid = np.zeros(size, dtype=np.int64)
    mid[n] = 1
    if which == "so-odd":
        return True
    if which == "so-even-split":
        return np.array_equal(g[:, n], mid)
    if which == "so-even-tilde":
        return np.array_equal(g[:, n], mid) or np.array_equal(g[:, n], (-mid) % p)
    u0 = Subspace.coordinate(range(1, n + 1), size, p)
    if which == "r-n":
        from .so_triple import u_d
        return u0.image(g) == u0 and u_d(n, n, p).image(g) == u_d(n, n, p)
    if which in ("r-d", "p-u0"):
        from .so_triple import u_d
        d = kw.get("d", 0)
        return u0.image(g) == u0 and u_d(n, d, p).image(g) == u_d(n, d, p)
    raise ValueError(f"unknown group {which!r}")


def group_order(which: str, n: int, r: int, **kw) -> int:
    """Order of the named finite group over F_r."""
    def gl(k):
        out = 1
        for i in range(k):
            out *= r**k - r**i
        return out

    def sp(k):
        out = r ** (k * k)
        for i in range(1, k + 1):
            out *= r ** (2 * i) - 1
        return out

    if which == "so-odd":
        return sp(n)
    if which == "sp":
        return sp(n)
    if which == "q2n":
        return sp(n) // (r ** (2 * n) - 1)
    if which == "one-sp":
        return sp(n - 1)
    if which == "gl":
        return gl(n)
    if which == "gl-levi":
        return gl(kw["m_plus"]) * gl(n - kw["m_plus"])
    if which == "r-n":
        return gl(n)
    if which == "so-even-split":
        out = r ** (n * (n - 1)) * (r**n - 1)
        for i in range(1, n):
            out *= r ** (2 * i) - 1
        return out
    if which == "so-even-tilde":
        return 2 * group_order("so-even-split", n, r)
    if which in ("r-d", "p-u0"):
        from .so_triple import m_count, pu_d_size
        d = kw.get("d", 0)
        return sp(n) // (m_count(n, r) * pu_d_size(n, d, r))
    raise ValueError(f"unknown group {which!r}")


def closure(gens: Sequence[np.ndarray], p: int, limit: int = 10**6) -> list[np.ndarray]:
    """All elements of the group generated by ``gens`` (BFS on byte keys)."""
    size = gens[0].shape[0]
    ident = np.eye(size, dtype=np.int64)
    seen = {ident.tobytes(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = (g @ x) % p
                k = y.tobytes()
                if k not in seen:
                    seen[k] = y
                    nxt.append(y)
                    if len(seen) > limit:
                        raise GuardExceeded(f"group closure exceeds {limit} elements")
        frontier = nxt
    return list(seen.values())


def random_word(gens: Sequence[np.ndarray], p: int, rng: random.Random, length: int = 12) -> np.ndarray:
    g = np.eye(gens[0].shape[0], dtype=np.int64)
    for _ in range(length):
        g = (gens[rng.randrange(len(gens))] @ g) % p
    return g


def stabilizer_elements(elements: Iterable[np.ndarray], test: Callable[[np.ndarray], bool]) -> list[np.ndarray]:
    return [g for g in elements if test(g)]
