"""Exact linear algebra over prime fields.

Vectors are rows.  Matrices are int64 numpy arrays with every entry reduced
into ``[0, p)``.  A :class:`Subspace` stores its reduced row-echelon basis, so
two subspaces are equal exactly when their bases are byte-identical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels

MAX_PRIME = 1 << 15
DEFAULT_GUARD = 10**8


class GuardExceeded(RuntimeError):
    """An enumeration would exceed its configured size cap."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not is_prime(int(self.p)):
            raise ValueError(f"{self.p} is not prime")
        if self.p > MAX_PRIME:
            raise ValueError(f"p={self.p} exceeds the supported bound {MAX_PRIME}")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(int(a), -1, self.p)

    @property
    def half(self) -> int:
        if self.p == 2:
            raise ValueError("1/2 does not exist in characteristic 2")
        return self.inv(2)

    def sqrt(self, a: int) -> int | None:
        a %= self.p
        for x in range(self.p):
            if x * x % self.p == a:
                return x
        return None

    def require_odd(self) -> None:
        if self.p == 2:
            raise ValueError("orthogonal geometry needs an odd prime")

    def elements(self) -> range:
        return range(self.p)


def as_field(p: int | PrimeField) -> PrimeField:
    return p if isinstance(p, PrimeField) else PrimeField(int(p))


def matrix(rows, p: int, ncols: int | None = None) -> np.ndarray:
    """Int64 array reduced mod p (accepts lists, arrays, empty input)."""
    arr = np.array(rows, dtype=np.int64)
    if arr.size == 0:
        return np.zeros((0, ncols or 0), dtype=np.int64)
    if arr.ndim == 1:
        arr = arr[None, :]
    return arr % int(p)


def rref(m, p: int) -> tuple[np.ndarray, int]:
    """Reduced row-echelon form of ``m`` over F_p and its rank."""
    p = as_field(p).p
    a = np.array(m, dtype=np.int64) % p
    if a.ndim != 2:
        a = a.reshape(len(a), -1) if a.size else np.zeros((0, 0), dtype=np.int64)
    a = np.ascontiguousarray(a)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return a, 0
    rank = _kernels.rref_inplace(a, p)
    return a, rank


def rank(m, p: int) -> int:
    return rref(m, p)[1]


def mat_mul(a, b, p: int) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p


def inverse(m, p: int) -> np.ndarray:
    m = np.asarray(m, dtype=np.int64) % p
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    red, r = rref(np.hstack([m, np.eye(n, dtype=np.int64)]), p)
    if r < n or not np.array_equal(red[:, :n], np.eye(n, dtype=np.int64)):
        raise ValueError("matrix is singular")
    return red[:, n:].copy()


def det(m, p: int) -> int:
    a = np.array(m, dtype=np.int64) % p
    n = a.shape[0]
    d = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        piv = c + nz[0]
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            d = -d
        d = d * int(a[c, c]) % p
        inv = pow(int(a[c, c]), -1, p)
        f = (a[c + 1:, c] * inv) % p
        a[c + 1:] = (a[c + 1:] - np.outer(f, a[c])) % p
    return d % p


def null_space(m, p: int, ncols: int | None = None) -> np.ndarray:
    """Rows spanning {x : m @ x = 0}, in reduced echelon form."""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1] if m.ndim == 2 and m.size else (ncols if ncols is not None else m.shape[-1])
    if m.size == 0:
        return np.eye(cols, dtype=np.int64)
    red, r = rref(m, p)
    pivots = [int(np.nonzero(red[i])[0][0]) for i in range(r)]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fcol in enumerate(free):
        basis[k, fcol] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-red[i, fcol]) % p
    return rref(basis, p)[0] if len(free) else basis


def solve_left(a, b, p: int) -> np.ndarray | None:
    """Some x with x @ a = b (vector b), or None."""
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    k = a.shape[0]
    aug = np.hstack([a.T, b[:, None]])
    red, r = rref(aug, p)
    x = np.zeros(k, dtype=np.int64)
    for i in range(r):
        lead = int(np.nonzero(red[i])[0][0])
        if lead == k:
            return None
        x[lead] = red[i, k]
    return x


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F_p^ambient held by its canonical echelon basis."""

    p: int
    ambient: int
    basis: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.basis.setflags(write=False)

    @classmethod
    def span(cls, rows, p: int, ambient: int | None = None) -> "Subspace":
        p = as_field(p).p
        arr = np.asarray(rows, dtype=np.int64)
        if arr.size == 0:
            if ambient is None:
                raise ValueError("ambient dimension needed for an empty span")
            return cls.zero(ambient, p)
        if arr.ndim == 1:
            arr = arr[None, :]
        if ambient is not None and arr.shape[1] != ambient:
            raise ValueError("row width differs from ambient dimension")
        red, r = rref(arr, p)
        return cls(p, arr.shape[1], red[:r].copy())

    @classmethod
    def zero(cls, ambient: int, p: int) -> "Subspace":
        return cls(p, ambient, np.zeros((0, ambient), dtype=np.int64))

    @classmethod
    def whole(cls, ambient: int, p: int) -> "Subspace":
        return cls(p, ambient, np.eye(ambient, dtype=np.int64))

    @classmethod
    def coordinate(cls, indices: Iterable[int], ambient: int, p: int) -> "Subspace":
        """Span of e_i for the given 1-based indices."""
        idx = sorted(set(indices))
        rows = np.zeros((len(idx), ambient), dtype=np.int64)
        for k, i in enumerate(idx):
            rows[k, i - 1] = 1
        return cls(p, ambient, rows)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @cached_property
    def key(self) -> bytes:
        return self.basis.astype(np.int16).tobytes()

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(int(np.nonzero(r)[0][0]) for r in self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.p, self.ambient, self.dim, self.key) == (other.p, other.ambient, other.dim, other.key)

    def __hash__(self):
        return hash((self.p, self.ambient, self.key))

    def __repr__(self):
        return f"Subspace(p={self.p}, dim={self.dim}/{self.ambient}, basis={self.basis.tolist()})"

    def _check(self, other: "Subspace"):
        if self.ambient != other.ambient or self.p != other.p:
            raise ValueError("subspaces live in different spaces")

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64) % self.p
        if self.dim == 0:
            return not v.any()
        return rank(np.vstack([self.basis, v]), self.p) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(r) for r in self.basis)

    def complement_rows(self) -> np.ndarray:
        """Coordinate vectors completing this basis to the whole space."""
        free = [c for c in range(self.ambient) if c not in self.pivots]
        rows = np.zeros((len(free), self.ambient), dtype=np.int64)
        for k, c in enumerate(free):
            rows[k, c] = 1
        return rows

    def image(self, g) -> "Subspace":
        """g·V for a matrix g acting on column vectors."""
        if self.dim == 0:
            return self
        return Subspace.span(mat_mul(self.basis, np.asarray(g).T, self.p), self.p)

    def project(self, coords: Sequence[int]) -> "Subspace":
        """Image under the coordinate projection killing every other coordinate."""
        mask = np.zeros(self.ambient, dtype=np.int64)
        mask[list(coords)] = 1
        return Subspace.span(self.basis * mask, self.p, self.ambient)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    return Subspace.span(np.vstack([a.basis, b.basis]), a.p, a.ambient)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    p = a.p
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient, p)
    # x a = y b  <=>  (x, -y) in left kernel of [a; b]
    stacked = np.vstack([a.basis, (-b.basis) % p])
    kern = null_space(stacked.T, p)
    if kern.shape[0] == 0:
        return Subspace.zero(a.ambient, p)
    return Subspace.span(mat_mul(kern[:, : a.dim], a.basis, p), p, a.ambient)


def intersect_all(spaces: Iterable[Subspace]) -> Subspace:
    spaces = list(spaces)
    out = spaces[0]
    for s in spaces[1:]:
        out = intersect(out, s)
    return out


def gaussian_binomial(n: int, k: int, r: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= r ** (n - i) - 1
        den *= r ** (i + 1) - 1
    return num // den


def _check_guard(count: int, guard: int | None):
    cap = DEFAULT_GUARD if guard is None else guard
    if count > cap:
        raise GuardExceeded(f"enumeration of {count} objects exceeds the cap {cap}")


def enumerate_subspaces(n: int, k: int, p: int, guard: int | None = None) -> Iterator[Subspace]:
    """Every k-dimensional subspace of F_p^n exactly once, by echelon pattern."""
    p = as_field(p).p
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    _check_guard(gaussian_binomial(n, k, p), guard)
    for piv in itertools.combinations(range(n), k):
        slots = [(i, c) for i in range(k) for c in range(piv[i] + 1, n) if c not in piv]
        for values in itertools.product(range(p), repeat=len(slots)):
            rows = np.zeros((k, n), dtype=np.int64)
            for i, c in enumerate(piv):
                rows[i, c] = 1
            for (i, c), v in zip(slots, values):
                rows[i, c] = v
            yield Subspace(p, n, rows)


def enumerate_vectors(n: int, p: int) -> np.ndarray:
    """All p^n vectors of F_p^n as rows, lexicographic."""
    grids = np.indices((p,) * n).reshape(n, -1).T
    return np.ascontiguousarray(grids, dtype=np.int64)


def projective_points(space: Subspace) -> np.ndarray:
    """One normalised vector per line of ``space`` (first nonzero coordinate 1)."""
    coeffs = enumerate_vectors(space.dim, space.p)[1:]
    vecs = mat_mul(coeffs, space.basis, space.p)
    out = []
    for v in vecs:
        lead = v[np.nonzero(v)[0][0]]
        if lead == 1:
            out.append(v)
    return np.array(out, dtype=np.int64).reshape(-1, space.ambient)


def vectors_outside(big: Subspace, small: Subspace) -> np.ndarray:
    """All vectors of ``big`` not lying in ``small`` (small ⊂ big)."""
    coeffs = enumerate_vectors(big.dim, big.p)
    vecs = mat_mul(coeffs, big.basis, big.p)
    if small.dim == 0:
        return vecs[np.any(vecs != 0, axis=1)]
    # v in small iff v reduces to zero against small's echelon basis
    red = vecs.copy()
    for row, pc in zip(small.basis, small.pivots):
        red = (red - np.outer(red[:, pc], row)) % big.p
    return vecs[np.any(red != 0, axis=1)]


@dataclass(frozen=True, eq=False)
class FullFlag:
    """Chain V_1 ⊂ V_2 ⊂ ... of subspaces with dim V_i = i.

    ``rows`` is the canonical ordered basis: row i is the row of the echelon
    basis of V_i whose pivot column is new at step i.  A flag may stop short
    of the ambient space (isotropic flags do).
    """

    p: int
    ambient: int
    rows: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.rows.setflags(write=False)

    @classmethod
    def from_rows(cls, rows, p: int, ambient: int | None = None) -> "FullFlag":
        p = as_field(p).p
        arr = np.asarray(rows, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr[None, :]
        if ambient is not None and arr.shape[1] != ambient:
            raise ValueError("row width differs from ambient dimension")
        canon = _kernels.batch_flag_canon(arr[None], p)[0]
        return cls(p, arr.shape[1], canon)

    @classmethod
    def from_spaces(cls, spaces: Sequence[Subspace]) -> "FullFlag":
        rows = []
        prev = None
        for i, s in enumerate(spaces):
            if s.dim != i + 1 or (prev is not None and not prev <= s):
                raise ValueError("not an increasing chain with dim V_i = i")
            extra = vectors_outside_first(s, prev)
            rows.append(extra)
            prev = s
        return cls.from_rows(rows, spaces[0].p)

    @classmethod
    def coordinate(cls, order: Sequence[int], ambient: int, p: int) -> "FullFlag":
        rows = np.zeros((len(order), ambient), dtype=np.int64)
        for k, i in enumerate(order):
            rows[k, i - 1] = 1
        return cls.from_rows(rows, p)

    @property
    def length(self) -> int:
        return self.rows.shape[0]

    @cached_property
    def key(self) -> bytes:
        return self.rows.astype(np.int16).tobytes()

    def __eq__(self, other):
        if not isinstance(other, FullFlag):
            return NotImplemented
        return (self.p, self.ambient, self.key) == (other.p, other.ambient, other.key)

    def __hash__(self):
        return hash((self.p, self.ambient, self.key))

    def __repr__(self):
        return f"FullFlag(p={self.p}, rows={self.rows.tolist()})"

    def space(self, i: int) -> Subspace:
        """V_i, with V_0 = 0 and V_i = ambient for i >= ambient."""
        if i <= 0:
            return Subspace.zero(self.ambient, self.p)
        if i >= self.ambient:
            return Subspace.whole(self.ambient, self.p)
        return Subspace.span(self.rows[:i], self.p, self.ambient)

    @cached_property
    def spaces(self) -> tuple[Subspace, ...]:
        return tuple(self.space(i) for i in range(1, self.length + 1))

    def image(self, g) -> "FullFlag":
        return FullFlag.from_rows(mat_mul(self.rows, np.asarray(g).T, self.p), self.p)

    def omit(self, i: int) -> tuple[bytes, ...]:
        """Key of the partial flag obtained by forgetting V_i."""
        return tuple(self.space(k).key for k in range(1, self.length + 1) if k != i)


def vectors_outside_first(big: Subspace, small: Subspace | None) -> np.ndarray:
    """A single basis vector of ``big`` not in ``small``."""
    for row in big.basis:
        if small is None or not small.contains(row):
            return row
    raise ValueError("big is contained in small")


def enumerate_full_flags(n: int, p: int, length: int | None = None,
                         guard: int | None = None) -> Iterator[FullFlag]:
    """All flags V_1 ⊂ ... ⊂ V_length of F_p^n (default: complete flags)."""
    p = as_field(p).p
    length = n - 1 if length is None else length
    total = 1
    for i in range(length):
        total *= gaussian_binomial(n - i, 1, p)
    _check_guard(total, guard)
    yield from _extend_flags(np.zeros((0, n), dtype=np.int64), n, p, length, None)


def _extend_flags(rows, n, p, length, allowed):
    if rows.shape[0] == length:
        yield FullFlag.from_rows(rows, p) if length else FullFlag(p, n, rows)
        return
    current = Subspace.span(rows, p, n)
    for v in _quotient_lines(current, n, p):
        if allowed is not None and not allowed(rows, v):
            continue
        yield from _extend_flags(np.vstack([rows, v]), n, p, length, allowed)


def _quotient_lines(current: Subspace, n: int, p: int) -> Iterator[np.ndarray]:
    """Normalised representatives of the lines of F^n / current."""
    free = [c for c in range(n) if c not in current.pivots]
    for lead_pos, lead in enumerate(free):
        tail = free[lead_pos + 1:]
        for values in itertools.product(range(p), repeat=len(tail)):
            v = np.zeros(n, dtype=np.int64)
            v[lead] = 1
            for c, x in zip(tail, values):
                v[c] = x
            yield v


def enumerate_chains(n: int, p: int, length: int, allowed, guard: int | None = None,
                     estimate: int | None = None) -> Iterator[FullFlag]:
    """Flags of given length whose successive vectors pass ``allowed(rows, v)``."""
    p = as_field(p).p
    if estimate is not None:
        _check_guard(estimate, guard)
    yield from _extend_flags(np.zeros((0, n), dtype=np.int64), n, p, length, allowed)
