"""Big-integer counting helpers: r-factorials, psi factors, group orders."""

from __future__ import annotations

from math import comb, factorial


def q_int(m: int, r: int) -> int:
    """1 + r + ... + r^{m-1}."""
    return sum(r**i for i in range(m))


def q_factorial(m: int, r: int) -> int:
    """[r]_m = prod_{k=1}^m (r^k - 1)/(r - 1); the number of full flags of F_r^m."""
    if r < 2:
        raise ValueError("r must be at least 2")
    out = 1
    for k in range(1, m + 1):
        out *= q_int(k, r)
    return out


def psi(c0: int, eps: int, r: int) -> int:
    """|GL_{c0}(F_r)| / |H| for the three stabiliser types."""
    if eps not in (0, 1):
        raise ValueError("eps must be 0 or 1")
    if c0 < 0 or (eps == 0 and c0 % 2) or (eps == 1 and c0 == 0):
        raise ValueError(f"no psi factor for c0={c0}, eps={eps}")
    k = (c0 + 1) // 2
    out = r ** (k * (k - 1))
    for i in range(1, k + 1):
        out *= r ** (2 * i - 1) - 1
    if eps == 1 and c0 % 2 == 0:
        out *= r**c0 - 1
    return out


def gl_order(k: int, r: int) -> int:
    out = 1
    for i in range(k):
        out *= r**k - r**i
    return out


def sp_order(k: int, r: int) -> int:
    """|Sp_{2k}(F_r)|, also |SO_{2k+1}(F_r)| for odd r."""
    out = r ** (k * k)
    for i in range(1, k + 1):
        out *= r ** (2 * i) - 1
    return out


def m_count(n: int, r: int) -> int:
    """Number of maximal isotropic subspaces of F_r^{2n+1}."""
    out = 1
    for i in range(1, n + 1):
        out *= r**i + 1
    return out


def inversions(seq) -> int:
    seq = list(seq)
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])


def exact_div(a: int, b: int) -> int:
    q, rem = divmod(a, b)
    if rem:
        raise ArithmeticError(f"{a} is not divisible by {b}")
    return q


def degree(size_fn) -> int:
    """Degree of a monic integer polynomial in r, read off from its value at r = 10^30."""
    digits = len(str(size_fn(10**30)))
    return round((digits - 1) / 30)


def poly_degree_by_interpolation(size_fn, points=(2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)) -> int:
    """Degree of the polynomial through (r, size_fn(r)) via exact divided differences."""
    from fractions import Fraction

    xs = list(points)
    ys = [Fraction(size_fn(x)) for x in xs]
    table = ys[:]
    coeffs = [table[0]]
    for level in range(1, len(xs)):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(len(table) - 1)]
        coeffs.append(table[0])
    nonzero = [k for k, c in enumerate(coeffs) if c != 0]
    deg = nonzero[-1] if nonzero else 0
    if deg >= len(xs) - 2:
        raise ValueError("not enough interpolation points")
    return deg


__all__ = ["q_int", "q_factorial", "psi", "gl_order", "sp_order", "m_count", "inversions",
           "exact_div", "degree", "poly_degree_by_interpolation", "comb", "factorial"]
