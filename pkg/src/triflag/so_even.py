"""The split SO_{2n} inside SO_{2n+1}: G' fixes e_{n+1}, G~' fixes it up to sign.

M' is the set of maximal isotropic V orthogonal to e_{n+1}.  It splits into
two G'-orbits told apart by the parity of n - dim(V ∩ U_0).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

from .exactlin import Subspace, intersect
from .forms import is_maximal_isotropic, symmetric_form
from .qcount import exact_div, psi, q_factorial
from .so_triple import TripleLabel, labels, triple_invariants, u_d
from .t0_words import WordSymbol, enumerate_words

__all__ = [
    "EvenComponentTag", "in_Mprime", "component", "u_one", "mprime_size", "even_labels",
    "even_triple_invariants", "even_orbit_size", "even_t0_orbit_size", "even_counts",
    "even_word_counts", "even_words", "mprime_spaces",
]


@dataclass(frozen=True)
class EvenComponentTag:
    nu: int

    def __str__(self):
        return str(self.nu)


def in_Mprime(v: Subspace) -> bool:
    n = (v.ambient - 1) // 2
    if not is_maximal_isotropic(v, symmetric_form(n, v.p)):
        return False
    return not v.basis[:, n].any()


def component(v: Subspace) -> EvenComponentTag:
    """0 for the G'-orbit of U_0, 1 for that of U_1."""
    if not in_Mprime(v):
        raise ValueError("V is not in M'")
    n = (v.ambient - 1) // 2
    return EvenComponentTag((n - intersect(v, u_d(n, 0, v.p)).dim) % 2)


def u_one(n: int, p: int) -> Subspace:
    """span(e_1..e_{n-1}, e_{n+2})."""
    return Subspace.coordinate(list(range(1, n)) + [n + 2], 2 * n + 1, p)


def mprime_size(n: int, r: int) -> int:
    out = 2
    for i in range(1, n):
        out *= r**i + 1
    return out


def mprime_spaces(n: int, p: int) -> list[Subspace]:
    """All of M' over F_p (brute force)."""
    from .exactlin import enumerate_chains
    form = symmetric_form(n, p)
    gram = form.gram

    def allowed(rows, v):
        if v[n] or int(v @ gram @ v) % p:
            return False
        return not (rows @ gram @ v % p).any() if len(rows) else True

    seen = {}
    for f in enumerate_chains(2 * n + 1, p, n, allowed):
        s = f.space(n)
        seen.setdefault(s.key, s)
    return list(seen.values())


def even_labels(n: int) -> list[TripleLabel]:
    """Labels of G~'-orbits on M' x M' x M': eps = 0, c0 even."""
    return [lab for lab in labels(n) if lab.eps == 0]


def even_triple_invariants(v1: Subspace, v2: Subspace, v3: Subspace) -> TripleLabel:
    for v in (v1, v2, v3):
        if not in_Mprime(v):
            raise ValueError("all three subspaces must lie in M'")
    lab = triple_invariants(v1, v2, v3)
    if lab.eps != 0 or lab.c0 % 2:
        raise ArithmeticError(f"a triple in M' produced {lab.serialize()}")
    return lab


def even_orbit_size(label: TripleLabel, r: int) -> int:
    """|G~' t| = 2 |G' t| for a triple in M' with this label."""
    if label.eps != 0:
        raise ValueError("triples in M' have eps = 0")
    n, a = label.n, label.a
    num = mprime_size(n, r) * r ** ((n - a) * (n - a - 1) // 2) * q_factorial(n, r) * psi(label.c0, 0, r)
    den = (q_factorial(a, r) * q_factorial(label.b, r) * q_factorial(label.c_plus, r)
           * q_factorial(label.c_minus, r) * q_factorial(label.c0, r))
    return exact_div(num, den)


def even_words(n: int) -> list[WordSymbol]:
    """Words of G~'-orbits on M' x M' x M'_0 (no X or Y letters)."""
    return [w for w in enumerate_words(n) if w.label.eps == 0]


def even_t0_orbit_size(word: WordSymbol | str, r: int) -> int:
    """|G~' (t, F)| for a word without X or Y."""
    from .glb_orbits import levi_orbit_size, sp_orbit_size
    if isinstance(word, str):
        word = WordSymbol.parse(word)
    lab = word.label
    if lab.eps:
        raise ValueError("words over M' carry no X or Y")
    gamma = levi_orbit_size(word.gamma, r) if word.gamma is not None else 1
    delta = sp_orbit_size(word.delta, r) if word.delta is not None else 1
    return (even_orbit_size(lab, r) * q_factorial(lab.a, r) * q_factorial(lab.b, r)
            * r ** word.ell_tau * gamma * delta)


def _tetra(k: int) -> int:
    return comb(k + 3, 3)


def even_counts(n: int) -> dict[str, int]:
    """Orbit counts on M' x M' x M' and M' x M' x M'_0."""
    if n < 1:
        raise ValueError("n must be positive")
    t0 = sum(4 ** (n - 2 * k) * factorial(n) // (factorial(k) * factorial(n - 2 * k))
             for k in range(n // 2 + 1))
    corr = factorial(n) // factorial(n // 2) if n % 2 == 0 else 0
    same, mixed = exact_div(t0 + corr, 4), exact_div(t0 - corr, 4)
    return {
        "triples": sum(comb(n - 2 * k + 3, 3) for k in range(n // 2 + 1)),
        "triples_same": sum(_tetra(k) for k in range(n // 2 + 1))
        + sum(_tetra(k) for k in range((n - 3) // 2 + 1)),
        "triples_mixed": sum(_tetra(k) for k in range((n - 1) // 2 + 1))
        + sum(_tetra(k) for k in range((n - 2) // 2 + 1)),
        "t0": t0,
        "t0_same": same,
        "t0_mixed": mixed,
    }


def even_word_counts(n: int) -> int:
    """|GL_n \\ M'_0| = 2 |GL_n \\ M^0_0|."""
    if n < 1:
        raise ValueError("n must be positive")
    return sum(2 ** (n - 2 * k) * factorial(n) // (factorial(k) * factorial(n - 2 * k))
               for k in range(n // 2 + 1))
