"""Orbit calculi on full flags of GL_N for four subgroups.

* ``sp``     Sp_{2n} acting on flags of F^{2n}; orbits are perfect matchings.
* ``q``      Q_{2n}, the stabiliser of e_{2n} in Sp_{2n}; matchings plus X/Y slots.
* ``one_sp`` 1 x Sp_{2n-2} on flags of F^{2n-1}; reduced to ``q`` via W' = (F e_1)^perp.
* ``levi``   GL_{m+} x GL_{m-} on flags of F^n; signed matchings.

Indices in symbols are 1-based, matching the printed symbol strings.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterator, Sequence

import numpy as np

from .exactlin import FullFlag, Subspace, as_field, intersect, mat_mul, null_space, solve_left
from .forms import alternating_form, perp
from .qcount import exact_div, factorial, inversions, q_factorial, sp_order

__all__ = [
    "SpSymbol", "QSymbol", "LeviSymbol", "MINUS",
    "sp_cmatrix", "sp_symbol", "sp_symbols", "sp_count", "sp_count_formula", "sp_orbit_size",
    "sp_representative", "sp_adapted_basis",
    "q_symbol", "q_m", "q_symbols", "q_count", "q_count_formula", "q_orbit_size",
    "q_representative", "q_adapted_basis",
    "one_sp_symbol", "one_sp_symbols", "one_sp_count", "one_sp_count_formula",
    "one_sp_orbit_size", "one_sp_representative", "extend_to_w_prime",
    "levi_cmatrices", "levi_symbol", "levi_symbols", "levi_count", "levi_count_formula",
    "levi_orbit_size", "levi_representative", "levi_adapted_basis",
    "parse_symbol", "orbit_dimension", "tau_of_cmatrix", "adapted_basis_count",
]

MINUS = "−"
_PAIR_LETTERS = string.ascii_uppercase
_LEVI_LETTERS = string.ascii_lowercase
_Q_LETTERS = _PAIR_LETTERS.replace("X", "").replace("Y", "")


def _flag_spaces(flag: FullFlag) -> list[Subspace]:
    """V_0, V_1, ..., V_N."""
    return [flag.space(i) for i in range(flag.ambient + 1)]


def tau_of_cmatrix(c: np.ndarray) -> tuple[int, ...]:
    """The permutation (1-based images) whose matrix is ``c``."""
    return tuple(int(np.flatnonzero(row)[0]) + 1 for row in c)


def _pairs_from_cmatrix(c: np.ndarray) -> list[tuple[int, int]]:
    return [(i + 1, j + 1) for i, j in zip(*np.nonzero(np.triu(c, 1)))]


def _letters_by_first(n: int, pairs, alphabet: str) -> list[str | None]:
    out: list[str | None] = [None] * n
    ordered = sorted(pairs, key=min)
    if len(ordered) > len(alphabet):
        raise ValueError("too many pairs to letter")
    for letter, (i, j) in zip(alphabet, ordered):
        out[i - 1] = out[j - 1] = letter
    return out


def _pairs_from_letters(text: str, alphabet: str) -> tuple[dict[int, str], list[tuple[int, int]]]:
    """Split a symbol string into its non-letter marks and the lettered pairs."""
    marks, seen = {}, {}
    for pos, ch in enumerate(text, start=1):
        if ch in alphabet:
            seen.setdefault(ch, []).append(pos)
        else:
            marks[pos] = ch
    pairs = []
    for ch, where in seen.items():
        if len(where) != 2:
            raise ValueError(f"letter {ch!r} must occur exactly twice in {text!r}")
        pairs.append((where[0], where[1]))
    return marks, sorted(pairs)


def _matchings(items: Sequence[int]) -> Iterator[list[tuple[int, int]]]:
    """All perfect matchings of ``items`` (sorted), pairs listed by first element."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for k, partner in enumerate(rest):
        for tail in _matchings(rest[:k] + rest[k + 1:]):
            yield [(first, partner)] + tail


# ---------------------------------------------------------------- symbols

@dataclass(frozen=True)
class SpSymbol:
    """A perfect matching of {1..2n}; pairs (i_t, j_t) with i_t < j_t sorted by i_t."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted((min(a, b), max(a, b)) for a, b in self.pairs))
        flat = sorted(x for pr in pairs for x in pr)
        if flat != list(range(1, len(flat) + 1)) or any(a == b for a, b in pairs):
            raise ValueError(f"{self.pairs} is not a perfect matching of 1..2n")
        object.__setattr__(self, "pairs", pairs)

    @property
    def n(self) -> int:
        return len(self.pairs)

    @property
    def sigma(self) -> tuple[int, ...]:
        return tuple(x for pr in self.pairs for x in pr)

    @property
    def ell(self) -> int:
        return inversions(self.sigma)

    @property
    def tau(self) -> tuple[int, ...]:
        out = [0] * (2 * self.n)
        for i, j in self.pairs:
            out[i - 1], out[j - 1] = j, i
        return tuple(out)

    def cmatrix(self) -> np.ndarray:
        c = np.zeros((2 * self.n, 2 * self.n), dtype=np.int64)
        for i, j in self.pairs:
            c[i - 1, j - 1] = c[j - 1, i - 1] = 1
        return c

    def render(self, ascii: bool = False) -> str:
        return "".join(_letters_by_first(2 * self.n, self.pairs, _PAIR_LETTERS))

    def __str__(self):
        return self.render()

    @classmethod
    def parse(cls, text: str) -> "SpSymbol":
        marks, pairs = _pairs_from_letters(text.strip(), _PAIR_LETTERS)
        if marks:
            raise ValueError(f"unexpected marks in Sp symbol {text!r}")
        return cls(tuple(pairs))


@dataclass(frozen=True)
class QSymbol:
    """I = I_A ⊔ I_X ⊔ I_Y with a matching on I_A.

    ``size`` is 2n for Q_{2n}.  An odd ``size`` 2n-1 encodes a 1 x Sp_{2n-2}
    symbol, where |I_Y| = |I_X| - 1 and the missing Y sits at 2n.
    """

    size: int
    pairs: tuple[tuple[int, int], ...]
    xs: tuple[int, ...]
    ys: tuple[int, ...]

    def __post_init__(self):
        pairs = tuple(sorted((min(a, b), max(a, b)) for a, b in self.pairs))
        xs, ys = tuple(sorted(self.xs)), tuple(sorted(self.ys))
        used = sorted([x for pr in pairs for x in pr] + list(xs) + list(ys))
        if used != list(range(1, self.size + 1)):
            raise ValueError("pairs, X and Y do not partition 1..N")
        want = len(xs) - (self.size % 2)
        if not xs or len(ys) != want:
            raise ValueError("need |X| >= 1 and |Y| = |X| (even N) or |X| - 1 (odd N)")
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @property
    def odd(self) -> bool:
        return self.size % 2 == 1

    @property
    def n(self) -> int:
        return (self.size + 1) // 2

    @property
    def s(self) -> int:
        return len(self.xs)

    def extended(self) -> "QSymbol":
        """The Q_{2n} symbol of the flag extended by V_{2n-1} = W'."""
        if not self.odd:
            return self
        return QSymbol(self.size + 1, self.pairs, self.xs, self.ys + (self.size + 1,))

    @property
    def xy_pairs(self) -> tuple[tuple[int, int], ...]:
        ext = self.extended()
        return tuple(zip(ext.xs, ext.ys))

    @cached_property
    def _matching(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((min(a, b), max(a, b)) for a, b in self.extended().pairs + self.xy_pairs))

    def sp_symbol(self) -> SpSymbol:
        """The full matching (c-matrix) of the extended symbol."""
        return SpSymbol(self._matching)

    @property
    def sigma(self) -> tuple[int, ...]:
        return tuple(x for pr in self._matching for x in pr)

    @cached_property
    def ell(self) -> int:
        return inversions(self.sigma)

    @cached_property
    def m(self) -> int:
        # In an adapted basis (i, j) lies in S iff some x in I_X has x <= i and
        # partner(x) >= j; m counts the i covered that way, minus S_0 itself.
        partner = {}
        for i, j in self._matching:
            partner[i], partner[j] = j, i
        xs = self.extended().xs
        hits = sum(1 for i in partner if any(x <= i and partner[x] >= partner[i] for x in xs))
        return hits - len(xs)

    def render(self, ascii: bool = False) -> str:
        out = _letters_by_first(self.size, self.pairs, _Q_LETTERS)
        for x in self.xs:
            out[x - 1] = "X"
        for y in self.ys:
            out[y - 1] = "Y"
        return "".join(out)

    def __str__(self):
        return self.render()

    @classmethod
    def parse(cls, text: str) -> "QSymbol":
        text = text.strip()
        marks, pairs = _pairs_from_letters(text, _Q_LETTERS)
        bad = {ch for ch in marks.values()} - {"X", "Y"}
        if bad:
            raise ValueError(f"unexpected marks {sorted(bad)} in Q symbol {text!r}")
        xs = tuple(k for k, ch in marks.items() if ch == "X")
        ys = tuple(k for k, ch in marks.items() if ch == "Y")
        return cls(len(text), tuple(pairs), xs, ys)


@dataclass(frozen=True)
class LeviSymbol:
    """Signed matching for GL_{m+} x GL_{m-} on flags of F^n.

    ``pairs`` are (i_t, j_t) with i_t < j_t, sorted so that j_1 < ... < j_s.
    """

    m_plus: int
    m_minus: int
    plus: tuple[int, ...]
    minus: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted(((min(a, b), max(a, b)) for a, b in self.pairs), key=lambda pr: pr[1]))
        plus, minus = tuple(sorted(self.plus)), tuple(sorted(self.minus))
        n = self.m_plus + self.m_minus
        used = sorted([x for pr in pairs for x in pr] + list(plus) + list(minus))
        if used != list(range(1, n + 1)):
            raise ValueError("+, - and pairs do not partition 1..n")
        s = len(pairs)
        if len(plus) != self.m_plus - s or len(minus) != self.m_minus - s:
            raise ValueError("sign counts do not match m+ - s and m- - s")
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)

    @property
    def n(self) -> int:
        return self.m_plus + self.m_minus

    @property
    def s(self) -> int:
        return len(self.pairs)

    @property
    def sigma(self) -> tuple[int, ...]:
        ks = sorted(self.plus + self.minus)
        return (tuple(i for i, _ in reversed(self.pairs)) + tuple(ks)
                + tuple(j for _, j in self.pairs))

    @property
    def ell(self) -> int:
        return inversions(self.sigma)

    @property
    def tau(self) -> tuple[int, ...]:
        out = list(range(1, self.n + 1))
        for i, j in self.pairs:
            out[i - 1], out[j - 1] = j, i
        return tuple(out)

    def render(self, ascii: bool = False) -> str:
        out = _letters_by_first(self.n, self.pairs, _LEVI_LETTERS)
        for k in self.plus:
            out[k - 1] = "+"
        for k in self.minus:
            out[k - 1] = "-" if ascii else MINUS
        return "".join(out)

    def __str__(self):
        return self.render()

    @classmethod
    def parse(cls, text: str, m_plus: int | None = None, m_minus: int | None = None) -> "LeviSymbol":
        text = text.strip().replace(MINUS, "-")
        marks, pairs = _pairs_from_letters(text, _LEVI_LETTERS)
        bad = set(marks.values()) - {"+", "-"}
        if bad:
            raise ValueError(f"unexpected marks {sorted(bad)} in Levi symbol {text!r}")
        plus = tuple(k for k, ch in marks.items() if ch == "+")
        minus = tuple(k for k, ch in marks.items() if ch == "-")
        s = len(pairs)
        mp = len(plus) + s if m_plus is None else m_plus
        mm = len(minus) + s if m_minus is None else m_minus
        return cls(mp, mm, plus, minus, tuple(pairs))


def parse_symbol(kind: str, text: str):
    if kind == "sp":
        return SpSymbol.parse(text)
    if kind in ("q", "one_sp"):
        sym = QSymbol.parse(text)
        if (kind == "one_sp") != sym.odd:
            raise ValueError(f"{text!r} has the wrong length parity for {kind}")
        return sym
    if kind == "levi":
        return LeviSymbol.parse(text)
    raise ValueError(f"unknown calculus {kind!r}")


# ---------------------------------------------------------------- Sp

def _require_even(flag: FullFlag) -> int:
    if flag.ambient % 2:
        raise ValueError("the symplectic calculi need an even ambient dimension")
    return flag.ambient // 2


def _perp_table(spaces: list[Subspace], form) -> list[Subspace]:
    return [perp(v, form) for v in spaces]


def _d_matrix(spaces, perps) -> np.ndarray:
    N = len(spaces) - 1
    d = np.zeros((N + 1, N + 1), dtype=np.int64)
    for i in range(N + 1):
        for j in range(N + 1):
            d[i, j] = intersect(spaces[i], perps[j]).dim
    return d


def _second_difference(d: np.ndarray) -> np.ndarray:
    """c_{i,j} = d_{i,j-1} - d_{i,j} - d_{i-1,j-1} + d_{i-1,j}."""
    return d[1:, :-1] - d[1:, 1:] - d[:-1, :-1] + d[:-1, 1:]


def sp_cmatrix(flag: FullFlag) -> np.ndarray:
    """The symmetric permutation matrix c_{i,j} built from dim(V_i ∩ V_j^perp)."""
    n = _require_even(flag)
    form = alternating_form(n, flag.p)
    spaces = _flag_spaces(flag)
    return _second_difference(_d_matrix(spaces, _perp_table(spaces, form)))


def sp_symbol(obj) -> SpSymbol:
    """Symbol of a flag or of a c-matrix."""
    c = sp_cmatrix(obj) if isinstance(obj, FullFlag) else np.asarray(obj)
    if (not np.array_equal(c, c.T) or np.any(np.diag(c)) or set(np.unique(c)) - {0, 1}
            or np.any(c.sum(axis=0) != 1)):
        raise ValueError("not a symmetric permutation matrix with zero diagonal")
    return SpSymbol(tuple(_pairs_from_cmatrix(c)))


def sp_symbols(n: int) -> list[SpSymbol]:
    return [SpSymbol(tuple(m)) for m in _matchings(list(range(1, 2 * n + 1)))]


def sp_count_formula(n: int) -> int:
    return factorial(2 * n) // (2**n * factorial(n))


def sp_count(n: int) -> int:
    return len(sp_symbols(n))


def sp_orbit_size(sym: SpSymbol, r: int) -> int:
    n = sym.n
    return exact_div(sp_order(n, r), (r - 1) ** n * r ** (n + sym.ell))


def sp_representative(sym: SpSymbol, p: int) -> FullFlag:
    n = sym.n
    u = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for t, (i, j) in enumerate(sym.pairs, start=1):
        u[i - 1, t - 1] = 1
        u[j - 1, 2 * n - t] = 1
    return FullFlag.from_rows(u[:-1], p)


# ------------------------------------------------------- adapted bases

def _pick(space: Subspace, constraints: list[tuple[np.ndarray, int]], avoid: list[Subspace],
          p: int) -> np.ndarray | None:
    """First v in ``space`` with a·v = b for every (a, b) and v outside each ``avoid``.

    Candidates are x0 + sum t_i n_i with the t's in lexicographic order, so the
    choice is deterministic.
    """
    basis = space.basis
    if constraints:
        cmat = mat_mul(basis, np.array([a for a, _ in constraints]).T, p)
        rhs = np.array([b for _, b in constraints], dtype=np.int64) % p
        x0 = solve_left(cmat, rhs, p)
        if x0 is None:
            return None
        kern = null_space(cmat.T, p, basis.shape[0])
    else:
        x0 = np.zeros(basis.shape[0], dtype=np.int64)
        kern = np.eye(basis.shape[0], dtype=np.int64)
    kern = kern.reshape(-1, basis.shape[0])
    for ts in itertools.product(range(p), repeat=kern.shape[0]):
        x = (x0 + np.asarray(ts, dtype=np.int64) @ kern) % p if kern.shape[0] else x0
        v = mat_mul(x[None, :], basis, p)[0]
        if not any(a.contains(v) for a in avoid):
            return v
    return None


def _greedy_basis(flag: FullFlag, step: Callable[[int, list[np.ndarray]], tuple]) -> np.ndarray:
    """Build v_1..v_N one at a time; ``step(k, chosen)`` returns (constraints, avoid, forced)."""
    spaces = _flag_spaces(flag)
    chosen: list[np.ndarray] = []
    for k in range(1, flag.ambient + 1):
        constraints, avoid, forced = step(k, chosen)
        if forced is not None:
            v = forced
            if not spaces[k].contains(v) or spaces[k - 1].contains(v):
                raise ArithmeticError(f"forced vector at step {k} does not extend the flag")
        else:
            v = _pick(spaces[k], constraints, [spaces[k - 1]] + avoid, flag.p)
            if v is None:
                raise ArithmeticError(f"no admissible vector at step {k}")
        chosen.append(v)
    return np.array(chosen, dtype=np.int64)


def _split_pairs(flag: FullFlag, pairs, in_w: set[int]) -> np.ndarray:
    """Choose v_i, v_j pair by pair with <v_i, v_j> = 1, then recurse in <v_i, v_j>^perp.

    Indices in ``in_w`` get a vector with zero first coordinate.
    """
    n = _require_even(flag)
    p, N = flag.p, flag.ambient
    form = alternating_form(n, p)
    spaces = _flag_spaces(flag)
    rest = Subspace.whole(N, p)
    e1 = np.zeros(N, dtype=np.int64)
    e1[0] = 1
    out = np.zeros((N, N), dtype=np.int64)
    for i, j in pairs:
        local = [intersect(v, rest) for v in spaces]
        picked = []
        for k, other in ((i, j), (j, i)):
            cand = intersect(local[k], perp(local[other - 1], form))
            cons = [(e1, 0)] if k in in_w else []
            v = _pick(cand, cons, [local[k - 1]], p)
            if v is None:
                raise ArithmeticError(f"no admissible vector for index {k}")
            picked.append(v)
        vi, vj = picked
        scale = form.pair(vi, vj)
        if scale == 0:
            raise ArithmeticError(f"pair ({i}, {j}) is degenerate")
        out[i - 1] = vi
        out[j - 1] = vj * as_field(p).inv(scale) % p
        rest = intersect(rest, perp(Subspace.span(out[[i - 1, j - 1]], p, N), form))
    return out


def sp_adapted_basis(flag: FullFlag) -> np.ndarray:
    """Rows v_1..v_2n with V_i = <v_1..v_i> and <v_i, v_j> = c_{i,j} for i < j.

    Pairs are split off in lexicographic order.
    """
    return _split_pairs(flag, sp_symbol(flag).pairs, set())


# ---------------------------------------------------------------- Q

def _in_w(space: Subspace) -> bool:
    """W = (F e_{2n})^perp is the hyperplane of vectors with zero first coordinate."""
    return not np.any(space.basis[:, 0])


def _q_data(flag: FullFlag):
    n = _require_even(flag)
    form = alternating_form(n, flag.p)
    spaces = _flag_spaces(flag)
    perps = _perp_table(spaces, form)
    N = 2 * n
    inside = np.zeros((N + 1, N + 1), dtype=bool)
    for i in range(N + 1):
        for j in range(N + 1):
            inside[i, j] = _in_w(intersect(spaces[i], perps[j]))
    c = _second_difference(_d_matrix(spaces, perps))
    big_s = {(i, j) for i in range(1, N + 1) for j in range(1, N + 1) if not inside[i, j - 1]}
    s0 = sorted((i, j) for (i, j) in big_s if inside[i, j] and inside[i - 1, j - 1])
    m = sum(1 for (i, j) in big_s - set(s0) if c[i - 1, j - 1] == 1)
    return c, big_s, s0, m


def q_symbol(flag: FullFlag) -> QSymbol:
    c, _, s0, _ = _q_data(flag)
    xs = sorted(i for i, _ in s0)
    ys = sorted(j for _, j in s0)
    if list(zip(xs, ys)) != s0:
        raise ArithmeticError(f"S_0 = {s0} is not monotone")
    for x, y in s0:
        if c[x - 1, y - 1] != 1:
            raise ArithmeticError(f"c[{x},{y}] != 1 on S_0")
    xy = set(xs) | set(ys)
    pairs = [pr for pr in _pairs_from_cmatrix(c) if pr[0] not in xy]
    return QSymbol(flag.ambient, tuple(pairs), tuple(xs), tuple(ys))


def q_m(flag: FullFlag) -> int:
    """m(F): number of (i, j) in S - S_0 with c_{i,j} = 1."""
    return _q_data(flag)[3]


def _q_rows(sym: QSymbol) -> np.ndarray:
    sym = sym.extended()
    n, s = sym.n, sym.s
    u = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for t, (i, j) in enumerate(sym.pairs, start=1):
        u[i - 1, s + t - 1] = 1
        u[j - 1, 2 * n - s - t] = 1
    for t, (x, y) in enumerate(zip(sym.xs, sym.ys), start=1):
        u[x - 1, 0] = 1
        if t < s:
            u[x - 1, t] = 1
            u[y - 1, 2 * n - t - 1] = 1
        else:
            u[y - 1, 2 * n - 1] = 1
            for k in range(1, s):
                u[y - 1, 2 * n - 1 - k] = -1
    return u


def q_representative(sym: QSymbol, p: int) -> FullFlag:
    if sym.odd:
        return one_sp_representative(sym, p)
    return FullFlag.from_rows(_q_rows(sym)[:-1] % p, p)


def q_symbols(n: int) -> list[QSymbol]:
    out = []
    idx = list(range(1, 2 * n + 1))
    for s in range(1, n + 1):
        for xs in itertools.combinations(idx, s):
            rest = [k for k in idx if k not in xs]
            for ys in itertools.combinations(rest, s):
                left = [k for k in rest if k not in ys]
                for m in _matchings(left):
                    out.append(QSymbol(2 * n, tuple(m), xs, ys))
    return out


def q_count_formula(n: int) -> int:
    return sum(factorial(2 * n) // (2 ** (n - s) * factorial(s) ** 2 * factorial(n - s))
               for s in range(1, n + 1))


def q_count(n: int) -> int:
    return len(q_symbols(n))


def q_orbit_size(sym: QSymbol, r: int) -> int:
    if sym.odd:
        return one_sp_orbit_size(sym, r)
    n, s = sym.n, sym.s
    order = exact_div(sp_order(n, r), r ** (2 * n) - 1)
    return exact_div(order, (r - 1) ** (n - s) * r ** (n + sym.ell - sym.m))


def q_adapted_basis(flag: FullFlag) -> np.ndarray:
    """Adapted basis with v_i in W off I_X and <v_x, e_2n> = 1 on I_X.

    Matched pairs are split off first inside W, then the X/Y pairs.
    """
    p = flag.p
    sym = q_symbol(flag)
    xy = [tuple(sorted(pr)) for pr in sym.xy_pairs]
    in_w = {k for pr in sym.pairs for k in pr}
    v = _split_pairs(flag, list(sym.pairs) + sorted(xy), in_w)
    field = as_field(p)
    for x, y in sym.xy_pairs:
        lam = int(v[x - 1, 0])
        v[x - 1] = v[x - 1] * field.inv(lam) % p
        v[y - 1] = v[y - 1] * lam % p
        if x < y and v[y - 1, 0]:
            v[y - 1] = (v[y - 1] - v[y - 1, 0] * v[x - 1]) % p
    return v


# ---------------------------------------------------------------- 1 x Sp

def extend_to_w_prime(flag: FullFlag) -> FullFlag:
    """Embed a flag of F^{2n-1} in F^{2n} as a flag ending in W' = <e_1..e_{2n-1}>."""
    if flag.ambient % 2 == 0:
        raise ValueError("the 1 x Sp calculus needs an odd ambient dimension")
    rows = np.hstack([flag.rows, np.zeros((flag.length, 1), dtype=np.int64)])
    extra = np.zeros((1, flag.ambient + 1), dtype=np.int64)
    for k in range(flag.ambient):
        if k not in flag.space(flag.length).pivots:
            extra[0, k] = 1
            break
    return FullFlag.from_rows(np.vstack([rows, extra]), flag.p)


def one_sp_symbol(flag: FullFlag) -> QSymbol:
    full = q_symbol(extend_to_w_prime(flag))
    if full.ys[-1] != full.size:
        raise ArithmeticError("the extended flag must carry Y in the last slot")
    return QSymbol(flag.ambient, full.pairs, full.xs, full.ys[:-1])


def one_sp_representative(sym: QSymbol, p: int) -> FullFlag:
    if not sym.odd:
        raise ValueError("expected an odd-length symbol")
    u = _q_rows(sym)
    # u_{2n} is the only row touching e_{2n}; the rest span W'.
    return FullFlag.from_rows(u[:-2, :-1] % p, p)


def one_sp_symbols(n: int) -> list[QSymbol]:
    return [QSymbol(2 * n - 1, q.pairs, q.xs, q.ys[:-1])
            for q in q_symbols(n) if q.ys[-1] == 2 * n]


def one_sp_count_formula(n: int) -> int:
    return sum(factorial(2 * n - 1) // (2 ** (n - s) * factorial(s) * factorial(s - 1) * factorial(n - s))
               for s in range(1, n + 1))


def one_sp_count(n: int) -> int:
    return len(one_sp_symbols(n))


def one_sp_orbit_size(sym: QSymbol, r: int) -> int:
    n, s = sym.n, sym.s
    return exact_div(sp_order(n - 1, r), (r - 1) ** (n - s) * r ** (n + sym.ell - sym.m))


# ---------------------------------------------------------------- Levi

def _levi_projections(n: int, m_plus: int):
    plus = np.zeros((n, n), dtype=np.int64)
    plus[:m_plus, :m_plus] = np.eye(m_plus, dtype=np.int64)
    minus = np.eye(n, dtype=np.int64) - plus
    return plus, minus


def levi_cmatrices(flag: FullFlag, m_plus: int, m_minus: int) -> tuple[np.ndarray, np.ndarray]:
    """(c+, c-) built from dim(pi+(V_i) ∩ V_j) and dim(pi-(V_j) ∩ V_i)."""
    n = flag.ambient
    if m_plus + m_minus != n or min(m_plus, m_minus) < 0:
        raise ValueError("m+ + m- must equal the ambient dimension")
    pp, pm = _levi_projections(n, m_plus)
    spaces = _flag_spaces(flag)
    proj_p = [v.image(pp) for v in spaces]
    proj_m = [v.image(pm) for v in spaces]
    dp = np.array([[intersect(proj_p[i], spaces[j]).dim for j in range(n + 1)] for i in range(n + 1)])
    dm = np.array([[intersect(proj_m[j], spaces[i]).dim for j in range(n + 1)] for i in range(n + 1)])

    def diff(d):
        return d[1:, 1:] - d[1:, :-1] - d[:-1, 1:] + d[:-1, :-1]

    return diff(dp), diff(dm)


def levi_symbol(flag: FullFlag, m_plus: int, m_minus: int) -> LeviSymbol:
    cp, cm = levi_cmatrices(flag, m_plus, m_minus)
    c = cp + cm
    plus = tuple(i + 1 for i in range(flag.ambient) if cp[i, i] == 1)
    minus = tuple(i + 1 for i in range(flag.ambient) if cm[i, i] == 1)
    return LeviSymbol(m_plus, m_minus, plus, minus, tuple(_pairs_from_cmatrix(c)))


def levi_symbols(m_plus: int, m_minus: int) -> list[LeviSymbol]:
    n = m_plus + m_minus
    out = []
    idx = list(range(1, n + 1))
    for s in range(min(m_plus, m_minus) + 1):
        for paired in itertools.combinations(idx, 2 * s):
            rest = [k for k in idx if k not in paired]
            for plus in itertools.combinations(rest, m_plus - s):
                minus = tuple(k for k in rest if k not in plus)
                for m in _matchings(list(paired)):
                    out.append(LeviSymbol(m_plus, m_minus, plus, minus, tuple(m)))
    return out


def levi_count_formula(m_plus: int, m_minus: int) -> int:
    n = m_plus + m_minus
    return sum(factorial(n) // (2**s * factorial(s) * factorial(m_plus - s) * factorial(m_minus - s))
               for s in range(min(m_plus, m_minus) + 1))


def levi_count(m_plus: int, m_minus: int) -> int:
    return len(levi_symbols(m_plus, m_minus))


def levi_orbit_size(sym: LeviSymbol, r: int) -> int:
    n, s = sym.n, sym.s
    return ((r - 1) ** s * r ** (s * (n - s - 1) - sym.ell)
            * q_factorial(sym.m_plus, r) * q_factorial(sym.m_minus, r))


def levi_representative(sym: LeviSymbol, p: int) -> FullFlag:
    n, s, mp = sym.n, sym.s, sym.m_plus
    u = np.zeros((n, n), dtype=np.int64)
    for t, k in enumerate(sym.plus, start=1):
        u[k - 1, t - 1] = 1
    for t, k in enumerate(sym.minus, start=1):
        u[k - 1, mp + t - 1] = 1
    for t, (i, j) in enumerate(sym.pairs, start=1):
        u[i - 1, mp - s + t - 1] = 1
        u[i - 1, n - s + t - 1] = 1
        u[j - 1, mp - s + t - 1] = 1
    return FullFlag.from_rows(u[:-1], p)


def levi_adapted_basis(flag: FullFlag, m_plus: int, m_minus: int) -> np.ndarray:
    """Basis with v_k in U+ (resp. U-) on + (resp. -) slots and v_j = pi+(v_i) on pairs."""
    n, p = flag.ambient, flag.p
    sym = levi_symbol(flag, m_plus, m_minus)
    pp, _ = _levi_projections(n, m_plus)
    u_plus = Subspace.coordinate(range(1, m_plus + 1), n, p)
    u_minus = Subspace.coordinate(range(m_plus + 1, n + 1), n, p)
    partner = {i: j for i, j in sym.pairs}
    first_of = {j: i for i, j in sym.pairs}
    spaces = _flag_spaces(flag)

    def unit(k):
        e = np.zeros(n, dtype=np.int64)
        e[k] = 1
        return e

    def step(k, chosen):
        if k in sym.plus:
            return [(unit(c), 0) for c in range(m_plus, n)], [], None
        if k in sym.minus:
            return [(unit(c), 0) for c in range(m_plus)], [], None
        if k in first_of:
            return [], [], chosen[first_of[k] - 1] @ pp.T % p
        # pi+(v) must land in V_j but not in V_{j-1}.
        j = partner[k]
        ann = null_space(spaces[j].basis, p, n)
        cons = [(row @ pp % p, 0) for row in ann]
        lifted = intersect(spaces[j - 1], u_plus) + u_minus
        return cons, [u_plus, u_minus, lifted], None

    return _greedy_basis(flag, step)


# ---------------------------------------------------------------- dimensions

def orbit_dimension(kind: str, sym) -> int:
    """Degree in r of the orbit size polynomial."""
    from .qcount import degree

    size = {"sp": sp_orbit_size, "q": q_orbit_size, "one_sp": one_sp_orbit_size,
            "levi": levi_orbit_size}[kind]
    return degree(lambda r: size(sym, r))


# ---------------------------------------------------------------- adapted bases

def adapted_basis_count(kind: str, sym, r: int) -> int:
    """Number of bases adapted to one flag of the orbit ``sym`` (a stabilizer torsor)."""
    if kind == "sp":
        return (r - 1) ** sym.n * r ** (sym.n + sym.ell)
    if kind == "q":
        return (r - 1) ** (sym.n - sym.s) * r ** (sym.n + sym.ell - sym.m)
    if kind == "levi":
        n, s, mp, mm = sym.n, sym.s, sym.m_plus, sym.m_minus
        return (r - 1) ** (n - s) * r ** (mp * (mp - 1) // 2 + mm * (mm - 1) // 2 - s * (n - s - 1) + sym.ell)
    raise ValueError(f"no basis count for {kind!r}")

