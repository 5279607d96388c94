"""Orbits of SO_{2n+1} on M x M x M_0 through standard flags and word symbols.

A triple (U_0, U_d, F) with F a full isotropic flag ending in V is first
reduced to the representative V of its label (so_triple.standardize_V), then
F is moved inside R(t) = stabiliser of (U_0, U_d, V) to a standard flag: one
that splits along U_alpha, U_beta, U_+ + U_- and U_0-part.  The word records
where each step of the flag lands; its gamma part is a Levi symbol and its
delta part a symbol of Sp, Q or 1 x Sp.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb, factorial

import numpy as np

from .exactlin import (FullFlag, Subspace, as_field, intersect, inverse, mat_mul, solve_left,
                       vectors_outside_first)
from .forms import anti_identity, complete_z, g_xz, h_block, levi_w0_element, w1_element
from .glb_orbits import (MINUS, LeviSymbol, QSymbol, SpSymbol, levi_orbit_size, levi_representative,
                         levi_symbol, levi_symbols, one_sp_orbit_size, one_sp_representative,
                         one_sp_symbol, one_sp_symbols, q_orbit_size, q_representative, q_symbol,
                         q_symbols, sp_orbit_size, sp_representative, sp_symbol, sp_symbols)
from .qcount import inversions, q_factorial
from .so_triple import RepresentativeLayout, TripleLabel, labels, orbit_size, representative

__all__ = [
    "WordSymbol", "is_standard", "standardize_flag", "word_symbol", "classify_flag", "classify_t0",
    "t0_orbit_size", "xi", "count_t0", "count_gl_on_M0", "enumerate_words",
    "realizing_flag", "isotropic_flags", "ALPHA", "BETA",
]

ALPHA, BETA = "α", "β"
MAX_N = 8


# ---------------------------------------------------------------- geometry of V

class _Blocks:
    """Coordinates and subspaces attached to a representative V."""

    def __init__(self, label: TripleLabel, p: int):
        self.label, self.p = label, p
        self.lay = RepresentativeLayout(label)
        self.n = label.n
        self.dim = 2 * label.n + 1
        self.rep = representative(label, p)
        rows = self.lay.rows(p)
        a, b, cp, cm = label.a, label.b, label.c_plus, label.c_minus
        self.rows = rows
        self.cut = np.cumsum([0, a, b, cp + cm, label.c0])
        self.u_alpha = Subspace.span(rows[:a], p, self.dim)
        self.u_beta = Subspace.span(rows[a:a + b], p, self.dim)
        self.u_pm = Subspace.span(rows[a + b:a + b + cp + cm], p, self.dim)
        self.u_zero = Subspace.span(rows[a + b + cp + cm:], p, self.dim)
        self.pm_coords = self.lay.plus + self.lay.minus

    def components(self, v) -> list[np.ndarray]:
        """Split v in V into its alpha, beta, +/- and zero parts."""
        coeff = solve_left(self.rows, v, self.p)
        if coeff is None:
            raise ValueError("vector is not in V")
        return [mat_mul(coeff[None, lo:hi], self.rows[lo:hi], self.p)[0]
                for lo, hi in zip(self.cut[:-1], self.cut[1:])]


def _unit(i: int, size: int) -> np.ndarray:
    e = np.zeros(size, dtype=np.int64)
    e[i] = 1
    return e


def _new_vector(big: Subspace, small: Subspace) -> np.ndarray:
    return vectors_outside_first(big, small if small.dim else None)


def _check_flag(flag: FullFlag, blocks: _Blocks):
    if flag.length != blocks.n or flag.space(blocks.n) != blocks.rep:
        raise ValueError("the flag does not end in the representative V")


def _infer_label(flag: FullFlag, d: int) -> TripleLabel:
    from .so_triple import triple_invariants, u_d
    n = flag.length
    return triple_invariants(u_d(n, 0, flag.p), u_d(n, d, flag.p), flag.space(n))


# ---------------------------------------------------------------- standard flags

def _dims(flag: FullFlag, sub: Subspace) -> list[int]:
    return [intersect(flag.space(i), sub).dim for i in range(flag.length + 1)]


def is_standard(flag: FullFlag, label: TripleLabel) -> bool:
    blocks = _Blocks(label, flag.p)
    _check_flag(flag, blocks)
    n = blocks.n
    beta = blocks.lay.beta
    for i in range(1, n + 1):
        vi = flag.space(i)
        parts = [intersect(vi, s) for s in (blocks.u_alpha, blocks.u_beta, blocks.u_pm, blocks.u_zero)]
        if sum(s.dim for s in parts) != i:
            return False
        if parts[0] != Subspace.coordinate(range(1, parts[0].dim + 1), blocks.dim, flag.p):
            return False
        if parts[1] != Subspace.coordinate([c + 1 for c in beta[:parts[1].dim]], blocks.dim, flag.p):
            return False
    return True


def _adapted_columns(flag: FullFlag, sub: Subspace, coords: list[int]) -> np.ndarray:
    """Square matrix whose k-th column spans the k-th new step of V_i ∩ sub (or its projection)."""
    p = flag.p
    cols, prev = [], Subspace.zero(flag.ambient, p)
    for i in range(1, flag.length + 1):
        cur = sub(flag.space(i)) if callable(sub) else intersect(flag.space(i), sub)
        if cur.dim > prev.dim:
            cols.append(_new_vector(cur, prev)[coords])
            prev = cur
    return np.array(cols, dtype=np.int64).reshape(len(cols), len(coords)).T


def _stage_w0(flag: FullFlag, blocks: _Blocks) -> np.ndarray:
    """h in L_{W_0} ∩ P_V with h^{-1}F standard on U_alpha and on the W_2-projection."""
    lab, n, p = blocks.label, blocks.n, blocks.p
    m, d = lab.a + lab.b, lab.d
    if m == 0:
        return np.eye(blocks.dim, dtype=np.int64)
    w2 = list(range(m + 2 * d + 1, blocks.dim))
    a11 = _adapted_columns(flag, blocks.u_alpha, list(range(lab.a)))
    bmat = _adapted_columns(flag, lambda s: s.project(w2), w2[:lab.b])
    a = np.eye(m, dtype=np.int64)
    if lab.a:
        a[:lab.a, :lab.a] = a11
    if lab.b:
        jb = anti_identity(lab.b)
        a[lab.a:, lab.a:] = jb @ inverse(bmat, p).T @ jb % p
    return levi_w0_element(a, n, d, p)


def _stage_radical(flag: FullFlag, blocks: _Blocks) -> np.ndarray:
    """g(X, Z) in N_{W_0} ∩ P_V with g^{-1}F split along W_0, W_1, W_2."""
    lab, n, p, dim = blocks.label, blocks.n, blocks.p, blocks.dim
    m, d = lab.a + lab.b, lab.d
    k = 2 * d + 1
    if m == 0:
        return np.eye(dim, dtype=np.int64)
    w0perp = Subspace.coordinate(range(1, m + k + 1), dim, p)
    w2 = list(range(m + k, dim))
    # lifts w_j of the W_1-steps and w'_j of the W_2-steps
    w0 = Subspace.coordinate(range(1, m + 1), dim, p)
    ws, prev = [], Subspace.zero(dim, p)
    for i in range(1, n + 1):
        cur = intersect(flag.space(i), w0perp)
        if cur.dim - intersect(cur, w0).dim > len(ws):
            ws.append(_new_vector(cur, prev + w0))
        prev = cur
    lifts = []
    for j in range(lab.b):
        vi = flag.space(_first_step(flag, w2, j + 1))
        coeff = solve_left(vi.basis[:, w2], _unit(j, m), p)
        lifts.append(mat_mul(coeff[None], vi.basis, p)[0])
    x = np.zeros((k, m), dtype=np.int64)
    known = {}
    for j, u in enumerate(lifts):
        x[:, j] = u[m:m + k]
        for i in range(m):
            known[(i, j)] = int(u[i])
    if ws:
        jw = np.array([anti_identity(k) @ w[m:m + k] % p for w in ws]).T
        for c in range(lab.b, m):
            row = m - 1 - c
            rhs = np.array([(-w[row]) % p for w in ws])
            sol = solve_left(jw, rhs, p)
            if sol is None:
                raise ArithmeticError("no N_{W_0} element matches the W_1 lifts")
            x[:, c] = sol
    z = complete_z(x, known, m, p)
    return g_xz(x, z, n, d, p)


def _first_step(flag: FullFlag, coords: list[int], k: int) -> int:
    for i in range(1, flag.length + 1):
        if flag.space(i).project(coords).dim >= k:
            return i
    raise ValueError("projection never reaches the requested dimension")


def _stage_nh(flag: FullFlag, blocks: _Blocks) -> np.ndarray:
    """Unipotent element of the W_1-Levi splitting V_i ∩ W_1 into +/- and zero parts."""
    lab, n, p, dim = blocks.label, blocks.n, blocks.p, blocks.dim
    cp, cm, c0, d = lab.c_plus, lab.c_minus, lab.c0, lab.d
    if c0 == 0 or cp + cm == 0:
        return np.eye(dim, dtype=np.int64)
    # phi: zero part -> +/- part, read off from lifts of the zero-steps
    zs, phis = [], []
    pm_prev = 0
    for i in range(1, n + 1):
        vi = flag.space(i)
        w1 = intersect(vi, blocks.u_pm + blocks.u_zero)
        pm = intersect(w1, blocks.u_pm).dim
        if w1.dim - pm > len(zs):
            for row in w1.basis:
                comp = blocks.components(row)
                z = comp[3]
                if not Subspace.span(zs + [z], p, dim).dim == len(zs) + 1:
                    continue
                zs.append(z)
                phis.append(comp[2])
                break
        pm_prev = pm
    del pm_prev
    # N = h[I + E] on W_1 with E in the (+, 0) and (0, -) blocks of GL_d
    params = [(r, c) for r in range(cp) for c in range(cp, cp + c0)]
    params += [(r, c) for r in range(cp, cp + c0) for c in range(cp + c0, d)]

    def element(values) -> np.ndarray:
        a = np.eye(d, dtype=np.int64)
        for (r, c), v in zip(params, values):
            a[r, c] = v
        return w1_element(h_block(a, p), n, d)

    base = [element(_unit(t, len(params))) for t in range(len(params))]
    rows = np.array([np.concatenate([mat_mul(g, z, p) - z for z in zs]) % p for g in base])
    rhs = np.concatenate(phis) % p
    sol = solve_left(rows, rhs, p)
    if sol is None:
        raise ArithmeticError("no unipotent W_1 element realises the splitting")
    return element(sol)


def standardize_flag(flag: FullFlag, label: TripleLabel | None = None, d: int | None = None):
    """(g, gF) with g in R(t) and gF standard; F must end in the representative V."""
    as_field(flag.p).require_odd()
    if label is None:
        if d is None:
            raise ValueError("give the label or d")
        label = _infer_label(flag, d)
    blocks = _Blocks(label, flag.p)
    _check_flag(flag, blocks)
    p = flag.p
    total = np.eye(blocks.dim, dtype=np.int64)
    for stage in (_stage_w0, _stage_radical, _stage_nh):
        g = stage(flag, blocks)
        gi = inverse(g, p)
        flag = flag.image(gi)
        total = mat_mul(gi, total, p)
    if not is_standard(flag, label):
        raise ArithmeticError("standardisation did not produce a standard flag")
    return total, flag


# ---------------------------------------------------------------- words

def _delta_kind(label_case: str) -> str:
    return {"odd": "one_sp", "even0": "sp", "even1": "q"}[label_case]


def _delta_coord_map(c0: int, case: str, p: int) -> np.ndarray:
    """Matrix taking U_(0+)-coordinates to the coordinates of the Sp/Q/1 x Sp calculus."""
    out = np.zeros((c0, c0), dtype=np.int64)
    if case == "even0":
        return np.eye(c0, dtype=np.int64)
    if case == "even1":
        for i in range(1, c0 + 1):
            out[c0 - i, i - 1] = 1 if i <= c0 // 2 else p - 1
        return out
    c1 = (c0 + 1) // 2
    for i in range(1, c0 + 1):
        j = 1 if i == c1 else (i + 1 if i < c1 else i)
        out[j - 1, i - 1] = 1
    return out


def _sub_flag(spaces: list[Subspace], coords: list[int], transform, p: int) -> FullFlag:
    size = len(coords)
    rows, prev = [], Subspace.zero(size, p)
    for s in spaces[:size - 1]:
        local = Subspace.span(mat_mul(s.basis[:, coords], transform.T, p), p, size)
        rows.append(_new_vector(local, prev))
        prev = local
    if not rows:
        return FullFlag(p, size, np.zeros((0, size), dtype=np.int64))
    return FullFlag.from_rows(np.array(rows), p)


def _delta_symbol(flag: FullFlag, kind: str):
    if kind == "sp":
        return sp_symbol(flag)
    if kind == "q":
        return q_symbol(flag)
    if flag.ambient == 1:
        return QSymbol(1, (), (1,), ())
    return one_sp_symbol(flag)


def _delta_size(sym, kind: str, r: int) -> int:
    if sym is None:
        return 1
    if kind == "one_sp" and sym.size == 1:
        return 1
    return {"sp": sp_orbit_size, "q": q_orbit_size, "one_sp": one_sp_orbit_size}[kind](sym, r)


@dataclass(frozen=True)
class WordSymbol:
    """Letters l_1..l_n of a T0 orbit together with its subwords."""

    label: TripleLabel
    letters: tuple[str, ...]
    gamma: LeviSymbol | None
    delta: SpSymbol | QSymbol | None

    @property
    def n(self) -> int:
        return self.label.n

    @property
    def d(self) -> int:
        return self.label.d

    def positions(self, kind: str) -> tuple[int, ...]:
        test = {"alpha": lambda c: c == ALPHA, "beta": lambda c: c == BETA,
                "gamma": lambda c: c in ("+", MINUS) or (c.isascii() and c.islower()),
                "delta": lambda c: c.isupper() and c.isascii()}[kind]
        return tuple(i for i, c in enumerate(self.letters, start=1) if test(c))

    @cached_property
    def tau(self) -> tuple[int, ...]:
        return sum((self.positions(k) for k in ("alpha", "gamma", "delta", "beta")), ())

    @property
    def ell_tau(self) -> int:
        return inversions(self.tau)

    @property
    def sigma(self) -> tuple[int, ...]:
        lam = tuple(sorted(self.positions("gamma") + self.positions("delta")))
        return self.positions("alpha") + lam + self.positions("beta")

    @property
    def ell_tau_prime(self) -> int:
        return sum(1 for g in self.positions("gamma") for x in self.positions("delta") if g > x)

    def render(self, ascii: bool = False) -> str:
        if not ascii:
            return "".join(self.letters)
        table = {ALPHA: "al", BETA: "be", MINUS: "-"}
        return "".join(table.get(c, c) for c in self.letters)

    def __str__(self):
        return self.render()

    @classmethod
    def parse(cls, text: str) -> "WordSymbol":
        letters = _tokenize(text)
        n = len(letters)
        a = letters.count(ALPHA)
        b = letters.count(BETA)
        g_letters = [c for c in letters if c in ("+", MINUS) or (c.isascii() and c.islower())]
        d_letters = [c for c in letters if c.isupper() and c.isascii()]
        if a + b + len(g_letters) + len(d_letters) != n:
            raise ValueError(f"unexpected letters in word {text!r}")
        gamma = LeviSymbol.parse("".join(g_letters)) if g_letters else None
        cp = gamma.m_plus if gamma else 0
        cm = gamma.m_minus if gamma else 0
        c0 = len(d_letters)
        delta = None
        if c0:
            body = "".join(d_letters)
            if c0 % 2 or "X" in body:
                delta = QSymbol.parse(body)
            else:
                delta = SpSymbol.parse(body)
        eps = 1 if isinstance(delta, QSymbol) else 0
        label = TripleLabel(n, a, b, cp, cm, c0, eps)
        return cls._assemble(label, letters, gamma, delta)

    @classmethod
    def _assemble(cls, label, letters, gamma, delta) -> "WordSymbol":
        word = cls(label, tuple(letters), gamma, delta)
        if word._rebuilt() != word.letters:
            raise ValueError(f"word {''.join(letters)!r} is not in normal lettering")
        return word

    def _rebuilt(self) -> tuple[str, ...]:
        out = list(self.letters)
        if self.gamma is not None:
            for pos, ch in zip(self.positions("gamma"), self.gamma.render()):
                out[pos - 1] = ch
        if self.delta is not None:
            for pos, ch in zip(self.positions("delta"), self.delta.render()):
                out[pos - 1] = ch
        return tuple(out)


def _tokenize(text: str) -> list[str]:
    out, k = [], 0
    text = text.strip()
    while k < len(text):
        if text.startswith("al", k):
            out.append(ALPHA)
            k += 2
        elif text.startswith("be", k):
            out.append(BETA)
            k += 2
        else:
            ch = text[k]
            out.append(MINUS if ch == "-" else ch)
            k += 1
    return out


def word_symbol(flag: FullFlag, label: TripleLabel) -> WordSymbol:
    """Word of a standard flag ending in the representative of ``label``."""
    as_field(flag.p).require_odd()
    if not is_standard(flag, label):
        raise ValueError("word_symbol expects a standard flag; call standardize_flag first")
    blocks = _Blocks(label, flag.p)
    p, n = flag.p, label.n
    letters = [None] * n
    steps = {}
    for key, sub in (("alpha", blocks.u_alpha), ("beta", blocks.u_beta),
                     ("gamma", blocks.u_pm), ("delta", blocks.u_zero)):
        dims = _dims(flag, sub)
        steps[key] = [i for i in range(1, n + 1) if dims[i] > dims[i - 1]]
    for i in steps["alpha"]:
        letters[i - 1] = ALPHA
    for i in steps["beta"]:
        letters[i - 1] = BETA
    gamma = delta = None
    if steps["gamma"]:
        spaces = [intersect(flag.space(i), blocks.u_pm) for i in steps["gamma"]]
        c = len(spaces)
        sub = _sub_flag(spaces, blocks.pm_coords, np.eye(c, dtype=np.int64), p)
        gamma = _levi_of(sub, label.c_plus, label.c_minus)
        for pos, ch in zip(steps["gamma"], gamma.render()):
            letters[pos - 1] = ch
    if steps["delta"]:
        spaces = [intersect(flag.space(i), blocks.u_zero) for i in steps["delta"]]
        kind = _delta_kind(label.case)
        sub = _sub_flag(spaces, blocks.lay.zero_plus, _delta_coord_map(label.c0, label.case, p), p)
        delta = _delta_symbol(sub, kind)
        for pos, ch in zip(steps["delta"], delta.render()):
            letters[pos - 1] = ch
    return WordSymbol(label, tuple(letters), gamma, delta)


def _levi_of(flag: FullFlag, cp: int, cm: int) -> LeviSymbol:
    if flag.ambient == 1:
        return LeviSymbol(cp, cm, (1,) if cp else (), (1,) if cm else (), ())
    return levi_symbol(flag, cp, cm)


def classify_flag(flag: FullFlag, d: int) -> WordSymbol:
    """Word of (U_0, U_d, F) for any full isotropic flag F of length n."""
    from .so_triple import standardize_V
    n = flag.length
    g, _ = standardize_V(flag.space(n), d)
    moved = flag.image(g)
    label = _infer_label(moved, d)
    _, std = standardize_flag(moved, label)
    return word_symbol(std, label)


def classify_t0(v1: Subspace, v2: Subspace, flag: FullFlag) -> WordSymbol:
    """Word of an arbitrary triple (V1, V2, F) in M x M x M_0."""
    from .so_triple import standardize_triple
    n = flag.length
    g, label = standardize_triple(v1, v2, flag.space(n))
    _, std = standardize_flag(flag.image(g), label)
    return word_symbol(std, label)


# ---------------------------------------------------------------- sizes and counts

def t0_orbit_size(word: WordSymbol | str, r: int) -> int:
    """|G (U_0, U_d, F)| for a flag with this word."""
    if isinstance(word, str):
        word = WordSymbol.parse(word)
    lab = word.label
    gamma = levi_orbit_size(word.gamma, r) if word.gamma is not None else 1
    delta = _delta_size(word.delta, _delta_kind(lab.case), r)
    return (orbit_size(lab, r) * q_factorial(lab.a, r) * q_factorial(lab.b, r)
            * r ** word.ell_tau * gamma * delta)


def xi(k: int) -> int:
    """Number of words of length k without alpha, beta, + or -."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return 1
    if k % 2 == 0:
        h = k // 2
        return sum(factorial(k) // (factorial(s) ** 2 * factorial(h - s)) for s in range(h + 1))
    h = (k + 1) // 2
    return sum(factorial(k) // (factorial(s) * factorial(s - 1) * factorial(h - s)) for s in range(1, h + 1))


def count_t0(n: int) -> int:
    return sum(4 ** (n - k) * comb(n, k) * xi(k) for k in range(n + 1))


def count_gl_on_M0(n: int) -> int:
    return sum(2 ** (n - k) * comb(n, k) * xi(k) for k in range(n + 1))


def _delta_symbols(c0: int, case: str) -> list:
    if c0 == 0:
        return [None]
    if case == "even0":
        return sp_symbols(c0 // 2)
    if case == "even1":
        return q_symbols(c0 // 2)
    if c0 == 1:
        return [QSymbol(1, (), (1,), ())]
    return one_sp_symbols((c0 + 1) // 2)


def enumerate_words(n: int) -> list[WordSymbol]:
    """Every word of length n, grouped by label."""
    if not 0 <= n <= MAX_N:
        raise ValueError(f"word enumeration is limited to n <= {MAX_N}")
    out = []
    idx = range(1, n + 1)
    for lab in labels(n):
        c = lab.c_plus + lab.c_minus
        gammas = levi_symbols(lab.c_plus, lab.c_minus) if c else [None]
        deltas = _delta_symbols(lab.c0, lab.case)
        for pa in itertools.combinations(idx, lab.a):
            rest = [i for i in idx if i not in pa]
            for pb in itertools.combinations(rest, lab.b):
                rest2 = [i for i in rest if i not in pb]
                for pg in itertools.combinations(rest2, c):
                    pd = [i for i in rest2 if i not in pg]
                    for gsym in gammas:
                        for dsym in deltas:
                            letters = [None] * n
                            for i in pa:
                                letters[i - 1] = ALPHA
                            for i in pb:
                                letters[i - 1] = BETA
                            if gsym is not None:
                                for i, ch in zip(pg, gsym.render()):
                                    letters[i - 1] = ch
                            if dsym is not None:
                                for i, ch in zip(pd, dsym.render()):
                                    letters[i - 1] = ch
                            out.append(WordSymbol(lab, tuple(letters), gsym, dsym))
    return out


def _complete(flag: FullFlag) -> np.ndarray:
    """Rows of a full flag plus one vector completing it to a basis."""
    rows = flag.rows
    span = Subspace.span(rows, flag.p, flag.ambient) if len(rows) else Subspace.zero(flag.ambient, flag.p)
    last = _new_vector(Subspace.whole(flag.ambient, flag.p), span)
    return np.vstack([rows, last[None]]) if len(rows) else last[None]


def realizing_flag(word: WordSymbol | str, p: int) -> FullFlag:
    """A standard flag ending in the representative V whose word is ``word``."""
    if isinstance(word, str):
        word = WordSymbol.parse(word)
    as_field(p).require_odd()
    lab = word.label
    blocks = _Blocks(lab, p)
    dim = blocks.dim
    vecs: dict[int, np.ndarray] = {}
    for i, c in zip(word.positions("alpha"), blocks.lay.alpha):
        vecs[i] = _unit(c, dim)
    for i, c in zip(word.positions("beta"), blocks.lay.beta):
        vecs[i] = _unit(c, dim)
    if word.gamma is not None:
        local = _complete(levi_representative(word.gamma, p)) if word.gamma.n > 1 \
            else np.ones((1, 1), dtype=np.int64)
        for i, row in zip(word.positions("gamma"), local):
            v = np.zeros(dim, dtype=np.int64)
            v[blocks.pm_coords] = row
            vecs[i] = v
    if word.delta is not None:
        kind = _delta_kind(lab.case)
        c0 = lab.c0
        if c0 == 1:
            local = np.ones((1, 1), dtype=np.int64)
        else:
            rep = {"sp": sp_representative, "q": q_representative,
                   "one_sp": one_sp_representative}[kind](word.delta, p)
            local = _complete(rep)
        back = inverse(_delta_coord_map(c0, lab.case, p), p)
        zrows = blocks.u_zero.basis
        proj = zrows[:, blocks.lay.zero_plus]
        for i, row in zip(word.positions("delta"), local):
            coeff = solve_left(proj, mat_mul(back, row, p), p)
            vecs[i] = mat_mul(coeff[None], zrows, p)[0]
    rows = np.array([vecs[i] for i in range(1, lab.n + 1)], dtype=np.int64)
    return FullFlag.from_rows(rows, p)


# ---------------------------------------------------------------- universes

def isotropic_flags(n: int, p: int) -> list[FullFlag]:
    """All full isotropic flags V_1 ⊂ ... ⊂ V_n of F_p^{2n+1}."""
    from .exactlin import enumerate_chains
    from .forms import symmetric_form
    gram = symmetric_form(n, p).gram

    def allowed(rows, v):
        if int(v @ gram @ v) % p:
            return False
        return not (rows @ gram @ v % p).any() if len(rows) else True

    return list(enumerate_chains(2 * n + 1, p, n, allowed))
