"""SO_{2n+1}-orbits on triples of maximal isotropic subspaces of F^{2n+1}.

A triple is labelled by (a, b, c+, c-, c0, eps).  Every label has an explicit
representative (U_0, U_d, V) with d = n - a - b, and :func:`standardize_V`
moves any V to that representative by an element fixing U_0 and U_d.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exactlin import Subspace, as_field, det, intersect, inverse, mat_mul, solve_left, subspace_sum
from .forms import (Form, complete_z, g_xz, h_block, is_maximal_isotropic,
                    levi_w0_element, perp, symmetric_form, w1_element)
from .qcount import comb, exact_div, m_count, psi, q_factorial

__all__ = [
    "TripleLabel", "labels", "count_orbits", "count_orbits_formula", "orbit_size", "pu_d_size",
    "rdv_size", "m_count", "q_factorial", "psi", "u_d", "representative", "RepresentativeLayout",
    "triple_invariants", "normalize_pair", "witt_frame", "standardize_V", "standardize_triple",
    "associated_form", "AssociatedFormData", "maximal_isotropics",
]


@dataclass(frozen=True, order=True)
class TripleLabel:
    n: int
    a: int
    b: int
    c_plus: int
    c_minus: int
    c0: int
    eps: int

    def __post_init__(self):
        parts = (self.a, self.b, self.c_plus, self.c_minus, self.c0)
        if min(parts) < 0 or sum(parts) != self.n:
            raise ValueError(f"label parts {parts} do not sum to n={self.n}")
        if self.eps not in (0, 1):
            raise ValueError("eps must be 0 or 1")
        if self.c0 % 2 == 1 and self.eps != 1:
            raise ValueError("odd c0 forces eps = 1")
        if self.c0 == 0 and self.eps != 0:
            raise ValueError("c0 = 0 forces eps = 0")

    @property
    def d(self) -> int:
        return self.n - self.a - self.b

    @property
    def case(self) -> str:
        """'odd', 'even0' or 'even1'."""
        if self.c0 % 2:
            return "odd"
        return "even1" if self.eps else "even0"

    def serialize(self) -> str:
        return f"{self.a},{self.b},{self.c_plus},{self.c_minus},{self.c0},{self.eps}"

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "TripleLabel":
        vals = [int(x) for x in text.replace(" ", "").split(",")]
        if len(vals) != 6:
            raise ValueError("a label has six fields a,b,c+,c-,c0,eps")
        total = sum(vals[:5])
        if n is not None and total != n:
            raise ValueError(f"label sums to {total}, expected n={n}")
        return cls(total, *vals)


def labels(n: int) -> list[TripleLabel]:
    """All valid labels, lexicographic in (a, b, c+, c-, c0, eps)."""
    out = []
    for a in range(n + 1):
        for b in range(n - a + 1):
            for cp in range(n - a - b + 1):
                for cm in range(n - a - b - cp + 1):
                    c0 = n - a - b - cp - cm
                    for eps in (0, 1):
                        try:
                            out.append(TripleLabel(n, a, b, cp, cm, c0, eps))
                        except ValueError:
                            pass
    return out


def count_orbits(n: int) -> int:
    return len(labels(n))


def count_orbits_formula(n: int) -> int:
    return sum((2 if k >= 2 and k % 2 == 0 else 1) * comb(n - k + 3, 3) for k in range(n + 1))


def pu_d_size(n: int, d: int, r: int) -> int:
    """Number of V in M with dim(V ∩ U_0) = n - d."""
    return exact_div(r ** (d * (d + 1) // 2) * q_factorial(n, r),
                     q_factorial(d, r) * q_factorial(n - d, r))


def rdv_size(label: TripleLabel, r: int) -> int:
    """Size of the R_d-orbit of the representative V."""
    n, a, d = label.n, label.a, label.d
    num = (r ** (((n - a) * (n - a + 1) - d * (d + 1)) // 2) * q_factorial(n - d, r)
           * q_factorial(d, r) * psi(label.c0, label.eps, r))
    den = (q_factorial(a, r) * q_factorial(label.b, r) * q_factorial(label.c_plus, r)
           * q_factorial(label.c_minus, r) * q_factorial(label.c0, r))
    return exact_div(num, den)


def orbit_size(label: TripleLabel, r: int) -> int:
    """|G t| for any triple t with this label."""
    n, a = label.n, label.a
    num = (m_count(n, r) * r ** ((n - a) * (n - a + 1) // 2) * q_factorial(n, r)
           * psi(label.c0, label.eps, r))
    den = (q_factorial(a, r) * q_factorial(label.b, r) * q_factorial(label.c_plus, r)
           * q_factorial(label.c_minus, r) * q_factorial(label.c0, r))
    return exact_div(num, den)


# ------------------------------------------------------------------ subspaces

def u_d(n: int, d: int, p: int) -> Subspace:
    """span(e_1..e_{n-d}, e_{n+2}..e_{n+d+1})."""
    if not 0 <= d <= n:
        raise ValueError(f"d={d} outside 0..{n}")
    idx = list(range(1, n - d + 1)) + list(range(n + 2, n + d + 2))
    return Subspace.coordinate(idx, 2 * n + 1, p)


@dataclass(frozen=True)
class RepresentativeLayout:
    """0-based coordinate blocks of the representative for a label."""

    label: TripleLabel

    @property
    def n(self):
        return self.label.n

    @cached_property
    def alpha(self) -> list[int]:
        return list(range(self.label.a))

    @cached_property
    def beta(self) -> list[int]:
        n, a, b = self.n, self.label.a, self.label.b
        return list(range(2 * n - a - b + 1, 2 * n - a + 1))

    @cached_property
    def plus(self) -> list[int]:
        a, b = self.label.a, self.label.b
        return list(range(a + b, a + b + self.label.c_plus))

    @cached_property
    def minus(self) -> list[int]:
        return list(range(self.n + 1, self.n + 1 + self.label.c_minus))

    @cached_property
    def zero_plus(self) -> list[int]:
        kp = self.label.a + self.label.b + self.label.c_plus
        return list(range(kp, kp + self.label.c0))

    @cached_property
    def zero_minus(self) -> list[int]:
        km = self.n + self.label.c_minus + 1
        return list(range(km, km + self.label.c0))

    @cached_property
    def zero(self) -> list[int]:
        return self.zero_plus + self.zero_minus + [self.n]

    def rows(self, p: int) -> np.ndarray:
        lab, n = self.label, self.n
        dim = 2 * n + 1
        rows = []

        def unit(i):
            v = np.zeros(dim, dtype=np.int64)
            v[i] = 1
            return v

        for i in self.alpha + self.beta + self.plus + self.minus:
            rows.append(unit(i))
        zp, zm, c0 = self.zero_plus, self.zero_minus, lab.c0
        if c0:
            half = pow(2, -1, p)
            c1 = (c0 + 1) // 2 if lab.case == "odd" else c0 // 2
            for i in range(1, c0 + 1):
                v = unit(zp[i - 1])
                if lab.case == "odd" and i == c1:
                    v[zm[i - 1]] = (-half) % p
                    v[n] = 1
                elif lab.case == "even1" and i == c0:
                    v[zm[i - 1]] = p - 1
                    v[zm[0]] = (v[zm[0]] - half) % p
                    v[n] = 1
                else:
                    plus = i < c1 if lab.case == "odd" else i <= c1
                    v[zm[i - 1]] = 1 if plus else p - 1
                rows.append(v)
        return np.array(rows, dtype=np.int64).reshape(len(rows), dim) % p


def representative(label: TripleLabel, p: int) -> Subspace:
    """The standard V paired with (U_0, U_{n-a-b}) for this label."""
    field = as_field(p)
    field.require_odd()
    return Subspace.span(RepresentativeLayout(label).rows(field.p), field.p, 2 * label.n + 1)


def triple_invariants(v1: Subspace, v2: Subspace, v3: Subspace, form: Form | None = None) -> TripleLabel:
    n = (v1.ambient - 1) // 2
    form = form or symmetric_form(n, v1.p)
    for v in (v1, v2, v3):
        if not is_maximal_isotropic(v, form):
            raise ValueError("triple_invariants needs maximal isotropic subspaces")
    a = intersect(intersect(v1, v2), v3).dim
    b = intersect(v1, v2).dim - a
    cp = intersect(v1, v3).dim - a
    cm = intersect(v2, v3).dim - a
    c0 = n - a - b - cp - cm
    eps = subspace_sum(subspace_sum(v1, v2), v3).dim + a - 2 * n
    return TripleLabel(n, a, b, cp, cm, c0, eps)


def maximal_isotropics(n: int, p: int) -> list[Subspace]:
    """Every point of M over F_p, in a fixed order."""
    from .exactlin import enumerate_chains
    gram = symmetric_form(n, p).gram
    dim = 2 * n + 1

    def allowed(rows, v):
        if int(v @ gram @ v) % p:
            return False
        return not len(rows) or not (rows @ gram @ v % p).any()

    seen: dict[bytes, Subspace] = {}
    for flag in enumerate_chains(dim, p, n, allowed, estimate=m_count(n, p) * q_factorial(n, p)):
        s = flag.space(n)
        seen.setdefault(s.key, s)
    return list(seen.values())


# ------------------------------------------------------------- normalisation

def _extend(rows_sub: np.ndarray, rows_super: np.ndarray, p: int) -> np.ndarray:
    """Append rows of ``rows_super`` until the span equals span(rows_super)."""
    out = [r for r in rows_sub]
    cur = Subspace.span(rows_sub, p, rows_super.shape[1]) if len(rows_sub) else Subspace.zero(rows_super.shape[1], p)
    for r in rows_super:
        if not cur.contains(r):
            out.append(r)
            cur = Subspace.span(np.array(out), p)
    return np.array(out, dtype=np.int64).reshape(len(out), rows_super.shape[1])


def witt_frame(v1: Subspace, v2: Subspace, form: Form) -> np.ndarray:
    """Columns f_1..f_{2n+1} with Gram J and V1, V2 = coordinate spans U_0, U_d."""
    p = v1.p
    dim = v1.ambient
    n = (dim - 1) // 2
    gram = form.gram
    k = intersect(v1, v2)
    m = k.dim
    d = n - m
    kb = k.basis
    ab = _extend(kb, v1.basis, p)[m:]
    bb = _extend(kb, v2.basis, p)[m:]
    if d:
        pair = mat_mul(mat_mul(ab, gram, p), bb.T, p)
        bb = mat_mul(inverse(pair, p).T, bb, p)
    ab_span = Subspace.span(np.vstack([ab, bb]), p, dim) if d else Subspace.zero(dim, p)
    x = perp(ab_span, form)
    ys = []
    if m:
        q = mat_mul(mat_mul(x.basis, gram, p), kb.T, p)
        for j in range(m):
            target = np.zeros(m, dtype=np.int64)
            target[j] = 1
            c = solve_left(q, target, p)
            if c is None:
                raise ArithmeticError("no dual vector for the common part")
            ys.append(mat_mul(c, x.basis, p))
        ys = np.array(ys, dtype=np.int64)
        half = pow(2, -1, p)
        fixed = ys.copy()
        for j in range(m):
            corr = np.zeros(m, dtype=np.int64)
            for l in range(j):
                corr[l] = -form.pair(ys[j], ys[l])
            corr[j] = -form.pair(ys[j], ys[j]) * half
            fixed[j] = (ys[j] + mat_mul(corr % p, kb, p)) % p
        ys = fixed
    parts = [r for r in (kb, ab, bb) if len(r)]
    if m:
        parts.append(ys)
    rest = perp(Subspace.span(np.vstack(parts), p, dim), form)
    if rest.dim != 1:
        raise ArithmeticError("anisotropic complement is not a line")
    z = rest.basis[0]
    root = as_field(p).sqrt(form.pair(z, z))
    if root is None:
        raise ArithmeticError("anisotropic vector has non-square length")
    z = z * pow(root, -1, p) % p
    frame = np.zeros((dim, dim), dtype=np.int64)
    for t in range(m):
        frame[:, t] = kb[t]
        frame[:, 2 * n - t] = ys[t]
    for t in range(d):
        frame[:, m + t] = ab[t]
        frame[:, n + d - t] = bb[t]
    frame[:, n] = z
    assert np.array_equal(mat_mul(mat_mul(frame.T, gram, p), frame, p), gram % p)
    return frame


def _fix_det(g: np.ndarray, p: int) -> np.ndarray:
    return g if det(g, p) == 1 else (-g) % p


def normalize_pair(v1: Subspace, v2: Subspace) -> tuple[np.ndarray, int]:
    """g in SO_{2n+1} with g V1 = U_0 and g V2 = U_d."""
    n = (v1.ambient - 1) // 2
    as_field(v1.p).require_odd()
    form = symmetric_form(n, v1.p)
    frame = witt_frame(v1, v2, form)
    g = _fix_det(inverse(frame, v1.p), v1.p)
    return g, n - intersect(v1, v2).dim


# ------------------------------------------------------------ associated form

@dataclass(frozen=True)
class AssociatedFormData:
    """f_V, phi_V and the bilinear form <u, v>_V on U_(0+) (coordinates e_{c+ + i})."""

    f: np.ndarray          # column i = f_V(e_{c+ + i}) in U_(0-) coordinates
    phi: np.ndarray        # phi_V(e_{c+ + i})
    bilinear: np.ndarray   # <e_i, e_j>_V
    alt: np.ndarray
    sym: np.ndarray
    c_plus: int
    c_minus: int
    p: int

    @property
    def c0(self) -> int:
        return len(self.phi)


def associated_form(v: Subspace) -> AssociatedFormData:
    """Data of V when V ∩ U_0 = U_(+) and V ∩ U_n = U_(-) (the d = n setting)."""
    p = v.p
    n = (v.ambient - 1) // 2
    u0 = u_d(n, 0, p)
    un = u_d(n, n, p)
    cp = intersect(v, u0).dim
    cm = intersect(v, un).dim
    if intersect(v, u0) != Subspace.coordinate(range(1, cp + 1), v.ambient, p) or \
            intersect(v, un) != Subspace.coordinate(range(n + 2, n + cm + 2), v.ambient, p):
        raise ValueError("V is not in coordinate position against U_0 and U_n")
    c0 = n - cp - cm
    zp = list(range(cp, cp + c0))
    zm = list(range(n + cm + 1, n + cm + 1 + c0))
    zero = Subspace.coordinate([i + 1 for i in zp + zm + [n]], v.ambient, p)
    vz = intersect(v, zero)
    half = pow(2, -1, p)
    f = np.zeros((c0, c0), dtype=np.int64)
    phi = np.zeros(c0, dtype=np.int64)
    bil = np.zeros((c0, c0), dtype=np.int64)
    proj = vz.basis[:, zp] if c0 else np.zeros((0, 0), dtype=np.int64)
    for i in range(c0):
        target = np.zeros(c0, dtype=np.int64)
        target[i] = 1
        coeff = solve_left(proj, target, p)
        if coeff is None:
            raise ValueError("projection onto U_(0+) is not onto")
        vi = mat_mul(coeff, vz.basis, p)
        f[:, i] = vi[zm]
        phi[i] = vi[n]
        for j in range(c0):
            bil[i, j] = vi[2 * n - zp[j]]
    alt = (bil - bil.T) * half % p
    sym = (bil + bil.T) * half % p
    return AssociatedFormData(f, phi, bil, alt, sym, cp, cm, p)


def standard_alt(c0: int, case: str, p: int) -> np.ndarray:
    """Gram matrix of the target alternating part for each case."""
    m = np.zeros((c0, c0), dtype=np.int64)
    c1 = (c0 + 1) // 2
    for i in range(1, c0 + 1):
        j = c0 + 1 - i
        if case == "odd":
            if i < c1:
                m[i - 1, j - 1] = 1
            elif i > c1:
                m[i - 1, j - 1] = p - 1
        else:
            m[i - 1, j - 1] = 1 if i <= c0 // 2 else p - 1
    return m


def symplectic_frame(alt: np.ndarray, space_rows: np.ndarray, p: int, first=None) -> np.ndarray:
    """Basis x_1..x_{2k} of span(space_rows) with alt(x_i, x_{2k+1-i}) = 1 (i <= k), others 0.

    Greedy hyperbolic-pair extraction; ``first`` (if given) becomes x_1.
    """
    dim = alt.shape[0]
    rem = Subspace.span(space_rows, p, dim) if len(space_rows) else Subspace.zero(dim, p)
    size = rem.dim
    if size % 2:
        raise ValueError("alternating form on an odd-dimensional space is degenerate")
    out = [None] * size
    for t in range(size // 2):
        x = np.asarray(first, dtype=np.int64) % p if (t == 0 and first is not None) else rem.basis[0]
        pairs = mat_mul(mat_mul(x[None], alt, p), rem.basis.T, p)[0]
        nz = np.nonzero(pairs)[0]
        if nz.size == 0:
            raise ValueError("alternating form is degenerate on the given space")
        y = rem.basis[nz[0]] * pow(int(pairs[nz[0]]), -1, p) % p
        out[t], out[size - 1 - t] = x, y
        both = np.vstack([x, y])
        cond = mat_mul(both, alt, p)
        from .exactlin import null_space
        ortho = Subspace(p, dim, null_space(cond, p).copy())
        rem = intersect(rem, ortho)
    return np.array(out, dtype=np.int64).reshape(size, dim)


def _canonical_basis(data: AssociatedFormData, case: str) -> np.ndarray:
    """Columns c_1..c_{c0} of U_(0+) realising the standard (alt, phi)."""
    p, c0 = data.p, data.c0
    full = np.eye(c0, dtype=np.int64)
    if case == "even0":
        basis = symplectic_frame(data.alt, full, p)
    elif case == "even1":
        v0 = solve_left(data.alt, data.phi, p)   # alt(v0, .) = phi
        if v0 is None:
            raise ArithmeticError("phi is not represented by the alternating part")
        basis = symplectic_frame(data.alt, full, p, first=v0)
    else:
        from .exactlin import null_space
        ker = null_space(data.phi[None, :], p)
        c1 = (c0 + 1) // 2
        rows = np.vstack([mat_mul(ker, data.alt, p), data.phi[None, :]]) if len(ker) else data.phi[None, :]
        rhs = np.zeros(rows.shape[0], dtype=np.int64)
        rhs[-1] = 1
        u = solve_left(rows.T, rhs, p)
        if u is None:
            raise ArithmeticError("no radical vector with phi = 1")
        inner = symplectic_frame(data.alt, ker, p)
        order = []
        for i in range(1, c0 + 1):
            if i < c1:
                order.append(inner[i - 1])
            elif i == c1:
                order.append(u)
            else:
                order.append(inner[i - 2])
        basis = np.array(order, dtype=np.int64).reshape(c0, c0)
    return basis.T % p


def _standardize_top(v: Subspace, case: str) -> tuple[np.ndarray, Subspace]:
    """The d = n step: h[A] moves V to coordinate position, then to the representative."""
    p = v.p
    n = (v.ambient - 1) // 2
    form = symmetric_form(n, p)
    u0 = u_d(n, 0, p)
    un = u_d(n, n, p)
    vp = intersect(v, u0)
    vm = intersect(v, un)
    ann = intersect(u0, perp(vm, form))
    rows = _extend(vp.basis[:, :n], ann.basis[:, :n], p) if ann.dim else np.zeros((0, n), dtype=np.int64)
    rows = _extend(rows, np.eye(n, dtype=np.int64), p) if n else rows
    g1 = h_block(inverse(rows.T, p), p) if n else np.eye(1, dtype=np.int64)
    v = v.image(g1)
    data = associated_form(v)
    if data.c0 == 0:
        return g1, v
    c = _canonical_basis(data, case)
    block = np.eye(n, dtype=np.int64)
    cp = data.c_plus
    block[cp:cp + data.c0, cp:cp + data.c0] = inverse(c, p)
    g2 = h_block(block, p)
    return mat_mul(g2, g1, p), v.image(g2)


def standardize_V(v: Subspace, d: int) -> tuple[np.ndarray, Subspace]:
    """g fixing U_0 and U_d with g V equal to the representative of its label."""
    p = v.p
    as_field(p).require_odd()
    n = (v.ambient - 1) // 2
    dim = 2 * n + 1
    form = symmetric_form(n, p)
    label = triple_invariants(u_d(n, 0, p), u_d(n, d, p), v, form)
    m = n - d
    a = label.a
    b = m - a
    w0 = Subspace.coordinate(range(1, m + 1), dim, p)
    total = np.eye(dim, dtype=np.int64)
    # stage 1: GL_m on W_0 puts V ∩ W_0 onto e_1..e_a
    if m:
        vw0 = intersect(v, w0)
        rows = _extend(vw0.basis[:, :m], np.eye(m, dtype=np.int64), p)
        g1 = levi_w0_element(inverse(rows.T, p), n, d, p)
        v = v.image(g1)
        total = mat_mul(g1, total, p)
    # stage 2: a unipotent g(X, Z) clears the W_0-components of the lifts of U_beta
    if b:
        w2 = list(range(m + 2 * d + 1, dim))
        k = 2 * d + 1
        x = np.zeros((k, m), dtype=np.int64)
        known = {}
        for j in range(b):
            target = np.zeros(m, dtype=np.int64)
            target[j] = 1
            coeff = solve_left(v.basis[:, w2], target, p)
            uj = mat_mul(coeff, v.basis, p)
            x[:, j] = uj[m:m + k]
            for i in range(m):
                known[(i, j)] = int(uj[i])
        z = complete_z(x, known, m, p)
        g2 = g_xz(x, z, n, d, p)
        g2i = inverse(g2, p)
        v = v.image(g2i)
        total = mat_mul(g2i, total, p)
    # stage 3: inside W_1 the problem is the d = n case for SO_{2d+1}
    if d:
        w1 = list(range(m, m + 2 * d + 1))
        w1_space = Subspace.coordinate([i + 1 for i in w1], dim, p)
        local = Subspace.span(intersect(v, w1_space).basis[:, w1], p, 2 * d + 1)
        g3loc, _ = _standardize_top(local, label.case)
        g3 = w1_element(g3loc, n, d)
        v = v.image(g3)
        total = mat_mul(g3, total, p)
    rep = representative(label, p)
    if v != rep:
        raise ArithmeticError(f"standardisation did not reach the representative of {label}")
    return total, v


def standardize_triple(v1: Subspace, v2: Subspace, v3: Subspace) -> tuple[np.ndarray, TripleLabel]:
    """g in G carrying (V1, V2, V3) to the representative triple of its label."""
    g, d = normalize_pair(v1, v2)
    h, _ = standardize_V(v3.image(g), d)
    total = mat_mul(h, g, v1.p)
    return total, triple_invariants(v1, v2, v3)
